#pragma once

#include "rtwist/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace rtwist::cli {

namespace detail {

// Index flags shared by every subcommand that names a deformation case.
struct CaseFlags {
    std::string kind = "i";
    int i = 0, k = 0, l = 0;
    CLI::Option* oi = nullptr;
    CLI::Option* ok = nullptr;
    CLI::Option* ol = nullptr;

    void attach(CLI::App* sub) {
        sub->add_option("--case", kind, "deformation family: i, ii or iii")
            ->required()
            ->check(CLI::IsMember({"i", "ii", "iii"}));
        oi = sub->add_option("--i", i, "spatial axis i")->check(CLI::Range(1, 3));
        ok = sub->add_option("--k", k, "spatial axis k")->check(CLI::Range(1, 3));
        ol = sub->add_option("--l", l, "spatial axis l")->check(CLI::Range(1, 3));
    }

    // Unset indices get the smallest axis not claimed yet, in the order
    // i, k, l; with no flags at all this yields the reference (1,2,3).
    TwistCase resolve() const {
        TwistCase spec;
        spec.kind = twist_kind_from_name(kind);
        std::array<bool, 4> used{};
        std::array<int, 3> vals{i, k, l};
        const std::array<const CLI::Option*, 3> opts{oi, ok, ol};
        for (int j = 0; j < 3; ++j)
            if (opts[j]->count() > 0) used[static_cast<std::size_t>(vals[j])] = true;
        for (int j = 0; j < 3; ++j) {
            if (opts[j]->count() > 0) continue;
            for (int axis = 1; axis <= 3; ++axis)
                if (!used[static_cast<std::size_t>(axis)]) {
                    vals[j] = axis;
                    used[static_cast<std::size_t>(axis)] = true;
                    break;
                }
        }
        spec.i = vals[0];
        spec.k = vals[1];
        spec.l = vals[2];
        spec.validate();
        return spec;
    }
};

inline Chart chart_from_name(const std::string& s) {
    return s == "rindler" ? Chart::rindler : Chart::minkowski;
}

}  // namespace detail

// Parse `args` (without the program name) and run the requested subcommand.
// Kept in a header so the tests can drive the full pipeline in-process.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"star-product commutator tables, twisted detector spectra and "
                 "consistency checks for Abelian wedge deformations"};
    app.name("rtwist");
    app.require_subcommand(1);

    RunConfig cfg;
    detail::CaseFlags comm_case, spec_case, dump_case;
    std::string comm_chart = "minkowski", dump_chart = "minkowski";
    std::string comm_format = "json", spec_format = "json", metric_format = "json",
                dump_format = "json";
    bool verify_json = false;
    std::array<double, symbol_count> symval{};
    std::array<CLI::Option*, symbol_count> symopt{};

    CLI::App* comm = app.add_subcommand("commutators", "star commutator table of the chart's "
                                                       "coordinate functions");
    comm_case.attach(comm);
    comm->add_option("--chart", comm_chart, "coordinate chart")
        ->check(CLI::IsMember({"minkowski", "rindler"}));
    comm->add_option("--order", cfg.order, "truncation order in the deformation symbols")
        ->check(CLI::PositiveNumber);
    comm->add_option("--format", comm_format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    comm->add_option("--output", cfg.output_path, "write to file instead of stdout");

    CLI::App* spec = app.add_subcommand("spectrum", "detector power spectrum with first-order "
                                                    "deformation correction");
    spec_case.attach(spec);
    spec->add_option("--a", cfg.params.a, "proper acceleration");
    spec->add_option("--omega-hat", cfg.params.omega_hat, "field mode frequency");
    spec->add_option("--z", cfg.params.z, "detector Rindler coordinate z1");
    spec->add_option("--z2", cfg.params.z2, "spectator coordinate z2");
    spec->add_option("--z3", cfg.params.z3, "spectator coordinate z3");
    for (int s = 0; s < symbol_count; ++s) {
        std::string flag = "--";
        for (char c : std::string(symbol_name(static_cast<Symbol>(s))))
            flag += c == '_' ? '-' : c;
        symopt[static_cast<std::size_t>(s)] =
            spec->add_option(flag, symval[static_cast<std::size_t>(s)],
                             std::string("value of ") + symbol_name(static_cast<Symbol>(s)));
    }
    spec->add_option("--omega-min", cfg.omega_min, "lowest detector frequency");
    spec->add_option("--omega-max", cfg.omega_max, "highest detector frequency");
    spec->add_option("--points", cfg.points, "number of grid points")->check(CLI::PositiveNumber);
    spec->add_option("--format", spec_format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    spec->add_option("--plot", cfg.plot_path, "also write an SVG plot to this path");
    spec->add_option("--output", cfg.output_path, "write to file instead of stdout");

    CLI::App* dump = app.add_subcommand("dump-twist", "serialized deformation factor");
    dump_case.attach(dump);
    dump->add_option("--chart", dump_chart, "coordinate chart")
        ->check(CLI::IsMember({"minkowski", "rindler"}));
    dump->add_option("--order", cfg.order, "truncation order in the deformation symbols")
        ->check(CLI::PositiveNumber);
    dump->add_option("--part", cfg.part, "exponent of the factor, or the star-product operator")
        ->check(CLI::IsMember({"exponent", "star"}));
    dump->add_option("--format", dump_format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    dump->add_option("--output", cfg.output_path, "write to file instead of stdout");

    CLI::App* metric = app.add_subcommand("metric", "pullback metric on the wedge chart");
    metric->add_option("--order", cfg.order, "truncation order in the deformation symbols")
        ->check(CLI::PositiveNumber);
    metric->add_option("--format", metric_format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    metric->add_option("--output", cfg.output_path, "write to file instead of stdout");

    CLI::App* verify = app.add_subcommand("verify", "run the full consistency battery");
    verify->add_option("--order", cfg.verify_order, "truncation order for the battery")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "seed for the sampled test functions");
    verify->add_flag("--json", verify_json, "machine-readable report instead of PASS/FAIL lines");
    verify->add_option("--output", cfg.output_path, "write to file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (comm->parsed()) {
            cfg.subcommand = "commutators";
            cfg.spec = comm_case.resolve();
            cfg.chart = detail::chart_from_name(comm_chart);
            cfg.format = comm_format;
        } else if (spec->parsed()) {
            cfg.subcommand = "spectrum";
            cfg.spec = spec_case.resolve();
            cfg.format = spec_format;
            for (int s = 0; s < symbol_count; ++s)
                if (symopt[static_cast<std::size_t>(s)]->count() > 0)
                    cfg.params.deformation[static_cast<std::size_t>(s)] =
                        symval[static_cast<std::size_t>(s)];
        } else if (dump->parsed()) {
            cfg.subcommand = "dump-twist";
            cfg.spec = dump_case.resolve();
            cfg.chart = detail::chart_from_name(dump_chart);
            cfg.format = dump_format;
        } else if (metric->parsed()) {
            cfg.subcommand = "metric";
            cfg.format = metric_format;
        } else {
            cfg.subcommand = "verify";
            cfg.format = verify_json ? "json" : "text";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    return run(cfg, out, err);
}

}  // namespace rtwist::cli
