#pragma once

#include "rtwist/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace rtwist::cli {

// Everything one invocation needs, already validated.  Flag parsing lives in
// cli_app.hpp; keeping the dispatch entry point free of the parser makes it
// easy to drive in-process from the tests.
struct RunConfig {
    std::string subcommand;  // commutators | spectrum | dump-twist | metric | verify

    TwistCase spec;
    Chart chart = Chart::minkowski;
    int order = 1;

    PhysParams params;
    double omega_min = 0.5;
    double omega_max = 5.0;
    int points = 10;

    std::string part = "exponent";  // dump-twist: exponent | star
    int verify_order = 2;
    unsigned seed = 20260815;

    std::string format = "json";  // json | csv | text (subcommand-dependent)
    std::string output_path;      // empty: stdout
    std::string plot_path;        // spectrum only; empty: no plot
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

// 17 significant digits, with -0 canonicalized so that parsing machine output
// and re-serializing it reproduces the bytes exactly.
inline std::string format_double(double v) {
    if (v == 0.0) v = 0.0;
    return rtwist::detail::format_double(v);
}

// Serializer with pinned float formatting: every double goes out with 17
// significant digits, so values survive a parse/serialize round trip with
// byte-identical text.  (The vendored dump() would pick the shortest
// representation instead.)
inline void write_json(std::ostream& os, const ordered_json& v, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
    switch (v.type()) {
        case ordered_json::value_t::object: {
            if (v.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, val] : v.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad_in << '"' << key << "\": ";
                write_json(os, val, depth + 1);
            }
            os << '\n' << pad << '}';
            return;
        }
        case ordered_json::value_t::array: {
            if (v.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            bool first = true;
            for (const auto& item : v) {
                if (!first) os << ",\n";
                first = false;
                os << pad_in;
                write_json(os, item, depth + 1);
            }
            os << '\n' << pad << ']';
            return;
        }
        case ordered_json::value_t::string: {
            os << '"';
            for (char c : v.get<std::string>()) {
                switch (c) {
                    case '"': os << "\\\""; break;
                    case '\\': os << "\\\\"; break;
                    case '\n': os << "\\n"; break;
                    case '\t': os << "\\t"; break;
                    default: os << c;
                }
            }
            os << '"';
            return;
        }
        case ordered_json::value_t::boolean:
            os << (v.get<bool>() ? "true" : "false");
            return;
        case ordered_json::value_t::number_integer:
            os << v.get<long long>();
            return;
        case ordered_json::value_t::number_unsigned:
            os << v.get<unsigned long long>();
            return;
        case ordered_json::value_t::number_float:
            os << format_double(v.get<double>());
            return;
        default:
            os << "null";
            return;
    }
}

inline std::string dump_json(const ordered_json& v) {
    std::ostringstream os;
    write_json(os, v, 0);
    os << '\n';
    return os.str();
}

inline ordered_json indices_json(const TwistCase& spec) {
    return ordered_json::array({spec.i, spec.k, spec.l});
}

// One canonical Expr term as structured JSON; the monomial is given by its
// exponents so downstream tools never have to parse the text rendering.
inline ordered_json expr_terms_json(const Expr& e) {
    ordered_json terms = ordered_json::array();
    for (const auto& [key, coeff] : e.terms) {
        ordered_json t;
        t["coeff"] = coeff.str(false);
        t["zpow"] = ordered_json::array({key.zpow[0], key.zpow[1], key.zpow[2], key.zpow[3]});
        t["apow"] = key.apow;
        t["expm"] = key.expm;
        terms.push_back(std::move(t));
    }
    return terms;
}

// Monomial-times-derivative rendering for factor dumps, e.g. "z1^2*d0".
inline std::string operator_str(const TermKey& mono, const DerivIndex& d, Chart chart, int order) {
    Expr m(chart, order);
    m.add_term(mono, GradedCoeff::one(order));
    std::string out = m.str(false);
    for (int mu = 0; mu < 4; ++mu)
        for (int j = 0; j < d[mu]; ++j) out += "*d" + std::to_string(mu);
    return out;
}

inline std::vector<double> omega_grid(const RunConfig& cfg) {
    if (cfg.points < 1) throw std::invalid_argument("spectrum: --points must be at least 1");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(cfg.points));
    if (cfg.points == 1) {
        grid.push_back(cfg.omega_min);
        return grid;
    }
    const double step = (cfg.omega_max - cfg.omega_min) / (cfg.points - 1);
    for (int j = 0; j < cfg.points; ++j) grid.push_back(cfg.omega_min + step * j);
    return grid;
}

// --- spectrum plot -----------------------------------------------------------

// Minimal static SVG: base and corrected curves over the frequency grid.
inline std::string spectrum_svg(const std::vector<SpectrumPoint>& pts) {
    const double width = 800.0, height = 500.0, ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
    double xmin = pts.front().omega, xmax = pts.back().omega;
    double ymin = 0.0, ymax = 0.0;
    for (const auto& p : pts) {
        ymax = std::max({ymax, p.base, p.corrected});
        ymin = std::min({ymin, p.base, p.corrected});
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    auto px = [&](double w) { return ml + (w - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double v) { return height - mb - (v - ymin) / (ymax - ymin) * (height - mt - mb); };
    auto coord = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };
    auto polyline = [&](const char* color, bool corrected) {
        std::string s = "  <polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : pts) {
            s += coord(px(p.omega)) + "," + coord(py(corrected ? p.corrected : p.base)) + " ";
        }
        s += "\"/>\n";
        return s;
    };
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    svg += "  <rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    // axes
    svg += "  <line x1=\"" + coord(ml) + "\" y1=\"" + coord(height - mb) + "\" x2=\"" +
           coord(width - mr) + "\" y2=\"" + coord(height - mb) + "\" stroke=\"black\"/>\n";
    svg += "  <line x1=\"" + coord(ml) + "\" y1=\"" + coord(mt) + "\" x2=\"" + coord(ml) +
           "\" y2=\"" + coord(height - mb) + "\" stroke=\"black\"/>\n";
    // tick labels at the extremes
    auto label = [&](double x, double y, const std::string& text, const char* anchor) {
        return "  <text x=\"" + coord(x) + "\" y=\"" + coord(y) + "\" font-size=\"12\" " +
               "text-anchor=\"" + anchor + "\">" + text + "</text>\n";
    };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4g", v);
        return std::string(buf);
    };
    svg += label(ml, height - mb + 18, num(xmin), "middle");
    svg += label(width - mr, height - mb + 18, num(xmax), "middle");
    svg += label(ml - 8, height - mb + 4, num(ymin), "end");
    svg += label(ml - 8, mt + 4, num(ymax), "end");
    svg += label((ml + width - mr) / 2, height - 12, "omega", "middle");
    svg += polyline("#444444", false);
    svg += polyline("#c0392b", true);
    svg += label(width - mr - 10, mt + 16, "base", "end");
    svg += "  <rect x=\"" + coord(width - mr - 70) + "\" y=\"" + coord(mt + 8) +
           "\" width=\"12\" height=\"3\" fill=\"#444444\"/>\n";
    svg += label(width - mr - 10, mt + 34, "corrected", "end");
    svg += "  <rect x=\"" + coord(width - mr - 70) + "\" y=\"" + coord(mt + 26) +
           "\" width=\"12\" height=\"3\" fill=\"#c0392b\"/>\n";
    svg += "</svg>\n";
    return svg;
}

// --- per-subcommand output ---------------------------------------------------

inline int run_commutators(const RunConfig& cfg, std::ostream& out) {
    CommutatorTable table = commutator_table(cfg.spec, cfg.chart, cfg.order);
    if (cfg.format == "text") {
        const char* pfx = coord_prefix(cfg.chart);
        out << case_label(cfg.spec) << "  chart=" << chart_name(cfg.chart)
            << "  order=" << cfg.order << "\n";
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu + 1; nu < 4; ++nu)
                out << "[" << pfx << mu << " *, " << pfx << nu
                    << "] = " << table.entry(mu, nu).str(true) << "\n";
        return 0;
    }
    ordered_json j;
    j["case"] = twist_kind_name(cfg.spec.kind);
    j["indices"] = indices_json(cfg.spec);
    j["chart"] = chart_name(cfg.chart);
    j["order"] = cfg.order;
    ordered_json entries = ordered_json::array();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            Expr e = table.entry(mu, nu);
            ordered_json entry;
            entry["mu"] = mu;
            entry["nu"] = nu;
            entry["expr_text"] = e.str(false);
            entry["expr_terms"] = expr_terms_json(e);
            entries.push_back(std::move(entry));
        }
    j["entries"] = std::move(entries);
    out << dump_json(j);
    return 0;
}

inline ordered_json params_json(const PhysParams& p) {
    ordered_json j;
    j["a"] = p.a;
    j["omega_hat"] = p.omega_hat;
    j["z"] = p.z;
    j["z2"] = p.z2;
    j["z3"] = p.z3;
    for (int s = 0; s < symbol_count; ++s)
        j[symbol_name(static_cast<Symbol>(s))] = p.deformation[static_cast<std::size_t>(s)];
    return j;
}

inline int run_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.params.validate();
    std::vector<double> grid = omega_grid(cfg);
    std::vector<SpectrumPoint> pts = spectrum_series(cfg.spec, grid, cfg.params);

    if (!cfg.plot_path.empty()) {
        std::ofstream plot(cfg.plot_path);
        if (!plot) {
            err << "error: cannot open plot file " << cfg.plot_path << "\n";
            return 1;
        }
        plot << spectrum_svg(pts);
    }

    if (cfg.format == "csv") {
        out << "omega,base,re_correction,im_correction,corrected,paper_magnitude,"
               "magnitude_rel_dev,sign_agrees,oracle_residual\n";
        for (const auto& p : pts) {
            out << format_double(p.omega) << ',' << format_double(p.base) << ','
                << format_double(p.correction.real()) << ',' << format_double(p.correction.imag())
                << ',' << format_double(p.corrected) << ',' << format_double(p.paper_magnitude)
                << ',' << format_double(p.magnitude_rel_dev) << ','
                << (p.sign_agrees ? "true" : "false") << ',' << format_double(p.oracle_residual)
                << "\n";
        }
        return 0;
    }
    if (cfg.format == "text") {
        out << case_label(cfg.spec) << "  a=" << format_double(cfg.params.a)
            << "  T=" << format_double(cfg.params.temperature()) << "\n";
        out << std::left << std::setw(24) << "omega" << std::setw(26) << "base" << std::setw(26)
            << "corrected" << "sign_agrees\n";
        for (const auto& p : pts)
            out << std::left << std::setw(24) << format_double(p.omega) << std::setw(26)
                << format_double(p.base) << std::setw(26) << format_double(p.corrected)
                << (p.sign_agrees ? "true" : "false") << "\n";
        return 0;
    }
    ordered_json j;
    j["case"] = twist_kind_name(cfg.spec.kind);
    j["indices"] = indices_json(cfg.spec);
    j["params"] = params_json(cfg.params);
    ordered_json points = ordered_json::array();
    for (const auto& p : pts) {
        ordered_json pj;
        pj["omega"] = p.omega;
        pj["base"] = p.base;
        pj["re_correction"] = p.correction.real();
        pj["im_correction"] = p.correction.imag();
        pj["corrected"] = p.corrected;
        pj["paper_magnitude"] = p.paper_magnitude;
        pj["magnitude_rel_dev"] = p.magnitude_rel_dev;
        pj["sign_agrees"] = p.sign_agrees;
        pj["oracle_residual"] = p.oracle_residual;
        points.push_back(std::move(pj));
    }
    j["points"] = std::move(points);
    out << dump_json(j);
    return 0;
}

inline int run_dump_twist(const RunConfig& cfg, std::ostream& out) {
    TwistFactor factor = build_twist_factor(cfg.spec, cfg.chart, cfg.order);
    const BiOp& op = cfg.part == "star" ? factor.star_factor : factor.exponent;
    if (cfg.format == "text") {
        out << case_label(cfg.spec) << "  chart=" << chart_name(cfg.chart)
            << "  order=" << cfg.order << "  part=" << cfg.part << "\n";
        for (const auto& [key, coeff] : op.terms)
            out << "  [" << coeff.str(true) << "]  ("
                << operator_str(key.lmono, key.ld, cfg.chart, cfg.order) << ") (x) ("
                << operator_str(key.rmono, key.rd, cfg.chart, cfg.order) << ")\n";
        return 0;
    }
    ordered_json j;
    j["case"] = twist_kind_name(cfg.spec.kind);
    j["indices"] = indices_json(cfg.spec);
    j["chart"] = chart_name(cfg.chart);
    j["order"] = cfg.order;
    j["part"] = cfg.part;
    ordered_json terms = ordered_json::array();
    for (const auto& [key, coeff] : op.terms) {
        ordered_json t;
        t["coeff_polynomial"] = coeff.str(false);
        t["left_operator"] = operator_str(key.lmono, key.ld, cfg.chart, cfg.order);
        t["right_operator"] = operator_str(key.rmono, key.rd, cfg.chart, cfg.order);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    out << dump_json(j);
    return 0;
}

inline int run_metric(const RunConfig& cfg, std::ostream& out) {
    auto g = rindler_metric(cfg.order);
    bool off_diagonal_zero = true;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b && !g[a][b].is_zero()) off_diagonal_zero = false;
    // the linear-in-acceleration coefficient that often accompanies this line
    // element; the computed pullback carries a^2, and the difference is
    // reported rather than reconciled
    const std::string reference_g00 = "-a*z1^2";
    const std::string note =
        "computed g00 is quadratic in the acceleration; the reference form above is "
        "linear and differs by one power of a";
    if (cfg.format == "text") {
        out << "pullback metric, order=" << cfg.order << "\n";
        for (int a = 0; a < 4; ++a) out << "g" << a << a << " = " << g[a][a].str(true) << "\n";
        out << "off-diagonal entries zero: " << (off_diagonal_zero ? "true" : "false") << "\n";
        out << "reference g00 form: " << reference_g00 << "  (" << note << ")\n";
        return 0;
    }
    ordered_json j;
    j["order"] = cfg.order;
    ordered_json entries = ordered_json::array();
    for (int a = 0; a < 4; ++a) {
        ordered_json e;
        e["mu"] = a;
        e["nu"] = a;
        e["expr_text"] = g[a][a].str(false);
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    j["off_diagonal_zero"] = off_diagonal_zero;
    j["reference_g00"] = reference_g00;
    j["deviation_note"] = note;
    out << dump_json(j);
    return 0;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
    VerificationReport report = run_battery(cfg.verify_order, cfg.seed);
    if (cfg.format == "json") {
        ordered_json j;
        j["order"] = report.order;
        j["seed"] = report.seed;
        ordered_json checks = ordered_json::array();
        for (const auto& c : report.checks) {
            ordered_json cj;
            cj["name"] = c.name;
            cj["config"] = c.config;
            cj["status"] = c.passed ? "pass" : "fail";
            cj["residual"] = c.residual;
            checks.push_back(std::move(cj));
        }
        j["checks"] = std::move(checks);
        out << dump_json(j);
    } else {
        int failed = 0;
        for (const auto& c : report.checks) {
            out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  [" << c.config << "]";
            if (!c.passed) out << "  residual: " << c.residual;
            out << "\n";
            if (!c.passed) ++failed;
        }
        out << report.checks.size() << " checks, " << failed << " failed\n";
    }
    return report.all_passed() ? 0 : 1;
}

}  // namespace detail

// Dispatch a validated config.  Output goes to `out` unless an output path is
// set; diagnostics go to `err`.  Returns the process exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        std::ofstream file;
        std::ostream* sink = &out;
        if (!cfg.output_path.empty()) {
            file.open(cfg.output_path);
            if (!file) {
                err << "error: cannot open output file " << cfg.output_path << "\n";
                return 1;
            }
            sink = &file;
        }
        if (cfg.subcommand == "commutators") return detail::run_commutators(cfg, *sink);
        if (cfg.subcommand == "spectrum") return detail::run_spectrum(cfg, *sink, err);
        if (cfg.subcommand == "dump-twist") return detail::run_dump_twist(cfg, *sink);
        if (cfg.subcommand == "metric") return detail::run_metric(cfg, *sink);
        if (cfg.subcommand == "verify") return detail::run_verify(cfg, *sink);
        err << "error: unknown subcommand " << cfg.subcommand << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rtwist::cli
