// Command-line front end: loads a family spec file, runs the library, and
// emits plot-ready CSV/JSON with machine-readable verdicts.
//
// Exit codes: 0 success/PASS, 2 spec parse failure, 3 guard/precondition
// violation, 4 incomplete verification, 5 below-threshold theta count,
// 1 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rootcurve/rootcurve.hpp"

namespace {

using rootcurve::ComplexNum;
using rootcurve::FamilySpec;
using rootcurve::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;
constexpr int kExitIncomplete = 4;
constexpr int kExitBelowThreshold = 5;

// full round-trip precision so golden files are stable; negative zero
// collapses to "0" so equal values always print identically
std::string fmt17(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// the JSON writer needs the same negative-zero collapse as fmt17
double norm_zero(double v) { return v == 0.0 ? 0.0 : v; }

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

void write_table(const Table& table, const RunConfig& cfg) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) throw std::runtime_error("cannot open output file: " + cfg.output_path);
        out = &file;
    }
    if (cfg.format == RunConfig::Format::csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            *out << (i ? "," : "") << table.columns[i];
        *out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) *out << ",";
                if (std::holds_alternative<double>(row[i]))
                    *out << fmt17(std::get<double>(row[i]));
                else if (std::holds_alternative<long long>(row[i]))
                    *out << std::get<long long>(row[i]);
                else if (std::holds_alternative<std::string>(row[i]))
                    *out << std::get<std::string>(row[i]);
            }
            *out << "\n";
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json obj;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (std::holds_alternative<double>(row[i]))
                    obj[table.columns[i]] = norm_zero(std::get<double>(row[i]));
                else if (std::holds_alternative<long long>(row[i]))
                    obj[table.columns[i]] = std::get<long long>(row[i]);
                else if (std::holds_alternative<std::string>(row[i]))
                    obj[table.columns[i]] = std::get<std::string>(row[i]);
                else
                    obj[table.columns[i]] = nullptr;
            }
            rows.push_back(std::move(obj));
        }
        *out << rows.dump() << "\n";
    }
}

rootcurve::LocateOptions locate_options(const RunConfig& cfg) {
    rootcurve::LocateOptions opts;
    opts.solve.max_iterations = cfg.max_iterations;
    opts.curve_tol = cfg.tolerance;
    opts.residual_tol = cfg.residual_tol;
    return opts;
}

int verdict_exit(rootcurve::Verdict v) {
    switch (v) {
        case rootcurve::Verdict::Complete: return kExitOk;
        case rootcurve::Verdict::Incomplete: return kExitIncomplete;
        case rootcurve::Verdict::BelowThreshold: return kExitBelowThreshold;
    }
    return kExitInternal;
}

int cmd_gen(const FamilySpec& spec, long m, const RunConfig& cfg) {
    if (m < 0 || m * std::max(spec.b, 0) > 400) {
        std::cerr << "guard violation: gen requires m >= 0 and m*deg(B) <= 400\n";
        return kExitGuard;
    }
    const rootcurve::ComplexPoly h = rootcurve::coefficients(spec, m);
    Table table{{"index", "re", "im"}, {}};
    for (std::size_t k = 0; k < h.coeffs().size(); ++k)
        table.rows.push_back({static_cast<long long>(k), h.coeffs()[k].real(), h.coeffs()[k].imag()});
    write_table(table, cfg);
    return kExitOk;
}

Table locate_table(const rootcurve::LocateReport& report) {
    Table table{{"re", "im", "theta", "source", "residual", "curve_class"}, {}};
    for (const auto& rec : report.records) {
        Cell theta = rec.theta.has_value() ? Cell{*rec.theta} : Cell{};
        const std::string source =
            rec.from_b_root ? "b_root" : "theta:" + std::to_string(rec.theta_index);
        table.rows.push_back({rec.z.real(), rec.z.imag(), theta, source, rec.residual,
                              std::string(rootcurve::to_string(rec.curve.tag))});
    }
    return table;
}

int cmd_locate(const FamilySpec& spec, long m, const RunConfig& cfg) {
    if (m < spec.n) {
        std::cerr << "guard violation: locate requires m >= n\n";
        return kExitGuard;
    }
    const auto report = rootcurve::locate_roots(spec, m, locate_options(cfg));
    write_table(locate_table(report), cfg);
    std::cout << "located=" << report.located_count << " expected=" << report.expected_count
              << " verdict=" << rootcurve::to_string(report.verdict) << "\n";
    for (const auto& f : report.failures) std::cerr << "warning: " << f << "\n";
    return verdict_exit(report.verdict);
}

int cmd_quotients(const FamilySpec& spec, long m, const RunConfig& cfg) {
    if (m < spec.n) {
        std::cerr << "guard violation: quotients requires m >= n\n";
        return kExitGuard;
    }
    const auto report = rootcurve::locate_roots(spec, m, locate_options(cfg));
    rootcurve::RootSolveOptions solve;
    solve.max_iterations = cfg.max_iterations;
    Table table{{"root_re", "root_im", "k", "q_re", "q_im"}, {}};
    for (const auto& rec : report.records) {
        try {
            const auto dr = rootcurve::roots_and_quotients(spec, rec.z, solve);
            for (std::size_t k = 0; k < dr.q.size(); ++k)
                table.rows.push_back({rec.z.real(), rec.z.imag(), static_cast<long long>(k + 1),
                                      dr.q[k].real(), dr.q[k].imag()});
        } catch (const std::exception& e) {
            std::cerr << "warning: quotients skipped at root (" << fmt17(rec.z.real()) << ","
                      << fmt17(rec.z.imag()) << "): " << e.what() << "\n";
        }
    }
    write_table(table, cfg);
    std::cout << "located=" << report.located_count << " expected=" << report.expected_count
              << " verdict=" << rootcurve::to_string(report.verdict) << "\n";
    return verdict_exit(report.verdict);
}

int cmd_curve(const FamilySpec& spec, const RunConfig& cfg) {
    if (cfg.samples < 2) {
        std::cerr << "guard violation: curve requires samples >= 2\n";
        return kExitGuard;
    }
    rootcurve::RootSolveOptions solve;
    solve.max_iterations = cfg.max_iterations;
    const auto trace = rootcurve::trace_curve(spec, cfg.samples, solve);
    Table table{{"theta", "re", "im"}, {}};
    for (const auto& pt : trace.points) table.rows.push_back({pt.theta, pt.z.real(), pt.z.imag()});
    write_table(table, cfg);
    for (const auto& [theta, reason] : trace.failures)
        std::cerr << "warning: sample at theta=" << fmt17(theta) << " failed: " << reason << "\n";
    return kExitOk;
}

int cmd_htheta(const FamilySpec& spec, long m, const RunConfig& cfg) {
    if (m < spec.n) {
        std::cerr << "guard violation: htheta requires m >= n\n";
        return kExitGuard;
    }
    rootcurve::RootSolveOptions solve;
    solve.max_iterations = cfg.max_iterations;
    Table table{{"kind", "theta", "h", "h_index", "l_value", "expected_sign"}, {}};
    for (int j = 0; j < cfg.samples; ++j) {
        const double theta = (M_PI / spec.n) * (j + 1) / static_cast<double>(cfg.samples + 1);
        const double h = rootcurve::h_eval(rootcurve::build_theta_context(spec.n, theta, solve), m);
        table.rows.push_back({std::string("sample"), theta, h, Cell{}, Cell{}, Cell{}});
    }
    for (const auto& pt : rootcurve::sign_grid(spec.n, m)) {
        const double h = rootcurve::h_eval(rootcurve::build_theta_context(spec.n, pt.theta, solve), m);
        table.rows.push_back({std::string("grid"), pt.theta, h, static_cast<long long>(pt.h_index),
                              pt.l_value, static_cast<long long>(pt.expected_sign)});
    }
    write_table(table, cfg);
    return kExitOk;
}

int cmd_qdisc(const FamilySpec& spec, ComplexNum z, ComplexNum q, const RunConfig& cfg) {
    rootcurve::RootSolveOptions solve;
    solve.max_iterations = cfg.max_iterations;
    rootcurve::QDiscResult result;
    try {
        result = rootcurve::q_discriminant(spec, z, q, solve);
    } catch (const rootcurve::DegenerateLeading& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return kExitGuard;
    }
    std::cout << "product_form=(" << fmt17(result.product_form.real()) << ","
              << fmt17(result.product_form.imag()) << ")\n";
    std::cout << "closed_form=(" << fmt17(result.closed_form.real()) << ","
              << fmt17(result.closed_form.imag()) << ")\n";
    std::cout << "sign_factor=" << (result.sign_factor > 0 ? "+1" : "-1") << "\n";
    std::cout << "path=" << (result.limit_path ? "limit" : "generic") << "\n";
    return kExitOk;
}

int cmd_verify(const FamilySpec& spec, long m, const RunConfig& cfg) {
    if (m < spec.n || m * std::max(spec.b, 0) > 400) {
        std::cerr << "guard violation: verify requires n <= m and m*deg(B) <= 400\n";
        return kExitGuard;
    }
    const auto report = rootcurve::verify_roots_on_curve(spec, m, cfg.tolerance, locate_options(cfg));
    std::cout << "on_curve=" << report.on_curve << " a_zero=" << report.a_zero
              << " off_curve=" << report.off_curve << " " << (report.pass ? "PASS" : "FAIL") << "\n";
    std::cout << "match_distance=" << fmt17(report.max_match_distance) << "\n";
    std::cout << "locate_verdict=" << rootcurve::to_string(report.locate_verdict) << "\n";
    return report.pass ? kExitOk : kExitIncomplete;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"root location and verification for polynomial families generated by 1/(1 + B(z)t + A(z)t^n)"};
    app.require_subcommand(1);

    std::string spec_path;
    long m = 0;
    RunConfig cfg;
    double z_re = 0.0, z_im = 0.0, q_re = 0.0, q_im = 0.0;
    std::string format = "csv";

    const auto add_common = [&](CLI::App* cmd, bool needs_m) {
        cmd->add_option("--spec", spec_path, "family spec file (JSON)")->required();
        if (needs_m) cmd->add_option("--m", m, "family index m")->required();
        cmd->add_option("--tol", cfg.tolerance, "classification tolerance");
        cmd->add_option("--residual-tol", cfg.residual_tol, "root residual acceptance threshold");
        cmd->add_option("--samples", cfg.samples, "sample count for curve/htheta");
        cmd->add_option("--out", cfg.output_path, "output file (default: stdout)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* gen = app.add_subcommand("gen", "expand H_m coefficients");
    add_common(gen, true);
    auto* locate = app.add_subcommand("locate", "locate all roots of H_m");
    add_common(locate, true);
    auto* quotients = app.add_subcommand("quotients", "denominator root quotients at located roots");
    add_common(quotients, true);
    auto* curve = app.add_subcommand("curve", "trace the root curve");
    add_common(curve, false);
    auto* htheta = app.add_subcommand("htheta", "sample h(theta) and the sign grid");
    add_common(htheta, true);
    auto* qdisc = app.add_subcommand("qdisc", "q-discriminant of the denominator, both forms");
    add_common(qdisc, false);
    qdisc->add_option("--z-re", z_re, "Re z")->required();
    qdisc->add_option("--z-im", z_im, "Im z")->required();
    qdisc->add_option("--q-re", q_re, "Re q")->required();
    qdisc->add_option("--q-im", q_im, "Im q")->required();
    auto* verify = app.add_subcommand("verify", "brute-force check against the curve");
    add_common(verify, true);

    CLI11_PARSE(app, argc, argv);
    cfg.format = (format == "json") ? RunConfig::Format::json : RunConfig::Format::csv;

    try {
        const FamilySpec spec = rootcurve::load_family_spec(spec_path);
        if (gen->parsed()) return cmd_gen(spec, m, cfg);
        if (locate->parsed()) return cmd_locate(spec, m, cfg);
        if (quotients->parsed()) return cmd_quotients(spec, m, cfg);
        if (curve->parsed()) return cmd_curve(spec, cfg);
        if (htheta->parsed()) return cmd_htheta(spec, m, cfg);
        if (qdisc->parsed()) return cmd_qdisc(spec, {z_re, z_im}, {q_re, q_im}, cfg);
        if (verify->parsed()) return cmd_verify(spec, m, cfg);
        std::cerr << "no subcommand\n";
        return kExitInternal;
    } catch (const rootcurve::SpecParseError& e) {
        std::cerr << "spec parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
