// Command-line front end: tabulates solution branches, spectra and
// eigenfunction profiles, and runs the self-verification audit.
//
// Output is deterministic byte-for-byte: fixed column orders, 17-significant-
// digit CSV numbers, LF line endings, no timestamps.  Exit codes: 0 success,
// 1 execution/verification failure, 2 invalid configuration.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gelfand/analysis.hpp"
#include "gelfand/branch.hpp"
#include "gelfand/fd_eigensolver.hpp"
#include "gelfand/key_ode.hpp"
#include "gelfand/spectrum.hpp"
#include "gelfand/table.hpp"
#include "gelfand/verification.hpp"

namespace {

using gelfand::ProblemKind;
using ordered_json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ProblemKind parse_kind(const std::string& kind) {
    if (kind == "plus") return ProblemKind::PlusExp;
    if (kind == "minus") return ProblemKind::MinusExp;
    throw ConfigError("--kind must be 'plus' or 'minus'");
}

std::vector<double> make_grid(double lo, double hi, int count, const std::string& spacing) {
    if (count < 1) throw ConfigError("--tau-count must be at least 1");
    if (!(lo <= hi)) throw ConfigError("--tau-min must not exceed --tau-max");
    if (spacing != "linear" && spacing != "log")
        throw ConfigError("--tau-spacing must be 'linear' or 'log'");
    if (spacing == "log" && !(lo > 0.0))
        throw ConfigError("log spacing requires --tau-min > 0");
    std::vector<double> grid;
    grid.reserve(count);
    if (count == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        grid.push_back(spacing == "linear"
                           ? lo + (hi - lo) * t
                           : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t));
    }
    return grid;
}

void require_format(const std::string& format) {
    if (format != "csv" && format != "json")
        throw ConfigError("--format must be 'csv' or 'json'");
}

void require_grid_admissible(const std::vector<double>& grid, ProblemKind kind,
                             bool need_positive) {
    for (double tau : grid) {
        if (!gelfand::tau_admissible(tau, kind))
            throw ConfigError("tau grid leaves the admissible range of this branch");
        if (need_positive && !(tau > 0.0))
            throw ConfigError("this command requires tau > 0");
    }
}

void emit(const gelfand::Table& table, const ordered_json& meta, const std::string& format,
          const std::string& out_path) {
    std::string text;
    if (format == "csv") {
        text = gelfand::to_csv(table);
    } else {
        ordered_json doc;
        doc["meta"] = meta;
        doc["columns"] = table.columns;
        doc["rows"] = table.rows;
        text = doc.dump(2);
        text += '\n';
    }
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("failed writing output file: " + out_path);
}

// ---- branch ---------------------------------------------------------------

struct BranchOpts {
    std::string kind = "plus";
    double tau_min = 0.0;
    double tau_max = 3.0;
    int tau_count = 64;
    std::string spacing = "linear";
    std::string format = "csv";
    std::string out;
};

int run_branch(const BranchOpts& o) {
    require_format(o.format);
    const ProblemKind kind = parse_kind(o.kind);
    const std::vector<double> grid = make_grid(o.tau_min, o.tau_max, o.tau_count, o.spacing);
    require_grid_admissible(grid, kind, false);
    gelfand::Table table;
    table.columns = {"tau", "lambda", "alpha", "lambda_prime"};
    int sign_changes = 0;
    double prev = 0.0;
    for (double tau : grid) {
        const gelfand::BranchPoint p = gelfand::branch_point(tau, kind);
        const double dl = gelfand::lambda_derivative(tau, kind);
        if (prev != 0.0 && dl != 0.0 && (dl < 0.0) != (prev < 0.0)) ++sign_changes;
        if (dl != 0.0) prev = dl;
        table.rows.push_back({p.tau, p.lambda, p.alpha, dl});
    }
    ordered_json meta{{"command", "branch"},       {"kind", o.kind},
                      {"tau_min", o.tau_min},      {"tau_max", o.tau_max},
                      {"tau_count", o.tau_count},  {"tau_spacing", o.spacing},
                      {"lambda_prime_sign_changes", sign_changes}};
    emit(table, meta, o.format, o.out);
    return 0;
}

// ---- spectrum -------------------------------------------------------------

struct SpectrumOpts {
    std::string kind = "plus";
    double tau_min = 0.1;
    double tau_max = 3.0;
    int tau_count = 16;
    std::string spacing = "linear";
    int j_min = 1;
    int j_max = 4;
    std::string format = "csv";
    std::string out;
};

int run_spectrum(const SpectrumOpts& o) {
    require_format(o.format);
    const ProblemKind kind = parse_kind(o.kind);
    if (o.j_min < 1 || o.j_min > o.j_max)
        throw ConfigError("need 1 <= --j-min <= --j-max");
    const std::vector<double> grid = make_grid(o.tau_min, o.tau_max, o.tau_count, o.spacing);
    require_grid_admissible(grid, kind, true);
    gelfand::Table table;
    table.columns = {"tau",        "j",          "mu",      "sqrt_abs_mu",
                     "bracket_lo", "bracket_hi", "equation_residual"};
    for (double tau : grid) {
        const double c = gelfand::phase_coefficient(tau, kind);
        for (int j = o.j_min; j <= o.j_max; ++j) {
            const gelfand::EigenPair p = gelfand::mu_exact(j, tau, kind);
            const double s = std::sqrt(std::abs(p.mu));
            double lo, hi, residual;
            if (p.mu == 0.0) {
                lo = hi = 0.0;
                residual = std::abs(tau * std::tanh(tau) - 1.0);
            } else if (p.mu < 0.0) {
                lo = 0.0;
                hi = c;
                residual = std::abs(std::tanh(s) - s / c);
            } else if (kind == ProblemKind::PlusExp) {
                lo = gelfand::kHalfPi * (j - 1);
                hi = gelfand::kHalfPi * j;
                residual = std::abs(s + std::atan(c / s) - gelfand::kHalfPi * j);
            } else {
                lo = gelfand::kHalfPi * j;
                hi = gelfand::kHalfPi * (j + 1);
                residual = std::abs(s - std::atan(c / s) - gelfand::kHalfPi * j);
            }
            table.rows.push_back({tau, static_cast<double>(j), p.mu, s, lo, hi, residual});
        }
    }
    ordered_json meta{{"command", "spectrum"},    {"kind", o.kind},
                      {"tau_min", o.tau_min},     {"tau_max", o.tau_max},
                      {"tau_count", o.tau_count}, {"tau_spacing", o.spacing},
                      {"j_min", o.j_min},         {"j_max", o.j_max}};
    emit(table, meta, o.format, o.out);
    return 0;
}

// ---- eigenfunction --------------------------------------------------------

struct EigenfunctionOpts {
    std::string kind = "plus";
    double tau = 1.0;
    int j = 1;
    int samples = 201;
    std::string format = "csv";
    std::string out;
};

int run_eigenfunction(const EigenfunctionOpts& o) {
    require_format(o.format);
    const ProblemKind kind = parse_kind(o.kind);
    if (o.j < 1) throw ConfigError("--j must be at least 1");
    if (o.samples < 2) throw ConfigError("--samples must be at least 2");
    if (!gelfand::tau_admissible(o.tau, kind) || !(o.tau > 0.0))
        throw ConfigError("--tau outside the admissible range of this branch");
    const gelfand::EigenPair pair = gelfand::mu_exact(o.j, o.tau, kind);
    const gelfand::EigenfunctionProfile phi(pair);
    const double sup = phi.sup_norm();
    gelfand::Table table;
    table.columns = {"x", "phi_raw", "phi_sup_one"};
    for (int i = 0; i < o.samples; ++i) {
        const double x = -1.0 + 2.0 * i / (o.samples - 1);
        const double v = phi.raw(x);
        table.rows.push_back({x, v, v / sup});
    }
    ordered_json meta{{"command", "eigenfunction"},
                     {"kind", o.kind},
                     {"tau", o.tau},
                     {"j", o.j},
                     {"samples", o.samples},
                     {"mu", pair.mu},
                     {"sup_norm", sup}};
    emit(table, meta, o.format, o.out);
    return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOpts {
    int oracle_n = 2000;
    double tol = 1e-11;
    int j_max = 4;
    double inject_mu_perturbation = 0.0;
    std::string format = "json";
    std::string out;
};

int run_verify(const VerifyOpts& o) {
    require_format(o.format);
    if (o.oracle_n < 32) throw ConfigError("--oracle-n must be at least 32");
    if (!(o.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (o.j_max < 1) throw ConfigError("--j-max must be at least 1");
    gelfand::VerifyConfig cfg;
    cfg.oracle_n = o.oracle_n;
    cfg.oracle_tol = o.tol;
    cfg.j_max = o.j_max;
    cfg.mu_perturbation = o.inject_mu_perturbation;
    const gelfand::VerificationReport report = gelfand::run_verification(cfg);

    const ordered_json meta{{"command", "verify"},
                            {"oracle_n", o.oracle_n},
                            {"tol", o.tol},
                            {"j_max", o.j_max},
                            {"mu_perturbation", o.inject_mu_perturbation}};
    std::string text;
    if (o.format == "csv") {
        gelfand::Table table;
        table.columns = {"check_index", "passed", "measured", "limit"};
        for (size_t i = 0; i < report.checks.size(); ++i) {
            const gelfand::VerifyCheck& c = report.checks[i];
            table.rows.push_back({static_cast<double>(i), c.passed ? 1.0 : 0.0,
                                  c.measured, c.limit});
        }
        text = gelfand::to_csv(table);
    } else {
        ordered_json doc;
        doc["meta"] = meta;
        doc["checks"] = ordered_json::array();
        for (const gelfand::VerifyCheck& c : report.checks)
            doc["checks"].push_back({{"name", c.name},
                                     {"passed", c.passed},
                                     {"measured", c.measured},
                                     {"limit", c.limit},
                                     {"detail", c.detail}});
        doc["records"] = ordered_json::array();
        for (const gelfand::LimitReport& r : report.records)
            doc["records"].push_back({{"quantity", r.quantity},
                                      {"tau", r.tau},
                                      {"measured", r.measured},
                                      {"target", r.target},
                                      {"deviation", r.deviation}});
        doc["all_passed"] = report.all_passed();
        text = doc.dump(2);
        text += '\n';
    }
    if (o.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream out(o.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + o.out);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact branches, spectra and eigenfunctions of the one-dimensional "
                 "Gel'fand problems u'' + lambda e^{+-u} = 0 on (-1,1)"};
    app.require_subcommand(1);

    BranchOpts branch;
    CLI::App* cmd_branch = app.add_subcommand("branch", "Tabulate (tau, lambda, alpha, dlambda/dtau)");
    cmd_branch->add_option("--kind", branch.kind, "plus | minus");
    cmd_branch->add_option("--tau-min", branch.tau_min);
    cmd_branch->add_option("--tau-max", branch.tau_max);
    cmd_branch->add_option("--tau-count", branch.tau_count);
    cmd_branch->add_option("--tau-spacing", branch.spacing, "linear | log");
    cmd_branch->add_option("--format", branch.format, "csv | json");
    cmd_branch->add_option("--out", branch.out, "output path (default: stdout)");

    SpectrumOpts spectrum;
    CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "Tabulate eigenvalues mu_j over a tau grid");
    cmd_spectrum->add_option("--kind", spectrum.kind, "plus | minus");
    cmd_spectrum->add_option("--tau-min", spectrum.tau_min);
    cmd_spectrum->add_option("--tau-max", spectrum.tau_max);
    cmd_spectrum->add_option("--tau-count", spectrum.tau_count);
    cmd_spectrum->add_option("--tau-spacing", spectrum.spacing, "linear | log");
    cmd_spectrum->add_option("--j-min", spectrum.j_min);
    cmd_spectrum->add_option("--j-max", spectrum.j_max);
    cmd_spectrum->add_option("--format", spectrum.format, "csv | json");
    cmd_spectrum->add_option("--out", spectrum.out, "output path (default: stdout)");

    EigenfunctionOpts eigenfunction;
    CLI::App* cmd_eigenfunction =
        app.add_subcommand("eigenfunction", "Sample one eigenfunction profile on [-1,1]");
    cmd_eigenfunction->add_option("--kind", eigenfunction.kind, "plus | minus");
    cmd_eigenfunction->add_option("--tau", eigenfunction.tau);
    cmd_eigenfunction->add_option("--j", eigenfunction.j);
    cmd_eigenfunction->add_option("--samples", eigenfunction.samples);
    cmd_eigenfunction->add_option("--format", eigenfunction.format, "csv | json");
    cmd_eigenfunction->add_option("--out", eigenfunction.out, "output path (default: stdout)");

    VerifyOpts verify;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "Cross-check closed forms against the finite-difference oracle");
    cmd_verify->add_option("--oracle-n", verify.oracle_n, "interior mesh points (>= 32)");
    cmd_verify->add_option("--tol", verify.tol, "oracle bisection tolerance");
    cmd_verify->add_option("--j-max", verify.j_max, "audit eigenvalues 1..j_max");
    cmd_verify->add_option("--inject-mu-perturbation", verify.inject_mu_perturbation,
                           "test hook: offset added to exact eigenvalues; a nonzero "
                           "value must make the audit fail");
    cmd_verify->add_option("--format", verify.format, "json | csv");
    cmd_verify->add_option("--out", verify.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_branch)) return run_branch(branch);
        if (app.got_subcommand(cmd_spectrum)) return run_spectrum(spectrum);
        if (app.got_subcommand(cmd_eigenfunction)) return run_eigenfunction(eigenfunction);
        return run_verify(verify);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
