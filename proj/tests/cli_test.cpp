#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

// Path of the command-line binary, injected by the build.
#ifndef GELFAND_CLI_PATH
#error "GELFAND_CLI_PATH must be defined"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(GELFAND_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

int run_cli_capture(const std::string& args, const fs::path& stdout_path) {
    const std::string cmd = std::string(GELFAND_CLI_PATH) + " " + args + " > " +
                            stdout_path.string() + " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_file(const std::string& name) {
    return fs::path(::testing::TempDir()) / name;
}

/// Parses the fixed-format CSV: header line, then numeric rows.
std::vector<std::vector<double>> parse_csv_rows(const std::string& text,
                                                std::vector<std::string>* header = nullptr) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        if (first) {
            if (header) {
                while (std::getline(cells, cell, ',')) header->push_back(cell);
            }
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

TEST(CliBranch, FoldShowsUpAsOneDerivativeSignChange) {
    const fs::path out = temp_file("branch_fold.json");
    ASSERT_EQ(run_cli("branch --kind plus --tau-min 0.2 --tau-max 3 --tau-count 57 "
                      "--format json --out " + out.string()),
              0);
    const json doc = json::parse(slurp(out));
    EXPECT_EQ(doc["meta"]["command"], "branch");
    EXPECT_EQ(doc["meta"]["lambda_prime_sign_changes"], 1);
    const std::vector<std::string> cols = doc["columns"];
    ASSERT_EQ(cols.size(), 4u);
    EXPECT_EQ(cols[0], "tau");
    EXPECT_EQ(cols[1], "lambda");
    EXPECT_EQ(cols[2], "alpha");
    EXPECT_EQ(cols[3], "lambda_prime");
    double lambda_max = 0.0;
    for (const auto& row : doc["rows"]) lambda_max = std::max(lambda_max, row[1].get<double>());
    EXPECT_GT(lambda_max, 0.87);
    EXPECT_LE(lambda_max, 0.87845767978129030 + 1e-12);  // sup over the branch
}

TEST(CliBranch, MinusBranchIsStrictlyIncreasing) {
    const fs::path out = temp_file("branch_minus.csv");
    ASSERT_EQ(run_cli("branch --kind minus --tau-min 0.1 --tau-max 1.5 --tau-count 30 "
                      "--out " + out.string()),
              0);
    std::vector<std::string> header;
    const auto rows = parse_csv_rows(slurp(out), &header);
    ASSERT_EQ(rows.size(), 30u);
    for (size_t i = 0; i < rows.size(); ++i) {
        EXPECT_GT(rows[i][3], 0.0) << "lambda' at row " << i;
        if (i > 0) {
            EXPECT_GT(rows[i][1], rows[i - 1][1]) << "lambda at row " << i;
            EXPECT_GT(rows[i][2], rows[i - 1][2]) << "alpha at row " << i;
        }
    }
}

TEST(CliSpectrum, FoldRowCarriesAnExactZero) {
    const fs::path out = temp_file("spectrum_fold.csv");
    ASSERT_EQ(run_cli("spectrum --kind plus --tau-min 1.1996786402577338 "
                      "--tau-max 1.1996786402577338 --tau-count 1 --j-min 1 --j-max 2 "
                      "--out " + out.string()),
              0);
    const auto rows = parse_csv_rows(slurp(out));
    ASSERT_EQ(rows.size(), 2u);
    // columns: tau, j, mu, sqrt_abs_mu, bracket_lo, bracket_hi, equation_residual
    EXPECT_EQ(rows[0][2], 0.0);
    EXPECT_EQ(rows[0][4], 0.0);
    EXPECT_EQ(rows[0][5], 0.0);
    EXPECT_LE(rows[0][6], 1e-12);
    EXPECT_GT(rows[1][2], 0.0);  // mu_2 stays positive at the fold
}

TEST(CliSpectrum, BracketsContainTheRootsAndResidualsVanish) {
    const fs::path out = temp_file("spectrum_minus.csv");
    ASSERT_EQ(run_cli("spectrum --kind minus --tau-min 0.2 --tau-max 1.5 --tau-count 8 "
                      "--j-min 1 --j-max 5 --out " + out.string()),
              0);
    const auto rows = parse_csv_rows(slurp(out));
    ASSERT_EQ(rows.size(), 40u);
    double prev_tau = -1.0, prev_mu = 0.0;
    for (const auto& row : rows) {
        EXPECT_GT(row[3], row[4]);  // sqrt|mu| above bracket_lo
        EXPECT_LT(row[3], row[5]);  // and below bracket_hi
        EXPECT_LE(row[6], 1e-12);
        if (row[0] == prev_tau) {
            EXPECT_GT(row[2], prev_mu);  // ascending in j
        }
        prev_tau = row[0];
        prev_mu = row[2];
    }
}

TEST(CliEigenfunction, HyperbolicModeProfile) {
    const fs::path out = temp_file("eigenfunction_neg.json");
    ASSERT_EQ(run_cli("eigenfunction --kind plus --tau 2 --j 1 --samples 101 "
                      "--format json --out " + out.string()),
              0);
    const json doc = json::parse(slurp(out));
    EXPECT_NEAR(doc["meta"]["mu"].get<double>(), -3.3548415926843740, 1e-12);
    const auto& rows = doc["rows"];
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(rows[0][0].get<double>(), -1.0);
    EXPECT_LE(std::abs(rows[0][2].get<double>()), 1e-10);    // boundary zero
    EXPECT_LE(std::abs(rows[100][2].get<double>()), 1e-10);
    EXPECT_NEAR(rows[50][2].get<double>(), 1.0, 1e-12);      // peak at the center
    int sign_changes = 0;
    double prev = 0.0;
    for (size_t i = 1; i + 1 < rows.size(); ++i) {
        const double v = rows[i][1].get<double>();
        if (v == 0.0) continue;
        if (prev != 0.0 && (v < 0.0) != (prev < 0.0)) ++sign_changes;
        prev = v;
    }
    EXPECT_EQ(sign_changes, 0);
}

TEST(CliEigenfunction, NodeCountMatchesTheIndex) {
    const fs::path out = temp_file("eigenfunction_j3.csv");
    ASSERT_EQ(run_cli("eigenfunction --kind plus --tau 0.5 --j 3 --samples 201 "
                      "--out " + out.string()),
              0);
    const auto rows = parse_csv_rows(slurp(out));
    ASSERT_EQ(rows.size(), 201u);
    int sign_changes = 0;
    double prev = 0.0;
    for (size_t i = 1; i + 1 < rows.size(); ++i) {
        const double v = rows[i][1];
        if (v == 0.0) continue;
        if (prev != 0.0 && (v < 0.0) != (prev < 0.0)) ++sign_changes;
        prev = v;
    }
    EXPECT_EQ(sign_changes, 2);
}

TEST(CliErrors, InvalidConfigurationsExitTwoAndWriteNothing) {
    const fs::path out = temp_file("never_written.csv");
    std::error_code ec;
    fs::remove(out, ec);
    EXPECT_EQ(run_cli("spectrum --tau-count 0 --out " + out.string()), 2);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_EQ(run_cli("branch --kind frob"), 2);
    EXPECT_EQ(run_cli("eigenfunction --tau -1"), 2);
    EXPECT_EQ(run_cli("spectrum --kind minus --tau-max 2"), 2);   // past pi/2
    EXPECT_EQ(run_cli("branch --format yaml"), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli(""), 2);  // a subcommand is required
    EXPECT_EQ(run_cli("--help"), 0);
}

TEST(CliDeterminism, RepeatRunsAreByteIdentical) {
    const std::string opts = "verify --oracle-n 200 --j-max 3 ";
    for (const auto& format : {std::string("json"), std::string("csv")}) {
        const fs::path a = temp_file("verify_a." + format);
        const fs::path b = temp_file("verify_b." + format);
        ASSERT_EQ(run_cli(opts + "--format " + format + " --out " + a.string()), 0);
        ASSERT_EQ(run_cli(opts + "--format " + format + " --out " + b.string()), 0);
        const std::string text_a = slurp(a);
        ASSERT_FALSE(text_a.empty());
        EXPECT_EQ(text_a, slurp(b)) << "format=" << format;
        EXPECT_EQ(text_a.find('\r'), std::string::npos) << "LF line endings only";
    }
}

TEST(CliVerify, InjectedPerturbationFailsTheAudit) {
    const fs::path out = temp_file("verify_injected.json");
    ASSERT_EQ(run_cli("verify --oracle-n 200 --j-max 2 --inject-mu-perturbation 1e-2 "
                      "--format json --out " + out.string()),
              1);
    const json doc = json::parse(slurp(out));
    EXPECT_FALSE(doc["all_passed"].get<bool>());
    EXPECT_EQ(doc["meta"]["mu_perturbation"].get<double>(), 1e-2);
    bool saw_failed_oracle_check = false;
    for (const auto& c : doc["checks"]) {
        if (!c["passed"].get<bool>() &&
            c["name"].get<std::string>().rfind("mu-vs-oracle", 0) == 0)
            saw_failed_oracle_check = true;
    }
    EXPECT_TRUE(saw_failed_oracle_check);
}

TEST(CliStdout, DefaultSinkIsStdout) {
    const fs::path captured = temp_file("branch_stdout.csv");
    ASSERT_EQ(run_cli_capture("branch --tau-min 0 --tau-max 1 --tau-count 3", captured), 0);
    const std::string text = slurp(captured);
    ASSERT_EQ(text.rfind("tau,lambda,alpha,lambda_prime\n", 0), 0u);
    std::vector<std::string> header;
    const auto rows = parse_csv_rows(text, &header);
    EXPECT_EQ(rows.size(), 3u);
    // tau = 0 start: lambda(0) = 0, alpha(0) = 0
    EXPECT_EQ(rows[0][1], 0.0);
    EXPECT_EQ(rows[0][2], 0.0);
}

}  // namespace
