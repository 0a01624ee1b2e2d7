// Acceptance gate: runs the seven release criteria end to end and prints one
// PASS/FAIL line per criterion. Exits with the number of failed criteria.
//
// Usage: qlg_acceptance --cli /path/to/qlg
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qlg/inefficiency.hpp"
#include "qlg/lgmodel.hpp"
#include "qlg/macroreal.hpp"
#include "qlg/qentropy.hpp"
#include "qlg/wigner.hpp"
#include "support/expm_oracle.hpp"

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

struct Check {
    bool ok = false;
    std::string detail;
};

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string format(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    double seconds = 0.0;
};

CliResult run_cli(const std::string& cli, const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("qlg_accept_" + std::to_string(++counter));
    const std::string command =
        "\"" + cli + "\" " + args + " > " + out.string() + " 2> /dev/null";

    const auto t0 = clock_type::now();
    const int raw = std::system(command.c_str());
    CliResult r;
    r.seconds = seconds_since(t0);
    r.exit_code = (raw == -1) ? -1 : WEXITSTATUS(raw);

    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    fs::remove(out);
    return r;
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    bool header = true;
    while (std::getline(lines, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

qlg::JointTable random_joint(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
    return {rows, cols, support::random_simplex(rows * cols, gen)};
}

// --- criterion 1: Table 1 reproduction ------------------------------------

Check criterion_table1(const std::string& cli) {
    const std::vector<double> expected = {0.711, 0.504, 0.386, 0.266, 0.212, 0.186, 0.173,
                                          0.167, 0.165, 0.174, 0.208, 0.330, 0.587, 1.364};
    const CliResult r = run_cli(cli, "table1");
    if (r.exit_code != 0) return {false, format("table1 exited with %d", r.exit_code)};

    const auto rows = parse_csv(r.out);
    if (rows.size() != expected.size())
        return {false, format("expected 14 rows, got %zu", rows.size())};

    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        worst = std::max(worst, std::abs(rows[i][1] - expected[i]));

    const bool ok = worst <= 0.01 && r.seconds < 1.0;
    return {ok, format("max |r_q - table| = %.2e (tol 0.01), %.2f s (budget 1 s)", worst,
                       r.seconds)};
}

// --- criterion 2: violation-curve shapes -----------------------------------

Check criterion_curves() {
    const auto t0 = clock_type::now();
    const qlg::SpinLabel half(1);
    const std::vector<double> qs = {1.0, 1.2, 1.5, 1.8, 2.4};
    const int points = 512;

    std::vector<double> argmax, upper_edge;
    for (double q : qs) {
        bool any_positive = false;
        double edge = 0.0;
        for (int i = 1; i <= points; ++i) {
            const double theta = std::numbers::pi * i / points;
            const double v = qlg::tilde_c_q(qlg::LGScenario::equidistant(3, half, theta), q);
            if (v > 0.0) {
                any_positive = true;
                edge = theta;
            }
        }
        if (!any_positive) return {false, format("no positivity window at q=%.1f", q)};
        upper_edge.push_back(edge);
        argmax.push_back(qlg::peak_tilde_c_q(half, 3, q, points).theta);
    }

    bool ordered = true;
    for (std::size_t i = 1; i < qs.size(); ++i) {
        if (!(argmax[i] > argmax[i - 1])) ordered = false;
        if (upper_edge[i] < upper_edge[i - 1] - 1e-12) ordered = false;
    }
    const double secs = seconds_since(t0);
    const bool ok = ordered && secs < 5.0;
    return {ok, format("argmax %.3f..%.3f strictly increasing, edge %.3f..%.3f, %.2f s "
                       "(budget 5 s)",
                       argmax.front(), argmax.back(), upper_edge.front(), upper_edge.back(),
                       secs)};
}

// --- criterion 3: macrorealism oracle --------------------------------------

Check criterion_oracle(const std::string& cli) {
    const CliResult r = run_cli(cli, "oracle --models 10000 --seed 1");
    if (r.exit_code != 0) return {false, format("oracle exited with %d", r.exit_code)};
    if (r.out.find("PASS") == std::string::npos) return {false, "oracle did not report PASS"};

    // Pull every reported per-q maximum and re-check the bound here.
    double worst = -1.0;
    std::istringstream lines(r.out);
    std::string line;
    int parsed = 0;
    while (std::getline(lines, line)) {
        const auto pos = line.find("max_c_q=");
        if (pos == std::string::npos) continue;
        worst = std::max(worst, std::stod(line.substr(pos + 8)));
        ++parsed;
    }
    if (parsed != 4) return {false, format("expected 4 q rows, got %d", parsed)};

    const bool ok = worst <= 1e-10 && r.seconds < 60.0;
    return {ok, format("10^4 models, max C_q = %.2e (bound 1e-10), %.1f s (budget 60 s)",
                       worst, r.seconds)};
}

// --- criterion 4: entropy-kernel identities ---------------------------------

Check criterion_kernel() {
    std::mt19937_64 gen(20240901);
    const std::vector<double> qs = {0.6, 1.0, 1.3, 2.0, 3.0};
    const std::vector<double> qs_mono = {1.0, 1.4, 2.2, 3.7};
    double worst_chain = 0.0, worst_ext = 0.0, worst_mono = 0.0, worst_eta = 0.0;

    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t rows = 2 + rep % 4, cols = 2 + (rep / 4) % 4;
        const auto j = random_joint(rows, cols, gen);
        const double q = qs[rep % qs.size()];

        const double hxy = qlg::joint_entropy(j, q);
        const double a = qlg::conditional_entropy(j, q, qlg::Conditional::FirstGivenSecond) +
                         qlg::entropy(j.marginal_y(), q);
        const double b = qlg::conditional_entropy(j, q, qlg::Conditional::SecondGivenFirst) +
                         qlg::entropy(j.marginal_x(), q);
        worst_chain = std::max({worst_chain, std::abs(hxy - a), std::abs(hxy - b)});
    }
    if (worst_chain > 1e-12) return {false, format("chain rule defect %.2e > 1e-12", worst_chain)};

    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t d = 2 + rep % 2;
        qlg::JointArray joint(3, d, support::random_simplex(d * d * d, gen));
        const double q = qs[rep % qs.size()];

        const double h3 = qlg::detail::entropy_of_span(joint.flat(), q);
        const int x[] = {0}, y[] = {1}, z[] = {2}, yz[] = {1, 2};
        const double split =
            qlg::conditional_entropy(joint.grouped_table(x, yz), q,
                                     qlg::Conditional::FirstGivenSecond) +
            qlg::conditional_entropy(joint.grouped_table(y, z), q,
                                     qlg::Conditional::FirstGivenSecond) +
            qlg::entropy(joint.marginal(2), q);
        worst_ext = std::max(worst_ext, std::abs(h3 - split));
    }
    if (worst_ext > 1e-10)
        return {false, format("extended chain rule defect %.2e > 1e-10", worst_ext)};

    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t rows = 2 + rep % 4, cols = 2 + (rep / 4) % 4;
        const auto j = random_joint(rows, cols, gen);
        const double q = qs_mono[rep % qs_mono.size()];

        const double gap_x =
            qlg::conditional_entropy(j, q, qlg::Conditional::FirstGivenSecond) -
            qlg::entropy(j.marginal_x(), q);
        const double gap_y =
            qlg::conditional_entropy(j, q, qlg::Conditional::SecondGivenFirst) -
            qlg::entropy(j.marginal_y(), q);
        worst_mono = std::max({worst_mono, gap_x, gap_y});
    }
    if (worst_mono > 1e-10)
        return {false, format("conditioning raised entropy by %.2e > 1e-10", worst_mono)};

    for (int rep = 0; rep < 1000; ++rep) {
        const double eta = support::uniform01(gen);
        const double q = qs[rep % qs.size()];

        const qlg::ProbVec p(support::random_simplex(2 + rep % 5, gen));
        const double single = std::abs(qlg::entropy(qlg::eta_alter_single(p, eta), q) -
                                       qlg::h_eta_single(p, eta, q));

        const auto j = random_joint(2 + rep % 3, 2 + (rep / 3) % 3, gen);
        const double pair = std::abs(qlg::joint_entropy(qlg::eta_alter_pair(j, eta), q) -
                                     qlg::h_eta_pair(j, eta, q));
        worst_eta = std::max({worst_eta, single, pair});
    }
    if (worst_eta > 1e-12)
        return {false, format("eta closed-form defect %.2e > 1e-12", worst_eta)};

    return {true, format("4x1000 instances; defects: chain %.1e, extended %.1e, monotone "
                         "%.1e, eta %.1e",
                         worst_chain, worst_ext, worst_mono, worst_eta)};
}

// --- criterion 5: inefficiency identity -------------------------------------

Check criterion_identity() {
    double worst = 0.0;
    for (int twice_s : {1, 2}) {
        for (int n : {3, 4}) {
            const auto scenario =
                qlg::LGScenario::equidistant(n, qlg::SpinLabel(twice_s), 0.9);
            for (double q : {1.0, 1.5, 2.0, 3.0}) {
                const double c = qlg::c_q(scenario, q);
                for (int k = 0; k <= 10; ++k) {
                    const double eta = k / 10.0;
                    const double direct = qlg::c_q_eta(scenario, eta, q);
                    const double closed =
                        std::pow(eta, 2.0 * q) * c - qlg::delta_q(scenario, eta, q);
                    worst = std::max(worst, std::abs(direct - closed));
                }
            }
        }
    }
    return {worst <= 1e-10,
            format("176 grid points (eta x q x s x n), max defect %.2e (tol 1e-10)", worst)};
}

// --- criterion 6: rotation-matrix validation --------------------------------

Check criterion_wigner() {
    const std::vector<double> thetas = {0.3, 0.9, 2.0, 5.5, -1.1};
    double worst_struct = 0.0;  // orthogonality, composition, exponential oracle
    for (int t = 1; t <= 10; ++t) {
        const qlg::SpinLabel s(t);
        const std::size_t dim = s.dim();
        for (double theta : thetas) {
            const auto d = qlg::d_matrix(s, theta);
            worst_struct = std::max(worst_struct, d.orthogonality_defect());

            const auto reference = support::expm_d_matrix(t, theta);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    worst_struct =
                        std::max(worst_struct, std::abs(d.at(i, j) - reference.at(i, j)));

            const auto first = qlg::d_matrix(s, 0.4 * theta);
            const auto second = qlg::d_matrix(s, 0.6 * theta);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < dim; ++k)
                        acc += second.at(i, k) * first.at(k, j);
                    worst_struct = std::max(worst_struct, std::abs(acc - d.at(i, j)));
                }
            }
        }
    }
    if (worst_struct > 1e-9)
        return {false, format("structure defect %.2e > 1e-9 (2s <= 10)", worst_struct)};

    double worst_stoch = 0.0;
    for (int t = 1; t <= 20; ++t) {
        const qlg::SpinLabel s(t);
        const std::size_t dim = s.dim();
        for (double theta : {0.9, 2.7, 4.2}) {
            const auto trans = qlg::transition_matrix(s, theta);
            for (std::size_t i = 0; i < dim; ++i) {
                double row = 0.0, col = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    row += trans.at(i, k);
                    col += trans.at(k, i);
                }
                worst_stoch = std::max({worst_stoch, std::abs(row - 1.0), std::abs(col - 1.0)});
            }
        }
    }
    if (worst_stoch > 1e-10)
        return {false, format("stochasticity defect %.2e > 1e-10 (2s <= 20)", worst_stoch)};

    return {true, format("structure defect %.1e (tol 1e-9), stochasticity %.1e (tol 1e-10)",
                         worst_struct, worst_stoch)};
}

// --- criterion 7: two-route consistency -------------------------------------

Check criterion_two_route() {
    double worst_f = 0.0;
    for (int twice_s : {1, 2, 3}) {
        const qlg::SpinLabel s(twice_s);
        for (int i = 0; i < 16; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / 16;
            for (double q : {1.0, 1.5, 2.0, 3.0}) {
                const double closed = qlg::f_q(s, theta, q);
                const double table = qlg::conditional_entropy(
                    qlg::pair_joint(s, theta), q, qlg::Conditional::SecondGivenFirst);
                worst_f = std::max(worst_f, std::abs(closed - table));
            }
        }
    }
    if (worst_f > 1e-10) return {false, format("f_q route defect %.2e > 1e-10", worst_f)};

    double worst_c = 0.0;
    const std::vector<std::pair<int, std::vector<double>>> cases = {
        {1, {0.45, 0.45}},
        {1, {0.3, 0.7}},
        {2, {0.2, 0.5, 0.9}},
        {3, {0.9, 0.9, 0.9}},
    };
    for (const auto& [twice_s, gaps] : cases) {
        const qlg::SpinLabel s(twice_s);
        const qlg::LGScenario scenario(static_cast<int>(gaps.size()) + 1, s, gaps);

        std::vector<qlg::JointTable> pairs;
        double total = 0.0;
        for (double gap : gaps) {
            pairs.push_back(qlg::pair_joint(s, gap));
            total += gap;
        }
        const auto endpoint = qlg::pair_joint(s, total);

        for (double q : {1.0, 1.5, 2.0, 3.0}) {
            const double generic = qlg::generic_c_q(pairs, endpoint, q);
            worst_c = std::max(worst_c, std::abs(generic - qlg::c_q(scenario, q)));
        }
    }
    if (worst_c > 1e-10) return {false, format("generic_c_q defect %.2e > 1e-10", worst_c)};

    return {true, format("f_q defect %.1e, generic_c_q defect %.1e (tol 1e-10)", worst_f,
                         worst_c)};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    }
    if (cli.empty()) {
        std::fprintf(stderr, "usage: %s --cli /path/to/qlg\n", argv[0]);
        return 64;
    }

    struct Criterion {
        const char* name;
        Check result;
    };
    const Criterion criteria[] = {
        {"Table 1 reproduction", criterion_table1(cli)},
        {"violation-curve shapes", criterion_curves()},
        {"macrorealism oracle", criterion_oracle(cli)},
        {"entropy-kernel identities", criterion_kernel()},
        {"inefficiency identity", criterion_identity()},
        {"rotation-matrix validation", criterion_wigner()},
        {"two-route consistency", criterion_two_route()},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        if (!c.result.ok) ++failures;
        std::printf("%s  criterion %d: %s — %s\n", c.result.ok ? "PASS" : "FAIL", index,
                    c.name, c.result.detail.c_str());
    }
    std::printf("%d/7 criteria passed\n", 7 - failures);
    return failures;
}
