#include "qlg/lgmodel.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qlg {

LGScenario::LGScenario(int n_, SpinLabel spin_, std::vector<double> gaps_)
    : n(n_), spin(spin_), gaps(std::move(gaps_)) {
    if (n < 3) {
        throw std::domain_error("LGScenario: need n >= 3 measurements");
    }
    if (gaps.size() != static_cast<std::size_t>(n) - 1) {
        throw std::invalid_argument("LGScenario: expected " + std::to_string(n - 1) +
                                    " gaps, got " + std::to_string(gaps.size()));
    }
    for (double g : gaps) {
        if (!std::isfinite(g) || g < 0.0) {
            throw std::domain_error("LGScenario: gaps must be finite and non-negative");
        }
    }
}

LGScenario LGScenario::equidistant(int n, SpinLabel spin, double total_theta) {
    if (n < 3) {
        throw std::domain_error("LGScenario: need n >= 3 measurements");
    }
    const double gap = total_theta / static_cast<double>(n - 1);
    return LGScenario(n, spin, std::vector<double>(static_cast<std::size_t>(n) - 1, gap));
}

double LGScenario::total_angle() const {
    return std::accumulate(gaps.begin(), gaps.end(), 0.0);
}

ProbVec uniform_marginal(SpinLabel s) {
    return ProbVec::uniform(s.dim());
}

JointTable pair_joint(SpinLabel s, double theta) {
    const TransitionMatrix trans = transition_matrix(s, theta);
    const std::size_t d = s.dim();
    std::vector<double> probs(d * d);
    // Row = earlier outcome m, column = later outcome m'; the earlier
    // marginal of the completely mixed state is uniform.
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t mp = 0; mp < d; ++mp) {
            probs[m * d + mp] = trans.at(mp, m) / static_cast<double>(d);
        }
    }
    return JointTable(d, d, std::move(probs));
}

double f_q(SpinLabel s, double theta, QParam q) {
    const TransitionMatrix trans = transition_matrix(s, theta);
    const std::size_t d = s.dim();
    std::vector<double> given_m(d);
    double acc = 0.0;
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t mp = 0; mp < d; ++mp) given_m[mp] = trans.at(mp, m);
        acc += detail::entropy_of_span(given_m, q);
    }
    return std::pow(static_cast<double>(d), -q.value()) * acc;
}

double c_q(const LGScenario& scenario, QParam q) {
    double c = f_q(scenario.spin, scenario.total_angle(), q);
    for (double gap : scenario.gaps) c -= f_q(scenario.spin, gap, q);
    return c;
}

double tilde_c_q(const LGScenario& scenario, QParam q) {
    if (scenario.spin.dim() < 2) {
        throw std::domain_error("tilde_c_q: needs at least two outcomes (2s+1 >= 2)");
    }
    return c_q(scenario, q) / max_entropy(scenario.spin.dim(), q);
}

namespace {

void require_close_marginals(const ProbVec& a, const ProbVec& b, const std::string& where) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("generic_c_q: marginal dimension mismatch at " + where);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > kMarginalTol) {
            throw std::invalid_argument("generic_c_q: inconsistent marginals at " + where);
        }
    }
}

}  // namespace

double generic_c_q(std::span<const JointTable> pair_tables,
                   const JointTable& endpoint_table, QParam q) {
    const std::size_t links = pair_tables.size();
    if (links < 2) {
        throw std::invalid_argument("generic_c_q: need at least two consecutive-pair tables");
    }
    // The tables describe one chain X_1..X_n, so every variable shared by two
    // tables must carry the same distribution in both.
    for (std::size_t j = 0; j + 1 < links; ++j) {
        require_close_marginals(pair_tables[j].marginal_y(), pair_tables[j + 1].marginal_x(),
                                "X_" + std::to_string(j + 2) + " between pair tables " +
                                    std::to_string(j + 1) + " and " + std::to_string(j + 2));
    }
    require_close_marginals(endpoint_table.marginal_x(), pair_tables.front().marginal_x(),
                            "X_1 between the endpoint table and pair table 1");
    require_close_marginals(endpoint_table.marginal_y(), pair_tables.back().marginal_y(),
                            "X_" + std::to_string(links + 1) +
                                " between the endpoint table and pair table " +
                                std::to_string(links));

    // Joint-entropy form of the characteristic quantity: the chain rule turns
    // H(X_n|X_1) - sum_j H(X_{j+1}|X_j) into pure joint/marginal entropies.
    double c = joint_entropy(endpoint_table, q);
    for (const JointTable& t : pair_tables) c -= joint_entropy(t, q);
    for (std::size_t j = 1; j < links; ++j) {
        c += entropy(pair_tables[j].marginal_x(), q);
    }
    return c;
}

ViolationPeak peak_tilde_c_q(SpinLabel s, int n, QParam q, int grid_points) {
    if (grid_points < 2) {
        throw std::invalid_argument("peak_tilde_c_q: need at least two grid points");
    }
    // theta here is the total first-to-last angle of an equidistant scenario.
    const double step = std::numbers::pi / static_cast<double>(grid_points);
    auto value_at = [&](double theta) {
        return tilde_c_q(LGScenario::equidistant(n, s, theta), q);
    };

    int best = 1;
    double best_value = value_at(step);
    for (int i = 2; i <= grid_points; ++i) {
        const double v = value_at(i * step);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }

    // Golden-section refinement between the grid neighbors of the best point.
    constexpr double inv_phi = 0.6180339887498949;
    double lo = (best > 1 ? best - 1 : best) * step;
    double hi = (best < grid_points ? best + 1 : best) * step;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = value_at(x1);
    double f2 = value_at(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = value_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = value_at(x1);
        }
    }
    const double theta = 0.5 * (lo + hi);
    return ViolationPeak{theta, value_at(theta)};
}

}  // namespace qlg
