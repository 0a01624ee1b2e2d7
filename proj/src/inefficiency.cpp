#include "qlg/inefficiency.hpp"

#include <cmath>
#include <stdexcept>

namespace qlg {

EtaModel::EtaModel(double eta) : eta_(eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::domain_error("EtaModel: efficiency must lie in [0, 1]");
    }
}

JointTable eta_alter_pair(const JointTable& j, EtaModel eta_model) {
    const double eta = eta_model.value();
    const std::size_t R = j.rows(), C = j.cols();
    const ProbVec px = j.marginal_x();
    const ProbVec py = j.marginal_y();

    std::vector<double> probs((R + 1) * (C + 1));
    for (std::size_t x = 0; x < R; ++x) {
        for (std::size_t y = 0; y < C; ++y) {
            probs[x * (C + 1) + y] = eta * eta * j.at(x, y);
        }
        probs[x * (C + 1) + C] = eta * (1.0 - eta) * px[x];
    }
    for (std::size_t y = 0; y < C; ++y) {
        probs[R * (C + 1) + y] = eta * (1.0 - eta) * py[y];
    }
    probs[R * (C + 1) + C] = (1.0 - eta) * (1.0 - eta);

    std::vector<Outcome> row_labels = j.row_labels();
    std::vector<Outcome> col_labels = j.col_labels();
    row_labels.push_back(Outcome::none());
    col_labels.push_back(Outcome::none());
    return JointTable(R + 1, C + 1, std::move(probs),
                      std::move(row_labels), std::move(col_labels));
}

double h_eta_single(const ProbVec& p, EtaModel eta_model, QParam q) {
    const double eta = eta_model.value();
    return std::pow(eta, q.value()) * entropy(p, q) + binary_entropy(eta, q);
}

double h_eta_pair(const JointTable& j, EtaModel eta_model, QParam q) {
    const double eta = eta_model.value();
    const double eq = std::pow(eta, q.value());
    const double fq = std::pow(1.0 - eta, q.value());
    return eq * eq * joint_entropy(j, q) +
           eq * fq * (entropy(j.marginal_x(), q) + entropy(j.marginal_y(), q)) +
           (eq + fq + 1.0) * binary_entropy(eta, q);
}

double c_q_eta(const LGScenario& scenario, EtaModel eta, QParam q) {
    const SpinLabel s = scenario.spin;

    // Assembled the long way round: build each altered table and take its
    // entropy, so this route shares no algebra with the closed form.
    double c = joint_entropy(eta_alter_pair(pair_joint(s, scenario.total_angle()), eta), q);
    for (double gap : scenario.gaps) {
        c -= joint_entropy(eta_alter_pair(pair_joint(s, gap), eta), q);
    }
    const double single =
        entropy(eta_alter_single(uniform_marginal(s), eta.value()), q);
    c += static_cast<double>(scenario.n - 2) * single;
    return c;
}

double delta_q(const LGScenario& scenario, EtaModel eta_model, QParam q) {
    const double eta = eta_model.value();
    const double eq = std::pow(eta, q.value());
    const double fq = std::pow(1.0 - eta, q.value());
    const double log_d = max_entropy(scenario.spin.dim(), q);
    const double h = binary_entropy(eta, q);
    return static_cast<double>(scenario.n - 2) *
           (eq * (eq + 2.0 * fq - 1.0) * log_d + (eq + fq) * h);
}

double c_q_eta_closed_form(const LGScenario& scenario, EtaModel eta, QParam q) {
    return std::pow(eta.value(), 2.0 * q.value()) * c_q(scenario, q) -
           delta_q(scenario, eta, q);
}

double ratio(const LGScenario& scenario, EtaModel eta_model, QParam q) {
    const double eta = eta_model.value();
    if (!(eta > 0.0)) {
        throw std::domain_error("ratio: eta must lie in (0, 1]");
    }
    const double ideal = c_q(scenario, q);
    if (!(ideal > 0.0)) {
        throw std::domain_error("ratio: scenario does not violate the bound (C_q <= 0)");
    }
    return std::pow(eta, -2.0 * q.value()) * std::abs(delta_q(scenario, eta_model, q)) / ideal;
}

double critical_eta(const LGScenario& scenario, QParam q, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("critical_eta: tolerance must be positive");
    }
    const double ideal = c_q(scenario, q);
    if (!(ideal > 0.0)) {
        throw std::domain_error("critical_eta: scenario does not violate the bound (C_q <= 0)");
    }
    auto g = [&](double eta) { return c_q_eta_closed_form(scenario, eta, q); };

    // Descend from eta = 1 (where g = C_q > 0) to the largest non-positive
    // grid point; the crossing is bracketed without assuming g is monotone.
    constexpr double step = 1e-3;
    constexpr int grid = 999;
    double hi = 1.0;
    double lo = -1.0;
    for (int k = 1; k <= grid; ++k) {
        const double eta = 1.0 - k * step;
        if (g(eta) <= 0.0) {
            lo = eta;
            break;
        }
        hi = eta;
    }
    if (lo < 0.0) {
        // Positive across the whole grid; the threshold sits below it.
        lo = 0.0;
        hi = 1.0 - grid * step;
    }

    for (int round = 0; round < 64; ++round) {
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (g(mid) > 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // Re-verify positivity above the candidate on a fresh grid; if it
        // fails anywhere, restart the bisection from the failure upwards.
        bool clean = true;
        double above = 1.0;
        for (int i = 255; i >= 1; --i) {
            const double eta = hi + (1.0 - hi) * i / 256.0;
            if (g(eta) <= 0.0) {
                lo = eta;
                hi = above;
                clean = false;
                break;
            }
            above = eta;
        }
        if (clean) return hi;
    }
    return 1.0;  // positivity could not be certified anywhere below 1
}

LGEfficiencyReport make_report(const LGScenario& scenario, EtaModel eta, QParam q) {
    LGEfficiencyReport r;
    r.twice_spin = scenario.spin.twice();
    r.n = scenario.n;
    r.gaps = scenario.gaps;
    r.theta_total = scenario.total_angle();
    r.q = q.value();
    r.eta = eta.value();
    r.c_q = c_q(scenario, q);
    r.tilde_c_q = tilde_c_q(scenario, q);
    r.c_q_eta = c_q_eta(scenario, eta, q);
    r.delta_q = delta_q(scenario, eta, q);
    if (r.c_q > 0.0 && eta.value() > 0.0) {
        r.ratio = ratio(scenario, eta, q);
    }
    return r;
}

}  // namespace qlg
