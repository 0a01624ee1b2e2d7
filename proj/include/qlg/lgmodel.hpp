#pragma once

#include <span>
#include <vector>

#include "qlg/qentropy.hpp"
#include "qlg/wigner.hpp"

namespace qlg {

/// A Leggett-Garg measurement scenario: n >= 3 sequential S_z measurements
/// on a spin-s system prepared completely mixed, with n-1 inter-measurement
/// rotation angles theta_{j+1,j} (dimensionless, theta = omega * dt).
/// Gaps may be unequal; zero gaps are accepted as the degenerate limit.
struct LGScenario {
    int n;
    SpinLabel spin;
    std::vector<double> gaps;

    LGScenario(int n_, SpinLabel spin_, std::vector<double> gaps_);

    static LGScenario equidistant(int n, SpinLabel spin, double total_theta);

    double total_angle() const;
};

/// Outcome distribution of any single measurement: uniform on 2s+1 values.
ProbVec uniform_marginal(SpinLabel s);

/// Joint distribution of two sequential measurements separated by theta:
/// p(m, m') = |d^(s)_{m',m}(theta)|^2 / (2s+1). Row variable is the earlier
/// outcome m; both marginals are uniform.
JointTable pair_joint(SpinLabel s, double theta);

/// F_q^(s)(theta): the conditional q-entropy H_q(later | earlier) of two
/// sequential measurements, evaluated as the closed sum over transition
/// probabilities (the conditional-entropy route is the test oracle).
double f_q(SpinLabel s, double theta, QParam q);

/// Characteristic quantity C_q = F_q(total) - sum_j F_q(gap_j).
/// Macrorealist statistics give C_q <= 0 for q >= 1; positive values witness
/// a Leggett-Garg violation.
double c_q(const LGScenario& scenario, QParam q);

/// Relative quantity C_q / ln_q(2s+1). Requires 2s+1 >= 2.
double tilde_c_q(const LGScenario& scenario, QParam q);

/// C_q from arbitrary pair statistics: n-1 consecutive-pair tables
/// (X_j, X_{j+1}) plus the endpoint table (X_1, X_n). Throws if the tables'
/// shared marginals disagree beyond kMarginalTol (message names the pair).
double generic_c_q(std::span<const JointTable> pair_tables,
                   const JointTable& endpoint_table, QParam q);

inline constexpr double kMarginalTol = 1e-8;

/// Location and height of the maximum of tilde_c_q over theta in (0, pi] for
/// an equidistant scenario, found by grid scan plus golden-section refinement
/// to 1e-6 in theta.
struct ViolationPeak {
    double theta;
    double value;
};
ViolationPeak peak_tilde_c_q(SpinLabel s, int n, QParam q, int grid_points = 512);

}  // namespace qlg
