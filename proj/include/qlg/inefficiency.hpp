#pragma once

#include <optional>
#include <vector>

#include "qlg/lgmodel.hpp"
#include "qlg/qentropy.hpp"

namespace qlg {

/// Detector efficiency: the probability that one observation clicks. Rejects
/// values outside [0, 1] at construction, so downstream formulas can assume
/// a valid efficiency.
class EtaModel {
public:
    EtaModel(double eta);  // implicit on purpose: c_q_eta(sc, 0.99, q)

    double value() const noexcept { return eta_; }

private:
    double eta_;
};

/// Inefficiency alteration of a pair table for detectors of efficiency eta:
/// the (d+1)x(d+1) table with entries eta^2 p(x,y), a no-click column
/// eta(1-eta) p(x), a no-click row eta(1-eta) p(y), and corner (1-eta)^2.
/// Its marginals equal eta_alter_single of the original marginals.
JointTable eta_alter_pair(const JointTable& j, EtaModel eta);

/// Closed form for the entropy of an altered single distribution:
/// eta^q H_q(p) + h_q(eta). Equals entropy(eta_alter_single(p, eta), q).
double h_eta_single(const ProbVec& p, EtaModel eta, QParam q);

/// Closed form for the entropy of an altered pair table:
/// eta^{2q} H_q(X,Y) + eta^q (1-eta)^q (H_q(X) + H_q(Y))
///   + (eta^q + (1-eta)^q + 1) h_q(eta).
/// Equals joint_entropy(eta_alter_pair(j, eta), q).
double h_eta_pair(const JointTable& j, EtaModel eta, QParam q);

/// The experimentally accessible characteristic quantity C_q^(etaeta),
/// assembled directly from altered-table entropies:
///   H^(ee)(X_1,X_n) - sum_j H^(ee)(X_j,X_{j+1}) + sum_k H^(e)(X_k).
double c_q_eta(const LGScenario& scenario, EtaModel eta, QParam q);

/// Same quantity through the identity eta^{2q} C_q - Delta_q(eta); cheaper,
/// used by the threshold search. The two routes agreeing is a test contract,
/// not an assumption.
double c_q_eta_closed_form(const LGScenario& scenario, EtaModel eta, QParam q);

/// Additional term Delta_q(eta) separating the ideal C_q from C_q^(etaeta).
/// For the spin model every intermediate marginal is uniform, so
///   Delta_q(eta) = (n-2) { eta^q (eta^q + 2(1-eta)^q - 1) ln_q(2s+1)
///                          + (eta^q + (1-eta)^q) h_q(eta) }.
/// Can be negative for q > 1 and eta near 1.
double delta_q(const LGScenario& scenario, EtaModel eta, QParam q);

/// Diagnostic ratio r_q(eta) = eta^{-2q} |Delta_q(eta)| / C_q. Small values
/// mean an observed violation cannot be blamed on inefficiency accounting.
/// Requires C_q > 0 and eta in (0, 1].
double ratio(const LGScenario& scenario, EtaModel eta, QParam q);

/// Smallest eta* in (0, 1] with C_q^(etaeta) > 0 for all eta in (eta*, 1],
/// located by downward scan plus bisection to tol on the closed form, then
/// re-verified on a grid above the result (no monotonicity is assumed).
/// Returns exactly 1 when no eta < 1 yields positivity.
/// Requires C_q > 0.
double critical_eta(const LGScenario& scenario, QParam q, double tol = 1e-6);

/// One computed record of the inefficiency analysis for a scenario/eta/q.
/// Invariant (tested): c_q_eta == eta^{2q} c_q - delta_q within 1e-10.
struct LGEfficiencyReport {
    int twice_spin;
    int n;
    std::vector<double> gaps;
    double theta_total;
    double q;
    double eta;
    double c_q;
    double tilde_c_q;
    double c_q_eta;
    double delta_q;
    std::optional<double> ratio;  // set only when c_q > 0 and eta > 0
};

LGEfficiencyReport make_report(const LGScenario& scenario, EtaModel eta, QParam q);

}  // namespace qlg
