#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qlg/lgmodel.hpp"
#include "qlg/qentropy.hpp"

namespace qlg {

/// Full joint-array budget for brute-force certification: d^n entries.
inline constexpr std::size_t kJointBudget = 1000000;

/// Finite macrorealist hidden-variable model: a distribution rho over L
/// hidden values and, for each hidden value and time index, a response
/// distribution P(x_j | lambda) over d outcomes.
struct HiddenModel {
    ProbVec rho;
    std::vector<std::vector<ProbVec>> response;  // [lambda][time j]

    HiddenModel(ProbVec rho_, std::vector<std::vector<ProbVec>> response_);

    int n() const noexcept { return static_cast<int>(response.front().size()); }
    std::size_t d() const noexcept { return response.front().front().size(); }
    std::size_t hidden_count() const noexcept { return rho.size(); }
};

/// Draw a random hidden-variable model; a deterministic function of seed.
/// Response rows come from the flat simplex, mixed with deterministic vertex
/// rows at a 10% rate so the extremal models are exercised.
HiddenModel sample_model(int n, std::size_t d, std::size_t L, std::uint64_t seed);

/// Joint distribution over n variables with a common d-letter alphabet,
/// stored flat with the last variable fastest.
class JointArray {
public:
    JointArray(int vars, std::size_t alphabet, std::vector<double> probs);

    int vars() const noexcept { return vars_; }
    std::size_t alphabet() const noexcept { return alphabet_; }
    std::span<const double> flat() const noexcept { return probs_; }

    ProbVec marginal(int j) const;
    /// Pair table of (X_i, X_j), i < j (0-based variable indices).
    JointTable pair_table(int i, int j) const;
    /// Table whose row variable is the tuple (X_i : i in first) and column
    /// variable the tuple (X_j : j in second); tuples are flattened
    /// lexicographically. Used for conditioning on several variables.
    JointTable grouped_table(std::span<const int> first, std::span<const int> second) const;

private:
    int vars_;
    std::size_t alphabet_;
    std::vector<double> probs_;
};

/// p(x_1,...,x_n) = sum_lambda rho(lambda) prod_j P(x_j|lambda).
/// Throws when d^n exceeds kJointBudget.
JointArray joint_distribution(const HiddenModel& m);

/// C_q of the model's statistics: consecutive-pair and endpoint tables are
/// marginalized out of joint_distribution and fed to generic_c_q. For every
/// valid model and q >= 1 the result is <= 0 (up to rounding); that bound is
/// the entropic Leggett-Garg inequality this module certifies by brute force.
double certify(const HiddenModel& m, QParam q);

}  // namespace qlg
