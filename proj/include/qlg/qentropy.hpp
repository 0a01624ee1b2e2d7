#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qlg {

/// Entropic index q > 0. Values within kShannonSwitch of 1 dispatch to the
/// Shannon-limit formulas; the generic branch is written so results stay
/// continuous across the switch.
class QParam {
public:
    static constexpr double kShannonSwitch = 1e-9;

    QParam(double q);  // implicit on purpose: entropy(p, 2.0) reads naturally

    double value() const noexcept { return q_; }
    bool shannon_limit() const noexcept;

private:
    double q_;
};

/// Outcome label: an ordinary integer outcome or the distinguished no-click
/// event registered by an inefficient detector.
struct Outcome {
    int id = 0;
    bool no_click = false;

    static Outcome value(int v) noexcept { return {v, false}; }
    static Outcome none() noexcept { return {0, true}; }

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Finite discrete probability distribution over labeled outcomes.
///
/// Construction validates: entries >= 0 (values within kNegClamp below zero
/// are clamped to 0) and |sum - 1| <= kNormTol. Immutable afterwards.
class ProbVec {
public:
    static constexpr double kNormTol = 1e-9;
    static constexpr double kNegClamp = 1e-15;

    explicit ProbVec(std::vector<double> probs);
    ProbVec(std::vector<double> probs, std::vector<Outcome> labels);

    static ProbVec uniform(std::size_t d);
    static ProbVec point_mass(std::size_t d, std::size_t at);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const noexcept { return probs_; }
    const std::vector<Outcome>& labels() const noexcept { return labels_; }

private:
    std::vector<double> probs_;
    std::vector<Outcome> labels_;
};

/// Two-variable joint probability table, row-major over (x, y) pairs.
/// Same validation rules as ProbVec, applied to the total mass.
class JointTable {
public:
    JointTable(std::size_t rows, std::size_t cols, std::vector<double> probs);
    JointTable(std::size_t rows, std::size_t cols, std::vector<double> probs,
               std::vector<Outcome> row_labels, std::vector<Outcome> col_labels);

    static JointTable product(const ProbVec& x, const ProbVec& y);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double at(std::size_t x, std::size_t y) const { return probs_[x * cols_ + y]; }

    ProbVec marginal_x() const;  // distribution of the row variable
    ProbVec marginal_y() const;  // distribution of the column variable

    std::span<const double> flat() const noexcept { return probs_; }
    const std::vector<Outcome>& row_labels() const noexcept { return row_labels_; }
    const std::vector<Outcome>& col_labels() const noexcept { return col_labels_; }

private:
    std::size_t rows_, cols_;
    std::vector<double> probs_;
    std::vector<Outcome> row_labels_, col_labels_;
};

/// Which conditional H_q(.|.) of a JointTable to evaluate.
enum class Conditional {
    FirstGivenSecond,  // H_q(X|Y): condition on the column variable
    SecondGivenFirst,  // H_q(Y|X): condition on the row variable
};

/// q-logarithm ln_q(xi) = (xi^(1-q) - 1)/(1 - q); natural log at q = 1.
/// Requires xi > 0.
double q_log(double xi, QParam q);

/// Tsallis entropy H_q(p) = (sum p^q - 1)/(1 - q); Shannon entropy in nats
/// at q = 1. Zero-probability outcomes contribute nothing.
double entropy(const ProbVec& p, QParam q);

/// ln_q(d): the entropy of the uniform distribution on d >= 1 outcomes, and
/// the maximum of H_q over distributions supported on d points.
double max_entropy(std::size_t d, QParam q);

/// Binary q-entropy h_q(eta) = -eta^q ln_q(eta) - (1-eta)^q ln_q(1-eta),
/// eta in [0, 1].
double binary_entropy(double eta, QParam q);

/// Tsallis entropy of the flattened joint distribution.
double joint_entropy(const JointTable& j, QParam q);

/// Conditional q-entropy H_q(X|Y) = sum_y p(y)^q H_q(X|y), with H_q(X|y)
/// built from the Bayes-rule conditionals p(x|y) = p(x,y)/p(y).
/// Conditioning outcomes with p(y) = 0 are skipped (their weight vanishes).
double conditional_entropy(const JointTable& j, QParam q, Conditional which);

/// Detector-inefficiency alteration of a single distribution: returns
/// {eta*p(x)} with a no-click outcome of mass 1-eta appended.
ProbVec eta_alter_single(const ProbVec& p, double eta);

namespace detail {
/// Entropy kernel over a raw probability span (no validation). Shared by the
/// entropy functions above; exposed for the sibling modules.
double entropy_of_span(std::span<const double> probs, QParam q);
}  // namespace detail

}  // namespace qlg
