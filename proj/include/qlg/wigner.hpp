#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qlg {

/// Largest supported spin, stored as 2s. Above this the factorial-sum
/// evaluation is refused rather than silently degraded.
inline constexpr int kMaxTwiceSpin = 200;

/// Spin quantum number stored as 2s so that integer and half-integer spins
/// are both exact. Dimension of the representation is 2s+1.
class SpinLabel {
public:
    explicit SpinLabel(int twice_s);

    int twice() const noexcept { return twice_s_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(twice_s_) + 1; }

    friend bool operator==(const SpinLabel&, const SpinLabel&) = default;

private:
    int twice_s_;
};

/// Wigner small-d rotation matrix d^(s)(theta), real (2s+1)x(2s+1).
/// Rows and columns are indexed by the magnetic number m = -s, -s+1, ..., +s;
/// entry (row, col) is d^(s)_{m',m} with m' the row and m the column.
/// Convention: exp(-i theta S_y / hbar) in the Condon-Shortley basis, so
/// d^(1/2)_{1/2,1/2}(theta) = cos(theta/2) and d^(s)(0) is the identity.
class WignerMatrix {
public:
    WignerMatrix(SpinLabel s, double theta, std::vector<double> entries);

    SpinLabel spin() const noexcept { return spin_; }
    std::size_t dim() const noexcept { return spin_.dim(); }
    double theta() const noexcept { return theta_; }
    double at(std::size_t row_mprime, std::size_t col_m) const {
        return entries_[row_mprime * dim() + col_m];
    }
    std::span<const double> flat() const noexcept { return entries_; }

    /// Largest deviation of any row/column from unit squared norm.
    double orthogonality_defect() const;

private:
    SpinLabel spin_;
    double theta_;
    std::vector<double> entries_;
};

/// Column-stochastic transition probabilities p(m'|m) = |d^(s)_{m',m}|^2.
/// Doubly stochastic: rows and columns each sum to 1.
class TransitionMatrix {
public:
    TransitionMatrix(SpinLabel s, double theta, std::vector<double> entries);

    SpinLabel spin() const noexcept { return spin_; }
    std::size_t dim() const noexcept { return spin_.dim(); }
    double theta() const noexcept { return theta_; }
    double at(std::size_t row_mprime, std::size_t col_m) const {
        return entries_[row_mprime * dim() + col_m];
    }
    std::span<const double> flat() const noexcept { return entries_; }

private:
    SpinLabel spin_;
    double theta_;
    std::vector<double> entries_;
};

/// Evaluate d^(s)(theta) by Wigner's explicit factorial sum, in log space
/// with precomputed log-factorials. theta is reduced modulo 4*pi first; for
/// large spins the sum is evaluated at a halved angle where it is well
/// conditioned and the result is restored via the exact composition
/// d(2a) = d(a)d(a), keeping rows orthonormal over the whole supported range.
WignerMatrix d_matrix(SpinLabel s, double theta);

/// Elementwise square of d_matrix: the conditional outcome distribution of a
/// later S_z measurement given an earlier one separated by angle theta.
TransitionMatrix transition_matrix(SpinLabel s, double theta);

}  // namespace qlg
