#include "qlg/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qlg {

namespace {

// Cumulative log-factorials lf[i] = log(i!), accumulated in long double so
// the largest supported spin still leaves headroom below the 1e-9 contract.
// Built once under the magic-static guarantee, read-only afterwards.
const std::vector<long double>& log_factorials() {
    static const std::vector<long double> lf = [] {
        std::vector<long double> t(static_cast<std::size_t>(kMaxTwiceSpin) + 1, 0.0L);
        for (std::size_t i = 2; i < t.size(); ++i) {
            t[i] = t[i - 1] + std::log(static_cast<long double>(i));
        }
        return t;
    }();
    return lf;
}

// d is 4*pi periodic; reduce once so huge angles do not lose the half-angle.
double reduce_theta(double theta) {
    constexpr double period = 4.0 * std::numbers::pi;
    double r = std::fmod(theta, period);
    if (r < 0.0) r += period;
    return r;
}

// One exact composition step d(2a) = d(a)d(a), accumulated in long double.
std::vector<double> squared(const std::vector<double>& m, std::size_t d) {
    std::vector<double> out(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            long double acc = 0.0L;
            for (std::size_t k = 0; k < d; ++k) {
                acc += static_cast<long double>(m[i * d + k]) * m[k * d + j];
            }
            out[i * d + j] = static_cast<double>(acc);
        }
    }
    return out;
}

// Wigner's explicit factorial sum, evaluated in log space. Accurate only
// while the alternating terms stay comparable to the result, which is the
// case for 2s * |sin(theta/2)| up to a few units; d_matrix arranges that.
std::vector<double> factorial_sum(int t, double theta) {
    const std::size_t d = static_cast<std::size_t>(t) + 1;
    const double half = 0.5 * theta;
    const double cos_h = std::cos(half);
    const double sin_h = std::sin(half);
    const double log_cos = cos_h == 0.0 ? 0.0 : std::log(std::abs(cos_h));
    const double log_sin = sin_h == 0.0 ? 0.0 : std::log(std::abs(sin_h));

    const auto& lf = log_factorials();
    auto lfac = [&lf](int n) { return lf[static_cast<std::size_t>(n)]; };

    std::vector<double> entries(d * d);
    // Row r holds m' = r - s, column c holds m = c - s (as 2m' = 2r - t etc.);
    // all factorial arguments below are the integers j+-m', j+-m in that
    // parameterization.
    for (int r = 0; r < static_cast<int>(d); ++r) {
        for (int c = 0; c < static_cast<int>(d); ++c) {
            const long double prefactor =
                0.5L * (lfac(r) + lfac(t - r) + lfac(c) + lfac(t - c));
            const int k_min = std::max(0, c - r);
            const int k_max = std::min(c, t - r);

            long double sum = 0.0L;
            for (int k = k_min; k <= k_max; ++k) {
                const int cos_pow = t + c - r - 2 * k;
                const int sin_pow = r - c + 2 * k;
                if (cos_h == 0.0 && cos_pow > 0) continue;
                if (sin_h == 0.0 && sin_pow > 0) continue;

                const long double log_mag =
                    prefactor - lfac(c - k) - lfac(k) - lfac(t - r - k) - lfac(r - c + k) +
                    cos_pow * static_cast<long double>(log_cos) +
                    sin_pow * static_cast<long double>(log_sin);

                int sign = ((r - c + k) % 2 != 0) ? -1 : 1;  // (-1)^{m'-m+k}
                if (cos_h < 0.0 && cos_pow % 2 != 0) sign = -sign;
                if (sin_h < 0.0 && sin_pow % 2 != 0) sign = -sign;
                sum += sign * std::exp(log_mag);
            }
            entries[static_cast<std::size_t>(r) * d + static_cast<std::size_t>(c)] =
                static_cast<double>(sum);
        }
    }
    return entries;
}

}  // namespace

SpinLabel::SpinLabel(int twice_s) : twice_s_(twice_s) {
    if (twice_s < 0) {
        throw std::invalid_argument("SpinLabel: 2s must be non-negative");
    }
    if (twice_s > kMaxTwiceSpin) {
        throw std::length_error("SpinLabel: 2s = " + std::to_string(twice_s) +
                                " exceeds the supported maximum " +
                                std::to_string(kMaxTwiceSpin));
    }
}

WignerMatrix::WignerMatrix(SpinLabel s, double theta, std::vector<double> entries)
    : spin_(s), theta_(theta), entries_(std::move(entries)) {
    if (entries_.size() != dim() * dim()) {
        throw std::invalid_argument("WignerMatrix: entry count does not match dimension");
    }
}

double WignerMatrix::orthogonality_defect() const {
    const std::size_t d = dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            row += at(i, k) * at(i, k);
            col += at(k, i) * at(k, i);
        }
        worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
    }
    return worst;
}

TransitionMatrix::TransitionMatrix(SpinLabel s, double theta, std::vector<double> entries)
    : spin_(s), theta_(theta), entries_(std::move(entries)) {
    if (entries_.size() != dim() * dim()) {
        throw std::invalid_argument("TransitionMatrix: entry count does not match dimension");
    }
}

WignerMatrix d_matrix(SpinLabel s, double theta) {
    if (!std::isfinite(theta)) {
        throw std::domain_error("d_matrix: theta must be finite");
    }
    const int t = s.twice();
    const std::size_t d = s.dim();
    const double reduced = reduce_theta(theta);

    // Shift into (-pi, pi] using d(a + 2pi) = (-1)^{2s} d(a), then halve the
    // angle until the alternating factorial sum is well conditioned (its
    // largest term grows like exp(2s * |sin(theta/2)|) relative to the
    // result, so large spins at mid-range angles would otherwise cancel
    // catastrophically). The requested angle is restored through the exact
    // composition d(2a) = d(a)d(a).
    double local = reduced;
    bool flip = false;
    while (local > std::numbers::pi) {
        local -= 2.0 * std::numbers::pi;
        if (t % 2 != 0) flip = !flip;
    }
    int halvings = 0;
    while (t * std::abs(std::sin(0.5 * local)) > 2.0) {
        local *= 0.5;
        ++halvings;
    }

    std::vector<double> entries = factorial_sum(t, local);
    for (int i = 0; i < halvings; ++i) entries = squared(entries, d);
    if (flip) {
        for (double& v : entries) v = -v;
    }
    return WignerMatrix(s, theta, std::move(entries));
}

TransitionMatrix transition_matrix(SpinLabel s, double theta) {
    const WignerMatrix d = d_matrix(s, theta);
    std::vector<double> entries;
    entries.reserve(d.flat().size());
    for (double v : d.flat()) entries.push_back(v * v);
    return TransitionMatrix(s, theta, std::move(entries));
}

}  // namespace qlg
