#include "qlg/macroreal.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qlg {

namespace {

// Uniform double in [0, 1) built from the top 53 bits of the generator
// output, so sampled models are identical across standard libraries.
double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Flat (Dirichlet-1) simplex point via normalized exponentials.
std::vector<double> simplex_draw(std::size_t d, std::mt19937_64& gen) {
    std::vector<double> w(d);
    double sum = 0.0;
    for (double& v : w) {
        v = -std::log1p(-uniform01(gen));
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

}  // namespace

HiddenModel::HiddenModel(ProbVec rho_, std::vector<std::vector<ProbVec>> response_)
    : rho(std::move(rho_)), response(std::move(response_)) {
    if (response.size() != rho.size() || response.empty()) {
        throw std::invalid_argument("HiddenModel: one response row per hidden value required");
    }
    const std::size_t times = response.front().size();
    const std::size_t d = response.front().front().size();
    if (times < 2) {
        throw std::invalid_argument("HiddenModel: need at least two measurement times");
    }
    for (const auto& row : response) {
        if (row.size() != times) {
            throw std::invalid_argument("HiddenModel: ragged response rows");
        }
        for (const ProbVec& p : row) {
            if (p.size() != d) {
                throw std::invalid_argument("HiddenModel: mixed outcome alphabets");
            }
        }
    }
}

HiddenModel sample_model(int n, std::size_t d, std::size_t L, std::uint64_t seed) {
    if (n < 3) throw std::domain_error("sample_model: need n >= 3");
    if (d < 2) throw std::domain_error("sample_model: need d >= 2 outcomes");
    if (L < 1) throw std::domain_error("sample_model: need L >= 1 hidden values");

    std::mt19937_64 gen(seed);
    ProbVec rho(simplex_draw(L, gen));

    std::vector<std::vector<ProbVec>> response;
    response.reserve(L);
    for (std::size_t lambda = 0; lambda < L; ++lambda) {
        std::vector<ProbVec> row;
        row.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            // One draw in ten is a deterministic response, so the vertices of
            // the model polytope (where the bound is tight) get exercised.
            if (uniform01(gen) < 0.1) {
                auto at = static_cast<std::size_t>(uniform01(gen) * static_cast<double>(d));
                if (at >= d) at = d - 1;
                row.push_back(ProbVec::point_mass(d, at));
            } else {
                row.push_back(ProbVec(simplex_draw(d, gen)));
            }
        }
        response.push_back(std::move(row));
    }
    return HiddenModel(std::move(rho), std::move(response));
}

JointArray::JointArray(int vars, std::size_t alphabet, std::vector<double> probs)
    : vars_(vars), alphabet_(alphabet), probs_(std::move(probs)) {
    if (vars < 1 || alphabet < 1) {
        throw std::invalid_argument("JointArray: need vars >= 1 and alphabet >= 1");
    }
    std::size_t expected = 1;
    for (int j = 0; j < vars; ++j) {
        if (expected > kJointBudget / alphabet) {
            throw std::length_error("JointArray: alphabet^vars exceeds the joint budget");
        }
        expected *= alphabet;
    }
    if (probs_.size() != expected) {
        throw std::invalid_argument("JointArray: storage does not match alphabet^vars");
    }
    double sum = 0.0;
    for (double& p : probs_) {
        if (p < 0.0) {
            if (p < -ProbVec::kNegClamp) {
                throw std::invalid_argument("JointArray: negative probability");
            }
            p = 0.0;
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > ProbVec::kNormTol) {
        throw std::invalid_argument("JointArray: probabilities sum to " + std::to_string(sum));
    }
}

ProbVec JointArray::marginal(int j) const {
    const int idx[1] = {j};
    return grouped_table(idx, {}).marginal_x();
}

JointTable JointArray::pair_table(int i, int j) const {
    const int first[1] = {i};
    const int second[1] = {j};
    return grouped_table(first, second);
}

JointTable JointArray::grouped_table(std::span<const int> first,
                                     std::span<const int> second) const {
    if (first.empty()) {
        throw std::invalid_argument("JointArray::grouped_table: row group is empty");
    }
    std::vector<bool> used(static_cast<std::size_t>(vars_), false);
    auto claim = [&](int v) {
        if (v < 0 || v >= vars_) {
            throw std::invalid_argument("JointArray::grouped_table: variable index out of range");
        }
        if (used[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("JointArray::grouped_table: variable used twice");
        }
        used[static_cast<std::size_t>(v)] = true;
    };
    for (int v : first) claim(v);
    for (int v : second) claim(v);

    // Strides of each variable in the flat array (last variable fastest).
    std::vector<std::size_t> stride(static_cast<std::size_t>(vars_), 1);
    for (int v = vars_ - 2; v >= 0; --v) {
        stride[static_cast<std::size_t>(v)] =
            stride[static_cast<std::size_t>(v) + 1] * alphabet_;
    }
    auto digit = [&](std::size_t flat, int v) {
        return (flat / stride[static_cast<std::size_t>(v)]) % alphabet_;
    };

    std::size_t rows = 1, cols = 1;
    for (std::size_t k = 0; k < first.size(); ++k) rows *= alphabet_;
    for (std::size_t k = 0; k < second.size(); ++k) cols *= alphabet_;

    std::vector<double> table(rows * cols, 0.0);
    for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
        const double p = probs_[flat];
        if (p == 0.0) continue;
        std::size_t r = 0, c = 0;
        for (int v : first) r = r * alphabet_ + digit(flat, v);
        for (int v : second) c = c * alphabet_ + digit(flat, v);
        table[r * cols + c] += p;
    }
    return JointTable(rows, cols, std::move(table));
}

JointArray joint_distribution(const HiddenModel& m) {
    const int n = m.n();
    const std::size_t d = m.d();

    std::size_t total = 1;
    for (int j = 0; j < n; ++j) {
        if (total > kJointBudget / d) {
            throw std::length_error("joint_distribution: d^n exceeds the joint budget (" +
                                    std::to_string(kJointBudget) + " entries)");
        }
        total *= d;
    }

    std::vector<double> probs(total, 0.0);
    std::vector<double> acc, next;
    for (std::size_t lambda = 0; lambda < m.hidden_count(); ++lambda) {
        // Outer product of the response rows, last time index fastest.
        acc.assign(1, m.rho[lambda]);
        for (int j = 0; j < n; ++j) {
            const ProbVec& p = m.response[lambda][static_cast<std::size_t>(j)];
            next.assign(acc.size() * d, 0.0);
            for (std::size_t a = 0; a < acc.size(); ++a) {
                for (std::size_t x = 0; x < d; ++x) {
                    next[a * d + x] = acc[a] * p[x];
                }
            }
            acc.swap(next);
        }
        for (std::size_t i = 0; i < total; ++i) probs[i] += acc[i];
    }
    return JointArray(n, d, std::move(probs));
}

double certify(const HiddenModel& m, QParam q) {
    const JointArray joint = joint_distribution(m);
    const int n = joint.vars();

    std::vector<JointTable> pairs;
    pairs.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 0; j + 1 < n; ++j) pairs.push_back(joint.pair_table(j, j + 1));
    const JointTable endpoint = joint.pair_table(0, n - 1);
    return generic_c_q(pairs, endpoint, q);
}

}  // namespace qlg
