#include "qlg/qentropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qlg {

namespace {

// Clamp fp-noise negatives, reject anything genuinely negative, check the
// total mass. Shared by ProbVec and JointTable.
void validate_mass(std::vector<double>& probs, const char* what) {
    double sum = 0.0;
    for (double& p : probs) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
        if (p < 0.0) {
            if (p < -ProbVec::kNegClamp) {
                throw std::invalid_argument(std::string(what) + ": negative entry " +
                                            std::to_string(p));
            }
            p = 0.0;
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > ProbVec::kNormTol) {
        throw std::invalid_argument(std::string(what) + ": entries sum to " +
                                    std::to_string(sum) + ", not 1");
    }
}

std::vector<Outcome> default_labels(std::size_t d) {
    std::vector<Outcome> labels(d);
    for (std::size_t i = 0; i < d; ++i) labels[i] = Outcome::value(static_cast<int>(i));
    return labels;
}

// -p^q ln_q(p) for p > 0. The expm1 form keeps the generic branch accurate
// arbitrarily close to q = 1, so the Shannon dispatch is continuous.
inline double tsallis_term(double p, double q, bool shannon) {
    if (shannon) return -p * std::log(p);
    return -std::pow(p, q) * std::expm1((1.0 - q) * std::log(p)) / (1.0 - q);
}

}  // namespace

QParam::QParam(double q) : q_(q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw std::domain_error("QParam: entropic index must satisfy q > 0");
    }
}

bool QParam::shannon_limit() const noexcept {
    return std::abs(q_ - 1.0) <= kShannonSwitch;
}

ProbVec::ProbVec(std::vector<double> probs)
    : ProbVec(std::move(probs), {}) {}

ProbVec::ProbVec(std::vector<double> probs, std::vector<Outcome> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
    if (probs_.empty()) throw std::invalid_argument("ProbVec: empty distribution");
    if (labels_.empty()) {
        labels_ = default_labels(probs_.size());
    } else if (labels_.size() != probs_.size()) {
        throw std::invalid_argument("ProbVec: label/probability count mismatch");
    }
    validate_mass(probs_, "ProbVec");
}

ProbVec ProbVec::uniform(std::size_t d) {
    if (d == 0) throw std::invalid_argument("ProbVec::uniform: d must be >= 1");
    return ProbVec(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

ProbVec ProbVec::point_mass(std::size_t d, std::size_t at) {
    if (at >= d) throw std::invalid_argument("ProbVec::point_mass: index out of range");
    std::vector<double> p(d, 0.0);
    p[at] = 1.0;
    return ProbVec(std::move(p));
}

JointTable::JointTable(std::size_t rows, std::size_t cols, std::vector<double> probs)
    : JointTable(rows, cols, std::move(probs), {}, {}) {}

JointTable::JointTable(std::size_t rows, std::size_t cols, std::vector<double> probs,
                       std::vector<Outcome> row_labels, std::vector<Outcome> col_labels)
    : rows_(rows), cols_(cols), probs_(std::move(probs)),
      row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
    if (rows_ == 0 || cols_ == 0 || probs_.size() != rows_ * cols_) {
        throw std::invalid_argument("JointTable: shape/storage mismatch");
    }
    if (row_labels_.empty()) row_labels_ = default_labels(rows_);
    if (col_labels_.empty()) col_labels_ = default_labels(cols_);
    if (row_labels_.size() != rows_ || col_labels_.size() != cols_) {
        throw std::invalid_argument("JointTable: label count mismatch");
    }
    validate_mass(probs_, "JointTable");
}

JointTable JointTable::product(const ProbVec& x, const ProbVec& y) {
    std::vector<double> probs(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            probs[i * y.size() + j] = x[i] * y[j];
    return JointTable(x.size(), y.size(), std::move(probs), x.labels(), y.labels());
}

ProbVec JointTable::marginal_x() const {
    std::vector<double> m(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m[i] += at(i, j);
    return ProbVec(std::move(m), row_labels_);
}

ProbVec JointTable::marginal_y() const {
    std::vector<double> m(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m[j] += at(i, j);
    return ProbVec(std::move(m), col_labels_);
}

double q_log(double xi, QParam q) {
    if (!(xi > 0.0) || !std::isfinite(xi)) {
        throw std::domain_error("q_log: argument must be positive");
    }
    if (q.shannon_limit()) return std::log(xi);
    return std::expm1((1.0 - q.value()) * std::log(xi)) / (1.0 - q.value());
}

namespace detail {

double entropy_of_span(std::span<const double> probs, QParam q) {
    const bool shannon = q.shannon_limit();
    const double qv = q.value();
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h += tsallis_term(p, qv, shannon);
    }
    return h;
}

}  // namespace detail

double entropy(const ProbVec& p, QParam q) {
    return detail::entropy_of_span(p.probs(), q);
}

double max_entropy(std::size_t d, QParam q) {
    if (d == 0) throw std::domain_error("max_entropy: d must be >= 1");
    return q_log(static_cast<double>(d), q);
}

double binary_entropy(double eta, QParam q) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::domain_error("binary_entropy: eta must lie in [0, 1]");
    }
    const double pair[2] = {eta, 1.0 - eta};
    return detail::entropy_of_span(pair, q);
}

double joint_entropy(const JointTable& j, QParam q) {
    return detail::entropy_of_span(j.flat(), q);
}

double conditional_entropy(const JointTable& j, QParam q, Conditional which) {
    const bool on_second = (which == Conditional::FirstGivenSecond);
    const std::size_t n_cond = on_second ? j.cols() : j.rows();
    const std::size_t n_free = on_second ? j.rows() : j.cols();

    std::vector<double> conditional(n_free);
    double h = 0.0;
    for (std::size_t y = 0; y < n_cond; ++y) {
        double py = 0.0;
        for (std::size_t x = 0; x < n_free; ++x) {
            py += on_second ? j.at(x, y) : j.at(y, x);
        }
        if (py <= 0.0) continue;  // weight p(y)^q vanishes, Bayes rule undefined
        for (std::size_t x = 0; x < n_free; ++x) {
            conditional[x] = (on_second ? j.at(x, y) : j.at(y, x)) / py;
        }
        h += std::pow(py, q.value()) * detail::entropy_of_span(conditional, q);
    }
    return h;
}

ProbVec eta_alter_single(const ProbVec& p, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::domain_error("eta_alter_single: eta must lie in [0, 1]");
    }
    std::vector<double> probs;
    probs.reserve(p.size() + 1);
    for (double v : p.probs()) probs.push_back(eta * v);
    probs.push_back(1.0 - eta);

    std::vector<Outcome> labels = p.labels();
    labels.push_back(Outcome::none());
    return ProbVec(std::move(probs), std::move(labels));
}

}  // namespace qlg
