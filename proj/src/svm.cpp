#include "paveiri/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <unordered_map>

namespace paveiri {

namespace {

constexpr double kTau = 1e-12;          // floor for non-positive curvature
constexpr double kSupportThreshold = 1e-8;
constexpr double kBoundEps = 1e-12;     // "at bound" slack for index sets

// Rows of Q (Q_ij = y_i y_j K_ij), fully materialized for small problems and
// kept in an LRU row cache above the memory cutoff.
class QMatrix {
public:
    QMatrix(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
            const KernelSpec& spec)
        : x_(x), y_(y), spec_(spec), n_(x.size()) {
        diag_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            diag_[i] = kernel_eval(x_[i], x_[i], spec_);
        }
        full_ = n_ <= kFullMatrixLimit;
        if (full_) {
            rows_.resize(n_);
            for (std::size_t i = 0; i < n_; ++i) rows_[i] = compute_row(i);
        } else {
            cache_capacity_ = std::max<std::size_t>(2, kCacheBudgetDoubles / n_);
        }
    }

    const std::vector<double>& row(std::size_t i) {
        if (full_) return rows_[i];
        auto it = cache_index_.find(i);
        if (it != cache_index_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second.second);
            return it->second.first;
        }
        if (cache_index_.size() >= cache_capacity_) {
            cache_index_.erase(lru_.back());
            lru_.pop_back();
        }
        lru_.push_front(i);
        auto [pos, inserted] =
            cache_index_.emplace(i, std::make_pair(compute_row(i), lru_.begin()));
        return pos->second.first;
    }

    double diag(std::size_t i) const { return diag_[i]; }

private:
    static constexpr std::size_t kFullMatrixLimit = 3000;
    static constexpr std::size_t kCacheBudgetDoubles = 32u << 20;  // 256 MB

    std::vector<double> compute_row(std::size_t i) const {
        std::vector<double> r(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            r[j] = static_cast<double>(y_[i] * y_[j]) * kernel_eval(x_[i], x_[j], spec_);
        }
        return r;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<int>& y_;
    KernelSpec spec_;
    std::size_t n_;
    std::vector<double> diag_;
    bool full_ = false;
    std::vector<std::vector<double>> rows_;
    std::size_t cache_capacity_ = 0;
    std::list<std::size_t> lru_;
    std::unordered_map<std::size_t, std::pair<std::vector<double>, std::list<std::size_t>::iterator>>
        cache_index_;
};

}  // namespace

double SvmBinaryModel::decision(std::span<const double> x) const {
    double sum = bias;
    for (std::size_t i = 0; i < support_vectors.size(); ++i) {
        sum += dual_coefficients[i] * kernel_eval(support_vectors[i], x, kernel);
    }
    return sum;
}

SvmBinaryModel train_svm_binary(const std::vector<std::vector<double>>& x,
                                const std::vector<int>& y, const KernelSpec& spec, double C,
                                double tol, std::size_t max_passes) {
    validate_kernel(spec);
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) {
        throw DomainError("train_svm_binary: x and y must be nonempty and equal length");
    }
    if (!(C > 0.0)) {
        throw DomainError("train_svm_binary: C must be > 0");
    }
    bool has_pos = false, has_neg = false;
    for (int label : y) {
        if (label == 1) has_pos = true;
        else if (label == -1) has_neg = true;
        else throw DomainError("train_svm_binary: labels must be -1 or +1");
    }
    if (!has_pos || !has_neg) {
        throw TrainingError("train_svm_binary: both labels must be present");
    }
    const std::size_t dim = x.front().size();
    for (const auto& xi : x) {
        if (xi.size() != dim) {
            throw DomainError("train_svm_binary: inconsistent feature dimensions");
        }
    }
    if (max_passes == 0) max_passes = 10 * n;

    QMatrix Q(x, y, spec);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // gradient of the minimized dual at alpha = 0

    SmoDiagnostics diag;
    double m = 0.0, M = 0.0;
    for (diag.iterations = 0; diag.iterations < max_passes; ++diag.iterations) {
        // Maximal violating pair: i from the "can increase" set, j from the
        // "can decrease" set, measured by -y_t * grad_t.
        std::ptrdiff_t i = -1, j = -1;
        m = -std::numeric_limits<double>::infinity();
        M = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -static_cast<double>(y[t]) * grad[t];
            const bool up = (y[t] == 1 && alpha[t] < C - kBoundEps) ||
                            (y[t] == -1 && alpha[t] > kBoundEps);
            const bool low = (y[t] == 1 && alpha[t] > kBoundEps) ||
                             (y[t] == -1 && alpha[t] < C - kBoundEps);
            if (up && v > m) {
                m = v;
                i = static_cast<std::ptrdiff_t>(t);
            }
            if (low && v < M) {
                M = v;
                j = static_cast<std::ptrdiff_t>(t);
            }
        }
        if (i < 0 || j < 0 || m - M <= tol) {
            diag.converged = true;
            break;
        }

        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        const std::vector<double>& Qi = Q.row(ui);
        const std::vector<double>& Qj = Q.row(uj);
        const double old_ai = alpha[ui];
        const double old_aj = alpha[uj];

        // Analytic two-variable subproblem on the line y_i a_i + y_j a_j = const,
        // clipped to the box.
        if (y[ui] != y[uj]) {
            double quad = Q.diag(ui) + Q.diag(uj) + 2.0 * Qi[uj];
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad[ui] - grad[uj]) / quad;
            const double diff = alpha[ui] - alpha[uj];
            alpha[ui] += delta;
            alpha[uj] += delta;
            if (diff > 0.0) {
                if (alpha[uj] < 0.0) {
                    alpha[uj] = 0.0;
                    alpha[ui] = diff;
                }
            } else {
                if (alpha[ui] < 0.0) {
                    alpha[ui] = 0.0;
                    alpha[uj] = -diff;
                }
            }
            if (diff > 0.0) {
                if (alpha[ui] > C) {
                    alpha[ui] = C;
                    alpha[uj] = C - diff;
                }
            } else {
                if (alpha[uj] > C) {
                    alpha[uj] = C;
                    alpha[ui] = C + diff;
                }
            }
        } else {
            double quad = Q.diag(ui) + Q.diag(uj) - 2.0 * Qi[uj];
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad[ui] - grad[uj]) / quad;
            const double sum = alpha[ui] + alpha[uj];
            alpha[ui] -= delta;
            alpha[uj] += delta;
            if (sum > C) {
                if (alpha[ui] > C) {
                    alpha[ui] = C;
                    alpha[uj] = sum - C;
                }
            } else {
                if (alpha[uj] < 0.0) {
                    alpha[uj] = 0.0;
                    alpha[ui] = sum;
                }
            }
            if (sum > C) {
                if (alpha[uj] > C) {
                    alpha[uj] = C;
                    alpha[ui] = sum - C;
                }
            } else {
                if (alpha[ui] < 0.0) {
                    alpha[ui] = 0.0;
                    alpha[uj] = sum;
                }
            }
        }

        const double dai = alpha[ui] - old_ai;
        const double daj = alpha[uj] - old_aj;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += Qi[t] * dai + Qj[t] * daj;
        }
    }
    diag.kkt_violation = std::max(0.0, m - M);
    if (!std::isfinite(diag.kkt_violation)) diag.kkt_violation = 0.0;

    // Dual feasibility is preserved exactly by the pair updates; verify anyway.
    double alpha_dot_y = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] < -1e-12 || alpha[t] > C + 1e-12) {
            throw TrainingError("SMO produced a multiplier outside [0, C]");
        }
        alpha_dot_y += alpha[t] * static_cast<double>(y[t]);
    }
    if (std::abs(alpha_dot_y) > 1e-6) {
        throw TrainingError("SMO violated the equality constraint sum(alpha_i y_i) = 0");
    }

    // Maximized dual value: sum(alpha) - 1/2 alpha' Q alpha, using
    // (Q alpha)_t = grad_t + 1.
    double obj = 0.0;
    for (std::size_t t = 0; t < n; ++t) obj += alpha[t] * (grad[t] - 1.0);
    diag.dual_objective = -0.5 * obj;

    // Bias from free multipliers, or the midpoint of the feasible interval
    // when every multiplier sits at a bound.
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = static_cast<double>(y[t]) * grad[t];
        if (alpha[t] >= C - kBoundEps) {
            if (y[t] == 1) lower = std::max(lower, yg);
            else upper = std::min(upper, yg);
        } else if (alpha[t] <= kBoundEps) {
            if (y[t] == 1) upper = std::min(upper, yg);
            else lower = std::max(lower, yg);
        } else {
            free_sum += yg;
            ++free_count;
        }
    }
    const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                      : (upper + lower) / 2.0;

    SvmBinaryModel model;
    model.kernel = spec;
    model.bias = -rho;
    model.diagnostics = diag;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > kSupportThreshold) {
            model.support_vectors.push_back(x[t]);
            model.dual_coefficients.push_back(alpha[t] * static_cast<double>(y[t]));
        }
    }
    return model;
}

SvmOvoModel train_svm_ovo(const Dataset& train, const KernelSpec& spec, double C, double tol,
                          std::size_t max_passes) {
    if (train.size() == 0) {
        throw TrainingError("train_svm_ovo: empty training set");
    }
    std::vector<std::size_t> classes;
    std::vector<std::size_t> labels(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        labels[i] = train.class_label(i);
        if (std::find(classes.begin(), classes.end(), labels[i]) == classes.end()) {
            classes.push_back(labels[i]);
        }
    }
    std::sort(classes.begin(), classes.end());
    if (classes.size() < 2) {
        throw TrainingError("train_svm_ovo: at least two classes required, got " +
                            std::to_string(classes.size()));
    }

    SvmOvoModel model;
    model.classes = classes;
    model.kernel = spec;
    model.dimension = train.schema.dimension();

    for (std::size_t a = 0; a < classes.size(); ++a) {
        for (std::size_t b = a + 1; b < classes.size(); ++b) {
            std::vector<std::vector<double>> x;
            std::vector<int> y;
            for (std::size_t i = 0; i < train.size(); ++i) {
                if (labels[i] == classes[a]) {
                    x.push_back(train.vectors[i].values);
                    y.push_back(1);
                } else if (labels[i] == classes[b]) {
                    x.push_back(train.vectors[i].values);
                    y.push_back(-1);
                }
            }
            SvmBinaryModel binary = train_svm_binary(x, y, spec, C, tol, max_passes);
            binary.label_pair = {classes[a], classes[b]};
            model.binaries.push_back(std::move(binary));
        }
    }
    return model;
}

std::size_t predict_svm(const SvmOvoModel& model, std::span<const double> x) {
    if (x.size() != model.dimension) {
        throw DomainError("predict_svm: expected dimension " + std::to_string(model.dimension) +
                          ", got " + std::to_string(x.size()));
    }
    std::unordered_map<std::size_t, std::size_t> votes;
    for (const auto& binary : model.binaries) {
        const double d = binary.decision(x);
        votes[d >= 0.0 ? binary.label_pair.first : binary.label_pair.second]++;
    }
    std::size_t best = model.classes.front();
    std::size_t best_votes = 0;
    for (std::size_t c : model.classes) {  // ascending: ties go to the lowest class
        auto it = votes.find(c);
        const std::size_t v = it == votes.end() ? 0 : it->second;
        if (v > best_votes) {
            best_votes = v;
            best = c;
        }
    }
    return best;
}

double default_gamma(const Dataset& train) {
    const std::size_t n = train.size();
    const std::size_t p = train.schema.dimension();
    if (n < 2 || p == 0) return 1.0;
    double total_var = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        double sum = 0.0;
        for (const auto& v : train.vectors) sum += v.values[j];
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& v : train.vectors) {
            const double d = v.values[j] - mean;
            ss += d * d;
        }
        total_var += ss / static_cast<double>(n - 1);
    }
    const double mean_var = total_var / static_cast<double>(p);
    if (mean_var <= 0.0) return 1.0;
    return 1.0 / (static_cast<double>(p) * mean_var);
}

}  // namespace paveiri
