#include "paveiri/logit.hpp"

#include <algorithm>
#include <cmath>

namespace paveiri {

namespace {

// Scores for one sample under flattened beta: s_k for k < N-1, s_{N-1} = 0.
void scores_of(std::span<const double> beta, const std::vector<double>& xi,
               std::size_t n_classes, std::vector<double>& s) {
    const std::size_t p = xi.size();
    const std::size_t stride = p + 1;
    s.assign(n_classes, 0.0);
    for (std::size_t k = 0; k + 1 < n_classes; ++k) {
        const double* b = beta.data() + k * stride;
        double v = b[0];
        for (std::size_t j = 0; j < p; ++j) v += b[j + 1] * xi[j];
        s[k] = v;
    }
}

double log_sum_exp(const std::vector<double>& s) {
    const double m = *std::max_element(s.begin(), s.end());
    double z = 0.0;
    for (double v : s) z += std::exp(v - m);
    return m + std::log(z);
}

}  // namespace

double logit_objective(const std::vector<std::vector<double>>& x,
                       const std::vector<std::size_t>& class_positions,
                       std::span<const double> beta, std::size_t n_classes, double lambda) {
    const std::size_t p = x.empty() ? 0 : x.front().size();
    const std::size_t stride = p + 1;
    double nll = 0.0;
    std::vector<double> s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        scores_of(beta, x[i], n_classes, s);
        nll += log_sum_exp(s) - s[class_positions[i]];
    }
    double reg = 0.0;
    for (std::size_t k = 0; k + 1 < n_classes; ++k) {
        const double* b = beta.data() + k * stride;
        for (std::size_t j = 1; j < stride; ++j) reg += b[j] * b[j];
    }
    return nll + 0.5 * lambda * reg;
}

std::vector<double> logit_gradient(const std::vector<std::vector<double>>& x,
                                   const std::vector<std::size_t>& class_positions,
                                   std::span<const double> beta, std::size_t n_classes,
                                   double lambda) {
    const std::size_t p = x.empty() ? 0 : x.front().size();
    const std::size_t stride = p + 1;
    std::vector<double> grad((n_classes - 1) * stride, 0.0);
    std::vector<double> s, prob(n_classes);
    for (std::size_t i = 0; i < x.size(); ++i) {
        scores_of(beta, x[i], n_classes, s);
        const double m = *std::max_element(s.begin(), s.end());
        double z = 0.0;
        for (std::size_t k = 0; k < n_classes; ++k) {
            prob[k] = std::exp(s[k] - m);
            z += prob[k];
        }
        for (double& v : prob) v /= z;
        for (std::size_t k = 0; k + 1 < n_classes; ++k) {
            const double r = prob[k] - (class_positions[i] == k ? 1.0 : 0.0);
            double* g = grad.data() + k * stride;
            g[0] += r;
            const auto& xi = x[i];
            for (std::size_t j = 0; j < p; ++j) g[j + 1] += r * xi[j];
        }
    }
    for (std::size_t k = 0; k + 1 < n_classes; ++k) {
        double* g = grad.data() + k * stride;
        const double* b = beta.data() + k * stride;
        for (std::size_t j = 1; j < stride; ++j) g[j] += lambda * b[j];
    }
    return grad;
}

namespace {

LogitModel fit(const std::vector<std::vector<double>>& x,
               const std::vector<std::size_t>& class_positions,
               std::vector<std::size_t> classes, double lambda, double tol,
               std::size_t max_iters) {
    const std::size_t n_classes = classes.size();
    const std::size_t p = x.front().size();
    const std::size_t stride = p + 1;
    std::vector<double> beta((n_classes - 1) * stride, 0.0);

    LogitModel model;
    model.classes = std::move(classes);
    model.lambda = lambda;
    model.dimension = p;

    double f = logit_objective(x, class_positions, beta, n_classes, lambda);
    double step = 1.0;
    std::vector<double> trial(beta.size());
    std::size_t iter = 0;
    for (; iter < max_iters; ++iter) {
        const std::vector<double> grad =
            logit_gradient(x, class_positions, beta, n_classes, lambda);
        double gmax = 0.0, gsq = 0.0;
        for (double g : grad) {
            gmax = std::max(gmax, std::abs(g));
            gsq += g * g;
        }
        model.final_gradient_norm = gmax;
        if (gmax < tol) {
            model.converged = true;
            break;
        }
        // Backtracking (Armijo, c = 1e-4) on the steepest-descent direction;
        // the accepted step seeds the next iteration, growing on success.
        bool accepted = false;
        for (int half = 0; half < 60; ++half) {
            for (std::size_t t = 0; t < beta.size(); ++t) trial[t] = beta[t] - step * grad[t];
            const double ft = logit_objective(x, class_positions, trial, n_classes, lambda);
            if (ft <= f - 1e-4 * step * gsq) {
                beta.swap(trial);
                f = ft;
                step = std::min(step * 2.0, 1e6);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            model.converged = true;  // step underflow: no further progress possible
            break;
        }
    }
    model.iterations = iter;

    model.coefficients.assign(n_classes - 1, std::vector<double>(stride));
    for (std::size_t k = 0; k + 1 < n_classes; ++k) {
        std::copy(beta.begin() + static_cast<std::ptrdiff_t>(k * stride),
                  beta.begin() + static_cast<std::ptrdiff_t>((k + 1) * stride),
                  model.coefficients[k].begin());
    }
    return model;
}

}  // namespace

LogitModel train_logit(const Dataset& train, double lambda, double tol, std::size_t max_iters) {
    if (lambda < 0.0) {
        throw DomainError("train_logit: lambda must be >= 0");
    }
    const std::size_t n = train.size();
    if (n == 0) {
        throw TrainingError("train_logit: empty training set");
    }
    std::vector<std::size_t> classes;
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = train.class_label(i);
        if (std::find(classes.begin(), classes.end(), labels[i]) == classes.end()) {
            classes.push_back(labels[i]);
        }
    }
    std::sort(classes.begin(), classes.end());
    if (classes.size() < 2) {
        throw TrainingError("train_logit: at least two classes required, got " +
                            std::to_string(classes.size()));
    }
    std::vector<std::size_t> positions(n);
    for (std::size_t i = 0; i < n; ++i) {
        positions[i] = static_cast<std::size_t>(
            std::lower_bound(classes.begin(), classes.end(), labels[i]) - classes.begin());
    }
    std::vector<std::vector<double>> x;
    x.reserve(n);
    for (const auto& v : train.vectors) x.push_back(v.values);
    return fit(x, positions, std::move(classes), lambda, tol, max_iters);
}

LogitModel train_binary_logit(const Dataset& train, double iri_threshold, double lambda,
                              double tol, std::size_t max_iters) {
    const std::size_t n = train.size();
    if (n == 0) {
        throw TrainingError("train_binary_logit: empty training set");
    }
    std::vector<std::size_t> positions(n);
    std::size_t above = 0;
    for (std::size_t i = 0; i < n; ++i) {
        positions[i] = train.vectors[i].label_iri > iri_threshold ? 1 : 0;
        above += positions[i];
    }
    if (above == 0 || above == n) {
        throw TrainingError("train_binary_logit: threshold " + format_double(iri_threshold) +
                            " leaves one side empty (" + std::to_string(n - above) + " low, " +
                            std::to_string(above) + " high)");
    }
    std::vector<std::vector<double>> x;
    x.reserve(n);
    for (const auto& v : train.vectors) x.push_back(v.values);
    LogitModel model = fit(x, positions, {0, 1}, lambda, tol, max_iters);
    model.binary_threshold = iri_threshold;
    return model;
}

LogitPrediction predict_logit(const LogitModel& model, std::span<const double> x) {
    if (x.size() != model.dimension) {
        throw DomainError("predict_logit: expected dimension " +
                          std::to_string(model.dimension) + ", got " + std::to_string(x.size()));
    }
    const std::size_t k = model.classes.size();
    std::vector<double> s(k, 0.0);
    for (std::size_t c = 0; c + 1 < k; ++c) {
        const auto& b = model.coefficients[c];
        double v = b[0];
        for (std::size_t j = 0; j < x.size(); ++j) v += b[j + 1] * x[j];
        s[c] = v;
    }
    const double m = *std::max_element(s.begin(), s.end());
    LogitPrediction out;
    out.probabilities.resize(k);
    double z = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        out.probabilities[c] = std::exp(s[c] - m);
        z += out.probabilities[c];
    }
    for (double& v : out.probabilities) v /= z;
    std::size_t best = 0;
    for (std::size_t c = 1; c < k; ++c) {
        if (s[c] > s[best]) best = c;
    }
    out.class_label = model.classes[best];
    return out;
}

}  // namespace paveiri
