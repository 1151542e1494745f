#ifndef PAVEIRI_LOGIT_HPP
#define PAVEIRI_LOGIT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "paveiri/preprocess.hpp"

namespace paveiri {

/// Multinomial logistic model. Coefficients are stored for the first N-1
/// classes (rows), with an intercept in column 0 and one column per feature
/// after it; the last class is pinned to zero scores for identifiability.
struct LogitModel {
    std::vector<std::size_t> classes;  // sorted class labels present at fit
    std::vector<std::vector<double>> coefficients;  // [N-1][dimension + 1]
    double lambda = 0.0;
    std::size_t dimension = 0;
    std::optional<double> binary_threshold;  // set by train_binary_logit

    // training diagnostics
    std::size_t iterations = 0;
    bool converged = false;
    double final_gradient_norm = 0.0;

    std::size_t n_classes() const { return classes.size(); }
};

struct LogitPrediction {
    std::size_t class_label = 0;        // label from model.classes
    std::vector<double> probabilities;  // aligned with model.classes, sums to 1
};

/// Negative log-likelihood plus (lambda/2) * sum of squared non-intercept
/// coefficients. `beta` is row-major [n_classes-1][p+1] flattened. Exposed so
/// the optimizer can be checked against finite differences.
double logit_objective(const std::vector<std::vector<double>>& x,
                       const std::vector<std::size_t>& class_positions,
                       std::span<const double> beta, std::size_t n_classes, double lambda);

/// Analytic gradient of logit_objective, same flattened layout.
std::vector<double> logit_gradient(const std::vector<std::vector<double>>& x,
                                   const std::vector<std::size_t>& class_positions,
                                   std::span<const double> beta, std::size_t n_classes,
                                   double lambda);

/// Fits by full-batch gradient descent with backtracking line search,
/// stopping when the gradient infinity-norm drops below tol or after
/// max_iters steps (the model records which). Intercepts are unpenalized.
/// Throws TrainingError when fewer than two classes are present.
LogitModel train_logit(const Dataset& train, double lambda = 1e-4, double tol = 1e-5,
                       std::size_t max_iters = 2000);

/// Relabels by the IRI threshold (<= threshold -> class 0, > threshold ->
/// class 1) and fits a two-class model. Throws TrainingError when either side
/// is empty.
LogitModel train_binary_logit(const Dataset& train, double iri_threshold, double lambda = 1e-4,
                              double tol = 1e-5, std::size_t max_iters = 2000);

/// Softmax over the linear scores; ties go to the lowest class label.
LogitPrediction predict_logit(const LogitModel& model, std::span<const double> x);

}  // namespace paveiri

#endif  // PAVEIRI_LOGIT_HPP
