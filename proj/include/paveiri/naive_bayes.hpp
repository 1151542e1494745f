#ifndef PAVEIRI_NAIVE_BAYES_HPP
#define PAVEIRI_NAIVE_BAYES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "paveiri/preprocess.hpp"

namespace paveiri {

/// Gaussian class-conditional model with empirical class priors and a
/// variance floor guarding near-constant features (one-hots included).
struct NaiveBayesModel {
    std::vector<std::size_t> classes;  // sorted class labels present at fit
    std::vector<double> priors;        // per class, sums to 1
    std::vector<std::vector<double>> means;      // [class][feature]
    std::vector<std::vector<double>> variances;  // [class][feature], >= floor
    double variance_floor = 0.0;
    std::size_t dimension = 0;
};

struct NbPrediction {
    std::size_t class_label = 0;      // label from model.classes
    std::vector<double> posterior;    // aligned with model.classes, sums to 1
};

/// Fits priors as class frequencies and per-class per-feature Gaussian
/// moments (population variance). Variances are floored at
/// variance_floor_scale times the largest overall feature variance.
/// Throws TrainingError on an empty training set.
NaiveBayesModel train_nb(const Dataset& train, double variance_floor_scale = 1e-9);

/// MAP rule: argmax_k log prior_k + sum_i log N(x_i; mean, var). Ties go to
/// the lowest class label. Throws DomainError on dimension mismatch.
NbPrediction predict_nb(const NaiveBayesModel& model, std::span<const double> x);

}  // namespace paveiri

#endif  // PAVEIRI_NAIVE_BAYES_HPP
