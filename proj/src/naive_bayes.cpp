#include "paveiri/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace paveiri {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
}

NaiveBayesModel train_nb(const Dataset& train, double variance_floor_scale) {
    const std::size_t n = train.size();
    if (n == 0) {
        throw TrainingError("train_nb: empty training set");
    }
    if (!(variance_floor_scale > 0.0)) {
        throw DomainError("train_nb: variance_floor_scale must be > 0");
    }
    const std::size_t p = train.schema.dimension();

    NaiveBayesModel model;
    model.dimension = p;
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = train.class_label(i);
        if (std::find(model.classes.begin(), model.classes.end(), labels[i]) ==
            model.classes.end()) {
            model.classes.push_back(labels[i]);
        }
    }
    std::sort(model.classes.begin(), model.classes.end());
    const std::size_t k = model.classes.size();

    std::vector<std::size_t> position(n);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(model.classes.begin(), model.classes.end(), labels[i]) -
            model.classes.begin());
        position[i] = pos;
        ++counts[pos];
    }

    model.priors.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        model.priors[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
    }

    model.means.assign(k, std::vector<double>(p, 0.0));
    model.variances.assign(k, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& v = train.vectors[i].values;
        auto& mu = model.means[position[i]];
        for (std::size_t j = 0; j < p; ++j) mu[j] += v[j];
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < p; ++j) {
            model.means[c][j] /= static_cast<double>(counts[c]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& v = train.vectors[i].values;
        const auto& mu = model.means[position[i]];
        auto& var = model.variances[position[i]];
        for (std::size_t j = 0; j < p; ++j) {
            const double d = v[j] - mu[j];
            var[j] += d * d;
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < p; ++j) {
            model.variances[c][j] /= static_cast<double>(counts[c]);
        }
    }

    // Floor relative to the largest overall feature variance so that
    // zero-variance columns (e.g. a one-hot constant within a class) keep a
    // usable density.
    double max_var = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        double sum = 0.0;
        for (const auto& v : train.vectors) sum += v.values[j];
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& v : train.vectors) {
            const double d = v.values[j] - mean;
            ss += d * d;
        }
        max_var = std::max(max_var, ss / static_cast<double>(n));
    }
    model.variance_floor =
        max_var > 0.0 ? variance_floor_scale * max_var : variance_floor_scale;
    for (auto& row : model.variances) {
        for (double& v : row) v = std::max(v, model.variance_floor);
    }
    return model;
}

NbPrediction predict_nb(const NaiveBayesModel& model, std::span<const double> x) {
    if (x.size() != model.dimension) {
        throw DomainError("predict_nb: expected dimension " + std::to_string(model.dimension) +
                          ", got " + std::to_string(x.size()));
    }
    const std::size_t k = model.classes.size();
    std::vector<double> log_post(k);
    for (std::size_t c = 0; c < k; ++c) {
        double ll = std::log(model.priors[c]);
        const auto& mu = model.means[c];
        const auto& var = model.variances[c];
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = x[j] - mu[j];
            ll += -0.5 * (kLogTwoPi + std::log(var[j]) + d * d / var[j]);
        }
        log_post[c] = ll;
    }

    const double shift = *std::max_element(log_post.begin(), log_post.end());
    NbPrediction out;
    out.posterior.resize(k);
    double z = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        out.posterior[c] = std::exp(log_post[c] - shift);
        z += out.posterior[c];
    }
    for (double& v : out.posterior) v /= z;

    std::size_t best = 0;
    for (std::size_t c = 1; c < k; ++c) {
        if (log_post[c] > log_post[best]) best = c;  // ties keep the lower label
    }
    out.class_label = model.classes[best];
    return out;
}

}  // namespace paveiri
