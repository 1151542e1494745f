#include "paveiri/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "paveiri/rng.hpp"

namespace paveiri {

namespace {

constexpr double kGapTolerance = 1e-6;       // miles; window continuity check
constexpr double kLengthTolerance = 1e-9;    // uniform record length check
constexpr double kConstantStddev = 1e-12;

struct CrackAccumulator {
    double extent = 0.0;        // feet: plain sum; percent: length-weighted sum
    double width_weighted = 0.0;
    double depth_weighted = 0.0;
    bool any = false;
};

SegmentRecord aggregate_window(const std::vector<const SegmentRecord*>& window,
                               double target_length) {
    SegmentRecord out;
    const SegmentRecord& first = *window.front();
    out.route_id = first.route_id;
    out.start_milepost = first.start_milepost;
    out.length = target_length;
    out.surface_type = first.surface_type;
    out.functional_class = first.functional_class;

    double iri_sum = 0.0;
    double rut_weighted = 0.0;
    double fault_weighted = 0.0;
    double total_length = 0.0;
    std::array<CrackAccumulator, kNumCrackFamilies * kNumSeverities> cracks;

    for (const SegmentRecord* rec : window) {
        iri_sum += rec->iri;
        rut_weighted += rec->rut_depth * rec->length;
        fault_weighted += rec->faulting * rec->length;
        total_length += rec->length;
        for (const auto& c : rec->cracks) {
            auto& acc = cracks[static_cast<std::size_t>(c.family) * kNumSeverities +
                               static_cast<std::size_t>(c.severity)];
            if (extent_measure_of(c.family) == ExtentMeasure::Feet) {
                acc.extent += c.extent;
            } else {
                acc.extent += c.extent * rec->length;
            }
            acc.width_weighted += c.width * rec->length;
            acc.depth_weighted += c.depth * rec->length;
            acc.any = true;
        }
    }

    out.iri = iri_sum / static_cast<double>(window.size());
    out.rut_depth = rut_weighted / total_length;
    out.faulting = fault_weighted / total_length;

    for (CrackFamily f : all_crack_families()) {
        for (Severity s : all_severities()) {
            const auto& acc = cracks[static_cast<std::size_t>(f) * kNumSeverities +
                                     static_cast<std::size_t>(s)];
            if (!acc.any) continue;
            CrackObservation obs;
            obs.family = f;
            obs.severity = s;
            obs.extent = extent_measure_of(f) == ExtentMeasure::Feet
                             ? acc.extent
                             : acc.extent / total_length;
            obs.width = acc.width_weighted / total_length;
            obs.depth = acc.depth_weighted / total_length;
            out.cracks.push_back(obs);
        }
    }
    return out;
}

}  // namespace

Corpus aggregate(const Corpus& corpus, double target_length) {
    if (!(target_length > 0.0)) {
        throw DomainError("aggregation target_length must be > 0");
    }
    if (corpus.records.empty()) {
        Corpus out = corpus;
        out.provenance.push_back("aggregate: target_length=" + format_double(target_length) +
                                 " in=0 out=0 dropped_partial=0");
        return out;
    }

    const double record_length = corpus.records.front().length;
    for (const auto& rec : corpus.records) {
        if (std::abs(rec.length - record_length) > kLengthTolerance) {
            throw DomainError("aggregation requires uniform record lengths; found " +
                              format_double(rec.length) + " vs " + format_double(record_length));
        }
    }
    const double ratio = target_length / record_length;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-6) {
        throw DomainError("target_length " + format_double(target_length) +
                          " is not an integer multiple of the record length " +
                          format_double(record_length));
    }
    const std::size_t group = static_cast<std::size_t>(rounded);

    Corpus out;
    out.source = corpus.source;
    out.schema_version = corpus.schema_version;
    out.provenance = corpus.provenance;

    std::size_t dropped = 0;
    std::size_t splits = 0;
    std::vector<const SegmentRecord*> window;

    auto flush = [&](bool complete) {
        if (window.empty()) return;
        if (complete && window.size() == group) {
            out.records.push_back(aggregate_window(window, target_length));
        } else {
            ++dropped;
        }
        window.clear();
    };

    const auto& recs = corpus.records;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const SegmentRecord& rec = recs[i];
        if (!window.empty()) {
            const SegmentRecord& prev = *window.back();
            const bool same_route = rec.route_id == prev.route_id;
            const bool contiguous =
                std::abs(rec.start_milepost - (prev.start_milepost + prev.length)) <=
                kGapTolerance;
            const bool same_kind = rec.surface_type == prev.surface_type &&
                                   rec.functional_class == prev.functional_class;
            if (!same_route || !contiguous) {
                flush(false);
            } else if (!same_kind) {
                // Window would span two pavement kinds: cut at the change point.
                ++splits;
                flush(false);
            }
        }
        window.push_back(&rec);
        if (window.size() == group) flush(true);
    }
    flush(false);

    out.provenance.push_back("aggregate: target_length=" + format_double(target_length) +
                             " in=" + std::to_string(recs.size()) +
                             " out=" + std::to_string(out.records.size()) +
                             " dropped_partial=" + std::to_string(dropped) +
                             " kind_splits=" + std::to_string(splits));
    return out;
}

Corpus remove_outliers(const Corpus& corpus, double threshold) {
    if (!(threshold > 0.0)) {
        throw DomainError("outlier threshold must be > 0");
    }
    Corpus out;
    out.source = corpus.source;
    out.schema_version = corpus.schema_version;
    out.provenance = corpus.provenance;
    std::size_t removed = 0;
    for (const auto& rec : corpus.records) {
        if (rec.iri > threshold) {
            ++removed;
        } else {
            out.records.push_back(rec);
        }
    }
    out.provenance.push_back("remove_outliers: threshold=" + format_double(threshold) +
                             " in=" + std::to_string(corpus.records.size()) +
                             " outliers_removed=" + std::to_string(removed));
    return out;
}

Dataset encode(const Corpus& corpus, const FeatureSchema& schema, const IriBinning& binning) {
    validate_binning(binning);
    Dataset ds;
    ds.schema = schema;
    ds.binning = binning;
    ds.provenance = corpus.provenance;
    ds.vectors.reserve(corpus.records.size());
    for (const auto& rec : corpus.records) {
        FeatureVector v;
        v.values = schema.encode_record(rec);
        v.label_iri = rec.iri;
        ds.vectors.push_back(std::move(v));
    }
    ds.provenance.push_back("encode: records=" + std::to_string(corpus.records.size()) +
                            " dimension=" + std::to_string(schema.dimension()));
    return ds;
}

Standardization fit_standardization(const Dataset& dataset) {
    const std::size_t p = dataset.schema.dimension();
    const std::size_t n = dataset.size();
    if (n == 0) {
        throw StateError("cannot fit standardization on an empty dataset");
    }
    Standardization st;
    st.mean.assign(p, 0.0);
    st.stddev.assign(p, 1.0);
    st.scaled.assign(p, false);

    for (std::size_t j = 0; j < p; ++j) {
        if (dataset.schema.entries()[j].kind != FeatureKind::Numeric) continue;
        double sum = 0.0;
        for (const auto& v : dataset.vectors) sum += v.values[j];
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& v : dataset.vectors) {
            const double d = v.values[j] - mean;
            ss += d * d;
        }
        const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
        const double sd = std::sqrt(var);
        st.mean[j] = mean;
        if (sd < kConstantStddev) {
            st.stddev[j] = 1.0;  // constant feature: left unscaled, flagged
            st.scaled[j] = false;
        } else {
            st.stddev[j] = sd;
            st.scaled[j] = true;
        }
    }
    return st;
}

Dataset apply_standardization(const Dataset& dataset, const Standardization& stats) {
    const std::size_t p = dataset.schema.dimension();
    if (stats.mean.size() != p || stats.stddev.size() != p || stats.scaled.size() != p) {
        throw DomainError("standardization statistics dimension mismatch");
    }
    Dataset out = dataset;
    for (auto& v : out.vectors) {
        for (std::size_t j = 0; j < p; ++j) {
            if (stats.scaled[j]) {
                v.values[j] = (v.values[j] - stats.mean[j]) / stats.stddev[j];
            }
        }
    }
    out.standardization = stats;
    std::size_t constants = 0;
    for (std::size_t j = 0; j < p; ++j) {
        if (dataset.schema.entries()[j].kind == FeatureKind::Numeric && !stats.scaled[j]) {
            ++constants;
        }
    }
    out.provenance.push_back("standardize: applied n=" + std::to_string(out.size()) +
                             " constant_features=" + std::to_string(constants));
    return out;
}

Dataset standardize(const Dataset& dataset, StatsSource source) {
    if (source == StatsSource::Reuse) {
        if (!dataset.standardization.has_value()) {
            throw StateError("standardize(Reuse) requires fitted statistics on the dataset");
        }
        return apply_standardization(dataset, *dataset.standardization);
    }
    return apply_standardization(dataset, fit_standardization(dataset));
}

SplitResult split(const Dataset& dataset, const SplitSpec& spec) {
    const std::size_t n = dataset.size();
    if (n < 2) {
        throw DomainError("split requires at least 2 samples, got " + std::to_string(n));
    }
    if (!(spec.train_fraction > 0.0) || !(spec.train_fraction < 1.0)) {
        throw DomainError("train_fraction must lie in (0, 1)");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(spec.seed);
    fisher_yates_shuffle(order, rng);

    const auto n_train = static_cast<std::size_t>(
        std::ceil(static_cast<double>(n) * spec.train_fraction));

    SplitResult result;
    result.train_indices.assign(order.begin(), order.begin() + n_train);
    result.test_indices.assign(order.begin() + n_train, order.end());

    auto take = [&](const std::vector<std::size_t>& idx) {
        Dataset part;
        part.schema = dataset.schema;
        part.binning = dataset.binning;
        part.provenance = dataset.provenance;
        part.vectors.reserve(idx.size());
        for (std::size_t i : idx) part.vectors.push_back(dataset.vectors[i]);
        return part;
    };
    Dataset train = take(result.train_indices);
    Dataset test = take(result.test_indices);

    const Standardization stats = fit_standardization(train);
    result.train = apply_standardization(train, stats);
    result.test = apply_standardization(test, stats);

    const std::string line = "split: seed=" + std::to_string(spec.seed) +
                             " train_fraction=" + format_double(spec.train_fraction) +
                             " train=" + std::to_string(result.train.size()) +
                             " test=" + std::to_string(result.test.size());
    result.train.provenance.push_back(line);
    result.test.provenance.push_back(line);
    return result;
}

}  // namespace paveiri
