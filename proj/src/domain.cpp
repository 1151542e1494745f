#include "paveiri/domain.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

namespace paveiri {

namespace {

const std::unordered_map<std::string_view, SurfaceType> kSurfaceByName = {
    {"asphalt", SurfaceType::Asphalt},
    {"jointed_concrete", SurfaceType::JointedConcrete},
    {"continuous_concrete", SurfaceType::ContinuousConcrete},
    {"composite", SurfaceType::Composite},
};

const std::unordered_map<std::string_view, FunctionalClass> kClassByName = {
    {"interstate", FunctionalClass::Interstate},
    {"us_route", FunctionalClass::USRoute},
    {"state_route", FunctionalClass::StateRoute},
};

const std::unordered_map<std::string_view, CrackFamily> kFamilyByName = {
    {"non_wp_longitudinal", CrackFamily::NonWPLongitudinal},
    {"wp_longitudinal", CrackFamily::WPLongitudinal},
    {"wp_alligator", CrackFamily::WPAlligator},
    {"edge_longitudinal", CrackFamily::EdgeLongitudinal},
    {"edge_alligator", CrackFamily::EdgeAlligator},
    {"transverse", CrackFamily::Transverse},
    {"block", CrackFamily::Block},
    {"longitudinal_spall", CrackFamily::LongitudinalSpall},
    {"transverse_spall", CrackFamily::TransverseSpall},
    {"shoulder", CrackFamily::Shoulder},
    {"corner", CrackFamily::Corner},
};

const std::unordered_map<std::string_view, Severity> kSeverityByName = {
    {"low", Severity::Low},
    {"medium", Severity::Medium},
    {"high", Severity::High},
};

}  // namespace

std::string_view to_string(SurfaceType s) {
    switch (s) {
        case SurfaceType::Asphalt: return "asphalt";
        case SurfaceType::JointedConcrete: return "jointed_concrete";
        case SurfaceType::ContinuousConcrete: return "continuous_concrete";
        case SurfaceType::Composite: return "composite";
    }
    throw DomainError("invalid SurfaceType value");
}

std::string_view to_string(FunctionalClass c) {
    switch (c) {
        case FunctionalClass::Interstate: return "interstate";
        case FunctionalClass::USRoute: return "us_route";
        case FunctionalClass::StateRoute: return "state_route";
    }
    throw DomainError("invalid FunctionalClass value");
}

std::string_view to_string(CrackFamily f) {
    switch (f) {
        case CrackFamily::NonWPLongitudinal: return "non_wp_longitudinal";
        case CrackFamily::WPLongitudinal: return "wp_longitudinal";
        case CrackFamily::WPAlligator: return "wp_alligator";
        case CrackFamily::EdgeLongitudinal: return "edge_longitudinal";
        case CrackFamily::EdgeAlligator: return "edge_alligator";
        case CrackFamily::Transverse: return "transverse";
        case CrackFamily::Block: return "block";
        case CrackFamily::LongitudinalSpall: return "longitudinal_spall";
        case CrackFamily::TransverseSpall: return "transverse_spall";
        case CrackFamily::Shoulder: return "shoulder";
        case CrackFamily::Corner: return "corner";
    }
    throw DomainError("invalid CrackFamily value");
}

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Low: return "low";
        case Severity::Medium: return "medium";
        case Severity::High: return "high";
    }
    throw DomainError("invalid Severity value");
}

namespace {
template <typename T>
T lookup(const std::unordered_map<std::string_view, T>& table, std::string_view name,
         const char* what) {
    auto it = table.find(name);
    if (it == table.end()) {
        throw ValidationError(std::string("unknown ") + what + ": '" + std::string(name) + "'");
    }
    return it->second;
}
}  // namespace

SurfaceType surface_type_from_string(std::string_view s) {
    return lookup(kSurfaceByName, s, "surface_type");
}
FunctionalClass functional_class_from_string(std::string_view s) {
    return lookup(kClassByName, s, "functional_class");
}
CrackFamily crack_family_from_string(std::string_view s) {
    return lookup(kFamilyByName, s, "crack family");
}
Severity severity_from_string(std::string_view s) {
    return lookup(kSeverityByName, s, "severity");
}

ExtentMeasure extent_measure_of(CrackFamily f) {
    switch (f) {
        case CrackFamily::WPAlligator:
        case CrackFamily::EdgeAlligator:
        case CrackFamily::Block:
            return ExtentMeasure::Percent;
        default:
            return ExtentMeasure::Feet;
    }
}

const CrackObservation* SegmentRecord::find_crack(CrackFamily f, Severity s) const {
    for (const auto& c : cracks) {
        if (c.family == f && c.severity == s) return &c;
    }
    return nullptr;
}

void validate_record(const SegmentRecord& rec, const std::string& context) {
    const std::string at = context.empty() ? std::string() : context + ": ";
    if (!(rec.length > 0.0)) {
        throw ValidationError(at + "length must be > 0, got " + std::to_string(rec.length));
    }
    if (!(rec.iri >= 0.0)) {
        throw ValidationError(at + "iri must be >= 0, got " + std::to_string(rec.iri));
    }
    if (!(rec.rut_depth >= 0.0)) {
        throw ValidationError(at + "rut_depth must be >= 0, got " + std::to_string(rec.rut_depth));
    }
    if (!std::isfinite(rec.faulting)) {
        throw ValidationError(at + "faulting must be finite");
    }
    std::unordered_set<int> seen;
    for (const auto& c : rec.cracks) {
        if (!(c.extent >= 0.0) || !(c.width >= 0.0) || !(c.depth >= 0.0)) {
            throw ValidationError(at + "crack measures must be >= 0 for " +
                                  std::string(to_string(c.family)) + "/" +
                                  std::string(to_string(c.severity)));
        }
        const int key = static_cast<int>(c.family) * 8 + static_cast<int>(c.severity);
        if (!seen.insert(key).second) {
            throw ValidationError(at + "duplicate crack observation for " +
                                  std::string(to_string(c.family)) + "/" +
                                  std::string(to_string(c.severity)));
        }
    }
}

// ---------------------------------------------------------------------------
// FeatureSchema
// ---------------------------------------------------------------------------

FeatureSchema::FeatureSchema(std::vector<FeatureEntry> entries) : entries_(std::move(entries)) {
    std::unordered_set<std::string_view> ids;
    for (const auto& e : entries_) {
        if (!ids.insert(e.id).second) {
            throw DomainError("duplicate feature id: " + e.id);
        }
    }
}

FeatureSchema FeatureSchema::default_registry() {
    std::vector<FeatureEntry> entries;
    entries.reserve(58);

    auto numeric = [&](std::string id, FeatureSource src) {
        FeatureEntry e;
        e.id = std::move(id);
        e.kind = FeatureKind::Numeric;
        e.source = src;
        entries.push_back(std::move(e));
    };

    numeric("rut_depth", FeatureSource::RutDepth);
    numeric("faulting", FeatureSource::Faulting);

    auto crack_feature = [&](CrackFamily f, Severity s, FeatureSource src, const char* measure) {
        FeatureEntry e;
        e.id = std::string(to_string(f)) + "_" + std::string(to_string(s)) + "_" + measure;
        e.kind = FeatureKind::Numeric;
        e.source = src;
        e.family = f;
        e.severity = s;
        entries.push_back(std::move(e));
    };

    for (CrackFamily f : all_crack_families()) {
        for (Severity s : all_severities()) {
            crack_feature(f, s, FeatureSource::CrackExtent, "extent");
        }
    }

    // Width/depth carried as features only where crack opening geometry is a
    // primary roughness driver; extent already covers the remaining families.
    const std::array<CrackFamily, 4> open_families = {
        CrackFamily::WPLongitudinal, CrackFamily::WPAlligator,
        CrackFamily::EdgeAlligator, CrackFamily::LongitudinalSpall};
    for (CrackFamily f : open_families) {
        for (Severity s : {Severity::Medium, Severity::High}) {
            crack_feature(f, s, FeatureSource::CrackWidth, "width");
            crack_feature(f, s, FeatureSource::CrackDepth, "depth");
        }
    }

    for (SurfaceType s : all_surface_types()) {
        FeatureEntry e;
        e.id = "surface_" + std::string(to_string(s));
        e.kind = FeatureKind::OneHot;
        e.source = FeatureSource::SurfaceIndicator;
        e.surface = s;
        entries.push_back(std::move(e));
    }
    for (FunctionalClass c : all_functional_classes()) {
        FeatureEntry e;
        e.id = "functional_" + std::string(to_string(c));
        e.kind = FeatureKind::OneHot;
        e.source = FeatureSource::ClassIndicator;
        e.functional = c;
        entries.push_back(std::move(e));
    }

    return FeatureSchema(std::move(entries));
}

std::size_t FeatureSchema::index_of(std::string_view feature_id) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].id == feature_id) return i;
    }
    throw DomainError("unknown feature id: " + std::string(feature_id));
}

bool FeatureSchema::contains(std::string_view feature_id) const {
    for (const auto& e : entries_) {
        if (e.id == feature_id) return true;
    }
    return false;
}

bool FeatureSchema::covers_family(CrackFamily f) const {
    for (const auto& e : entries_) {
        if ((e.source == FeatureSource::CrackExtent || e.source == FeatureSource::CrackWidth ||
             e.source == FeatureSource::CrackDepth) &&
            e.family == f) {
            return true;
        }
    }
    return false;
}

std::string FeatureSchema::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& e : entries_) {
        h = fnv1a64(e.id, h);
        h = fnv1a64(e.kind == FeatureKind::Numeric ? "num" : "onehot", h);
    }
    return to_hex(h);
}

std::vector<double> FeatureSchema::encode_record(const SegmentRecord& rec) const {
    for (const auto& c : rec.cracks) {
        if (!covers_family(c.family)) {
            throw SchemaError("record carries crack family '" +
                              std::string(to_string(c.family)) +
                              "' absent from the feature schema");
        }
    }
    std::vector<double> out(entries_.size(), 0.0);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        switch (e.source) {
            case FeatureSource::RutDepth:
                out[i] = rec.rut_depth;
                break;
            case FeatureSource::Faulting:
                out[i] = rec.faulting;
                break;
            case FeatureSource::CrackExtent:
            case FeatureSource::CrackWidth:
            case FeatureSource::CrackDepth: {
                const CrackObservation* c = rec.find_crack(e.family, e.severity);
                if (c == nullptr) {
                    out[i] = 0.0;
                } else if (e.source == FeatureSource::CrackExtent) {
                    out[i] = c->extent;
                } else if (e.source == FeatureSource::CrackWidth) {
                    out[i] = c->width;
                } else {
                    out[i] = c->depth;
                }
                break;
            }
            case FeatureSource::SurfaceIndicator:
                out[i] = rec.surface_type == e.surface ? 1.0 : 0.0;
                break;
            case FeatureSource::ClassIndicator:
                out[i] = rec.functional_class == e.functional ? 1.0 : 0.0;
                break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// IriBinning
// ---------------------------------------------------------------------------

void validate_binning(const IriBinning& binning) {
    if (!(binning.width > 0.0)) {
        throw DomainError("binning width must be > 0");
    }
    if (binning.n_classes == 0) {
        throw DomainError("binning must have at least one class");
    }
    if (!std::isfinite(binning.origin)) {
        throw DomainError("binning origin must be finite");
    }
}

std::size_t class_of(double iri, const IriBinning& binning) {
    validate_binning(binning);
    if (!(iri >= binning.origin)) {
        throw DomainError("iri " + std::to_string(iri) + " below binning origin " +
                          std::to_string(binning.origin));
    }
    const double k = std::floor((iri - binning.origin) / binning.width);
    if (k >= static_cast<double>(binning.n_classes)) {
        return binning.n_classes - 1;  // clamp above the covered range
    }
    return static_cast<std::size_t>(k);
}

double representative_of(std::size_t k, const IriBinning& binning) {
    validate_binning(binning);
    if (k >= binning.n_classes) {
        throw DomainError("class index " + std::to_string(k) + " out of range (n_classes=" +
                          std::to_string(binning.n_classes) + ")");
    }
    return binning.origin + (static_cast<double>(k) + 0.5) * binning.width;
}

// ---------------------------------------------------------------------------
// Hashing
// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf, 16);
}

}  // namespace paveiri
