#include "paveiri/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace paveiri {

using nlohmann::json;

namespace {

json binning_to_json(const IriBinning& b) {
    return json{{"origin", b.origin}, {"width", b.width}, {"n_classes", b.n_classes}};
}

IriBinning binning_from_json(const json& j) {
    IriBinning b;
    b.origin = j.at("origin").get<double>();
    b.width = j.at("width").get<double>();
    b.n_classes = j.at("n_classes").get<std::size_t>();
    return b;
}

json standardization_to_json(const Standardization& s) {
    return json{{"mean", s.mean},
                {"stddev", s.stddev},
                {"scaled", std::vector<int>(s.scaled.begin(), s.scaled.end())}};
}

Standardization standardization_from_json(const json& j) {
    Standardization s;
    s.mean = j.at("mean").get<std::vector<double>>();
    s.stddev = j.at("stddev").get<std::vector<double>>();
    const auto scaled = j.at("scaled").get<std::vector<int>>();
    s.scaled.assign(scaled.begin(), scaled.end());
    return s;
}

json kernel_to_json(const KernelSpec& k) {
    return json{{"kind", kernel_tag(k)}, {"gamma", k.gamma}, {"degree", k.degree}};
}

KernelSpec kernel_from_json(const json& j) {
    KernelSpec k;
    k.kind = j.at("kind").get<std::string>() == "rbf" ? KernelKind::Rbf : KernelKind::Polynomial;
    k.gamma = j.at("gamma").get<double>();
    k.degree = j.at("degree").get<int>();
    return k;
}

json nb_to_json(const NaiveBayesModel& m) {
    return json{{"classes", m.classes},       {"priors", m.priors},
                {"means", m.means},           {"variances", m.variances},
                {"variance_floor", m.variance_floor}, {"dimension", m.dimension}};
}

NaiveBayesModel nb_from_json(const json& j) {
    NaiveBayesModel m;
    m.classes = j.at("classes").get<std::vector<std::size_t>>();
    m.priors = j.at("priors").get<std::vector<double>>();
    m.means = j.at("means").get<std::vector<std::vector<double>>>();
    m.variances = j.at("variances").get<std::vector<std::vector<double>>>();
    m.variance_floor = j.at("variance_floor").get<double>();
    m.dimension = j.at("dimension").get<std::size_t>();
    return m;
}

json svm_to_json(const SvmOvoModel& m) {
    json binaries = json::array();
    for (const auto& b : m.binaries) {
        binaries.push_back(json{{"support_vectors", b.support_vectors},
                                {"dual_coefficients", b.dual_coefficients},
                                {"bias", b.bias},
                                {"kernel", kernel_to_json(b.kernel)},
                                {"label_pair", {b.label_pair.first, b.label_pair.second}},
                                {"dual_objective", b.diagnostics.dual_objective},
                                {"kkt_violation", b.diagnostics.kkt_violation},
                                {"iterations", b.diagnostics.iterations},
                                {"converged", b.diagnostics.converged}});
    }
    return json{{"classes", m.classes},
                {"binaries", std::move(binaries)},
                {"kernel", kernel_to_json(m.kernel)},
                {"dimension", m.dimension}};
}

SvmOvoModel svm_from_json(const json& j) {
    SvmOvoModel m;
    m.classes = j.at("classes").get<std::vector<std::size_t>>();
    m.kernel = kernel_from_json(j.at("kernel"));
    m.dimension = j.at("dimension").get<std::size_t>();
    for (const auto& bj : j.at("binaries")) {
        SvmBinaryModel b;
        b.support_vectors = bj.at("support_vectors").get<std::vector<std::vector<double>>>();
        b.dual_coefficients = bj.at("dual_coefficients").get<std::vector<double>>();
        b.bias = bj.at("bias").get<double>();
        b.kernel = kernel_from_json(bj.at("kernel"));
        const auto pair = bj.at("label_pair").get<std::vector<std::size_t>>();
        b.label_pair = {pair.at(0), pair.at(1)};
        b.diagnostics.dual_objective = bj.at("dual_objective").get<double>();
        b.diagnostics.kkt_violation = bj.at("kkt_violation").get<double>();
        b.diagnostics.iterations = bj.at("iterations").get<std::size_t>();
        b.diagnostics.converged = bj.at("converged").get<bool>();
        m.binaries.push_back(std::move(b));
    }
    return m;
}

json logit_to_json(const LogitModel& m) {
    json j{{"classes", m.classes},
           {"coefficients", m.coefficients},
           {"lambda", m.lambda},
           {"dimension", m.dimension},
           {"iterations", m.iterations},
           {"converged", m.converged},
           {"final_gradient_norm", m.final_gradient_norm}};
    if (m.binary_threshold.has_value()) j["binary_threshold"] = *m.binary_threshold;
    return j;
}

LogitModel logit_from_json(const json& j) {
    LogitModel m;
    m.classes = j.at("classes").get<std::vector<std::size_t>>();
    m.coefficients = j.at("coefficients").get<std::vector<std::vector<double>>>();
    m.lambda = j.at("lambda").get<double>();
    m.dimension = j.at("dimension").get<std::size_t>();
    m.iterations = j.at("iterations").get<std::size_t>();
    m.converged = j.at("converged").get<bool>();
    m.final_gradient_norm = j.at("final_gradient_norm").get<double>();
    if (j.contains("binary_threshold")) {
        m.binary_threshold = j.at("binary_threshold").get<double>();
    }
    return m;
}

}  // namespace

std::size_t predict_class(const TrainedModel& model, std::span<const double> x) {
    return std::visit(
        [&](const auto& learner) -> std::size_t {
            using T = std::decay_t<decltype(learner)>;
            if constexpr (std::is_same_v<T, NaiveBayesModel>) {
                return predict_nb(learner, x).class_label;
            } else if constexpr (std::is_same_v<T, SvmOvoModel>) {
                return predict_svm(learner, x);
            } else {
                return predict_logit(learner, x).class_label;
            }
        },
        model.learner);
}

std::string model_to_json(const TrainedModel& model) {
    json j{{"kind", model.kind},
           {"tag", model.tag},
           {"schema_fingerprint", model.schema_fingerprint},
           {"binning", binning_to_json(model.binning)},
           {"standardization", standardization_to_json(model.standardization)},
           {"seed", model.seed},
           {"train_fraction", model.train_fraction},
           {"test_indices", model.test_indices},
           {"corpus_digest", model.corpus_digest},
           {"corpus_records", model.corpus_records},
           {"config_digest", model.config_digest}};
    if (model.kind == "naive_bayes") {
        j["learner"] = nb_to_json(std::get<NaiveBayesModel>(model.learner));
    } else if (model.kind == "svm_ovo") {
        j["learner"] = svm_to_json(std::get<SvmOvoModel>(model.learner));
    } else if (model.kind == "logit") {
        j["learner"] = logit_to_json(std::get<LogitModel>(model.learner));
    } else {
        throw DomainError("unknown model kind: " + model.kind);
    }
    return j.dump(2);
}

TrainedModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed model file: ") + e.what());
    }
    try {
        TrainedModel m;
        m.kind = j.at("kind").get<std::string>();
        m.tag = j.at("tag").get<std::string>();
        m.schema_fingerprint = j.at("schema_fingerprint").get<std::string>();
        m.binning = binning_from_json(j.at("binning"));
        m.standardization = standardization_from_json(j.at("standardization"));
        m.seed = j.at("seed").get<std::uint64_t>();
        m.train_fraction = j.at("train_fraction").get<double>();
        m.test_indices = j.at("test_indices").get<std::vector<std::size_t>>();
        m.corpus_digest = j.at("corpus_digest").get<std::string>();
        m.corpus_records = j.at("corpus_records").get<std::size_t>();
        m.config_digest = j.at("config_digest").get<std::string>();
        if (m.kind == "naive_bayes") {
            m.learner = nb_from_json(j.at("learner"));
        } else if (m.kind == "svm_ovo") {
            m.learner = svm_from_json(j.at("learner"));
        } else if (m.kind == "logit") {
            m.learner = logit_from_json(j.at("learner"));
        } else {
            throw IoError("unknown model kind: " + m.kind);
        }
        return m;
    } catch (const json::exception& e) {
        throw IoError(std::string("model file missing fields: ") + e.what());
    }
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open model file for writing: " + path);
    }
    out << model_to_json(model) << "\n";
    if (!out) {
        throw IoError("failed writing model file: " + path);
    }
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open model file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file for digest: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return to_hex(fnv1a64(buf.str()));
}

}  // namespace paveiri
