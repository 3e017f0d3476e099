#include "covnet/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

namespace covnet {

namespace {

using nlohmann::ordered_json;

ordered_json config_to_json(const ModelConfig& cfg) {
    ordered_json j;
    j["input_dim"] = cfg.input_dim;
    j["encoder_dims"] = cfg.encoder_dims;
    j["gnn_dims"] = cfg.gnn_dims;
    j["hops"] = cfg.hops;
    j["num_actions"] = cfg.num_actions;
    j["activation"] = activation_name(cfg.activation);
    j["use_bias"] = cfg.use_bias;
    return j;
}

ModelConfig config_from_json(const ordered_json& j) {
    ModelConfig cfg;
    cfg.input_dim = j.at("input_dim").get<int>();
    cfg.encoder_dims = j.at("encoder_dims").get<std::vector<int>>();
    cfg.gnn_dims = j.at("gnn_dims").get<std::vector<int>>();
    cfg.hops = j.at("hops").get<int>();
    cfg.num_actions = j.at("num_actions").get<int>();
    const std::string act = j.at("activation").get<std::string>();
    if (act == "relu") {
        cfg.activation = Activation::ReLU;
    } else if (act == "identity") {
        cfg.activation = Activation::Identity;
    } else {
        throw std::runtime_error("checkpoint: unknown activation '" + act + "'");
    }
    cfg.use_bias = j.at("use_bias").get<bool>();
    return cfg;
}

} // namespace

template <typename T>
void save_checkpoint(const Model<T>& model, const ordered_json& training_meta,
                     const std::string& path) {
    ordered_json j;
    j["format_version"] = kCheckpointFormatVersion;
    j["arch"] = config_to_json(model.config);
    j["precision"] = sizeof(T) == 4 ? "float32" : "float64";
    j["init_seed"] = model.init_seed;

    ordered_json tensors;
    for (const auto& ref : model.tensors()) {
        // float -> double widening is exact, so text round trips are too
        std::vector<double> values(ref.data, ref.data + ref.size);
        tensors[ref.name] = values;
    }
    j["tensors"] = std::move(tensors);
    j["training"] = training_meta;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("checkpoint: cannot write " + path);
    out << j.dump(2) << "\n";
}

template <typename T>
Model<T> load_checkpoint(const std::string& path, ordered_json* training_meta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    ordered_json j;
    in >> j;

    if (j.at("format_version").get<int>() != kCheckpointFormatVersion) {
        throw std::runtime_error("checkpoint: unsupported format version");
    }
    Model<T> model = make_model<T>(config_from_json(j.at("arch")));
    model.init_seed = j.at("init_seed").get<std::uint64_t>();

    const auto& tensors = j.at("tensors");
    for (auto& ref : model.tensors()) {
        const auto it = tensors.find(ref.name);
        if (it == tensors.end()) {
            throw std::runtime_error("checkpoint: missing tensor " + ref.name);
        }
        const auto values = it->template get<std::vector<double>>();
        if (values.size() != ref.size) {
            throw std::runtime_error("checkpoint: shape mismatch for " + ref.name);
        }
        for (size_t i = 0; i < values.size(); ++i) {
            ref.data[i] = static_cast<T>(values[i]);
        }
    }
    if (training_meta) *training_meta = j.value("training", ordered_json::object());
    return model;
}

template void save_checkpoint<float>(const Model<float>&, const ordered_json&, const std::string&);
template void save_checkpoint<double>(const Model<double>&, const ordered_json&, const std::string&);
template Model<float> load_checkpoint<float>(const std::string&, ordered_json*);
template Model<double> load_checkpoint<double>(const std::string&, ordered_json*);

} // namespace covnet
