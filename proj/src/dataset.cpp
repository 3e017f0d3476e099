#include "covnet/dataset.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "covnet/parallel.hpp"
#include "covnet/rng.hpp"

namespace covnet {

namespace {

using nlohmann::ordered_json;

ordered_json params_to_json(const ScenarioParams& p) {
    ordered_json j;
    j["sensing_range"] = p.sensing_range;
    j["comm_range"] = p.comm_range;
    j["fov_side"] = p.fov_side;
    j["travel"] = p.travel;
    j["target_density"] = p.target_density;
    return j;
}

ScenarioParams params_from_json(const ordered_json& j) {
    ScenarioParams p;
    p.sensing_range = j.at("sensing_range").get<double>();
    p.comm_range = j.at("comm_range").get<double>();
    p.fov_side = j.at("fov_side").get<double>();
    p.travel = j.at("travel").get<double>();
    p.target_density = j.at("target_density").get<double>();
    return p;
}

ordered_json points_to_json(const std::vector<Point2>& pts) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

std::vector<Point2> points_from_json(const ordered_json& arr) {
    std::vector<Point2> pts;
    pts.reserve(arr.size());
    for (const auto& e : arr) pts.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
    return pts;
}

std::string record_to_line(const TrainRecord& r) {
    ordered_json j;
    j["index"] = r.index;
    j["seed"] = r.seed;
    j["env_side"] = r.scenario.env_side;
    j["params"] = params_to_json(r.scenario.params);
    j["robots"] = points_to_json(r.scenario.robots);
    j["targets"] = points_to_json(r.scenario.targets);
    j["neighbors"] = r.neighbors;
    j["labels"] = r.labels;
    return j.dump();
}

TrainRecord record_from_line(const std::string& line) {
    const ordered_json j = ordered_json::parse(line);
    TrainRecord r;
    r.index = j.at("index").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.scenario.env_side = j.at("env_side").get<double>();
    r.scenario.params = params_from_json(j.at("params"));
    r.scenario.robots = points_from_json(j.at("robots"));
    r.scenario.targets = points_from_json(j.at("targets"));
    r.scenario.seed = r.seed;
    r.neighbors = j.at("neighbors").get<std::vector<std::vector<int>>>();
    r.labels = j.at("labels").get<Assignment>();
    return r;
}

} // namespace

TrainRecord make_record(int n_robots, const ScenarioParams& params,
                        std::uint64_t master_seed, std::uint64_t index) {
    TrainRecord r;
    r.index = index;
    r.seed = mix_seed(master_seed, index);
    r.scenario = generate_scenario(n_robots, params, r.seed);
    r.neighbors = build_comm_graph(r.scenario).neighbors;
    r.labels = greedy_central(r.scenario).assignment;
    return r;
}

void generate_dataset(int n_robots, std::uint64_t n_instances,
                      const ScenarioParams& params, std::uint64_t master_seed,
                      const std::string& out_path) {
    if (n_instances < 1) {
        throw std::invalid_argument("generate_dataset: need at least 1 instance");
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("generate_dataset: cannot write " + out_path);

    ordered_json header;
    header["format_version"] = kDatasetFormatVersion;
    header["kind"] = "covnet-dataset";
    header["n_robots"] = n_robots;
    header["n_instances"] = n_instances;
    header["master_seed"] = master_seed;
    header["params"] = params_to_json(params);
    header["seed_mix"] = "splitmix64";
    header["prng"] = "mt19937_64";
    header["expert"] = "pairwise_greedy";
    header["split_ratios"] = {0.6, 0.2, 0.2};
    out << header.dump() << "\n";

    // Records are independent; build them in parallel, write in index order.
    const std::uint64_t chunk = 512;
    std::vector<std::string> lines(static_cast<size_t>(std::min<std::uint64_t>(chunk, n_instances)));
    for (std::uint64_t base = 0; base < n_instances; base += chunk) {
        const int count = static_cast<int>(std::min<std::uint64_t>(chunk, n_instances - base));
        parallel_for(count, worker_count(), [&](int i) {
            lines[static_cast<size_t>(i)] =
                record_to_line(make_record(n_robots, params, master_seed, base + i));
        });
        for (int i = 0; i < count; ++i) out << lines[static_cast<size_t>(i)] << "\n";
    }
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_dataset: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_dataset: empty file");
    const ordered_json h = ordered_json::parse(line);
    if (h.value("kind", "") != "covnet-dataset") {
        throw std::runtime_error("load_dataset: not a dataset file");
    }
    if (h.at("format_version").get<int>() != kDatasetFormatVersion) {
        throw std::runtime_error("load_dataset: unsupported format version");
    }

    Dataset d;
    d.header.format_version = h.at("format_version").get<int>();
    d.header.n_robots = h.at("n_robots").get<int>();
    d.header.n_instances = h.at("n_instances").get<std::uint64_t>();
    d.header.master_seed = h.at("master_seed").get<std::uint64_t>();
    d.header.params = params_from_json(h.at("params"));
    d.header.seed_mix = h.at("seed_mix").get<std::string>();
    d.header.prng = h.at("prng").get<std::string>();
    d.header.expert = h.at("expert").get<std::string>();
    const auto ratios = h.at("split_ratios").get<std::vector<double>>();
    for (size_t i = 0; i < 3 && i < ratios.size(); ++i) d.header.split_ratios[i] = ratios[i];

    d.records.reserve(static_cast<size_t>(d.header.n_instances));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        d.records.push_back(record_from_line(line));
    }
    if (d.records.size() != d.header.n_instances) {
        throw std::runtime_error("load_dataset: record count does not match header");
    }
    return d;
}

SplitIndices split(std::uint64_t n_records, const std::array<double, 3>& ratios,
                   std::uint64_t seed) {
    const double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("split: ratios must sum to 1");
    }

    std::vector<std::uint64_t> order(n_records);
    std::iota(order.begin(), order.end(), 0);
    // Fisher-Yates with the project RNG, spelled out for cross-platform
    // reproducibility (std::shuffle is implementation-defined).
    Rng rng(seed);
    for (std::uint64_t i = n_records; i > 1; --i) {
        const std::uint64_t j = rng.uniform_below(i);
        std::swap(order[i - 1], order[j]);
    }

    const std::uint64_t n_train = static_cast<std::uint64_t>(ratios[0] * static_cast<double>(n_records));
    const std::uint64_t n_val = static_cast<std::uint64_t>(ratios[1] * static_cast<double>(n_records));
    const std::uint64_t n_test = n_records - n_train - n_val;
    if (n_train == 0 || n_val == 0 || n_test == 0) {
        throw std::invalid_argument("split: a slice would be empty");
    }

    SplitIndices s;
    s.train.assign(order.begin(), order.begin() + n_train);
    s.val.assign(order.begin() + n_train, order.begin() + n_train + n_val);
    s.test.assign(order.begin() + n_train + n_val, order.end());
    return s;
}

} // namespace covnet
