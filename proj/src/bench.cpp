#include "covnet/bench.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "covnet/evalmodel.hpp"
#include "covnet/parallel.hpp"
#include "covnet/rng.hpp"
#include "covnet/runtime.hpp"

namespace covnet {

const char* algo_name(Algo a) {
    switch (a) {
    case Algo::Opt: return "opt";
    case Algo::Greedy: return "greedy";
    case Algo::DGreedy: return "dgreedy";
    case Algo::Gnn: return "gnn";
    case Algo::Random: return "random";
    }
    return "?";
}

std::optional<Algo> parse_algo(const std::string& name) {
    if (name == "opt") return Algo::Opt;
    if (name == "greedy") return Algo::Greedy;
    if (name == "dgreedy") return Algo::DGreedy;
    if (name == "gnn") return Algo::Gnn;
    if (name == "random") return Algo::Random;
    return std::nullopt;
}

namespace {

std::uint64_t trial_seed(std::uint64_t master, int size, int trial) {
    return mix_seed(master, (static_cast<std::uint64_t>(size) << 32) |
                                static_cast<std::uint64_t>(trial));
}

std::int64_t pow5(int n) {
    std::int64_t v = 1;
    for (int i = 0; i < n && v < (std::int64_t{1} << 62) / 5; ++i) v *= 5;
    return v;
}

} // namespace

std::vector<BenchRow> run_benchmark(const BenchConfig& cfg) {
    if (cfg.sizes.empty()) throw std::invalid_argument("bench: no team sizes");
    if (cfg.trials < 1) throw std::invalid_argument("bench: trials must be >= 1");

    bool wants_gnn = false, wants_opt = false;
    for (Algo a : cfg.algorithms) {
        wants_gnn |= (a == Algo::Gnn);
        wants_opt |= (a == Algo::Opt);
    }
    if (wants_gnn && cfg.model == nullptr) {
        throw std::invalid_argument("bench: gnn requested but no model provided");
    }
    if (wants_gnn && cfg.model->config.input_dim != kFeatureWidth) {
        throw std::invalid_argument("bench: model input width does not match the encoding");
    }
    if (wants_opt) {
        for (int size : cfg.sizes) {
            if (pow5(size) > cfg.opt_cap) {
                throw std::invalid_argument(
                    "bench: opt requested for a size beyond the exhaustive cap");
            }
        }
    }

    std::vector<BenchRow> rows;
    for (int size : cfg.sizes) {
        // one result block per trial, filled in parallel, emitted in order
        std::vector<std::vector<BenchRow>> trial_rows(static_cast<size_t>(cfg.trials));
        const int workers = cfg.pin_timing ? 1 : worker_count();
        parallel_for(cfg.trials, workers, [&](int t) {
            const std::uint64_t seed = trial_seed(cfg.master_seed, size, t);
            const Scenario s = generate_scenario(size, cfg.params, seed);
            const SelectionResult greedy = greedy_central(s);

            auto& out = trial_rows[static_cast<size_t>(t)];
            for (Algo a : cfg.algorithms) {
                BenchRow row;
                row.algorithm = algo_name(a);
                row.n_robots = size;
                row.trial = t;
                row.seed = seed;
                row.greedy_covered = greedy.value;
                switch (a) {
                case Algo::Greedy: {
                    row.covered = greedy.value;
                    row.runtime_us = greedy.elapsed_us;
                    break;
                }
                case Algo::Opt: {
                    const SelectionResult r = exhaustive_opt(s, cfg.opt_cap);
                    row.covered = r.value;
                    row.runtime_us = r.elapsed_us;
                    break;
                }
                case Algo::DGreedy: {
                    const CommGraph g = build_comm_graph(s);
                    const SelectionResult r = greedy_decentralized(s, g);
                    row.covered = r.value;
                    row.runtime_us = r.elapsed_us;
                    break;
                }
                case Algo::Gnn: {
                    const CommGraph g = build_comm_graph(s);
                    const auto r = run_decentralized_inference(s, g, *cfg.model);
                    row.covered = objective(s, r.assignment);
                    row.runtime_us = r.max_node_us;
                    break;
                }
                case Algo::Random: {
                    const SelectionResult r = random_assign(s, mix_seed(seed, 1));
                    row.covered = r.value;
                    row.runtime_us = r.elapsed_us;
                    break;
                }
                }
                row.ratio = row.greedy_covered > 0 ? row.covered / row.greedy_covered : 1.0;
                out.push_back(std::move(row));
            }
        });

        for (const auto& block : trial_rows) {
            rows.insert(rows.end(), block.begin(), block.end());
        }

        for (Algo a : cfg.algorithms) {
            BenchRow agg;
            agg.algorithm = algo_name(a);
            agg.n_robots = size;
            agg.trial = -1;
            agg.seed = cfg.master_seed;
            int count = 0;
            for (const auto& block : trial_rows) {
                for (const auto& r : block) {
                    if (r.algorithm != agg.algorithm) continue;
                    agg.covered += r.covered;
                    agg.greedy_covered += r.greedy_covered;
                    agg.ratio += r.ratio;
                    agg.runtime_us += r.runtime_us;
                    ++count;
                }
            }
            agg.covered /= count;
            agg.greedy_covered /= count;
            agg.ratio /= count;
            agg.runtime_us /= count;
            rows.push_back(std::move(agg));
        }
    }
    return rows;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_metrics_csv(const std::vector<BenchRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "algorithm,n_robots,trial,covered,greedy_covered,ratio,runtime_us,seed\n";
    for (const auto& r : rows) {
        out << r.algorithm << ',' << r.n_robots << ',';
        if (r.is_aggregate()) {
            out << "mean";
        } else {
            out << r.trial;
        }
        out << ',' << fmt_double(r.covered) << ',' << fmt_double(r.greedy_covered)
            << ',' << fmt_double(r.ratio) << ',' << fmt_double(r.runtime_us) << ','
            << r.seed << "\n";
    }
}

std::vector<GenMatrixEntry> generalization_matrix(
    const std::map<int, Model<float>>& models_by_train_size,
    const std::vector<int>& test_sizes, int trials, std::uint64_t seed,
    const ScenarioParams& params) {
    if (models_by_train_size.empty()) {
        throw std::invalid_argument("generalization_matrix: no models");
    }
    std::vector<GenMatrixEntry> entries;
    for (const auto& [train_size, model] : models_by_train_size) {
        for (int test_size : test_sizes) {
            const EvalSummary sum = evaluate_model(
                model, test_size, trials,
                mix_seed(seed, static_cast<std::uint64_t>(test_size)), params);
            GenMatrixEntry e;
            e.train_size = train_size;
            e.test_size = test_size;
            e.trials = trials;
            e.mean_ratio = sum.mean_ratio;
            e.std_ratio = sum.std_ratio;
            entries.push_back(e);
        }
    }
    return entries;
}

void write_matrix_csv(const std::vector<GenMatrixEntry>& entries, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "train_size,test_size,trials,mean_ratio,std_ratio\n";
    for (const auto& e : entries) {
        out << e.train_size << ',' << e.test_size << ',' << e.trials << ','
            << fmt_double(e.mean_ratio) << ',' << fmt_double(e.std_ratio) << "\n";
    }
}

} // namespace covnet
