#ifndef COVNET_BENCH_HPP
#define COVNET_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covnet/neural.hpp"
#include "covnet/selectors.hpp"

namespace covnet {

enum class Algo { Opt, Greedy, DGreedy, Gnn, Random };

const char* algo_name(Algo a);
std::optional<Algo> parse_algo(const std::string& name);

struct BenchConfig {
    std::vector<int> sizes;
    std::vector<Algo> algorithms;
    int trials = 100;
    std::uint64_t master_seed = 1;
    std::int64_t opt_cap = kDefaultExhaustiveCap;
    ScenarioParams params;
    const Model<float>* model = nullptr; // required when Gnn is requested
    bool pin_timing = false;             // run trials on one worker
};

struct BenchRow {
    std::string algorithm;
    int n_robots = 0;
    std::int64_t trial = 0; // -1 marks a per-size aggregate
    double covered = 0.0;
    double greedy_covered = 0.0;
    double ratio = 0.0;
    double runtime_us = 0.0;
    std::uint64_t seed = 0;

    bool is_aggregate() const { return trial < 0; }
};

// Paired comparison: all requested algorithms consume the identical
// scenario per (size, trial); ratios are against the centralized greedy
// on that scenario. After each size's trial rows, one aggregate row per
// algorithm (means over trials) is appended. gnn runtime is the maximum
// per-robot compute time of the message-passing protocol; dgreedy
// likewise reports its per-robot maximum.
std::vector<BenchRow> run_benchmark(const BenchConfig& cfg);

// CSV with the fixed column set
// algorithm,n_robots,trial,covered,greedy_covered,ratio,runtime_us,seed.
// Aggregate rows carry "mean" in the trial column. Reals are written
// round-trip exact.
void write_metrics_csv(const std::vector<BenchRow>& rows, const std::string& path);

struct GenMatrixEntry {
    int train_size = 0;
    int test_size = 0;
    int trials = 0;
    double mean_ratio = 0.0;
    double std_ratio = 0.0;
};

// Entry (t, e): mean GNN/greedy coverage ratio at size e of the model
// trained at size t. All models see identical instances per test size.
std::vector<GenMatrixEntry> generalization_matrix(
    const std::map<int, Model<float>>& models_by_train_size,
    const std::vector<int>& test_sizes, int trials, std::uint64_t seed,
    const ScenarioParams& params);

void write_matrix_csv(const std::vector<GenMatrixEntry>& entries, const std::string& path);

} // namespace covnet

#endif // COVNET_BENCH_HPP
