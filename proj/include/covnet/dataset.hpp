#ifndef COVNET_DATASET_HPP
#define COVNET_DATASET_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "covnet/scenario.hpp"
#include "covnet/selectors.hpp"
#include "covnet/world.hpp"

namespace covnet {

inline constexpr int kDatasetFormatVersion = 1;

// One expert-labeled instance. Raw geometry is stored, not encoded
// features; encoding happens at load time so the encoder stays the single
// source of truth.
struct TrainRecord {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    Scenario scenario;
    std::vector<std::vector<int>> neighbors;
    Assignment labels;
};

struct DatasetHeader {
    int format_version = kDatasetFormatVersion;
    int n_robots = 0;
    std::uint64_t n_instances = 0;
    std::uint64_t master_seed = 0;
    ScenarioParams params;
    std::string seed_mix = "splitmix64";
    std::string prng = "mt19937_64";
    std::string expert = "pairwise_greedy";
    std::array<double, 3> split_ratios = {0.6, 0.2, 0.2};
};

struct Dataset {
    DatasetHeader header;
    std::vector<TrainRecord> records;
};

// One labeled instance; seed derived as mix_seed(master_seed, index).
TrainRecord make_record(int n_robots, const ScenarioParams& params,
                        std::uint64_t master_seed, std::uint64_t index);

// Header line followed by one JSON record per line. Byte-identical for
// identical arguments.
void generate_dataset(int n_robots, std::uint64_t n_instances,
                      const ScenarioParams& params, std::uint64_t master_seed,
                      const std::string& out_path);

Dataset load_dataset(const std::string& path);

// Index partition: seeded shuffle then contiguous slices sized
// floor(ratio_i * n) with the remainder joining the last slice.
// Ratios must sum to 1; an empty slice is rejected.
struct SplitIndices {
    std::vector<std::uint64_t> train;
    std::vector<std::uint64_t> val;
    std::vector<std::uint64_t> test;
};

SplitIndices split(std::uint64_t n_records, const std::array<double, 3>& ratios,
                   std::uint64_t seed);

} // namespace covnet

#endif // COVNET_DATASET_HPP
