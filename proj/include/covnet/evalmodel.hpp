#ifndef COVNET_EVALMODEL_HPP
#define COVNET_EVALMODEL_HPP

#include <cstdint>
#include <vector>

#include "covnet/dataset.hpp"
#include "covnet/neural.hpp"

namespace covnet {

struct EvalRow {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    int covered = 0;
    int greedy_covered = 0;
    double ratio = 0.0;
    double elapsed_us = 0.0; // network inference + argmax only
};

struct EvalSummary {
    std::vector<EvalRow> rows;
    double mean_ratio = 0.0;
    double std_ratio = 0.0;
    double mean_covered = 0.0;
    double mean_greedy = 0.0;
    double mean_elapsed_us = 0.0;
};

// Model assignment (row-argmax of the logits) against the stored expert
// labels of each record. Throws if the model's input width does not match
// the feature encoding.
EvalSummary evaluate_model(const Model<float>& model,
                           const std::vector<const TrainRecord*>& records);

// Same, on freshly generated instances with per-trial seeds
// mix_seed(seed, trial); the expert runs on the fly.
EvalSummary evaluate_model(const Model<float>& model, int n_robots, int trials,
                           std::uint64_t seed, const ScenarioParams& params);

} // namespace covnet

#endif // COVNET_EVALMODEL_HPP
