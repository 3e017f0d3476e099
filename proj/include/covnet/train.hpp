#ifndef COVNET_TRAIN_HPP
#define COVNET_TRAIN_HPP

#include <cstdint>
#include <vector>

#include "covnet/dataset.hpp"
#include "covnet/neural.hpp"

namespace covnet {

struct TrainConfig {
    ModelConfig model;
    int epochs = 1500;
    int batch_size = 64;
    double lr_max = 5e-3;
    double lr_min = 1e-6;
    std::uint64_t init_seed = 1;
    std::uint64_t shuffle_seed = 2;
};

struct EpochStats {
    int epoch = 0;          // 1-based
    double train_loss = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;
    double lr = 0.0;        // rate used for the last step of the epoch
};

struct TrainResult {
    Model<float> best;      // lowest validation loss
    Model<float> last;
    std::vector<EpochStats> history;
    int best_epoch = 0;
    double best_val_loss = 0.0;
    std::int64_t steps = 0;
    bool diverged = false;
};

// Feature matrix + shift operator + labels, ready for the network.
// Encoding is recomputed here from raw geometry.
struct PreparedInstance {
    Matrix<float> x;
    Matrix<float> s;
    const Assignment* labels;
};

std::vector<PreparedInstance> prepare(const std::vector<const TrainRecord*>& records);

std::vector<const TrainRecord*> select_records(const Dataset& d,
                                               const std::vector<std::uint64_t>& indices);

// Shuffled mini-batch supervised training against the stored expert
// labels, per-step cosine annealing, best-validation-loss checkpointing.
// Deterministic for fixed seeds regardless of worker count. On a
// non-finite loss the loop halts and returns with diverged = true and the
// best checkpoint seen so far.
TrainResult train(const std::vector<const TrainRecord*>& train_records,
                  const std::vector<const TrainRecord*>& val_records,
                  const TrainConfig& cfg);

// Mean loss and exact-label accuracy of a model over prepared instances.
struct EvalLoss {
    double loss = 0.0;
    double accuracy = 0.0;
};
EvalLoss evaluate_loss(const Model<float>& model,
                       const std::vector<PreparedInstance>& instances);

} // namespace covnet

#endif // COVNET_TRAIN_HPP
