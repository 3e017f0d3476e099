#include "covnet/train.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "covnet/features.hpp"
#include "covnet/parallel.hpp"
#include "covnet/rng.hpp"

namespace covnet {

std::vector<const TrainRecord*> select_records(const Dataset& d,
                                               const std::vector<std::uint64_t>& indices) {
    std::vector<const TrainRecord*> out;
    out.reserve(indices.size());
    for (const auto i : indices) out.push_back(&d.records[i]);
    return out;
}

std::vector<PreparedInstance> prepare(const std::vector<const TrainRecord*>& records) {
    std::vector<PreparedInstance> out(records.size());
    parallel_for(static_cast<int>(records.size()), worker_count(), [&](int i) {
        const TrainRecord& r = *records[static_cast<size_t>(i)];
        PreparedInstance& p = out[static_cast<size_t>(i)];
        p.x = encode_all<float>(r.scenario);
        p.s = gso_matrix<float>(build_comm_graph(r.scenario));
        p.labels = &r.labels;
    });
    return out;
}

EvalLoss evaluate_loss(const Model<float>& model,
                       const std::vector<PreparedInstance>& instances) {
    std::vector<double> losses(instances.size(), 0.0);
    std::vector<int> hits(instances.size(), 0);
    std::vector<int> robots(instances.size(), 0);
    parallel_for(static_cast<int>(instances.size()), worker_count(), [&](int i) {
        const auto& inst = instances[static_cast<size_t>(i)];
        try {
            const Matrix<float> logits = gnn_forward(inst.s, inst.x, model);
            losses[static_cast<size_t>(i)] = cross_entropy_loss(logits, *inst.labels);
            const Assignment u = logits_to_assignment(logits);
            int hit = 0;
            for (size_t r = 0; r < u.size(); ++r) {
                if (u[r] == (*inst.labels)[r]) ++hit;
            }
            hits[static_cast<size_t>(i)] = hit;
            robots[static_cast<size_t>(i)] = logits.rows();
        } catch (const std::runtime_error&) { // non-finite forward
            losses[static_cast<size_t>(i)] = std::numeric_limits<double>::infinity();
            robots[static_cast<size_t>(i)] = inst.x.rows();
        }
    });

    EvalLoss e;
    std::int64_t total_hits = 0, total_robots = 0;
    for (size_t i = 0; i < instances.size(); ++i) {
        e.loss += losses[i];
        total_hits += hits[i];
        total_robots += robots[i];
    }
    if (!instances.empty()) e.loss /= static_cast<double>(instances.size());
    if (total_robots > 0) e.accuracy = static_cast<double>(total_hits) / static_cast<double>(total_robots);
    return e;
}

namespace {

// grads of one instance's mean-over-robots loss; returns the loss
double instance_grad(const PreparedInstance& inst, const Model<float>& model,
                     Model<float>& grads) {
    ForwardCache<float> cache;
    const Matrix<float> logits = gnn_forward(inst.s, inst.x, model, &cache);
    const double loss = cross_entropy_loss(logits, *inst.labels);
    backward(inst.s, cache, model, cross_entropy_grad(logits, *inst.labels), grads);
    return loss;
}

void zero_model(Model<float>& m) {
    for (auto& [data, size] : m.tensor_data()) std::fill(data, data + size, 0.0f);
}

} // namespace

TrainResult train(const std::vector<const TrainRecord*>& train_records,
                  const std::vector<const TrainRecord*>& val_records,
                  const TrainConfig& cfg) {
    if (train_records.empty()) throw std::invalid_argument("train: empty training set");
    if (cfg.batch_size < 1) throw std::invalid_argument("train: batch size must be >= 1");
    if (cfg.model.input_dim != kFeatureWidth) {
        throw std::invalid_argument("train: model input width does not match the encoding");
    }

    const auto train_set = prepare(train_records);
    const auto val_set = prepare(val_records);

    TrainResult res;
    res.last = init_model<float>(cfg.model, cfg.init_seed);
    res.best = res.last;
    res.best_val_loss = std::numeric_limits<double>::infinity();

    TrainState<float> state(cfg.model);
    const std::int64_t n = static_cast<std::int64_t>(train_set.size());
    const std::int64_t steps_per_epoch = (n + cfg.batch_size - 1) / cfg.batch_size;
    const std::int64_t total_steps = steps_per_epoch * cfg.epochs;

    std::vector<std::uint64_t> order(train_set.size());
    std::iota(order.begin(), order.end(), 0);

    // most recent parameters that evaluated to a finite loss; restored on
    // divergence so the caller always gets a usable model
    Model<float> last_good = res.last;

    // per-instance gradient slots, reduced in index order so the result
    // does not depend on the worker count
    std::vector<Model<float>> slot_grads;
    std::vector<double> slot_loss(static_cast<size_t>(cfg.batch_size), 0.0);
    for (int i = 0; i < cfg.batch_size; ++i) slot_grads.push_back(make_model<float>(cfg.model));
    Model<float> batch_grads = make_model<float>(cfg.model);

    std::int64_t global_step = 0;
    for (int epoch = 1; epoch <= cfg.epochs && !res.diverged; ++epoch) {
        Rng shuffle_rng(mix_seed(cfg.shuffle_seed, static_cast<std::uint64_t>(epoch)));
        for (std::uint64_t i = static_cast<std::uint64_t>(order.size()); i > 1; --i) {
            const std::uint64_t j = shuffle_rng.uniform_below(i);
            std::swap(order[i - 1], order[j]);
        }

        double epoch_loss = 0.0;
        std::int64_t batches = 0;
        double last_lr = 0.0;
        for (std::int64_t base = 0; base < n && !res.diverged; base += cfg.batch_size) {
            const int b = static_cast<int>(std::min<std::int64_t>(cfg.batch_size, n - base));
            std::atomic<bool> failed{false};
            parallel_for(b, worker_count(), [&](int k) {
                zero_model(slot_grads[static_cast<size_t>(k)]);
                try {
                    slot_loss[static_cast<size_t>(k)] = instance_grad(
                        train_set[order[static_cast<size_t>(base + k)]], res.last,
                        slot_grads[static_cast<size_t>(k)]);
                } catch (const std::runtime_error&) {
                    failed = true; // non-finite forward
                }
            });

            double batch_loss = 0.0;
            for (int k = 0; k < b; ++k) batch_loss += slot_loss[static_cast<size_t>(k)];
            batch_loss /= b;
            if (failed || !std::isfinite(batch_loss)) {
                res.diverged = true;
                res.last = last_good;
                break;
            }
            last_good = res.last;

            zero_model(batch_grads);
            const float scale = 1.0f / static_cast<float>(b);
            auto dst = batch_grads.tensor_data();
            for (int k = 0; k < b; ++k) {
                const auto src = slot_grads[static_cast<size_t>(k)].tensor_data();
                for (size_t t = 0; t < dst.size(); ++t) {
                    float* d = dst[t].first;
                    const float* s = src[t].first;
                    for (size_t e = 0; e < dst[t].second; ++e) d[e] += s[e] * scale;
                }
            }

            last_lr = cosine_lr(global_step, total_steps, cfg.lr_max, cfg.lr_min);
            optimizer_step(res.last, batch_grads, state, last_lr);
            ++global_step;
            epoch_loss += batch_loss;
            ++batches;
        }
        if (res.diverged) break;

        EpochStats stats;
        stats.epoch = epoch;
        stats.train_loss = batches > 0 ? epoch_loss / static_cast<double>(batches) : 0.0;
        stats.lr = last_lr;
        if (!val_set.empty()) {
            const EvalLoss v = evaluate_loss(res.last, val_set);
            stats.val_loss = v.loss;
            stats.val_accuracy = v.accuracy;
            if (!std::isfinite(v.loss)) {
                res.diverged = true;
                res.last = last_good;
                res.history.push_back(stats);
                break;
            }
            if (v.loss < res.best_val_loss) {
                res.best_val_loss = v.loss;
                res.best_epoch = epoch;
                res.best = res.last;
            }
        } else {
            res.best = res.last;
            res.best_epoch = epoch;
        }
        res.history.push_back(stats);
    }

    res.steps = global_step;
    if (val_records.empty() || res.best_epoch == 0) res.best = res.last;
    return res;
}

} // namespace covnet
