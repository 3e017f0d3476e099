#include "covnet/evalmodel.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "covnet/features.hpp"
#include "covnet/parallel.hpp"
#include "covnet/rng.hpp"
#include "covnet/selectors.hpp"

namespace covnet {

namespace {

using Clock = std::chrono::steady_clock;

EvalRow eval_one(const Model<float>& model, const Scenario& s,
                 int greedy_covered) {
    const Matrix<float> x = encode_all<float>(s);
    const Matrix<float> gso = gso_matrix<float>(build_comm_graph(s));

    const auto start = Clock::now();
    const Assignment u = logits_to_assignment(gnn_forward(gso, x, model));
    const double elapsed =
        std::chrono::duration<double, std::micro>(Clock::now() - start).count();

    EvalRow row;
    row.seed = s.seed;
    row.covered = objective(s, u);
    row.greedy_covered = greedy_covered;
    row.ratio = greedy_covered > 0
                    ? static_cast<double>(row.covered) / greedy_covered
                    : 1.0;
    row.elapsed_us = elapsed;
    return row;
}

EvalSummary summarize(std::vector<EvalRow> rows) {
    EvalSummary sum;
    sum.rows = std::move(rows);
    if (sum.rows.empty()) return sum;
    for (const auto& r : sum.rows) {
        sum.mean_ratio += r.ratio;
        sum.mean_covered += r.covered;
        sum.mean_greedy += r.greedy_covered;
        sum.mean_elapsed_us += r.elapsed_us;
    }
    const double n = static_cast<double>(sum.rows.size());
    sum.mean_ratio /= n;
    sum.mean_covered /= n;
    sum.mean_greedy /= n;
    sum.mean_elapsed_us /= n;
    double var = 0.0;
    for (const auto& r : sum.rows) {
        var += (r.ratio - sum.mean_ratio) * (r.ratio - sum.mean_ratio);
    }
    sum.std_ratio = std::sqrt(var / n);
    return sum;
}

void check_model(const Model<float>& model) {
    if (model.config.input_dim != kFeatureWidth) {
        throw std::invalid_argument("evaluate_model: model input width does not match the encoding");
    }
}

} // namespace

EvalSummary evaluate_model(const Model<float>& model,
                           const std::vector<const TrainRecord*>& records) {
    check_model(model);
    std::vector<EvalRow> rows(records.size());
    parallel_for(static_cast<int>(records.size()), worker_count(), [&](int i) {
        const TrainRecord& r = *records[static_cast<size_t>(i)];
        rows[static_cast<size_t>(i)] =
            eval_one(model, r.scenario, objective(r.scenario, r.labels));
        rows[static_cast<size_t>(i)].trial = r.index;
    });
    return summarize(std::move(rows));
}

EvalSummary evaluate_model(const Model<float>& model, int n_robots, int trials,
                           std::uint64_t seed, const ScenarioParams& params) {
    check_model(model);
    std::vector<EvalRow> rows(static_cast<size_t>(trials));
    parallel_for(trials, worker_count(), [&](int t) {
        const Scenario s =
            generate_scenario(n_robots, params, mix_seed(seed, static_cast<std::uint64_t>(t)));
        rows[static_cast<size_t>(t)] = eval_one(model, s, greedy_central(s).value);
        rows[static_cast<size_t>(t)].trial = static_cast<std::uint64_t>(t);
    });
    return summarize(std::move(rows));
}

} // namespace covnet
