#include <doctest.h>

#include <limits>
#include <stdexcept>

#include "covnet/evalmodel.hpp"
#include "covnet/selectors.hpp"
#include "covnet/train.hpp"

using namespace covnet;

namespace {

std::vector<TrainRecord> make_records(int n_robots, int count, std::uint64_t seed) {
    std::vector<TrainRecord> records;
    for (int i = 0; i < count; ++i) {
        records.push_back(make_record(n_robots, ScenarioParams{}, seed,
                                      static_cast<std::uint64_t>(i)));
    }
    return records;
}

std::vector<const TrainRecord*> view(const std::vector<TrainRecord>& records) {
    std::vector<const TrainRecord*> v;
    for (const auto& r : records) v.push_back(&r);
    return v;
}

} // namespace

TEST_CASE("one epoch over one batch takes exactly one optimizer step") {
    const auto records = make_records(4, 64, 3);
    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.batch_size = 64;
    const TrainResult r = train(view(records), {}, cfg);
    CHECK(r.steps == 1);
    CHECK(r.history.size() == 1);
}

TEST_CASE("ten records can be memorized") {
    const auto records = make_records(10, 10, 17);
    TrainConfig cfg;
    cfg.epochs = 500;
    cfg.batch_size = 64;
    cfg.lr_max = 5e-3;
    cfg.lr_min = 1e-6;
    const TrainResult r = train(view(records), {}, cfg);
    REQUIRE_FALSE(r.diverged);

    const EvalLoss fit = evaluate_loss(r.last, prepare(view(records)));
    CHECK(fit.accuracy >= 0.99);
}

TEST_CASE("training is deterministic") {
    const auto records = make_records(5, 24, 23);
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.batch_size = 8;
    const TrainResult a = train(view(records), {}, cfg);
    const TrainResult b = train(view(records), {}, cfg);
    const auto ta = a.last.tensor_data();
    const auto tb = b.last.tensor_data();
    for (size_t t = 0; t < ta.size(); ++t) {
        for (size_t i = 0; i < ta[t].second; ++i) {
            CHECK(ta[t].first[i] == tb[t].first[i]);
        }
    }
    REQUIRE(a.history.size() == b.history.size());
    for (size_t e = 0; e < a.history.size(); ++e) {
        CHECK(a.history[e].train_loss == b.history[e].train_loss);
    }
}

TEST_CASE("an exploding learning rate halts with the best checkpoint") {
    const auto records = make_records(5, 16, 29);
    TrainConfig cfg;
    cfg.epochs = 50;
    cfg.batch_size = 8;
    cfg.lr_max = 1e18;
    cfg.lr_min = 1e18;
    const TrainResult r = train(view(records), view(records), cfg);
    CHECK(r.diverged);
    // the returned model is still usable
    const EvalLoss e = evaluate_loss(r.best, prepare(view(records)));
    CHECK(std::isfinite(e.loss));
}

TEST_CASE("validation tracking picks the best epoch") {
    const auto records = make_records(5, 30, 31);
    const auto val = make_records(5, 10, 37);
    TrainConfig cfg;
    cfg.epochs = 8;
    cfg.batch_size = 16;
    const TrainResult r = train(view(records), view(val), cfg);
    REQUIRE(r.best_epoch >= 1);
    REQUIRE(r.best_epoch <= 8);
    double best_seen = std::numeric_limits<double>::infinity();
    for (const auto& e : r.history) best_seen = std::min(best_seen, e.val_loss);
    CHECK(r.best_val_loss == best_seen);
}

TEST_CASE("expert labels evaluate to ratio one against themselves") {
    const auto records = make_records(6, 20, 41);
    for (const auto& r : records) {
        const int expert_value = objective(r.scenario, r.labels);
        const int greedy_value = greedy_central(r.scenario).value;
        CHECK(expert_value == greedy_value);
    }
}

TEST_CASE("a random-weights model scores like the random baseline") {
    const auto records = make_records(5, 300, 53);
    const Model<float> untrained = init_model<float>(ModelConfig{}, 5555);
    const EvalSummary gnn = evaluate_model(untrained, view(records));

    double random_ratio_sum = 0.0;
    for (const auto& r : records) {
        const int greedy_value = objective(r.scenario, r.labels);
        const SelectionResult rand = random_assign(r.scenario, mix_seed(r.seed, 1));
        random_ratio_sum +=
            greedy_value > 0 ? static_cast<double>(rand.value) / greedy_value : 1.0;
    }
    const double random_ratio = random_ratio_sum / records.size();

    INFO("untrained ", gnn.mean_ratio, " random ", random_ratio);
    CHECK(std::abs(gnn.mean_ratio - random_ratio) < 0.08);
}

TEST_CASE("evaluate_model rejects an incompatible architecture") {
    ModelConfig cfg;
    cfg.input_dim = 10;
    const Model<float> model = init_model<float>(cfg, 1);
    const auto records = make_records(4, 2, 3);
    CHECK_THROWS_AS(evaluate_model(model, view(records)), std::invalid_argument);
}
