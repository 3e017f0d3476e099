#include <doctest.h>

#include <map>
#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "covnet/bench.hpp"
#include "covnet/verify.hpp"

using namespace covnet;

namespace {

namespace fs = std::filesystem;

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string strip_runtime_column(const std::string& path) {
    std::ostringstream out;
    for (const auto& row : read_csv(path)) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i == 6) continue; // runtime_us
            out << row[i] << (i + 1 == row.size() ? "" : ",");
        }
        out << "\n";
    }
    return out.str();
}

} // namespace

TEST_CASE("paired trials share the scenario and aggregates recompute exactly") {
    BenchConfig cfg;
    cfg.sizes = {4};
    cfg.algorithms = {Algo::Greedy, Algo::DGreedy, Algo::Random};
    cfg.trials = 30;
    cfg.master_seed = 77;
    const auto rows = run_benchmark(cfg);

    // 30 trials x 3 algorithms + 3 aggregate rows
    REQUIRE(rows.size() == 30 * 3 + 3);

    for (int t = 0; t < 30; ++t) {
        const auto& greedy = rows[static_cast<size_t>(t) * 3];
        const auto& dgreedy = rows[static_cast<size_t>(t) * 3 + 1];
        const auto& random = rows[static_cast<size_t>(t) * 3 + 2];
        CHECK(greedy.seed == dgreedy.seed);
        CHECK(greedy.seed == random.seed);
        CHECK(greedy.greedy_covered == dgreedy.greedy_covered);
        CHECK(greedy.ratio == 1.0);
    }

    for (const auto& agg : {rows[90], rows[91], rows[92]}) {
        REQUIRE(agg.is_aggregate());
        double covered = 0.0, ratio = 0.0;
        int count = 0;
        for (size_t i = 0; i < 90; ++i) {
            if (rows[i].algorithm != agg.algorithm) continue;
            covered += rows[i].covered;
            ratio += rows[i].ratio;
            ++count;
        }
        CHECK(agg.covered == covered / count);
        CHECK(agg.ratio == ratio / count);
    }
}

TEST_CASE("greedy tracks the optimum closely at N=4") {
    BenchConfig cfg;
    cfg.sizes = {4};
    cfg.algorithms = {Algo::Greedy, Algo::Opt};
    cfg.trials = 200;
    cfg.master_seed = 11;
    const auto rows = run_benchmark(cfg);

    double greedy_sum = 0.0, opt_sum = 0.0, ratio_sum = 0.0;
    int trials = 0;
    std::map<std::int64_t, double> opt_by_trial;
    for (const auto& r : rows) {
        if (r.is_aggregate()) continue;
        if (r.algorithm == "opt") opt_by_trial[r.trial] = r.covered;
    }
    for (const auto& r : rows) {
        if (r.is_aggregate()) continue;
        if (r.algorithm == "greedy") {
            greedy_sum += r.covered;
            const double opt = opt_by_trial.at(r.trial);
            ratio_sum += opt > 0.0 ? r.covered / opt : 1.0;
            ++trials;
        }
        if (r.algorithm == "opt") opt_sum += r.covered;
    }
    REQUIRE(opt_sum > 0.0);
    CHECK(greedy_sum / opt_sum >= 0.9);          // aggregate form
    CHECK(ratio_sum / trials >= 0.9);            // mean per-trial ratio

    double opt_ratio_below_one = 0.0;
    for (const auto& r : rows) {
        if (!r.is_aggregate() && r.algorithm == "opt") {
            CHECK(r.covered >= r.greedy_covered); // optimality per instance
            opt_ratio_below_one += (r.ratio < 1.0) ? 1 : 0;
        }
    }
    CHECK(opt_ratio_below_one == 0.0);
}

TEST_CASE("coverage ordering: greedy above decentralized above random on average") {
    BenchConfig cfg;
    cfg.sizes = {6};
    cfg.algorithms = {Algo::Greedy, Algo::DGreedy, Algo::Random};
    cfg.trials = 150;
    cfg.master_seed = 5;
    const auto rows = run_benchmark(cfg);

    double greedy = 0.0, dgreedy = 0.0, random = 0.0;
    for (const auto& r : rows) {
        if (!r.is_aggregate()) continue;
        if (r.algorithm == "greedy") greedy = r.covered;
        if (r.algorithm == "dgreedy") dgreedy = r.covered;
        if (r.algorithm == "random") random = r.covered;
    }
    CHECK(greedy >= dgreedy);
    CHECK(dgreedy > random);
}

TEST_CASE("metrics CSV round-trips and is reproducible modulo runtime") {
    const fs::path dir = fs::temp_directory_path() / "covnet_bench_test";
    fs::create_directories(dir);
    const std::string a = (dir / "a.csv").string();
    const std::string b = (dir / "b.csv").string();

    BenchConfig cfg;
    cfg.sizes = {4, 6};
    cfg.algorithms = {Algo::Greedy, Algo::Random};
    cfg.trials = 20;
    cfg.master_seed = 31;
    write_metrics_csv(run_benchmark(cfg), a);
    write_metrics_csv(run_benchmark(cfg), b);

    CHECK(strip_runtime_column(a) == strip_runtime_column(b));

    const auto rows = read_csv(a);
    REQUIRE(!rows.empty());
    CHECK(rows[0] == std::vector<std::string>{"algorithm", "n_robots", "trial", "covered",
                                              "greedy_covered", "ratio", "runtime_us", "seed"});
    // 2 sizes x (20 trials x 2 algorithms + 2 aggregates) + header
    CHECK(rows.size() == 1 + 2 * (20 * 2 + 2));
    fs::remove_all(dir);
}

TEST_CASE("bench rejects inconsistent requests") {
    BenchConfig cfg;
    cfg.sizes = {12};
    cfg.algorithms = {Algo::Opt};
    cfg.trials = 1;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument); // over the cap

    cfg.sizes = {4};
    cfg.algorithms = {Algo::Gnn};
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument); // no model

    cfg.algorithms = {Algo::Greedy};
    cfg.trials = 0;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
}

TEST_CASE("generalization matrix pairs instances across models") {
    std::map<int, Model<float>> models;
    models.emplace(4, init_model<float>(ModelConfig{}, 1));
    models.emplace(6, init_model<float>(ModelConfig{}, 2));

    const auto entries = generalization_matrix(models, {4, 5}, 10, 3, ScenarioParams{});
    REQUIRE(entries.size() == 4);
    for (const auto& e : entries) {
        CHECK(e.trials == 10);
        CHECK(e.mean_ratio >= 0.0);
        CHECK(e.mean_ratio <= 1.5);
    }

    const fs::path dir = fs::temp_directory_path() / "covnet_matrix_test";
    fs::create_directories(dir);
    const std::string path = (dir / "m.csv").string();
    write_matrix_csv(entries, path);
    const auto rows = read_csv(path);
    CHECK(rows.size() == 5);
    CHECK(rows[0][0] == "train_size");
    fs::remove_all(dir);
}

TEST_CASE("verify suite smoke run") {
    const CheckResult bound = check_greedy_bound(30, 3);
    INFO(bound.detail);
    CHECK(bound.pass);

    const CheckResult sub = check_submodularity(4, 6, 3);
    INFO(sub.detail);
    CHECK(sub.pass);

    const CheckResult grad = check_gradients(2, 3);
    INFO(grad.detail);
    CHECK(grad.pass);

    const CheckResult structure = check_gnn_structure(4, 3);
    INFO(structure.detail);
    CHECK(structure.pass);
}
