#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covnet/bench.hpp"
#include "covnet/checkpoint.hpp"
#include "covnet/dataset.hpp"
#include "covnet/evalmodel.hpp"
#include "covnet/train.hpp"
#include "covnet/verify.hpp"

namespace {

using covnet::ScenarioParams;

void add_param_flags(CLI::App* cmd, ScenarioParams& params) {
    cmd->add_option("--density", params.target_density, "Target density (fraction of cells)")
        ->capture_default_str();
    cmd->add_option("--comm-range", params.comm_range, "Communication range")
        ->capture_default_str();
    cmd->add_option("--sensing-range", params.sensing_range, "Sensing range")
        ->capture_default_str();
    cmd->add_option("--fov", params.fov_side, "Camera field-of-view side")
        ->capture_default_str();
    cmd->add_option("--travel", params.travel, "Travel distance per primitive")
        ->capture_default_str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

int run_gen(int n_robots, std::uint64_t instances, std::uint64_t seed,
            const std::string& out, const ScenarioParams& params) {
    covnet::generate_dataset(n_robots, instances, params, seed, out);
    std::cout << "wrote " << instances << " instances (N=" << n_robots << ") to "
              << out << "\n";
    return 0;
}

int run_train(const std::string& data, int epochs, int batch, double lr_max,
              double lr_min, std::uint64_t seed, const std::string& out) {
    const covnet::Dataset dataset = covnet::load_dataset(data);
    const auto splits = covnet::split(dataset.records.size(),
                                      dataset.header.split_ratios,
                                      covnet::mix_seed(seed, 0));

    covnet::TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.batch_size = batch;
    cfg.lr_max = lr_max;
    cfg.lr_min = lr_min;
    cfg.init_seed = covnet::mix_seed(seed, 1);
    cfg.shuffle_seed = covnet::mix_seed(seed, 2);

    const auto train_view = covnet::select_records(dataset, splits.train);
    const auto val_view = covnet::select_records(dataset, splits.val);
    std::cerr << "training on " << train_view.size() << " instances, validating on "
              << val_view.size() << "\n";

    const covnet::TrainResult result = covnet::train(train_view, val_view, cfg);
    for (const auto& e : result.history) {
        std::cerr << "epoch " << e.epoch << " train_loss " << e.train_loss
                  << " val_loss " << e.val_loss << " val_acc " << e.val_accuracy
                  << "\n";
    }
    if (result.diverged) {
        std::cerr << "training diverged; keeping the best checkpoint so far\n";
    }

    nlohmann::ordered_json meta;
    meta["dataset"] = data;
    meta["epochs"] = epochs;
    meta["batch_size"] = batch;
    meta["lr_max"] = lr_max;
    meta["lr_min"] = lr_min;
    meta["seed"] = seed;
    meta["steps"] = result.steps;
    meta["best_epoch"] = result.best_epoch;
    meta["best_val_loss"] = result.best_val_loss;
    meta["diverged"] = result.diverged;
    covnet::save_checkpoint(result.best, meta, out);

    std::ofstream hist(out + ".history.csv");
    hist << "epoch,train_loss,val_loss,val_accuracy,lr\n";
    for (const auto& e : result.history) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", e.epoch,
                      e.train_loss, e.val_loss, e.val_accuracy, e.lr);
        hist << buf;
    }

    std::cout << "saved checkpoint to " << out << " (best epoch "
              << result.best_epoch << ", val loss " << result.best_val_loss << ")\n";
    return result.diverged ? 2 : 0;
}

int run_eval(const std::string& model_path, int n_robots, int trials,
             std::uint64_t seed, const std::string& csv,
             const ScenarioParams& params) {
    const auto model = covnet::load_checkpoint<float>(model_path);
    const covnet::EvalSummary sum =
        covnet::evaluate_model(model, n_robots, trials, seed, params);

    std::vector<covnet::BenchRow> rows;
    for (const auto& r : sum.rows) {
        covnet::BenchRow row;
        row.algorithm = "gnn";
        row.n_robots = n_robots;
        row.trial = static_cast<std::int64_t>(r.trial);
        row.covered = r.covered;
        row.greedy_covered = r.greedy_covered;
        row.ratio = r.ratio;
        row.runtime_us = r.elapsed_us;
        row.seed = r.seed;
        rows.push_back(std::move(row));
    }
    covnet::write_metrics_csv(rows, csv);

    std::cout << "n=" << n_robots << " trials=" << trials << " mean_ratio="
              << sum.mean_ratio << " std_ratio=" << sum.std_ratio
              << " mean_covered=" << sum.mean_covered << " mean_greedy="
              << sum.mean_greedy << "\n";
    return 0;
}

int run_bench(const std::string& sizes_text, const std::string& algos_text,
              int trials, std::uint64_t seed, const std::string& model_path,
              const std::string& csv, std::int64_t opt_cap,
              const ScenarioParams& params) {
    covnet::BenchConfig cfg;
    cfg.sizes = parse_int_list(sizes_text);
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.opt_cap = opt_cap;
    cfg.params = params;

    std::stringstream ss(algos_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto algo = covnet::parse_algo(item);
        if (!algo) throw std::runtime_error("unknown algorithm '" + item + "'");
        cfg.algorithms.push_back(*algo);
    }

    covnet::Model<float> model;
    bool wants_gnn = false;
    for (auto a : cfg.algorithms) wants_gnn |= (a == covnet::Algo::Gnn);
    if (wants_gnn) {
        if (model_path.empty()) throw std::runtime_error("gnn requested but --model missing");
        model = covnet::load_checkpoint<float>(model_path);
        cfg.model = &model;
    }

    const auto rows = covnet::run_benchmark(cfg);
    covnet::write_metrics_csv(rows, csv);
    for (const auto& r : rows) {
        if (!r.is_aggregate()) continue;
        std::cout << r.algorithm << " n=" << r.n_robots << " mean_covered="
                  << r.covered << " mean_ratio=" << r.ratio << " mean_runtime_us="
                  << r.runtime_us << "\n";
    }
    return 0;
}

int run_genmatrix(const std::string& models_text, const std::string& sizes_text,
                  int trials, std::uint64_t seed, const std::string& csv,
                  const ScenarioParams& params) {
    std::map<int, covnet::Model<float>> models;
    std::stringstream ss(models_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("--models expects size=path entries");
        }
        const int size = std::stoi(item.substr(0, eq));
        models.emplace(size, covnet::load_checkpoint<float>(item.substr(eq + 1)));
    }

    const auto entries = covnet::generalization_matrix(
        models, parse_int_list(sizes_text), trials, seed, params);
    covnet::write_matrix_csv(entries, csv);
    for (const auto& e : entries) {
        std::cout << "train=" << e.train_size << " test=" << e.test_size
                  << " mean_ratio=" << e.mean_ratio << "\n";
    }
    return 0;
}

int run_verify() {
    const std::vector<covnet::CheckResult> results = {
        covnet::check_greedy_bound(100, 11),
        covnet::check_submodularity(20, 30, 22),
        covnet::check_gradients(3, 33),
        covnet::check_gnn_structure(10, 44),
        covnet::check_decentralized_parity(20, 55),
    };
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " -- " << r.detail
                  << "\n";
        ok &= r.pass;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-robot target-coverage workbench"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an expert-labeled dataset");
    int gen_n = 20;
    std::uint64_t gen_instances = 1000, gen_seed = 1;
    std::string gen_out;
    ScenarioParams gen_params;
    gen->add_option("--n-robots", gen_n, "Team size")->required();
    gen->add_option("--instances", gen_instances, "Instance count")->required();
    gen->add_option("--seed", gen_seed, "Master seed")->required();
    gen->add_option("--out", gen_out, "Output dataset path")->required();
    add_param_flags(gen, gen_params);

    // train
    auto* train = app.add_subcommand("train", "Train the network on a dataset");
    std::string train_data, train_out;
    int train_epochs = 1500, train_batch = 64;
    double train_lr_max = 5e-3, train_lr_min = 1e-6;
    std::uint64_t train_seed = 1;
    train->add_option("--data", train_data, "Dataset path")->required();
    train->add_option("--epochs", train_epochs, "Training epochs")->required();
    train->add_option("--batch", train_batch, "Batch size")->capture_default_str();
    train->add_option("--lr-max", train_lr_max, "Initial learning rate")->capture_default_str();
    train->add_option("--lr-min", train_lr_min, "Final learning rate")->capture_default_str();
    train->add_option("--seed", train_seed, "Training seed")->required();
    train->add_option("--out", train_out, "Checkpoint output path")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on fresh instances");
    std::string eval_model, eval_csv;
    int eval_n = 20, eval_trials = 100;
    std::uint64_t eval_seed = 1;
    ScenarioParams eval_params;
    eval->add_option("--model", eval_model, "Checkpoint path")->required();
    eval->add_option("--n-robots", eval_n, "Team size")->required();
    eval->add_option("--trials", eval_trials, "Trial count")->required();
    eval->add_option("--seed", eval_seed, "Seed")->required();
    eval->add_option("--csv", eval_csv, "Metrics CSV path")->required();
    add_param_flags(eval, eval_params);

    // bench
    auto* bench = app.add_subcommand("bench", "Compare selection algorithms");
    std::string bench_sizes = "4,6,8,10", bench_algos = "greedy,dgreedy,random";
    std::string bench_model, bench_csv;
    int bench_trials = 100;
    std::uint64_t bench_seed = 1;
    std::int64_t bench_cap = covnet::kDefaultExhaustiveCap;
    ScenarioParams bench_params;
    bench->add_option("--sizes", bench_sizes, "Comma-separated team sizes")->capture_default_str();
    bench->add_option("--algorithms", bench_algos, "Comma-separated algorithms")->capture_default_str();
    bench->add_option("--trials", bench_trials, "Trials per size")->required();
    bench->add_option("--seed", bench_seed, "Master seed")->required();
    bench->add_option("--model", bench_model, "Checkpoint (required for gnn)");
    bench->add_option("--csv", bench_csv, "Metrics CSV path")->required();
    bench->add_option("--opt-cap", bench_cap, "Exhaustive search cap")->capture_default_str();
    add_param_flags(bench, bench_params);

    // genmatrix
    auto* genmatrix = app.add_subcommand("genmatrix", "Train/test generalization matrix");
    std::string gm_models, gm_sizes, gm_csv;
    int gm_trials = 100;
    std::uint64_t gm_seed = 1;
    ScenarioParams gm_params;
    genmatrix->add_option("--models", gm_models, "size=path, comma separated")->required();
    genmatrix->add_option("--test-sizes", gm_sizes, "Comma-separated test sizes")->required();
    genmatrix->add_option("--trials", gm_trials, "Trials per cell")->required();
    genmatrix->add_option("--csv", gm_csv, "Matrix CSV path")->required();
    genmatrix->add_option("--seed", gm_seed, "Seed")->capture_default_str();
    add_param_flags(genmatrix, gm_params);

    // verify
    auto* verify = app.add_subcommand("verify", "Run the oracle/gradient/parity property suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(gen_n, gen_instances, gen_seed, gen_out, gen_params);
        if (train->parsed()) {
            return run_train(train_data, train_epochs, train_batch, train_lr_max,
                             train_lr_min, train_seed, train_out);
        }
        if (eval->parsed()) {
            return run_eval(eval_model, eval_n, eval_trials, eval_seed, eval_csv, eval_params);
        }
        if (bench->parsed()) {
            return run_bench(bench_sizes, bench_algos, bench_trials, bench_seed,
                             bench_model, bench_csv, bench_cap, bench_params);
        }
        if (genmatrix->parsed()) {
            return run_genmatrix(gm_models, gm_sizes, gm_trials, gm_seed, gm_csv, gm_params);
        }
        if (verify->parsed()) return run_verify();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
