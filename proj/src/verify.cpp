#include "covnet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "covnet/features.hpp"
#include "covnet/neural.hpp"
#include "covnet/rng.hpp"
#include "covnet/runtime.hpp"
#include "covnet/selectors.hpp"

namespace covnet {

namespace {

// Distinct targets covered by the assigned part of a partial assignment,
// evaluated naively and independently of the selectors' bitset path.
int partial_value(const Scenario& s, const PartialAssignment& partial) {
    std::vector<bool> covered(s.targets.size(), false);
    int count = 0;
    for (int i = 0; i < s.n_robots(); ++i) {
        if (partial[i] == kUnassigned) continue;
        const Rect region = coverage_region(
            s.robots[i], static_cast<MotionPrimitive>(partial[i]), s.params);
        for (int t = 0; t < s.n_targets(); ++t) {
            if (!covered[t] && region.contains(s.targets[t])) {
                covered[t] = true;
                ++count;
            }
        }
    }
    return count;
}

} // namespace

CheckResult check_greedy_bound(int instances, std::uint64_t seed) {
    CheckResult res{"greedy 1/2 bound vs exhaustive", true, ""};
    double ratio_sum = 0.0;
    double worst = 1.0;
    for (int i = 0; i < instances; ++i) {
        const int n = 2 + i % 3;
        const Scenario s =
            generate_scenario(n, ScenarioParams{}, mix_seed(seed, static_cast<std::uint64_t>(i)));
        const SelectionResult greedy = greedy_central(s);
        const SelectionResult opt = exhaustive_opt(s);
        if (2 * greedy.value < opt.value) {
            res.pass = false;
            std::ostringstream os;
            os << "bound violated at seed " << s.seed << ": greedy " << greedy.value
               << " vs opt " << opt.value;
            res.detail = os.str();
            return res;
        }
        const double ratio =
            opt.value > 0 ? static_cast<double>(greedy.value) / opt.value : 1.0;
        ratio_sum += ratio;
        worst = std::min(worst, ratio);
    }
    const double mean = ratio_sum / instances;
    std::ostringstream os;
    os << instances << " instances, mean ratio " << mean << ", min " << worst;
    res.detail = os.str();
    if (mean < 0.9) res.pass = false;
    return res;
}

CheckResult check_submodularity(int exhaustive_instances, int random_instances,
                                std::uint64_t seed) {
    CheckResult res{"monotone submodular objective", true, ""};
    std::int64_t checks = 0;

    // exhaustive sweep over all partial assignments, N <= 3
    for (int i = 0; i < exhaustive_instances; ++i) {
        const int n = 2 + i % 2;
        const Scenario s =
            generate_scenario(n, ScenarioParams{}, mix_seed(seed, static_cast<std::uint64_t>(i)));
        std::int64_t total = 1;
        for (int r = 0; r < n; ++r) total *= kNumPrimitives + 1;

        PartialAssignment partial(static_cast<size_t>(n));
        for (std::int64_t code = 0; code < total; ++code) {
            std::int64_t c = code;
            for (int r = 0; r < n; ++r) {
                const int digit = static_cast<int>(c % (kNumPrimitives + 1));
                partial[static_cast<size_t>(r)] = digit == 0 ? kUnassigned : digit - 1;
                c /= kNumPrimitives + 1;
            }
            const int base = partial_value(s, partial);

            for (int r1 = 0; r1 < n; ++r1) {
                if (partial[static_cast<size_t>(r1)] != kUnassigned) continue;
                for (int m1 = 0; m1 < kNumPrimitives; ++m1) {
                    PartialAssignment pa = partial;
                    pa[static_cast<size_t>(r1)] = m1;
                    const int va = partial_value(s, pa);
                    ++checks;
                    if (va < base) {
                        res.pass = false;
                        res.detail = "monotonicity violated";
                        return res;
                    }
                    // diminishing returns against every one-action extension
                    for (int r2 = 0; r2 < n; ++r2) {
                        if (r2 == r1 || partial[static_cast<size_t>(r2)] != kUnassigned) continue;
                        for (int m2 = 0; m2 < kNumPrimitives; ++m2) {
                            PartialAssignment pb = partial;
                            pb[static_cast<size_t>(r2)] = m2;
                            PartialAssignment pab = pa;
                            pab[static_cast<size_t>(r2)] = m2;
                            const int vb = partial_value(s, pb);
                            const int vab = partial_value(s, pab);
                            ++checks;
                            if (va - base < vab - vb) {
                                res.pass = false;
                                res.detail = "submodularity violated";
                                return res;
                            }
                        }
                    }
                }
            }
        }
    }

    // randomized chains, N <= 10
    Rng rng(mix_seed(seed, 0xABCDEF));
    for (int i = 0; i < random_instances; ++i) {
        const int n = 4 + static_cast<int>(rng.uniform_below(7));
        const Scenario s =
            generate_scenario(n, ScenarioParams{}, mix_seed(seed, 1000000 + static_cast<std::uint64_t>(i)));
        for (int rep = 0; rep < 20; ++rep) {
            PartialAssignment p(static_cast<size_t>(n), kUnassigned);
            for (int r = 0; r < n; ++r) {
                if (rng.uniform() < 0.5) {
                    p[static_cast<size_t>(r)] = static_cast<int>(rng.uniform_below(kNumPrimitives));
                }
            }
            PartialAssignment q = p;
            for (int r = 0; r < n; ++r) {
                if (q[static_cast<size_t>(r)] == kUnassigned && rng.uniform() < 0.5) {
                    q[static_cast<size_t>(r)] = static_cast<int>(rng.uniform_below(kNumPrimitives));
                }
            }
            const int vp = partial_value(s, p);
            const int vq = partial_value(s, q);
            ++checks;
            if (vq < vp) {
                res.pass = false;
                res.detail = "monotonicity violated on random chain";
                return res;
            }
            std::vector<int> open;
            for (int r = 0; r < n; ++r) {
                if (q[static_cast<size_t>(r)] == kUnassigned) open.push_back(r);
            }
            if (open.empty()) continue;
            const int r1 = open[rng.uniform_below(open.size())];
            const int m1 = static_cast<int>(rng.uniform_below(kNumPrimitives));
            PartialAssignment pa = p, qa = q;
            pa[static_cast<size_t>(r1)] = m1;
            qa[static_cast<size_t>(r1)] = m1;
            ++checks;
            if (partial_value(s, pa) - vp < partial_value(s, qa) - vq) {
                res.pass = false;
                res.detail = "submodularity violated on random chain";
                return res;
            }
        }
    }

    std::ostringstream os;
    os << checks << " comparisons, zero violations";
    res.detail = os.str();
    return res;
}

CheckResult check_gradients(int pairs, std::uint64_t seed) {
    CheckResult res{"gradient check vs central differences", true, ""};
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const int n = 3 + i % 6;
        const Scenario s =
            generate_scenario(n, ScenarioParams{}, mix_seed(seed, static_cast<std::uint64_t>(i)));
        const Matrix<double> x = encode_all<double>(s);
        const Matrix<double> gso = gso_matrix<double>(build_comm_graph(s));
        const Model<double> model =
            init_model<double>(ModelConfig{}, mix_seed(seed, 5000 + static_cast<std::uint64_t>(i)));
        const Assignment labels = greedy_central(s).assignment;
        const double err = grad_check(model, gso, x, labels, 1e-5, 25);
        worst = std::max(worst, err);
        if (err >= 1e-4) {
            res.pass = false;
            std::ostringstream os;
            os << "pair " << i << " max relative error " << err;
            res.detail = os.str();
            return res;
        }
    }
    std::ostringstream os;
    os << pairs << " model/instance pairs, worst relative error " << worst;
    res.detail = os.str();
    return res;
}

CheckResult check_gnn_structure(int instances, std::uint64_t seed) {
    CheckResult res{"permutation equivariance and hop locality", true, ""};
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
        const int n = 5 + i % 20;
        const Scenario s =
            generate_scenario(n, ScenarioParams{}, mix_seed(seed, static_cast<std::uint64_t>(i)));
        const Matrix<double> x = encode_all<double>(s);
        const Matrix<double> gso = gso_matrix<double>(build_comm_graph(s));
        const Model<double> model =
            init_model<double>(ModelConfig{}, mix_seed(seed, 7000 + static_cast<std::uint64_t>(i)));
        const Matrix<double> logits = gnn_forward(gso, x, model);

        // random relabeling: perm[r] is the new id of robot r
        std::vector<int> perm(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r) perm[static_cast<size_t>(r)] = r;
        Rng rng(mix_seed(seed, 9000 + static_cast<std::uint64_t>(i)));
        for (int r = n; r > 1; --r) {
            std::swap(perm[static_cast<size_t>(r - 1)],
                      perm[rng.uniform_below(static_cast<std::uint64_t>(r))]);
        }
        Matrix<double> px(n, x.cols());
        Matrix<double> ps(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < x.cols(); ++c) px(perm[static_cast<size_t>(r)], c) = x(r, c);
            for (int c = 0; c < n; ++c) {
                ps(perm[static_cast<size_t>(r)], perm[static_cast<size_t>(c)]) = gso(r, c);
            }
        }
        const Matrix<double> plogits = gnn_forward(ps, px, model);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < logits.cols(); ++c) {
                const double diff =
                    std::abs(plogits(perm[static_cast<size_t>(r)], c) - logits(r, c));
                worst = std::max(worst, diff);
            }
        }
        if (worst > 1e-9) {
            res.pass = false;
            std::ostringstream os;
            os << "equivariance gap " << worst << " at instance " << i;
            res.detail = os.str();
            return res;
        }

        // receptive field: robots beyond hops * L hops cannot matter
        const int reach = model.config.hops * static_cast<int>(model.config.gnn_dims.size());
        std::vector<int> dist(static_cast<size_t>(n), -1);
        std::deque<int> queue{0};
        dist[0] = 0;
        const CommGraph g = build_comm_graph(s);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : g.neighbors[u]) {
                if (dist[static_cast<size_t>(v)] < 0) {
                    dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
        Matrix<double> masked = x;
        for (int r = 0; r < n; ++r) {
            if (dist[static_cast<size_t>(r)] < 0 || dist[static_cast<size_t>(r)] > reach) {
                for (int c = 0; c < x.cols(); ++c) masked(r, c) = 0.0;
            }
        }
        const Matrix<double> masked_logits = gnn_forward(gso, masked, model);
        for (int c = 0; c < logits.cols(); ++c) {
            if (masked_logits(0, c) != logits(0, c)) {
                res.pass = false;
                res.detail = "locality violated: out-of-range robot changed the output";
                return res;
            }
        }
    }
    std::ostringstream os;
    os << instances << " instances, max equivariance gap " << worst;
    res.detail = os.str();
    return res;
}

CheckResult check_decentralized_parity(int instances, std::uint64_t seed) {
    CheckResult res{"decentralized protocol parity", true, ""};
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
        Rng pick(mix_seed(seed, static_cast<std::uint64_t>(i)));
        const int n = 2 + static_cast<int>(pick.uniform_below(49));
        const Scenario s =
            generate_scenario(n, ScenarioParams{}, mix_seed(seed, 100 + static_cast<std::uint64_t>(i)));
        const CommGraph g = build_comm_graph(s);
        const Model<double> model =
            init_model<double>(ModelConfig{}, mix_seed(seed, 3000 + static_cast<std::uint64_t>(i)));

        const Matrix<double> x = encode_all<double>(s);
        const Matrix<double> gso = gso_matrix<double>(g);
        const Matrix<double> central = gnn_forward(gso, x, model);
        const Assignment central_u = logits_to_assignment(central);

        const auto dec = run_decentralized_inference(s, g, model);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < central.cols(); ++c) {
                worst = std::max(worst, std::abs(dec.logits(r, c) - central(r, c)));
            }
        }
        if (worst > 1e-6) {
            res.pass = false;
            std::ostringstream os;
            os << "logit gap " << worst << " at instance " << i;
            res.detail = os.str();
            return res;
        }
        if (dec.assignment != central_u) {
            res.pass = false;
            res.detail = "assignment mismatch";
            return res;
        }

        std::int64_t degree_sum = 0;
        for (const auto& nb : g.neighbors) degree_sum += static_cast<std::int64_t>(nb.size());
        const auto layers = static_cast<std::int64_t>(model.config.gnn_dims.size());
        const std::int64_t expect_rounds = layers * model.config.hops;
        if (dec.stats.rounds != expect_rounds ||
            dec.stats.messages != expect_rounds * degree_sum) {
            res.pass = false;
            res.detail = "message accounting mismatch";
            return res;
        }
        std::int64_t expect_payload = 0;
        int width = model.config.encoder_dims.empty()
                        ? model.config.input_dim
                        : model.config.encoder_dims.back();
        for (int l = 0; l < layers; ++l) {
            expect_payload += static_cast<std::int64_t>(model.config.hops) * degree_sum * width;
            width = model.config.gnn_dims[static_cast<size_t>(l)];
        }
        if (dec.stats.payload_values != expect_payload) {
            res.pass = false;
            res.detail = "payload accounting mismatch";
            return res;
        }
    }
    std::ostringstream os;
    os << instances << " instances, max |logit gap| " << worst;
    res.detail = os.str();
    return res;
}

} // namespace covnet
