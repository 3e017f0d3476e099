#ifndef COVNET_RUNTIME_HPP
#define COVNET_RUNTIME_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "covnet/features.hpp"
#include "covnet/neural.hpp"
#include "covnet/world.hpp"

namespace covnet {

// Communication accounting for one inference. messages counts directed
// payload deliveries: every robot hears from each neighbor once per
// round, so messages = rounds * sum_i |N_i| and rounds = L * K.
struct MessageStats {
    std::int64_t rounds = 0;
    std::int64_t messages = 0;
    std::int64_t payload_values = 0;
};

// One robot in the bulk-synchronous protocol. A node only ever holds its
// own feature buffers plus payloads delivered from direct neighbors.
template <typename T>
struct RobotNode {
    struct Payload {
        int sender = -1;
        std::vector<T> values;
    };

    int id = -1;
    std::vector<int> neighbors; // ascending
    std::vector<T> features;    // current layer input
    std::vector<Payload> inbox;
    double compute_us = 0.0;

    void deliver(Payload p) {
        if (!std::binary_search(neighbors.begin(), neighbors.end(), p.sender)) {
            throw std::runtime_error("protocol violation: payload from non-neighbor");
        }
        inbox.push_back(std::move(p));
    }

    // Sum of inbox payloads = this robot's row of S * X for the round.
    std::vector<T> drain_inbox(size_t width) {
        std::vector<T> sum(width, T{0});
        for (const auto& p : inbox) {
            if (p.values.size() != width) {
                throw std::runtime_error("protocol violation: payload width mismatch");
            }
            for (size_t f = 0; f < width; ++f) sum[f] += p.values[f];
        }
        inbox.clear();
        return sum;
    }
};

template <typename T>
struct DecentralizedResult {
    Assignment assignment;
    MessageStats stats;
    Matrix<T> logits;            // row i = node i's locally computed logits
    std::vector<double> node_us; // per-robot compute time
    double max_node_us = 0.0;
};

namespace detail {

template <typename T>
std::vector<T> row_dense(const std::vector<T>& in, const Dense<T>& d, bool bias) {
    std::vector<T> out(static_cast<size_t>(d.weight.cols()), T{0});
    for (int f = 0; f < d.weight.rows(); ++f) {
        const T v = in[static_cast<size_t>(f)];
        if (v == T{0}) continue;
        const T* w = d.weight.row(f);
        for (int j = 0; j < d.weight.cols(); ++j) out[static_cast<size_t>(j)] += v * w[j];
    }
    if (bias) {
        for (int j = 0; j < d.weight.cols(); ++j) out[static_cast<size_t>(j)] += d.bias[static_cast<size_t>(j)];
    }
    return out;
}

template <typename T>
void row_tap_add(std::vector<T>& acc, const std::vector<T>& in, const Matrix<T>& tap) {
    for (int f = 0; f < tap.rows(); ++f) {
        const T v = in[static_cast<size_t>(f)];
        if (v == T{0}) continue;
        const T* w = tap.row(f);
        for (int j = 0; j < tap.cols(); ++j) acc[static_cast<size_t>(j)] += v * w[j];
    }
}

template <typename T>
void row_relu(std::vector<T>& v, Activation act) {
    if (act == Activation::Identity) return;
    for (auto& x : v) {
        if (x < T{0}) x = T{0};
    }
}

} // namespace detail

// GNN inference as an explicit per-robot protocol: every robot encodes
// only its own observation, each graph layer runs K synchronous exchange
// rounds with 1-hop neighbors, and every robot applies the shared head to
// its own fused feature. No global state is read anywhere; per-robot
// compute time covers the local network math (feature handcrafting and
// message transport excluded).
//
// If `trace` is given, one line per delivered message is written:
// round sender receiver payload_length.
template <typename T>
DecentralizedResult<T> run_decentralized_inference(const Scenario& s,
                                                   const CommGraph& g,
                                                   const Model<T>& model,
                                                   std::ostream* trace = nullptr) {
    if (model.config.input_dim != kFeatureWidth) {
        throw std::invalid_argument("run_decentralized_inference: model input width mismatch");
    }
    using Clock = std::chrono::steady_clock;
    const int n = s.n_robots();
    const bool bias = model.config.use_bias;
    const Activation act = model.config.activation;

    std::vector<RobotNode<T>> nodes(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        nodes[static_cast<size_t>(i)].id = i;
        nodes[static_cast<size_t>(i)].neighbors = g.neighbors[i];
    }

    // Handcrafted observation vectors (untimed; shared with the
    // centralized path by construction).
    std::vector<std::vector<T>> inputs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const FeatureVector f = encode(observe(s, i));
        inputs[static_cast<size_t>(i)].assign(f.begin(), f.end());
        for (auto& v : inputs[static_cast<size_t>(i)]) v = static_cast<T>(v);
    }
    for (int i = 0; i < n; ++i) {
        auto& node = nodes[static_cast<size_t>(i)];
        const auto start = Clock::now();
        std::vector<T> cur(inputs[static_cast<size_t>(i)].begin(), inputs[static_cast<size_t>(i)].end());
        for (const auto& layer : model.encoder) {
            cur = detail::row_dense(cur, layer, bias);
            detail::row_relu(cur, act);
        }
        node.features = std::move(cur);
        node.compute_us +=
            std::chrono::duration<double, std::micro>(Clock::now() - start).count();
    }

    DecentralizedResult<T> res;
    const int hops = model.config.hops;

    for (const auto& layer : model.gnn) {
        const size_t width = static_cast<size_t>(layer.taps[0].rows());
        // tap 0: own features, no communication
        std::vector<std::vector<T>> acc(static_cast<size_t>(n));
        std::vector<std::vector<T>> shifted(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            auto& node = nodes[static_cast<size_t>(i)];
            const auto start = Clock::now();
            acc[static_cast<size_t>(i)].assign(static_cast<size_t>(layer.taps[0].cols()), T{0});
            detail::row_tap_add(acc[static_cast<size_t>(i)], node.features, layer.taps[0]);
            shifted[static_cast<size_t>(i)] = node.features;
            node.compute_us +=
                std::chrono::duration<double, std::micro>(Clock::now() - start).count();
        }

        for (int k = 1; k <= hops; ++k) {
            ++res.stats.rounds;
            // synchronous exchange: everyone posts its current shifted
            // feature to every neighbor
            for (int i = 0; i < n; ++i) {
                for (int j : nodes[static_cast<size_t>(i)].neighbors) {
                    nodes[static_cast<size_t>(j)].deliver(
                        {i, shifted[static_cast<size_t>(i)]});
                    ++res.stats.messages;
                    res.stats.payload_values += static_cast<std::int64_t>(width);
                    if (trace) {
                        *trace << res.stats.rounds << " " << i << " " << j << " "
                               << width << "\n";
                    }
                }
            }
            for (int i = 0; i < n; ++i) {
                auto& node = nodes[static_cast<size_t>(i)];
                const auto start = Clock::now();
                shifted[static_cast<size_t>(i)] = node.drain_inbox(width);
                detail::row_tap_add(acc[static_cast<size_t>(i)],
                                    shifted[static_cast<size_t>(i)], layer.taps[k]);
                node.compute_us +=
                    std::chrono::duration<double, std::micro>(Clock::now() - start).count();
            }
        }

        for (int i = 0; i < n; ++i) {
            auto& node = nodes[static_cast<size_t>(i)];
            const auto start = Clock::now();
            auto& out = acc[static_cast<size_t>(i)];
            if (bias) {
                for (size_t j = 0; j < out.size(); ++j) out[j] += layer.bias[j];
            }
            detail::row_relu(out, act);
            node.features = std::move(out);
            node.compute_us +=
                std::chrono::duration<double, std::micro>(Clock::now() - start).count();
        }
    }

    res.logits = Matrix<T>(n, model.config.num_actions);
    res.assignment.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& node = nodes[static_cast<size_t>(i)];
        const auto start = Clock::now();
        const std::vector<T> logits = detail::row_dense(node.features, model.head, bias);
        int best = 0;
        for (size_t j = 1; j < logits.size(); ++j) {
            if (logits[j] > logits[static_cast<size_t>(best)]) best = static_cast<int>(j);
        }
        node.compute_us +=
            std::chrono::duration<double, std::micro>(Clock::now() - start).count();
        res.assignment[static_cast<size_t>(i)] = best;
        for (size_t j = 0; j < logits.size(); ++j) res.logits(i, static_cast<int>(j)) = logits[j];
    }

    res.node_us.reserve(static_cast<size_t>(n));
    for (const auto& node : nodes) {
        res.node_us.push_back(node.compute_us);
        res.max_node_us = std::max(res.max_node_us, node.compute_us);
    }
    return res;
}

} // namespace covnet

#endif // COVNET_RUNTIME_HPP
