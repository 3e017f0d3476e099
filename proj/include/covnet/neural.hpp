#ifndef COVNET_NEURAL_HPP
#define COVNET_NEURAL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "covnet/matrix.hpp"
#include "covnet/rng.hpp"
#include "covnet/world.hpp"

namespace covnet {

enum class Activation { ReLU, Identity };

inline const char* activation_name(Activation a) {
    return a == Activation::ReLU ? "relu" : "identity";
}

// Architecture description. The defaults are the reference network:
// 60 -> [32,16,8] encoder, two graph layers 8->32->128 with K=1 taps,
// 128 -> 5 action head, shared by every robot.
struct ModelConfig {
    int input_dim = 60;
    std::vector<int> encoder_dims = {32, 16, 8};
    std::vector<int> gnn_dims = {32, 128};
    int hops = 1; // K: taps per graph layer = hops + 1
    int num_actions = 5;
    Activation activation = Activation::ReLU;
    bool use_bias = true;

    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

template <typename T>
struct Dense {
    Matrix<T> weight;    // in x out
    std::vector<T> bias; // out
};

template <typename T>
struct GnnLayer {
    std::vector<Matrix<T>> taps; // hops+1 matrices, in x out
    std::vector<T> bias;         // out
};

// Named view into one parameter tensor, used by the optimizer, the
// checkpoint writer and the finite-difference harness.
template <typename T>
struct TensorRef {
    std::string name;
    T* data;
    size_t size;
};

template <typename T>
struct Model {
    ModelConfig config;
    std::vector<Dense<T>> encoder;
    std::vector<GnnLayer<T>> gnn;
    Dense<T> head;
    std::uint64_t init_seed = 0;

    std::vector<TensorRef<T>> tensors() {
        std::vector<TensorRef<T>> out;
        auto add = [&](const std::string& name, std::vector<T>& v) {
            out.push_back({name, v.data(), v.size()});
        };
        auto add_mat = [&](const std::string& name, Matrix<T>& m) {
            out.push_back({name, m.data(), m.size()});
        };
        for (size_t l = 0; l < encoder.size(); ++l) {
            add_mat("encoder." + std::to_string(l) + ".weight", encoder[l].weight);
            if (config.use_bias) add("encoder." + std::to_string(l) + ".bias", encoder[l].bias);
        }
        for (size_t l = 0; l < gnn.size(); ++l) {
            for (size_t k = 0; k < gnn[l].taps.size(); ++k) {
                add_mat("gnn." + std::to_string(l) + ".tap" + std::to_string(k), gnn[l].taps[k]);
            }
            if (config.use_bias) add("gnn." + std::to_string(l) + ".bias", gnn[l].bias);
        }
        add_mat("head.weight", head.weight);
        if (config.use_bias) add("head.bias", head.bias);
        return out;
    }

    std::vector<TensorRef<const T>> tensors() const {
        auto refs = const_cast<Model*>(this)->tensors();
        std::vector<TensorRef<const T>> out;
        out.reserve(refs.size());
        for (auto& r : refs) out.push_back({r.name, r.data, r.size});
        return out;
    }

    // Name-free tensor views in the same canonical order, for hot loops.
    std::vector<std::pair<T*, size_t>> tensor_data() {
        std::vector<std::pair<T*, size_t>> out;
        for (size_t l = 0; l < encoder.size(); ++l) {
            out.emplace_back(encoder[l].weight.data(), encoder[l].weight.size());
            if (config.use_bias) out.emplace_back(encoder[l].bias.data(), encoder[l].bias.size());
        }
        for (size_t l = 0; l < gnn.size(); ++l) {
            for (auto& tap : gnn[l].taps) out.emplace_back(tap.data(), tap.size());
            if (config.use_bias) out.emplace_back(gnn[l].bias.data(), gnn[l].bias.size());
        }
        out.emplace_back(head.weight.data(), head.weight.size());
        if (config.use_bias) out.emplace_back(head.bias.data(), head.bias.size());
        return out;
    }

    std::vector<std::pair<const T*, size_t>> tensor_data() const {
        auto refs = const_cast<Model*>(this)->tensor_data();
        return {refs.begin(), refs.end()};
    }

    size_t param_count() const {
        size_t n = 0;
        for (const auto& r : tensors()) n += r.size;
        return n;
    }
};

namespace detail {

template <typename T>
Dense<T> make_dense(int in, int out) {
    Dense<T> d;
    d.weight = Matrix<T>(in, out);
    d.bias.assign(static_cast<size_t>(out), T{0});
    return d;
}

template <typename T>
GnnLayer<T> make_gnn_layer(int in, int out, int hops) {
    GnnLayer<T> l;
    for (int k = 0; k <= hops; ++k) l.taps.push_back(Matrix<T>(in, out));
    l.bias.assign(static_cast<size_t>(out), T{0});
    return l;
}

} // namespace detail

// All-zero model with the given shapes (also the gradient/moment container).
template <typename T>
Model<T> make_model(const ModelConfig& cfg) {
    Model<T> m;
    m.config = cfg;
    int width = cfg.input_dim;
    for (int d : cfg.encoder_dims) {
        m.encoder.push_back(detail::make_dense<T>(width, d));
        width = d;
    }
    for (int d : cfg.gnn_dims) {
        m.gnn.push_back(detail::make_gnn_layer<T>(width, d, cfg.hops));
        width = d;
    }
    m.head = detail::make_dense<T>(width, cfg.num_actions);
    return m;
}

// Seeded uniform init in +-sqrt(1/fan_in) per tensor, filled in the
// canonical tensors() order.
template <typename T>
Model<T> init_model(const ModelConfig& cfg, std::uint64_t seed) {
    Model<T> m = make_model<T>(cfg);
    m.init_seed = seed;
    Rng rng(seed);

    auto fill = [&](T* data, size_t n, int fan_in) {
        const double bound = std::sqrt(1.0 / fan_in);
        for (size_t i = 0; i < n; ++i) {
            data[i] = static_cast<T>((2.0 * rng.uniform() - 1.0) * bound);
        }
    };
    for (auto& layer : m.encoder) {
        fill(layer.weight.data(), layer.weight.size(), layer.weight.rows());
        if (cfg.use_bias) fill(layer.bias.data(), layer.bias.size(), layer.weight.rows());
    }
    for (auto& layer : m.gnn) {
        const int fan_in = layer.taps[0].rows();
        for (auto& tap : layer.taps) fill(tap.data(), tap.size(), fan_in);
        if (cfg.use_bias) fill(layer.bias.data(), layer.bias.size(), fan_in);
    }
    fill(m.head.weight.data(), m.head.weight.size(), m.head.weight.rows());
    if (cfg.use_bias) fill(m.head.bias.data(), m.head.bias.size(), m.head.weight.rows());
    return m;
}

// Adjacency of a CommGraph as a dense shift operator.
template <typename T>
Matrix<T> gso_matrix(const CommGraph& g) {
    Matrix<T> s(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) s(i, j) = static_cast<T>(g.at(i, j));
    }
    return s;
}

// One neighbor-aggregation round: row i of S*X sums the features of i's
// neighbors.
template <typename T>
Matrix<T> graph_shift(const Matrix<T>& s, const Matrix<T>& x) {
    if (s.rows() != s.cols() || s.cols() != x.rows()) {
        throw std::invalid_argument("graph_shift: shape mismatch");
    }
    return matmul(s, x);
}

// Polynomial graph filter: sum_k S^k X H_k (+ bias), the powers computed
// as repeated shifts. Returns the pre-activation.
template <typename T>
Matrix<T> graph_conv(const Matrix<T>& s, const Matrix<T>& x,
                     const GnnLayer<T>& layer, bool use_bias = true) {
    if (x.cols() != layer.taps[0].rows()) {
        throw std::invalid_argument("graph_conv: feature width mismatch");
    }
    if (s.rows() != s.cols() || s.cols() != x.rows()) {
        throw std::invalid_argument("graph_conv: shift operator shape mismatch");
    }
    Matrix<T> out = matmul(x, layer.taps[0]);
    Matrix<T> shifted = x;
    for (size_t k = 1; k < layer.taps.size(); ++k) {
        shifted = matmul(s, shifted);
        matmul_add(out, shifted, layer.taps[k]);
    }
    if (use_bias) {
        for (int i = 0; i < out.rows(); ++i) {
            T* row = out.row(i);
            for (int j = 0; j < out.cols(); ++j) row[j] += layer.bias[j];
        }
    }
    return out;
}

// Everything backward() needs from one forward pass.
template <typename T>
struct ForwardCache {
    Matrix<T> input;
    std::vector<Matrix<T>> enc_pre;
    std::vector<Matrix<T>> enc_act;
    struct LayerCache {
        std::vector<Matrix<T>> shifted; // S^k * layer input, k = 0..hops
        Matrix<T> pre;
        Matrix<T> act;
    };
    std::vector<LayerCache> gnn;
    Matrix<T> logits;
};

namespace detail {

template <typename T>
void apply_activation(Matrix<T>& m, Activation act) {
    if (act == Activation::Identity) return;
    T* d = m.data();
    for (size_t i = 0; i < m.size(); ++i) {
        if (d[i] < T{0}) d[i] = T{0};
    }
}

template <typename T>
void check_finite(const Matrix<T>& m, const char* stage) {
    const T* d = m.data();
    for (size_t i = 0; i < m.size(); ++i) {
        if (!std::isfinite(static_cast<double>(d[i]))) {
            throw std::runtime_error(std::string("gnn_forward: non-finite value at ") + stage);
        }
    }
}

template <typename T>
void add_bias_rows(Matrix<T>& m, const std::vector<T>& bias) {
    for (int i = 0; i < m.rows(); ++i) {
        T* row = m.row(i);
        for (int j = 0; j < m.cols(); ++j) row[j] += bias[j];
    }
}

} // namespace detail

// Full network pass: encoder rows, graph-filter cascade, shared action
// head. Returns one row of num_actions logits per robot.
template <typename T>
Matrix<T> gnn_forward(const Matrix<T>& s, const Matrix<T>& x0,
                      const Model<T>& model, ForwardCache<T>* cache = nullptr) {
    if (x0.cols() != model.config.input_dim) {
        throw std::invalid_argument("gnn_forward: input width mismatch");
    }
    if (s.rows() != s.cols() || s.rows() != x0.rows()) {
        throw std::invalid_argument("gnn_forward: shift operator shape mismatch");
    }
    const bool bias = model.config.use_bias;
    const Activation act = model.config.activation;

    if (cache) {
        cache->enc_pre.clear();
        cache->enc_act.clear();
        cache->gnn.clear();
        cache->input = x0;
    }

    Matrix<T> cur = x0;
    for (const auto& layer : model.encoder) {
        Matrix<T> pre = matmul(cur, layer.weight);
        if (bias) detail::add_bias_rows(pre, layer.bias);
        if (cache) cache->enc_pre.push_back(pre);
        detail::apply_activation(pre, act);
        detail::check_finite(pre, "encoder");
        if (cache) cache->enc_act.push_back(pre);
        cur = std::move(pre);
    }

    for (const auto& layer : model.gnn) {
        typename ForwardCache<T>::LayerCache lc;
        Matrix<T> out = matmul(cur, layer.taps[0]);
        Matrix<T> shifted = cur;
        if (cache) lc.shifted.push_back(cur);
        for (size_t k = 1; k < layer.taps.size(); ++k) {
            shifted = matmul(s, shifted);
            if (cache) lc.shifted.push_back(shifted);
            matmul_add(out, shifted, layer.taps[k]);
        }
        if (bias) detail::add_bias_rows(out, layer.bias);
        if (cache) lc.pre = out;
        detail::apply_activation(out, act);
        detail::check_finite(out, "graph layer");
        if (cache) {
            lc.act = out;
            cache->gnn.push_back(std::move(lc));
        }
        cur = std::move(out);
    }

    Matrix<T> logits = matmul(cur, model.head.weight);
    if (bias) detail::add_bias_rows(logits, model.head.bias);
    detail::check_finite(logits, "head");
    if (cache) cache->logits = logits;
    return logits;
}

// Mean over rows of -log softmax(logits)[label].
template <typename T>
double cross_entropy_loss(const Matrix<T>& logits, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != logits.rows()) {
        throw std::invalid_argument("cross_entropy_loss: label count mismatch");
    }
    double total = 0.0;
    for (int i = 0; i < logits.rows(); ++i) {
        const T* row = logits.row(i);
        double mx = static_cast<double>(row[0]);
        for (int j = 1; j < logits.cols(); ++j) mx = std::max(mx, static_cast<double>(row[j]));
        double sum = 0.0;
        for (int j = 0; j < logits.cols(); ++j) sum += std::exp(static_cast<double>(row[j]) - mx);
        total += mx + std::log(sum) - static_cast<double>(row[labels[i]]);
    }
    return total / logits.rows();
}

// dLoss/dLogits for the row-mean cross entropy: (softmax - onehot) / rows.
template <typename T>
Matrix<T> cross_entropy_grad(const Matrix<T>& logits, const std::vector<int>& labels) {
    Matrix<T> d(logits.rows(), logits.cols());
    const T inv_rows = T{1} / static_cast<T>(logits.rows());
    for (int i = 0; i < logits.rows(); ++i) {
        const T* row = logits.row(i);
        T mx = row[0];
        for (int j = 1; j < logits.cols(); ++j) mx = std::max(mx, row[j]);
        T sum{0};
        T* out = d.row(i);
        for (int j = 0; j < logits.cols(); ++j) {
            out[j] = std::exp(row[j] - mx);
            sum += out[j];
        }
        for (int j = 0; j < logits.cols(); ++j) out[j] = out[j] / sum * inv_rows;
        out[labels[i]] -= inv_rows;
    }
    return d;
}

namespace detail {

template <typename T>
void activation_backward(Matrix<T>& grad, const Matrix<T>& pre, Activation act) {
    if (act == Activation::Identity) return;
    T* g = grad.data();
    const T* p = pre.data();
    for (size_t i = 0; i < grad.size(); ++i) {
        if (p[i] <= T{0}) g[i] = T{0};
    }
}

template <typename T>
void add_colsum(std::vector<T>& bias_grad, const Matrix<T>& m) {
    for (int i = 0; i < m.rows(); ++i) {
        const T* row = m.row(i);
        for (int j = 0; j < m.cols(); ++j) bias_grad[j] += row[j];
    }
}

} // namespace detail

// Reverse pass through head, graph cascade and encoder; parameter
// gradients are accumulated (+=) into `grads`, which must share shapes
// with `model`.
template <typename T>
void backward(const Matrix<T>& s, const ForwardCache<T>& cache,
              const Model<T>& model, const Matrix<T>& dlogits,
              Model<T>& grads) {
    const bool bias = model.config.use_bias;
    const Activation act = model.config.activation;
    const int hops = model.config.hops;

    const Matrix<T>& head_in =
        model.gnn.empty()
            ? (model.encoder.empty() ? cache.input : cache.enc_act.back())
            : cache.gnn.back().act;

    matmul_transA_add(grads.head.weight, head_in, dlogits);
    if (bias) detail::add_colsum(grads.head.bias, dlogits);
    Matrix<T> dcur(dlogits.rows(), model.head.weight.rows());
    matmul_transB_add(dcur, dlogits, model.head.weight);

    for (int l = static_cast<int>(model.gnn.size()) - 1; l >= 0; --l) {
        const auto& layer = model.gnn[l];
        const auto& lc = cache.gnn[l];
        detail::activation_backward(dcur, lc.pre, act);
        if (bias) detail::add_colsum(grads.gnn[l].bias, dcur);

        // dX = sum_k (S^T)^k (dPre * H_k^T), Horner form from the top tap
        Matrix<T> dx(dcur.rows(), layer.taps[0].rows());
        for (int k = hops; k >= 0; --k) {
            matmul_transA_add(grads.gnn[l].taps[k], lc.shifted[k], dcur);
            if (k == hops) {
                matmul_transB_add(dx, dcur, layer.taps[k]);
            } else {
                Matrix<T> lifted(dx.rows(), dx.cols());
                matmul_transA_add(lifted, s, dx);
                matmul_transB_add(lifted, dcur, layer.taps[k]);
                dx = std::move(lifted);
            }
        }
        dcur = std::move(dx);
    }

    for (int l = static_cast<int>(model.encoder.size()) - 1; l >= 0; --l) {
        const auto& layer = model.encoder[l];
        detail::activation_backward(dcur, cache.enc_pre[l], act);
        if (bias) detail::add_colsum(grads.encoder[l].bias, dcur);
        const Matrix<T>& in = (l == 0) ? cache.input : cache.enc_act[l - 1];
        matmul_transA_add(grads.encoder[l].weight, in, dcur);
        if (l > 0) {
            Matrix<T> dprev(dcur.rows(), layer.weight.rows());
            matmul_transB_add(dprev, dcur, layer.weight);
            dcur = std::move(dprev);
        }
    }
}

// Cosine annealing from lr_max (t = 0) to lr_min (t = T).
inline double cosine_lr(std::int64_t t, std::int64_t total, double lr_max, double lr_min) {
    if (total <= 0) return lr_max;
    const double phase = M_PI * static_cast<double>(t) / static_cast<double>(total);
    return lr_min + 0.5 * (lr_max - lr_min) * (1.0 + std::cos(phase));
}

// Adaptive-moment optimizer state; moment containers mirror the model.
template <typename T>
struct TrainState {
    std::int64_t step = 0;
    Model<T> m1;
    Model<T> m2;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    explicit TrainState(const ModelConfig& cfg)
        : m1(make_model<T>(cfg)), m2(make_model<T>(cfg)) {}
};

template <typename T>
void optimizer_step(Model<T>& model, const Model<T>& grads, TrainState<T>& state,
                    double lr) {
    state.step += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));

    auto p = model.tensor_data();
    auto g = grads.tensor_data();
    auto m1 = state.m1.tensor_data();
    auto m2 = state.m2.tensor_data();
    for (size_t t = 0; t < p.size(); ++t) {
        T* pv = p[t].first;
        const T* gv = g[t].first;
        T* m = m1[t].first;
        T* v = m2[t].first;
        for (size_t i = 0; i < p[t].second; ++i) {
            const double gi = static_cast<double>(gv[i]);
            const double mi = state.beta1 * static_cast<double>(m[i]) + (1.0 - state.beta1) * gi;
            const double vi = state.beta2 * static_cast<double>(v[i]) + (1.0 - state.beta2) * gi * gi;
            m[i] = static_cast<T>(mi);
            v[i] = static_cast<T>(vi);
            const double update = lr * (mi / bc1) / (std::sqrt(vi / bc2) + state.eps);
            pv[i] = static_cast<T>(static_cast<double>(pv[i]) - update);
        }
    }
}

// Central-difference loss derivative for one parameter element.
template <typename T>
double finite_diff_grad(Model<T> model, const Matrix<T>& s, const Matrix<T>& x0,
                        const std::vector<int>& labels, size_t tensor_idx,
                        size_t elem_idx, double h) {
    auto refs = model.tensors();
    T* elem = refs[tensor_idx].data + elem_idx;
    const T saved = *elem;
    *elem = static_cast<T>(static_cast<double>(saved) + h);
    const double up = cross_entropy_loss(gnn_forward(s, x0, model), labels);
    *elem = static_cast<T>(static_cast<double>(saved) - h);
    const double down = cross_entropy_loss(gnn_forward(s, x0, model), labels);
    *elem = saved;
    return (up - down) / (2.0 * h);
}

// Max relative disagreement between analytic and central-difference
// gradients over a strided sample of every tensor (`max_per_tensor`
// elements each; 0 = all).
template <typename T>
double grad_check(const Model<T>& model, const Matrix<T>& s, const Matrix<T>& x0,
                  const std::vector<int>& labels, double h = 1e-5,
                  size_t max_per_tensor = 0) {
    ForwardCache<T> cache;
    const Matrix<T> logits = gnn_forward(s, x0, model, &cache);
    Model<T> grads = make_model<T>(model.config);
    backward(s, cache, model, cross_entropy_grad(logits, labels), grads);

    auto grefs = grads.tensors();
    double worst = 0.0;
    for (size_t t = 0; t < grefs.size(); ++t) {
        const size_t n = grefs[t].size;
        const size_t step =
            (max_per_tensor == 0 || n <= max_per_tensor) ? 1 : n / max_per_tensor;
        for (size_t i = 0; i < n; i += step) {
            const double analytic = static_cast<double>(grefs[t].data[i]);
            const double numeric = finite_diff_grad(model, s, x0, labels, t, i, h);
            const double rel = std::abs(analytic - numeric) /
                               std::max(1e-12, std::abs(analytic) + std::abs(numeric));
            worst = std::max(worst, rel);
        }
    }
    return worst;
}

// Row argmax with lowest-index tie-break: the action each robot executes.
template <typename T>
Assignment logits_to_assignment(const Matrix<T>& logits) {
    Assignment u(logits.rows());
    for (int i = 0; i < logits.rows(); ++i) {
        const T* row = logits.row(i);
        int best = 0;
        for (int j = 1; j < logits.cols(); ++j) {
            if (row[j] > row[best]) best = j;
        }
        u[i] = best;
    }
    return u;
}

} // namespace covnet

#endif // COVNET_NEURAL_HPP
