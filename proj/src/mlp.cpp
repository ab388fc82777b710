#include "socinf/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "socinf/baselines.hpp"
#include "socinf/error.hpp"

namespace socinf {

namespace {

constexpr const char* kModelMagic = "socinf-mlp";
constexpr int kModelVersion = 1;

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

Activation parse_activation(const std::string& tag) {
    if (tag == "relu") {
        return Activation::Relu;
    }
    if (tag == "sigmoid") {
        return Activation::Sigmoid;
    }
    throw InputError("unknown activation '" + tag + "'");
}

}  // namespace

std::string to_string(Activation a) { return a == Activation::Relu ? "relu" : "sigmoid"; }

std::size_t MlpModel::parameter_count() const {
    std::size_t total = 0;
    for (const auto& l : layers) {
        total += l.weights.size() + l.bias.size();
    }
    return total;
}

std::vector<std::size_t> tower_hidden(std::size_t first, std::size_t depth) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < depth; ++k) {
        out.push_back(first);
        first /= 2;
    }
    return out;
}

std::vector<std::size_t> tower_layer_sizes(std::size_t n_subjects, std::span<const std::size_t> hidden) {
    std::vector<std::size_t> sizes{2 * n_subjects};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(1);
    return sizes;
}

MlpModel init_model(std::span<const std::size_t> layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 3) {
        throw ContractError("network needs an input, at least one hidden layer, and an output");
    }
    if (std::find(layer_sizes.begin(), layer_sizes.end(), 0U) != layer_sizes.end()) {
        throw ContractError("zero-width layer");
    }
    if (layer_sizes.back() != 1) {
        throw ContractError("output layer must have exactly one unit");
    }
    MlpModel model;
    model.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
    model.seed = seed;
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        DenseLayer layer;
        layer.inputs = layer_sizes[l];
        layer.outputs = layer_sizes[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(layer.inputs + layer.outputs));
        layer.weights.resize(layer.inputs * layer.outputs);
        for (auto& w : layer.weights) {
            w = rng.uniform(-bound, bound);
        }
        layer.bias.assign(layer.outputs, 0.0);
        model.layers.push_back(std::move(layer));
    }
    return model;
}

double forward(const MlpModel& model, const FeatureVector& x, ForwardCache& cache, const DropoutSource* dropout) {
    if (x.dim() != model.input_dim()) {
        throw ContractError("input has dimension " + std::to_string(x.dim()) + ", model expects " +
                            std::to_string(model.input_dim()));
    }
    const auto n_hidden = model.layers.size() - 1;
    cache.model = &model;
    cache.revision = model.revision;
    cache.input = &x;
    cache.hidden.resize(n_hidden);
    cache.mask.resize(n_hidden);
    cache.pre_activation.resize(n_hidden);

    const bool drop = dropout != nullptr && dropout->rate > 0.0;
    const double keep_scale = drop ? 1.0 / (1.0 - dropout->rate) : 1.0;

    for (std::size_t l = 0; l < n_hidden; ++l) {
        const auto& layer = model.layers[l];
        auto& z = cache.pre_activation[l];
        z.assign(layer.bias.begin(), layer.bias.end());
        if (l == 0) {
            const auto idx = x.indices();
            const auto val = x.values();
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const double* row = &layer.weights[idx[k] * layer.outputs];
                const double v = val[k];
                for (std::size_t o = 0; o < layer.outputs; ++o) {
                    z[o] += v * row[o];
                }
            }
        } else {
            const auto& in = cache.hidden[l - 1];
            for (std::size_t i = 0; i < layer.inputs; ++i) {
                const double v = in[i];
                if (v == 0.0) {
                    continue;
                }
                const double* row = &layer.weights[i * layer.outputs];
                for (std::size_t o = 0; o < layer.outputs; ++o) {
                    z[o] += v * row[o];
                }
            }
        }
        auto& h = cache.hidden[l];
        auto& mask = cache.mask[l];
        h.resize(layer.outputs);
        mask.resize(layer.outputs);
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            mask[o] = drop ? (dropout->rng->bernoulli(dropout->rate) ? 0.0 : keep_scale) : 1.0;
            h[o] = (z[o] > 0.0 ? z[o] : 0.0) * mask[o];
        }
    }

    const auto& out = model.layers.back();
    const auto& last = cache.hidden.back();
    double logit = out.bias[0];
    for (std::size_t i = 0; i < out.inputs; ++i) {
        logit += last[i] * out.weights[i];
    }
    cache.logit = logit;
    cache.y_hat = sigmoid(logit);
    return cache.y_hat;
}

double forward(const MlpModel& model, const FeatureVector& x) {
    ForwardCache cache;
    return forward(model, x, cache, nullptr);
}

double loss_bce(double y_hat, int y) {
    const double p = std::clamp(y_hat, kBceEpsilon, 1.0 - kBceEpsilon);
    return y == 1 ? -std::log(p) : -std::log(1.0 - p);
}

Gradients Gradients::zeros_like(const MlpModel& model) {
    Gradients g;
    for (const auto& l : model.layers) {
        g.weights.emplace_back(l.weights.size(), 0.0);
        g.bias.emplace_back(l.bias.size(), 0.0);
    }
    return g;
}

void Gradients::set_zero() {
    for (auto& w : weights) {
        std::fill(w.begin(), w.end(), 0.0);
    }
    for (auto& b : bias) {
        std::fill(b.begin(), b.end(), 0.0);
    }
}

void Gradients::scale(double factor) {
    for (auto& w : weights) {
        for (auto& v : w) {
            v *= factor;
        }
    }
    for (auto& b : bias) {
        for (auto& v : b) {
            v *= factor;
        }
    }
}

void backward(const MlpModel& model, const ForwardCache& cache, int y, Gradients& grads) {
    if (cache.model != &model || cache.revision != model.revision || cache.input == nullptr) {
        throw ContractError("forward cache does not belong to the current model parameters");
    }
    const auto n_layers = model.layers.size();

    // Logistic output with cross-entropy: d loss / d logit = y_hat - y.
    std::vector<double> delta{cache.y_hat - static_cast<double>(y)};
    std::vector<double> prev;
    for (std::size_t l = n_layers; l-- > 0;) {
        const auto& layer = model.layers[l];
        auto& gw = grads.weights[l];
        auto& gb = grads.bias[l];
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            gb[o] += delta[o];
        }
        if (l == 0) {
            const auto idx = cache.input->indices();
            const auto val = cache.input->values();
            for (std::size_t k = 0; k < idx.size(); ++k) {
                double* row = &gw[idx[k] * layer.outputs];
                for (std::size_t o = 0; o < layer.outputs; ++o) {
                    row[o] += val[k] * delta[o];
                }
            }
            break;
        }
        const auto& in = cache.hidden[l - 1];
        const auto& z = cache.pre_activation[l - 1];
        const auto& mask = cache.mask[l - 1];
        prev.assign(layer.inputs, 0.0);
        for (std::size_t i = 0; i < layer.inputs; ++i) {
            const double* row = &layer.weights[i * layer.outputs];
            double* grow = &gw[i * layer.outputs];
            const double a = in[i];
            double acc = 0.0;
            for (std::size_t o = 0; o < layer.outputs; ++o) {
                grow[o] += a * delta[o];
                acc += row[o] * delta[o];
            }
            prev[i] = z[i] > 0.0 ? acc * mask[i] : 0.0;
        }
        delta.swap(prev);
    }
}

void TrainConfig::validate() const {
    if (epochs < 1) {
        throw ContractError("epochs must be >= 1");
    }
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
        throw ContractError("dropout rate must be in [0, 1)");
    }
    if (!(learning_rate > 0.0)) {
        throw ContractError("learning rate must be positive");
    }
    if (!(rmsprop_decay > 0.0 && rmsprop_decay < 1.0)) {
        throw ContractError("RMSProp decay must be in (0, 1)");
    }
    if (!(rmsprop_epsilon > 0.0)) {
        throw ContractError("RMSProp epsilon must be positive");
    }
    if (batch_size < 1) {
        throw ContractError("batch size must be >= 1");
    }
}

RmsPropState RmsPropState::zeros_like(const MlpModel& model) {
    RmsPropState s;
    for (const auto& l : model.layers) {
        s.weights.emplace_back(l.weights.size(), 0.0);
        s.bias.emplace_back(l.bias.size(), 0.0);
    }
    return s;
}

namespace {

void rmsprop_update(std::span<double> params, std::span<const double> grads, std::span<double> sq,
                    const TrainConfig& cfg) {
    if (params.size() != grads.size() || params.size() != sq.size()) {
        throw ContractError("optimizer state does not match the model");
    }
    const double decay = cfg.rmsprop_decay;
    const double lr = cfg.learning_rate;
    const double eps = cfg.rmsprop_epsilon;
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double g = grads[k];
        sq[k] = decay * sq[k] + (1.0 - decay) * g * g;
        params[k] -= lr * g / (std::sqrt(sq[k]) + eps);
    }
}

// One optimizer step where the first layer's weight gradient is nonzero only
// on `rows`. A zero-gradient RMSProp update leaves the weight alone and just
// multiplies its accumulator by the decay, so untouched rows are decayed
// lazily when next touched; the result is bit-identical to the dense step.
class SparseFirstLayerStep {
public:
    SparseFirstLayerStep(const MlpModel& model) : last_(model.input_dim(), 0), seen_(model.input_dim(), 0) {}

    void touch(const FeatureVector& x) {
        for (const auto r : x.indices()) {
            if (!seen_[r]) {
                seen_[r] = 1;
                rows_.push_back(r);
            }
        }
    }

    void apply(MlpModel& model, Gradients& grads, RmsPropState& state, double grad_scale, const TrainConfig& cfg) {
        ++step_;
        for (std::size_t l = 1; l < model.layers.size(); ++l) {
            scale(grads.weights[l], grad_scale);
            rmsprop_update(model.layers[l].weights, grads.weights[l], state.weights[l], cfg);
        }
        for (std::size_t l = 0; l < model.layers.size(); ++l) {
            scale(grads.bias[l], grad_scale);
            rmsprop_update(model.layers[l].bias, grads.bias[l], state.bias[l], cfg);
        }
        auto& first = model.layers[0];
        const auto width = first.outputs;
        for (const auto r : rows_) {
            const std::span<double> w(&first.weights[r * width], width);
            const std::span<double> g(&grads.weights[0][r * width], width);
            const std::span<double> sq(&state.weights[0][r * width], width);
            for (auto missed = step_ - last_[r] - 1; missed > 0; --missed) {
                for (auto& v : sq) {
                    v = cfg.rmsprop_decay * v + 0.0;
                }
            }
            scale(g, grad_scale);
            rmsprop_update(w, g, sq, cfg);
            std::fill(g.begin(), g.end(), 0.0);
            last_[r] = step_;
            seen_[r] = 0;
        }
        rows_.clear();
        for (std::size_t l = 1; l < model.layers.size(); ++l) {
            std::fill(grads.weights[l].begin(), grads.weights[l].end(), 0.0);
        }
        for (auto& b : grads.bias) {
            std::fill(b.begin(), b.end(), 0.0);
        }
        ++model.revision;
    }

private:
    static void scale(std::span<double> v, double factor) {
        for (auto& x : v) {
            x *= factor;
        }
    }

    std::uint64_t step_ = 0;
    std::vector<std::uint64_t> last_;
    std::vector<char> seen_;
    std::vector<std::uint32_t> rows_;
};

}  // namespace

void rmsprop_step(MlpModel& model, const Gradients& grads, RmsPropState& state, const TrainConfig& cfg) {
    if (grads.weights.size() != model.layers.size() || state.weights.size() != model.layers.size()) {
        throw ContractError("optimizer state does not match the model");
    }
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        rmsprop_update(model.layers[l].weights, grads.weights[l], state.weights[l], cfg);
        rmsprop_update(model.layers[l].bias, grads.bias[l], state.bias[l], cfg);
    }
    ++model.revision;
}

FitResult fit(std::span<const LabeledExample> examples, const TrainConfig& cfg,
              std::span<const std::size_t> layer_sizes) {
    cfg.validate();
    if (examples.empty()) {
        throw ContractError("cannot fit on an empty example set");
    }
    Rng rng(cfg.seed);
    FitResult result{init_model(layer_sizes, rng.next()), {}};
    auto& model = result.model;
    model.seed = cfg.seed;
    model.n_subjects = model.input_dim() / 2;
    for (const auto& ex : examples) {
        if (ex.features.dim() != model.input_dim()) {
            throw ContractError("example dimension does not match the input layer");
        }
    }

    auto grads = Gradients::zeros_like(model);
    auto state = RmsPropState::zeros_like(model);
    SparseFirstLayerStep step(model);
    ForwardCache cache;
    DropoutSource dropout{cfg.dropout_rate, &rng};
    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        double total = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const auto stop = std::min(order.size(), start + cfg.batch_size);
            for (std::size_t k = start; k < stop; ++k) {
                const auto& ex = examples[order[k]];
                const double y_hat = forward(model, ex.features, cache, &dropout);
                total += loss_bce(y_hat, ex.label);
                backward(model, cache, ex.label, grads);
                step.touch(ex.features);
            }
            step.apply(model, grads, state, 1.0 / static_cast<double>(stop - start), cfg);
        }
        result.loss_trace.push_back(total / static_cast<double>(examples.size()));
    }
    return result;
}

double predict_proba(const MlpModel& model, const SocialGraph& graph, SubjectId subject,
                     std::span<const SubjectId> active_friends) {
    return forward(model, encode_input(graph, subject, active_friends));
}

void save_model(std::ostream& out, const MlpModel& model) {
    out << kModelMagic << ' ' << kModelVersion << '\n';
    out << "layers";
    for (const auto s : model.layer_sizes) {
        out << ' ' << s;
    }
    out << '\n' << "activations";
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        out << ' ' << to_string(l + 1 < model.layers.size() ? model.hidden : model.output);
    }
    out << '\n' << "seed " << model.seed << '\n' << "n_subjects " << model.n_subjects << '\n';
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        const auto& layer = model.layers[l];
        out << "weights " << l << ' ' << layer.inputs << ' ' << layer.outputs << '\n';
        for (std::size_t i = 0; i < layer.inputs; ++i) {
            for (std::size_t o = 0; o < layer.outputs; ++o) {
                out << (o ? " " : "") << format_double(layer.w(i, o));
            }
            out << '\n';
        }
        out << "bias " << l << ' ' << layer.outputs << '\n';
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            out << (o ? " " : "") << format_double(layer.bias[o]);
        }
        out << '\n';
    }
    out << "end\n";
}

MlpModel load_model(std::istream& in) {
    auto expect = [&](const std::string& want) {
        std::string got;
        if (!(in >> got) || got != want) {
            throw InputError("model file: expected '" + want + "', got '" + got + "'");
        }
    };
    auto read_number = [&](auto& value, const char* what) {
        if (!(in >> value)) {
            throw InputError(std::string("model file: could not read ") + what);
        }
    };
    expect(kModelMagic);
    int version = 0;
    read_number(version, "format version");
    if (version != kModelVersion) {
        throw InputError("model file: unsupported format version " + std::to_string(version));
    }
    MlpModel model;
    expect("layers");
    std::string line;
    std::getline(in, line);
    std::istringstream sizes(line);
    std::size_t s = 0;
    while (sizes >> s) {
        model.layer_sizes.push_back(s);
    }
    if (model.layer_sizes.size() < 3 || model.layer_sizes.back() != 1 ||
        std::find(model.layer_sizes.begin(), model.layer_sizes.end(), 0U) != model.layer_sizes.end()) {
        throw InputError("model file: invalid layer sizes");
    }
    const auto n_layers = model.layer_sizes.size() - 1;
    expect("activations");
    for (std::size_t l = 0; l < n_layers; ++l) {
        std::string tag;
        read_number(tag, "activation tag");
        const auto act = parse_activation(tag);
        if (l + 1 < n_layers) {
            model.hidden = act;
        } else {
            model.output = act;
        }
    }
    if (model.hidden != Activation::Relu || model.output != Activation::Sigmoid) {
        throw InputError("model file: only relu hidden layers with a sigmoid output are supported");
    }
    expect("seed");
    read_number(model.seed, "seed");
    expect("n_subjects");
    read_number(model.n_subjects, "n_subjects");

    auto read_value = [&]() {
        std::string token;
        read_number(token, "parameter");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) {
            throw InputError("model file: invalid number '" + token + "'");
        }
        return v;
    };
    for (std::size_t l = 0; l < n_layers; ++l) {
        DenseLayer layer;
        std::size_t idx = 0;
        expect("weights");
        read_number(idx, "layer index");
        read_number(layer.inputs, "layer inputs");
        read_number(layer.outputs, "layer outputs");
        if (idx != l || layer.inputs != model.layer_sizes[l] || layer.outputs != model.layer_sizes[l + 1]) {
            throw InputError("model file: weight block " + std::to_string(l) + " has the wrong shape");
        }
        layer.weights.resize(layer.inputs * layer.outputs);
        for (auto& w : layer.weights) {
            w = read_value();
        }
        std::size_t bias_len = 0;
        expect("bias");
        read_number(idx, "layer index");
        read_number(bias_len, "bias length");
        if (idx != l || bias_len != layer.outputs) {
            throw InputError("model file: bias block " + std::to_string(l) + " has the wrong shape");
        }
        layer.bias.resize(layer.outputs);
        for (auto& b : layer.bias) {
            b = read_value();
        }
        model.layers.push_back(std::move(layer));
    }
    expect("end");
    return model;
}

}  // namespace socinf
