#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "socinf/encoding.hpp"
#include "socinf/graph.hpp"
#include "socinf/rng.hpp"

namespace socinf {

enum class Activation { Relu, Sigmoid };

std::string to_string(Activation a);

// Fully connected layer; weights are row-major [inputs x outputs] so a sparse
// input touches only the rows of its nonzero entries.
struct DenseLayer {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    double& w(std::size_t in, std::size_t out) { return weights[in * outputs + out]; }
    double w(std::size_t in, std::size_t out) const { return weights[in * outputs + out]; }
};

// Feed-forward tower: rectifier hidden layers, logistic scalar output.
struct MlpModel {
    std::vector<std::size_t> layer_sizes;  // [input, h_1, ..., h_L, 1]
    std::vector<DenseLayer> layers;
    Activation hidden = Activation::Relu;
    Activation output = Activation::Sigmoid;
    std::uint64_t seed = 0;
    std::size_t n_subjects = 0;
    // Bumped by every parameter update; forward caches remember it.
    std::uint64_t revision = 0;

    std::size_t input_dim() const { return layer_sizes.front(); }
    std::size_t parameter_count() const;
};

// Hidden widths halving from `first`: {128, 64, 32} for (128, 3).
std::vector<std::size_t> tower_hidden(std::size_t first = 128, std::size_t depth = 3);
// [2N, hidden..., 1].
std::vector<std::size_t> tower_layer_sizes(std::size_t n_subjects, std::span<const std::size_t> hidden);

// Glorot-uniform weights, zero biases. Needs at least one hidden layer and a
// single output; zero widths throw ContractError.
MlpModel init_model(std::span<const std::size_t> layer_sizes, std::uint64_t seed);

// Inverted dropout on hidden outputs.
struct DropoutSource {
    double rate = 0.0;
    Rng* rng = nullptr;
};

struct ForwardCache {
    std::uint64_t revision = 0;
    const MlpModel* model = nullptr;
    const FeatureVector* input = nullptr;  // not owned
    // Post-activation (and post-dropout) outputs of each hidden layer.
    std::vector<std::vector<double>> hidden;
    // Dropout multipliers per hidden unit (1 when no dropout).
    std::vector<std::vector<double>> mask;
    std::vector<std::vector<double>> pre_activation;
    double logit = 0.0;
    double y_hat = 0.5;
};

// Throws ContractError on an input dimension mismatch.
double forward(const MlpModel& model, const FeatureVector& x, ForwardCache& cache,
               const DropoutSource* dropout = nullptr);
double forward(const MlpModel& model, const FeatureVector& x);

inline constexpr double kBceEpsilon = 1e-12;

double loss_bce(double y_hat, int y);

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> bias;

    static Gradients zeros_like(const MlpModel& model);
    void set_zero();
    void scale(double factor);
};

// Adds d loss_bce / d theta for the cached example into `grads`. The cache
// must come from `model` at its current revision.
void backward(const MlpModel& model, const ForwardCache& cache, int y, Gradients& grads);

struct TrainConfig {
    std::size_t epochs = 25;
    double dropout_rate = 0.1;
    double learning_rate = 1e-3;
    double rmsprop_decay = 0.9;
    double rmsprop_epsilon = 1e-8;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;

    void validate() const;
};

struct RmsPropState {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> bias;

    static RmsPropState zeros_like(const MlpModel& model);
};

// s <- decay*s + (1-decay)*g^2; theta <- theta - lr*g/(sqrt(s) + eps).
void rmsprop_step(MlpModel& model, const Gradients& grads, RmsPropState& state, const TrainConfig& cfg);

struct FitResult {
    MlpModel model;
    std::vector<double> loss_trace;  // mean training loss per epoch
};

// Mini-batch RMSProp on binary cross-entropy for exactly cfg.epochs epochs.
// `layer_sizes` must start with the feature dimension.
FitResult fit(std::span<const LabeledExample> examples, const TrainConfig& cfg,
              std::span<const std::size_t> layer_sizes);

double predict_proba(const MlpModel& model, const SocialGraph& graph, SubjectId subject,
                     std::span<const SubjectId> active_friends);

// Versioned text format; weights at 17 significant digits so a load
// reproduces predictions bit for bit.
void save_model(std::ostream& out, const MlpModel& model);
MlpModel load_model(std::istream& in);

}  // namespace socinf
