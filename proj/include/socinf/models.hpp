#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "socinf/baselines.hpp"
#include "socinf/dataset.hpp"
#include "socinf/evaluation.hpp"
#include "socinf/ic_em.hpp"
#include "socinf/mlp.hpp"
#include "socinf/propagation.hpp"

namespace socinf {

enum class ModelKind { BD, JI, PCB, PCJ, ICEM, DNN };

// Report/display name: BD, JI, PC-B, PC-J, IC, DNN.
std::string display_name(ModelKind kind);
// CLI selector: bd, ji, pcb, pcj, icem, dnn.
std::string selector_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(const std::string& selector);
std::vector<ModelKind> all_model_kinds();

// The action log with the records behind the given positive examples
// removed, so a fold's test activations never inform baseline estimates.
ActionLog log_without(const ActionLog& log, std::span<const LabeledExample> examples,
                      std::span<const std::size_t> held_out);

// Fits one of the static LT estimators on the training part of the log.
class LtPredictor : public Predictor {
public:
    LtPredictor(const Dataset& data, ModelKind kind, PropagationOptions opts);

    std::string name() const override { return display_name(kind_); }
    void fit(std::span<const LabeledExample> examples, std::span<const std::size_t> train) override;
    double score(const LabeledExample& example) const override;

    const EdgeProbabilities& probabilities() const { return probs_; }

private:
    const Dataset& data_;
    ModelKind kind_;
    PropagationOptions opts_;
    EdgeProbabilities probs_;
};

EdgeProbabilities fit_lt(const Dataset& data, const ActionLog& log, ModelKind kind, const PropagationOptions& opts);

class IcPredictor : public Predictor {
public:
    IcPredictor(const Dataset& data, IcEmConfig cfg);

    std::string name() const override { return "IC"; }
    void fit(std::span<const LabeledExample> examples, std::span<const std::size_t> train) override;
    double score(const LabeledExample& example) const override;

    const IcEmResult& result() const { return result_; }

private:
    const Dataset& data_;
    IcEmConfig cfg_;
    IcEmResult result_;
};

class DnnPredictor : public Predictor {
public:
    // Each call to fit() reseeds from `cfg.seed` and the call count.
    DnnPredictor(const Dataset& data, TrainConfig cfg, std::vector<std::size_t> hidden);

    std::string name() const override { return "DNN"; }
    void fit(std::span<const LabeledExample> examples, std::span<const std::size_t> train) override;
    double score(const LabeledExample& example) const override;

    const FitResult& result() const { return result_; }

private:
    const Dataset& data_;
    TrainConfig cfg_;
    std::vector<std::size_t> hidden_;
    std::size_t fits_ = 0;
    FitResult result_;
};

}  // namespace socinf
