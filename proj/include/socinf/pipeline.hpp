#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "socinf/dataset.hpp"
#include "socinf/evaluation.hpp"
#include "socinf/ic_em.hpp"
#include "socinf/mlp.hpp"
#include "socinf/models.hpp"
#include "socinf/propagation.hpp"

namespace socinf {

struct EvalOptions {
    std::vector<ModelKind> models = all_model_kinds();
    std::size_t k = 10;
    std::uint64_t seed = 0;
    ThresholdRule baseline_rule = ThresholdRule::Youden;
    ThresholdRule dnn_rule = ThresholdRule::Fixed;
    double dnn_threshold = 0.5;
    TrainConfig train;
    std::vector<std::size_t> hidden = tower_hidden();
    IcEmConfig icem;
    PropagationOptions propagation;
};

// Builds the balanced example set, splits it into stratified folds, and
// evaluates every selected model on the same split.
EvaluationReport run_evaluation(const Dataset& data, const EvalOptions& opts);

}  // namespace socinf
