#include "socinf/pipeline.hpp"

#include <memory>
#include <string>

#include "socinf/rng.hpp"

namespace socinf {

EvaluationReport run_evaluation(const Dataset& data, const EvalOptions& opts) {
    TrainingSetOptions set_opts;
    set_opts.seed = derive_seed(opts.seed, 0);
    set_opts.timestamp_free = opts.propagation.timestamp_free;
    const auto set = build_training_set(data.graph, data.log, set_opts);
    const auto split = stratified_kfold(set.examples, opts.k, derive_seed(opts.seed, 1));

    std::vector<ModelSection> sections;
    std::vector<std::string> expected;
    for (const auto kind : opts.models) {
        expected.push_back(display_name(kind));
        std::unique_ptr<Predictor> predictor;
        ThresholdRule rule = opts.baseline_rule;
        double fixed = 0.5;
        switch (kind) {
        case ModelKind::DNN: {
            auto train = opts.train;
            train.seed = derive_seed(opts.seed, 2);
            predictor = std::make_unique<DnnPredictor>(data, train, opts.hidden);
            rule = opts.dnn_rule;
            fixed = opts.dnn_threshold;
            break;
        }
        case ModelKind::ICEM:
            predictor = std::make_unique<IcPredictor>(data, opts.icem);
            break;
        default:
            predictor = std::make_unique<LtPredictor>(data, kind, opts.propagation);
            break;
        }
        sections.push_back(evaluate_model(*predictor, set.examples, split, rule, fixed));
    }
    auto report = compare_models(std::move(sections), expected);
    if (set.negative_shortfall > 0) {
        report.notices.push_back(std::to_string(set.negative_shortfall_subjects) +
                                 " subjects had too few unperformed actions for balanced negatives (" +
                                 std::to_string(set.negative_shortfall) + " missing)");
    }
    return report;
}

}  // namespace socinf
