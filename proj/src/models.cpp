#include "socinf/models.hpp"

#include <algorithm>

#include "socinf/error.hpp"
#include "socinf/rng.hpp"

namespace socinf {

std::string display_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::BD:
        return "BD";
    case ModelKind::JI:
        return "JI";
    case ModelKind::PCB:
        return "PC-B";
    case ModelKind::PCJ:
        return "PC-J";
    case ModelKind::ICEM:
        return "IC";
    case ModelKind::DNN:
        return "DNN";
    }
    return "?";
}

std::string selector_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::BD:
        return "bd";
    case ModelKind::JI:
        return "ji";
    case ModelKind::PCB:
        return "pcb";
    case ModelKind::PCJ:
        return "pcj";
    case ModelKind::ICEM:
        return "icem";
    case ModelKind::DNN:
        return "dnn";
    }
    return "?";
}

std::optional<ModelKind> parse_model_kind(const std::string& selector) {
    for (const auto k : all_model_kinds()) {
        if (selector_name(k) == selector) {
            return k;
        }
    }
    return std::nullopt;
}

std::vector<ModelKind> all_model_kinds() {
    return {ModelKind::DNN, ModelKind::BD, ModelKind::JI, ModelKind::PCB, ModelKind::PCJ, ModelKind::ICEM};
}

ActionLog log_without(const ActionLog& log, std::span<const LabeledExample> examples,
                      std::span<const std::size_t> held_out) {
    std::vector<std::pair<SubjectId, ActionId>> drop;
    for (const auto i : held_out) {
        if (examples[i].label == 1) {
            drop.emplace_back(examples[i].subject, examples[i].action);
        }
    }
    std::sort(drop.begin(), drop.end());
    std::vector<ActionRecord> kept;
    kept.reserve(log.size());
    for (const auto& r : log.records()) {
        if (!std::binary_search(drop.begin(), drop.end(), std::make_pair(r.subject, r.action))) {
            kept.push_back(r);
        }
    }
    return ActionLog(log.actions(), log.n_subjects(), std::move(kept));
}

namespace {

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> train) {
    std::vector<bool> in_train(n, false);
    for (const auto i : train) {
        in_train[i] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_train[i]) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace

EdgeProbabilities fit_lt(const Dataset& data, const ActionLog& log, ModelKind kind, const PropagationOptions& opts) {
    const auto stats = scan_propagation(data.graph, log, opts);
    switch (kind) {
    case ModelKind::BD:
        return estimate_bd(stats);
    case ModelKind::JI:
        return estimate_ji(stats);
    case ModelKind::PCB:
        return estimate_pc(stats, PcFlavor::Bernoulli);
    case ModelKind::PCJ:
        return estimate_pc(stats, PcFlavor::Jaccard);
    default:
        throw ContractError("not a static LT estimator: " + display_name(kind));
    }
}

LtPredictor::LtPredictor(const Dataset& data, ModelKind kind, PropagationOptions opts)
    : data_(data), kind_(kind), opts_(opts) {}

void LtPredictor::fit(std::span<const LabeledExample> examples, std::span<const std::size_t> train) {
    const auto held_out = complement(examples.size(), train);
    probs_ = fit_lt(data_, log_without(data_.log, examples, held_out), kind_, opts_);
}

double LtPredictor::score(const LabeledExample& example) const {
    return joint_score(data_.graph, probs_, example.friends, example.subject);
}

IcPredictor::IcPredictor(const Dataset& data, IcEmConfig cfg) : data_(data), cfg_(cfg) {}

void IcPredictor::fit(std::span<const LabeledExample> examples, std::span<const std::size_t> train) {
    const auto held_out = complement(examples.size(), train);
    const auto episodes = episodes_from_log(log_without(data_.log, examples, held_out));
    result_ = ic_em_fit(episodes, data_.graph, cfg_);
}

double IcPredictor::score(const LabeledExample& example) const {
    return joint_score(data_.graph, result_.probs, example.friends, example.subject);
}

DnnPredictor::DnnPredictor(const Dataset& data, TrainConfig cfg, std::vector<std::size_t> hidden)
    : data_(data), cfg_(cfg), hidden_(std::move(hidden)) {}

void DnnPredictor::fit(std::span<const LabeledExample> examples, std::span<const std::size_t> train) {
    std::vector<LabeledExample> subset;
    subset.reserve(train.size());
    for (const auto i : train) {
        subset.push_back(examples[i]);
    }
    auto cfg = cfg_;
    cfg.seed = derive_seed(cfg_.seed, fits_++);
    const auto sizes = tower_layer_sizes(data_.graph.n_subjects(), hidden_);
    result_ = socinf::fit(subset, cfg, sizes);
}

double DnnPredictor::score(const LabeledExample& example) const { return forward(result_.model, example.features); }

}  // namespace socinf
