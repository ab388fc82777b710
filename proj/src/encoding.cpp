#include "socinf/encoding.hpp"

#include <algorithm>
#include <string>

#include "socinf/dataset.hpp"
#include "socinf/error.hpp"
#include "socinf/rng.hpp"

namespace socinf {

FeatureVector::FeatureVector(std::size_t dim, std::vector<std::uint32_t> indices, std::vector<double> values)
    : dim_(dim), indices_(std::move(indices)), values_(std::move(values)) {
    if (indices_.size() != values_.size()) {
        throw ContractError("feature indices and values differ in length");
    }
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (indices_[k] >= dim_ || (k > 0 && indices_[k] <= indices_[k - 1])) {
            throw ContractError("feature indices must be ascending and within the dimension");
        }
    }
}

FeatureVector FeatureVector::from_dense(std::span<const double> dense) {
    std::vector<std::uint32_t> idx;
    std::vector<double> val;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (dense[i] != 0.0) {
            idx.push_back(static_cast<std::uint32_t>(i));
            val.push_back(dense[i]);
        }
    }
    return FeatureVector(dense.size(), std::move(idx), std::move(val));
}

std::vector<double> FeatureVector::dense() const {
    std::vector<double> out(dim_, 0.0);
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        out[indices_[k]] = values_[k];
    }
    return out;
}

FeatureVector encode_input(const SocialGraph& graph, SubjectId subject, std::span<const SubjectId> active_friends) {
    const auto n = graph.n_subjects();
    if (subject >= n) {
        throw ContractError("unknown subject " + std::to_string(subject));
    }
    std::vector<std::uint32_t> idx{subject};
    for (const auto j : active_friends) {
        if (!graph.has_edge(j, subject)) {
            throw ContractError("subject " + std::to_string(j) + " is not a friend of " + std::to_string(subject));
        }
        idx.push_back(static_cast<std::uint32_t>(n + j));
    }
    std::sort(idx.begin() + 1, idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<double> val(idx.size(), 1.0);
    return FeatureVector(2 * n, std::move(idx), std::move(val));
}

TrainingSet build_training_set(const SocialGraph& graph, const ActionLog& log, const TrainingSetOptions& opts) {
    if (!opts.timestamp_free && !log.empty() && log.timestamp_mode() != TimestampMode::Timed) {
        throw InputError("action log is not fully timed; enable timestamp-free mode explicitly");
    }
    const bool timed = !opts.timestamp_free && !log.empty();
    TrainingSet out;
    Rng root(opts.seed);
    std::vector<ActionId> candidates;
    for (SubjectId u = 0; u < graph.n_subjects(); ++u) {
        Rng rng = root.fork(u);
        const auto performed = log.actions_of(u);
        for (const auto a : performed) {
            LabeledExample ex;
            ex.subject = u;
            ex.action = a;
            const auto* rec = log.find(u, a);
            ex.friends = active_friends(graph, log, u, a,
                                        timed ? std::optional<Timestamp>(*rec->timestamp) : std::nullopt);
            ex.label = 1;
            ex.features = encode_input(graph, u, ex.friends);
            out.examples.push_back(std::move(ex));
        }

        candidates.clear();
        std::size_t next = 0;
        for (ActionId a = 0; a < log.n_actions(); ++a) {
            if (next < performed.size() && performed[next] == a) {
                ++next;
            } else {
                candidates.push_back(a);
            }
        }
        const auto wanted = performed.size();
        const auto draw = std::min(wanted, candidates.size());
        if (draw < wanted) {
            ++out.negative_shortfall_subjects;
            out.negative_shortfall += wanted - draw;
        }
        // Partial Fisher-Yates: the first `draw` slots become the sample.
        for (std::size_t k = 0; k < draw; ++k) {
            std::swap(candidates[k], candidates[k + rng.below(candidates.size() - k)]);
        }
        std::sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(draw));
        for (std::size_t k = 0; k < draw; ++k) {
            LabeledExample ex;
            ex.subject = u;
            ex.action = candidates[k];
            ex.friends = active_friends(graph, log, u, candidates[k]);
            ex.label = 0;
            ex.features = encode_input(graph, u, ex.friends);
            out.examples.push_back(std::move(ex));
        }
    }
    return out;
}

}  // namespace socinf
