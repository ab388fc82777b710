#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "socinf/action_log.hpp"
#include "socinf/graph.hpp"

namespace socinf {

// Input vector of the network stored by its nonzero entries.
class FeatureVector {
public:
    FeatureVector() = default;
    // `indices` must be strictly ascending and < dim.
    FeatureVector(std::size_t dim, std::vector<std::uint32_t> indices, std::vector<double> values);

    static FeatureVector from_dense(std::span<const double> dense);

    std::size_t dim() const { return dim_; }
    std::span<const std::uint32_t> indices() const { return indices_; }
    std::span<const double> values() const { return values_; }
    std::vector<double> dense() const;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::uint32_t> indices_;
    std::vector<double> values_;
};

// [one-hot(subject) | indicator(active friends)], length 2N. Throws
// ContractError when a listed friend has no edge into `subject`.
FeatureVector encode_input(const SocialGraph& graph, SubjectId subject, std::span<const SubjectId> active_friends);

struct LabeledExample {
    SubjectId subject = 0;
    ActionId action = 0;
    std::vector<SubjectId> friends;  // S_{subject, action} as seen by the models
    int label = 0;
    FeatureVector features;
};

struct TrainingSetOptions {
    std::uint64_t seed = 0;
    // Positives then use every friend who performed the action, not only
    // those strictly before the subject.
    bool timestamp_free = false;
};

struct TrainingSet {
    std::vector<LabeledExample> examples;
    // Subjects with fewer unperformed actions than performed ones.
    std::size_t negative_shortfall_subjects = 0;
    std::size_t negative_shortfall = 0;
};

// One positive per performed action and an equal number of negatives drawn
// without replacement from the actions each subject did not perform.
TrainingSet build_training_set(const SocialGraph& graph, const ActionLog& log, const TrainingSetOptions& opts);

}  // namespace socinf
