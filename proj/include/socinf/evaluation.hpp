#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "socinf/encoding.hpp"

namespace socinf {

// Fold assignment of every example.
struct FoldSplit {
    std::size_t k = 0;
    std::vector<std::uint32_t> fold_of;

    std::vector<std::size_t> train_indices(std::size_t fold) const;
    std::vector<std::size_t> test_indices(std::size_t fold) const;
};

// Per (subject, label) group: seeded shuffle, then round-robin over folds,
// so every group is spread within +-1 of proportional. Needs k >= 2.
FoldSplit stratified_kfold(std::span<const LabeledExample> examples, std::size_t k, std::uint64_t seed);

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    ConfusionMatrix& operator+=(const ConfusionMatrix& o);
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Pairs are (predicted, actual), each 0 or 1. Throws ContractError if empty.
ConfusionMatrix confusion(std::span<const std::pair<int, int>> pairs);

struct Metrics {
    double accuracy = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
    bool no_positives = false;  // tpr forced to 0
    bool no_negatives = false;  // fpr forced to 0
};

Metrics metrics(const ConfusionMatrix& cm);

struct RocPoint {
    double threshold;
    std::size_t tp;
    std::size_t fp;
    double tpr;
    double fpr;
};

// Points for thresholds +inf then every distinct score, descending; an
// example is predicted active when score >= threshold.
struct RocCurve {
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::vector<RocPoint> points;
};

// Pairs are (score, actual). Throws InputError unless both classes occur.
RocCurve roc_curve(std::span<const std::pair<double, int>> scored);

struct ThresholdChoice {
    double theta;
    double value;  // J for Youden, distance for closest-to-(0,1)
};

// argmax tpr - fpr; ties go to the larger threshold.
ThresholdChoice youden_threshold(const RocCurve& curve);
// argmin sqrt(fpr^2 + (1 - tpr)^2); ties go to the larger threshold.
ThresholdChoice closest01_threshold(const RocCurve& curve);

enum class ThresholdRule { Fixed, Youden, Closest01 };

std::string to_string(ThresholdRule rule);
std::optional<ThresholdRule> parse_threshold_rule(const std::string& name);

// Anything that can be fit on a subset of examples and then score one.
class Predictor {
public:
    virtual ~Predictor() = default;
    virtual std::string name() const = 0;
    // `train` indexes into `examples`.
    virtual void fit(std::span<const LabeledExample> examples, std::span<const std::size_t> train) = 0;
    virtual double score(const LabeledExample& example) const = 0;
};

struct FoldResult {
    double threshold = 0.0;
    ConfusionMatrix cm;
    Metrics m;
};

struct ModelSection {
    std::string model;
    ThresholdRule rule = ThresholdRule::Fixed;
    std::vector<FoldResult> folds;
    ConfusionMatrix pooled;
    Metrics mean;
    Metrics stddev;
    Metrics pooled_metrics;
    // Set when fitting or scoring failed; the metrics are then meaningless.
    std::optional<std::string> error;
};

// Per fold: fit on the train part, choose the threshold on train scores by
// `rule` (or use `fixed_threshold`), then score and count the test part.
ModelSection evaluate_model(Predictor& predictor, std::span<const LabeledExample> examples, const FoldSplit& split,
                            ThresholdRule rule, double fixed_threshold = 0.5);

struct EvaluationReport {
    std::vector<ModelSection> sections;
    std::vector<std::string> notices;

    // Aligned table, percentages to one decimal.
    std::string to_text() const;
    // `model\tmetric\tfold\tvalue` lines.
    std::string to_rows() const;
};

// Orders sections as DNN, BD, JI, PC-B, PC-J, IC, then any others. Each
// name in `expected` without a section gets a notice instead of a row.
EvaluationReport compare_models(std::vector<ModelSection> sections, std::span<const std::string> expected = {});

}  // namespace socinf
