#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "socinf/error.hpp"
#include "socinf/evaluation.hpp"
#include "socinf/rng.hpp"

namespace socinf {
namespace {

std::vector<LabeledExample> random_examples(Rng& rng, std::size_t n, std::size_t subjects) {
    std::vector<LabeledExample> out(n);
    for (auto& ex : out) {
        ex.subject = static_cast<SubjectId>(rng.below(subjects));
        ex.label = static_cast<int>(rng.below(2));
        ex.action = static_cast<ActionId>(rng.below(1000));
    }
    return out;
}

TEST(StratifiedKFold, PerSubjectLabelProportionality) {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t k = 2 + rng.below(9);
        const auto examples = random_examples(rng, 20 + rng.below(400), 1 + rng.below(12));
        const auto split = stratified_kfold(examples, k, rng.next());
        ASSERT_EQ(split.fold_of.size(), examples.size());

        std::map<std::pair<SubjectId, int>, std::vector<std::size_t>> per_fold;
        for (std::size_t e = 0; e < examples.size(); ++e) {
            auto& counts = per_fold[{examples[e].subject, examples[e].label}];
            counts.resize(k, 0);
            ASSERT_LT(split.fold_of[e], k);
            ++counts[split.fold_of[e]];
        }
        for (const auto& [group, counts] : per_fold) {
            std::size_t total = 0;
            for (const auto c : counts) {
                total += c;
            }
            for (const auto c : counts) {
                EXPECT_GE(c, total / k);
                EXPECT_LE(c, (total + k - 1) / k);
            }
        }
        // Train and test partition the examples in every fold.
        for (std::size_t f = 0; f < k; ++f) {
            auto train = split.train_indices(f);
            const auto test = split.test_indices(f);
            EXPECT_EQ(train.size() + test.size(), examples.size());
            train.insert(train.end(), test.begin(), test.end());
            std::sort(train.begin(), train.end());
            for (std::size_t e = 0; e < train.size(); ++e) {
                EXPECT_EQ(train[e], e);
            }
        }
    }
}

TEST(StratifiedKFold, FoldSizesBalancedAcrossGroups) {
    // 7 subjects x 3 positives each: the running offset keeps fold sizes even.
    std::vector<LabeledExample> examples;
    for (SubjectId s = 0; s < 7; ++s) {
        for (int r = 0; r < 3; ++r) {
            examples.push_back({s, static_cast<ActionId>(r), {}, 1, {}});
        }
    }
    const auto split = stratified_kfold(examples, 10, 1);
    std::vector<std::size_t> sizes(10, 0);
    for (const auto f : split.fold_of) {
        ++sizes[f];
    }
    EXPECT_EQ(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()), 1u);
}

TEST(StratifiedKFold, SeededAndValidated) {
    Rng rng(5);
    const auto examples = random_examples(rng, 100, 4);
    EXPECT_EQ(stratified_kfold(examples, 5, 8).fold_of, stratified_kfold(examples, 5, 8).fold_of);
    EXPECT_NE(stratified_kfold(examples, 5, 8).fold_of, stratified_kfold(examples, 5, 9).fold_of);
    EXPECT_THROW(stratified_kfold(examples, 1, 8), ContractError);
}

TEST(Metrics, HandComputedConfusion) {
    // (predicted, actual)
    const std::vector<std::pair<int, int>> pairs{{1, 1}, {1, 1}, {1, 1}, {0, 1}, {0, 1},
                                                 {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}};
    const auto cm = confusion(pairs);
    EXPECT_EQ(cm, (ConfusionMatrix{3, 1, 4, 2}));
    const auto m = metrics(cm);
    EXPECT_EQ(m.accuracy, 7.0 / 10.0);
    EXPECT_EQ(m.tpr, 3.0 / 5.0);
    EXPECT_EQ(m.fpr, 1.0 / 5.0);
    EXPECT_FALSE(m.no_positives);
}

TEST(Metrics, DegenerateClassesFlagged) {
    const auto m = metrics(ConfusionMatrix{0, 2, 3, 0});
    EXPECT_TRUE(m.no_positives);
    EXPECT_EQ(m.tpr, 0.0);
    EXPECT_EQ(m.accuracy, 3.0 / 5.0);
    const auto n = metrics(ConfusionMatrix{4, 0, 0, 1});
    EXPECT_TRUE(n.no_negatives);
    EXPECT_EQ(n.fpr, 0.0);
    EXPECT_THROW(confusion({}), ContractError);
}

struct Counts {
    std::size_t tp;
    std::size_t fp;
};

Counts counts_at(const std::vector<std::pair<double, int>>& scored, double theta) {
    Counts c{0, 0};
    for (const auto& [s, y] : scored) {
        if (s >= theta) {
            (y ? c.tp : c.fp)++;
        }
    }
    return c;
}

std::vector<double> candidate_thresholds(const std::vector<std::pair<double, int>>& scored) {
    std::vector<double> t{std::numeric_limits<double>::infinity()};
    for (const auto& [s, y] : scored) {
        t.push_back(s);
    }
    std::sort(t.begin(), t.end(), std::greater<>());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

std::vector<std::pair<double, int>> random_scores(Rng& rng) {
    std::vector<std::pair<double, int>> scored;
    const std::size_t n = 2 + rng.below(60);
    // Coarse grids make ties common.
    const std::size_t grid = 2 + rng.below(20);
    for (std::size_t e = 0; e < n; ++e) {
        scored.emplace_back(static_cast<double>(rng.below(grid + 1)) / grid, static_cast<int>(rng.below(2)));
    }
    scored[0].second = 1;
    scored[1].second = 0;
    return scored;
}

TEST(Roc, MatchesBruteForce) {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto scored = random_scores(rng);
        const auto curve = roc_curve(scored);
        const auto thresholds = candidate_thresholds(scored);
        ASSERT_EQ(curve.points.size(), thresholds.size());
        for (std::size_t p = 0; p < thresholds.size(); ++p) {
            const auto c = counts_at(scored, thresholds[p]);
            EXPECT_EQ(curve.points[p].threshold, thresholds[p]);
            EXPECT_EQ(curve.points[p].tp, c.tp);
            EXPECT_EQ(curve.points[p].fp, c.fp);
        }
        EXPECT_EQ(curve.points.front().tp, 0u);
        EXPECT_EQ(curve.points.back().tp, curve.positives);
        EXPECT_EQ(curve.points.back().fp, curve.negatives);
    }
}

TEST(Roc, SingleClassIsAnError) {
    const std::vector<std::pair<double, int>> only_pos{{0.3, 1}, {0.6, 1}};
    EXPECT_THROW(roc_curve(only_pos), InputError);
}

// Exhaustive scan in exact integer arithmetic over every candidate
// threshold, largest first so ties keep the larger threshold.
double scan_youden(const std::vector<std::pair<double, int>>& scored) {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    for (const auto& [s, y] : scored) {
        (y ? pos : neg)++;
    }
    double best_theta = 0.0;
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (const double t : candidate_thresholds(scored)) {
        const auto c = counts_at(scored, t);
        const std::int64_t j = static_cast<std::int64_t>(c.tp) * neg - static_cast<std::int64_t>(c.fp) * pos;
        if (j > best) {
            best = j;
            best_theta = t;
        }
    }
    return best_theta;
}

double scan_closest01(const std::vector<std::pair<double, int>>& scored) {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    for (const auto& [s, y] : scored) {
        (y ? pos : neg)++;
    }
    double best_theta = 0.0;
    bool first = true;
    std::int64_t best = 0;
    for (const double t : candidate_thresholds(scored)) {
        const auto c = counts_at(scored, t);
        const std::int64_t miss = pos - static_cast<std::int64_t>(c.tp);
        const std::int64_t fp = static_cast<std::int64_t>(c.fp);
        const std::int64_t d = fp * fp * pos * pos + miss * miss * neg * neg;
        if (first || d < best) {
            best = d;
            best_theta = t;
            first = false;
        }
    }
    return best_theta;
}

TEST(Selectors, EqualExhaustiveScans) {
    Rng rng(123);
    for (int trial = 0; trial < 300; ++trial) {
        const auto scored = random_scores(rng);
        const auto curve = roc_curve(scored);
        EXPECT_EQ(youden_threshold(curve).theta, scan_youden(scored)) << "trial " << trial;
        EXPECT_EQ(closest01_threshold(curve).theta, scan_closest01(scored)) << "trial " << trial;
    }
}

TEST(Selectors, PerfectSeparation) {
    const std::vector<std::pair<double, int>> scored{{0.9, 1}, {0.8, 1}, {0.3, 0}, {0.1, 0}};
    const auto curve = roc_curve(scored);
    EXPECT_EQ(youden_threshold(curve).theta, 0.8);
    EXPECT_EQ(youden_threshold(curve).value, 1.0);
    EXPECT_EQ(closest01_threshold(curve).theta, 0.8);
    EXPECT_EQ(closest01_threshold(curve).value, 0.0);
}

TEST(ThresholdRuleNames, RoundTrip) {
    for (const auto r : {ThresholdRule::Fixed, ThresholdRule::Youden, ThresholdRule::Closest01}) {
        EXPECT_EQ(parse_threshold_rule(to_string(r)), r);
    }
    EXPECT_FALSE(parse_threshold_rule("median"));
}

// Scores each example by a stored per-action value.
class LookupPredictor : public Predictor {
public:
    explicit LookupPredictor(std::string name, bool fail = false) : name_(std::move(name)), fail_(fail) {}
    std::string name() const override { return name_; }
    void fit(std::span<const LabeledExample>, std::span<const std::size_t> train) override {
        if (fail_) {
            throw std::runtime_error("cannot fit");
        }
        fitted_on_ = train.size();
    }
    double score(const LabeledExample& ex) const override { return ex.action / 100.0; }
    std::size_t fitted_on_ = 0;

private:
    std::string name_;
    bool fail_;
};

std::vector<LabeledExample> separable_examples() {
    std::vector<LabeledExample> out;
    for (SubjectId s = 0; s < 4; ++s) {
        for (ActionId a = 0; a < 10; ++a) {
            out.push_back({s, a < 5 ? a * 10 + 2u : 60 + a, {}, a < 5 ? 0 : 1, {}});
        }
    }
    return out;
}

TEST(EvaluateModel, PerfectPredictorAndFixedThreshold) {
    const auto examples = separable_examples();
    const auto split = stratified_kfold(examples, 5, 1);
    LookupPredictor p("BD");
    const auto youden = evaluate_model(p, examples, split, ThresholdRule::Youden);
    ASSERT_FALSE(youden.error);
    EXPECT_EQ(youden.folds.size(), 5u);
    EXPECT_EQ(youden.pooled, (ConfusionMatrix{20, 0, 20, 0}));
    EXPECT_EQ(youden.mean.accuracy, 1.0);
    EXPECT_EQ(youden.stddev.accuracy, 0.0);
    EXPECT_EQ(p.fitted_on_, 32u);

    // Scores 0.02..0.42 for negatives, 0.65..0.69 for positives: 0.5 splits them too,
    // 0.66 does not.
    const auto fixed = evaluate_model(p, examples, split, ThresholdRule::Fixed, 0.66);
    EXPECT_EQ(fixed.pooled.fn, 4u);
    EXPECT_EQ(fixed.folds[0].threshold, 0.66);
}

TEST(EvaluateModel, FailureIsRecordedNotThrown) {
    const auto examples = separable_examples();
    const auto split = stratified_kfold(examples, 2, 1);
    LookupPredictor p("IC", true);
    const auto section = evaluate_model(p, examples, split, ThresholdRule::Youden);
    ASSERT_TRUE(section.error);
    EXPECT_NE(section.error->find("cannot fit"), std::string::npos);
}

TEST(CompareModels, CanonicalOrderAndNotices) {
    const auto examples = separable_examples();
    const auto split = stratified_kfold(examples, 2, 1);
    std::vector<ModelSection> sections;
    for (const char* name : {"IC", "JI", "DNN"}) {
        LookupPredictor p(name);
        sections.push_back(evaluate_model(p, examples, split, ThresholdRule::Youden));
    }
    const std::vector<std::string> expected{"DNN", "BD", "JI", "IC"};
    const auto report = compare_models(sections, expected);
    ASSERT_EQ(report.sections.size(), 3u);
    EXPECT_EQ(report.sections[0].model, "DNN");
    EXPECT_EQ(report.sections[1].model, "JI");
    EXPECT_EQ(report.sections[2].model, "IC");
    ASSERT_EQ(report.notices.size(), 1u);
    EXPECT_NE(report.notices[0].find("BD"), std::string::npos);

    const auto rows = report.to_rows();
    EXPECT_NE(rows.find("DNN\taccuracy\tmean\t"), std::string::npos);
    EXPECT_NE(rows.find("JI\taccuracy\t0\t"), std::string::npos);
    const auto text = report.to_text();
    EXPECT_NE(text.find("Accuracy"), std::string::npos);
    EXPECT_LT(text.find("DNN"), text.find("JI"));
}

}  // namespace
}  // namespace socinf
