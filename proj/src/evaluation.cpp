#include "socinf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "socinf/baselines.hpp"
#include "socinf/error.hpp"
#include "socinf/rng.hpp"

namespace socinf {

std::vector<std::size_t> FoldSplit::train_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
        if (fold_of[i] != fold) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> FoldSplit::test_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
        if (fold_of[i] == fold) {
            out.push_back(i);
        }
    }
    return out;
}

FoldSplit stratified_kfold(std::span<const LabeledExample> examples, std::size_t k, std::uint64_t seed) {
    if (k < 2) {
        throw ContractError("k-fold split needs k >= 2");
    }
    if (examples.empty()) {
        throw ContractError("cannot split an empty example set");
    }
    std::map<std::pair<SubjectId, int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        groups[{examples[i].subject, examples[i].label}].push_back(i);
    }
    FoldSplit split;
    split.k = k;
    split.fold_of.assign(examples.size(), 0);
    Rng rng(seed);
    // The running offset spreads group remainders so global fold sizes
    // stay balanced as well.
    std::size_t offset = 0;
    for (auto& [key, members] : groups) {
        rng.shuffle(std::span<std::size_t>(members));
        for (std::size_t r = 0; r < members.size(); ++r) {
            split.fold_of[members[r]] = static_cast<std::uint32_t>((offset + r) % k);
        }
        offset = (offset + members.size()) % k;
    }
    return split;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
}

ConfusionMatrix confusion(std::span<const std::pair<int, int>> pairs) {
    if (pairs.empty()) {
        throw ContractError("confusion matrix of an empty prediction set");
    }
    ConfusionMatrix cm;
    for (const auto& [predicted, actual] : pairs) {
        if (predicted == 1) {
            ++(actual == 1 ? cm.tp : cm.fp);
        } else {
            ++(actual == 1 ? cm.fn : cm.tn);
        }
    }
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw ContractError("metrics of an empty confusion matrix");
    }
    Metrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    const auto pos = cm.tp + cm.fn;
    const auto neg = cm.fp + cm.tn;
    m.no_positives = pos == 0;
    m.no_negatives = neg == 0;
    m.tpr = pos ? static_cast<double>(cm.tp) / static_cast<double>(pos) : 0.0;
    m.fpr = neg ? static_cast<double>(cm.fp) / static_cast<double>(neg) : 0.0;
    return m;
}

RocCurve roc_curve(std::span<const std::pair<double, int>> scored) {
    RocCurve curve;
    std::vector<std::pair<double, int>> sorted(scored.begin(), scored.end());
    for (const auto& [s, y] : sorted) {
        if (std::isnan(s)) {
            throw DomainError("ROC input contains a NaN score");
        }
        ++(y == 1 ? curve.positives : curve.negatives);
    }
    if (curve.positives == 0 || curve.negatives == 0) {
        throw InputError("ROC curve needs both positive and negative examples");
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const double P = static_cast<double>(curve.positives);
    const double N = static_cast<double>(curve.negatives);
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0, 0, 0.0, 0.0});
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double threshold = sorted[i].first;
        while (i < sorted.size() && sorted[i].first == threshold) {
            ++(sorted[i].second == 1 ? tp : fp);
            ++i;
        }
        curve.points.push_back({threshold, tp, fp, static_cast<double>(tp) / P, static_cast<double>(fp) / N});
    }
    return curve;
}

// Both selectors compare exact integer forms so ties are detected exactly.
ThresholdChoice youden_threshold(const RocCurve& curve) {
    using Wide = __int128;
    const Wide P = static_cast<Wide>(curve.positives);
    const Wide N = static_cast<Wide>(curve.negatives);
    const RocPoint* best = nullptr;
    Wide best_key = 0;
    for (const auto& pt : curve.points) {
        // J * P * N
        const Wide key = static_cast<Wide>(pt.tp) * N - static_cast<Wide>(pt.fp) * P;
        if (best == nullptr || key > best_key) {
            best = &pt;
            best_key = key;
        }
    }
    if (best == nullptr) {
        throw ContractError("empty ROC curve");
    }
    return {best->threshold, best->tpr - best->fpr};
}

ThresholdChoice closest01_threshold(const RocCurve& curve) {
    using Wide = unsigned __int128;
    const Wide P = curve.positives;
    const Wide N = curve.negatives;
    const RocPoint* best = nullptr;
    Wide best_key = 0;
    for (const auto& pt : curve.points) {
        // d^2 * P^2 * N^2
        const Wide miss = P - pt.tp;
        const Wide key = static_cast<Wide>(pt.fp) * pt.fp * P * P + miss * miss * N * N;
        if (best == nullptr || key < best_key) {
            best = &pt;
            best_key = key;
        }
    }
    if (best == nullptr) {
        throw ContractError("empty ROC curve");
    }
    return {best->threshold, std::sqrt(best->fpr * best->fpr + (1.0 - best->tpr) * (1.0 - best->tpr))};
}

std::string to_string(ThresholdRule rule) {
    switch (rule) {
    case ThresholdRule::Fixed:
        return "fixed";
    case ThresholdRule::Youden:
        return "youden";
    case ThresholdRule::Closest01:
        return "closest01";
    }
    return "fixed";
}

std::optional<ThresholdRule> parse_threshold_rule(const std::string& name) {
    if (name == "fixed") {
        return ThresholdRule::Fixed;
    }
    if (name == "youden") {
        return ThresholdRule::Youden;
    }
    if (name == "closest01") {
        return ThresholdRule::Closest01;
    }
    return std::nullopt;
}

namespace {

Metrics mean_of(const std::vector<FoldResult>& folds) {
    Metrics m;
    for (const auto& f : folds) {
        m.accuracy += f.m.accuracy;
        m.tpr += f.m.tpr;
        m.fpr += f.m.fpr;
    }
    const auto n = static_cast<double>(folds.size());
    m.accuracy /= n;
    m.tpr /= n;
    m.fpr /= n;
    return m;
}

// Population standard deviation over folds.
Metrics stddev_of(const std::vector<FoldResult>& folds, const Metrics& mean) {
    Metrics s;
    for (const auto& f : folds) {
        s.accuracy += (f.m.accuracy - mean.accuracy) * (f.m.accuracy - mean.accuracy);
        s.tpr += (f.m.tpr - mean.tpr) * (f.m.tpr - mean.tpr);
        s.fpr += (f.m.fpr - mean.fpr) * (f.m.fpr - mean.fpr);
    }
    const auto n = static_cast<double>(folds.size());
    s.accuracy = std::sqrt(s.accuracy / n);
    s.tpr = std::sqrt(s.tpr / n);
    s.fpr = std::sqrt(s.fpr / n);
    return s;
}

}  // namespace

ModelSection evaluate_model(Predictor& predictor, std::span<const LabeledExample> examples, const FoldSplit& split,
                            ThresholdRule rule, double fixed_threshold) {
    ModelSection section;
    section.model = predictor.name();
    section.rule = rule;
    try {
        for (std::size_t fold = 0; fold < split.k; ++fold) {
            const auto train = split.train_indices(fold);
            const auto test = split.test_indices(fold);
            if (test.empty()) {
                continue;
            }
            predictor.fit(examples, train);

            FoldResult result;
            result.threshold = fixed_threshold;
            if (rule != ThresholdRule::Fixed) {
                std::vector<std::pair<double, int>> scored;
                scored.reserve(train.size());
                for (const auto i : train) {
                    scored.emplace_back(predictor.score(examples[i]), examples[i].label);
                }
                const auto curve = roc_curve(scored);
                result.threshold = rule == ThresholdRule::Youden ? youden_threshold(curve).theta
                                                                 : closest01_threshold(curve).theta;
            }
            std::vector<std::pair<int, int>> pairs;
            pairs.reserve(test.size());
            for (const auto i : test) {
                const double s = predictor.score(examples[i]);
                pairs.emplace_back(s >= result.threshold ? 1 : 0, examples[i].label);
            }
            result.cm = confusion(pairs);
            result.m = metrics(result.cm);
            section.pooled += result.cm;
            section.folds.push_back(result);
        }
        if (section.folds.empty()) {
            throw ContractError("no fold had test examples");
        }
        section.mean = mean_of(section.folds);
        section.stddev = stddev_of(section.folds, section.mean);
        section.pooled_metrics = metrics(section.pooled);
    } catch (const std::exception& e) {
        section.error = e.what();
    }
    return section;
}

namespace {

const std::vector<std::string>& canonical_order() {
    static const std::vector<std::string> order{"DNN", "BD", "JI", "PC-B", "PC-J", "IC"};
    return order;
}

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string format_threshold(double t) { return std::isinf(t) ? std::string("inf") : format_double(t); }

}  // namespace

EvaluationReport compare_models(std::vector<ModelSection> sections, std::span<const std::string> expected) {
    EvaluationReport report;
    const auto& order = canonical_order();
    auto rank = [&](const std::string& name) {
        const auto it = std::find(order.begin(), order.end(), name);
        return static_cast<std::size_t>(it - order.begin());
    };
    std::stable_sort(sections.begin(), sections.end(),
                     [&](const ModelSection& a, const ModelSection& b) { return rank(a.model) < rank(b.model); });
    for (const auto& name : expected) {
        const bool present = std::any_of(sections.begin(), sections.end(),
                                         [&](const ModelSection& s) { return s.model == name; });
        if (!present) {
            report.notices.push_back("model " + name + " was not evaluated; row omitted");
        }
    }
    for (const auto& s : sections) {
        if (s.error) {
            report.notices.push_back("model " + s.model + " failed: " + *s.error);
        }
    }
    report.sections = std::move(sections);
    return report;
}

std::string EvaluationReport::to_text() const {
    std::ostringstream os;
    const std::vector<std::string> header{"Model", "Accuracy", "TPR", "FPR", "Acc(pooled)", "TPR(pooled)",
                                          "FPR(pooled)", "Rule"};
    std::vector<std::vector<std::string>> rows{header};
    for (const auto& s : sections) {
        if (s.error) {
            rows.push_back({s.model, "failed", "-", "-", "-", "-", "-", to_string(s.rule)});
            continue;
        }
        rows.push_back({s.model, percent(s.mean.accuracy), percent(s.mean.tpr), percent(s.mean.fpr),
                        percent(s.pooled_metrics.accuracy), percent(s.pooled_metrics.tpr),
                        percent(s.pooled_metrics.fpr), to_string(s.rule)});
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            width[c] = std::max(width[c], r[c].size());
        }
    }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            line += c + 1 < r.size() ? pad(r[c], width[c] + 2) : r[c];
        }
        os << line << '\n';
    }
    if (!sections.empty()) {
        os << '\n' << "Per-fold accuracy (std over folds):\n";
        for (const auto& s : sections) {
            if (s.error) {
                continue;
            }
            os << pad(s.model, width[0] + 2) << "std " << percent(s.stddev.accuracy) << " |";
            for (const auto& f : s.folds) {
                os << ' ' << percent(f.m.accuracy);
            }
            os << '\n';
        }
    }
    for (const auto& n : notices) {
        os << "note: " << n << '\n';
    }
    return os.str();
}

std::string EvaluationReport::to_rows() const {
    std::ostringstream os;
    auto row = [&](const std::string& model, const char* metric, const std::string& fold, const std::string& value) {
        os << model << '\t' << metric << '\t' << fold << '\t' << value << '\n';
    };
    auto emit = [&](const std::string& model, const std::string& fold, const Metrics& m) {
        row(model, "accuracy", fold, format_double(m.accuracy));
        row(model, "tpr", fold, format_double(m.tpr));
        row(model, "fpr", fold, format_double(m.fpr));
    };
    for (const auto& s : sections) {
        if (s.error) {
            row(s.model, "error", "-", *s.error);
            continue;
        }
        for (std::size_t f = 0; f < s.folds.size(); ++f) {
            emit(s.model, std::to_string(f), s.folds[f].m);
            row(s.model, "threshold", std::to_string(f), format_threshold(s.folds[f].threshold));
        }
        emit(s.model, "mean", s.mean);
        emit(s.model, "std", s.stddev);
        emit(s.model, "pooled", s.pooled_metrics);
    }
    return os.str();
}

}  // namespace socinf
