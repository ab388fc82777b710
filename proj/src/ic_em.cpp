#include "socinf/ic_em.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "socinf/error.hpp"

namespace socinf {

namespace {

// Sufficient statistics of the episode likelihood: the sets of edges that
// may have caused each activation, and per-edge trial counts.
struct TrialTable {
    std::vector<std::vector<EdgeId>> groups;
    std::vector<std::size_t> trials;
    std::vector<std::size_t> failures;
};

TrialTable build_trials(std::span<const Episode> episodes, const SocialGraph& graph) {
    const auto n = graph.n_subjects();
    TrialTable table;
    table.trials.assign(graph.n_edges(), 0);
    table.failures.assign(graph.n_edges(), 0);
    std::vector<std::optional<Timestamp>> when(n);
    for (const auto& ep : episodes) {
        for (const auto& [s, t] : ep.activations) {
            if (s >= n) {
                throw InputError("episode for action " + std::to_string(ep.action) + " references unknown subject " +
                                 std::to_string(s));
            }
            if (when[s]) {
                throw ContractError("subject activates twice in one episode");
            }
            when[s] = t;
        }
        for (const auto& [i, ti] : ep.activations) {
            std::vector<EdgeId> group;
            const auto [first, last] = graph.in_edge_range(i);
            for (EdgeId e = first; e < last; ++e) {
                const auto& tj = when[graph.edge(e).source];
                if (tj && *tj < ti) {
                    group.push_back(e);
                    ++table.trials[e];
                }
            }
            if (!group.empty()) {
                table.groups.push_back(std::move(group));
            }
        }
        for (const auto& [j, tj] : ep.activations) {
            const auto targets = graph.out_neighbors(j);
            const auto edges = graph.out_edges(j);
            for (std::size_t k = 0; k < targets.size(); ++k) {
                if (!when[targets[k]]) {
                    ++table.trials[edges[k]];
                    ++table.failures[edges[k]];
                }
            }
        }
        for (const auto& [s, t] : ep.activations) {
            when[s].reset();
        }
    }
    return table;
}

double log_likelihood(const TrialTable& table, const std::vector<double>& p) {
    double ll = 0.0;
    for (const auto& group : table.groups) {
        double miss = 1.0;
        for (const auto e : group) {
            miss *= 1.0 - p[e];
        }
        ll += std::log(1.0 - miss);
    }
    for (std::size_t e = 0; e < p.size(); ++e) {
        if (table.failures[e] > 0) {
            ll += static_cast<double>(table.failures[e]) * std::log1p(-p[e]);
        }
    }
    return ll;
}

}  // namespace

std::vector<Episode> episodes_from_log(const ActionLog& log) {
    if (log.timestamp_mode() != TimestampMode::Timed) {
        throw InputError(
            "IC-EM needs the order of activations; the action log is timestamp-free (or partially untimed)");
    }
    std::vector<Episode> out(log.n_actions());
    for (ActionId a = 0; a < log.n_actions(); ++a) {
        out[a].action = a;
        for (const auto& r : log.episode(a)) {
            out[a].activations.emplace_back(r.subject, *r.timestamp);
        }
    }
    return out;
}

IcEmResult ic_em_fit(std::span<const Episode> episodes, const SocialGraph& graph, const IcEmConfig& cfg) {
    if (episodes.empty()) {
        throw InputError("IC-EM needs at least one episode");
    }
    if (cfg.max_iters < 1 || !(cfg.ll_tolerance > 0.0) || !(cfg.init_p > 0.0 && cfg.init_p < 1.0)) {
        throw ContractError("invalid IC-EM configuration");
    }
    const auto table = build_trials(episodes, graph);
    const auto m = graph.n_edges();

    IcEmResult result;
    result.probs.tag = "IC";
    auto& p = result.probs.p;
    p.assign(m, 0.0);
    for (std::size_t e = 0; e < m; ++e) {
        if (table.trials[e] > 0) {
            p[e] = cfg.init_p;
        }
    }
    result.ll_trace.push_back(log_likelihood(table, p));

    std::vector<double> responsibility(m);
    while (result.iterations < cfg.max_iters) {
        std::fill(responsibility.begin(), responsibility.end(), 0.0);
        for (const auto& group : table.groups) {
            double miss = 1.0;
            for (const auto e : group) {
                miss *= 1.0 - p[e];
            }
            const double hit = 1.0 - miss;
            if (hit <= 0.0) {
                continue;
            }
            for (const auto e : group) {
                responsibility[e] += p[e] / hit;
            }
        }
        for (std::size_t e = 0; e < m; ++e) {
            if (table.trials[e] > 0) {
                p[e] = std::min(1.0, responsibility[e] / static_cast<double>(table.trials[e]));
            }
        }
        ++result.iterations;
        const double ll = log_likelihood(table, p);
        const double delta = ll - result.ll_trace.back();
        result.ll_trace.push_back(ll);
        if (std::abs(delta) < cfg.ll_tolerance) {
            result.converged = true;
            break;
        }
    }
    return result;
}

Prediction ic_predict(const SocialGraph& graph, const EdgeProbabilities& probs, std::span<const SubjectId> friends,
                      SubjectId target, double threshold) {
    const double score = joint_score(graph, probs, friends, target);
    return {score, score >= threshold};
}

}  // namespace socinf
