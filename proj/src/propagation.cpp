#include "socinf/propagation.hpp"

#include <algorithm>
#include <iterator>

#include "socinf/error.hpp"

namespace socinf {

namespace {

void check_mode(const ActionLog& log, const PropagationOptions& opts) {
    switch (log.timestamp_mode()) {
    case TimestampMode::Mixed:
        throw InputError("action log mixes timed and untimed records");
    case TimestampMode::Untimed:
        if (!opts.timestamp_free && !log.empty()) {
            throw InputError("action log has no timestamps; enable timestamp-free mode explicitly");
        }
        break;
    case TimestampMode::Timed:
        break;
    }
}

}  // namespace

std::vector<SubjectId> prior_influencers(const SocialGraph& graph, const ActionLog& log, const ActionRecord& rec,
                                         const PropagationOptions& opts) {
    std::vector<SubjectId> out;
    for (const auto j : graph.in_neighbors(rec.subject)) {
        const auto* other = log.find(j, rec.action);
        if (other == nullptr) {
            continue;
        }
        if (!opts.timestamp_free) {
            const auto ti = *rec.timestamp;
            const auto tj = *other->timestamp;
            if (tj >= ti) {
                continue;
            }
            if (opts.window && ti - tj > *opts.window) {
                continue;
            }
        }
        out.push_back(j);
    }
    return out;
}

PropagationStats scan_propagation(const SocialGraph& graph, const ActionLog& log, const PropagationOptions& opts) {
    check_mode(log, opts);
    const auto m = graph.n_edges();
    PropagationStats stats;
    stats.source_actions.resize(m);
    stats.target_actions.resize(m);
    stats.propagated.assign(m, 0);
    stats.union_actions.resize(m);
    stats.credit.assign(m, 0.0);
    stats.influencers.assign(log.size(), 0);

    for (EdgeId e = 0; e < m; ++e) {
        const auto [j, i] = graph.edge(e);
        const auto aj = log.actions_of(j);
        const auto ai = log.actions_of(i);
        std::size_t both = 0;
        auto x = aj.begin();
        auto y = ai.begin();
        while (x != aj.end() && y != ai.end()) {
            if (*x < *y) {
                ++x;
            } else if (*y < *x) {
                ++y;
            } else {
                ++both;
                ++x;
                ++y;
            }
        }
        stats.source_actions[e] = static_cast<std::uint32_t>(aj.size());
        stats.target_actions[e] = static_cast<std::uint32_t>(ai.size());
        stats.union_actions[e] = static_cast<std::uint32_t>(aj.size() + ai.size() - both);
    }

    const auto records = log.records();
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto prior = prior_influencers(graph, log, records[r], opts);
        stats.influencers[r] = static_cast<std::uint32_t>(prior.size());
        if (prior.empty()) {
            continue;
        }
        const double share = 1.0 / static_cast<double>(prior.size());
        for (const auto j : prior) {
            const auto e = *graph.find_edge(j, records[r].subject);
            ++stats.propagated[e];
            stats.credit[e] += share;
        }
    }
    return stats;
}

}  // namespace socinf
