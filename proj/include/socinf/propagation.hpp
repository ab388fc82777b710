#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "socinf/action_log.hpp"
#include "socinf/graph.hpp"

namespace socinf {

struct PropagationOptions {
    // Co-performance credits both directions; timestamps are ignored.
    bool timestamp_free = false;
    // Only count j -> i when 0 < t_i - t_j <= window.
    std::optional<Timestamp> window;
};

// Per-edge counts, indexed by EdgeId of the scanned graph.
struct PropagationStats {
    std::vector<std::uint32_t> source_actions;  // a_j
    std::vector<std::uint32_t> target_actions;  // a_i
    std::vector<std::uint32_t> propagated;      // a_{j->i}: both acted, j strictly first
    std::vector<std::uint32_t> union_actions;   // |A_i u A_j|
    std::vector<double> credit;                 // sum over propagations of 1/|P_{i,a}|
    // |P_{i,a}| for each record of the log, aligned with ActionLog::records().
    std::vector<std::uint32_t> influencers;
};

// Throws InputError on a mixed-timestamp log, or on an untimed log unless
// `opts.timestamp_free` is set.
PropagationStats scan_propagation(const SocialGraph& graph, const ActionLog& log,
                                  const PropagationOptions& opts = {});

// Friends of the record's subject that count as its prior influencers.
std::vector<SubjectId> prior_influencers(const SocialGraph& graph, const ActionLog& log, const ActionRecord& rec,
                                         const PropagationOptions& opts);

}  // namespace socinf
