#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "socinf/action_log.hpp"
#include "socinf/graph.hpp"

namespace socinf {

struct Dataset {
    SocialGraph graph;
    ActionLog log;
};

struct GraphLoad {
    SocialGraph graph;
    std::size_t self_loops = 0;
    std::size_t duplicate_edges = 0;
};

struct ActionLoad {
    ActionLog log;
    std::size_t unknown_subjects = 0;
    std::size_t duplicate_records = 0;
};

// Reads `source<TAB>target` lines. Blank and `#` lines are skipped.
// Throws ParseError on malformed lines and InputError on empty input.
GraphLoad load_graph(std::istream& in);

// Reads `subject<TAB>action[<TAB>timestamp]` lines against `graph`'s ids.
ActionLoad load_actions(std::istream& in, const SocialGraph& graph);

void write_graph(std::ostream& out, const SocialGraph& graph);
void write_actions(std::ostream& out, const Dataset& data);

struct FilterReport {
    std::size_t subjects_before = 0;
    std::size_t edges_before = 0;
    std::size_t records_before = 0;
    std::size_t actions_before = 0;
    std::size_t subjects_after = 0;
    std::size_t edges_after = 0;
    std::size_t records_after = 0;
    std::size_t actions_after = 0;
    std::size_t removed_few_actions = 0;
    std::size_t removed_no_edges = 0;
    std::size_t rounds = 0;
    std::size_t min_actions = 0;

    // `key<TAB>value` lines.
    std::string to_text() const;
};

struct FilterResult {
    Dataset data;
    FilterReport report;
};

// Drops subjects with no incident edge or fewer than `min_actions` actions,
// repeating until nothing changes, then re-densifies subject and action ids.
// Throws EmptyDatasetError when nothing survives.
FilterResult filter_dataset(const SocialGraph& graph, const ActionLog& log, std::size_t min_actions);

// In-neighbors of `subject` that performed `action`; with `before`, only
// those with a timestamp strictly earlier.
std::vector<SubjectId> active_friends(const SocialGraph& graph, const ActionLog& log, SubjectId subject,
                                      ActionId action, std::optional<Timestamp> before = std::nullopt);

}  // namespace socinf
