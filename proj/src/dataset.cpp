#include "socinf/dataset.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "socinf/error.hpp"

namespace socinf {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find('\t', start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return fields;
}

bool valid_id(std::string_view s) {
    return !s.empty() && s.find_first_of(" \t\r\n\v\f") == std::string_view::npos;
}

// Iterates data lines, skipping blanks and comments. Strips a trailing CR.
template <class Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (!view.empty() && view.back() == '\r') {
            view.remove_suffix(1);
        }
        if (view.empty() || view.front() == '#') {
            continue;
        }
        fn(view, lineno);
    }
}

}  // namespace

GraphLoad load_graph(std::istream& in) {
    IdMap ids;
    std::vector<Edge> edges;
    GraphLoad result;
    for_each_line(in, [&](std::string_view line, std::size_t lineno) {
        const auto fields = split_tabs(line);
        if (fields.size() != 2 || !valid_id(fields[0]) || !valid_id(fields[1])) {
            throw ParseError("expected '<source>\\t<target>'", lineno);
        }
        const auto source = ids.intern(fields[0]);
        const auto target = ids.intern(fields[1]);
        if (source == target) {
            ++result.self_loops;
            return;
        }
        edges.push_back({source, target});
    });
    if (ids.size() == 0) {
        throw EmptyDatasetError("empty after filtering: graph input has no edges");
    }
    const auto raw = edges.size();
    result.graph = SocialGraph(std::move(ids), std::move(edges));
    result.duplicate_edges = raw - result.graph.n_edges();
    return result;
}

ActionLoad load_actions(std::istream& in, const SocialGraph& graph) {
    IdMap actions;
    std::vector<ActionRecord> records;
    ActionLoad result;
    for_each_line(in, [&](std::string_view line, std::size_t lineno) {
        const auto fields = split_tabs(line);
        if (fields.size() < 2 || fields.size() > 3 || !valid_id(fields[0]) || !valid_id(fields[1])) {
            throw ParseError("expected '<subject>\\t<action>[\\t<timestamp>]'", lineno);
        }
        std::optional<Timestamp> ts;
        if (fields.size() == 3 && !fields[2].empty()) {
            Timestamp value = 0;
            const auto* first = fields[2].data();
            const auto* last = first + fields[2].size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc{} || ptr != last) {
                throw ParseError("timestamp '" + std::string(fields[2]) + "' is not a base-10 integer", lineno);
            }
            ts = value;
        }
        const auto subject = graph.subjects().find(fields[0]);
        if (!subject) {
            ++result.unknown_subjects;
            return;
        }
        records.push_back({*subject, actions.intern(fields[1]), ts});
    });
    const auto raw = records.size();
    result.log = ActionLog(std::move(actions), graph.n_subjects(), std::move(records));
    result.duplicate_records = raw - result.log.size();
    return result;
}

void write_graph(std::ostream& out, const SocialGraph& graph) {
    const auto& ids = graph.subjects();
    for (const auto& e : graph.edges()) {
        out << ids.name(e.source) << '\t' << ids.name(e.target) << '\n';
    }
}

void write_actions(std::ostream& out, const Dataset& data) {
    const auto& subjects = data.graph.subjects();
    const auto& actions = data.log.actions();
    for (const auto& r : data.log.records()) {
        out << subjects.name(r.subject) << '\t' << actions.name(r.action);
        if (r.timestamp) {
            out << '\t' << *r.timestamp;
        }
        out << '\n';
    }
}

std::string FilterReport::to_text() const {
    std::ostringstream os;
    os << "min_actions\t" << min_actions << '\n'
       << "rounds\t" << rounds << '\n'
       << "subjects_before\t" << subjects_before << '\n'
       << "subjects_after\t" << subjects_after << '\n'
       << "removed_few_actions\t" << removed_few_actions << '\n'
       << "removed_no_edges\t" << removed_no_edges << '\n'
       << "edges_before\t" << edges_before << '\n'
       << "edges_after\t" << edges_after << '\n'
       << "actions_before\t" << actions_before << '\n'
       << "actions_after\t" << actions_after << '\n'
       << "records_before\t" << records_before << '\n'
       << "records_after\t" << records_after << '\n';
    return os.str();
}

FilterResult filter_dataset(const SocialGraph& graph, const ActionLog& log, std::size_t min_actions) {
    const auto n = graph.n_subjects();
    FilterReport report;
    report.min_actions = min_actions;
    report.subjects_before = n;
    report.edges_before = graph.n_edges();
    report.records_before = log.size();
    report.actions_before = log.n_actions();

    std::vector<bool> keep(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        ++report.rounds;
        std::vector<std::size_t> degree(n, 0);
        for (const auto& e : graph.edges()) {
            if (keep[e.source] && keep[e.target]) {
                ++degree[e.source];
                ++degree[e.target];
            }
        }
        for (SubjectId s = 0; s < n; ++s) {
            if (!keep[s]) {
                continue;
            }
            if (log.count_of(s) < min_actions) {
                keep[s] = false;
                ++report.removed_few_actions;
                changed = true;
            } else if (degree[s] == 0) {
                keep[s] = false;
                ++report.removed_no_edges;
                changed = true;
            }
        }
    }

    std::vector<SubjectId> remap(n, 0);
    std::vector<std::string> names;
    for (SubjectId s = 0; s < n; ++s) {
        if (keep[s]) {
            remap[s] = static_cast<SubjectId>(names.size());
            names.push_back(graph.subjects().name(s));
        }
    }
    if (names.empty()) {
        throw EmptyDatasetError("empty after filtering");
    }
    std::vector<Edge> edges;
    for (const auto& e : graph.edges()) {
        if (keep[e.source] && keep[e.target]) {
            edges.push_back({remap[e.source], remap[e.target]});
        }
    }

    std::vector<bool> action_used(log.n_actions(), false);
    for (const auto& r : log.records()) {
        if (keep[r.subject]) {
            action_used[r.action] = true;
        }
    }
    std::vector<ActionId> action_remap(log.n_actions(), 0);
    std::vector<std::string> action_names;
    for (ActionId a = 0; a < log.n_actions(); ++a) {
        if (action_used[a]) {
            action_remap[a] = static_cast<ActionId>(action_names.size());
            action_names.push_back(log.actions().name(a));
        }
    }
    std::vector<ActionRecord> records;
    for (const auto& r : log.records()) {
        if (keep[r.subject]) {
            records.push_back({remap[r.subject], action_remap[r.action], r.timestamp});
        }
    }

    FilterResult result;
    const auto n_kept = names.size();
    result.data.graph = SocialGraph(IdMap(std::move(names)), std::move(edges));
    result.data.log = ActionLog(IdMap(std::move(action_names)), n_kept, std::move(records));
    report.subjects_after = result.data.graph.n_subjects();
    report.edges_after = result.data.graph.n_edges();
    report.records_after = result.data.log.size();
    report.actions_after = result.data.log.n_actions();
    result.report = report;
    return result;
}

std::vector<SubjectId> active_friends(const SocialGraph& graph, const ActionLog& log, SubjectId subject,
                                      ActionId action, std::optional<Timestamp> before) {
    std::vector<SubjectId> out;
    for (const auto friend_id : graph.in_neighbors(subject)) {
        const auto* rec = log.find(friend_id, action);
        if (rec == nullptr) {
            continue;
        }
        if (before && !(rec->timestamp && *rec->timestamp < *before)) {
            continue;
        }
        out.push_back(friend_id);
    }
    return out;
}

}  // namespace socinf
