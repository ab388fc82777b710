#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace socinf {

// Dense subject index in [0, N).
using SubjectId = std::uint32_t;
// Dense action index in [0, |A|).
using ActionId = std::uint32_t;
// Position of an edge in SocialGraph::edges().
using EdgeId = std::uint32_t;

// Bijection between original string identifiers and dense indices.
class IdMap {
public:
    IdMap() = default;
    explicit IdMap(std::vector<std::string> names);

    // Returns the existing index or appends a new one.
    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;

    const std::string& name(std::uint32_t id) const { return names_[id]; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct Edge {
    SubjectId source;
    SubjectId target;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed friendship graph. Edge (j -> i) means j can influence i, so the
// friends of i are its in-neighbors. Edges are stored sorted by
// (target, source); in-neighbor lists are contiguous slices of that order.
class SocialGraph {
public:
    SocialGraph() = default;

    // Builds from dense endpoints. Duplicates are collapsed; self-loops and
    // out-of-range endpoints throw ContractError.
    SocialGraph(IdMap subjects, std::vector<Edge> edges);

    std::size_t n_subjects() const { return subjects_.size(); }
    std::size_t n_edges() const { return edges_.size(); }

    const IdMap& subjects() const { return subjects_; }
    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    // Friends of `target`, ascending.
    std::span<const SubjectId> in_neighbors(SubjectId target) const;
    // Edge ids whose target is `target`, aligned with in_neighbors().
    std::pair<EdgeId, EdgeId> in_edge_range(SubjectId target) const {
        return {in_offsets_[target], in_offsets_[target + 1]};
    }
    // Subjects that `source` can influence, ascending.
    std::span<const SubjectId> out_neighbors(SubjectId source) const;
    // Edge ids whose source is `source`, aligned with out_neighbors().
    std::span<const EdgeId> out_edges(SubjectId source) const;

    std::optional<EdgeId> find_edge(SubjectId source, SubjectId target) const;
    bool has_edge(SubjectId source, SubjectId target) const { return find_edge(source, target).has_value(); }

    std::size_t in_degree(SubjectId s) const { return in_offsets_[s + 1] - in_offsets_[s]; }
    std::size_t out_degree(SubjectId s) const { return out_offsets_[s + 1] - out_offsets_[s]; }

private:
    IdMap subjects_;
    std::vector<Edge> edges_;
    std::vector<SubjectId> in_sources_;
    std::vector<EdgeId> in_offsets_;
    std::vector<SubjectId> out_targets_;
    std::vector<EdgeId> out_edge_ids_;
    std::vector<EdgeId> out_offsets_;
};

}  // namespace socinf
