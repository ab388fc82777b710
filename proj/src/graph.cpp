#include "socinf/graph.hpp"

#include <algorithm>

#include "socinf/error.hpp"

namespace socinf {

IdMap::IdMap(std::vector<std::string> names) {
    for (auto& n : names) {
        if (find(n)) {
            throw ContractError("duplicate identifier '" + n + "'");
        }
        intern(n);
    }
}

std::uint32_t IdMap::intern(std::string_view name) {
    if (auto it = index_.find(std::string(name)); it != index_.end()) {
        return it->second;
    }
    const auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

std::optional<std::uint32_t> IdMap::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

SocialGraph::SocialGraph(IdMap subjects, std::vector<Edge> edges)
    : subjects_(std::move(subjects)), edges_(std::move(edges)) {
    const auto n = subjects_.size();
    for (const auto& e : edges_) {
        if (e.source >= n || e.target >= n) {
            throw ContractError("edge endpoint out of range");
        }
        if (e.source == e.target) {
            throw ContractError("self-loop on subject '" + subjects_.name(e.source) + "'");
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.target != b.target ? a.target < b.target : a.source < b.source;
    });
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    in_offsets_.assign(n + 1, 0);
    out_offsets_.assign(n + 1, 0);
    in_sources_.reserve(edges_.size());
    for (const auto& e : edges_) {
        ++in_offsets_[e.target + 1];
        ++out_offsets_[e.source + 1];
        in_sources_.push_back(e.source);
    }
    for (std::size_t i = 0; i < n; ++i) {
        in_offsets_[i + 1] += in_offsets_[i];
        out_offsets_[i + 1] += out_offsets_[i];
    }
    out_targets_.resize(edges_.size());
    out_edge_ids_.resize(edges_.size());
    std::vector<EdgeId> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
    // Edges are target-major, so each out list fills in ascending target order.
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const auto slot = cursor[edges_[id].source]++;
        out_targets_[slot] = edges_[id].target;
        out_edge_ids_[slot] = id;
    }
}

std::span<const SubjectId> SocialGraph::in_neighbors(SubjectId target) const {
    return std::span<const SubjectId>(in_sources_).subspan(in_offsets_[target], in_degree(target));
}

std::span<const SubjectId> SocialGraph::out_neighbors(SubjectId source) const {
    return std::span<const SubjectId>(out_targets_).subspan(out_offsets_[source], out_degree(source));
}

std::span<const EdgeId> SocialGraph::out_edges(SubjectId source) const {
    return std::span<const EdgeId>(out_edge_ids_).subspan(out_offsets_[source], out_degree(source));
}

std::optional<EdgeId> SocialGraph::find_edge(SubjectId source, SubjectId target) const {
    if (source >= n_subjects() || target >= n_subjects()) {
        return std::nullopt;
    }
    const auto friends = in_neighbors(target);
    auto it = std::lower_bound(friends.begin(), friends.end(), source);
    if (it == friends.end() || *it != source) {
        return std::nullopt;
    }
    return static_cast<EdgeId>(in_offsets_[target] + (it - friends.begin()));
}

}  // namespace socinf
