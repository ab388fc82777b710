#include "socinf/synth.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <tuple>
#include <string>

#include "socinf/error.hpp"
#include "socinf/rng.hpp"

namespace socinf {

std::string to_string(WorldKind kind) { return kind == WorldKind::Independent ? "independent" : "dependent-AND"; }

SocialGraph generate_graph(std::size_t n, double avg_in_degree, std::uint64_t seed) {
    if (n < 2 || !(avg_in_degree > 0.0) || !(avg_in_degree < static_cast<double>(n))) {
        throw ContractError("generate_graph needs n >= 2 and 0 < avg_in_degree < n");
    }
    const double q = std::min(1.0, avg_in_degree / static_cast<double>(n - 1));
    Rng rng(seed);
    std::vector<std::string> names;
    for (std::size_t s = 0; s < n; ++s) {
        names.push_back("u" + std::to_string(s + 1));
    }
    std::vector<Edge> edges;
    for (SubjectId j = 0; j < n; ++j) {
        for (SubjectId i = 0; i < n; ++i) {
            if (i != j && rng.uniform() < q) {
                edges.push_back({j, i});
            }
        }
    }
    return SocialGraph(IdMap(std::move(names)), std::move(edges));
}

PlantedWorld make_world(SocialGraph graph, double p_min, double p_max, std::uint64_t seed) {
    if (!(p_min >= 0.0 && p_min <= p_max && p_max <= 1.0)) {
        throw ContractError("edge probability range must satisfy 0 <= p_min <= p_max <= 1");
    }
    PlantedWorld world;
    world.seed = seed;
    Rng rng(seed);
    world.true_probs.tag = "true";
    world.true_probs.p.resize(graph.n_edges());
    for (auto& p : world.true_probs.p) {
        p = rng.uniform(p_min, p_max);
    }
    world.graph = std::move(graph);
    return world;
}

std::vector<AndPair> plant_and_pairs(const SocialGraph& graph, std::size_t count, std::uint64_t seed,
                                     std::size_t per_target) {
    if (per_target == 0) {
        throw ContractError("pairs per target must be positive");
    }
    Rng rng(seed);
    std::vector<SubjectId> targets(graph.n_subjects());
    for (SubjectId s = 0; s < targets.size(); ++s) {
        targets[s] = s;
    }
    rng.shuffle(std::span<SubjectId>(targets));
    std::vector<AndPair> pairs;
    std::vector<SubjectId> free;
    std::vector<AndPair> linked;
    std::vector<AndPair> any;
    for (const auto i : targets) {
        const auto friends = graph.in_neighbors(i);
        free.assign(friends.begin(), friends.end());
        // Disjoint pairs per target; linked friends first.
        for (std::size_t m = 0; m < per_target && pairs.size() < count && free.size() >= 2; ++m) {
            linked.clear();
            any.clear();
            for (std::size_t a = 0; a < free.size(); ++a) {
                for (std::size_t b = a + 1; b < free.size(); ++b) {
                    const AndPair pr{free[a], free[b], i};
                    any.push_back(pr);
                    if (graph.has_edge(free[a], free[b]) || graph.has_edge(free[b], free[a])) {
                        linked.push_back(pr);
                    }
                }
            }
            const auto& pool = linked.empty() ? any : linked;
            const auto pick = pool[rng.below(pool.size())];
            pairs.push_back(pick);
            std::erase(free, pick.first);
            std::erase(free, pick.second);
        }
        if (pairs.size() == count) {
            break;
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const AndPair& x, const AndPair& y) {
        return std::tie(x.target, x.first, x.second) < std::tie(y.target, y.first, y.second);
    });
    return pairs;
}

namespace {

struct CascadeRules {
    const PlantedWorld& world;
    // Edges that only fire as part of an AND pair.
    std::vector<bool> gated;
    // Pairs indexed by each of their two members.
    std::vector<std::vector<std::size_t>> pairs_of;
    std::span<const AndPair> pairs;
};

CascadeRules make_rules(const PlantedWorld& world, std::span<const AndPair> pairs) {
    const auto& g = world.graph;
    if (world.true_probs.p.size() != g.n_edges()) {
        throw ContractError("planted probabilities do not cover the graph's edges");
    }
    CascadeRules rules{world, std::vector<bool>(g.n_edges(), false), std::vector<std::vector<std::size_t>>(g.n_subjects()),
                       pairs};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& pr = pairs[k];
        const auto e1 = g.find_edge(pr.first, pr.target);
        const auto e2 = g.find_edge(pr.second, pr.target);
        if (!e1 || !e2 || pr.first == pr.second) {
            throw ContractError("AND pair references a missing edge");
        }
        rules.gated[*e1] = true;
        rules.gated[*e2] = true;
        rules.pairs_of[pr.first].push_back(k);
        rules.pairs_of[pr.second].push_back(k);
    }
    return rules;
}

ActionLog run_cascades(const CascadeRules& rules, std::size_t n_actions, double seed_fraction, std::uint64_t seed) {
    if (!(seed_fraction >= 0.0 && seed_fraction <= 1.0)) {
        throw ContractError("seed fraction must be in [0, 1]");
    }
    const auto& g = rules.world.graph;
    const auto& p = rules.world.true_probs.p;
    const auto n = g.n_subjects();
    std::vector<std::string> action_names;
    for (std::size_t a = 0; a < n_actions; ++a) {
        action_names.push_back("a" + std::to_string(a + 1));
    }
    std::vector<ActionRecord> records;
    std::vector<std::optional<Timestamp>> when(n);
    std::vector<SubjectId> frontier;
    std::vector<SubjectId> next;
    for (ActionId a = 0; a < n_actions; ++a) {
        Rng rng(derive_seed(seed, a));
        std::fill(when.begin(), when.end(), std::nullopt);
        frontier.clear();
        for (SubjectId s = 0; s < n; ++s) {
            if (rng.bernoulli(seed_fraction)) {
                when[s] = 0;
                frontier.push_back(s);
            }
        }
        for (Timestamp round = 1; !frontier.empty(); ++round) {
            next.clear();
            for (const auto j : frontier) {
                const auto targets = g.out_neighbors(j);
                const auto edges = g.out_edges(j);
                for (std::size_t k = 0; k < targets.size(); ++k) {
                    const auto i = targets[k];
                    if (rules.gated[edges[k]]) {
                        continue;
                    }
                    // Draw even when i is already active so the stream does
                    // not depend on activation order within a round.
                    const bool fires = rng.bernoulli(p[edges[k]]);
                    if (fires && !when[i]) {
                        when[i] = round;
                        next.push_back(i);
                    }
                }
                for (const auto pk : rules.pairs_of[j]) {
                    const auto& pr = rules.pairs[pk];
                    const auto other = pr.first == j ? pr.second : pr.first;
                    if (when[other] && *when[other] <= round - 1 && !when[pr.target]) {
                        when[pr.target] = round;
                        next.push_back(pr.target);
                    }
                }
            }
            frontier.swap(next);
        }
        for (SubjectId s = 0; s < n; ++s) {
            if (when[s]) {
                records.push_back({s, a, *when[s]});
            }
        }
    }
    return ActionLog(IdMap(std::move(action_names)), n, std::move(records));
}

}  // namespace

ActionLog generate_ic_episodes(const PlantedWorld& world, std::size_t n_actions, double seed_fraction,
                               std::uint64_t seed) {
    if (world.kind != WorldKind::Independent) {
        throw ContractError("generate_ic_episodes needs an independent world");
    }
    return run_cascades(make_rules(world, {}), n_actions, seed_fraction, seed);
}

ActionLog generate_dependent_episodes(const PlantedWorld& world, std::span<const AndPair> pairs,
                                      std::size_t n_actions, double seed_fraction, std::uint64_t seed) {
    return run_cascades(make_rules(world, pairs), n_actions, seed_fraction, seed);
}

SynthOutput synthesize(WorldKind kind, const SynthParams& params, std::uint64_t seed) {
    SynthOutput out;
    out.params = params;
    auto graph = generate_graph(params.n_subjects, params.avg_in_degree, derive_seed(seed, 0));
    out.world = make_world(std::move(graph), params.p_min, params.p_max, derive_seed(seed, 1));
    out.world.seed = seed;
    if (kind == WorldKind::DependentAnd) {
        out.world.kind = kind;
        out.world.pairs =
            plant_and_pairs(out.world.graph, params.n_pairs, derive_seed(seed, 2), params.pairs_per_target);
        out.log = generate_dependent_episodes(out.world, out.world.pairs, params.n_actions, params.seed_fraction,
                                              derive_seed(seed, 3));
    } else {
        out.log = generate_ic_episodes(out.world, params.n_actions, params.seed_fraction, derive_seed(seed, 3));
    }
    return out;
}

void write_world_manifest(std::ostream& out, const SynthOutput& synth) {
    const auto& w = synth.world;
    const auto& p = synth.params;
    const auto& ids = w.graph.subjects();
    out << "kind\t" << to_string(w.kind) << '\n'
        << "seed\t" << w.seed << '\n'
        << "n_subjects\t" << p.n_subjects << '\n'
        << "avg_in_degree\t" << format_double(p.avg_in_degree) << '\n'
        << "p_min\t" << format_double(p.p_min) << '\n'
        << "p_max\t" << format_double(p.p_max) << '\n'
        << "n_actions\t" << p.n_actions << '\n'
        << "seed_fraction\t" << format_double(p.seed_fraction) << '\n'
        << "n_pairs\t" << w.pairs.size() << '\n'
        << "pairs_per_target\t" << p.pairs_per_target << '\n'
        << "edges\t" << w.graph.n_edges() << '\n'
        << "records\t" << synth.log.size() << '\n';
    for (const auto& pr : w.pairs) {
        out << "pair\t" << ids.name(pr.first) << '\t' << ids.name(pr.second) << '\t' << ids.name(pr.target) << '\n';
    }
    for (EdgeId e = 0; e < w.graph.n_edges(); ++e) {
        const auto& edge = w.graph.edge(e);
        out << "edge\t" << ids.name(edge.source) << '\t' << ids.name(edge.target) << '\t'
            << format_double(w.true_probs.p[e]) << '\n';
    }
}

}  // namespace socinf
