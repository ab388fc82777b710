#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "socinf/action_log.hpp"
#include "socinf/baselines.hpp"
#include "socinf/graph.hpp"

namespace socinf {

enum class WorldKind { Independent, DependentAnd };

std::string to_string(WorldKind kind);

// Target i activates exactly when both j and k are already active.
struct AndPair {
    SubjectId first;
    SubjectId second;
    SubjectId target;

    friend bool operator==(const AndPair&, const AndPair&) = default;
};

struct PlantedWorld {
    SocialGraph graph;
    EdgeProbabilities true_probs;
    WorldKind kind = WorldKind::Independent;
    std::vector<AndPair> pairs;
    std::uint64_t seed = 0;
};

// Directed G(n, q) with q = avg_in_degree / (n - 1). Subjects are named
// u1..un. Throws ContractError unless n >= 2 and 0 < avg_in_degree < n.
SocialGraph generate_graph(std::size_t n, double avg_in_degree, std::uint64_t seed);

// Independent world with every edge probability drawn from U[p_min, p_max].
PlantedWorld make_world(SocialGraph graph, double p_min, double p_max, std::uint64_t seed);

// Up to `count` pairs, at most `per_target` per target and disjoint within a
// target. Pairs whose two friends are themselves connected are preferred.
std::vector<AndPair> plant_and_pairs(const SocialGraph& graph, std::size_t count, std::uint64_t seed,
                                     std::size_t per_target = 1);

// Discrete-round independent cascades, one per action: seeds at round 0 with
// probability `seed_fraction` each, then every newly active subject gets one
// chance per inactive out-neighbor. Timestamps are round indices.
ActionLog generate_ic_episodes(const PlantedWorld& world, std::size_t n_actions, double seed_fraction,
                               std::uint64_t seed);

// As above, except edges in `pairs` never fire on their own: a pair's target
// activates in the round after both of its friends are active.
ActionLog generate_dependent_episodes(const PlantedWorld& world, std::span<const AndPair> pairs,
                                      std::size_t n_actions, double seed_fraction, std::uint64_t seed);

struct SynthParams {
    std::size_t n_subjects = 200;
    double avg_in_degree = 8.0;
    double p_min = 0.0;
    double p_max = 0.2;
    std::size_t n_actions = 2000;
    double seed_fraction = 0.01;
    std::size_t n_pairs = 0;
    std::size_t pairs_per_target = 1;
};

struct SynthOutput {
    PlantedWorld world;
    ActionLog log;
    SynthParams params;
};

// Graph, planted probabilities, optional AND pairs, and episodes from one seed.
SynthOutput synthesize(WorldKind kind, const SynthParams& params, std::uint64_t seed);

// `key<TAB>value` header, then `pair` and `edge` lines with the planted truth.
void write_world_manifest(std::ostream& out, const SynthOutput& synth);

}  // namespace socinf
