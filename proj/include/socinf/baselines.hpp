#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "socinf/graph.hpp"
#include "socinf/propagation.hpp"

namespace socinf {

// Influence probability per edge, indexed by EdgeId of the graph it was fit on.
struct EdgeProbabilities {
    std::string tag;
    std::vector<double> p;
};

// 1 - prod(1 - p_k). Empty input gives 0. Throws DomainError for any
// element outside [0, 1].
double combine_joint_probability(std::span<const double> probs);

// p(j->i) = a_{j->i} / a_j.
EdgeProbabilities estimate_bd(const PropagationStats& stats);
// p(j->i) = a_{j->i} / |A_i u A_j|.
EdgeProbabilities estimate_ji(const PropagationStats& stats);

enum class PcFlavor { Bernoulli, Jaccard };

// Partial credit: each propagation of an action to i is worth 1/|P_{i,a}|,
// where P_{i,a} are i's friends active before i.
EdgeProbabilities estimate_pc(const PropagationStats& stats, PcFlavor flavor);

struct LtConfig {
    double theta = 0.5;
};

struct Prediction {
    double score;
    bool active;
};

// Joint probability of `friends` on `target` and the threshold decision
// (score >= theta). Friends without an edge into `target` are ignored.
Prediction lt_predict(const SocialGraph& graph, const EdgeProbabilities& probs, std::span<const SubjectId> friends,
                      SubjectId target, const LtConfig& cfg);

// Score only; shared by the LT and IC predictors.
double joint_score(const SocialGraph& graph, const EdgeProbabilities& probs, std::span<const SubjectId> friends,
                   SubjectId target);

// `<source>\t<target>\t<p>` per edge, p at 17 significant digits.
void write_edge_probabilities(std::ostream& out, const SocialGraph& graph, const EdgeProbabilities& probs);
// Edges absent from the stream get 0. Throws ParseError on malformed lines
// or edges the graph does not contain.
EdgeProbabilities read_edge_probabilities(std::istream& in, const SocialGraph& graph, std::string tag = {});

// "%.17g": round-trips every finite double.
std::string format_double(double value);

}  // namespace socinf
