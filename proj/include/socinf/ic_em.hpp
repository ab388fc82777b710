#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "socinf/action_log.hpp"
#include "socinf/baselines.hpp"
#include "socinf/graph.hpp"

namespace socinf {

// Time-ordered activations of one action.
struct Episode {
    ActionId action = 0;
    std::vector<std::pair<SubjectId, Timestamp>> activations;
};

// One episode per action. Throws InputError unless every record is timed.
std::vector<Episode> episodes_from_log(const ActionLog& log);

struct IcEmConfig {
    std::size_t max_iters = 1000;
    double ll_tolerance = 1e-9;
    double init_p = 0.5;
};

struct IcEmResult {
    EdgeProbabilities probs;
    // Log-likelihood at the initial point, then after every EM iteration.
    std::vector<double> ll_trace;
    std::size_t iterations = 0;
    bool converged = false;
};

// Independent-cascade edge probabilities by expectation maximization.
//
// A friend j is a trial for edge (j -> i) in every episode where j is active
// and i is either inactive (failure) or activates strictly after j. When i
// activates with prior-active friends F, each j in F receives responsibility
// p_ji / (1 - prod_{k in F}(1 - p_ki)); the M-step sets p_ji to the mean
// responsibility over all of the edge's trials. Edges with no trial are 0.
IcEmResult ic_em_fit(std::span<const Episode> episodes, const SocialGraph& graph, const IcEmConfig& cfg = {});

// Joint score 1 - prod(1 - p) over IC-fitted probabilities, active iff
// score >= threshold.
Prediction ic_predict(const SocialGraph& graph, const EdgeProbabilities& probs, std::span<const SubjectId> friends,
                      SubjectId target, double threshold);

}  // namespace socinf
