#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "socinf/baselines.hpp"
#include "socinf/error.hpp"
#include "socinf/propagation.hpp"
#include "test_util.hpp"

namespace socinf {
namespace {

using testing::dataset_from;
using testing::sid;

// Probability that at least one friend succeeds, by summing every outcome
// in which nobody does.
double brute_force_joint(const std::vector<double>& p) {
    double none = 0.0;
    const std::size_t n = p.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double prob = 1.0;
        bool anyone = false;
        for (std::size_t k = 0; k < n; ++k) {
            const bool succeeds = (mask >> k) & 1u;
            prob *= succeeds ? p[k] : 1.0 - p[k];
            anyone |= succeeds;
        }
        if (!anyone) {
            none += prob;
        }
    }
    return 1.0 - none;
}

TEST(JointProbability, MatchesEnumerationOnGrid) {
    std::vector<double> p;
    std::size_t checked = 0;
    for (std::size_t size = 0; size <= 4; ++size) {
        std::vector<int> idx(size, 0);
        while (true) {
            p.assign(size, 0.0);
            for (std::size_t k = 0; k < size; ++k) {
                p[k] = idx[k] / 10.0;
            }
            EXPECT_NEAR(combine_joint_probability(p), brute_force_joint(p), 1e-12);
            ++checked;
            std::size_t k = 0;
            while (k < size && ++idx[k] > 10) {
                idx[k++] = 0;
            }
            if (k == size) {
                break;
            }
        }
    }
    EXPECT_EQ(checked, 1u + 11u + 121u + 1331u + 14641u);
}

TEST(JointProbability, StarWeights) {
    const std::vector<double> w{0.7, 0.4, 0.2};
    EXPECT_NEAR(combine_joint_probability(w), 0.856, 1e-12);
}

TEST(JointProbability, ExactlyPermutationInvariant) {
    std::vector<double> p{0.13, 0.7, 0.01, 0.333, 0.9};
    std::sort(p.begin(), p.end());
    const double expected = combine_joint_probability(p);
    do {
        EXPECT_EQ(combine_joint_probability(p), expected);
    } while (std::next_permutation(p.begin(), p.end()));
}

TEST(JointProbability, Boundaries) {
    EXPECT_EQ(combine_joint_probability({}), 0.0);
    const std::vector<double> certain{1.0, 0.3};
    EXPECT_EQ(combine_joint_probability(certain), 1.0);
    const std::vector<double> zeros{0.0, 0.0};
    EXPECT_EQ(combine_joint_probability(zeros), 0.0);
}

TEST(JointProbability, RejectsOutOfRange) {
    const std::vector<double> high{1.2};
    const std::vector<double> low{-0.1};
    const std::vector<double> nan{std::nan("")};
    EXPECT_THROW(combine_joint_probability(high), DomainError);
    EXPECT_THROW(combine_joint_probability(low), DomainError);
    EXPECT_THROW(combine_joint_probability(nan), DomainError);
}

TEST(JointProbability, MonotoneInEachArgument) {
    for (int a = 0; a <= 10; ++a) {
        for (int b = 0; b < 10; ++b) {
            const std::vector<double> lo{a / 10.0, b / 10.0};
            const std::vector<double> hi{a / 10.0, (b + 1) / 10.0};
            EXPECT_LE(combine_joint_probability(lo), combine_joint_probability(hi));
        }
    }
}

TEST(LtPredict, StarActivates) {
    const auto d = dataset_from(testing::kStarGraph, "u1\ta\t1\n");
    const auto& g = d.graph;
    EdgeProbabilities probs{"BD", std::vector<double>(g.n_edges(), 0.0)};
    const auto u5 = sid(g, "u5");
    probs.p[*g.find_edge(sid(g, "u1"), u5)] = 0.7;
    probs.p[*g.find_edge(sid(g, "u2"), u5)] = 0.4;
    probs.p[*g.find_edge(sid(g, "u3"), u5)] = 0.9;
    probs.p[*g.find_edge(sid(g, "u4"), u5)] = 0.2;
    const std::vector<SubjectId> active{sid(g, "u1"), sid(g, "u2"), sid(g, "u4")};
    const auto pred = lt_predict(g, probs, active, u5, LtConfig{0.5});
    EXPECT_NEAR(pred.score, 0.856, 1e-12);
    EXPECT_TRUE(pred.active);
    EXPECT_FALSE(lt_predict(g, probs, active, u5, LtConfig{0.9}).active);
    EXPECT_EQ(lt_predict(g, probs, {}, u5, LtConfig{0.5}).score, 0.0);
}

TEST(LtPredict, ThresholdIsInclusive) {
    const auto d = dataset_from("j\ti\n", "j\ta\t1\n");
    EdgeProbabilities probs{"BD", {0.5}};
    const std::vector<SubjectId> active{sid(d.graph, "j")};
    EXPECT_TRUE(lt_predict(d.graph, probs, active, sid(d.graph, "i"), LtConfig{0.5}).active);
}

// u1 -> u3, u2 -> u3. Hand counts:
//   a1: u1@1 u3@2       -> u1 propagates, P = {u1}
//   a2: u1@1 u2@1 u3@3  -> both propagate, P = {u1, u2}
//   a3: u1@1            -> u1 only
//   a4: u2@5 u3@4       -> u3 first, nothing
//   a5: u3@1
const char* kHandGraph = "u1\tu3\nu2\tu3\n";
const char* kHandLog =
    "u1\ta1\t1\nu3\ta1\t2\n"
    "u1\ta2\t1\nu2\ta2\t1\nu3\ta2\t3\n"
    "u1\ta3\t1\n"
    "u2\ta4\t5\nu3\ta4\t4\n"
    "u3\ta5\t1\n";

TEST(Estimators, HandCountedRatios) {
    const auto d = dataset_from(kHandGraph, kHandLog);
    const auto& g = d.graph;
    const auto stats = scan_propagation(g, d.log);
    const auto e1 = *g.find_edge(sid(g, "u1"), sid(g, "u3"));
    const auto e2 = *g.find_edge(sid(g, "u2"), sid(g, "u3"));

    // a_u1 = 3, a_u2 = 2, a_u3 = 4; |A1 u A3| = 5, |A2 u A3| = 4.
    const auto bd = estimate_bd(stats);
    EXPECT_EQ(bd.tag, "BD");
    EXPECT_EQ(bd.p[e1], 2.0 / 3.0);
    EXPECT_EQ(bd.p[e2], 1.0 / 2.0);

    const auto ji = estimate_ji(stats);
    EXPECT_EQ(ji.p[e1], 2.0 / 5.0);
    EXPECT_EQ(ji.p[e2], 1.0 / 4.0);

    // Credits: u1 gets 1 + 1/2, u2 gets 1/2.
    const auto pcb = estimate_pc(stats, PcFlavor::Bernoulli);
    EXPECT_EQ(pcb.tag, "PC-B");
    EXPECT_EQ(pcb.p[e1], 1.5 / 3.0);
    EXPECT_EQ(pcb.p[e2], 0.5 / 2.0);

    const auto pcj = estimate_pc(stats, PcFlavor::Jaccard);
    EXPECT_EQ(pcj.tag, "PC-J");
    EXPECT_EQ(pcj.p[e1], 1.5 / 5.0);
    EXPECT_EQ(pcj.p[e2], 0.5 / 4.0);
}

TEST(Estimators, PartialCreditCollapsesWithSingleInfluencers) {
    // Every activation of u3 has exactly one prior-active friend.
    const auto d = dataset_from(kHandGraph,
                                "u1\ta1\t1\nu3\ta1\t2\n"
                                "u2\ta2\t1\nu3\ta2\t2\n"
                                "u1\ta3\t1\nu2\ta3\t3\nu3\ta3\t2\n"
                                "u1\ta4\t1\n");
    const auto stats = scan_propagation(d.graph, d.log);
    EXPECT_EQ(estimate_pc(stats, PcFlavor::Bernoulli).p, estimate_bd(stats).p);
    EXPECT_EQ(estimate_pc(stats, PcFlavor::Jaccard).p, estimate_ji(stats).p);
}

TEST(Estimators, ZeroDenominatorGivesZero) {
    const auto d = dataset_from("u1\tu2\nu2\tu1\n", "u1\ta\t1\n");
    const auto stats = scan_propagation(d.graph, d.log);
    const auto bd = estimate_bd(stats);
    EXPECT_EQ(bd.p[*d.graph.find_edge(sid(d.graph, "u2"), sid(d.graph, "u1"))], 0.0);
    for (const double p : estimate_ji(stats).p) {
        EXPECT_EQ(p, 0.0);
    }
}

TEST(Estimators, AllWithinUnitInterval) {
    const auto d = dataset_from(kHandGraph, kHandLog);
    const auto stats = scan_propagation(d.graph, d.log);
    for (const auto& probs : {estimate_bd(stats), estimate_ji(stats), estimate_pc(stats, PcFlavor::Bernoulli),
                              estimate_pc(stats, PcFlavor::Jaccard)}) {
        for (const double p : probs.p) {
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
        }
    }
}

TEST(EdgeProbabilityFile, RoundTripsExactly) {
    const auto d = dataset_from(kHandGraph, kHandLog);
    const auto bd = estimate_bd(scan_propagation(d.graph, d.log));
    std::stringstream buf;
    write_edge_probabilities(buf, d.graph, bd);
    const auto back = read_edge_probabilities(buf, d.graph, "BD");
    EXPECT_EQ(back.p, bd.p);
}

TEST(EdgeProbabilityFile, RejectsUnknownEdgeAndBadValue) {
    const auto d = dataset_from(kHandGraph, kHandLog);
    std::istringstream unknown("u3\tu1\t0.5\n");
    EXPECT_THROW(read_edge_probabilities(unknown, d.graph), ParseError);
    std::istringstream bad("u1\tu3\t1.5\n");
    EXPECT_THROW(read_edge_probabilities(bad, d.graph), ParseError);
    std::istringstream missing("u1\tu3\t0.25\n");
    const auto probs = read_edge_probabilities(missing, d.graph);
    EXPECT_EQ(probs.p[*d.graph.find_edge(sid(d.graph, "u2"), sid(d.graph, "u3"))], 0.0);
}

}  // namespace
}  // namespace socinf
