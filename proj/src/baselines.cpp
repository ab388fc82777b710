#include "socinf/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "socinf/error.hpp"

namespace socinf {

namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

double combine_joint_probability(std::span<const double> probs) {
    // Multiplying in sorted order makes the result exactly order-independent.
    std::vector<double> miss;
    miss.reserve(probs.size());
    for (const double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DomainError("probability " + format_double(p) + " outside [0, 1]");
        }
        miss.push_back(1.0 - p);
    }
    std::sort(miss.begin(), miss.end());
    double product = 1.0;
    for (const double m : miss) {
        product *= m;
    }
    return 1.0 - product;
}

EdgeProbabilities estimate_bd(const PropagationStats& stats) {
    EdgeProbabilities out{"BD", std::vector<double>(stats.propagated.size())};
    for (std::size_t e = 0; e < out.p.size(); ++e) {
        out.p[e] = ratio(stats.propagated[e], stats.source_actions[e]);
    }
    return out;
}

EdgeProbabilities estimate_ji(const PropagationStats& stats) {
    EdgeProbabilities out{"JI", std::vector<double>(stats.propagated.size())};
    for (std::size_t e = 0; e < out.p.size(); ++e) {
        out.p[e] = ratio(stats.propagated[e], stats.union_actions[e]);
    }
    return out;
}

EdgeProbabilities estimate_pc(const PropagationStats& stats, PcFlavor flavor) {
    const bool bernoulli = flavor == PcFlavor::Bernoulli;
    EdgeProbabilities out{bernoulli ? "PC-B" : "PC-J", std::vector<double>(stats.credit.size())};
    for (std::size_t e = 0; e < out.p.size(); ++e) {
        const double den = bernoulli ? stats.source_actions[e] : stats.union_actions[e];
        out.p[e] = ratio(stats.credit[e], den);
    }
    return out;
}

double joint_score(const SocialGraph& graph, const EdgeProbabilities& probs, std::span<const SubjectId> friends,
                   SubjectId target) {
    double miss = 1.0;
    for (const auto j : friends) {
        if (const auto e = graph.find_edge(j, target)) {
            const double p = probs.p[*e];
            if (!(p >= 0.0 && p <= 1.0)) {
                throw DomainError("edge probability outside [0, 1]");
            }
            miss *= 1.0 - p;
        }
    }
    return 1.0 - miss;
}

Prediction lt_predict(const SocialGraph& graph, const EdgeProbabilities& probs, std::span<const SubjectId> friends,
                      SubjectId target, const LtConfig& cfg) {
    const double score = joint_score(graph, probs, friends, target);
    return {score, score >= cfg.theta};
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_edge_probabilities(std::ostream& out, const SocialGraph& graph, const EdgeProbabilities& probs) {
    const auto& ids = graph.subjects();
    for (EdgeId e = 0; e < graph.n_edges(); ++e) {
        const auto& edge = graph.edge(e);
        out << ids.name(edge.source) << '\t' << ids.name(edge.target) << '\t' << format_double(probs.p[e]) << '\n';
    }
}

EdgeProbabilities read_edge_probabilities(std::istream& in, const SocialGraph& graph, std::string tag) {
    EdgeProbabilities out{std::move(tag), std::vector<double>(graph.n_edges(), 0.0)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string source;
        std::string target;
        std::string value;
        if (!std::getline(fields, source, '\t') || !std::getline(fields, target, '\t') ||
            !std::getline(fields, value, '\t')) {
            throw ParseError("expected '<source>\\t<target>\\t<p>'", lineno);
        }
        const auto s = graph.subjects().find(source);
        const auto t = graph.subjects().find(target);
        const auto e = (s && t) ? graph.find_edge(*s, *t) : std::nullopt;
        if (!e) {
            throw ParseError("edge " + source + " -> " + target + " is not in the graph", lineno);
        }
        std::size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size() || !(p >= 0.0 && p <= 1.0)) {
            throw ParseError("invalid probability '" + value + "'", lineno);
        }
        out.p[*e] = p;
    }
    return out;
}

}  // namespace socinf
