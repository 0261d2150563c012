// Benchmark trust-aggregation primitives: linear opinion pooling, probability
// concatenation and Beta-evidence merging with the signed entropy map,
// subjective-logic opinions with discounting/consensus, and the logistic map.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dstrust::agg {

struct LinearPoolConfig {
    double direct_weight = 0.5;
    double indirect_weight = 0.5;

    void validate() const;  // weights must sum to 1
};

struct BetaEvidence {
    double alpha = 1.0;
    double beta = 1.0;
};

// Subjective-logic opinion: belief/disbelief/uncertainty summing to one,
// plus a base rate for the expectation.
struct Opinion {
    double b = 0.0;
    double d = 0.0;
    double u = 1.0;
    double a = 0.5;

    bool is_valid(double tol = 1e-9) const;
};

struct DogmaticConsensusError : std::runtime_error {
    DogmaticConsensusError()
        : std::runtime_error("consensus undefined: both opinions are dogmatic") {}
};

// Weighted average of recommendation trusts; weights are normalized to sum 1.
// Empty input carries no evidence. Uniform weights when `weights` is empty.
std::optional<double> linear_pool(std::span<const double> recommendations,
                                  std::span<const double> weights = {});

double linear_combined(double direct, double pooled_indirect, const LinearPoolConfig& cfg);

// Probability that the target behaves well through one recommender hop:
// p1*p2 + (1-p1)*(1-p2).
double concat_prob(double p_recommender, double p_target);

// Componentwise sum of Beta parameters over parallel paths; empty input
// carries no evidence.
std::optional<BetaEvidence> multipath_merge(std::span<const BetaEvidence> paths);

double beta_expectation(const BetaEvidence& e);

// Entropy trust map onto [-1,1]: 1-H(p) above the midpoint, H(p)-1 below.
double entropy_trust_signed(double p);

double opinion_expectation(const Opinion& o);

// Derives the opinion along a transitive path: the recommender's belief
// scales the target opinion, everything else drains into uncertainty.
Opinion discount(const Opinion& o_recommender, const Opinion& o_target);

// Merges two parallel opinions; base rate inherited from the first argument.
// Throws DogmaticConsensusError when both uncertainties are zero.
Opinion consensus(const Opinion& o1, const Opinion& o2);

// Logistic map 1 / (1 + exp(-x.beta)). Vector lengths must match.
double logit_map(std::span<const double> coefficients, std::span<const double> features);

}  // namespace dstrust::agg
