#include "dstrust/aggregators.hpp"

#include <cmath>
#include <numeric>

namespace dstrust::agg {

namespace {

void require_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

}  // namespace

void LinearPoolConfig::validate() const {
    if (!(direct_weight >= 0.0 && indirect_weight >= 0.0))
        throw std::invalid_argument("pool weights must be nonnegative");
    if (std::abs(direct_weight + indirect_weight - 1.0) > 1e-9)
        throw std::invalid_argument("direct and indirect weights must sum to 1");
}

bool Opinion::is_valid(double tol) const {
    const bool in_range = b >= 0.0 && b <= 1.0 && d >= 0.0 && d <= 1.0 && u >= 0.0 &&
                          u <= 1.0 && a >= 0.0 && a <= 1.0;
    return in_range && std::abs(b + d + u - 1.0) <= tol;
}

std::optional<double> linear_pool(std::span<const double> recommendations,
                                  std::span<const double> weights) {
    if (recommendations.empty()) return std::nullopt;
    if (!weights.empty() && weights.size() != recommendations.size())
        throw std::invalid_argument("weight count does not match recommendation count");

    double wsum = 0.0;
    if (weights.empty()) {
        wsum = static_cast<double>(recommendations.size());
    } else {
        for (double w : weights) {
            if (w < 0.0) throw std::invalid_argument("negative pool weight");
            wsum += w;
        }
        if (wsum <= 0.0) throw std::invalid_argument("pool weights sum to zero");
    }

    double acc = 0.0;
    for (std::size_t i = 0; i < recommendations.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        acc += (w / wsum) * recommendations[i];
    }
    return acc;
}

double linear_combined(double direct, double pooled_indirect, const LinearPoolConfig& cfg) {
    require_unit(direct, "direct trust");
    require_unit(pooled_indirect, "pooled indirect trust");
    cfg.validate();
    return cfg.direct_weight * direct + cfg.indirect_weight * pooled_indirect;
}

double concat_prob(double p_recommender, double p_target) {
    require_unit(p_recommender, "recommender probability");
    require_unit(p_target, "target probability");
    return p_recommender * p_target + (1.0 - p_recommender) * (1.0 - p_target);
}

std::optional<BetaEvidence> multipath_merge(std::span<const BetaEvidence> paths) {
    if (paths.empty()) return std::nullopt;
    BetaEvidence out{0.0, 0.0};
    for (const auto& p : paths) {
        if (!(p.alpha > 0.0 && p.beta > 0.0))
            throw std::invalid_argument("Beta parameters must be positive");
        out.alpha += p.alpha;
        out.beta += p.beta;
    }
    return out;
}

double beta_expectation(const BetaEvidence& e) {
    if (!(e.alpha > 0.0 && e.beta > 0.0))
        throw std::invalid_argument("Beta parameters must be positive");
    return e.alpha / (e.alpha + e.beta);
}

double entropy_trust_signed(double p) {
    require_unit(p, "probability");
    double h = 0.0;
    if (p != 0.0 && p != 1.0) h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    return p >= 0.5 ? 1.0 - h : h - 1.0;
}

double opinion_expectation(const Opinion& o) {
    if (!o.is_valid()) throw std::invalid_argument("invalid opinion");
    return o.b + o.a * o.u;
}

Opinion discount(const Opinion& o1, const Opinion& o2) {
    if (!o1.is_valid() || !o2.is_valid()) throw std::invalid_argument("invalid opinion");
    Opinion out;
    out.b = o1.b * o2.b;
    out.d = o1.b * o2.d;
    out.u = o1.d + o1.u + o1.b * o2.u;
    out.a = o2.a;
    return out;
}

Opinion consensus(const Opinion& o1, const Opinion& o2) {
    if (!o1.is_valid() || !o2.is_valid()) throw std::invalid_argument("invalid opinion");
    const double kappa = o1.u + o2.u - o1.u * o2.u;
    if (kappa <= 1e-12) throw DogmaticConsensusError{};
    Opinion out;
    out.b = (o1.b * o2.u + o2.b * o1.u) / kappa;
    out.d = (o1.d * o2.u + o2.d * o1.u) / kappa;
    out.u = (o1.u * o2.u) / kappa;
    out.a = o1.a;
    return out;
}

double logit_map(std::span<const double> coefficients, std::span<const double> features) {
    if (coefficients.size() != features.size())
        throw std::invalid_argument("coefficient and feature lengths differ");
    const double z = std::inner_product(coefficients.begin(), coefficients.end(),
                                        features.begin(), 0.0);
    return 1.0 / (1.0 + std::exp(-z));
}

}  // namespace dstrust::agg
