#include "dstrust/bench.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "dstrust/aggregators.hpp"
#include "dstrust/trust.hpp"

namespace dstrust::bench {

namespace {

// Recommendation values reaching the requester at sweep point k.
std::vector<double> reported_values(const SweepConfig& cfg, int attackers) {
    std::vector<double> values(static_cast<std::size_t>(attackers), cfg.lie_value);
    if (cfg.participation == Participation::All) {
        values.resize(static_cast<std::size_t>(cfg.n_recommenders), cfg.honest_value);
    }
    return values;
}

double eval_ds_trust(const SweepConfig& cfg, const std::vector<double>& values) {
    dst::FusionInput in;
    in.direct_trust = cfg.direct_trust_of_target;
    in.gamma = cfg.gamma;
    in.recommendations.reserve(values.size());
    std::int32_t id = 0;
    for (double v : values)
        in.recommendations.push_back({id++, trust::indirect_trust(cfg.recommender_trust, v)});
    return dst::fuse(in, cfg.ds_scalar);
}

double eval_linear_pool(const SweepConfig& cfg, const std::vector<double>& values) {
    std::vector<double> idts;
    idts.reserve(values.size());
    for (double v : values) idts.push_back(trust::indirect_trust(cfg.recommender_trust, v));
    const auto pooled = agg::linear_pool(idts);
    if (!pooled) return cfg.direct_trust_of_target;  // no recommendations: direct only
    return agg::linear_combined(cfg.direct_trust_of_target, *pooled, agg::LinearPoolConfig{});
}

agg::Opinion opinion_from_scalar(double t, const SweepConfig& cfg) {
    const double u0 = cfg.sl_base_uncertainty;
    return {t * (1.0 - u0), (1.0 - t) * (1.0 - u0), u0, cfg.sl_base_rate};
}

double eval_subjective_logic(const SweepConfig& cfg, const std::vector<double>& values) {
    const agg::Opinion recommender = opinion_from_scalar(cfg.recommender_trust, cfg);
    agg::Opinion acc = opinion_from_scalar(cfg.direct_trust_of_target, cfg);
    for (double v : values)
        acc = agg::consensus(acc, agg::discount(recommender, opinion_from_scalar(v, cfg)));
    return agg::opinion_expectation(acc);
}

double eval_entropy_prob(const SweepConfig& cfg, const std::vector<double>& values) {
    const double w = cfg.beta_pseudo_weight;
    auto to_beta = [w](double p) { return agg::BetaEvidence{p * w + 1.0, (1.0 - p) * w + 1.0}; };

    // The requester's own observation is one propagation path; each
    // recommendation adds a path concatenated through the recommender.
    std::vector<agg::BetaEvidence> paths;
    paths.reserve(values.size() + 1);
    paths.push_back(to_beta(cfg.direct_trust_of_target));
    for (double v : values) paths.push_back(to_beta(agg::concat_prob(cfg.recommender_trust, v)));

    const auto merged = agg::multipath_merge(paths);
    const double p = agg::beta_expectation(*merged);
    // Signed entropy trust, remapped into (0,1) for comparability.
    return trust::entropy_trust(p);
}

}  // namespace

SweepConfig SweepConfig::defaults(Attack attack) {
    SweepConfig cfg;
    cfg.attack = attack;
    if (attack == Attack::Badmouth) {
        cfg.lie_value = 0.1;
        cfg.honest_value = 0.9;
        cfg.direct_trust_of_target = 0.9;
    } else {
        cfg.lie_value = 0.9;
        cfg.honest_value = 0.1;
        cfg.direct_trust_of_target = 0.1;
    }
    return cfg;
}

void SweepConfig::validate() const {
    if (n_recommenders < 0) throw std::invalid_argument("n_recommenders must be >= 0");
    auto unit = [](double v, const char* what) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument(std::string(what) + " outside [0,1]");
    };
    unit(lie_value, "lie_value");
    unit(honest_value, "honest_value");
    unit(direct_trust_of_target, "direct_trust_of_target");
    unit(recommender_trust, "recommender_trust");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma outside (0,1)");
    if (schemes.empty()) throw std::invalid_argument("no schemes selected");
}

double evaluate_scheme(Scheme scheme, const SweepConfig& cfg, int attackers) {
    const auto values = reported_values(cfg, attackers);
    switch (scheme) {
        case Scheme::DsTrust: return eval_ds_trust(cfg, values);
        case Scheme::LinearPool: return eval_linear_pool(cfg, values);
        case Scheme::SubjectiveLogic: return eval_subjective_logic(cfg, values);
        case Scheme::EntropyProb: return eval_entropy_prob(cfg, values);
    }
    throw std::invalid_argument("unknown scheme");
}

std::vector<SweepCurve> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<SweepCurve> curves;
    curves.reserve(cfg.schemes.size());
    for (Scheme scheme : cfg.schemes) {
        SweepCurve curve;
        curve.scheme = scheme;
        curve.attack = cfg.attack;
        curve.points.reserve(static_cast<std::size_t>(cfg.n_recommenders) + 1);
        for (int k = 0; k <= cfg.n_recommenders; ++k)
            curve.points.push_back({k, evaluate_scheme(scheme, cfg, k)});
        curve.crossing = crossing_index(curve, cfg.gamma, cfg.attack);
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::optional<int> crossing_index(const SweepCurve& curve, double gamma, Attack attack) {
    for (const auto& pt : curve.points) {
        // Boundary counts as attack success in both directions: a demoted honest
        // node is no longer strictly inside the trusted region, a promoted
        // malicious one has reached it.
        const bool crossed = attack == Attack::Badmouth ? pt.trust <= gamma : pt.trust >= gamma;
        if (crossed) return pt.attackers;
    }
    return std::nullopt;
}

void write_curves(const std::vector<SweepCurve>& curves, std::ostream& os) {
    os << "scheme,attack,attackers,trust\n";
    char buf[32];
    for (const auto& curve : curves) {
        for (const auto& pt : curve.points) {
            std::snprintf(buf, sizeof buf, "%.6f", pt.trust);
            os << to_string(curve.scheme) << ',' << to_string(curve.attack) << ','
               << pt.attackers << ',' << buf << '\n';
        }
    }
}

void write_curves(const std::vector<SweepCurve>& curves, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_curves(curves, os);
    if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

void write_resolved_config(const SweepConfig& cfg, std::ostream& os) {
    os << "n_recommenders = " << cfg.n_recommenders << '\n'
       << "attack = " << to_string(cfg.attack) << '\n'
       << "lie_value = " << cfg.lie_value << '\n'
       << "honest_value = " << cfg.honest_value << '\n'
       << "direct_trust_of_target = " << cfg.direct_trust_of_target << '\n'
       << "recommender_trust = " << cfg.recommender_trust << '\n'
       << "gamma = " << cfg.gamma << '\n'
       << "participation = "
       << (cfg.participation == Participation::AttackersOnly ? "attackers_only" : "all") << '\n'
       << "ds_scalar = "
       << (cfg.ds_scalar == dst::TrustScalar::Belief ? "belief" : "pignistic") << '\n'
       << "sl_base_uncertainty = " << cfg.sl_base_uncertainty << '\n'
       << "sl_base_rate = " << cfg.sl_base_rate << '\n'
       << "beta_pseudo_weight = " << cfg.beta_pseudo_weight << '\n';
    os << "schemes =";
    for (Scheme s : cfg.schemes) os << ' ' << to_string(s);
    os << '\n';
    os << "# wiring: ds_trust fuses the direct mass with one recommendation mass per\n"
          "# responder (dissimilarity against the direct record), folded pairwise.\n"
          "# linear_pool averages responses uniformly, then mixes 0.5/0.5 with direct.\n"
          "# subjective_logic folds consensus over the direct opinion and each\n"
          "# recommendation opinion discounted by the recommender opinion.\n"
          "# entropy_prob concatenates each response through the recommender, converts\n"
          "# every path (incl. the direct one) to Beta pseudo-evidence, sums, and maps\n"
          "# the posterior mean through the entropy trust function.\n";
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::DsTrust: return "ds_trust";
        case Scheme::LinearPool: return "linear_pool";
        case Scheme::SubjectiveLogic: return "subjective_logic";
        case Scheme::EntropyProb: return "entropy_prob";
    }
    return "?";
}

std::string to_string(Attack a) {
    return a == Attack::Badmouth ? "badmouth" : "ballot_stuff";
}

std::optional<Scheme> scheme_from_string(const std::string& name) {
    if (name == "ds_trust") return Scheme::DsTrust;
    if (name == "linear_pool") return Scheme::LinearPool;
    if (name == "subjective_logic") return Scheme::SubjectiveLogic;
    if (name == "entropy_prob") return Scheme::EntropyProb;
    return std::nullopt;
}

std::optional<Attack> attack_from_string(const std::string& name) {
    if (name == "badmouth") return Attack::Badmouth;
    if (name == "ballot_stuff") return Attack::BallotStuff;
    return std::nullopt;
}

}  // namespace dstrust::bench
