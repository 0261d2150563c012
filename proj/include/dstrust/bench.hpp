// Recommendation-attack bench: sweeps the number of lying recommenders in a
// star topology and evaluates each aggregation scheme's combined trust of the
// target, for badmouthing (false low ratings against an honest target) and
// ballot-stuffing (false high ratings for a malicious target).
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dstrust/dst.hpp"

namespace dstrust::bench {

enum class Attack { Badmouth, BallotStuff };

enum class Scheme { DsTrust, LinearPool, SubjectiveLogic, EntropyProb };

// Which recommenders respond at sweep point k. AttackersOnly: the k liars
// respond and honest recommenders stay silent. All: every recommender
// responds, honest ones at honest_value.
enum class Participation { AttackersOnly, All };

struct SweepConfig {
    int n_recommenders = 20;
    Attack attack = Attack::Badmouth;
    double lie_value = 0.1;
    double honest_value = 0.9;            // used in Participation::All only
    double direct_trust_of_target = 0.9;  // requester's own record of the target
    double recommender_trust = 1.0;       // requester's trust in each recommender
    double gamma = 0.5;
    std::vector<Scheme> schemes{Scheme::DsTrust, Scheme::LinearPool,
                                Scheme::SubjectiveLogic, Scheme::EntropyProb};
    Participation participation = Participation::AttackersOnly;
    dst::TrustScalar ds_scalar = dst::TrustScalar::Belief;
    double sl_base_uncertainty = 0.1;  // uncertainty of opinions built from scalars
    double sl_base_rate = 0.5;
    double beta_pseudo_weight = 10.0;  // pseudo-evidence weight for Beta conversion

    // Attack-appropriate defaults: badmouth targets an honest node (direct 0.9,
    // lies 0.1), ballot-stuffing promotes a malicious one (direct 0.1, lies 0.9).
    static SweepConfig defaults(Attack attack);
    void validate() const;
};

struct SweepPoint {
    int attackers = 0;
    double trust = 0.0;
};

struct SweepCurve {
    Scheme scheme{};
    Attack attack{};
    std::vector<SweepPoint> points;            // n_recommenders + 1 entries
    std::optional<int> crossing;               // first point on the wrong side of gamma
};

// Evaluates one scheme at one sweep point (k attackers). Deterministic.
double evaluate_scheme(Scheme scheme, const SweepConfig& cfg, int attackers);

// Full sweep over k = 0..n for every configured scheme, crossing filled in.
std::vector<SweepCurve> run_sweep(const SweepConfig& cfg);

// First attacker count at which the attack has succeeded: trust at or below
// gamma under badmouthing, at or above gamma under ballot-stuffing.
std::optional<int> crossing_index(const SweepCurve& curve, double gamma, Attack attack);

// CSV with header scheme,attack,attackers,trust; six decimal places.
void write_curves(const std::vector<SweepCurve>& curves, std::ostream& os);
void write_curves(const std::vector<SweepCurve>& curves, const std::string& path);

// Resolved configuration and scheme wiring, for the audit record kept next to
// every output file.
void write_resolved_config(const SweepConfig& cfg, std::ostream& os);

std::string to_string(Scheme s);
std::string to_string(Attack a);
std::optional<Scheme> scheme_from_string(const std::string& name);
std::optional<Attack> attack_from_string(const std::string& name);

}  // namespace dstrust::bench
