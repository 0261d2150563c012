// Direct-trust formation from watchdog observations: forwarding probability,
// binary-entropy trust map, exponential smoothing, recommendation weighting.
#pragma once

#include <cstdint>
#include <optional>

namespace dstrust::trust {

using NodeId = std::int32_t;

// Per-neighbor direct-trust state. Counters cover the current monitoring
// period only; smoothed_trust carries across periods.
struct TrustRecord {
    NodeId subject = -1;
    std::uint64_t packets_sent = 0;       // handed to subject for forwarding
    std::uint64_t packets_overheard = 0;  // forwardings confirmed by overhearing
    double smoothed_trust = 0.5;          // bootstrap: maximum-uncertainty value
    double last_update = 0.0;             // seconds, simulation time
};

struct TrustConfig {
    double gamma = 0.5;    // detection threshold, in (0,1)
    double period = 20.0;  // trust monitoring period, seconds
    double alpha = 0.5;    // smoothing factor, in [0,1]
    bool recommender_weighting = true;  // weigh recommendations by trust in recommender

    void validate() const;
};

// overheard/sent; no value when sent == 0 (no traffic, no evidence).
// Throws std::invalid_argument when overheard > sent.
std::optional<double> forwarding_probability(std::uint64_t sent, std::uint64_t overheard);

// Binary entropy of p in bits, with H(0) = H(1) = 0.
double binary_entropy(double p);

// Maps a forwarding probability onto [0,1] trust: 1 - 0.5*H(p) above the
// midpoint, 0.5*H(p) below it. Monotone nondecreasing, fixed point at 0.5.
double entropy_trust(double p_f);

// alpha*raw + (1-alpha)*previous, clamped to [0,1].
double smooth(double raw, double previous, double alpha);

// Indirect trust: recommendation discounted by trust in the recommender.
double indirect_trust(double trust_in_recommender, double recommended_trust);

// Applies one period's counters to a record: evidence present -> entropy map +
// smoothing; no evidence -> smoothed trust carried forward unchanged. Resets
// the period counters either way. Returns the raw (pre-smoothing) trust, if any.
std::optional<double> apply_period(TrustRecord& rec, const TrustConfig& cfg, double now);

}  // namespace dstrust::trust
