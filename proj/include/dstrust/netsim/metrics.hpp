// Per-run results: delivery/overhead/throughput metrics, misclassification
// bookkeeping, and the raw conservation counters behind them.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>

namespace dstrust::sim {

struct MetricsReport {
    double pdr = 0.0;
    std::optional<double> nro;  // undefined when nothing was delivered
    double throughput_bps = 0.0;
    double false_positive_rate = 0.0;

    // Conservation counters; generated == delivered + dropped_by_attacker +
    // dropped_by_route_failure holds exactly in every completed run.
    std::int64_t generated = 0;
    std::int64_t delivered = 0;
    std::int64_t dropped_by_attacker = 0;
    std::int64_t dropped_by_route_failure = 0;

    std::int64_t control_packets = 0;  // routing + trust control transmissions
    std::uint64_t fusion_operations = 0;

    std::set<int> detected_attackers;          // attackers blacklisted by some node
    std::set<int> false_positives;             // honest nodes blacklisted by some node
    std::map<int, double> first_blacklist_time;  // node -> first time it was blacklisted
    std::map<int, double> first_carry_time;      // attacker -> first time it carried data
    std::map<int, int> blacklist_counts;         // node -> independent blacklist decisions

    bool conserved() const {
        return generated == delivered + dropped_by_attacker + dropped_by_route_failure;
    }
};

}  // namespace dstrust::sim
