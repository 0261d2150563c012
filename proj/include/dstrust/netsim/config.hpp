// Simulation configuration: key-value text file format plus programmatic
// defaults matching the standard 10x10 mesh scenario.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dstrust::sim {

enum class SimScheme { Baseline, DsTrust, DsTrustNoRecs };

enum class Role { Honest, Blackhole, Grayhole };

struct AttackerSpec {
    int node = -1;
    Role role = Role::Blackhole;
    double drop_prob = 0.5;  // grayhole only
};

struct FlowSpec {
    int src = -1;
    int dst = -1;
    double start_s = 1.0;
};

struct SimConfig {
    int grid_rows = 10;
    int grid_cols = 10;
    double spacing_m = 150.0;
    double range_m = 250.0;
    double data_rate_bps = 16000.0;
    int packet_size_bytes = 512;
    double packets_per_s = 4.0;
    double sim_time_s = 300.0;
    double gamma = 0.5;
    double period_s = 20.0;
    double alpha = 0.15;
    double p_miss = 0.0;
    SimScheme scheme = SimScheme::DsTrust;
    double hop_latency_s = 0.002;
    double rec_wait_s = 0.5;    // delay between trust request and fusion
    double rreq_timeout_s = 1.0;
    bool recommender_weighting = false;  // discount recommendations by trust in recommender

    // Explicit attacker placement; when empty, n_attackers nodes are placed
    // uniformly at random per seed (never on a flow endpoint).
    std::vector<AttackerSpec> attackers;
    int n_attackers = 0;
    Role attacker_role = Role::Blackhole;
    double drop_prob = 0.5;

    // Empty selects the default layout: one flow per grid row, leftmost column
    // to rightmost column, starts staggered by 0.1 s from 1.0 s.
    std::vector<FlowSpec> flows;

    void validate() const;
    std::vector<FlowSpec> resolved_flows() const;
};

std::string to_string(SimScheme s);
std::string to_string(Role r);
std::optional<SimScheme> scheme_from_string(const std::string& name);
std::optional<Role> role_from_string(const std::string& name);

// Text config: one `key = value` per line, '#' comments. Repeated keys
// `attacker = <node> <role> [drop_prob]` and `flow = <src> <dst> [start_s]`
// build the lists. Unknown keys are an error.
SimConfig parse_config(std::istream& is);
SimConfig load_config(const std::string& path);
void write_config(const SimConfig& cfg, std::ostream& os);

// Applies one `key=value` override (the CLI --set flag).
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value);

}  // namespace dstrust::sim
