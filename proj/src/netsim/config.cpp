#include "dstrust/netsim/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dstrust::sim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
    }
}

int to_int(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for " + key + ": '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw std::invalid_argument("config: bad boolean for " + key + ": '" + v + "'");
}

}  // namespace

void SimConfig::validate() const {
    if (grid_rows < 1 || grid_cols < 1) throw std::invalid_argument("grid must be at least 1x1");
    if (!(spacing_m > 0.0) || !(range_m > 0.0))
        throw std::invalid_argument("spacing_m and range_m must be positive");
    if (!(data_rate_bps > 0.0)) throw std::invalid_argument("data_rate_bps must be positive");
    if (packet_size_bytes < 1) throw std::invalid_argument("packet_size_bytes must be positive");
    if (!(packets_per_s > 0.0)) throw std::invalid_argument("packets_per_s must be positive");
    if (!(sim_time_s > 0.0)) throw std::invalid_argument("sim_time_s must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma outside (0,1)");
    if (!(period_s > 0.0)) throw std::invalid_argument("period_s must be positive");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha outside [0,1]");
    if (!(p_miss >= 0.0 && p_miss < 1.0)) throw std::invalid_argument("p_miss outside [0,1)");
    if (!(drop_prob >= 0.0 && drop_prob <= 1.0))
        throw std::invalid_argument("drop_prob outside [0,1]");
    if (n_attackers < 0) throw std::invalid_argument("n_attackers must be >= 0");
    const int n = grid_rows * grid_cols;
    for (const auto& a : attackers) {
        if (a.node < 0 || a.node >= n) throw std::invalid_argument("attacker node out of range");
        if (!(a.drop_prob >= 0.0 && a.drop_prob <= 1.0))
            throw std::invalid_argument("attacker drop_prob outside [0,1]");
    }
    for (const auto& f : resolved_flows()) {
        if (f.src < 0 || f.src >= n || f.dst < 0 || f.dst >= n || f.src == f.dst)
            throw std::invalid_argument("flow endpoints out of range");
        if (f.start_s < 0.0) throw std::invalid_argument("flow start_s must be >= 0");
    }
}

std::vector<FlowSpec> SimConfig::resolved_flows() const {
    if (!flows.empty()) return flows;
    std::vector<FlowSpec> out;
    out.reserve(static_cast<std::size_t>(grid_rows));
    for (int r = 0; r < grid_rows; ++r) {
        FlowSpec f;
        f.src = r * grid_cols;
        f.dst = r * grid_cols + grid_cols - 1;
        f.start_s = 1.0 + 0.1 * r;
        out.push_back(f);
    }
    return out;
}

std::string to_string(SimScheme s) {
    switch (s) {
        case SimScheme::Baseline: return "baseline";
        case SimScheme::DsTrust: return "ds_trust";
        case SimScheme::DsTrustNoRecs: return "ds_trust_no_recs";
    }
    return "?";
}

std::string to_string(Role r) {
    switch (r) {
        case Role::Honest: return "honest";
        case Role::Blackhole: return "blackhole";
        case Role::Grayhole: return "grayhole";
    }
    return "?";
}

std::optional<SimScheme> scheme_from_string(const std::string& name) {
    if (name == "baseline") return SimScheme::Baseline;
    if (name == "ds_trust") return SimScheme::DsTrust;
    if (name == "ds_trust_no_recs") return SimScheme::DsTrustNoRecs;
    return std::nullopt;
}

std::optional<Role> role_from_string(const std::string& name) {
    if (name == "honest") return Role::Honest;
    if (name == "blackhole") return Role::Blackhole;
    if (name == "grayhole") return Role::Grayhole;
    return std::nullopt;
}

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "grid_rows") cfg.grid_rows = to_int(value, key);
    else if (key == "grid_cols") cfg.grid_cols = to_int(value, key);
    else if (key == "spacing_m") cfg.spacing_m = to_double(value, key);
    else if (key == "range_m") cfg.range_m = to_double(value, key);
    else if (key == "data_rate_bps") cfg.data_rate_bps = to_double(value, key);
    else if (key == "packet_size_bytes") cfg.packet_size_bytes = to_int(value, key);
    else if (key == "packets_per_s") cfg.packets_per_s = to_double(value, key);
    else if (key == "sim_time_s") cfg.sim_time_s = to_double(value, key);
    else if (key == "gamma") cfg.gamma = to_double(value, key);
    else if (key == "period_s") cfg.period_s = to_double(value, key);
    else if (key == "alpha") cfg.alpha = to_double(value, key);
    else if (key == "p_miss") cfg.p_miss = to_double(value, key);
    else if (key == "hop_latency_s") cfg.hop_latency_s = to_double(value, key);
    else if (key == "rec_wait_s") cfg.rec_wait_s = to_double(value, key);
    else if (key == "rreq_timeout_s") cfg.rreq_timeout_s = to_double(value, key);
    else if (key == "recommender_weighting") cfg.recommender_weighting = to_bool(value, key);
    else if (key == "n_attackers") cfg.n_attackers = to_int(value, key);
    else if (key == "drop_prob") cfg.drop_prob = to_double(value, key);
    else if (key == "scheme") {
        const auto s = scheme_from_string(value);
        if (!s) throw std::invalid_argument("config: unknown scheme '" + value + "'");
        cfg.scheme = *s;
    } else if (key == "attacker_role") {
        const auto r = role_from_string(value);
        if (!r || *r == Role::Honest)
            throw std::invalid_argument("config: bad attacker_role '" + value + "'");
        cfg.attacker_role = *r;
    } else if (key == "attacker") {
        std::istringstream ss(value);
        AttackerSpec a;
        std::string role;
        if (!(ss >> a.node >> role))
            throw std::invalid_argument("config: attacker needs '<node> <role> [drop_prob]'");
        const auto r = role_from_string(role);
        if (!r || *r == Role::Honest)
            throw std::invalid_argument("config: bad attacker role '" + role + "'");
        a.role = *r;
        if (!(ss >> a.drop_prob)) a.drop_prob = cfg.drop_prob;
        cfg.attackers.push_back(a);
    } else if (key == "flow") {
        std::istringstream ss(value);
        FlowSpec f;
        if (!(ss >> f.src >> f.dst))
            throw std::invalid_argument("config: flow needs '<src> <dst> [start_s]'");
        if (!(ss >> f.start_s)) f.start_s = 1.0;
        cfg.flows.push_back(f);
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

SimConfig parse_config(std::istream& is) {
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(is);
}

void write_config(const SimConfig& cfg, std::ostream& os) {
    os << "grid_rows = " << cfg.grid_rows << '\n'
       << "grid_cols = " << cfg.grid_cols << '\n'
       << "spacing_m = " << cfg.spacing_m << '\n'
       << "range_m = " << cfg.range_m << '\n'
       << "data_rate_bps = " << cfg.data_rate_bps << '\n'
       << "packet_size_bytes = " << cfg.packet_size_bytes << '\n'
       << "packets_per_s = " << cfg.packets_per_s << '\n'
       << "sim_time_s = " << cfg.sim_time_s << '\n'
       << "gamma = " << cfg.gamma << '\n'
       << "period_s = " << cfg.period_s << '\n'
       << "alpha = " << cfg.alpha << '\n'
       << "p_miss = " << cfg.p_miss << '\n'
       << "scheme = " << to_string(cfg.scheme) << '\n'
       << "hop_latency_s = " << cfg.hop_latency_s << '\n'
       << "rec_wait_s = " << cfg.rec_wait_s << '\n'
       << "rreq_timeout_s = " << cfg.rreq_timeout_s << '\n'
       << "recommender_weighting = " << (cfg.recommender_weighting ? "true" : "false") << '\n'
       << "n_attackers = " << cfg.n_attackers << '\n'
       << "attacker_role = " << to_string(cfg.attacker_role) << '\n'
       << "drop_prob = " << cfg.drop_prob << '\n';
    for (const auto& a : cfg.attackers)
        os << "attacker = " << a.node << ' ' << to_string(a.role) << ' ' << a.drop_prob << '\n';
    for (const auto& f : cfg.flows)
        os << "flow = " << f.src << ' ' << f.dst << ' ' << f.start_s << '\n';
}

}  // namespace dstrust::sim
