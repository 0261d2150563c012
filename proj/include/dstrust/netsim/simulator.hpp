// Deterministic discrete-event simulator of a static wireless mesh running an
// on-demand distance-vector protocol with watchdog monitoring, evidence-fusion
// trust, packet-dropping attackers, blacklist broadcast, and metrics capture.
#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "dstrust/netsim/config.hpp"
#include "dstrust/netsim/metrics.hpp"
#include "dstrust/netsim/topology.hpp"
#include "dstrust/trust.hpp"

namespace dstrust::sim {

enum class PacketKind : std::uint8_t {
    Data,
    RouteRequest,
    RouteReply,
    RouteError,
    TrustRequest,
    TrustReply,
    Blacklist,
};

struct Packet {
    PacketKind kind = PacketKind::Data;
    int src = -1;        // flow source (Data) or originator (control)
    int dst = -1;        // flow destination / unicast target
    int flow = -1;
    std::int64_t uid = -1;   // data packet id
    std::int64_t tag = -1;   // request id / blacklist message id
    int subject = -1;        // trust target / blacklisted node / broken next hop
    int hops = 0;            // accumulated hop count (route control)
    double value = 0.0;      // recommendation value
};

struct RouteEntry {
    int next_hop = -1;
    int hops = 0;
};

struct NodeState {
    int id = -1;
    Role role = Role::Honest;
    double drop_prob = 0.0;
    std::mt19937_64 rng;

    std::map<int, trust::TrustRecord> records;  // downstream neighbor -> record
    std::set<int> blacklist;
    std::map<int, RouteEntry> routes;  // destination -> route

    // Route discovery bookkeeping.
    std::set<std::pair<int, std::int64_t>> seen_rreq;              // (origin, request id)
    std::map<std::pair<int, std::int64_t>, int> reverse_routes;    // toward the originator
    std::set<std::int64_t> seen_blacklist;

    // Watchdog: data packet id -> neighbor expected to forward it.
    std::map<std::int64_t, int> watchdog;

    // Data-plane position per flow: previous and next hop observed/used.
    std::map<int, std::pair<int, int>> flow_hops;

    // Open trust queries: target -> recommendations gathered so far.
    std::map<int, std::vector<std::pair<int, double>>> open_queries;
};

struct FlowState {
    FlowSpec spec;
    int index = -1;
    bool route_valid = false;
    bool discovering = false;
    std::int64_t request_id = -1;
    double adopted_time = -1.0;
    int adopted_hops = 0;
    int adopted_via = -1;
    std::int64_t buffered = 0;  // data packets waiting for a route
};

class Simulator {
public:
    Simulator(const SimConfig& cfg, std::uint64_t seed, std::ostream* trace = nullptr);

    // Drives the event loop to completion (generation stops at sim_time_s and
    // everything in flight drains). Returns the metrics for the run.
    MetricsReport run();

    // Single-step access for tests: processes the next event; false when idle.
    bool step();
    double now() const { return now_; }

    const Topology& topology() const { return topo_; }
    const NodeState& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const MetricsReport& metrics() const { return metrics_; }
    MetricsReport finalize();  // computes the derived metrics from the counters

private:
    enum class EventKind : std::uint8_t {
        Arrival,
        FlowPacket,
        TrustTick,
        FuseReady,
        RouteRequestTimeout,
        FlushFlow,
    };

    struct Event {
        double time = 0.0;
        std::uint64_t seq = 0;
        EventKind kind = EventKind::Arrival;
        int node = -1;  // receiver / owner
        int from = -1;  // sender (Arrival)
        Packet pkt;
        int flow = -1;
        std::int64_t tag = -1;  // request id (timeout), trust target (fusion)
    };

    struct EventOrder {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    // -- scheduling ----------------------------------------------------------
    void schedule(double time, Event ev);
    void transmit(int from, int to, const Packet& pkt);
    void broadcast(int from, const Packet& pkt);

    // -- handlers ------------------------------------------------------------
    void handle_event(const Event& ev);
    void handle_arrival(const Event& ev);
    void on_data(NodeState& self, int from, const Packet& pkt);
    void on_route_request(NodeState& self, int from, const Packet& pkt);
    void on_route_reply(NodeState& self, int from, const Packet& pkt);
    void on_route_error(NodeState& self, int from, const Packet& pkt);
    void on_trust_request(NodeState& self, int from, const Packet& pkt);
    void on_trust_reply(NodeState& self, int from, const Packet& pkt);
    void on_blacklist(NodeState& self, int from, const Packet& pkt);
    void on_flow_packet(int flow_index);
    void on_trust_tick(int node_id);
    void on_fuse_ready(int node_id, int target);
    void on_rreq_timeout(int flow_index, std::int64_t request_id);
    void on_flush_flow(int flow_index);

    // -- actions -------------------------------------------------------------
    void start_discovery(FlowState& flow);
    void send_data(FlowState& flow, std::int64_t uid);
    void decide(NodeState& self, int target, double trust_value);
    void invalidate_routes_via(NodeState& self, int bad);
    void observe_forwarding(int upstream, int forwarder, std::int64_t uid);
    void drop_data(const Packet& pkt, bool by_attacker);
    void trace(double t, int node, const char* what, std::int64_t detail = -1);

    bool trust_enabled() const { return cfg_.scheme != SimScheme::Baseline; }
    bool recommendations_enabled() const { return cfg_.scheme == SimScheme::DsTrust; }

    SimConfig cfg_;
    Topology topo_;
    std::vector<NodeState> nodes_;
    std::vector<FlowState> flows_;
    MetricsReport metrics_;
    std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
    std::uint64_t next_seq_ = 0;
    std::int64_t next_uid_ = 0;
    std::int64_t next_request_ = 0;
    std::int64_t next_blacklist_msg_ = 0;
    double now_ = 0.0;
    double data_hop_delay_ = 0.0;
    std::ostream* trace_ = nullptr;
};

// Places attackers and runs one simulation; fully deterministic in
// (config, seed).
MetricsReport run_simulation(const SimConfig& cfg, std::uint64_t seed,
                             std::ostream* trace = nullptr);

// The attacker placement used by run_simulation for this (config, seed):
// explicit specs when given, otherwise a uniform draw over nodes that are not
// flow endpoints.
std::vector<AttackerSpec> place_attackers(const SimConfig& cfg, std::uint64_t seed);

}  // namespace dstrust::sim
