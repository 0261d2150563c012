#include "dstrust/netsim/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>

#include "dstrust/dst.hpp"
#include "dstrust/rng.hpp"

namespace dstrust::sim {

namespace {

constexpr std::uint64_t kPlacementStream = 0xA77ACCE5ull;
constexpr std::uint64_t kNodeStreamBase = 0x4E0DE000ull;

double uniform01(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace

std::vector<AttackerSpec> place_attackers(const SimConfig& cfg, std::uint64_t seed) {
    if (!cfg.attackers.empty() || cfg.n_attackers == 0) return cfg.attackers;

    std::set<int> reserved;
    for (const auto& f : cfg.resolved_flows()) {
        reserved.insert(f.src);
        reserved.insert(f.dst);
    }
    std::vector<int> candidates;
    const int n = cfg.grid_rows * cfg.grid_cols;
    for (int id = 0; id < n; ++id)
        if (!reserved.count(id)) candidates.push_back(id);
    if (static_cast<int>(candidates.size()) < cfg.n_attackers)
        throw std::invalid_argument("not enough non-endpoint nodes for attacker placement");

    auto rng = rng::make_engine(seed, kPlacementStream);
    std::vector<AttackerSpec> out;
    out.reserve(static_cast<std::size_t>(cfg.n_attackers));
    for (int i = 0; i < cfg.n_attackers; ++i) {  // partial Fisher-Yates
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                        candidates.size() - 1);
        std::swap(candidates[static_cast<std::size_t>(i)], candidates[pick(rng)]);
        AttackerSpec a;
        a.node = candidates[static_cast<std::size_t>(i)];
        a.role = cfg.attacker_role;
        a.drop_prob = cfg.drop_prob;
        out.push_back(a);
    }
    std::sort(out.begin(), out.end(),
              [](const AttackerSpec& a, const AttackerSpec& b) { return a.node < b.node; });
    return out;
}

Simulator::Simulator(const SimConfig& cfg, std::uint64_t seed, std::ostream* trace)
    : cfg_(cfg), trace_(trace) {
    cfg_.validate();
    cfg_.attackers = place_attackers(cfg_, seed);
    topo_ = Topology::grid(cfg_.grid_rows, cfg_.grid_cols, cfg_.spacing_m, cfg_.range_m);
    data_hop_delay_ =
        cfg_.hop_latency_s + cfg_.packet_size_bytes * 8.0 / cfg_.data_rate_bps;

    nodes_.resize(static_cast<std::size_t>(topo_.size()));
    for (int id = 0; id < topo_.size(); ++id) {
        auto& node = nodes_[static_cast<std::size_t>(id)];
        node.id = id;
        node.rng = rng::make_engine(seed, kNodeStreamBase + static_cast<std::uint64_t>(id));
    }
    for (const auto& a : cfg_.attackers) {
        auto& node = nodes_[static_cast<std::size_t>(a.node)];
        node.role = a.role;
        node.drop_prob = a.role == Role::Grayhole ? a.drop_prob : 1.0;
    }

    const auto flow_specs = cfg_.resolved_flows();
    flows_.resize(flow_specs.size());
    for (std::size_t i = 0; i < flow_specs.size(); ++i) {
        flows_[i].spec = flow_specs[i];
        flows_[i].index = static_cast<int>(i);
        Event ev;
        ev.kind = EventKind::FlowPacket;
        ev.flow = static_cast<int>(i);
        schedule(flow_specs[i].start_s, ev);
    }

    if (trust_enabled()) {
        for (int id = 0; id < topo_.size(); ++id) {
            Event ev;
            ev.kind = EventKind::TrustTick;
            ev.node = id;
            schedule(cfg_.period_s, ev);
        }
    }
}

void Simulator::schedule(double time, Event ev) {
    ev.time = time;
    ev.seq = next_seq_++;
    queue_.push(std::move(ev));
}

void Simulator::transmit(int from, int to, const Packet& pkt) {
    double delay = cfg_.hop_latency_s;
    if (pkt.kind == PacketKind::Data) {
        delay = data_hop_delay_;
        if (trust_enabled() && to != pkt.dst) {
            auto& rec = nodes_[static_cast<std::size_t>(from)].records[to];
            rec.subject = to;
            ++rec.packets_sent;
            nodes_[static_cast<std::size_t>(from)].watchdog[pkt.uid] = to;
        }
    } else {
        ++metrics_.control_packets;
    }
    Event ev;
    ev.kind = EventKind::Arrival;
    ev.node = to;
    ev.from = from;
    ev.pkt = pkt;
    schedule(now_ + delay, ev);
}

void Simulator::broadcast(int from, const Packet& pkt) {
    ++metrics_.control_packets;  // one transmission regardless of fan-out
    const auto& self = nodes_[static_cast<std::size_t>(from)];
    for (int nb : topo_.neighbors(from)) {
        if (self.blacklist.count(nb)) continue;
        Event ev;
        ev.kind = EventKind::Arrival;
        ev.node = nb;
        ev.from = from;
        ev.pkt = pkt;
        schedule(now_ + cfg_.hop_latency_s, ev);
    }
}

MetricsReport Simulator::run() {
    dst::reset_combination_count();
    while (step()) {
    }
    return finalize();
}

bool Simulator::step() {
    if (queue_.empty()) return false;
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.time;
    handle_event(ev);
    return true;
}

void Simulator::handle_event(const Event& ev) {
    switch (ev.kind) {
        case EventKind::Arrival: handle_arrival(ev); break;
        case EventKind::FlowPacket: on_flow_packet(ev.flow); break;
        case EventKind::TrustTick: on_trust_tick(ev.node); break;
        case EventKind::FuseReady: on_fuse_ready(ev.node, static_cast<int>(ev.tag)); break;
        case EventKind::RouteRequestTimeout: on_rreq_timeout(ev.flow, ev.tag); break;
        case EventKind::FlushFlow: on_flush_flow(ev.flow); break;
    }
}

void Simulator::handle_arrival(const Event& ev) {
    auto& self = nodes_[static_cast<std::size_t>(ev.node)];
    if (self.blacklist.count(ev.from)) {
        // Blacklisted nodes are blocked from all communications.
        if (ev.pkt.kind == PacketKind::Data) drop_data(ev.pkt, false);
        return;
    }
    switch (ev.pkt.kind) {
        case PacketKind::Data: on_data(self, ev.from, ev.pkt); break;
        case PacketKind::RouteRequest: on_route_request(self, ev.from, ev.pkt); break;
        case PacketKind::RouteReply: on_route_reply(self, ev.from, ev.pkt); break;
        case PacketKind::RouteError: on_route_error(self, ev.from, ev.pkt); break;
        case PacketKind::TrustRequest: on_trust_request(self, ev.from, ev.pkt); break;
        case PacketKind::TrustReply: on_trust_reply(self, ev.from, ev.pkt); break;
        case PacketKind::Blacklist: on_blacklist(self, ev.from, ev.pkt); break;
    }
}

void Simulator::on_data(NodeState& self, int from, const Packet& pkt) {
    if (self.id == pkt.dst) {
        ++metrics_.delivered;
        self.flow_hops[pkt.flow] = {from, -1};
        return;
    }

    // Relay. Attackers record when they first carry traffic.
    if (self.role != Role::Honest && !metrics_.first_carry_time.count(self.id))
        metrics_.first_carry_time.emplace(self.id, now_);

    if (self.role == Role::Blackhole) {
        drop_data(pkt, true);
        return;
    }
    if (self.role == Role::Grayhole && uniform01(self.rng) < self.drop_prob) {
        drop_data(pkt, true);
        return;
    }

    const auto rt = self.routes.find(pkt.dst);
    if (rt == self.routes.end() || self.blacklist.count(rt->second.next_hop)) {
        drop_data(pkt, false);
        // Tell the source its path is broken so it can rediscover.
        Packet rerr;
        rerr.kind = PacketKind::RouteError;
        rerr.flow = pkt.flow;
        rerr.src = self.id;
        rerr.dst = pkt.src;
        rerr.subject = rt == self.routes.end() ? -1 : rt->second.next_hop;
        if (!self.blacklist.count(from)) transmit(self.id, from, rerr);
        return;
    }

    self.flow_hops[pkt.flow] = {from, rt->second.next_hop};
    transmit(self.id, rt->second.next_hop, pkt);
    observe_forwarding(from, self.id, pkt.uid);
}

void Simulator::observe_forwarding(int upstream, int forwarder, std::int64_t uid) {
    // The node that handed the packet over overhears the retransmission;
    // the overhear fails with probability p_miss on the observer's stream.
    if (!trust_enabled()) return;
    auto& up = nodes_[static_cast<std::size_t>(upstream)];
    const auto wd = up.watchdog.find(uid);
    if (wd == up.watchdog.end() || wd->second != forwarder) return;
    up.watchdog.erase(wd);
    if (cfg_.p_miss > 0.0 && uniform01(up.rng) < cfg_.p_miss) return;
    ++up.records[forwarder].packets_overheard;
}

void Simulator::on_route_request(NodeState& self, int from, const Packet& pkt) {
    const std::pair<int, std::int64_t> key{pkt.src, pkt.tag};
    if (self.seen_rreq.count(key)) return;
    self.seen_rreq.insert(key);
    const int my_hops = pkt.hops + 1;
    self.reverse_routes[key] = from;
    // Remember how to reach the originator (used by replies and errors).
    auto origin_rt = self.routes.find(pkt.src);
    if (origin_rt == self.routes.end() || origin_rt->second.hops > my_hops)
        self.routes[pkt.src] = {from, my_hops};

    if (self.id == pkt.dst) {
        Packet rrep;
        rrep.kind = PacketKind::RouteReply;
        rrep.src = self.id;
        rrep.dst = pkt.src;
        rrep.tag = pkt.tag;
        rrep.subject = pkt.dst;  // the destination this route serves
        rrep.hops = 0;
        transmit(self.id, from, rrep);
        return;
    }
    if (self.role == Role::Blackhole) {
        // Immediate reply claiming a one-hop route to the destination; the
        // request is consumed, not rebroadcast.
        Packet rrep;
        rrep.kind = PacketKind::RouteReply;
        rrep.src = self.id;
        rrep.dst = pkt.src;
        rrep.tag = pkt.tag;
        rrep.subject = pkt.dst;
        rrep.hops = 1;
        transmit(self.id, from, rrep);
        return;
    }
    Packet fwd = pkt;
    fwd.hops = my_hops;
    broadcast(self.id, fwd);
}

void Simulator::on_route_reply(NodeState& self, int from, const Packet& pkt) {
    const int claimed = pkt.hops + 1;  // hops from here to the destination via sender

    if (self.id == pkt.dst) {
        FlowState* flow = nullptr;
        for (auto& f : flows_)
            if (f.discovering && f.request_id == pkt.tag) flow = &f;
        if (!flow) return;  // stale reply for a superseded request

        if (!flow->route_valid) {
            flow->route_valid = true;
            flow->discovering = false;
            flow->adopted_time = now_;
            flow->adopted_hops = claimed;
            flow->adopted_via = pkt.src;
            self.routes[flow->spec.dst] = {from, claimed};
            Event flush;
            flush.kind = EventKind::FlushFlow;
            flush.flow = flow->index;
            schedule(now_, flush);  // runs after any same-instant replies
            trace(now_, self.id, "route_adopted", pkt.src);
        } else if (now_ == flow->adopted_time &&
                   (claimed < flow->adopted_hops ||
                    (claimed == flow->adopted_hops && pkt.src < flow->adopted_via))) {
            // Simultaneous replies: lowest hop count, then lowest responder id.
            flow->adopted_hops = claimed;
            flow->adopted_via = pkt.src;
            self.routes[flow->spec.dst] = {from, claimed};
        }
        return;
    }

    self.routes[pkt.subject] = {from, claimed};
    const auto rr = self.reverse_routes.find({pkt.dst, pkt.tag});
    if (rr == self.reverse_routes.end()) return;
    Packet fwd = pkt;
    fwd.hops = claimed;
    transmit(self.id, rr->second, fwd);
}

void Simulator::on_route_error(NodeState& self, int from, const Packet& pkt) {
    (void)from;
    if (self.id == pkt.dst) {
        auto& flow = flows_[static_cast<std::size_t>(pkt.flow)];
        if (flow.route_valid) {
            flow.route_valid = false;
            self.routes.erase(flow.spec.dst);
        }
        return;
    }
    const auto fh = self.flow_hops.find(pkt.flow);
    if (fh != self.flow_hops.end() && fh->second.first >= 0 &&
        !self.blacklist.count(fh->second.first)) {
        transmit(self.id, fh->second.first, pkt);
        return;
    }
    const auto rt = self.routes.find(pkt.dst);
    if (rt != self.routes.end() && !self.blacklist.count(rt->second.next_hop))
        transmit(self.id, rt->second.next_hop, pkt);
}

void Simulator::on_trust_request(NodeState& self, int from, const Packet& pkt) {
    if (pkt.subject == self.id) return;
    const auto rec = self.records.find(pkt.subject);
    if (rec == self.records.end()) return;  // no record, nothing to recommend
    Packet rep;
    rep.kind = PacketKind::TrustReply;
    rep.src = self.id;
    rep.dst = from;
    rep.subject = pkt.subject;
    rep.value = rec->second.smoothed_trust;
    transmit(self.id, from, rep);
}

void Simulator::on_trust_reply(NodeState& self, int from, const Packet& pkt) {
    const auto q = self.open_queries.find(pkt.subject);
    if (q == self.open_queries.end()) return;  // late or unsolicited
    q->second.emplace_back(from, pkt.value);
}

void Simulator::on_blacklist(NodeState& self, int from, const Packet& pkt) {
    (void)from;
    if (self.seen_blacklist.count(pkt.tag)) return;
    self.seen_blacklist.insert(pkt.tag);
    if (pkt.subject != self.id) {
        self.blacklist.insert(pkt.subject);
        invalidate_routes_via(self, pkt.subject);
    }
    broadcast(self.id, pkt);
}

void Simulator::on_flow_packet(int flow_index) {
    auto& flow = flows_[static_cast<std::size_t>(flow_index)];
    auto& src = nodes_[static_cast<std::size_t>(flow.spec.src)];

    ++metrics_.generated;
    const std::int64_t uid = next_uid_++;

    const double next_t = now_ + 1.0 / cfg_.packets_per_s;
    if (next_t < cfg_.sim_time_s) {
        Event ev;
        ev.kind = EventKind::FlowPacket;
        ev.flow = flow_index;
        schedule(next_t, ev);
    }

    const auto rt = src.routes.find(flow.spec.dst);
    const bool valid =
        flow.route_valid && rt != src.routes.end() && !src.blacklist.count(rt->second.next_hop);
    if (valid) {
        send_data(flow, uid);
    } else {
        flow.route_valid = false;
        ++flow.buffered;
        if (!flow.discovering) start_discovery(flow);
    }
}

void Simulator::start_discovery(FlowState& flow) {
    auto& src = nodes_[static_cast<std::size_t>(flow.spec.src)];
    flow.discovering = true;
    flow.request_id = next_request_++;
    src.seen_rreq.insert({flow.spec.src, flow.request_id});

    Packet rreq;
    rreq.kind = PacketKind::RouteRequest;
    rreq.src = flow.spec.src;
    rreq.dst = flow.spec.dst;
    rreq.tag = flow.request_id;
    rreq.hops = 0;
    broadcast(flow.spec.src, rreq);

    Event timeout;
    timeout.kind = EventKind::RouteRequestTimeout;
    timeout.flow = flow.index;
    timeout.tag = flow.request_id;
    schedule(now_ + cfg_.rreq_timeout_s, timeout);
    trace(now_, flow.spec.src, "route_discovery", flow.request_id);
}

void Simulator::send_data(FlowState& flow, std::int64_t uid) {
    auto& src = nodes_[static_cast<std::size_t>(flow.spec.src)];
    const auto rt = src.routes.find(flow.spec.dst);
    if (rt == src.routes.end() || src.blacklist.count(rt->second.next_hop)) {
        flow.route_valid = false;
        ++flow.buffered;
        if (!flow.discovering) start_discovery(flow);
        return;
    }
    Packet pkt;
    pkt.kind = PacketKind::Data;
    pkt.src = flow.spec.src;
    pkt.dst = flow.spec.dst;
    pkt.flow = flow.index;
    pkt.uid = uid;
    src.flow_hops[flow.index] = {-1, rt->second.next_hop};
    transmit(flow.spec.src, rt->second.next_hop, pkt);
}

void Simulator::on_flush_flow(int flow_index) {
    auto& flow = flows_[static_cast<std::size_t>(flow_index)];
    while (flow.route_valid && flow.buffered > 0) {
        --flow.buffered;
        send_data(flow, next_uid_++);
    }
}

void Simulator::on_rreq_timeout(int flow_index, std::int64_t request_id) {
    auto& flow = flows_[static_cast<std::size_t>(flow_index)];
    if (!flow.discovering || flow.request_id != request_id) return;
    flow.discovering = false;
    metrics_.dropped_by_route_failure += flow.buffered;
    flow.buffered = 0;
    trace(now_, flow.spec.src, "route_failure", request_id);
}

void Simulator::on_trust_tick(int node_id) {
    auto& self = nodes_[static_cast<std::size_t>(node_id)];
    self.watchdog.clear();  // period expiry removes pending entries

    trust::TrustConfig tcfg;
    tcfg.gamma = cfg_.gamma;
    tcfg.period = cfg_.period_s;
    tcfg.alpha = cfg_.alpha;
    tcfg.recommender_weighting = cfg_.recommender_weighting;

    std::vector<int> targets;
    for (auto& [nb, rec] : self.records) {
        if (rec.packets_sent == 0) continue;  // no traffic: carry trust forward
        trust::apply_period(rec, tcfg, now_);
        if (!self.blacklist.count(nb)) targets.push_back(nb);
    }

    for (int target : targets) {
        if (recommendations_enabled()) {
            Packet req;
            req.kind = PacketKind::TrustRequest;
            req.src = self.id;
            req.subject = target;
            broadcast(self.id, req);
            self.open_queries[target].clear();
            Event fuse;
            fuse.kind = EventKind::FuseReady;
            fuse.node = self.id;
            fuse.tag = target;
            schedule(now_ + cfg_.rec_wait_s, fuse);
        } else {
            decide(self, target, self.records[target].smoothed_trust);
        }
    }

    const double next_t = now_ + cfg_.period_s;
    if (next_t <= cfg_.sim_time_s) {
        Event ev;
        ev.kind = EventKind::TrustTick;
        ev.node = node_id;
        schedule(next_t, ev);
    }
}

void Simulator::on_fuse_ready(int node_id, int target) {
    auto& self = nodes_[static_cast<std::size_t>(node_id)];
    const auto q = self.open_queries.find(target);
    std::vector<std::pair<int, double>> reps;
    if (q != self.open_queries.end()) {
        reps = std::move(q->second);
        self.open_queries.erase(q);
    }
    if (self.blacklist.count(target)) return;
    const auto rec = self.records.find(target);
    if (rec == self.records.end()) return;

    dst::FusionInput in;
    in.direct_trust = rec->second.smoothed_trust;
    in.gamma = cfg_.gamma;
    std::sort(reps.begin(), reps.end());
    for (const auto& [recommender, value] : reps) {
        if (self.blacklist.count(recommender)) continue;
        double idt = value;
        if (cfg_.recommender_weighting) {
            const auto rr = self.records.find(recommender);
            const double trust_in_rec =
                rr == self.records.end() ? 0.5 : rr->second.smoothed_trust;
            idt = trust::indirect_trust(trust_in_rec, value);
        }
        in.recommendations.push_back({recommender, idt});
    }
    decide(self, target, dst::fuse(in));
}

void Simulator::decide(NodeState& self, int target, double trust_value) {
    if (trust_value >= cfg_.gamma) return;
    if (self.blacklist.count(target)) return;

    self.blacklist.insert(target);
    ++metrics_.blacklist_counts[target];
    metrics_.first_blacklist_time.emplace(target, now_);
    if (nodes_[static_cast<std::size_t>(target)].role == Role::Honest)
        metrics_.false_positives.insert(target);
    else
        metrics_.detected_attackers.insert(target);
    trace(now_, self.id, "blacklist", target);

    Packet bl;
    bl.kind = PacketKind::Blacklist;
    bl.src = self.id;
    bl.subject = target;
    bl.tag = next_blacklist_msg_++;
    self.seen_blacklist.insert(bl.tag);
    broadcast(self.id, bl);

    // Break the data paths that run through the target.
    for (const auto& [flow_idx, hops] : self.flow_hops) {
        if (hops.second != target) continue;
        const auto& flow = flows_[static_cast<std::size_t>(flow_idx)];
        if (flow.spec.src == self.id) continue;  // handled below
        Packet rerr;
        rerr.kind = PacketKind::RouteError;
        rerr.flow = flow_idx;
        rerr.src = self.id;
        rerr.dst = flow.spec.src;
        rerr.subject = target;
        if (hops.first >= 0 && !self.blacklist.count(hops.first))
            transmit(self.id, hops.first, rerr);
    }
    invalidate_routes_via(self, target);
}

void Simulator::invalidate_routes_via(NodeState& self, int bad) {
    std::vector<int> stale;
    for (const auto& [dst, rt] : self.routes)
        if (rt.next_hop == bad) stale.push_back(dst);
    for (int dst : stale) self.routes.erase(dst);
    for (auto& flow : flows_) {
        if (flow.spec.src != self.id || !flow.route_valid) continue;
        if (!self.routes.count(flow.spec.dst)) flow.route_valid = false;
    }
}

void Simulator::drop_data(const Packet& pkt, bool by_attacker) {
    if (by_attacker)
        ++metrics_.dropped_by_attacker;
    else
        ++metrics_.dropped_by_route_failure;
    (void)pkt;
}

void Simulator::trace(double t, int node, const char* what, std::int64_t detail) {
    if (!trace_) return;
    (*trace_) << t << ' ' << node << ' ' << what;
    if (detail >= 0) (*trace_) << ' ' << detail;
    (*trace_) << '\n';
}

MetricsReport Simulator::finalize() {
    metrics_.fusion_operations = dst::combination_count();
    metrics_.pdr = metrics_.generated > 0
                       ? static_cast<double>(metrics_.delivered) /
                             static_cast<double>(metrics_.generated)
                       : 0.0;
    if (metrics_.delivered > 0)
        metrics_.nro = static_cast<double>(metrics_.control_packets) /
                       static_cast<double>(metrics_.delivered);
    else
        metrics_.nro.reset();
    metrics_.throughput_bps = static_cast<double>(metrics_.delivered) *
                              cfg_.packet_size_bytes * 8.0 / cfg_.sim_time_s;
    metrics_.false_positive_rate =
        static_cast<double>(metrics_.false_positives.size()) / topo_.size();
    return metrics_;
}

MetricsReport run_simulation(const SimConfig& cfg, std::uint64_t seed, std::ostream* trace) {
    Simulator sim(cfg, seed, trace);
    return sim.run();
}

}  // namespace dstrust::sim
