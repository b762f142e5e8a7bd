#include "crn/network_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "crn/spectrum_sharing.hpp"

namespace crn {

namespace {

// Sub-stream tags; per-node mobility streams start at kMobilityBase + node id.
constexpr std::uint64_t kPlacementTag = 1;
constexpr std::uint64_t kFadingTag = 2;
constexpr std::uint64_t kPolicyTag = 3;
constexpr std::uint64_t kMobilityBase = 1000;

// Dispatch order at equal timestamps: completions first (transmissions are
// committed under the regime that started them), then the epoch re-selection,
// then new arrivals, which therefore see the fresh decision.
enum EventKind : int { kHop2Done = 0, kHop1Done = 1, kEpoch = 2, kArrival = 3 };

struct Event {
    double time = 0.0;
    int kind = 0;
    std::uint64_t seq = 0;
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) {
            return a.time > b.time;
        }
        if (a.kind != b.kind) {
            return a.kind > b.kind;
        }
        return a.seq > b.seq;
    }
};

void require_positive(double value, const char* field) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string("SimConfig: ") + field + " must be positive");
    }
}

}  // namespace

double service_time(double packet_bits, double capacity_bps) {
    return packet_bits / capacity_bps;
}

std::size_t shift_queue(std::deque<QueueEntry>& from, std::deque<QueueEntry>& to,
                        std::vector<PacketRecord>& records) {
    const std::size_t moved = from.size();
    while (!from.empty()) {
        QueueEntry entry = from.front();
        from.pop_front();
        records[entry.packet_id].shifted += 1;
        to.push_back(entry);
    }
    return moved;
}

Simulation::Simulation(const SimConfig& cfg)
    : cfg_(cfg),
      fading_stream_(substream(cfg.seed, kFadingTag)),
      policy_stream_(substream(cfg.seed, kPolicyTag)) {
    validate();
    place_nodes();
}

void Simulation::validate() const {
    require_positive(cfg_.arena_side, "arena_side");
    require_positive(cfg_.sim_time, "sim_time");
    require_positive(cfg_.tx_range, "tx_range");
    require_positive(cfg_.packet_size, "packet_size");
    require_positive(cfg_.tx_power, "tx_power");
    require_positive(cfg_.rx_power, "rx_power");
    require_positive(cfg_.initial_energy, "initial_energy");
    require_positive(cfg_.speed_min, "speed_min");
    require_positive(cfg_.epoch, "epoch");
    require_positive(cfg_.bandwidth, "bandwidth");
    require_positive(cfg_.noise_power, "noise_power");
    if (cfg_.speed_min > cfg_.speed_max) {
        throw std::invalid_argument("SimConfig: speed_min must not exceed speed_max");
    }
    if (cfg_.offered_load < 0.0 || cfg_.snr_threshold < 0.0) {
        throw std::invalid_argument("SimConfig: offered_load and snr_threshold must be >= 0");
    }
    if (cfg_.tx_range > cfg_.arena_side * std::numbers::sqrt2) {
        throw std::invalid_argument("SimConfig: tx_range exceeds the arena diagonal");
    }
    const std::size_t relays =
        cfg_.relay_count != 0
            ? cfg_.relay_count
            : (cfg_.node_count >= 2 + cfg_.primary_count
                   ? cfg_.node_count - 2 - cfg_.primary_count
                   : 0);
    if (cfg_.node_count < 2 + relays + cfg_.primary_count) {
        throw std::invalid_argument(
            "SimConfig: node_count must cover source, destination, relays and primaries");
    }
}

void Simulation::place_nodes() {
    Rng placement = substream(cfg_.seed, kPlacementTag);
    nodes_.resize(cfg_.node_count);
    mobility_streams_.reserve(cfg_.node_count);
    for (std::size_t i = 0; i < cfg_.node_count; ++i) {
        mobility_streams_.push_back(substream(cfg_.seed, kMobilityBase + i));
    }
    for (auto& node : nodes_) {
        node.position.x = placement.uniform(0.0, cfg_.arena_side);
        node.position.y = placement.uniform(0.0, cfg_.arena_side);
        node.waypoint = node.position;
        node.speed = 0.0;
        node.energy = cfg_.initial_energy;
        node.role = NodeRole::relay;
        node.mobile = false;
    }

    const std::size_t relays = cfg_.relay_count != 0
                                   ? cfg_.relay_count
                                   : cfg_.node_count - 2 - cfg_.primary_count;
    source_ = 0;
    destination_ = 1;
    nodes_[source_].role = NodeRole::source;
    nodes_[destination_].role = NodeRole::destination;

    // Only the end user moves: random-waypoint with uniform speed.
    auto& dest = nodes_[destination_];
    auto& dest_stream = mobility_streams_[destination_];
    dest.mobile = true;
    dest.waypoint.x = dest_stream.uniform(0.0, cfg_.arena_side);
    dest.waypoint.y = dest_stream.uniform(0.0, cfg_.arena_side);
    dest.speed = dest_stream.uniform(cfg_.speed_min, cfg_.speed_max);

    std::size_t next = 2;
    for (std::size_t r = 0; r < relays; ++r, ++next) {
        nodes_[next].role = NodeRole::relay;
        relays_.push_back(static_cast<int>(next));
    }
    for (std::size_t p = 0; p < cfg_.primary_count; ++p, ++next) {
        nodes_[next].role = NodeRole::primary;
        primaries_.push_back(static_cast<int>(next));
    }
    // Nodes beyond the assigned counts stay idle bystander SUs.

    relay_queues_.assign(cfg_.node_count, {});
    reserved_energy_.assign(cfg_.node_count, 0.0);
}

void advance_waypoint_node(NodeState& node, double dt, double arena_side, double speed_min,
                           double speed_max, Rng& stream) {
    double time_left = dt;
    while (time_left > 0.0 && node.speed > 0.0) {
        const double dist = distance_between(node.position, node.waypoint);
        const double time_to_waypoint = dist / node.speed;
        if (time_to_waypoint <= time_left) {
            node.position = node.waypoint;
            time_left -= time_to_waypoint;
            node.waypoint.x = stream.uniform(0.0, arena_side);
            node.waypoint.y = stream.uniform(0.0, arena_side);
            node.speed = stream.uniform(speed_min, speed_max);
        } else {
            const double step = node.speed * time_left / dist;
            node.position.x += (node.waypoint.x - node.position.x) * step;
            node.position.y += (node.waypoint.y - node.position.y) * step;
            time_left = 0.0;
        }
    }
}

void Simulation::move_node(int node, double dt) {
    advance_waypoint_node(nodes_[node], dt, cfg_.arena_side, cfg_.speed_min, cfg_.speed_max,
                          mobility_streams_[node]);
}

void Simulation::advance_mobility(double dt) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].mobile) {
            move_node(static_cast<int>(i), dt);
        }
    }
}

std::vector<int> Simulation::eligible_relays() const {
    std::vector<int> result;
    for (int r : relays_) {
        const double d_src = distance_between(nodes_[source_].position, nodes_[r].position);
        const double d_dst = distance_between(nodes_[r].position, nodes_[destination_].position);
        if (d_src <= cfg_.tx_range && d_dst <= cfg_.tx_range) {
            result.push_back(r);
        }
    }
    return result;
}

void Simulation::process_epoch(std::size_t epoch_index, double now, SimResult& result) {
    EpochLog log;
    log.epoch_index = epoch_index;
    log.time = now;
    log.source_pos = nodes_[source_].position;
    log.dest_pos = nodes_[destination_].position;

    // Fresh fading for every in-range relay; the draws happen whether or not
    // the relay is still alive so that runs differing only in policy (or in
    // traffic) consume the fading stream identically. Dead relays cannot
    // receive and are excluded from the candidate realization.
    const PathLossModel path_loss{cfg_.path_loss_exponent, 1.0};
    for (int r : eligible_relays()) {
        const double fade_sr = fading_stream_.exponential();
        const double fade_rd = fading_stream_.exponential();
        if (nodes_[r].energy <= 0.0) {
            continue;
        }
        const double d_src = distance_between(nodes_[source_].position, nodes_[r].position);
        const double d_dst = distance_between(nodes_[r].position, nodes_[destination_].position);
        log.eligible_nodes.push_back(r);
        log.gains.source_relay_gains.push_back(path_loss_gain(d_src, path_loss) * fade_sr);
        log.gains.relay_dest_gains.push_back(path_loss_gain(d_dst, path_loss) * fade_rd);
    }

    RelaySelectionConfig relay_cfg;
    relay_cfg.source_power = cfg_.tx_power;
    relay_cfg.snr_threshold = cfg_.snr_threshold;
    relay_cfg.noise.noise_power = cfg_.noise_power;
    log.decision = select_best_relay(log.gains, relay_cfg);

    std::optional<int> chosen;
    std::optional<std::size_t> chosen_slot;
    if (cfg_.policy == RelayPolicy::clsss) {
        if (log.decision.best) {
            chosen_slot = static_cast<std::size_t>(*log.decision.best - 1);
            chosen = log.eligible_nodes[*chosen_slot];
        }
    } else {
        if (!static_relay_) {
            // The source appoints one random relay from its own neighborhood
            // up front; the mobile destination's position plays no part.
            std::vector<int> near_source;
            for (int r : relays_) {
                if (distance_between(nodes_[source_].position, nodes_[r].position) <=
                    cfg_.tx_range) {
                    near_source.push_back(r);
                }
            }
            const auto& pool = near_source.empty() ? relays_ : near_source;
            if (!pool.empty()) {
                static_relay_ = pool[static_cast<std::size_t>(policy_stream_.below(pool.size()))];
            }
        }
        chosen = static_relay_;
        if (chosen) {
            const auto it =
                std::find(log.eligible_nodes.begin(), log.eligible_nodes.end(), *chosen);
            if (it != log.eligible_nodes.end()) {
                chosen_slot = static_cast<std::size_t>(it - log.eligible_nodes.begin());
            }
        }
    }

    // Re-selection: when a new relay is chosen, the outgoing relay's queue
    // shifts to it. A NoFeasibleRelay epoch is not a re-selection -- queued
    // packets stay where they are and the hops simply idle (capacity 0).
    // The static policy never re-selects.
    if (cfg_.policy == RelayPolicy::clsss && chosen && chosen != current_relay_) {
        if (current_relay_ && !relay_queues_[*current_relay_].empty()) {
            auto& from = relay_queues_[*current_relay_];
            for (const auto& entry : from) {
                result.trace.push_back({now, "shifted", entry.packet_id, *chosen});
            }
            const std::size_t moved = shift_queue(from, relay_queues_[*chosen], packets_);
            result.shifts += moved;
            result.control_messages += moved;
        }
        current_relay_ = chosen;
    } else if (cfg_.policy == RelayPolicy::static_random) {
        current_relay_ = chosen;
    }

    capacity_sr_ = 0.0;
    capacity_rd_ = 0.0;
    if (chosen_slot && current_relay_ && chosen == current_relay_) {
        const auto& candidate = log.decision.all_candidates[*chosen_slot];
        capacity_sr_ = link_capacity(cfg_.bandwidth, candidate.snr_source_relay);
        capacity_rd_ = link_capacity(cfg_.bandwidth, candidate.snr_relay_dest);
    }
    log.relay_node = chosen_slot ? current_relay_ : std::nullopt;
    log.capacity_sr = capacity_sr_;
    log.capacity_rd = capacity_rd_;
    result.epochs.push_back(std::move(log));
}

void Simulation::try_start_hop1(double now, SimResult& result) {
    if (hop1_ || source_queue_.empty() || !current_relay_ || capacity_sr_ <= 0.0) {
        return;
    }
    const int relay = *current_relay_;
    const double duration = service_time(cfg_.packet_size, capacity_sr_);
    const double tx_energy = cfg_.tx_power * duration;
    const double rx_energy = cfg_.rx_power * duration;
    if (nodes_[source_].energy - reserved_energy_[source_] < tx_energy ||
        nodes_[relay].energy - reserved_energy_[relay] < rx_energy) {
        return;  // not enough energy for the whole transmission
    }
    const QueueEntry entry = source_queue_.front();
    source_queue_.pop_front();
    packets_[entry.packet_id].queueing_delay += now - entry.enqueued_at;
    reserved_energy_[source_] += tx_energy;
    reserved_energy_[relay] += rx_energy;
    hop1_ = InFlight{entry.packet_id, source_, relay, now, duration, tx_energy, rx_energy};
    result.trace.push_back({now, "hop1_start", entry.packet_id, relay});
}

void Simulation::try_start_hop2(double now, SimResult& result) {
    if (hop2_ || !current_relay_ || capacity_rd_ <= 0.0) {
        return;
    }
    const int relay = *current_relay_;
    auto& queue = relay_queues_[relay];
    if (queue.empty()) {
        return;
    }
    const double duration = service_time(cfg_.packet_size, capacity_rd_);
    const double tx_energy = cfg_.tx_power * duration;
    const double rx_energy = cfg_.rx_power * duration;
    if (nodes_[relay].energy - reserved_energy_[relay] < tx_energy ||
        nodes_[destination_].energy - reserved_energy_[destination_] < rx_energy) {
        return;
    }
    const QueueEntry entry = queue.front();
    queue.pop_front();
    packets_[entry.packet_id].queueing_delay += now - entry.enqueued_at;
    reserved_energy_[relay] += tx_energy;
    reserved_energy_[destination_] += rx_energy;
    hop2_ = InFlight{entry.packet_id, relay, destination_, now, duration, tx_energy, rx_energy};
    result.trace.push_back({now, "hop2_start", entry.packet_id, relay});
}

void Simulation::enqueue_at_relay(std::uint64_t packet_id, int relay, double now) {
    relay_queues_[relay].push_back({packet_id, now});
}

void Simulation::finish_hop1(double now, SimResult& result) {
    const InFlight flight = *hop1_;
    hop1_.reset();
    nodes_[flight.tx_node].energy -= flight.tx_energy;
    nodes_[flight.rx_node].energy -= flight.rx_energy;
    reserved_energy_[flight.tx_node] -= flight.tx_energy;
    reserved_energy_[flight.rx_node] -= flight.rx_energy;
    result.total_tx_time += flight.duration;
    result.total_rx_time += flight.duration;
    result.total_energy_debited += flight.tx_energy + flight.rx_energy;

    auto& packet = packets_[flight.packet_id];
    packet.hops += 1;
    packet.service_delay += flight.duration;
    result.trace.push_back({now, "hop1_done", flight.packet_id, flight.rx_node});

    if (current_relay_ && flight.rx_node == *current_relay_) {
        enqueue_at_relay(flight.packet_id, flight.rx_node, now);
    } else {
        // The decision moved on while this packet was on the air: forward it
        // to the new relay (or back to the source) like any queued packet.
        packet.shifted += 1;
        result.shifts += 1;
        result.control_messages += 1;
        result.trace.push_back(
            {now, "shifted", flight.packet_id, current_relay_ ? *current_relay_ : source_});
        if (current_relay_) {
            enqueue_at_relay(flight.packet_id, *current_relay_, now);
        } else {
            source_queue_.push_back({flight.packet_id, now});
        }
    }
}

void Simulation::finish_hop2(double now, SimResult& result) {
    const InFlight flight = *hop2_;
    hop2_.reset();
    nodes_[flight.tx_node].energy -= flight.tx_energy;
    nodes_[flight.rx_node].energy -= flight.rx_energy;
    reserved_energy_[flight.tx_node] -= flight.tx_energy;
    reserved_energy_[flight.rx_node] -= flight.rx_energy;
    result.total_tx_time += flight.duration;
    result.total_rx_time += flight.duration;
    result.total_energy_debited += flight.tx_energy + flight.rx_energy;

    auto& packet = packets_[flight.packet_id];
    packet.hops += 1;
    packet.service_delay += flight.duration;
    packet.delivered_at = now;
    result.delivered += 1;
    result.trace.push_back({now, "delivered", flight.packet_id, flight.rx_node});
}

void Simulation::audit_conservation(SimResult& result) const {
    std::uint64_t queued = source_queue_.size();
    for (const auto& queue : relay_queues_) {
        queued += queue.size();
    }
    const std::uint64_t in_flight = (hop1_ ? 1 : 0) + (hop2_ ? 1 : 0);
    if (result.generated != result.delivered + queued + in_flight) {
        result.conservation_violations += 1;
    }
}

SimResult Simulation::run() {
    if (ran_) {
        throw std::logic_error("Simulation::run: the world was already consumed");
    }
    ran_ = true;
    SimResult result;
    std::priority_queue<Event, std::vector<Event>, EventLater> events;
    std::uint64_t seq = 0;

    for (std::size_t k = 0; k * cfg_.epoch <= cfg_.sim_time; ++k) {
        events.push({static_cast<double>(k) * cfg_.epoch, kEpoch, seq++});
    }
    if (cfg_.offered_load > 0.0) {
        const double interarrival = 1.0 / cfg_.offered_load;
        for (std::size_t i = 1; static_cast<double>(i) * interarrival <= cfg_.sim_time; ++i) {
            events.push({static_cast<double>(i) * interarrival, kArrival, seq++});
        }
    }

    double clock = 0.0;
    std::size_t epoch_index = 0;
    while (!events.empty()) {
        const Event event = events.top();
        events.pop();
        if (event.time > cfg_.sim_time) {
            break;
        }
        advance_mobility(event.time - clock);
        clock = event.time;

        switch (event.kind) {
            case kEpoch:
                process_epoch(epoch_index++, clock, result);
                break;
            case kArrival: {
                PacketRecord packet;
                packet.id = packets_.size();
                packet.created_at = clock;
                packet.bits = cfg_.packet_size;
                packets_.push_back(packet);
                source_queue_.push_back({packet.id, clock});
                result.generated += 1;
                result.trace.push_back({clock, "generated", packet.id, source_});
                break;
            }
            case kHop1Done:
                finish_hop1(clock, result);
                break;
            case kHop2Done:
                finish_hop2(clock, result);
                break;
        }

        const bool hop1_was_idle = !hop1_;
        const bool hop2_was_idle = !hop2_;
        try_start_hop2(clock, result);
        try_start_hop1(clock, result);
        if (hop1_was_idle && hop1_) {
            events.push({clock + hop1_->duration, kHop1Done, seq++});
        }
        if (hop2_was_idle && hop2_) {
            events.push({clock + hop2_->duration, kHop2Done, seq++});
        }
        audit_conservation(result);
    }

    result.packets = packets_;

    auto& metrics = result.metrics;
    if (result.delivered > 0) {
        double delay_sum = 0.0;
        double delivered_bits = 0.0;
        for (const auto& packet : result.packets) {
            if (packet.delivered_at) {
                delay_sum += *packet.delivered_at - packet.created_at;
                delivered_bits += packet.bits;
            }
        }
        metrics.mean_delay_ms = 1000.0 * delay_sum / static_cast<double>(result.delivered);
        metrics.throughput_kbps = delivered_bits / cfg_.sim_time / 1000.0;
        metrics.overhead =
            static_cast<double>(result.control_messages) / static_cast<double>(result.delivered);
    } else if (result.generated > 0) {
        // Traffic was offered but nothing completed within the horizon;
        // report the horizon itself rather than a misleading zero.
        metrics.mean_delay_ms = 1000.0 * cfg_.sim_time;
    }
    metrics.pdr = result.generated == 0
                      ? 1.0
                      : static_cast<double>(result.delivered) / static_cast<double>(result.generated);
    metrics.energy_consumed = result.total_energy_debited / static_cast<double>(cfg_.node_count);
    return result;
}

SimResult run_simulation(const SimConfig& cfg) {
    Simulation sim(cfg);
    return sim.run();
}

}  // namespace crn
