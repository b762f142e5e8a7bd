#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "crn/relay_selection.hpp"

namespace crn {

enum class RelayPolicy {
    clsss,          // per-epoch best-relay re-selection with packet shifting
    static_random,  // one uniformly random in-range relay, kept for the whole run
};

// Scenario parameters. The radio-side defaults (bandwidth, noise, threshold)
// are chosen so the default arena gives edge-of-range SNRs around 10 dB.
struct SimConfig {
    std::size_t node_count = 100;
    double arena_side = 1000.0;  // square arena, meters
    double sim_time = 100.0;     // seconds
    double tx_range = 250.0;     // meters
    double packet_size = 512.0 * 1024.0 * 8.0;  // bits (512 KB payload)
    double tx_power = 0.660;     // watts, also the SNR transmit power W_s
    double rx_power = 0.395;     // watts
    double initial_energy = 100.0;  // joules per node
    double speed_min = 10.0;     // m/s, mobile nodes
    double speed_max = 50.0;
    double epoch = 1.0;          // seconds between relay re-selections
    double offered_load = 3.0;   // packets/second generated at the source
    std::uint64_t seed = 1;

    std::size_t primary_count = 5;
    // 0 => every node that is not source/destination/primary relays.
    std::size_t relay_count = 0;
    double bandwidth = 5e6;      // Hz, per-hop service bandwidth
    double noise_power = 1e-7;   // watts
    double path_loss_exponent = 2.0;
    double snr_threshold = 2.0;  // eta_th, linear (~3 dB)
    RelayPolicy policy = RelayPolicy::clsss;
};

enum class NodeRole { source, relay, destination, primary };

struct NodeState {
    NodePosition position;
    NodePosition waypoint;
    double speed = 0.0;
    double energy = 0.0;
    NodeRole role = NodeRole::relay;
    bool mobile = false;
};

struct PacketRecord {
    std::uint64_t id = 0;
    double created_at = 0.0;
    std::optional<double> delivered_at;
    int hops = 0;     // completed hop transmissions
    int shifted = 0;  // relay re-assignments while queued or mid-path
    double bits = 0.0;
    double queueing_delay = 0.0;  // waiting in queues
    double service_delay = 0.0;   // time on the air
};

struct SimMetrics {
    double mean_delay_ms = 0.0;    // over delivered packets; 0 when none delivered
    double throughput_kbps = 0.0;  // delivered payload bits / sim_time / 1000
    double pdr = 1.0;              // delivered / generated; 1.0 when none generated
    double overhead = 0.0;         // control messages per delivered packet
    double energy_consumed = 0.0;  // mean joules debited per node
};

// Per-epoch audit record: the sampled gains (path loss x fading) for the
// alive in-range relays, slot i belonging to node eligible_nodes[i], plus the
// decision taken on them.
struct EpochLog {
    std::size_t epoch_index = 0;
    double time = 0.0;
    NodePosition source_pos;
    NodePosition dest_pos;
    std::vector<int> eligible_nodes;
    ChannelRealization gains;
    RelayDecision decision;
    std::optional<int> relay_node;  // the relay the policy actually uses this epoch
    double capacity_sr = 0.0;       // bits/s on source->relay
    double capacity_rd = 0.0;       // bits/s on relay->destination
};

struct TraceEvent {
    double time = 0.0;
    std::string kind;  // generated | hop1_start | hop1_done | hop2_start | delivered | shifted
    std::uint64_t packet = 0;
    int node = -1;
};

struct SimResult {
    SimMetrics metrics;
    std::vector<PacketRecord> packets;
    std::vector<EpochLog> epochs;
    std::vector<TraceEvent> trace;

    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t shifts = 0;
    std::uint64_t control_messages = 0;

    // Bookkeeping audit, over completed transmissions.
    double total_tx_time = 0.0;
    double total_rx_time = 0.0;
    double total_energy_debited = 0.0;
    // Packet conservation (generated == delivered + queued + in flight) is
    // checked after every event; nonzero here means a broken event loop.
    std::uint64_t conservation_violations = 0;
};

// Transmission time of one packet at the given service rate.
double service_time(double packet_bits, double capacity_bps);

// Random-waypoint kinematics for a single node: travel toward the waypoint
// for dt seconds; on each arrival draw a fresh waypoint and speed from the
// node's stream. A node with speed 0 stays put.
void advance_waypoint_node(NodeState& node, double dt, double arena_side, double speed_min,
                           double speed_max, Rng& stream);

struct QueueEntry {
    std::uint64_t packet_id = 0;
    double enqueued_at = 0.0;
};

// Move every queued packet from one relay queue to another (the receiving
// queue keeps its existing order, shifted packets append in order). Each
// moved packet's shifted counter increments; the caller accounts one control
// message per moved packet. Returns the number moved.
std::size_t shift_queue(std::deque<QueueEntry>& from, std::deque<QueueEntry>& to,
                        std::vector<PacketRecord>& records);

// Deterministic single-run simulation: CBR packet generation at the source,
// random-waypoint motion for the destination, per-epoch fading and relay
// (re-)selection, two-hop store-and-forward service at Shannon capacity, and
// energy accounting.
//
// Randomness is split into independent sub-streams (placement, per-node
// mobility, fading, policy) derived from cfg.seed, and fading is sampled for
// every alive in-range relay regardless of policy, so two runs differing only
// in `policy` see the identical world, mobility and channel draws.
class Simulation {
public:
    explicit Simulation(const SimConfig& cfg);  // validates and places the scenario

    const SimConfig& config() const { return cfg_; }
    const std::vector<NodeState>& nodes() const { return nodes_; }
    int source_node() const { return source_; }
    int destination_node() const { return destination_; }
    const std::vector<int>& relay_nodes() const { return relays_; }
    const std::vector<int>& primary_nodes() const { return primaries_; }

    // Random-waypoint step for every mobile node; stationary nodes unchanged.
    void advance_mobility(double dt);

    // Drives the event loop to the horizon. One-shot: the world is consumed.
    SimResult run();

private:
    struct InFlight {
        std::uint64_t packet_id = 0;
        int tx_node = -1;
        int rx_node = -1;
        double started_at = 0.0;
        double duration = 0.0;
        double tx_energy = 0.0;
        double rx_energy = 0.0;
    };

    void validate() const;
    void place_nodes();
    void move_node(int node, double dt);
    std::vector<int> eligible_relays() const;
    void process_epoch(std::size_t epoch_index, double now, SimResult& result);
    void try_start_hop1(double now, SimResult& result);
    void try_start_hop2(double now, SimResult& result);
    void finish_hop1(double now, SimResult& result);
    void finish_hop2(double now, SimResult& result);
    void enqueue_at_relay(std::uint64_t packet_id, int relay, double now);
    void audit_conservation(SimResult& result) const;

    SimConfig cfg_;
    std::vector<NodeState> nodes_;
    std::vector<Rng> mobility_streams_;  // one per node, consumed only by mobiles
    Rng fading_stream_;
    Rng policy_stream_;
    int source_ = 0;
    int destination_ = 1;
    std::vector<int> relays_;
    std::vector<int> primaries_;

    // Run state.
    std::optional<int> current_relay_;
    std::optional<int> static_relay_;  // static_random: fixed after the first pick
    double capacity_sr_ = 0.0;
    double capacity_rd_ = 0.0;
    std::deque<QueueEntry> source_queue_;
    std::vector<std::deque<QueueEntry>> relay_queues_;  // indexed by node id
    std::optional<InFlight> hop1_;
    std::optional<InFlight> hop2_;
    std::vector<double> reserved_energy_;
    std::vector<PacketRecord> packets_;
    bool ran_ = false;
};

// Collect SimMetrics for one config (convenience wrapper around Simulation).
SimResult run_simulation(const SimConfig& cfg);

}  // namespace crn
