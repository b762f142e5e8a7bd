#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "crn/network_sim.hpp"
#include "support/oracles.hpp"

using namespace crn;

namespace {

SimConfig small_world(std::uint64_t seed) {
    SimConfig cfg;
    cfg.node_count = 30;
    cfg.primary_count = 3;
    cfg.sim_time = 60.0;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("scenario placement: determinism, roles, bounds") {
    SimConfig cfg;
    Simulation a(cfg);
    Simulation b(cfg);
    REQUIRE(a.nodes().size() == 100);
    for (std::size_t i = 0; i < a.nodes().size(); ++i) {
        CHECK(a.nodes()[i].position.x == b.nodes()[i].position.x);
        CHECK(a.nodes()[i].position.y == b.nodes()[i].position.y);
        CHECK(a.nodes()[i].position.x >= 0.0);
        CHECK(a.nodes()[i].position.x <= cfg.arena_side);
        CHECK(a.nodes()[i].position.y >= 0.0);
        CHECK(a.nodes()[i].position.y <= cfg.arena_side);
        CHECK(a.nodes()[i].energy == cfg.initial_energy);
    }
    CHECK(a.nodes()[a.source_node()].role == NodeRole::source);
    CHECK(a.nodes()[a.destination_node()].role == NodeRole::destination);
    CHECK(a.nodes()[a.destination_node()].mobile);
    CHECK(a.relay_nodes().size() == 100 - 2 - cfg.primary_count);
    CHECK(a.primary_nodes().size() == cfg.primary_count);

    // only the destination moves
    int mobile = 0;
    for (const auto& node : a.nodes()) {
        mobile += node.mobile;
    }
    CHECK(mobile == 1);
}

TEST_CASE("scenario rejects undersized node counts and bad ranges") {
    SimConfig cfg;
    cfg.node_count = 10;
    cfg.relay_count = 20;
    CHECK_THROWS_AS(Simulation{cfg}, std::invalid_argument);

    SimConfig bad_speed;
    bad_speed.speed_min = 50.0;
    bad_speed.speed_max = 10.0;
    CHECK_THROWS_AS(Simulation{bad_speed}, std::invalid_argument);

    SimConfig bad_range;
    bad_range.tx_range = 5000.0;
    CHECK_THROWS_AS(Simulation{bad_range}, std::invalid_argument);
}

TEST_CASE("waypoint kinematics") {
    Rng stream(1);
    NodeState node;
    node.position = {0.0, 0.0};
    node.waypoint = {100.0, 0.0};
    node.speed = 10.0;
    node.mobile = true;
    advance_waypoint_node(node, 1.0, 1000.0, 10.0, 50.0, stream);
    CHECK(node.position.x == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(node.position.y == 0.0);

    // zero speed: frozen in place
    NodeState still;
    still.position = {5.0, 5.0};
    still.waypoint = {50.0, 50.0};
    still.speed = 0.0;
    advance_waypoint_node(still, 100.0, 1000.0, 10.0, 50.0, stream);
    CHECK(still.position.x == 5.0);
    CHECK(still.position.y == 5.0);
}

TEST_CASE("mobility stays inside the arena over many steps") {
    SimConfig cfg = small_world(4);
    Simulation sim(cfg);
    for (int step = 0; step < 10000; ++step) {
        sim.advance_mobility(0.1);
    }
    for (const auto& node : sim.nodes()) {
        CHECK(node.position.x >= 0.0);
        CHECK(node.position.x <= cfg.arena_side);
        CHECK(node.position.y >= 0.0);
        CHECK(node.position.y <= cfg.arena_side);
    }
}

TEST_CASE("service time and per-packet energy arithmetic") {
    const double packet = 512.0 * 1024.0 * 8.0;  // 4194304 bits
    const double t = service_time(packet, 1e6);
    CHECK(t == doctest::Approx(4.194304).epsilon(1e-12));
    CHECK(0.660 * t == doctest::Approx(2.768).epsilon(1e-3));
    CHECK(0.395 * t == doctest::Approx(1.657).epsilon(1e-3));
    CHECK(0.660 * t == doctest::Approx(2.76824064).epsilon(1e-12));
    CHECK(0.395 * t == doctest::Approx(1.65675008).epsilon(1e-12));
}

TEST_CASE("shift_queue moves everything in order and counts per packet") {
    std::vector<PacketRecord> records(7);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].id = i;
    }
    std::deque<QueueEntry> from{{0, 0.1}, {1, 0.2}, {2, 0.3}, {3, 0.4}, {4, 0.5}};
    std::deque<QueueEntry> to{{6, 0.05}};
    const std::size_t moved = shift_queue(from, to, records);
    CHECK(moved == 5);
    CHECK(from.empty());
    REQUIRE(to.size() == 6);
    CHECK(to[0].packet_id == 6);
    CHECK(to[1].packet_id == 0);
    CHECK(to[5].packet_id == 4);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(records[i].shifted == 1);
    }
    CHECK(records[5].shifted == 0);
    CHECK(records[6].shifted == 0);
}

TEST_CASE("run is deterministic: identical metrics and counters") {
    const SimConfig cfg = small_world(12);
    const SimResult a = run_simulation(cfg);
    const SimResult b = run_simulation(cfg);
    CHECK(a.metrics.mean_delay_ms == b.metrics.mean_delay_ms);
    CHECK(a.metrics.throughput_kbps == b.metrics.throughput_kbps);
    CHECK(a.metrics.pdr == b.metrics.pdr);
    CHECK(a.metrics.overhead == b.metrics.overhead);
    CHECK(a.metrics.energy_consumed == b.metrics.energy_consumed);
    CHECK(a.generated == b.generated);
    CHECK(a.delivered == b.delivered);
    CHECK(a.shifts == b.shifts);
    CHECK(a.trace.size() == b.trace.size());
}

TEST_CASE("no traffic: convention metrics") {
    SimConfig cfg = small_world(3);
    cfg.offered_load = 0.0;
    const SimResult result = run_simulation(cfg);
    CHECK(result.generated == 0);
    CHECK(result.metrics.pdr == 1.0);
    CHECK(result.metrics.throughput_kbps == 0.0);
    CHECK(result.metrics.mean_delay_ms == 0.0);
}

TEST_CASE("no relays: nothing serves, everything queues") {
    SimConfig cfg;
    cfg.node_count = 7;
    cfg.primary_count = 5;  // leaves zero relays
    cfg.sim_time = 20.0;
    const SimResult result = run_simulation(cfg);
    CHECK(result.generated > 0);
    CHECK(result.delivered == 0);
    CHECK(result.metrics.pdr == 0.0);
    CHECK(result.metrics.mean_delay_ms == 1000.0 * cfg.sim_time);  // censored at the horizon
    CHECK(result.conservation_violations == 0);
}

TEST_CASE("conservation and the energy identity hold across seeds") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SimResult result = run_simulation(small_world(seed));
        CHECK(result.conservation_violations == 0);
        const double expected = 0.660 * result.total_tx_time + 0.395 * result.total_rx_time;
        CHECK(result.total_energy_debited ==
              doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("node energy stays within bounds and dead nodes stop") {
    SimConfig cfg = small_world(9);
    cfg.initial_energy = 3.0;  // force exhaustion
    cfg.sim_time = 80.0;
    Simulation sim(cfg);
    const SimResult result = sim.run();
    for (const auto& node : sim.nodes()) {
        CHECK(node.energy >= 0.0);
        CHECK(node.energy <= cfg.initial_energy);
    }
    CHECK(result.conservation_violations == 0);
}

TEST_CASE("epoch decisions replay from the logged gains") {
    SimConfig cfg = small_world(15);
    const SimResult result = run_simulation(cfg);
    REQUIRE(!result.epochs.empty());
    int nonempty = 0;
    for (const auto& epoch : result.epochs) {
        const auto expected = oracle::straight_line_selection(
            epoch.gains, cfg.tx_power, cfg.noise_power, cfg.snr_threshold);
        CHECK(epoch.decision.candidate_set == expected.u);
        CHECK(epoch.decision.optimal_set == expected.v);
        CHECK(epoch.decision.best == expected.best);
        nonempty += !epoch.eligible_nodes.empty();
    }
    CHECK(nonempty > 0);
}

TEST_CASE("packet records are internally consistent") {
    const SimResult result = run_simulation(small_world(8));
    CHECK(result.generated == result.packets.size());
    int shifted_and_delivered = 0;
    for (const auto& packet : result.packets) {
        if (packet.delivered_at) {
            CHECK(*packet.delivered_at >= packet.created_at);
            CHECK(packet.hops >= 1);
            const double delay = *packet.delivered_at - packet.created_at;
            CHECK(delay == doctest::Approx(packet.queueing_delay + packet.service_delay)
                               .epsilon(1e-9));
            if (packet.shifted > 0) {
                ++shifted_and_delivered;
                // a shifted packet spent extra time waiting beyond its airtime
                CHECK(delay > packet.service_delay);
            }
        }
    }
    CHECK(result.metrics.pdr >= 0.0);
    CHECK(result.metrics.pdr <= 1.0);
}

TEST_CASE("throughput never exceeds the offered load") {
    for (std::uint64_t seed : {2ull, 6ull, 11ull}) {
        SimConfig cfg = small_world(seed);
        const SimResult result = run_simulation(cfg);
        CHECK(result.metrics.throughput_kbps <=
              cfg.offered_load * cfg.packet_size / 1000.0 + 1e-9);
    }
}

TEST_CASE("static policy never shifts packets") {
    SimConfig cfg = small_world(13);
    cfg.policy = RelayPolicy::static_random;
    const SimResult result = run_simulation(cfg);
    CHECK(result.shifts == 0);
    CHECK(result.control_messages == 0);
    CHECK(result.metrics.overhead == 0.0);
}

TEST_CASE("paired policies see the identical world and channel") {
    SimConfig cfg = small_world(10);
    cfg.policy = RelayPolicy::clsss;
    const SimResult clsss = run_simulation(cfg);
    cfg.policy = RelayPolicy::static_random;
    const SimResult fixed = run_simulation(cfg);
    REQUIRE(clsss.epochs.size() == fixed.epochs.size());
    for (std::size_t e = 0; e < clsss.epochs.size(); ++e) {
        CHECK(clsss.epochs[e].eligible_nodes == fixed.epochs[e].eligible_nodes);
        CHECK(clsss.epochs[e].gains.source_relay_gains ==
              fixed.epochs[e].gains.source_relay_gains);
        CHECK(clsss.epochs[e].gains.relay_dest_gains == fixed.epochs[e].gains.relay_dest_gains);
        CHECK(clsss.epochs[e].dest_pos.x == fixed.epochs[e].dest_pos.x);
        CHECK(clsss.epochs[e].dest_pos.y == fixed.epochs[e].dest_pos.y);
    }
}

TEST_CASE("halving the offered load never increases mean queueing delay") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        SimConfig cfg = small_world(seed);
        auto mean_queueing = [](const SimResult& result) {
            double total = 0.0;
            std::size_t count = 0;
            for (const auto& packet : result.packets) {
                if (packet.delivered_at) {
                    total += packet.queueing_delay;
                    ++count;
                }
            }
            return count == 0 ? 0.0 : total / static_cast<double>(count);
        };
        const double full = mean_queueing(run_simulation(cfg));
        cfg.offered_load /= 2.0;
        const double half = mean_queueing(run_simulation(cfg));
        CHECK(half <= full + 1e-9);
    }
}

TEST_CASE("a run with stable relay selection produces zero shifts") {
    SimConfig cfg;
    cfg.node_count = 4;
    cfg.relay_count = 1;
    cfg.primary_count = 1;
    cfg.arena_side = 60.0;
    cfg.tx_range = 80.0;  // nearly always connected in a 60 m arena
    cfg.sim_time = 30.0;
    cfg.seed = 2;
    const SimResult result = run_simulation(cfg);
    CHECK(result.delivered > 0);
    CHECK(result.shifts == 0);  // single relay: the decision cannot change
}
