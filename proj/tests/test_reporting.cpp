#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "crn/commands.hpp"
#include "crn/config_io.hpp"
#include "crn/result_table.hpp"

using namespace crn;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("reporting_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

RunManifest manifest_with_seeds(std::vector<std::uint64_t> seeds) {
    RunManifest manifest;
    manifest.seeds = std::move(seeds);
    return manifest;
}

}  // namespace

TEST_CASE("csv round trip is lossless") {
    ResultTable table;
    table.columns = {"seed", "value", "set", "note"};
    table.rows.push_back({1.0, 0.25, std::string("1;2;3"), std::string("plain")});
    table.rows.push_back({2.0, 1e-12, std::string(""), std::string("comma, quoted \"x\"")});

    const std::string csv = to_csv(table);
    const ResultTable parsed = from_csv(csv);
    REQUIRE(parsed.columns == table.columns);
    REQUIRE(parsed.rows.size() == table.rows.size());
    CHECK(std::get<double>(parsed.rows[0][0]) == 1.0);
    CHECK(std::get<double>(parsed.rows[0][1]) == 0.25);
    CHECK(std::get<std::string>(parsed.rows[0][2]) == "1;2;3");
    CHECK(std::get<double>(parsed.rows[1][1]) == 1e-12);
    CHECK(std::get<std::string>(parsed.rows[1][3]) == "comma, quoted \"x\"");
    CHECK(to_csv(parsed) == csv);
}

TEST_CASE("json output carries the same cells") {
    ResultTable table;
    table.columns = {"a", "b"};
    table.rows.push_back({0.5, std::string("x;y")});
    CHECK(to_json(table) == "{\"columns\":[\"a\",\"b\"],\"rows\":[[0.5,\"x;y\"]]}");
}

TEST_CASE("config hashing is stable and whitespace-insensitive") {
    const Json a = Json::parse(R"({"x": 1, "y": [1, 2]})");
    const Json b = Json::parse(R"({ "x":1,"y":[1,2] })");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("manifest validation") {
    RunManifest manifest;
    CHECK_THROWS_AS(manifest.validate(), ConfigError);
    manifest.seeds = {1};
    manifest.output_format = "xml";
    CHECK_THROWS_AS(manifest.validate(), ConfigError);
    manifest.output_format = "json";
    CHECK_NOTHROW(manifest.validate());
}

TEST_CASE("instance loader: dB conversion and field errors") {
    const Json good = Json::parse(R"({
        "primary_links": [{"tx": [0, 0], "rx": [10, 0]}],
        "secondary_links": [{"tx": [100, 0], "rx": [110, 0]}],
        "transmit_power_w": 2.0,
        "noise_power_w": 1e-7,
        "sinr_floor_db": 10.0,
        "bandwidth_hz": 2e6
    })");
    const SharingInstance instance = instance_from_json(good, "test");
    CHECK(instance.primary_count() == 1);
    CHECK(instance.secondary_count() == 1);
    CHECK(instance.transmit_power == 2.0);
    CHECK(instance.sinr_floor == doctest::Approx(10.0));

    CHECK_THROWS_WITH_AS(
        instance_from_json(Json::parse(R"({"sinr_floor_db": 1, "sinr_floor_linear": 2})"), "test"),
        doctest::Contains("not both"), ConfigError);
    CHECK_THROWS_WITH_AS(instance_from_json(Json::parse(R"({"unknown_knob": 3})"), "test"),
                         doctest::Contains("unknown_knob"), ConfigError);
    CHECK_THROWS_WITH_AS(instance_from_json(Json::parse(R"({"noise_power_w": "loud"})"), "test"),
                         doctest::Contains("noise_power_w"), ConfigError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"([1,2,3])"), "test"), ConfigError);
}

TEST_CASE("sim config loader: packet size forms and policy names") {
    const SimConfig kb = sim_from_json(Json::parse(R"({"packet_size_kb": 256})"), "test");
    CHECK(kb.packet_size == 256.0 * 1024.0 * 8.0);
    const SimConfig bits = sim_from_json(Json::parse(R"({"packet_size_bits": 1000})"), "test");
    CHECK(bits.packet_size == 1000.0);
    CHECK_THROWS_AS(
        sim_from_json(Json::parse(R"({"packet_size_kb": 1, "packet_size_bits": 1})"), "test"),
        ConfigError);

    const SimConfig fixed =
        sim_from_json(Json::parse(R"({"policy": "static-random", "snr_threshold_db": 3.0})"),
                      "test");
    CHECK(fixed.policy == RelayPolicy::static_random);
    CHECK(fixed.snr_threshold == doctest::Approx(db_to_linear(3.0)));
    CHECK_THROWS_AS(sim_from_json(Json::parse(R"({"policy": "oracle"})"), "test"), ConfigError);
}

TEST_CASE("missing config file reports the path") {
    CHECK_THROWS_WITH_AS(load_json_file("does_not_exist.json"),
                         doctest::Contains("does_not_exist.json"), ConfigError);
    const std::string path = write_temp("broken.json", "{\"a\": ");
    CHECK_THROWS_AS(load_json_file(path), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("select-relay command: shape, determinism, provenance") {
    auto manifest = manifest_with_seeds({1});
    ResultTable one = run_select_relay(manifest);
    REQUIRE(one.rows.size() == 1);
    REQUIRE(one.columns.size() == one.rows[0].size());

    // best id, when present, lies in 1..M
    const Cell& best = one.rows[0][3];
    if (std::holds_alternative<double>(best)) {
        CHECK(std::get<double>(best) >= 1.0);
        CHECK(std::get<double>(best) <= 10.0);
    }

    manifest.seeds.clear();
    for (std::uint64_t s = 1; s <= 100; ++s) {
        manifest.seeds.push_back(s);
    }
    const ResultTable hundred = run_select_relay(manifest);
    CHECK(hundred.rows.size() == 100);
    CHECK(to_csv(run_select_relay(manifest)) == to_csv(hundred));  // byte-stable

    // every row carries seed + config hash
    CHECK(hundred.columns[0] == "seed");
    CHECK(hundred.columns[1] == "config_hash");
}

TEST_CASE("share command requires a config and honors --exact") {
    auto manifest = manifest_with_seeds({1, 2});
    CHECK_THROWS_AS(run_share(manifest, false), ConfigError);

    manifest.config_path = write_temp("share.json", R"({
        "secondary_links": [
            {"tx": [0, 0], "rx": [10, 0]},
            {"tx": [500, 500], "rx": [510, 500]},
            {"tx": [900, 0], "rx": [890, 0]}
        ],
        "noise_power_w": 1e-6,
        "sinr_floor_db": 0.0,
        "pso": {"iterations": 60}
    })");
    const ResultTable swarm = run_share(manifest, false);
    REQUIRE(swarm.rows.size() == 2);
    const ResultTable exact = run_share(manifest, true);
    REQUIRE(exact.rows.size() == 2);
    // independent far-apart links: both solvers activate everything
    CHECK(std::get<std::string>(exact.rows[0][5]) == "111");
    CHECK(std::get<double>(exact.rows[0][3]) ==
          doctest::Approx(std::get<double>(swarm.rows[0][3])));
    std::remove(manifest.config_path.c_str());
}

TEST_CASE("sweep command: grid shape and relaxation monotonicity") {
    auto manifest = manifest_with_seeds({1, 2, 3, 4, 5});
    const std::vector<std::size_t> links{2, 4, 6};
    const std::vector<double> gammas{6.0, 10.0};
    const ResultTable grid = run_share_sweep(manifest, links, gammas);
    REQUIRE(grid.rows.size() == 3);
    REQUIRE(grid.columns.size() == 1 + gammas.size() + 2);  // links, per-floor means, seeds, hash
    for (std::size_t col = 1; col <= gammas.size(); ++col) {
        for (std::size_t row = 1; row < grid.rows.size(); ++row) {
            const double above = std::get<double>(grid.rows[row - 1][col]);
            const double here = std::get<double>(grid.rows[row][col]);
            CHECK(here >= above * (1 - 1e-12));
        }
    }

    CHECK_THROWS_AS(run_share_sweep(manifest, {}, gammas), ConfigError);
    CHECK_THROWS_AS(run_share_sweep(manifest, links, {}), ConfigError);
}

TEST_CASE("compare command: row structure and self-comparison") {
    auto manifest = manifest_with_seeds({1, 2});
    manifest.config_path = write_temp("compare.json", R"({
        "node_count": 25, "primary_count": 3, "sim_time_s": 30
    })");
    const ResultTable table =
        run_compare(manifest, {"clsss", "static-random"}, {20, 25});
    REQUIRE(table.rows.size() == 4);  // 2 policies x 2 levels
    CHECK(std::get<std::string>(table.rows[0][0]) == "clsss");
    CHECK(std::get<std::string>(table.rows[2][0]) == "static-random");

    CHECK_THROWS_AS(run_compare(manifest, {"clsss"}, {20}), ConfigError);

    const ResultTable self = run_compare(manifest, {"clsss", "clsss"}, {20, 25});
    REQUIRE(self.rows.size() == 4);
    for (std::size_t level = 0; level < 2; ++level) {
        for (std::size_t col = 2; col <= 6; ++col) {
            CHECK(std::get<double>(self.rows[level][col]) ==
                  std::get<double>(self.rows[level + 2][col]));
        }
    }
    std::remove(manifest.config_path.c_str());
}
