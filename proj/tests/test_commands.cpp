#include <doctest.h>

#include "decim/commands.hpp"

using namespace decim;
using nlohmann::json;

namespace {

json nn_model(double beta) {
    return json{{"family", "nn_ising"}, {"J", 1.0}, {"beta", beta}};
}

}  // namespace

TEST_CASE("config validation rejects unknown keys and names missing fields") {
    json cfg;
    cfg["model"] = nn_model(0.5);
    cfg["geometry"] = {{"L", 1}, {"N", 2}};
    cfg["chain"] = {{"sweeps", 10}};
    CHECK_NOTHROW(parse_run_config("probe", cfg));

    json bad = cfg;
    bad["typo"] = 1;
    CHECK_THROWS_WITH_AS(parse_run_config("probe", bad), doctest::Contains("typo"), ConfigError);

    bad = cfg;
    bad["model"].erase("beta");
    CHECK_THROWS_WITH_AS(parse_run_config("probe", bad), doctest::Contains("model.beta"),
                         ConfigError);

    bad = cfg;
    bad["chain"]["sweeps"] = "many";
    CHECK_THROWS_WITH_AS(parse_run_config("probe", bad), doctest::Contains("chain.sweeps"),
                         ConfigError);

    bad = cfg;
    bad["geometry"]["N"] = 1;
    CHECK_THROWS_AS(parse_run_config("probe", bad), ConfigError);

    // long-range models must state a truncation radius
    bad = cfg;
    bad["model"] = {{"family", "iso_lr_ising"}, {"J", 1.0}, {"beta", 0.5}, {"alpha1", 3.0}};
    CHECK_THROWS_WITH_AS(parse_run_config("probe", bad),
                         doctest::Contains("truncation_radius"), ConfigError);

    CHECK_THROWS_AS(parse_run_config("fly", cfg), ConfigError);
}

TEST_CASE("oracle command: free block has exactly zero means") {
    json cfg;
    cfg["model"] = nn_model(0.8);
    cfg["oracle"] = {{"kind", "enumerate_ising"},
                     {"sites", {{0, 0}, {0, 1}, {1, 0}, {1, 1}}},
                     {"boundary", "free"}};
    const CommandResult res = run_command("oracle", cfg);
    for (const auto& row : res.summary.at("result").at("free_sites"))
        CHECK(std::fabs(row.at("mean").get<double>()) < 1e-12);
}

TEST_CASE("oracle command: onsager") {
    json cfg;
    cfg["model"] = nn_model(0.6);
    cfg["oracle"] = {{"kind", "onsager"}};
    const CommandResult res = run_command("oracle", cfg);
    CHECK(res.summary.at("spontaneous_magnetization").get<double>() ==
          doctest::Approx(0.97355).epsilon(1e-4));
}

TEST_CASE("decimate command halves the window") {
    SpinConfiguration c(SpinKind::scalar, BoxRegion(4), 1.0);
    c.set_value(Site{2, 4}, -1.0);
    json cfg;
    cfg["decimate"] = {{"configuration", c.to_json()}};
    const CommandResult res = run_command("decimate", cfg);
    CHECK(res.summary.at("output_L") == 2);
    const auto out = SpinConfiguration::from_json(res.summary.at("configuration"));
    CHECK(out.value(Site{1, 2}) == -1.0);
    REQUIRE(res.artifacts.size() == 1);
    CHECK(res.artifacts[0].first == "decimated.json");

    json bad;
    bad["decimate"] = {{"configuration", {{"kind", "scalar"}, {"L", 1}}}};
    CHECK_THROWS_AS(run_command("decimate", bad), ConfigError);
}

TEST_CASE("energy-bound and annulus commands") {
    json cfg;
    cfg["model"] = nn_model(0.5);
    cfg["energy_bound"] = {{"L", 2}, {"N", 3}};
    const CommandResult res = run_command("energy-bound", cfg);
    CHECK(res.summary.at("bound").get<double>() == 0.0);
    CHECK(res.artifacts[0].first == "energy_bound.csv");

    json acfg;
    acfg["model"] = {{"family", "iso_lr_ising"},
                     {"J", 1.0},
                     {"beta", 1.0},
                     {"alpha1", 4.0},
                     {"truncation_radius", 8}};
    acfg["annulus"] = {{"L_list", {2, 4}}, {"target_C", 1.0}};
    const CommandResult ares = run_command("annulus", acfg);
    const auto& rows = ares.summary.at("rows");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].at("bound_C").get<double>() <= 1.0);
    CHECK(rows[1].at("N").get<int64_t>() > rows[0].at("N").get<int64_t>());
    const std::string& csv = ares.artifacts[0].second;
    CHECK(csv.rfind(annulus_csv_header, 0) == 0);
}

TEST_CASE("magnetize command is deterministic and ordered") {
    json cfg;
    cfg["model"] = nn_model(0.7);
    cfg["magnetize"] = {{"box_half_width", 3}};
    cfg["chain"] = {{"sweeps", 400}, {"burn_in", 100}, {"seed", 11}};
    const CommandResult a = run_command("magnetize", cfg);
    const CommandResult b = run_command("magnetize", cfg);
    CHECK(a.summary.dump() == b.summary.dump());
    REQUIRE(a.artifacts.size() == b.artifacts.size());
    for (size_t i = 0; i < a.artifacts.size(); ++i) CHECK(a.artifacts[i] == b.artifacts[i]);
    CHECK(a.summary.at("plus").at("mean").get<double>() >=
          a.summary.at("minus").at("mean").get<double>());
    CHECK(a.summary.at("difference").get<double>() ==
          a.summary.at("plus").at("mean").get<double>() -
              a.summary.at("minus").at("mean").get<double>());
}

TEST_CASE("probe command emits the pinned CSV header") {
    json cfg;
    cfg["model"] = nn_model(0.3);
    cfg["geometry"] = {{"L", 1}, {"N", 2}};
    cfg["chain"] = {{"sweeps", 200}, {"burn_in", 20}, {"seed", 5}};
    cfg["probe"] = {{"replicas", 2}};
    const CommandResult res = run_command("probe", cfg);
    const std::string& csv = res.artifacts[0].second;
    CHECK(csv.rfind(probe_csv_header, 0) == 0);
    CHECK(res.summary.at("report").at("m_plus").at("n_samples").get<int64_t>() == 400);

    const CommandResult res2 = run_command("probe", cfg);
    CHECK(res.artifacts[0].second == res2.artifacts[0].second);
}

TEST_CASE("dry-run plans without sampling") {
    json cfg;
    cfg["model"] = nn_model(1.2);
    cfg["geometry"] = {{"L", 4}, {"N", 6}};
    cfg["chain"] = {{"sweeps", 100000000}, {"seed", 1}};  // would take ages if run
    const auto plan = dry_run_plan("probe", cfg);
    CHECK(plan.at("valid") == true);
    CHECK(plan.at("free_spins").get<int64_t>() == 457);
    CHECK(plan.at("original_box_half_width") == 12);
    CHECK(plan.at("kernel").at("entries") == 9);
}
