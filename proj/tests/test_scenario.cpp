// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "beamplan/errors.hpp"
#include "beamplan/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace beamplan;
using namespace beamplan::scenario;

namespace {

std::string write_temp(const std::string &content)
{
    static int counter = 0;
    const std::string path = "scenario_test_" + std::to_string(counter++) + ".toml";
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace

TEST_CASE("toml subset parsing")
{
    const TomlTable t = parse_toml("top = 1.5\n"
                                   "[a]\n"
                                   "s = \"hello\" # trailing comment\n"
                                   "flag = true\n"
                                   "list = [0.5, 0.9]\n"
                                   "[b]\n"
                                   "n = -2e-3\n");
    CHECK(t.at("").at("top").as_number("top") == 1.5);
    CHECK(t.at("a").at("s").as_string("s") == "hello");
    CHECK(t.at("a").at("flag").as_bool("flag") == true);
    CHECK(t.at("a").at("list").as_array("list").size() == 2);
    CHECK(t.at("b").at("n").as_number("n") == -2e-3);
}

TEST_CASE("toml errors carry line numbers")
{
    try
    {
        parse_toml("[a]\nkey value\n", "f.toml");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError &e)
    {
        CHECK(std::string(e.what()).find("f.toml:2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_toml("x = \"unterminated\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("[broken\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("x = 1q\n"), ConfigError);
}

TEST_CASE("parse_range")
{
    const SweepRange r = parse_range("0.5:13.5:0.1");
    CHECK(r.lo == 0.5);
    CHECK(r.hi == 13.5);
    CHECK(r.step == 0.1);
    CHECK_THROWS_AS(parse_range("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_range("2:1:0.1"), ConfigError);
    CHECK_THROWS_AS(parse_range("0:1:0"), ConfigError);
}

TEST_CASE("default scenario")
{
    const Scenario s = default_scenario();
    CHECK(s.set.id == 4);
    CHECK(s.set.prefactor_override.has_value());
    const auto &pas = std::get<channel::GaussianPas>(s.channel);
    CHECK(pas.sigma_deg == 5.0);
    CHECK(pas.cluster_aoa_deg == 90.0);
    CHECK(pas.total_power_mw == 1.0);
}

TEST_CASE("scenario loading")
{
    const std::string path = write_temp("[channel]\n"
                                        "model = \"gaussian\"\n"
                                        "sigma_deg = 10.0\n"
                                        "total_power_dbm = -30.0\n"
                                        "[antenna]\n"
                                        "set = 3\n"
                                        "[solve]\n"
                                        "eta = [0.95, 0.5]\n"
                                        "[sweep]\n"
                                        "range = \"1:10:0.5\"\n");
    const Scenario s = load_scenario(path);
    CHECK(s.set.id == 3);
    const auto &pas = std::get<channel::GaussianPas>(s.channel);
    CHECK(pas.sigma_deg == 10.0);
    CHECK(pas.total_power_mw == doctest::Approx(1e-3).epsilon(1e-12));
    REQUIRE(s.etas.size() == 2);
    CHECK(s.etas[0] == 0.95);
    REQUIRE(s.sweep.has_value());
    CHECK(s.sweep->step == 0.5);
    std::remove(path.c_str());
}

TEST_CASE("scenario exact_eq13 strips the set-4 override")
{
    const std::string path = write_temp("[antenna]\nset = 4\nexact_eq13 = true\n");
    const Scenario s = load_scenario(path);
    CHECK(!s.set.prefactor_override.has_value());
    std::remove(path.c_str());
}

TEST_CASE("scenario custom antenna set")
{
    const std::string path = write_temp("[antenna]\n"
                                        "delta_phi_y_deg = 12.0\n"
                                        "delta_theta_deg = 25.0\n"
                                        "theta0_deg = 70.0\n");
    const Scenario s = load_scenario(path);
    CHECK(s.set.id == 0);
    CHECK(s.set.delta_phi_y_deg == 12.0);
    std::remove(path.c_str());
}

TEST_CASE("scenario fit channel")
{
    const std::string path = write_temp("[channel]\n"
                                        "model = \"fit\"\n"
                                        "u = 6.434e-5\n"
                                        "v_deg = 9.23\n");
    const Scenario s = load_scenario(path);
    const auto &fit = std::get<channel::GaussianFit>(s.channel);
    CHECK(fit.u == 6.434e-5);
    CHECK(fit.v_deg == 9.23);
    std::remove(path.c_str());
}

TEST_CASE("scenario rejects bad configs")
{
    const std::string bad_model = write_temp("[channel]\nmodel = \"3gpp\"\n");
    CHECK_THROWS_AS(load_scenario(bad_model), ConfigError);
    std::remove(bad_model.c_str());

    const std::string bad_sigma = write_temp("[channel]\nsigma_deg = -1\n");
    CHECK_THROWS_AS(load_scenario(bad_sigma), ConfigError);
    std::remove(bad_sigma.c_str());

    CHECK_THROWS_AS(load_scenario("does_not_exist.toml"), ConfigError);
}
