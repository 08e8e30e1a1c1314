#include "probeboost/csv.hpp"
#include "probeboost/error.hpp"
#include "probeboost/kvconfig.hpp"
#include "probeboost/simgen.hpp"

#include <doctest.h>

#include <sstream>

using namespace probeboost;

TEST_CASE("read_csv extracts the response column") {
    std::istringstream in("a,y,b\n1,0,2\n3,1,4\n5,0,6\n");
    const auto data = read_csv(in, {"y", {}});
    CHECK(data.cols() == 2);
    CHECK(data.rows() == 3);
    CHECK(data.column_names == std::vector<std::string>{"a", "b"});
    CHECK(data.x(2, 1) == 6.0);
    CHECK(data.y(1) == 1.0);
    CHECK_FALSE(data.has_shadows());
}

TEST_CASE("read_csv error contract") {
    {
        std::istringstream in("a,y\n1,0\n,1\n");
        try {
            read_csv(in, {"y", {}});
            FAIL("expected an error");
        } catch (const DataError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("line 3") != std::string::npos);
            CHECK(msg.find("data row 2") != std::string::npos);
            CHECK(msg.find("'a'") != std::string::npos);
            CHECK(msg.find("empty") != std::string::npos);
        }
    }
    {
        std::istringstream in("a,y\n1,0\nfoo,1\n");
        CHECK_THROWS_WITH_AS(read_csv(in, {"y", {}}), doctest::Contains("non-numeric value 'foo'"), DataError);
    }
    {
        std::istringstream in("a,b\n1,0\n2,1\n");
        CHECK_THROWS_WITH_AS(read_csv(in, {"y", {}}), doctest::Contains("not found"), DataError);
    }
    {
        std::istringstream in("a,y\n1,0\n");
        CHECK_THROWS_AS(read_csv(in, {"y", {}}), DataError);
    }
    {
        std::istringstream in("a,y\n1,0\n2\n");
        CHECK_THROWS_AS(read_csv(in, {"y", {}}), DataError);
    }
    {
        std::istringstream in("a,y\n1,0\ninf,1\n");
        CHECK_THROWS_AS(read_csv(in, {"y", {}}), DataError);
    }
}

TEST_CASE("quoted headers, CRLF and ignored label columns") {
    std::istringstream in("\"\",\"g1\",\"y\"\r\n\"s1\",0.5,1\r\n\"s2\",-0.5,2\r\n");
    const auto data = read_csv(in, {"y", {""}});
    CHECK(data.column_names == std::vector<std::string>{"g1"});
    CHECK(data.y(1) == 2.0);
}

TEST_CASE("write_csv / read_csv round trip is exact") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto inst = simulate_instance({12, 7, 3, 0.9, 1, seed}, 0);
        std::ostringstream out;
        write_csv(out, inst.data, "resp");
        std::istringstream in(out.str());
        const auto back = read_csv(in, {"resp", {}});
        CHECK(back.x == inst.data.x);
        CHECK(back.y == inst.data.y);
        CHECK(back.column_names == inst.data.column_names);
        CHECK(back.shadow_mask == inst.data.shadow_mask);
    }
}

TEST_CASE("selection CSV") {
    std::ostringstream out;
    write_selection_csv(out, {"a", "b", "c"}, {2}, std::vector<double>{0.1, 0.0, 0.95});
    CHECK(out.str() == "variable,selected,frequency\na,0,0.1\nb,0,0\nc,1,0.95\n");
    std::ostringstream plain;
    write_selection_csv(plain, {"a", "b"}, {0});
    CHECK(plain.str() == "variable,selected\na,1\nb,0\n");
}

TEST_CASE("module configs round-trip through the key-value format") {
    auto through_text = [](const KeyValues& kv) {
        std::ostringstream out;
        write_kv(out, kv);
        std::istringstream in(out.str());
        return parse_kv(in);
    };
    const BoostConfig boost{0.123456789012345, 77, LossKind::Logistic, false};
    CHECK(boost_config_from_kv(through_text(to_kv(boost))) == boost);

    StabilityConfig stab;
    stab.b_subsamples = 64;
    stab.q = 13;
    stab.pi_thr = 0.7777777777777778;
    stab.pfer = 2.5;
    stab.m_stop_cap = 321;
    stab.seed = 18446744073709551615ULL;
    const auto back = stability_config_from_kv(through_text(to_kv(stab)));
    CHECK(back.b_subsamples == stab.b_subsamples);
    CHECK(back.q == stab.q);
    CHECK(back.pi_thr == stab.pi_thr);
    CHECK(back.pfer == stab.pfer);
    CHECK(back.m_stop_cap == stab.m_stop_cap);
    CHECK(back.seed == stab.seed);

    const CvConfig cv{17, 250, 9};
    CHECK(cv_config_from_kv(through_text(to_kv(cv))) == cv);

    const SimulationScenario s{500, 1000, 20, 0.3, 7, 42};
    CHECK(scenario_from_kv(through_text(to_kv(s))) == s);
}

TEST_CASE("key-value parsing") {
    std::istringstream in("# comment\n; also comment\n\nnu = 0.5\nloss = \"logistic\"\n");
    const auto kv = parse_kv(in);
    CHECK(kv.at("nu") == "0.5");
    CHECK(kv.at("loss") == "logistic");
    std::istringstream bad("nu 0.5\n");
    CHECK_THROWS_AS(parse_kv(bad), ConfigError);
    CHECK_THROWS_AS(boost_config_from_kv({{"nu", "abc"}}), ConfigError);
    CHECK_THROWS_AS(boost_config_from_kv({{"center", "maybe"}}), ConfigError);
}

TEST_CASE("scenario grid expansion") {
    const KeyValues kv{{"n", "100,500"}, {"p", "100, 500, 1000"}, {"p-inf", "5,20"}, {"replications", "3"}};
    const auto grid = scenario_grid_from_kv(kv);
    REQUIRE(grid.size() == 12);
    CHECK(grid.front().id() == "n100_p100_pinf5_rho0.9");
    CHECK(grid.back().id() == "n500_p1000_pinf20_rho0.9");
    CHECK(grid[1].p_inf == 20);
    CHECK(grid[5].replications == 3);
    CHECK_THROWS_AS(scenario_grid_from_kv({{"p", "5"}, {"p-inf", "6"}}), ConfigError);
}
