#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "npbo/config.hpp"
#include "npbo/report.hpp"

using namespace npbo;

TEST_CASE("config parser: sections, comments, trimming, typed access") {
    std::istringstream is(
        "# global\n"
        "seed = 7\n"
        "[picard]\n"
        "s = -0.5   # rough\n"
        "T = 0.25\n"
        "label =  gaussian run \n"
        "\n"
        "[grid]\n"
        "n = 512\n");
    ExperimentConfig cfg = ExperimentConfig::parse(is);
    CHECK(cfg.get_u64("seed", 0) == 7);
    CHECK(cfg.get_double("picard.s", 0.0) == doctest::Approx(-0.5));
    CHECK(cfg.get_double("picard.T", 0.0) == doctest::Approx(0.25));
    CHECK(cfg.get_string("picard.label", "") == "gaussian run");
    CHECK(cfg.get_u64("grid.n", 0) == 512);
    CHECK(cfg.has("picard.s"));
    CHECK(!cfg.has("picard.missing"));
    CHECK(cfg.get_double("picard.missing", 3.5) == 3.5);
}

TEST_CASE("config parser rejects malformed lines and bad numbers") {
    std::istringstream bad1("just some words\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(bad1), std::invalid_argument);
    std::istringstream bad2("= value\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(bad2), std::invalid_argument);
    std::istringstream nn("x = not_a_number\n");
    ExperimentConfig cfg = ExperimentConfig::parse(nn);
    CHECK_THROWS_AS(cfg.get_double("x", 0.0), std::invalid_argument);
    CHECK(cfg.get_string("x", "") == "not_a_number");
}

TEST_CASE("report JSON carries verdict, series, scalars, and notes") {
    EstimateReport rep;
    rep.name = "demo";
    rep.pass = true;
    rep.columns = {"t", "v"};
    rep.add_row({0.5, 1.25});
    rep.add_row({1.0, 2.5});
    rep.scalars["slope"] = 1.0;
    rep.notes.push_back("endpoint");
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["name"] == "demo");
    CHECK(j["pass"] == true);
    CHECK(j["columns"].size() == 2);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][1][1] == doctest::Approx(2.5));
    CHECK(j["scalars"]["slope"] == doctest::Approx(1.0));
    CHECK(j["notes"][0] == "endpoint");
}

TEST_CASE("report CSV round trips with full precision") {
    EstimateReport rep;
    rep.name = "csv";
    rep.columns = {"a", "b"};
    rep.add_row({1.0 / 3.0, 2.0});
    std::string path = "report_test.csv";
    rep.write_csv(path);
    std::ifstream is(path);
    std::string header, body;
    std::getline(is, header);
    std::getline(is, body);
    CHECK(header == "a,b");
    double a = 0.0, b = 0.0;
    std::sscanf(body.c_str(), "%lf,%lf", &a, &b);
    CHECK(a == 1.0 / 3.0);
    CHECK(b == 2.0);
    std::remove(path.c_str());
}

TEST_CASE("slope fits recover exact lines and power laws") {
    std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 - 2.0 * v);
    CHECK(fit_slope(x, y) == doctest::Approx(-2.0).epsilon(1e-14));

    std::vector<double> py;
    for (double v : x) py.push_back(5.0 * std::pow(v, 1.75));
    CHECK(fit_loglog_slope(x, py) == doctest::Approx(1.75).epsilon(1e-12));

    CHECK_THROWS_AS(fit_slope({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_slope({1.0, 2.0}, {1.0}), std::invalid_argument);
}
