#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "fmcw/bench.hpp"
#include "fmcw/errors.hpp"
#include "fmcw/report.hpp"

using namespace fmcw;
using namespace fmcw::bench;

TEST_CASE("mae") {
    const std::vector<double> est = {1.0, 2.0, 4.0};
    const std::vector<double> truth = {1.0, 1.0, 2.0};
    CHECK(mae(est, truth) == doctest::Approx(1.0));
    CHECK_THROWS_AS(mae(est, std::vector<double>{1.0}), LengthMismatch);
    CHECK_THROWS_AS(mae(std::vector<double>{}, std::vector<double>{}), LengthMismatch);
}

TEST_CASE("format_number round-trips and stays short") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(100.0) == "100");
    CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
    CHECK(format_number(-1.5e-6) == "-1.5e-06");
}

TEST_CASE("report rows carry units and serialize deterministically") {
    ExperimentReport report;
    report.experiment = "Demo";
    report.seed = 7;
    report.rows.push_back({"row a", 1.25, 0.5, true, "cm"});
    report.rows.push_back({"row b", -3.0, 0.0, false, "mm"});
    report.footnotes.push_back("a footnote");
    for (const auto& row : report.rows) CHECK(!row.units.empty());

    std::ostringstream csv1, csv2, md;
    write_csv(report, csv1);
    write_csv(report, csv2);
    CHECK(csv1.str() == csv2.str());
    CHECK(csv1.str() ==
          "label,value,std_dev,units\n"
          "row a,1.25,0.5,cm\n"
          "row b,-3,,mm\n");

    write_markdown(report, md);
    const std::string text = md.str();
    CHECK(text.find("# Demo") != std::string::npos);
    CHECK(text.find("1.25 +- 0.5") != std::string::npos);
    CHECK(text.find("seed: 7") != std::string::npos);
    CHECK(text.find("a footnote") != std::string::npos);
}

TEST_CASE("trace and estimate CSV writers") {
    DisplacementTrace trace;
    trace.rate_hz = 100.0;
    trace.samples_m = {0.0, 1e-3};
    std::ostringstream out;
    write_trace_csv(trace, out);
    CHECK(out.str() == "time_s,displacement_m\n0,0\n0.01,0.001\n");

    std::ostringstream est;
    write_estimates_csv({{0.0, 72.0, 15.0, 1.0, 1.0}}, est);
    CHECK(est.str() == "window_start_s,hr_bpm,rr_brpm\n0,72,15\n");
}

TEST_CASE("range experiment: noiseless rows are near-exact and reproducible") {
    const RadarProfile p = make_profile(ProfileId::BGT120);
    const auto r1 = range_experiment(p, {0.3, 0.5}, PhantomKind::Metal, {});
    const auto r2 = range_experiment(p, {0.3, 0.5}, PhantomKind::Metal, {});
    REQUIRE(r1.rows.size() == 2);
    for (std::size_t i = 0; i < r1.rows.size(); ++i) {
        CHECK(r1.rows[i].value == r2.rows[i].value);  // bit-reproducible
        CHECK(std::abs(r1.rows[i].value) < 0.1);      // cm, well inside one padded bin
        CHECK(r1.rows[i].units == "cm");
        CHECK(r1.rows[i].has_std);
    }
    CHECK_THROWS_AS(range_experiment(p, {5.0}, PhantomKind::Metal, {}), OutOfRange);
}

TEST_CASE("baseline noise grows with sigma and is zero-floor noiseless") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    const double floor = baseline_noise_experiment(p, PhantomKind::Metal, 0.0, {});
    const double low = baseline_noise_experiment(p, PhantomKind::Metal, 0.0, {0.02, 0.0, 3});
    const double high = baseline_noise_experiment(p, PhantomKind::Metal, 0.0, {0.2, 0.0, 3});
    CHECK(floor < 1e-9);
    CHECK(low > 10.0 * floor);
    CHECK(high > 2.0 * low);
}

TEST_CASE("baseline noise rises off boresight and for gelatin") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    const NoiseModel noise{0.05, 0.0, 11};
    const double head_on = baseline_noise_experiment(p, PhantomKind::Metal, 0.0, noise);
    const double tilted = baseline_noise_experiment(p, PhantomKind::Metal, 40.0, noise);
    const double gelatin = baseline_noise_experiment(p, PhantomKind::Gelatin, 40.0, noise);
    CHECK(tilted > head_on);
    CHECK(gelatin > tilted);
}

TEST_CASE("displacement experiment: errors small, traces attached") {
    const RadarProfile p = make_profile(ProfileId::BGT60);
    const auto result = displacement_experiment(p, {0.3e-3}, PhantomKind::Metal, {});
    REQUIRE(result.report.rows.size() == 1);
    CHECK(result.report.rows[0].value < 0.02 * 0.6);  // mm: 2% of p2p
    REQUIRE(result.traces.size() == 1);
    CHECK(result.traces[0].truth.samples_m.size() == result.traces[0].estimate.samples_m.size());
}

TEST_CASE("vitals experiment produces 61 windows on 120 s and matches beats") {
    ChestParams chest;
    chest.hr_hz = 1.2;
    chest.rr_hz = 0.25;
    const auto result =
        vitals_experiment(make_profile(ProfileId::BGT120), chest, 120.0, {});
    CHECK(result.estimates.size() == 61);
    CHECK(result.mae_hr_bpm < 1.0);
    CHECK(result.mae_rr_brpm < 1.0);
    CHECK(result.beat_match.sensitivity() > 0.9);
    CHECK_THROWS_AS(vitals_experiment(make_profile(ProfileId::BGT120), chest, 30.0, {}),
                    TraceTooShort);
}
