#include <cstdlib>
#include <sstream>
#include <string>

#include "doctest.h"

#include "resolvent_lab/errors.hpp"
#include "resolvent_lab/verify.hpp"

namespace rl = resolvent_lab;

TEST_CASE("reports survive a json round trip") {
    rl::VerificationReport rep;
    rep.check_id = "distortion";
    rep.seed = 7;
    rep.parameters["x"] = "8";
    rep.parameters["sup_abs"] = "0.51139323043";
    rep.margin = 4.64e-4;
    rep.pass = true;
    rep.runtime_ms = 12;

    const rl::VerificationReport back = rl::report_from_json(rl::report_to_json(rep));
    CHECK(back.check_id == rep.check_id);
    CHECK(back.seed == rep.seed);
    CHECK(back.parameters == rep.parameters);
    CHECK(back.margin == rep.margin);
    CHECK(back.pass == rep.pass);
    CHECK(back.runtime_ms == rep.runtime_ms);

    CHECK_THROWS_AS(rl::report_from_json("{not json"), rl::Error);
}

TEST_CASE("closed-form checks pass") {
    rl::SuiteConfig config;
    config.checks = {"r0", "class-radii-unit"};
    const auto reports = rl::run_suite(config);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].check_id == "r0");
    CHECK(reports[1].check_id == "class-radii-unit");
    for (const auto& rep : reports) {
        CHECK(rep.pass);
        CHECK(rep.margin >= -1e-8);
        CHECK(rep.runtime_ms >= 0);
    }
}

TEST_CASE("unknown check ids are rejected up front") {
    rl::SuiteConfig config;
    config.checks = {"r0", "no-such-check"};
    CHECK_THROWS_AS(rl::run_suite(config), rl::Error);
}

TEST_CASE("the known check list is stable and duplicate free") {
    const auto& ids = rl::known_checks();
    CHECK(ids.size() == 24);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) CHECK(ids[i] != ids[j]);
}

TEST_CASE("csv summary has the pinned header") {
    rl::SuiteConfig config;
    config.checks = {"r0"};
    const auto reports = rl::run_suite(config);
    std::ostringstream out;
    rl::write_csv_summary(out, reports);
    const std::string text = out.str();
    CHECK(text.rfind("check_id,seed,x,margin,pass\n", 0) == 0);
    CHECK(text.find("r0,") != std::string::npos);
}

TEST_CASE("json lines round trip through the writers") {
    rl::SuiteConfig config;
    config.checks = {"r0", "class-radii-unit"};
    const auto reports = rl::run_suite(config);
    std::ostringstream out;
    rl::write_json_lines(out, reports);
    std::istringstream in(out.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        const rl::VerificationReport rep = rl::report_from_json(line);
        CHECK(rep.check_id == reports[n].check_id);
        CHECK(rep.margin == reports[n].margin);
        ++n;
    }
    CHECK(n == reports.size());
}

TEST_CASE("identical configs give identical payloads") {
    rl::SuiteConfig config;
    config.checks = {"resolvent-oracle"};
    const auto a = rl::run_suite(config);
    const auto b = rl::run_suite(config);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].check_id == b[i].check_id);
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].margin == b[i].margin);
        CHECK(a[i].parameters == b[i].parameters);
    }
}

TEST_CASE("thread plumbing does not change results") {
    rl::SuiteConfig config;
    config.checks = {"r0", "class-radii-unit", "resolvent-oracle"};
    config.threads = 1;
    const auto serial = rl::run_suite(config);
    config.threads = 3;
    const auto parallel = rl::run_suite(config);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].check_id == parallel[i].check_id);
        CHECK(serial[i].margin == parallel[i].margin);
    }
}

TEST_CASE("worker count resolution") {
    CHECK(rl::worker_count(3) == 3);
    CHECK(rl::worker_count(1) == 1);

    const char* saved = std::getenv("RESOLVENT_LAB_THREADS");
    const std::string restore = saved ? saved : "";
    setenv("RESOLVENT_LAB_THREADS", "2", 1);
    CHECK(rl::worker_count(0) == 2);
    setenv("RESOLVENT_LAB_THREADS", "junk", 1);
    CHECK(rl::worker_count(0) >= 1);  // falls through to the hardware count
    if (saved)
        setenv("RESOLVENT_LAB_THREADS", restore.c_str(), 1);
    else
        unsetenv("RESOLVENT_LAB_THREADS");
}
