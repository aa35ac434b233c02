#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "ricci.h"

namespace {

std::string file_named(const ricci_run* run, const std::string& name) {
    for (size_t k = 0; k < ricci_run_file_count(run); ++k)
        if (name == ricci_run_file_name(run, k))
            return {ricci_run_file_content(run, k), ricci_run_file_size(run, k)};
    return {};
}

} // namespace

TEST_CASE("version and idle error state") {
    REQUIRE(ricci_version() != nullptr);
    CHECK(std::strlen(ricci_version()) > 0);
    REQUIRE(ricci_last_error() != nullptr);
}

TEST_CASE("gallery run through the C interface") {
    ricci_run* run = nullptr;
    REQUIRE(ricci_gallery("plane", 0, "{\"res\": 32}", &run) == RICCI_OK);
    REQUIRE(run != nullptr);
    CHECK(ricci_run_passed(run) == 1);
    CHECK(ricci_run_file_count(run) == 4);
    CHECK(ricci_run_check_count(run) >= 2);
    CHECK(std::string(ricci_run_check_line(run, 0)).rfind("[PASS]", 0) == 0);
    CHECK(!file_named(run, "plane.metric.json").empty());
    CHECK(file_named(run, "plane.report.json").find("\"sign_class\": \"zero\"") !=
          std::string::npos);
    ricci_run_free(run);
}

TEST_CASE("invalid input leaves the handle null and sets the error") {
    ricci_run* run = reinterpret_cast<ricci_run*>(1);
    CHECK(ricci_gallery("not-a-surface", 0, nullptr, &run) == RICCI_INVALID_INPUT);
    CHECK(run == nullptr);
    CHECK(std::string(ricci_last_error()).find("unknown gallery entry") != std::string::npos);

    run = reinterpret_cast<ricci_run*>(1);
    CHECK(ricci_check_metric("{\"type\": \"spin", nullptr, &run) == RICCI_INVALID_INPUT);
    CHECK(run == nullptr);
    CHECK(std::string(ricci_last_error()).find("JSON parse error") != std::string::npos);

    CHECK(ricci_gallery(nullptr, 0, nullptr, &run) == RICCI_INVALID_INPUT);
    CHECK(ricci_gallery("plane", 0, "{\"res\": 33}", &run) == RICCI_INVALID_INPUT);
    CHECK(ricci_gallery("plane", 0, "{\"order\": 3}", &run) == RICCI_INVALID_INPUT);
    CHECK(ricci_gallery("plane", 0, "{\"tol\": -1}", &run) == RICCI_INVALID_INPUT);
    CHECK(ricci_polygon(1, 0.0, 1, &run) == RICCI_INVALID_INPUT);
}

TEST_CASE("failed checks still hand back the report") {
    const char* sphere =
        "{\"type\": \"closed-form\", \"chart\": {\"x0\": -0.5, \"x1\": 0.5, \"y0\": -0.5, "
        "\"y1\": 0.5}, \"payload\": {\"family\": \"round-sphere\"}}";
    ricci_run* run = nullptr;
    REQUIRE(ricci_check_metric(sphere, "{\"res\": 64}", &run) == RICCI_CHECKS_FAILED);
    REQUIRE(run != nullptr);
    CHECK(ricci_run_passed(run) == 0);
    CHECK(std::string(ricci_run_check_line(run, 0)).rfind("[FAIL]", 0) == 0);
    const std::string report = file_named(run, "check-ricci.report.json");
    CHECK(report.find("\"residual_sup\": 4.0") != std::string::npos);
    ricci_run_free(run);
}

TEST_CASE("torus, measure, and polygon entry points") {
    ricci_run* run = nullptr;
    const char* spec =
        "{\"background\": \"torus\", \"lattice\": [[1, 0], [0, 1]], \"cones\": "
        "[{\"x\": 0, \"y\": 0, \"beta\": 9.42477796076938}, "
        "{\"x\": 0.5, \"y\": 0.5, \"beta\": 3.141592653589793}]}";
    REQUIRE(ricci_conical_torus(spec, "{\"torus_res\": 128}", &run) == RICCI_CHECKS_FAILED);
    CHECK(file_named(run, "conical-torus.report.json").find("\"flatness\"") !=
          std::string::npos);
    ricci_run_free(run);

    REQUIRE(ricci_virtual_measure(
                "{\"f\": {\"kind\": \"log-abs\", \"h\": [[1, 1, 0]]}, \"expect_mu\": "
                "6.283185307179586}",
                &run) == RICCI_OK);
    ricci_run_free(run);

    REQUIRE(ricci_polygon(2, 0.0, 1, &run) == RICCI_OK);
    CHECK(file_named(run, "polygon.report.json").find("\"genus\": 2") != std::string::npos);
    ricci_run_free(run);
}

TEST_CASE("accessors are safe out of range and on null") {
    CHECK(ricci_run_passed(nullptr) == 0);
    CHECK(ricci_run_file_count(nullptr) == 0);
    CHECK(ricci_run_file_name(nullptr, 0) == nullptr);
    CHECK(ricci_run_check_line(nullptr, 7) == nullptr);
    ricci_run_free(nullptr);

    ricci_run* run = nullptr;
    REQUIRE(ricci_polygon(2, 0.0, 1, &run) == RICCI_OK);
    CHECK(ricci_run_file_name(run, 99) == nullptr);
    CHECK(ricci_run_file_content(run, 99) == nullptr);
    CHECK(ricci_run_file_size(run, 99) == 0);
    CHECK(ricci_run_check_line(run, 99) == nullptr);
    ricci_run_free(run);
}
