#include "ricci.h"

#include <exception>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ricci/gallery.hpp"

struct ricci_run {
    ricci::gallery::RunResult result;
    std::vector<std::string> check_lines;
};

namespace {

thread_local std::string t_last_error;

constexpr int res_min = 32, res_max = 4096;

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

ricci::gallery::RunOptions parse_options(const char* options_json) {
    ricci::gallery::RunOptions opt;
    if (!options_json || !*options_json)
        return opt;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(options_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("options: JSON parse error: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("options: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "res" || key == "torus_res") {
            if (!value.is_number_integer())
                throw std::invalid_argument("options: \"" + key + "\" must be an integer");
            const int v = value.get<int>();
            if (!power_of_two(v) || v < res_min || v > res_max)
                throw std::invalid_argument("options: \"" + key +
                                            "\" must be a power of two between 32 and 4096");
            (key == "res" ? opt.res : opt.torus_res) = v;
        } else if (key == "order") {
            if (!value.is_number_integer() || (value.get<int>() != 2 && value.get<int>() != 4))
                throw std::invalid_argument("options: \"order\" must be 2 or 4");
            opt.order = value.get<int>() == 2 ? ricci::analytic::FdOrder::second
                                              : ricci::analytic::FdOrder::fourth;
        } else if (key == "tol") {
            if (!value.is_number())
                throw std::invalid_argument("options: \"tol\" must be a number");
            const double v = value.get<double>();
            if (!(v > 0))
                throw std::invalid_argument("options: \"tol\" must be positive");
            opt.tol = v;
        } else {
            throw std::invalid_argument("options: unknown key \"" + key +
                                        "\" (expected res, order, tol, torus_res)");
        }
    }
    return opt;
}

const char* require_text(const char* text, const char* what) {
    if (!text)
        throw std::invalid_argument(std::string(what) + ": null pointer");
    return text;
}

ricci_status finish(ricci::gallery::RunResult result, ricci_run** out) {
    auto run = std::make_unique<ricci_run>();
    run->result = std::move(result);
    run->check_lines.reserve(run->result.checks.size());
    for (const auto& c : run->result.checks)
        run->check_lines.push_back((c.passed ? "[PASS] " : "[FAIL] ") + c.label +
                                   (c.detail.empty() ? "" : ": " + c.detail));
    const bool passed = run->result.passed;
    *out = run.release();
    t_last_error.clear();
    return passed ? RICCI_OK : RICCI_CHECKS_FAILED;
}

template <typename Fn>
ricci_status guarded(ricci_run** out, Fn&& fn) {
    if (!out) {
        t_last_error = "output handle: null pointer";
        return RICCI_INVALID_INPUT;
    }
    *out = nullptr;
    try {
        return finish(fn(), out);
    } catch (const std::invalid_argument& e) {
        t_last_error = e.what();
        return RICCI_INVALID_INPUT;
    } catch (const std::domain_error& e) {
        t_last_error = e.what();
        return RICCI_INVALID_INPUT;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return RICCI_INTERNAL_ERROR;
    } catch (...) {
        t_last_error = "unknown internal error";
        return RICCI_INTERNAL_ERROR;
    }
}

} // namespace

extern "C" {

const char* ricci_version(void) { return "0.1.0"; }

const char* ricci_last_error(void) { return t_last_error.c_str(); }

ricci_status ricci_gallery(const char* name, int param, const char* options_json,
                           ricci_run** out) {
    return guarded(out, [&] {
        return ricci::gallery::run_gallery(require_text(name, "gallery name"), param,
                                           parse_options(options_json));
    });
}

ricci_status ricci_check_metric(const char* metric_json, const char* options_json,
                                ricci_run** out) {
    return guarded(out, [&] {
        return ricci::gallery::run_check_metric(require_text(metric_json, "metric document"),
                                                parse_options(options_json));
    });
}

ricci_status ricci_virtual_measure(const char* spec_json, ricci_run** out) {
    return guarded(out, [&] {
        return ricci::gallery::run_virtual_measure(require_text(spec_json, "measure spec"));
    });
}

ricci_status ricci_conical_torus(const char* spec_json, const char* options_json,
                                 ricci_run** out) {
    return guarded(out, [&] {
        return ricci::gallery::run_conical_torus(require_text(spec_json, "cone spec"),
                                                 parse_options(options_json));
    });
}

ricci_status ricci_polygon(int genus, double alpha, int use_special, ricci_run** out) {
    return guarded(out, [&] {
        return use_special ? ricci::gallery::run_polygon(genus, nullptr)
                           : ricci::gallery::run_polygon(genus, &alpha);
    });
}

int ricci_run_passed(const ricci_run* run) { return run && run->result.passed ? 1 : 0; }

size_t ricci_run_file_count(const ricci_run* run) { return run ? run->result.files.size() : 0; }

const char* ricci_run_file_name(const ricci_run* run, size_t index) {
    if (!run || index >= run->result.files.size())
        return nullptr;
    return run->result.files[index].filename.c_str();
}

const char* ricci_run_file_content(const ricci_run* run, size_t index) {
    if (!run || index >= run->result.files.size())
        return nullptr;
    return run->result.files[index].content.c_str();
}

size_t ricci_run_file_size(const ricci_run* run, size_t index) {
    if (!run || index >= run->result.files.size())
        return 0;
    return run->result.files[index].content.size();
}

size_t ricci_run_check_count(const ricci_run* run) { return run ? run->check_lines.size() : 0; }

const char* ricci_run_check_line(const ricci_run* run, size_t index) {
    if (!run || index >= run->check_lines.size())
        return nullptr;
    return run->check_lines[index].c_str();
}

void ricci_run_free(ricci_run* run) { delete run; }

} // extern "C"
