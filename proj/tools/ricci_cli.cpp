// Command-line front end. All geometry runs through the shared library's C
// interface; this file only handles flags, files, and exit codes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "defaults_embed.hpp"
#include "ricci.h"

namespace fs = std::filesystem;

namespace {

struct RunFlags {
    int res = 256;
    int order = 4;
    double tol = 1e-3;
    int torus_res = 512;
    std::string out_dir = ".";
    std::vector<std::string> formats;
    CLI::Option* res_opt = nullptr;
};

RunFlags load_defaults() {
    const auto j = nlohmann::json::parse(embedded_defaults);
    if (j.at("defaults_version").get<int>() != 1)
        throw std::runtime_error("unsupported defaults_version in the embedded defaults");
    RunFlags f;
    f.res = j.at("res").get<int>();
    f.order = j.at("order").get<int>();
    f.tol = j.at("tol").get<double>();
    f.torus_res = j.at("torus_res").get<int>();
    return f;
}

void add_output_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--out", f.out_dir, "directory for the emitted files")
        ->capture_default_str();
    cmd->add_option("--format", f.formats,
                    "restrict emitted files to these formats (default: all)")
        ->check(CLI::IsMember({"json", "csv", "obj"}));
}

void add_grid_flags(CLI::App* cmd, RunFlags& f) {
    f.res_opt = cmd->add_option("--res", f.res, "grid resolution, a power of two in 32..4096")
                    ->capture_default_str();
    cmd->add_option("--order", f.order, "finite-difference order, 2 or 4")
        ->capture_default_str();
    cmd->add_option("--tol", f.tol, "residual tolerance").capture_default_str();
    add_output_flags(cmd, f);
}

std::string options_json(const RunFlags& f) {
    if (f.res_opt && f.res_opt->count())
        return nlohmann::json{{"res", f.res},
                              {"order", f.order},
                              {"tol", f.tol},
                              {"torus_res", f.res}}
            .dump();
    return nlohmann::json{
        {"res", f.res}, {"order", f.order}, {"tol", f.tol}, {"torus_res", f.torus_res}}
        .dump();
}

bool wanted(const std::string& filename, const std::vector<std::string>& formats) {
    if (formats.empty())
        return true;
    for (const auto& fmt : formats)
        if (filename.size() > fmt.size() + 1 &&
            filename.compare(filename.size() - fmt.size() - 1, fmt.size() + 1, "." + fmt) == 0)
            return true;
    return false;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Prints the check lines, writes the requested files, frees the handle, and
/// converts the status into the process exit code.
int finish(ricci_status status, ricci_run* run, const RunFlags& f, const std::string& label) {
    if (!run) {
        std::cerr << "error: " << ricci_last_error() << "\n";
        return 2;
    }
    for (size_t k = 0; k < ricci_run_check_count(run); ++k)
        std::cout << ricci_run_check_line(run, k) << "\n";

    fs::create_directories(f.out_dir);
    for (size_t k = 0; k < ricci_run_file_count(run); ++k) {
        const std::string name = ricci_run_file_name(run, k);
        if (!wanted(name, f.formats))
            continue;
        const fs::path path = fs::path(f.out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        out.write(ricci_run_file_content(run, k),
                  std::streamsize(ricci_run_file_size(run, k)));
        if (!out.flush()) {
            std::cerr << "error: cannot write " << path.string() << "\n";
            ricci_run_free(run);
            return 2;
        }
        std::cout << "wrote " << path.string() << "\n";
    }
    const bool passed = ricci_run_passed(run) != 0;
    ricci_run_free(run);
    std::cout << label << ": " << (passed ? "PASS" : "FAIL") << "\n";
    return status == RICCI_OK ? 0 : status == RICCI_CHECKS_FAILED ? 1 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"construct and numerically verify ricci metrics"};
    app.set_version_flag("--version", ricci_version());
    app.require_subcommand(1);
    int code = 0;

    RunFlags gallery_flags, check_flags, torus_flags, measure_flags, polygon_flags;
    try {
        const RunFlags defaults = load_defaults();
        gallery_flags = check_flags = torus_flags = measure_flags = polygon_flags = defaults;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string gallery_name;
    int gallery_n = 0;
    auto* gallery = app.add_subcommand(
        "gallery", "build a named example metric, verify it, and emit its files");
    gallery->add_option("name", gallery_name, "entry name (see the library's gallery list)")
        ->required();
    gallery->add_option("n", gallery_n, "family parameter for the parametrized entries");
    add_grid_flags(gallery, gallery_flags);
    gallery->callback([&] {
        ricci_run* run = nullptr;
        const auto s = ricci_gallery(gallery_name.c_str(), gallery_n,
                                     options_json(gallery_flags).c_str(), &run);
        code = finish(s, run, gallery_flags, "gallery " + gallery_name);
    });

    std::string metric_path;
    auto* check = app.add_subcommand(
        "check-ricci", "verify the curvature equation for a metric document");
    check->add_option("metric", metric_path, "path to a metric JSON document")->required();
    add_grid_flags(check, check_flags);
    check->callback([&] {
        ricci_run* run = nullptr;
        const auto s = ricci_check_metric(read_file(metric_path).c_str(),
                                          options_json(check_flags).c_str(), &run);
        code = finish(s, run, check_flags, "check-ricci");
    });

    std::string measure_path;
    auto* measure = app.add_subcommand(
        "virtual-measure", "flux measurement of a log-harmonic function");
    measure->add_option("spec", measure_path, "path to a measure spec JSON document")
        ->required();
    add_output_flags(measure, measure_flags);
    measure->callback([&] {
        ricci_run* run = nullptr;
        const auto s = ricci_virtual_measure(read_file(measure_path).c_str(), &run);
        code = finish(s, run, measure_flags, "virtual-measure");
    });

    std::string torus_path;
    auto* torus = app.add_subcommand(
        "conical-torus", "solve for a flat torus metric with prescribed cone angles");
    torus->add_option("spec", torus_path, "path to a cone spec JSON document")->required();
    add_grid_flags(torus, torus_flags);
    torus->callback([&] {
        ricci_run* run = nullptr;
        const auto s = ricci_conical_torus(read_file(torus_path).c_str(),
                                           options_json(torus_flags).c_str(), &run);
        code = finish(s, run, torus_flags, "conical-torus");
    });

    int genus = 0;
    double alpha = 0;
    auto* polygon = app.add_subcommand(
        "polygon", "hyperbolic polygon gluing report for a genus >= 2 surface");
    polygon->add_option("genus", genus, "genus of the glued surface")->required();
    auto* alpha_opt =
        polygon->add_option("--alpha", alpha, "vertex angle (default: the special angle)");
    add_output_flags(polygon, polygon_flags);
    polygon->callback([&] {
        ricci_run* run = nullptr;
        const auto s = ricci_polygon(genus, alpha, alpha_opt->count() == 0 ? 1 : 0, &run);
        code = finish(s, run, polygon_flags, "polygon");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}
