#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "harmin/errors.hpp"
#include "harmin/json_io.hpp"
#include "harmin/scenario.hpp"
#include "harmin/zonoid_random.hpp"

namespace {

// Exit codes: 0 pass, 1 criterion failure, 2 schema violation, 3 guard
// violation. Failures also emit one machine-readable JSON line on stderr.
constexpr int kExitCriteria = 1;
constexpr int kExitSchema = 2;
constexpr int kExitGuard = 3;

void emit_error(const std::string& category, const std::string& message, const std::string& scenario) {
    harmin::Json err{{"error", category}, {"message", message}};
    if (!scenario.empty()) err["scenario"] = scenario;
    std::cerr << err.dump() << "\n";
}

std::optional<std::filesystem::path> default_out_dir() {
    if (const char* env = std::getenv("HARMIN_OUT_DIR"); env && *env)
        return std::filesystem::path(env);
    return std::nullopt;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir, int refine,
            std::optional<std::uint64_t> seed) {
    harmin::RunOptions opts;
    opts.refine = refine;
    opts.seed_override = seed;
    if (!out_dir.empty())
        opts.out_dir = out_dir;
    else
        opts.out_dir = default_out_dir();
    try {
        const harmin::RunReport rep = harmin::run_scenario_file(scenario_path, opts);
        for (const auto& c : rep.criteria)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " value=" << harmin::format_double(c.value)
                      << " threshold=" << harmin::format_double(c.threshold) << "\n";
        if (!rep.all_pass) {
            emit_error("criteria", "one or more criteria failed", scenario_path);
            return kExitCriteria;
        }
        return 0;
    } catch (const harmin::SchemaError& e) {
        emit_error("schema", e.what(), scenario_path);
        return kExitSchema;
    } catch (const harmin::GuardError& e) {
        emit_error("guard", e.what(), scenario_path);
        return kExitGuard;
    } catch (const std::invalid_argument& e) {
        emit_error("schema", e.what(), scenario_path);
        return kExitSchema;
    }
}

int cmd_wos(int mesh_count, double x0, double x1, std::int64_t trials, double shell, std::uint64_t seed,
            double radius, const std::string& out_file) {
    try {
        const auto domain = harmin::make_ball(2, {0.0, 0.0}, radius);
        const auto mesh = harmin::make_boundary_mesh(domain, mesh_count);
        const harmin::Vec x{x0, x1};
        const auto walked = harmin::wos_measure(domain, x, mesh, trials, shell, seed);
        const auto exact = harmin::poisson_weights(domain, x, mesh);
        const double tv = harmin::total_variation(exact.weights, walked.weights);
        const std::string csv = harmin::measure_to_csv(walked);
        if (!out_file.empty()) {
            std::ofstream out(out_file, std::ios::binary);
            out << csv;
        } else {
            std::cout << csv;
        }
        std::cout << "tv_vs_poisson=" << harmin::format_double(tv) << "\n";
        return 0;
    } catch (const harmin::GuardError& e) {
        emit_error("guard", e.what(), "");
        return kExitGuard;
    } catch (const std::invalid_argument& e) {
        emit_error("schema", e.what(), "");
        return kExitSchema;
    }
}

int cmd_ead(const std::string& dist_path, std::int64_t trials, std::uint64_t seed) {
    try {
        std::ifstream in(dist_path);
        if (!in) throw harmin::SchemaError("cannot open " + dist_path);
        harmin::Json j;
        in >> j;
        const auto nu = harmin::distribution_from_json(j);
        const double exact = harmin::ead_exact(nu);
        const double viaz = harmin::ead_zonoid(nu);
        std::cout << "ead_exact=" << harmin::format_double(exact) << "\n";
        std::cout << "ead_zonoid=" << harmin::format_double(viaz) << "\n";
        if (trials > 0) {
            const auto mc = harmin::ead_monte_carlo(nu, trials, seed);
            std::cout << "ead_monte_carlo=" << harmin::format_double(mc.estimate)
                      << " stderr=" << harmin::format_double(mc.stderr_) << "\n";
        }
        return 0;
    } catch (const harmin::SchemaError& e) {
        emit_error("schema", e.what(), dist_path);
        return kExitSchema;
    } catch (const harmin::GuardError& e) {
        emit_error("guard", e.what(), dist_path);
        return kExitGuard;
    } catch (const std::exception& e) {
        emit_error("schema", e.what(), dist_path);
        return kExitSchema;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmin: harmonic interpolation of convex bodies, zonoids and random determinants"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario file and write CSV + JSON summary");
    std::string scenario_path, out_dir;
    int refine = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t seed_value = 0;
    bool seed_set = false;
    run->add_option("--scenario", scenario_path, "scenario JSON path")->required();
    run->add_option("--out-dir", out_dir, "output directory (default: beside the scenario, or HARMIN_OUT_DIR)");
    run->add_option("--refine", refine, "multiply all resolutions by 2^k")->default_val(0);
    run->add_option("--seed", seed_value, "override the scenario seed")->each([&](const std::string&) {
        seed_set = true;
    });

    auto* checks = app.add_subcommand("list-checks", "print the criterion catalog");

    auto* wos = app.add_subcommand("wos", "walk-on-spheres harmonic measure on a disc");
    int mesh_count = 256;
    double x0 = 0.5, x1 = 0.0, shell = 1e-4, radius = 1.0;
    std::int64_t trials = 100000;
    std::uint64_t wseed = 1;
    std::string out_file;
    wos->add_option("--mesh", mesh_count, "boundary mesh node count")->default_val(256);
    wos->add_option("--x0", x0, "evaluation point, first coordinate")->default_val(0.5);
    wos->add_option("--x1", x1, "evaluation point, second coordinate")->default_val(0.0);
    wos->add_option("--trials", trials, "number of walks")->default_val(100000);
    wos->add_option("--shell", shell, "absorption shell width")->default_val(1e-4);
    wos->add_option("--seed", wseed, "random seed")->default_val(1);
    wos->add_option("--radius", radius, "disc radius")->default_val(1.0);
    wos->add_option("--out", out_file, "write measure CSV to this file");

    auto* ead = app.add_subcommand("ead", "expected absolute determinant of a discrete law");
    std::string dist_path;
    std::int64_t ead_trials = 0;
    std::uint64_t ead_seed = 1;
    ead->add_option("--dist", dist_path, "distribution JSON path")->required();
    ead->add_option("--trials", ead_trials, "optional Monte Carlo trials")->default_val(0);
    ead->add_option("--seed", ead_seed, "Monte Carlo seed")->default_val(1);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (seed_set) seed = seed_value;
        return cmd_run(scenario_path, out_dir, refine, seed);
    }
    if (checks->parsed()) {
        std::cout << harmin::list_checks();
        return 0;
    }
    if (wos->parsed()) return cmd_wos(mesh_count, x0, x1, trials, shell, wseed, radius, out_file);
    if (ead->parsed()) return cmd_ead(dist_path, ead_trials, ead_seed);
    return 0;
}
