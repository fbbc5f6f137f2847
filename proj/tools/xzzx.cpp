// Copyright 2026 xzzxsim Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "xzzx/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int env_workers(int fallback) {
    if (const char* env = std::getenv("XZZX_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"XZZX surface code simulation toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, in_path;
    uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    double window_lo = 0, window_hi = 0;
    bool window_set = false;

    auto* run = app.add_subcommand("run", "run an experiment described by a JSON config");
    run->add_option("--config", config_path, "config file path")->required();
    run->add_option("--seed", seed, "override the master seed")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--workers", workers, "worker thread count");
    run->add_option("--out", out_path, "output JSON-lines path (overrides config)");

    auto* verify = app.add_subcommand("verify", "run the small-instance oracle suite");

    auto* describe = app.add_subcommand("describe", "print a code description as JSON");
    std::string geom_type = "periodic";
    int rows = 0, cols = 0;
    describe->add_option("--type", geom_type, "periodic | open");
    describe->add_option("--rows", rows, "rows (periodic) or d_x (open)")->required();
    describe->add_option("--cols", cols, "cols (periodic) or d_z (open)")->required();

    auto* fit = app.add_subcommand("fit", "re-fit a threshold from stored JSON-lines results");
    fit->add_option("--in", in_path, "JSON-lines results file")->required();
    auto* wlo = fit->add_option("--window-lo", window_lo, "fit window lower edge");
    auto* whi = fit->add_option("--window-hi", window_hi, "fit window upper edge");

    auto* csv = app.add_subcommand("export-csv", "project JSON-lines results to CSV");
    csv->add_option("--in", in_path, "JSON-lines results file")->required();
    csv->add_option("--out", out_path, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto cfg = xzzx::ExperimentConfig::from_json_text(read_file(config_path));
            if (seed_set) cfg.seed = seed;
            if (workers > 0) cfg.workers = workers;
            cfg.workers = env_workers(cfg.workers);
            if (!out_path.empty()) cfg.out_path = out_path;
            // Progress goes to stderr so the result stream stays parseable.
            if (!cfg.out_path.empty()) {
                std::ofstream out(cfg.out_path);
                if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
                xzzx::run_experiment(cfg, out, std::cerr);
            } else {
                xzzx::run_experiment(cfg, std::cout, std::cerr);
            }
            return 0;
        }
        if (verify->parsed()) {
            bool ok = xzzx::run_verification_suite(std::cout);
            std::cout << (ok ? "all checks passed\n" : "verification FAILED\n");
            return ok ? 0 : 1;
        }
        if (describe->parsed()) {
            xzzx::LatticeGeometry g;
            if (geom_type == "periodic")
                g = xzzx::Periodic{rows, cols};
            else if (geom_type == "open")
                g = xzzx::OpenRectangular{rows, cols};
            else
                throw std::invalid_argument("type must be periodic or open");
            std::cout << xzzx::describe_json(xzzx::build_xzzx_code(g)) << "\n";
            return 0;
        }
        if (fit->parsed()) {
            window_set = wlo->count() > 0 && whi->count() > 0;
            std::optional<std::pair<double, double>> window;
            if (window_set) window = {{window_lo, window_hi}};
            std::cout << xzzx::refit_from_jsonl(read_file(in_path), window) << "\n";
            return 0;
        }
        if (csv->parsed()) {
            std::string out = xzzx::jsonl_to_csv(read_file(in_path));
            if (out_path.empty()) {
                std::cout << out;
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot write " + out_path);
                f << out;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
