#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tanbundle/errors.hpp"
#include "tanbundle/suite.hpp"

namespace {

using tanbundle::RunConfig;

void add_common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--base", cfg.base,
                    "base manifold: euclidean | sphere | hyperbolic | path to a metric file")
        ->capture_default_str();
    sub->add_option("--c", cfg.c, "space-form curvature (sphere needs c > 0, hyperbolic c < 0)")
        ->capture_default_str();
    sub->add_option("--dim", cfg.dim, "base dimension for preset bases (files declare their own)")
        ->capture_default_str();
    sub->add_option("--weight", cfg.weight,
                    "weight: cheeger_gromoll | almost_kaehler | flat | constant | integrable | "
                    "path to a weight file")
        ->capture_default_str();
    sub->add_option("--weight-c", cfg.weight_c, "c parameter of the integrable weight")
        ->capture_default_str();
    sub->add_option("--weight-k", cfg.weight_k, "k parameter of constant / integrable weights")
        ->capture_default_str();
    sub->add_option("--points", cfg.points, "number of random samples")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed (env TANBUNDLE_SEED)")
        ->envname("TANBUNDLE_SEED")
        ->capture_default_str();
    sub->add_option("--tol", cfg.tol, "tolerance for stacked finite-difference comparisons")
        ->capture_default_str();
    sub->add_option("--tol-domega", cfg.tol_domega,
                    "tolerance for single-level finite-difference comparisons")
        ->capture_default_str();
    sub->add_option("--tol-alg", cfg.tol_alg, "tolerance for algebraic identities")
        ->capture_default_str();
    sub->add_option("--fd-step", cfg.fd_step,
                    "finite-difference step h1 (h2 = 10 h1); 0 keeps the defaults")
        ->capture_default_str();
    sub->add_option("--output", cfg.output, "report format: text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out_path, "write the report to this file instead of stdout");
    sub->add_option("--threads", cfg.threads, "worker threads (results are thread-independent)")
        ->capture_default_str();
}

int emit(const std::string& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write to '" << out_path << "'\n";
        return 2;
    }
    out << doc;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Cheeger-Gromoll-type metrics on tangent bundles: closed-form geometry "
        "checked against a finite-difference oracle"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* check = app.add_subcommand(
        "check", "verify every closed form against the numeric oracle at random samples");
    add_common_options(check, cfg);

    CLI::App* sectional = app.add_subcommand(
        "sectional", "sectional-curvature table of the adapted frame at one point");
    add_common_options(sectional, cfg);
    sectional->add_option("--x", cfg.x, "base point coordinates (default: origin)")
        ->delimiter(',')
        ->expected(-1);
    sectional->add_option("--y", cfg.y, "fiber vector components (default: first unit vector)")
        ->delimiter(',')
        ->expected(-1);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "CSV profile of the weight and curvature along the fiber (space forms only)");
    add_common_options(sweep, cfg);
    sweep->add_option("--t-max", cfg.t_max, "largest energy density t")->capture_default_str();
    sweep->add_option("--steps", cfg.steps, "number of grid rows")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the parse diagnostics
        return 2;
    }

    try {
        if (check->parsed()) {
            const tanbundle::CheckResult res = tanbundle::run_check(cfg);
            std::string doc;
            if (cfg.output == "json") {
                doc = tanbundle::render_check_json(res);
            } else if (cfg.output == "csv") {
                doc = tanbundle::render_check_csv(res);
            } else {
                doc = tanbundle::render_check_text(res);
            }
            const int rc = emit(doc, cfg.out_path);
            if (rc != 0) return rc;
            return res.pass ? 0 : 1;
        }
        if (sectional->parsed()) {
            const auto rows = tanbundle::run_sectional(cfg);
            std::string doc;
            if (cfg.output == "csv") {
                doc = tanbundle::render_sectional_csv(rows);
            } else if (cfg.output == "json") {
                doc = tanbundle::render_sectional_json(rows);
            } else {
                doc = tanbundle::render_sectional_text(cfg, rows);
            }
            return emit(doc, cfg.out_path);
        }
        // sweep is a data product, always CSV
        return emit(tanbundle::run_sweep_csv(cfg), cfg.out_path);
    } catch (const tanbundle::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tanbundle::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tanbundle::DegenerateInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tanbundle::WeightValidityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tanbundle::ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
