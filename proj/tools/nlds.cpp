// Command-line front end: single runs, convergence tables, reference cache
// prebuilds, and the resonance classifier.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "nlds/nlds.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    int jobs = 1;
    double tau_e_override = 0.0;
    double delta_override = 0.0;
    std::string format = "csv";
};

std::filesystem::path cache_dir_for(const nlds::Config& cfg, const CommonOpts& opts) {
    if (const char* env = std::getenv("NLDS_CACHE_DIR"); env && *env) return env;
    const std::string from_cfg = cfg.get_string("reference.cache_dir");
    if (!from_cfg.empty()) return from_cfg;
    return std::filesystem::path(opts.out_dir) / "refcache";
}

nlds::ExperimentPlan load_plan(const nlds::Config& cfg, const CommonOpts& opts) {
    nlds::ExperimentPlan plan = nlds::plan_from_config(cfg);
    if (opts.tau_e_override > 0.0) plan.tau_e = opts.tau_e_override;
    if (opts.delta_override > 0.0) plan.tau_rule.delta = opts.delta_override;
    return plan;
}

int run_converge(const CommonOpts& opts) {
    const nlds::Config cfg = nlds::Config::parse_file(opts.config_path);
    const nlds::ExperimentPlan plan = load_plan(cfg, opts);
    nlds::ReferenceCache cache(cache_dir_for(cfg, opts));
    const nlds::ErrorTable table = nlds::run_experiment(plan, cache, opts.jobs);

    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path base(opts.out_dir);
    if (opts.format == "csv" || opts.format == "both")
        nlds::write_text(base / "table.csv", nlds::to_csv(table));
    if (opts.format == "markdown" || opts.format == "both")
        nlds::write_text(base / "table.md", nlds::to_markdown(table));

    int failures = 0;
    for (const auto& row : table.rows)
        for (const auto& rec : row)
            if (rec.failed) {
                ++failures;
                std::cerr << "cell (eps=" << rec.eps << ", tau=" << rec.tau
                          << ") failed: " << rec.message << "\n";
            }
    std::cout << "wrote " << (opts.format == "markdown" ? "table.md" : "table.csv") << " under "
              << opts.out_dir << " (" << table.rows.size() << " eps rows x " << table.taus.size()
              << " tau columns";
    if (failures) std::cout << ", " << failures << " failed cells";
    std::cout << ")\n";
    return failures == 0 ? 0 : kExitNumerical;
}

int run_reference(const CommonOpts& opts) {
    const nlds::Config cfg = nlds::Config::parse_file(opts.config_path);
    const nlds::ExperimentPlan plan = load_plan(cfg, opts);
    nlds::ReferenceCache cache(cache_dir_for(cfg, opts));

    nlds::GridPtr grid = nlds::make_grid(plan.a, plan.b, plan.m);
    const std::vector<double> vpot = nlds::parse_potential(plan.potential, *grid);
    const nlds::SpinorField phi0 = nlds::initial_field(plan.initial, grid);
    for (double eps : plan.eps_list) {
        nlds::PhysicsParams params{eps, plan.lambda1, plan.lambda2, vpot};
        nlds::ReferenceKey key{grid, plan.final_time, params, phi0, plan.tau_e};
        cache.get_or_compute(key);
        std::cout << "reference ready: eps=" << nlds::format_exact(eps) << " -> "
                  << cache.path_for(key).string() << "\n";
    }
    return 0;
}

struct SimulateOpts {
    double tau = 0.0;
    long steps = -1;
    std::string scheme = "S2";
    long snapshot_every = 0;
};

int run_simulate(const CommonOpts& opts, const SimulateOpts& sim) {
    const nlds::Config cfg = nlds::Config::parse_file(opts.config_path);
    nlds::ExperimentPlan plan = nlds::plan_from_config(cfg);

    nlds::SchemeRun run;
    run.scheme = sim.scheme == "S1" ? nlds::Scheme::S1 : nlds::Scheme::S2;
    run.tau = sim.tau > 0.0 ? sim.tau : cfg.get_number("run.tau0", 0.0);
    if (!(run.tau > 0.0)) throw std::invalid_argument("simulate: need --tau or run.tau0");
    run.steps = sim.steps >= 0 ? sim.steps : nlds::steps_for(plan.final_time, run.tau);

    nlds::GridPtr grid = nlds::make_grid(plan.a, plan.b, plan.m);
    run.params = {plan.eps_list.at(0), plan.lambda1, plan.lambda2,
                  nlds::parse_potential(plan.potential, *grid)};
    run.initial = nlds::initial_field(plan.initial, grid);

    std::optional<long> cadence;
    if (sim.snapshot_every > 0) cadence = sim.snapshot_every;
    const nlds::EvolveResult result = nlds::evolve(run, cadence);

    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path base(opts.out_dir);
    const nlds::FieldHeader hdr{run.params.eps, run.tau * run.steps, run.tau, 0};
    nlds::save_field(base / "field_final.bin", result.field, hdr);
    for (const auto& [step, snap] : result.snapshots) {
        char name[48];
        std::snprintf(name, sizeof name, "field_step_%08ld.bin", step);
        nlds::save_field(base / name, snap, {run.params.eps, run.tau * step, run.tau, 0});
    }

    // Per-node observables of the final state.
    {
        std::ofstream os(base / "observables.csv");
        if (!os) throw nlds::io_error("cannot write observables.csv");
        const auto rho = nlds::density(result.field);
        const auto cur = nlds::current(result.field, run.params.eps);
        os << "x,density,current1,current2\n";
        for (int j = 0; j < grid->size(); ++j)
            os << nlds::format_exact(grid->node(j)) << ',' << nlds::format_exact(rho[j]) << ','
               << nlds::format_exact(cur.j1[j]) << ',' << nlds::format_exact(cur.j2[j]) << '\n';
    }

    std::cout << "scheme " << sim.scheme << ", tau " << nlds::format_exact(run.tau) << ", steps "
              << run.steps << "\n"
              << "mass initial " << nlds::format_exact(result.mass_initial) << ", final "
              << nlds::format_exact(result.mass_final) << ", max drift "
              << nlds::format_exact(result.mass_drift) << "\n"
              << "energy " << nlds::format_exact(nlds::energy(result.field, run.params)) << "\n"
              << "wrote field_final.bin, observables.csv"
              << (result.snapshots.empty() ? "" : " and snapshots") << " under " << opts.out_dir
              << "\n";
    return 0;
}

int run_check_resonance(double tau, double eps, double delta) {
    const nlds::ResonanceSpec spec{eps, delta};
    const bool sine = nlds::is_non_resonant(tau, spec);
    const bool interval = nlds::is_non_resonant_interval(tau, spec);
    std::cout << "tau = " << nlds::format_exact(tau) << ", eps = " << nlds::format_exact(eps)
              << ", delta = " << nlds::format_exact(delta) << "\n"
              << "non-resonant (sine form):     " << (sine ? "yes" : "no") << "\n"
              << "non-resonant (interval form): " << (interval ? "yes" : "no") << "\n"
              << "interval index k:             " << nlds::interval_index(tau, spec) << "\n"
              << "nearest non-resonant tau:     "
              << nlds::format_exact(nlds::nearest_non_resonant(tau, spec)) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-splitting Fourier pseudospectral solver for the 1D nonlinear Dirac "
                 "equation, with a convergence-study harness"};
    app.require_subcommand(1);

    CommonOpts opts;
    SimulateOpts sim;
    double rc_tau = 0.0, rc_eps = 1.0, rc_delta = 0.15;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* c = cmd->add_option("--config", opts.config_path, "plan / setup config file");
        if (needs_config) c->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--jobs", opts.jobs, "worker threads for table cells")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tau-e", opts.tau_e_override, "override reference step size");
        cmd->add_option("--delta", opts.delta_override, "override non-resonance delta");
        cmd->add_option("--format", opts.format, "table output format")
            ->check(CLI::IsMember({"csv", "markdown", "both"}));
    };

    CLI::App* converge = app.add_subcommand("converge", "run an experiment plan into error tables");
    add_common(converge, true);

    CLI::App* reference = app.add_subcommand("reference", "prebuild the reference cache for a plan");
    add_common(reference, true);

    CLI::App* simulate = app.add_subcommand("simulate", "run one scheme and emit field + observables");
    add_common(simulate, true);
    simulate->add_option("--tau", sim.tau, "step size");
    simulate->add_option("--steps", sim.steps, "step count (default: T / tau from config)");
    simulate->add_option("--scheme", sim.scheme, "S1 or S2")->check(CLI::IsMember({"S1", "S2"}));
    simulate->add_option("--snapshot-every", sim.snapshot_every, "snapshot cadence in steps");

    CLI::App* checkres = app.add_subcommand("check-resonance", "classify a time step size");
    checkres->add_option("--tau", rc_tau, "step size")->required();
    checkres->add_option("--eps", rc_eps, "epsilon in (0, 1]");
    checkres->add_option("--delta", rc_delta, "delta in (0, 1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (converge->parsed()) return run_converge(opts);
        if (reference->parsed()) return run_reference(opts);
        if (simulate->parsed()) return run_simulate(opts, sim);
        if (checkres->parsed()) return run_check_resonance(rc_tau, rc_eps, rc_delta);
    } catch (const nlds::numerical_failure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const nlds::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const nlds::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
