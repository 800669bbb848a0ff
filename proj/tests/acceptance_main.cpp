// Acceptance suite: one pass/fail line per criterion, details indented.
// Criteria 3-7 drive the full experiment pipeline (plans, reference cache,
// error tables); criteria 1, 2 and 8 exercise the operator/scheme/resonance
// layers directly. Exit status is the number of failed criteria.

#include <cstring>
#include <iomanip>
#include <iostream>
#include <numbers>

#include "nlds/nlds.hpp"
#include "support/oracles.hpp"

using namespace nlds;

namespace {

constexpr double pi = std::numbers::pi;

struct Reporter {
    int failures = 0;

    void criterion(int id, const std::string& name, bool pass,
                   const std::vector<std::string>& details) {
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << name << "\n";
        for (const auto& d : details) std::cout << "       " << d << "\n";
        if (!pass) ++failures;
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

bool within_rel(double measured, double expected, double rel) {
    return std::abs(measured - expected) <= rel * std::abs(expected);
}

// least-squares slope of log(err) vs log(tau)
double lsq_slope(const std::vector<double>& taus, const std::vector<double>& errs) {
    const std::size_t n = taus.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(taus[i]), y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------- criterion 1

void criterion1(Reporter& rep) {
    std::vector<std::string> det;
    bool pass = true;
    auto check = [&](const char* what, double value, double tol) {
        const bool ok = value <= tol;
        det.push_back(std::string(what) + ": " + fmt(value) + " (tol " + fmt(tol) + ")" +
                      (ok ? "" : "  <-- FAIL"));
        pass = pass && ok;
    };

    const GridPtr g = make_grid(-8.0, 8.0, 64);
    const SpinorField f = oracle::random_field(g, 2025);
    const double eps = 0.35, norm = l2_norm(f);

    check("unitarity |norm(flow f)/norm(f) - 1|",
          std::abs(l2_norm(free_flow(f, 0.83, eps)) / norm - 1.0), 1e-12);
    check("group property residual",
          l2_distance(free_flow(free_flow(f, 0.4, eps), 0.25, eps), free_flow(f, 0.65, eps)) / norm,
          1e-12);

    const SpinorField p = projector(f, Branch::plus, eps);
    const SpinorField q = projector(f, Branch::minus, eps);
    SpinorField sum(g);
    for (int j = 0; j < 64; ++j) {
        sum.c1[j] = p.c1[j] + q.c1[j];
        sum.c2[j] = p.c2[j] + q.c2[j];
    }
    check("projector resolution of identity", l2_distance(sum, f) / norm, 1e-12);
    check("projector mutual annihilation", l2_norm(projector(p, Branch::minus, eps)) / norm, 1e-12);
    check("projector idempotence", l2_distance(projector(p, Branch::plus, eps), p) / norm, 1e-12);

    const double t = 0.7;
    const cplx wp = std::polar(1.0, t / (eps * eps));
    const SpinorField dp = dsemigroup(p, t, eps);
    const SpinorField dm = dsemigroup(q, -t, eps);
    SpinorField rhs(g);
    for (int j = 0; j < 64; ++j) {
        rhs.c1[j] = wp * dp.c1[j] + std::conj(wp) * dm.c1[j];
        rhs.c2[j] = wp * dp.c2[j] + std::conj(wp) * dm.c2[j];
    }
    check("evolution-operator decomposition residual",
          l2_distance(free_flow(f, t, eps), rhs) / norm, 1e-12);

    check("Parseval |spectral/physical - 1|",
          std::abs(l2_norm(forward_transform(f)) / norm - 1.0), 1e-12);

    PhysicsParams params{eps, 1.3, -0.4, std::vector<double>(64, 0.25)};
    const SpinorField pf = potential_flow(f, 0.77, params);
    double worst = 0.0;
    for (int j = 0; j < 64; ++j)
        worst = std::max({worst, std::abs(std::abs(pf.c1[j]) - std::abs(f.c1[j])),
                          std::abs(std::abs(pf.c2[j]) - std::abs(f.c2[j]))});
    check("potential-flow pointwise modulus drift", worst, 1e-15);

    SchemeRun run;
    run.tau = 1e-3;
    run.steps = 10000;
    run.params = {0.5, 1.0, 0.5, {}};
    run.initial = oracle::random_smooth_field(g, 7);
    for (const Scheme s : {Scheme::S1, Scheme::S2}) {
        run.scheme = s;
        const EvolveResult r = evolve(run);
        check(s == Scheme::S1 ? "mass drift, 1e4 S1 steps" : "mass drift, 1e4 S2 steps",
              r.mass_drift, 1e-11);
    }

    rep.criterion(1, "property suite (unitarity, projectors, decomposition, Parseval, mass)",
                  pass, det);
}

// ---------------------------------------------------------------- criterion 2

void criterion2(Reporter& rep) {
    std::vector<std::string> det;
    bool pass = true;
    const GridPtr g = make_grid(0.0, 2.0 * pi, 16);
    for (const double eps : {1.0, 0.5}) {
        PhysicsParams params{eps, 1.0, 0.0, {}};
        const SpinorField f = oracle::random_smooth_field(g, 314);
        oracle::Rk4System sys(g, params);
        for (const Scheme s : {Scheme::S1, Scheme::S2}) {
            std::vector<double> taus, errs;
            for (int k = 0; k < 4; ++k) {
                const double tau = 1e-2 / (1 << k);
                const SpinorField one = s == Scheme::S1 ? lie_step(f, tau, params)
                                                        : strang_step(f, tau, params);
                taus.push_back(tau);
                errs.push_back(l2_distance(one, sys.integrate(f, tau, 1e-5)));
            }
            const double slope = lsq_slope(taus, errs);
            const double want = s == Scheme::S1 ? 2.0 : 3.0;
            const bool ok = std::abs(slope - want) <= 0.15;
            det.push_back(std::string(s == Scheme::S1 ? "S1" : "S2") + " local-error slope, eps=" +
                          fmt(eps) + ": " + fmt(slope) + " (want " + fmt(want) + " +- 0.15)" +
                          (ok ? "" : "  <-- FAIL"));
            pass = pass && ok;
        }
    }
    rep.criterion(2, "oracle equivalence (one-step error vs tiny-step RK4)", pass, det);
}

// ------------------------------------------------------- shared plan builders

ExperimentPlan resonant_wave_plan() {  // V = 0 setup, T = 2pi, Omega = (-32,32)
    ExperimentPlan plan;
    plan.a = -32.0;
    plan.b = 32.0;
    plan.m = 1024;
    plan.final_time = 2.0 * pi;
    plan.scheme = Scheme::S1;
    plan.lambda1 = 1.0;
    plan.lambda2 = 0.0;
    plan.potential = PotentialSpec::zero();
    plan.initial = InitialSpec::gaussians();
    plan.tau_e = 2.0 * pi * 1e-5;
    plan.metrics = {true, false, false, false};
    return plan;
}

ExperimentPlan resonant_potential_plan() {  // V = (x-1)/(x^2+1), T = 2pi
    ExperimentPlan plan = resonant_wave_plan();
    plan.scheme = Scheme::S2;
    plan.potential = PotentialSpec::rational();
    plan.metrics = {true, true, true, true};
    return plan;
}

// ---------------------------------------------------------------- criterion 3

void criterion3(Reporter& rep, ReferenceCache& cache, int jobs) {
    ExperimentPlan plan = resonant_wave_plan();
    plan.eps_list = {1.0, 0.5};
    plan.tau_rule.kind = TauRule::Kind::list;
    plan.tau_rule.taus = {pi / 4, pi / 16, pi / 64, pi / 256};
    const ErrorTable table = run_experiment(plan, cache, jobs);

    const double expected[2][4] = {{4.18, 7.09e-1, 1.69e-1, 4.17e-2},
                                   {2.54, 6.37e-1, 1.44e-1, 3.55e-2}};
    std::vector<std::string> det;
    bool pass = true;
    for (int e = 0; e < 2; ++e)
        for (int k = 0; k < 4; ++k) {
            const ErrorRecord& rec = table.rows[e][k];
            const bool ok = !rec.failed && rec.h1 && within_rel(*rec.h1, expected[e][k], 0.10);
            det.push_back("eps=" + format_exact(plan.eps_list[e]) + " tau=pi/" +
                          std::to_string(4 << (2 * k)) + ": h1 = " +
                          (rec.h1 ? format_sci3(*rec.h1) : "FAIL") + ", published value " +
                          format_sci3(expected[e][k]) + " (+-10%)" + (ok ? "" : "  <-- FAIL"));
            pass = pass && ok;
        }
    if (!pass)
        det.push_back("note: convergence orders and resonance structure match the published tables; the "
                      "absolute scale does not reproduce from the stated setup (see README).");
    rep.criterion(3, "published-value spot check: S1, resonant ladder, V = 0", pass, det);
}

// ------------------------------------------------------- criteria 4 and 7

ErrorTable table2_run(ReferenceCache& cache, int jobs) {
    ExperimentPlan plan = resonant_potential_plan();
    plan.eps_list = {1.0};
    plan.tau_rule.kind = TauRule::Kind::list;
    plan.tau_rule.taus = {pi / 4, pi / 16, pi / 64, pi / 256};
    return run_experiment(plan, cache, jobs);
}

void criterion4(Reporter& rep, const ErrorTable& table) {
    const double expected[4] = {1.17e1, 2.55e-1, 1.37e-2, 8.49e-4};
    const double expected_orders[3] = {2.76, 2.11, 2.01};
    std::vector<std::string> det;
    bool pass = true;
    for (int k = 0; k < 4; ++k) {
        const ErrorRecord& rec = table.rows[0][k];
        const bool ok = !rec.failed && rec.h1 && within_rel(*rec.h1, expected[k], 0.10);
        det.push_back("tau=pi/" + std::to_string(4 << (2 * k)) + ": h1 = " +
                      (rec.h1 ? format_sci3(*rec.h1) : "FAIL") + ", published value " +
                      format_sci3(expected[k]) + " (+-10%)" + (ok ? "" : "  <-- FAIL"));
        pass = pass && ok;
    }
    for (int k = 1; k < 4; ++k) {
        const auto& ord = table.rows[0][k].order_h1;
        const bool ok = ord && std::abs(*ord - expected_orders[k - 1]) <= 0.1;
        det.push_back("order at column " + std::to_string(k) + ": " + format_order(ord) +
                      ", published order " + fmt(expected_orders[k - 1]) + " (+-0.1)" +
                      (ok ? "" : "  <-- FAIL"));
        pass = pass && ok;
    }
    rep.criterion(4, "published-value spot check: S2, resonant ladder, V = (x-1)/(x^2+1)", pass, det);
}

void criterion7(Reporter& rep, const ErrorTable& table) {
    std::vector<std::string> det;
    bool pass = true;
    auto check_metric = [&](const char* name, std::optional<double> ErrorRecord::* order) {
        // the two asymptotic ratios of the 4-value row
        for (int k = 2; k < 4; ++k) {
            const auto& ord = table.rows[0][k].*order;
            const bool ok = ord && std::abs(*ord - 2.0) <= 0.15;
            det.push_back(std::string(name) + " order at column " + std::to_string(k) + ": " +
                          format_order(ord) + " (want 2.0 +- 0.15)" + (ok ? "" : "  <-- FAIL"));
            pass = pass && ok;
        }
    };
    check_metric("density", &ErrorRecord::order_density);
    check_metric("current", &ErrorRecord::order_current);
    check_metric("energy", &ErrorRecord::order_energy);
    rep.criterion(7, "observable errors track the wave-function order", pass, det);
}

// ---------------------------------------------------------------- criterion 5

void criterion5(Reporter& rep, ReferenceCache& cache, int jobs) {
    ExperimentPlan plan = resonant_wave_plan();
    for (int j = 0; j <= 9; ++j) plan.eps_list.push_back(std::ldexp(1.0, -j));
    plan.tau_rule.kind = TauRule::Kind::resonant;
    plan.tau_rule.tau0 = pi / 256;  // tau0/4^3 of the published ladder
    plan.tau_rule.ratio = 4.0;
    plan.tau_rule.count = 3;
    const ErrorTable table = run_experiment(plan, cache, jobs);

    std::vector<std::string> det;
    std::vector<double> taus, maxima;
    bool have_all = true;
    for (std::size_t k = 0; k < table.taus.size(); ++k) {
        const auto& v = table.max_row[k].h1;
        if (!v) have_all = false;
        taus.push_back(table.taus[k]);
        maxima.push_back(v.value_or(0.0));
        det.push_back("max over eps at tau=pi/" + std::to_string(256 << (2 * k)) + ": " +
                      (v ? format_sci3(*v) : "FAIL"));
    }
    bool pass = have_all;
    if (have_all) {
        const double slope = lsq_slope(taus, maxima);
        pass = std::abs(slope - 0.5) <= 0.15;
        det.push_back("max-row slope: " + fmt(slope) + " (want 0.5 +- 0.15)" +
                      (pass ? "" : "  <-- FAIL"));
    }
    rep.criterion(5, "uniform half-order of the max-over-eps row (resonant S1)", pass, det);
}

// ---------------------------------------------------------------- criterion 6

void criterion6(Reporter& rep, ReferenceCache& cache, int jobs) {
    std::vector<std::string> det;
    bool pass = true;
    for (const Scheme scheme : {Scheme::S1, Scheme::S2}) {
        ExperimentPlan plan;
        plan.a = -16.0;
        plan.b = 16.0;
        plan.m = 512;
        plan.final_time = 4.0;
        plan.scheme = scheme;
        plan.lambda1 = 1.0;
        plan.lambda2 = 0.0;
        plan.potential = scheme == Scheme::S1 ? PotentialSpec::zero() : PotentialSpec::rational();
        plan.initial = InitialSpec::gaussians();
        plan.tau_e = 8e-5;
        plan.metrics = {true, false, false, false};
        for (int j = 0; j <= 8; ++j) plan.eps_list.push_back(std::ldexp(1.0, -j));
        plan.tau_rule.kind = TauRule::Kind::non_resonant;
        plan.tau_rule.tau0 = 0.25;
        plan.tau_rule.ratio = 4.0;
        plan.tau_rule.count = 6;
        plan.tau_rule.delta = 0.15;
        const ErrorTable table = run_experiment(plan, cache, jobs);

        std::vector<double> taus, maxima;
        bool have_all = true;
        std::string values;
        for (std::size_t k = 3; k < table.taus.size(); ++k) {  // last three columns
            const auto& v = table.max_row[k].h1;
            if (!v) have_all = false;
            taus.push_back(table.taus[k]);
            maxima.push_back(v.value_or(0.0));
            values += (values.empty() ? "" : ", ") + (v ? format_sci3(*v) : std::string("FAIL"));
        }
        const double want = scheme == Scheme::S1 ? 1.0 : 1.5;
        const double band = scheme == Scheme::S1 ? 0.15 : 0.2;
        bool ok = have_all;
        double slope = 0.0;
        if (have_all) {
            slope = lsq_slope(taus, maxima);
            ok = std::abs(slope - want) <= band;
        }
        det.push_back(std::string(scheme == Scheme::S1 ? "S1" : "S2") +
                      " max-row last three columns: " + values + "; slope " + fmt(slope) +
                      " (want " + fmt(want) + " +- " + fmt(band) + ")" + (ok ? "" : "  <-- FAIL"));
        pass = pass && ok;
    }
    rep.criterion(6, "improved non-resonant orders (delta = 0.15, T = 4)", pass, det);
}

// ---------------------------------------------------------------- criterion 8

void criterion8(Reporter& rep) {
    std::mt19937_64 rng(20250809);
    std::uniform_real_distribution<double> tau_dist(1e-6, 10.0);
    std::uniform_real_distribution<double> eps_dist(0.05, 1.0);
    std::uniform_real_distribution<double> delta_dist(0.01, 0.99);
    long disagreements = 0, bad = 0;
    for (long k = 0; k < 1000000; ++k) {
        const double tau = tau_dist(rng);
        const ResonanceSpec spec{eps_dist(rng), delta_dist(rng)};
        const bool sine = is_non_resonant(tau, spec);
        const bool interval = is_non_resonant_interval(tau, spec);
        if (sine != interval) {
            ++disagreements;
            const double r = 2.0 * tau / (spec.eps * spec.eps);
            double rmod = std::fmod(r, pi);
            const double a = std::asin(spec.delta);
            const double dist = std::min(std::abs(rmod - a), std::abs(pi - a - rmod));
            if (dist > 1e-12 * std::max(1.0, r)) ++bad;
        }
    }
    long misclassified = 0;
    std::uniform_real_distribution<double> d2(0.01, 0.99);
    for (int k0 = 1; k0 <= 40; ++k0)
        for (int j = 0; j <= 9; ++j) {
            const double eps = std::ldexp(1.0, -j);
            if (is_non_resonant(resonant_step(k0, eps), {eps, d2(rng)})) ++misclassified;
        }
    std::vector<std::string> det{
        "predicate disagreements in 1e6 triples: " + std::to_string(disagreements) +
            " (outside endpoint roundoff: " + std::to_string(bad) + ")",
        "resonant_step outputs misclassified: " + std::to_string(misclassified) + " of 400"};
    rep.criterion(8, "resonance classifier (interval form vs sine form)",
                  bad == 0 && misclassified == 0, det);
}

// ------------------------------------------------- informational diagnostic

// Reproduction of the S2 table in the sigma2 unitary frame (phi2 phased by -i),
// locating the absolute-scale gap behind the criterion 3/4 value checks.
void frame_diagnostic(ReferenceCache& cache) {
    ExperimentPlan plan = resonant_potential_plan();
    const std::vector<double> taus = {pi / 16, pi / 64, pi / 256};

    GridPtr g = make_grid(plan.a, plan.b, plan.m);
    SpinorField phi0 = initial_field(plan.initial, g);
    for (int j = 0; j < phi0.size(); ++j) phi0.c2[j] *= cplx(0.0, -1.0);
    PhysicsParams params{1.0, plan.lambda1, plan.lambda2, parse_potential(plan.potential, *g)};
    ReferenceKey key{g, plan.final_time, params, phi0, plan.tau_e};
    const SpinorField ref = cache.get_or_compute(key);

    const double published[3] = {2.55e-1, 1.37e-2, 8.49e-4};
    std::cout << "[info] alternate-frame diagnostic (initial data (g1, -i g2)): S2 resonant row\n";
    for (int k = 0; k < 3; ++k) {
        SchemeRun run{Scheme::S2, taus[k], steps_for(plan.final_time, taus[k]), params, phi0};
        const double h1 = h1_error(evolve(run).field, ref);
        char pct[32];
        std::snprintf(pct, sizeof pct, "%.1f%% off", 100.0 * std::abs(h1 - published[k]) / published[k]);
        std::cout << "       tau=pi/" << (16 << (2 * k)) << ": h1 = " << format_sci3(h1)
                  << " vs published " << format_sci3(published[k]) << "  (" << pct << ")\n";
    }
    std::cout << "       the stated setup does not reproduce the tables' absolute scale; this"
                 " frame does (see README notes).\n";
}

}  // namespace

int main(int argc, char** argv) {
    int jobs = 1;
    std::filesystem::path cache_dir = "acceptance_cache";
    bool diagnose = true;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) jobs = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--cache") == 0 && i + 1 < argc) cache_dir = argv[++i];
        else if (std::strcmp(argv[i], "--no-frame-diagnostic") == 0) diagnose = false;
    }
    if (const char* env = std::getenv("NLDS_CACHE_DIR"); env && *env) cache_dir = env;

    std::cout << "== acceptance suite ==\n"
              << "reference cache: " << cache_dir.string() << "  (jobs " << jobs << ")\n";
    ReferenceCache cache(cache_dir);
    Reporter rep;

    criterion1(rep);
    criterion2(rep);
    criterion3(rep, cache, jobs);
    const ErrorTable t2 = table2_run(cache, jobs);
    criterion4(rep, t2);
    criterion5(rep, cache, jobs);
    criterion6(rep, cache, jobs);
    criterion7(rep, t2);
    criterion8(rep);
    if (diagnose) frame_diagnostic(cache);

    std::cout << (8 - rep.failures) << "/8 criteria passed\n";
    return rep.failures;
}
