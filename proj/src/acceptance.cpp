#include "muskat/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "muskat/scenario.hpp"
#include "muskat/summation.hpp"

namespace muskat {

namespace {

constexpr double kPi = kTwoPi / 2.0;

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// --- 1: closed-form kernel vs directly summed images -----------------------

// Direct image sum with |k| <= K plus the analytic remainder of the paired
// tail (Euler-Maclaurin midpoint rule on the integrable pair sum).
double image_sum_oracle(double alpha, double d, int K) {
    KahanSum acc;
    acc.add(alpha / (alpha * alpha + d * d));
    const double L = kTwoPi;
    for (int k = 1; k <= K; ++k) {
        const double up = alpha + L * k;
        const double dn = alpha - L * k;
        acc.add(up / (up * up + d * d) + dn / (dn * dn + d * d));
    }
    const double edge = L * (K + 0.5);
    acc.add(-(0.5 / L) * std::log(((alpha + edge) * (alpha + edge) + d * d) /
                                  ((alpha - edge) * (alpha - edge) + d * d)));
    return acc.value();
}

CriterionResult criterion_kernel_oracle() {
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double alpha = -kPi + (i + 0.5) * (kTwoPi / 64.0);
        for (int j = 0; j < 64; ++j) {
            const double d = -3.0 + j * (6.0 / 63.0);
            const double gap =
                std::abs(periodized_kernel(alpha, d) - image_sum_oracle(alpha, d, 10000));
            worst = std::max(worst, gap);
        }
    }
    return {worst <= 1e-8, "max |closed form - image sum| = " + fmt(worst)};
}

// --- 2: small-amplitude 1-D response matches the linear multiplier ---------

double linearization_residual_1d(double eps, int k, const GridSpec1D& grid,
                                 const PhysParams& p) {
    ScalarField1D f = make_field(grid);
    for (int j = 0; j < grid.n; ++j) f[j] = eps * std::cos(k * grid.node(j));
    const ScalarField1D r = rhs_periodic(f, p);
    double worst = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const double expected = -(p.rho_bar() / 2.0) * k * eps * std::cos(k * grid.node(j));
        worst = std::max(worst, std::abs(r[j] - expected));
    }
    return worst;
}

CriterionResult criterion_linearization_1d() {
    const GridSpec1D grid = make_grid(256, kTwoPi, DomainKind::PeriodicTorus);
    const PhysParams p(1.0, 2.0);
    double worst_rel = 0.0;
    double worst_exponent = 1e300;
    for (int k = 1; k <= 4; ++k) {
        const double eps = 1e-5;
        const double res_full = linearization_residual_1d(eps, k, grid, p);
        const double res_half = linearization_residual_1d(eps / 2.0, k, grid, p);
        worst_rel = std::max(worst_rel, res_full / (0.5 * k * eps));
        worst_exponent = std::min(worst_exponent, std::log2(res_full / res_half));
    }
    const bool pass = worst_rel <= 1e-4 && worst_exponent >= 1.9;
    return {pass, "rel err = " + fmt(worst_rel) +
                      ", residual exponent = " + fmt(worst_exponent)};
}

// --- 3: small-amplitude 2-D response matches the linear multiplier ---------

double linearization_residual_2d(int n, int k1, int k2, const PhysParams& p,
                                 const Quadrature2DConfig& cfg, double eps) {
    const GridSpec2D grid = make_grid_2d(n, n, kTwoPi, kTwoPi);
    ScalarField2D f = make_field(grid);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            f.at(i1, i2) =
                eps * std::cos(k1 * i1 * grid.spacing1 + k2 * i2 * grid.spacing2);
    const ScalarField2D r = rhs_2d(f, p, cfg);
    const double mult = -(p.rho_bar() / 2.0) * std::hypot(double(k1), double(k2));
    double worst = 0.0;
    for (size_t i = 0; i < r.samples.size(); ++i)
        worst = std::max(worst, std::abs(r.samples[i] - mult * f.samples[i]));
    return worst / (std::abs(mult) * eps);
}

CriterionResult criterion_linearization_2d() {
    const PhysParams p(1.0, 2.0);
    Quadrature2DConfig cfg;
    cfg.singular_rule = SingularRule2D::PolarPatch;
    cfg.image_layers = 2;
    const int modes[3][2] = {{1, 0}, {1, 1}, {2, 1}};
    double worst64 = 0.0, worst32 = 0.0;
    for (const auto& m : modes) {
        worst64 = std::max(worst64, linearization_residual_2d(64, m[0], m[1], p, cfg, 1e-5));
        worst32 = std::max(worst32, linearization_residual_2d(32, m[0], m[1], p, cfg, 1e-5));
    }
    const bool pass = worst64 <= 1e-2 && worst64 <= 0.75 * worst32;
    return {pass, "rel err 64^2 = " + fmt(worst64) + ", 32^2 = " + fmt(worst32)};
}

// --- 4/5: maximum principle along stable runs ------------------------------

CriterionResult criterion_max_principle_1d(const std::string& workdir) {
    RunConfig cfg = scenario_preset("stable_decay_1d");
    cfg.n = 512;
    cfg.modes = {{1, 0.3, 0.0}, {3, 0.1, 0.0}};
    cfg.output_dir = workdir;
    cfg.scenario = "stable_decay_1d";
    std::ostringstream log;
    const ScenarioResult result = run_scenario(cfg, log);
    return {result.all_pass(), log.str()};
}

CriterionResult criterion_max_principle_2d(const std::string& workdir) {
    RunConfig cfg = scenario_preset("stable_decay_2d");
    cfg.output_dir = workdir;
    std::ostringstream log;
    const ScenarioResult result = run_scenario(cfg, log);
    return {result.all_pass(), log.str()};
}

// --- 6-9: decay bounds ------------------------------------------------------

CriterionResult criterion_scenario(const std::string& name, const std::string& workdir) {
    RunConfig cfg = scenario_preset(name);
    cfg.output_dir = workdir;
    std::ostringstream log;
    const ScenarioResult result = run_scenario(cfg, log);
    return {result.all_pass(), log.str()};
}

// --- 11: unstable growth matches the linear rate ---------------------------

CriterionResult criterion_unstable(const std::string& workdir) {
    return criterion_scenario("unstable_growth_1d", workdir);
}

// --- 12: proof-identity suite ----------------------------------------------

CriterionResult criterion_identities() {
    std::ostringstream detail;
    detail.precision(6);
    bool pass = true;
    const PhysParams p(1.0, 2.0);

    // Exact-derivative integral at the extrema of a smooth periodic field.
    {
        const GridSpec1D grid = make_grid(1024, kTwoPi, DomainKind::PeriodicTorus);
        ScalarField1D f = make_field(grid);
        for (int j = 0; j < grid.n; ++j)
            f[j] = 0.3 * std::cos(grid.node(j)) + 0.1 * std::cos(3.0 * grid.node(j));
        int argmax = 0, argmin = 0;
        for (int j = 1; j < grid.n; ++j) {
            if (f[j] > f[argmax]) argmax = j;
            if (f[j] < f[argmin]) argmin = j;
        }
        const double i2 = std::max(std::abs(i2_residual(f, argmax, p)),
                                   std::abs(i2_residual(f, argmin, p)));
        pass = pass && i2 < 1e-8;
        detail << "i2=" << i2;

        const ExtremumRhs ext = rhs_at_extremum(f, p);
        const ScalarField1D r = rhs_periodic(f, p);
        const double gap = std::abs(ext.value - r[ext.index]);
        pass = pass && ext.value <= 1e-12 && gap < 1e-6;
        detail << " ext_value=" << ext.value << " ext_gap=" << gap;

        KahanSum mean;
        for (double v : r.samples) mean.add(v);
        const double drift = std::abs(mean.value() / grid.n);
        pass = pass && drift < 1e-10;
        detail << " mean1d=" << drift;
    }

    // 2-D: extremum integral and mean conservation.
    {
        const GridSpec2D grid = make_grid_2d(64, 64, kTwoPi, kTwoPi);
        ScalarField2D f = make_field(grid);
        for (int i1 = 0; i1 < 64; ++i1)
            for (int i2 = 0; i2 < 64; ++i2)
                f.at(i1, i2) = 0.2 * std::cos(i1 * grid.spacing1) *
                               std::cos(i2 * grid.spacing2);
        Quadrature2DConfig q2;
        q2.singular_rule = SingularRule2D::PolarPatch;
        q2.image_layers = 2;
        const ExtremumRhs ext = rhs_2d_at_extremum(f, p, q2);
        const ScalarField2D r = rhs_2d(f, p, q2);
        const double rel_gap = std::abs(ext.value - r.samples[ext.index]) /
                               std::abs(r.samples[ext.index]);
        pass = pass && ext.value <= 1e-12 && rel_gap < 1e-2;
        detail << " ext2d=" << ext.value << " ext2d_gap=" << rel_gap;

        KahanSum mean;
        for (double v : r.samples) mean.add(v);
        const double drift = std::abs(mean.value() / static_cast<double>(r.samples.size()));
        pass = pass && drift < 1e-6;
        detail << " mean2d=" << drift;

        // Lambda f = R1 d1 f + R2 d2 f (multiplier identity).
        ScalarField2D g = make_field(grid);
        for (int i1 = 0; i1 < 64; ++i1)
            for (int i2 = 0; i2 < 64; ++i2)
                g.at(i1, i2) = f.at(i1, i2) +
                               0.1 * std::cos(2.0 * i1 * grid.spacing1 +
                                              i2 * grid.spacing2);
        const ScalarField2D lhs = lambda_op(g);
        const ScalarField2D r1 = riesz(derivative(g, 0, 1), 0);
        const ScalarField2D r2 = riesz(derivative(g, 1, 1), 1);
        double riesz_gap = 0.0;
        for (size_t i = 0; i < lhs.samples.size(); ++i)
            riesz_gap = std::max(riesz_gap, std::abs(lhs.samples[i] - r1.samples[i] -
                                                     r2.samples[i]));
        pass = pass && riesz_gap < 1e-10;
        detail << " riesz=" << riesz_gap;
    }
    return {pass, detail.str()};
}

// --- 13: numerics hygiene ---------------------------------------------------

CriterionResult criterion_hygiene(const std::string& workdir) {
    std::ostringstream detail;
    detail.precision(6);
    bool pass = true;
    const PhysParams p(1.0, 2.0);

    // RK4 self-convergence order on the full nonlinear problem.
    {
        RunConfig cfg = scenario_preset("stable_decay_1d");
        cfg.control.t_end = 0.1;
        std::ostringstream log;
        const double order = measure_convergence_order(cfg, log);
        pass = pass && order >= 3.8;
        detail << "rk4_order=" << order;
    }

    // Integrating factor is exact on the purely linear problem.
    {
        const GridSpec1D grid = make_grid(128, kTwoPi, DomainKind::PeriodicTorus);
        ScalarField1D f = make_field(grid);
        for (int j = 0; j < grid.n; ++j) f[j] = std::cos(grid.node(j));
        // remainder = rhs + (rho_bar/2) Lambda f, identically zero here up
        // to the roundoff of the two multiplier applications.
        const RhsFn<ScalarField1D> remainder = [&p](const ScalarField1D& u) {
            const ScalarField1D lam = lambda_op(u);
            ScalarField1D r = u;
            for (int j = 0; j < u.grid.n; ++j)
                r[j] = -p.rho_bar() / 2.0 * lam[j] + p.rho_bar() / 2.0 * lam[j];
            return r;
        };
        const ScalarField1D stepped = step_integrating_factor(f, remainder, p, 0.5);
        const ScalarField1D exact = linear_evolve(f, 0.5, p);
        double gap = 0.0;
        for (int j = 0; j < grid.n; ++j)
            gap = std::max(gap, std::abs(stepped[j] - exact[j]));
        pass = pass && gap <= 1e-12;
        detail << " if_linear_gap=" << gap;
    }

    // End-to-end determinism: byte-identical CSV across reruns.
    {
        RunConfig cfg = scenario_preset("stable_decay_1d");
        cfg.n = 128;
        cfg.control.t_end = 0.5;
        std::ostringstream sink;
        cfg.output_dir = workdir + "/det_a";
        const ScenarioResult a = run_scenario(cfg, sink);
        cfg.output_dir = workdir + "/det_b";
        const ScenarioResult b = run_scenario(cfg, sink);
        std::ifstream fa(a.series_path, std::ios::binary);
        std::ifstream fb(b.series_path, std::ios::binary);
        std::stringstream ba, bb;
        ba << fa.rdbuf();
        bb << fb.rdbuf();
        const bool identical = ba.str() == bb.str() && !ba.str().empty();
        pass = pass && identical;
        detail << " determinism=" << (identical ? "ok" : "mismatch");
    }
    return {pass, detail.str()};
}

}  // namespace

int acceptance_suite(std::ostream& out, bool include_slow, int only,
                     const std::string& workdir) {
    struct Entry {
        int id;
        const char* name;
        bool slow;
        std::function<CriterionResult()> run;
    };
    const std::vector<Entry> entries = {
        {1, "kernel_image_sum", false, [] { return criterion_kernel_oracle(); }},
        {2, "linear_response_1d", false, [] { return criterion_linearization_1d(); }},
        {3, "linear_response_2d", false, [] { return criterion_linearization_2d(); }},
        {4, "max_principle_1d", false,
         [&] { return criterion_max_principle_1d(workdir + "/c04"); }},
        {5, "max_principle_2d", false,
         [&] { return criterion_max_principle_2d(workdir + "/c05"); }},
        {6, "exp_decay_bound_1d", false,
         [&] { return criterion_scenario("periodic_meanzero_decay_1d", workdir + "/c06"); }},
        {7, "exp_decay_bound_2d", false,
         [&] { return criterion_scenario("periodic_meanzero_decay_2d", workdir + "/c07"); }},
        {8, "algebraic_decay_bound_1d", false,
         [&] { return criterion_scenario("line_nonneg_decay_1d", workdir + "/c08"); }},
        {9, "algebraic_decay_bound_2d", true,
         [&] { return criterion_scenario("line_nonneg_decay_2d", workdir + "/c09"); }},
        {10, "slope_bound", false,
         [&] { return criterion_scenario("slope_bound_1d", workdir + "/c10"); }},
        {11, "unstable_growth_rate", false,
         [&] { return criterion_unstable(workdir + "/c11"); }},
        {12, "proof_identity_suite", false, [] { return criterion_identities(); }},
        {13, "numerics_hygiene", false,
         [&] { return criterion_hygiene(workdir + "/c13"); }},
    };

    int status = 0;
    for (const auto& entry : entries) {
        if (only != 0 && entry.id != only) continue;
        if (only == 0 && entry.slow && !include_slow) {
            out << "CRITERION " << entry.id << ' ' << entry.name
                << " SKIP (slow; rerun with --slow)\n";
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = entry.run();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        // Scenario logs are multi-line; fold them into one row.
        std::string folded = result.detail;
        for (char& c : folded)
            if (c == '\n') c = ';';
        while (!folded.empty() && folded.back() == ';') folded.pop_back();
        out << "CRITERION " << entry.id << ' ' << entry.name << ' '
            << (result.pass ? "PASS" : "FAIL") << " [" << fmt(secs) << "s] "
            << folded << '\n';
        if (!result.pass) status = 1;
    }
    return status;
}

}  // namespace muskat
