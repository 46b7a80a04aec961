// Acceptance harness: one line per criterion, nonzero exit when any fails.
// Tolerances are pinned next to each check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/bessel.hpp>

#include "specdim/borel.hpp"
#include "specdim/cover.hpp"
#include "specdim/dynamics.hpp"
#include "specdim/error.hpp"
#include "specdim/gauge.hpp"
#include "specdim/halfline.hpp"
#include "specdim/measure.hpp"
#include "specdim/rank_one.hpp"
#include "specdim/runner.hpp"
#include "specdim/sparse_barrier.hpp"

using namespace specdim;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int idx, const char* label, bool ok, const std::string& detail) {
    std::printf("criterion %2d %s %-26s %s\n", idx, ok ? "PASS" : "FAIL", label, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Outcome {
    bool ok = false;
    std::string detail;
};

template <class F>
void criterion(int idx, const char* label, F&& body) {
    try {
        Outcome r = body();
        report(idx, label, r.ok, r.detail);
    } catch (const std::exception& e) {
        report(idx, label, false, std::string("exception: ") + e.what());
    }
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return std::string(buf);
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::vector<double> geo_up(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double r = std::pow(hi / lo, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(r, i);
    return g;
}

std::vector<double> geo_down(double hi, double lo, int n) {
    auto g = geo_up(lo, hi, n);
    std::reverse(g.begin(), g.end());
    return g;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// bounded pseudo-random potential, |V| <= 2, stateless in n
Potential hash_potential(std::uint64_t seed) {
    Potential p;
    p.name = "hash";
    p.v = [seed](std::int64_t n) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(n + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return 4.0 * (static_cast<double>(z) / 18446744073709551616.0) - 2.0;
    };
    return p;
}

// ---------------------------------------------------------------- criteria

Outcome c01_lyapunov_closed_form() {
    const double target = std::log((3.0 + std::sqrt(5.0)) / 2.0);  // 0.9624236501...
    HalfLineOperator H{constant_potential(0.0), 0.0};
    auto t0 = Clock::now();
    LyapunovResult r = upper_lyapunov(H, 3.0, geometric_schedule(100, 100000));
    const double secs = seconds_since(t0);
    const double err = std::fabs(r.estimate - target);
    const bool ok = err <= 1e-4 && r.positive && secs < 1.0;
    return {ok, fmt("|est-0.9624236|=%.2e positive=%d t=%.2fs", err, int(r.positive), secs)};
}

Outcome c02_band_estimates_vanish() {
    HalfLineOperator H{constant_potential(0.0), 0.0};
    auto pts = lyapunov_scan(H, linspace(-1.9, 1.9, 21), 100000);
    double worst = 0.0;
    int positives = 0;
    for (const auto& p : pts) {
        worst = std::max(worst, p.estimate);
        positives += p.positive ? 1 : 0;
    }
    const bool ok = pts.size() == 21 && worst < 0.01 && positives == 0;
    return {ok, fmt("21 energies, max est=%.2e, positives=%d", worst, positives)};
}

Outcome c03_million_step_invariants() {
    const std::pair<std::uint64_t, double> inst[] = {{1, 0.7}, {2, -1.3}, {3, 1.9}};
    double worst_det = 0.0, worst_w = 0.0;
    bool signs = true;
    for (auto [seed, E] : inst) {
        HalfLineOperator H{hash_potential(seed), 0.0};
        TransferProduct P(H, E);
        for (int i = 0; i < 1000000; ++i) P.step();
        worst_det = std::max(worst_det, std::fabs(P.log_det_drift()));
        signs = signs && P.det_sign() == 1;
        SolutionPair sol = solve_u1_u2(H, E, 1000000, {999999.0});
        worst_w = std::max(worst_w, std::fabs(sol.wronskian.back() - 1.0));
    }
    const bool ok = worst_det <= 1e-8 && worst_w <= 1e-8 && signs;
    return {ok, fmt("3x1e6 steps, max|ln det|=%.1e, max|W-1|=%.1e", worst_det, worst_w)};
}

Outcome c04_set_dimension() {
    Interval pidx;
    pidx.lo = 0.0;
    pidx.hi = 1.0;
    auto t0 = Clock::now();
    SetDimensionResult mid = set_dimension(cantor_tree(), power_family(pidx), 4, 60, 1e-3);
    const double t_mid = seconds_since(t0);
    const double target = std::log(2.0) / std::log(3.0);
    const bool ok_mid = mid.dim.kind == DimKind::Member &&
                        std::fabs(mid.dim.alpha - target) <= 0.02 && t_mid < 10.0;

    Interval lidx;
    lidx.lo = 0.0;
    lidx.hi = 2.0;
    t0 = Clock::now();
    SetDimensionResult lc = set_dimension(log_cantor_tree(), log_power_family(lidx), 4, 30, 1e-3);
    const double t_lc = seconds_since(t0);
    const bool ok_lc =
        lc.dim.kind == DimKind::Member && std::fabs(lc.dim.alpha - 1.0) <= 0.02 && t_lc < 10.0;

    return {ok_mid && ok_lc,
            fmt("thirds alpha=%.4f (%.1fs), log-cantor alpha=%.4f (%.1fs)", mid.dim.alpha, t_mid,
                lc.dim.alpha, t_lc)};
}

Outcome c05_hausborel_consistency() {
    struct Inst {
        const char* tag;
        SpectralMeasure mu;
        double x;
        GaugeFunction rho;
        std::vector<double> eps;
    };
    const auto fine = geo_down(1e-2, 1e-7, 16);
    const auto mid = geo_down(1e-2, 3e-5, 12);  // above the depth-10 floor
    const GaugeFunction p05 = make_power(0.5), lp1 = make_log_power(1.0),
                        p08 = make_power(0.8);

    SpectralMeasure atoms3 = finite_atoms({{-0.7, 0.2}, {0.3, 0.5}, {0.9, 0.3}});
    SpectralMeasure cantor10 = cantor_midpoint_atoms(10);
    SpectralMeasure mixed = mix(finite_atoms({{0.25, 1.0}}), 0.5, lebesgue(0.0, 1.0), 0.5);
    const double cx = cantor10.atoms.front().pos;

    std::vector<Inst> insts;
    insts.push_back({"dirac@atom/pow", dirac(0.0), 0.0, p05, fine});
    insts.push_back({"dirac@atom/pow8", dirac(0.0), 0.0, p08, fine});
    insts.push_back({"dirac@atom/logpow", dirac(0.0), 0.0, lp1, fine});
    insts.push_back({"dirac@off/pow", dirac(0.0), 0.5, p05, fine});
    insts.push_back({"atoms3@atom/pow", atoms3, 0.3, p05, fine});
    insts.push_back({"atoms3@atom/logpow", atoms3, 0.3, lp1, fine});
    insts.push_back({"atoms3@off/pow", atoms3, 10.0, p05, fine});
    insts.push_back({"leb@ac/pow", lebesgue(0.0, 1.0), 0.5, p05, fine});
    insts.push_back({"leb@ac/pow8", lebesgue(0.0, 1.0), 0.5, p08, fine});
    insts.push_back({"leb@ac/logpow", lebesgue(0.0, 1.0), 0.5, lp1, fine});
    insts.push_back({"semi@ac/pow", semicircle(), 0.0, p05, fine});
    insts.push_back({"semi@edge/pow", semicircle(), 2.0, p05, fine});
    insts.push_back({"mix@atom/pow", mixed, 0.25, p05, fine});
    insts.push_back({"mix@ac/pow8", mixed, 0.7, p08, fine});
    insts.push_back({"cantor@atom/pow", cantor10, cx, p05, mid});
    insts.push_back({"cantor@gap/pow", cantor10, 0.5, p05, mid});

    int resolved = 0;
    std::string bad;
    for (const auto& in : insts) {
        BoundaryPair r = hausborel_compare(in.mu, in.x, in.rho, in.eps);
        if (r.both_resolved) {
            ++resolved;
            if (!r.consistent) bad += std::string(" ") + in.tag;
        }
    }
    const bool ok = bad.empty() && resolved >= 8;
    return {ok, fmt("%zu instances, %d resolved, inconsistent:%s", insts.size(), resolved,
                    bad.empty() ? " none" : bad.c_str())};
}

Outcome c06_boole_identity() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> um(0.2, 1.0);
    double worst = 0.0;
    for (int N : {1, 2, 64}) {
        std::vector<Atom> atoms;
        double total = 0.0;
        for (int i = 0; i < N; ++i) {
            const double pos = -1.0 + (2.0 * i + 1.0) / N;
            const double m = um(rng);
            atoms.push_back({pos, m});
            total += m;
        }
        for (auto& a : atoms) a.mass /= total;
        BooleReport rep = boole_check(finite_atoms(atoms), {10.0, 50.0, 100.0});
        for (const auto& row : rep.rows)
            worst = std::max(worst,
                             std::fabs(row.level_set_measure - row.expected) / row.expected);
    }
    return {worst <= 0.01, fmt("N in {1,2,64}, lambda in {10,50,100}, max rel err=%.2e", worst)};
}

Outcome c07_rank_one_oracle() {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst_eig = 0.0, worst_mass = 0.0;
    bool interlaced = true;
    for (int k = 0; k < 16; ++k) {
        const int N = 2 + static_cast<int>(rng() % 63);  // <= 64
        std::vector<double> E(N), a(N);
        E[0] = -2.0 + u01(rng);
        for (int i = 1; i < N; ++i) E[i] = E[i - 1] + 1e-3 + 0.2 * u01(rng);
        double total = 0.0;
        for (int i = 0; i < N; ++i) {
            a[i] = 0.2 + u01(rng);
            total += a[i];
        }
        for (int i = 0; i < N; ++i) a[i] /= total;
        const double lambda = (k % 2 ? -1.0 : 1.0) * (0.3 + 0.4 * u01(rng));

        std::vector<Atom> atoms;
        for (int i = 0; i < N; ++i) atoms.push_back({E[i], a[i]});
        RankOnePerturbation pert{finite_atoms(atoms), lambda};
        PerturbedSpectrum s = perturbed_eigenvalues(pert);

        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
        Eigen::VectorXd sq(N);
        for (int i = 0; i < N; ++i) {
            M(i, i) = E[i];
            sq(i) = std::sqrt(a[i]);
        }
        M += lambda * sq * sq.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);

        for (int i = 0; i < N; ++i) {
            worst_eig = std::max(worst_eig, std::fabs(s.eigenvalues[i] - es.eigenvalues()(i)));
            const double x = s.eigenvalues[i];
            if (lambda > 0.0)
                interlaced = interlaced && x > E[i] && (i + 1 >= N || x < E[i + 1]);
            else
                interlaced = interlaced && x < E[i] && (i == 0 || x > E[i - 1]);
        }
        double mass = 0.0;
        for (double w : s.weights) mass += w;
        worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
    }
    const bool ok = worst_eig <= 1e-10 && worst_mass <= 1e-10 && interlaced;
    return {ok, fmt("16 instances, max|eig err|=%.1e, max|mass-1|=%.1e, interlaced=%d", worst_eig,
                    worst_mass, int(interlaced))};
}

Outcome c08_barrier_norm_bounds() {
    // (a) single-step sandwich at every materializable barrier
    BarrierProfile ep = exp_profile();
    SparseScales sc6 = build_scales(ep, 6);
    const std::vector<double> Es = {-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
    auto rows = single_step_bounds(ep, sc6, Es);
    bool ok_a = rows.size() == 3 * Es.size();
    for (const auto& r : rows) ok_a = ok_a && r.ok;

    // (b) free stretches pinned between 1 and the closed-form constant
    auto fs = free_stretch_check(linspace(-1.9, 1.9, 7), 500);
    bool ok_b = fs.size() == 7;
    for (const auto& r : fs) ok_b = ok_b && r.ok;

    // (c) exponential sandwich margins widen with the barrier index
    BarrierProfile desk = exp_scaled_profile(0.5);
    SparseScales sc5 = build_scales(desk, 5);
    ExpBoundReport rep = expbound_check(desk, sc5, {0.3, 1.1}, 0.05, {2, 3}, 6, 2000000);
    bool ok_c = rep.ns.size() == 2 && rep.ns[0] == 2 && rep.ns[1] == 3 &&
                rep.lower_margin[1] > rep.lower_margin[0] &&
                rep.upper_margin[1] > rep.upper_margin[0];

    return {ok_a && ok_b && ok_c,
            fmt("single-step %zu rows ok=%d, stretch ok=%d, margins %.2f->%.2f / %.2f->%.2f",
                rows.size(), int(ok_a), int(ok_b), rep.lower_margin[0], rep.lower_margin[1],
                rep.upper_margin[0], rep.upper_margin[1])};
}

Outcome c09_green_identity() {
    BarrierProfile desk = exp_scaled_profile(0.5);
    SparseScales sc5 = build_scales(desk, 5);
    auto rows = green_identity_check(desk, sc5, 2, {5, 9, 14}, {0.7, 1e-3});
    double worst = 0.0;
    for (const auto& r : rows)
        worst = std::max({worst, r.rel_err_split, r.rel_err_site, r.rel_err_combined});
    const bool ok = rows.size() == 3 && worst <= 1e-6;
    return {ok, fmt("k=2, n in {5,9,14}, z=0.7+1e-3i, max rel err=%.1e", worst)};
}

Outcome c10_profile_convexity() {
    const BarrierProfile accepted[] = {exp_profile(), exp_scaled_profile(0.5),
                                       exp_scaled_profile(2.0)};
    double worst = -1e300;
    for (const auto& p : accepted) {
        validate_profile(p);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(1.0, 80.0);
        for (int i = 0; i < 1000; ++i) {
            const double lx = u(rng), ly = u(rng);
            worst = std::max(worst, beta_inv(p, lx + ly) - beta_inv(p, lx) - beta_inv(p, ly));
        }
    }
    bool rejected = false;
    try {
        validate_profile(power_profile(2.0));
    } catch (const Error& e) {
        rejected = e.code() == Err::BadProfile;
    }
    BarrierProfile concave;
    concave.name = "sqrt_exp";
    concave.log_beta = [](double x) { return std::sqrt(x); };
    bool rejected2 = false;
    try {
        validate_profile(concave);
    } catch (const Error& e) {
        rejected2 = e.code() == Err::BadProfile;
    }
    const bool ok = worst <= 1e-9 && rejected && rejected2;
    return {ok, fmt("3 profiles x 1000 pairs, max violation=%.1e, rejections=%d+%d", worst,
                    int(rejected), int(rejected2))};
}

Outcome c11_sule_dimension_chain() {
    SyntheticSuleOptions opt;
    opt.sites = 256;
    opt.alpha = 1.0;
    opt.seed = 1;
    SULEModel model = synthetic_sule(opt);
    validate_sule(model);

    std::vector<double> origin(model.vectors.size());
    for (std::size_t n = 0; n < model.vectors.size(); ++n)
        origin[n] = std::fabs(model.vectors[n][0]);
    DecayFit direct = relabel_decay_fit(origin, 1);

    SuleBoundChain chain = sule_dimension_bound(model, 0.05);
    const bool ok = direct.D > 0.0 && chain.fit.D > 0.0 &&
                    chain.cover.trace.verdict == CoverVerdict::Zero &&
                    chain.vs_log_power == Ordering::Equivalent;
    return {ok, fmt("256 sites, |phi_n(0)| decay D=%.3f, chain D=%.3f, bound ~ log_power(1)=%d",
                    direct.D, chain.fit.D, int(chain.vs_log_power == Ordering::Equivalent))};
}

Outcome c12_free_line_transport() {
    auto t0 = Clock::now();
    LatticeHamiltonian h;
    h.nu = 1;
    h.box_radius = 1024;
    EvolutionPlan plan = make_plan(h, delta_state(h, {0, 0}));

    const std::vector<double> T = {50.0, 80.0, 128.0, 204.8, 327.68, 400.0};
    auto avg = evolve_and_average(plan, moment_observable(2.0), T);

    // Bessel identity: sum_n n^2 J_n(2t)^2 = 2t^2, so <<X^2>>_T = (2/3) T^2
    double worst_env = 0.0;
    std::vector<double> lt(T.size()), lm(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) {
        const double oracle = (2.0 / 3.0) * T[i] * T[i];
        worst_env = std::max(worst_env, std::fabs(avg[i] - oracle) / oracle);
        lt[i] = std::log(T[i]);
        lm[i] = std::log(avg[i]);
    }
    const double expo = ls_slope(lt, lm);

    // direct Bessel cross-check of the wave profile at t = 5
    auto pops = site_populations(plan, 5.0);
    double worst_b = 0.0;
    for (int n = -30; n <= 30; ++n) {
        const double jn = boost::math::cyl_bessel_j(std::abs(n), 10.0);
        worst_b = std::max(worst_b, std::fabs(pops[site_index(h, {n, 0})] - jn * jn));
    }
    auto tail = site_populations(plan, 400.0);
    double total = 0.0;
    for (double p : tail) total += p;
    const double secs = seconds_since(t0);

    const bool ok = worst_env <= 1e-6 && std::fabs(expo - 2.0) <= 0.05 && worst_b <= 1e-10 &&
                    std::fabs(total - 1.0) <= 1e-10 && secs < 60.0;
    return {ok, fmt("exponent=%.3f, env err=%.1e, bessel err=%.1e, |mass-1|=%.1e, t=%.1fs", expo,
                    worst_env, worst_b, std::fabs(total - 1.0), secs)};
}

Outcome c13_moment_lower_bound() {
    LatticeHamiltonian h;
    h.nu = 1;
    h.box_radius = 256;
    EvolutionPlan plan = make_plan(h, delta_state(h, {0, 0}));
    UphHypothesis hyp;
    hyp.rho = make_power(1.0);
    hyp.lengths = geo_up(0.06, 0.8, 9);
    hyp.window_lo = -1.8;
    hyp.window_hi = 1.8;
    const std::vector<double> T = geo_up(6.0, 60.0, 6);

    bool ok = true;
    double e1 = 0.0, e2 = 0.0;
    for (double m : {1.0, 2.0}) {
        MomentReport rep = check_moment_lower_bound(plan, hyp, m, T);
        ok = ok && rep.pass && rep.gate.cert.is_uph;
        (m == 1.0 ? e1 : e2) = rep.fitted_exponent;
    }

    LatticeHamiltonian diag;
    diag.nu = 1;
    diag.box_radius = 32;
    diag.hopping = 0.0;
    EvolutionPlan plan0 = make_plan(diag, delta_state(diag, {0, 0}));
    UphHypothesis hyp0 = hyp;
    hyp0.lengths = geo_up(0.12, 0.8, 8);
    bool refused = false;
    try {
        check_moment_lower_bound(plan0, hyp0, 2.0, geo_up(4.0, 20.0, 5));
    } catch (const Error& e) {
        refused = e.code() == Err::HypothesisFailed;
    }
    return {ok && refused, fmt("m=1 exponent %.3f, m=2 exponent %.3f, diagonal refused=%d", e1,
                               e2, int(refused))};
}

Outcome c14_vector_space_bound() {
    LatticeHamiltonian h;
    h.nu = 1;
    h.box_radius = 128;
    EvolutionPlan plan = make_plan(h, delta_state(h, {0, 0}));
    auto psi1 = delta_state(h, {0, 0});
    auto psi2 = delta_state(h, {3, 0});
    const GaugeFunction rho = make_power(1.0);
    const auto lengths = geo_up(0.12, 0.8, 8);

    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int held = 0;
    for (int k = 0; k < 8; ++k) {
        double a = 0.0, b = 0.0;
        while (std::fabs(a) < 0.05) a = u(rng);
        while (std::fabs(b) < 0.05) b = u(rng);
        VectorSpaceCheck v = vector_space_bound_check(plan, psi1, psi2, a, b, rho, lengths);
        held += v.ok ? 1 : 0;
    }
    return {held == 8, fmt("8 random (a,b), bound held for %d", held)};
}

Outcome c15_cli_determinism() {
    struct Cmd {
        const char* name;
        json params;
    };
    const json power05 = {{"name", "power"}, {"params", {{"alpha", 0.5}}}};
    const json power1 = {{"name", "power"}, {"params", {{"alpha", 1.0}}}};
    std::vector<Cmd> cmds;
    cmds.push_back({"gauge-compare",
                    {{"gauge_a", power05},
                     {"gauge_b", {{"name", "log_power"}, {"params", {{"alpha", 1.0}}}}}}});
    cmds.push_back({"set-dim",
                    {{"tree", {{"rule", "cantor"}}},
                     {"family", {{"kind", "power"}, {"index", {{"lo", 0.0}, {"hi", 1.0}}}}},
                     {"k_min", 4},
                     {"k_max", 40}}});
    cmds.push_back(
        {"measure-dim",
         {{"measure",
           {{"density", {{{"interval", {0.0, 1.0}}, {"kind", "const"}, {"value", 1.0}}}}}},
          {"family", {{"kind", "power"}, {"index", {{"lo", 0.0}, {"hi", 1.0}}}}},
          {"alpha_tol", 0.01}}});
    cmds.push_back(
        {"borel-scan",
         {{"measure",
           {{"density", {{{"interval", {-2.0, 2.0}}, {"kind", "semicircle"}, {"value", 1.0}}}}}},
          {"gauge", power05},
          {"x_grid", {0.0, 0.5}},
          {"eps_grid",
           {{"lo", 1e-6}, {"hi", 0.1}, {"points", 12}, {"scale", "geometric"}}}}});
    cmds.push_back({"boole",
                    {{"measure", {{"atoms", {{0.0, 0.5}, {1.0, 0.5}}}}},
                     {"lambdas", {10.0, 50.0, 100.0}}}});
    cmds.push_back({"lyapunov",
                    {{"potential", {{"kind", "zero"}}},
                     {"energies", {{"lo", -1.9}, {"hi", 1.9}, {"points", 21}}},
                     {"n_max", 100000}}});
    cmds.push_back(
        {"subordinacy",
         {{"potential", {{"kind", "sparse_barrier"}, {"beta", {{"kind", "exp"}}}, {"eta", 1.0},
                         {"K", 6}}},
          {"gauge", power05},
          {"energy", 1.3},
          {"lengths", {{"lo", 10}, {"hi", 5000}, {"points", 12}, {"scale", "geometric"}}}}});
    cmds.push_back({"sparse-barrier",
                    {{"beta", {{"kind", "exp"}}},
                     {"eta", 1.0},
                     {"K", 4},
                     {"report", "single-step"},
                     {"energies", {{"lo", -1.9}, {"hi", 1.9}, {"points", 7}}}}});
    cmds.push_back(
        {"rank-one",
         {{"measure", {{"atoms", {{0.0, 0.25}, {1.0, 0.25}, {2.0, 0.25}, {3.0, 0.25}}}}},
          {"lambda", 0.7},
          {"report", "eigen"}}});
    cmds.push_back({"sule",
                    {{"generator", {{"kind", "synthetic"}, {"sites", 48}, {"alpha", 0.35}}},
                     {"report", "dimension-bound"}}});
    cmds.push_back({"dynamics",
                    {{"potential", {{"kind", "zero"}}},
                     {"box_radius", 128},
                     {"psi", {{"site", {{"x", 0}}}}},
                     {"observable", "moment:2"},
                     {"gauge", power1},
                     {"lengths",
                      {{"lo", 0.12}, {"hi", 0.8}, {"points", 8}, {"scale", "geometric"}}},
                     {"window", {-1.8, 1.8}},
                     {"T_grid", {{"lo", 5}, {"hi", 13}, {"points", 4}}}}});

    const fs::path base = fs::temp_directory_path() / "specdim_acceptance";
    fs::remove_all(base);
    int files_compared = 0;
    std::string bad;
    for (const auto& c : cmds) {
        RunConfig cfg;
        cfg.command = c.name;
        cfg.params = c.params;
        cfg.workers = 0;
        cfg.seed = 7;
        cfg.out_dir = (base / (std::string(c.name) + "-a")).string();
        RunResult r1 = run(cfg);
        cfg.out_dir = (base / (std::string(c.name) + "-b")).string();
        RunResult r2 = run(cfg);
        if (r1.files.size() != r2.files.size()) {
            bad += std::string(" ") + c.name;
            continue;
        }
        for (std::size_t i = 0; i < r1.files.size(); ++i) {
            auto slurp = [](const std::string& p) {
                std::ifstream in(p, std::ios::binary);
                std::ostringstream ss;
                ss << in.rdbuf();
                return ss.str();
            };
            ++files_compared;
            if (fs::path(r1.files[i]).filename() != fs::path(r2.files[i]).filename() ||
                slurp(r1.files[i]) != slurp(r2.files[i])) {
                bad += std::string(" ") + c.name;
                break;
            }
        }
    }
    const bool ok = bad.empty() && cmds.size() == command_names().size();
    return {ok, fmt("%zu commands rerun, %d files byte-compared, mismatch:%s", cmds.size(),
                    files_compared, bad.empty() ? " none" : bad.c_str())};
}

}  // namespace

int main() {
    criterion(1, "lyapunov closed form", c01_lyapunov_closed_form);
    criterion(2, "band scan vanishes", c02_band_estimates_vanish);
    criterion(3, "transfer invariants", c03_million_step_invariants);
    criterion(4, "set dimension", c04_set_dimension);
    criterion(5, "hausborel agreement", c05_hausborel_consistency);
    criterion(6, "boole identity", c06_boole_identity);
    criterion(7, "rank-one spectrum", c07_rank_one_oracle);
    criterion(8, "barrier norm bounds", c08_barrier_norm_bounds);
    criterion(9, "green identity", c09_green_identity);
    criterion(10, "profile convexity", c10_profile_convexity);
    criterion(11, "sule dimension chain", c11_sule_dimension_chain);
    criterion(12, "free line transport", c12_free_line_transport);
    criterion(13, "moment lower bound", c13_moment_lower_bound);
    criterion(14, "vector space bound", c14_vector_space_bound);
    criterion(15, "cli determinism", c15_cli_determinism);

    std::printf("acceptance: %d/15 criteria passed\n", 15 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
