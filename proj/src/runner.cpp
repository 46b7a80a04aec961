#include "specdim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "specdim/borel.hpp"
#include "specdim/cover.hpp"
#include "specdim/dynamics.hpp"
#include "specdim/error.hpp"
#include "specdim/gauge.hpp"
#include "specdim/halfline.hpp"
#include "specdim/json_io.hpp"
#include "specdim/measure.hpp"
#include "specdim/rank_one.hpp"
#include "specdim/sparse_barrier.hpp"

namespace specdim {
namespace {

using jio::bool_or;
using jio::int_key;
using jio::int_or;
using jio::need;
using jio::num_key;
using jio::num_or;
using jio::str_key;
using jio::str_or;

std::string fnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Emitter {
    std::filesystem::path dir;
    const RunConfig* cfg = nullptr;
    RunResult result;

    void write(const std::string& name, const std::string& content) {
        const std::filesystem::path path = dir / name;
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        require(f.is_open(), Err::IoFailure, "cannot open " + path.string());
        f << content;
        f.close();
        require(f.good(), Err::IoFailure, "write failed for " + path.string());
        result.files.push_back(path.string());
    }

    // every JSON report carries the config echo for provenance; workers is
    // omitted deliberately: results do not depend on the thread count
    void report(Json j) {
        j["command"] = cfg->command;
        j["config"] = cfg->params;
        j["seed"] = cfg->seed;
        write(cfg->command + ".json", j.dump(2) + "\n");
    }
};

struct Csv {
    std::string buf;

    void comment(const std::string& line) { buf += "# " + line + "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) buf += ",";
            buf += cells[i];
        }
        buf += "\n";
    }
};

std::vector<double> descending_grid(const Json& j, const std::string& field) {
    std::vector<double> g = grid_from_json(j, field);
    std::sort(g.begin(), g.end(), std::greater<>());
    return g;
}

std::vector<int> int_list(const Json& j, const std::string& field) {
    const std::vector<double> raw = grid_from_json(j, field);
    std::vector<int> out;
    for (double v : raw) {
        require(v == static_cast<int>(v), Err::BadConfig, field + " must hold integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

HalfLineOperator operator_from_params(const Json& params) {
    HalfLineOperator H;
    H.potential = potential_from_json(need(params, "", "potential"), "potential");
    H.theta = num_or(params, "", "theta", 0.0);
    return H;
}

// ---------------------------------------------------------------- commands

void run_gauge_compare(const Json& p, Emitter& out) {
    const GaugeFunction a = gauge_from_json(need(p, "", "gauge_a"), "gauge_a");
    const GaugeFunction b = gauge_from_json(need(p, "", "gauge_b"), "gauge_b");
    const std::vector<double> s =
        p.contains("s_grid") ? grid_from_json(p["s_grid"], "s_grid")
                             : default_s_grid(std::max(a.s_min, b.s_min));
    const Ordering ord = compare(a, b, s);

    Csv csv;
    csv.comment("gauge-compare: log-scale values ln rho(e^{-s}) on the comparison grid");
    csv.comment("columns: s, log_a, log_b, log_a_minus_log_b");
    for (double si : s) {
        const double la = a.log_form(si), lb = b.log_form(si);
        csv.row({fnum(si), fnum(la), fnum(lb), fnum(la - lb)});
    }
    out.write("gauge-compare.csv", csv.buf);

    Json rep;
    rep["gauge_a"] = a.name;
    rep["gauge_b"] = b.name;
    rep["ordering"] = to_string(ord);
    out.report(std::move(rep));
}

void run_set_dim(const Json& p, Emitter& out) {
    const CoverTree tree = tree_from_json(need(p, "", "tree"), "tree");
    const CompleteFamily fam = family_from_json(need(p, "", "family"), "family");
    const int k_min = static_cast<int>(int_key(p, "", "k_min"));
    const int k_max = static_cast<int>(int_key(p, "", "k_max"));
    const double alpha_tol = num_or(p, "", "alpha_tol", 1e-3);
    CoverOptions copt;
    copt.delta = num_or(p, "", "delta", copt.delta);
    copt.band = num_or(p, "", "band", copt.band);
    const SetDimensionResult r = set_dimension(tree, fam, k_min, k_max, alpha_tol, copt);

    Csv csv;
    csv.comment("set-dim: cover-sum verdicts probed along the family");
    csv.comment("columns: alpha, verdict");
    for (const auto& [alpha, verdict] : r.probes) csv.row({fnum(alpha), to_string(verdict)});
    out.write("set-dim.csv", csv.buf);

    Json rep;
    rep["dimension"] = r.dim.str();
    rep["alpha"] = r.dim.alpha;
    rep["tree"] = tree.name;
    rep["family"] = fam.name;
    rep["probes"] = r.probes.size();
    out.report(std::move(rep));
}

void run_measure_dim(const Json& p, Emitter& out) {
    const SpectralMeasure mu = measure_from_json(need(p, "", "measure"), "measure");
    const CompleteFamily fam = family_from_json(need(p, "", "family"), "family");
    const double alpha_tol = num_or(p, "", "alpha_tol", 1e-3);
    ClassifyOptions opt;
    opt.points = static_cast<std::size_t>(int_or(p, "", "points", 64));
    opt.atom_floor = num_or(p, "", "atom_floor", opt.atom_floor);
    opt.eta = num_or(p, "", "eta", opt.eta);
    if (p.contains("eps_grid")) opt.eps_grid = descending_grid(p["eps_grid"], "eps_grid");
    const MeasureDimensionResult r = measure_dimension(mu, fam, alpha_tol, opt);

    Csv csv;
    csv.comment("measure-dim: classification probes along the family");
    csv.comment("columns: alpha, class");
    for (const auto& [alpha, cls] : r.probes) csv.row({fnum(alpha), to_string(cls)});
    out.write("measure-dim.csv", csv.buf);

    if (p.contains("scan_x")) {
        const GaugeFunction rho = gauge_from_json(need(p, "", "gauge"), "gauge");
        const std::vector<double> eps = descending_grid(need(p, "", "eps_grid"), "eps_grid");
        Csv scan;
        scan.comment("measure-dim: local scaling ln(mu(B(x,eps))/rho(eps))");
        scan.comment("columns: x, eps, log_ratio");
        for (double x : grid_from_json(p["scan_x"], "scan_x")) {
            const ScalingReport sr = local_scaling(mu, x, rho, eps);
            for (std::size_t i = 0; i < sr.eps.size(); ++i)
                scan.row({fnum(x), fnum(sr.eps[i]), fnum(sr.log_ratio[i])});
        }
        out.write("measure-scaling.csv", scan.buf);
    }

    Json rep;
    rep["upper"] = r.upper.str();
    rep["upper_alpha"] = r.upper.alpha;
    rep["lower"] = r.lower.str();
    rep["lower_alpha"] = r.lower.alpha;
    rep["family"] = fam.name;
    out.report(std::move(rep));
}

void run_borel_scan(const Json& p, Emitter& out) {
    const SpectralMeasure mu = measure_from_json(need(p, "", "measure"), "measure");
    const GaugeFunction rho = gauge_from_json(need(p, "", "gauge"), "gauge");
    const std::vector<double> xs = grid_from_json(need(p, "", "x_grid"), "x_grid");
    const std::vector<double> eps = descending_grid(need(p, "", "eps_grid"), "eps_grid");

    Csv csv;
    csv.comment("borel-scan: maximal-function channel vs boundary channel");
    csv.comment("columns: x, eps, im_F, log_mass_ratio, log_borel_ratio");
    Json points = Json::array();
    for (double x : xs) {
        const BoundaryPair bp = hausborel_compare(mu, x, rho, eps);
        for (std::size_t i = 0; i < bp.eps.size(); ++i) {
            const double imf = borel_transform(mu, {x, bp.eps[i]}).imag();
            csv.row({fnum(x), fnum(bp.eps[i]), fnum(imf), fnum(bp.log_mass_ratio[i]),
                     fnum(bp.log_borel_ratio[i])});
        }
        Json jp;
        jp["x"] = x;
        jp["mass_class"] = to_string(bp.mass_class);
        jp["borel_class"] = to_string(bp.borel_class);
        jp["both_resolved"] = bp.both_resolved;
        jp["consistent"] = bp.consistent;
        points.push_back(std::move(jp));
    }
    out.write("borel-scan.csv", csv.buf);

    Json rep;
    rep["points"] = std::move(points);
    out.report(std::move(rep));
}

void run_boole(const Json& p, Emitter& out) {
    const SpectralMeasure mu = measure_from_json(need(p, "", "measure"), "measure");
    const std::vector<double> lambdas = grid_from_json(need(p, "", "lambdas"), "lambdas");
    const BooleReport r = boole_check(mu, lambdas);

    Csv csv;
    csv.comment("boole: Lebesgue measure of {|F| > lambda} against 2 mu(R)/lambda");
    csv.comment("columns: lambda, level_set_measure, expected, rel_err");
    for (const BooleRow& row : r.rows)
        csv.row({fnum(row.lambda), fnum(row.level_set_measure), fnum(row.expected),
                 fnum(std::abs(row.level_set_measure - row.expected) / row.expected)});
    out.write("boole.csv", csv.buf);

    Json rep;
    rep["max_rel_err"] = r.max_rel_err;
    rep["rows"] = r.rows.size();
    out.report(std::move(rep));
}

void run_lyapunov(const Json& p, Emitter& out) {
    const HalfLineOperator H = operator_from_params(p);
    const std::vector<double> energies = grid_from_json(need(p, "", "energies"), "energies");
    const std::int64_t n_max = int_key(p, "", "n_max");
    const std::vector<LyapunovPoint> pts = lyapunov_scan(H, energies, n_max);

    Csv csv;
    csv.comment("lyapunov: upper Lyapunov exponent estimates per energy");
    csv.comment("columns: energy, estimate, positive");
    for (const LyapunovPoint& pt : pts)
        csv.row({fnum(pt.energy), fnum(pt.estimate), pt.positive ? "1" : "0"});
    out.write("lyapunov.csv", csv.buf);

    std::size_t n_pos = 0;
    double max_est = 0.0;
    for (const LyapunovPoint& pt : pts) {
        n_pos += pt.positive ? 1 : 0;
        max_est = std::max(max_est, pt.estimate);
    }
    Json rep;
    rep["potential"] = H.potential.name;
    rep["positive_count"] = n_pos;
    rep["max_estimate"] = max_est;
    out.report(std::move(rep));
}

void run_subordinacy(const Json& p, Emitter& out) {
    const HalfLineOperator H = operator_from_params(p);
    const GaugeFunction rho = gauge_from_json(need(p, "", "gauge"), "gauge");
    const double energy = num_key(p, "", "energy");
    std::vector<double> lengths = grid_from_json(need(p, "", "lengths"), "lengths");
    std::sort(lengths.begin(), lengths.end());
    const SubordinacyResult r = subordinacy_functional(H, energy, rho, lengths);

    Csv csv;
    csv.comment("subordinacy: rho(1/(||u1|| ||u2||)) ||u1||^2 trace over length scales");
    csv.comment("columns: length, log_value, running_min");
    for (std::size_t i = 0; i < r.lengths.size(); ++i)
        csv.row({fnum(r.lengths[i]), fnum(r.log_value[i]), fnum(r.running_min[i])});
    out.write("subordinacy.csv", csv.buf);

    Json rep;
    rep["energy"] = energy;
    rep["gauge"] = rho.name;
    rep["verdict"] = to_string(r.verdict);
    rep["trend_slope"] = r.trend.slope;
    out.report(std::move(rep));
}

void run_sparse_barrier(const Json& p, Emitter& out) {
    const BarrierProfile prof = profile_from_json(p, "");
    const int K = static_cast<int>(int_key(p, "", "K"));
    const SparseScales scales = build_scales(prof, K);
    const std::string report = str_key(p, "", "report");

    Json rep;
    rep["profile"] = prof.name;
    rep["K"] = K;
    rep["report"] = report;

    Csv csv;
    if (report == "single-step") {
        const std::vector<double> energies =
            grid_from_json(need(p, "", "energies"), "energies");
        const auto rows = single_step_bounds(prof, scales, energies);
        csv.comment("sparse-barrier single-step: ln ||T_{L_k}(E)|| against max{1,V-2}..V+3");
        csv.comment("columns: k, energy, log_norm, log_lo, log_hi, ok");
        bool all_ok = true;
        for (const SingleStepRow& row : rows) {
            csv.row({std::to_string(row.k), fnum(row.energy), fnum(row.log_norm),
                     fnum(row.log_lo), fnum(row.log_hi), row.ok ? "1" : "0"});
            all_ok = all_ok && row.ok;
        }
        rep["all_ok"] = all_ok;
    } else if (report == "expbound") {
        const std::vector<double> energies =
            grid_from_json(need(p, "", "energies"), "energies");
        const double eps = num_or(p, "", "eps", 0.05);
        const std::vector<int> n_range = int_list(need(p, "", "n_range"), "n_range");
        const int m_samples = static_cast<int>(int_or(p, "", "m_samples", 8));
        const ExpBoundReport r = expbound_check(prof, scales, energies, eps, n_range, m_samples);
        csv.comment("sparse-barrier expbound: transfer norms between consecutive barriers");
        csv.comment("columns: n, m, energy, log_norm, log_lower, log_upper, within");
        for (const ExpBoundRow& row : r.rows)
            csv.row({std::to_string(row.n), std::to_string(row.m), fnum(row.energy),
                     fnum(row.log_norm), fnum(row.log_lower), fnum(row.log_upper),
                     row.within ? "1" : "0"});
        Json margins = Json::array();
        for (std::size_t i = 0; i < r.ns.size(); ++i) {
            Json m;
            m["n"] = r.ns[i];
            m["lower_margin"] = r.lower_margin[i];
            m["upper_margin"] = r.upper_margin[i];
            margins.push_back(std::move(m));
        }
        rep["eps"] = r.eps;
        rep["margins"] = std::move(margins);
    } else if (report == "fndelta") {
        const int n = static_cast<int>(int_key(p, "", "n"));
        const double delta = num_key(p, "", "delta");
        const std::vector<double> l_grid = grid_from_json(need(p, "", "l_grid"), "l_grid");
        const double eps = num_or(p, "", "eps", 0.5);
        const FnDeltaResult r = f_n_delta(prof, scales, n, delta, l_grid, eps);
        csv.comment("sparse-barrier fndelta: ln F_{n,delta}(l) over the window grid");
        csv.comment("columns: l, log_F, case_id");
        for (std::size_t i = 0; i < r.l.size(); ++i)
            csv.row({fnum(r.l[i]), fnum(r.log_F[i]), std::to_string(r.case_id[i])});
        rep["log_min"] = r.log_min;
        rep["l_at_min"] = r.l_at_min;
        rep["log_case_boundary"] = r.log_case_boundary;
    } else if (report == "green") {
        const int k = static_cast<int>(int_key(p, "", "k"));
        const std::vector<int> ns_int = int_list(need(p, "", "ns"), "ns");
        const std::vector<std::int64_t> ns(ns_int.begin(), ns_int.end());
        const std::complex<double> z(num_key(p, "", "z_re"), num_key(p, "", "z_im"));
        const auto rows = green_identity_check(prof, scales, k, ns, z);
        csv.comment("sparse-barrier green: resolvent factorization across barrier k");
        csv.comment("columns: n, re_full, im_full, rel_err_split, rel_err_site, rel_err_combined");
        double max_err = 0.0;
        for (const GreenIdentityRow& row : rows) {
            csv.row({std::to_string(row.n), fnum(row.full.real()), fnum(row.full.imag()),
                     fnum(row.rel_err_split), fnum(row.rel_err_site),
                     fnum(row.rel_err_combined)});
            max_err = std::max({max_err, row.rel_err_split, row.rel_err_combined});
        }
        rep["max_rel_err"] = max_err;
    } else {
        fail(Err::BadConfig,
             "report: must be single-step, expbound, fndelta, or green, got '" + report + "'");
    }
    out.write("sparse-barrier.csv", csv.buf);
    out.report(std::move(rep));
}

void run_rank_one(const Json& p, Emitter& out) {
    RankOnePerturbation pert;
    pert.base = measure_from_json(need(p, "", "measure"), "measure");
    pert.coupling = num_key(p, "", "lambda");
    const std::string report = str_or(p, "", "report", "eigen");

    Json rep;
    rep["lambda"] = pert.coupling;
    rep["report"] = report;

    Csv csv;
    if (report == "eigen") {
        const PerturbedSpectrum ps = perturbed_eigenvalues(pert);
        csv.comment("rank-one eigen: perturbed eigenvalues and residue weights");
        csv.comment("columns: eigenvalue, weight");
        double mass = 0.0;
        for (std::size_t i = 0; i < ps.eigenvalues.size(); ++i) {
            csv.row({fnum(ps.eigenvalues[i]), fnum(ps.weights[i])});
            mass += ps.weights[i];
        }
        rep["count"] = ps.eigenvalues.size();
        rep["total_weight"] = mass;
    } else if (report == "transform") {
        const std::vector<double> xs = grid_from_json(need(p, "", "x_grid"), "x_grid");
        const double eps = num_key(p, "", "eps");
        require(eps > 0.0, Err::BadConfig, "eps must be positive");
        csv.comment("rank-one transform: F_lambda(x + i eps) on the scan grid");
        csv.comment("columns: x, re_F, im_F");
        for (double x : xs) {
            const std::complex<double> F = perturbed_transform(pert, {x, eps});
            csv.row({fnum(x), fnum(F.real()), fnum(F.imag())});
        }
        rep["eps"] = eps;
    } else {
        fail(Err::BadConfig, "report: must be eigen or transform, got '" + report + "'");
    }
    out.write("rank-one.csv", csv.buf);
    out.report(std::move(rep));
}

void run_sule(const Json& p, Emitter& out, std::uint64_t seed) {
    const Json& gen = need(p, "", "generator");
    const std::string kind = str_key(gen, "generator", "kind");
    SULEModel model;
    if (kind == "synthetic") {
        SyntheticSuleOptions opt;
        opt.sites = static_cast<int>(int_or(gen, "generator", "sites", opt.sites));
        opt.alpha = num_or(gen, "generator", "alpha", opt.alpha);
        opt.delta = num_or(gen, "generator", "delta", opt.delta);
        opt.seed = static_cast<std::uint64_t>(
            int_or(gen, "generator", "seed", static_cast<std::int64_t>(seed)));
        model = synthetic_sule(opt);
    } else if (kind == "anderson") {
        const int sites = static_cast<int>(int_or(gen, "generator", "sites", 256));
        const double disorder = num_key(gen, "generator", "disorder");
        const std::uint64_t s = static_cast<std::uint64_t>(
            int_or(gen, "generator", "seed", static_cast<std::int64_t>(seed)));
        model = anderson_sule(sites, disorder, s);
    } else {
        fail(Err::BadConfig, "generator.kind: must be synthetic or anderson, got '" + kind + "'");
    }
    validate_sule(model);

    const std::string report = str_or(p, "", "report", "weights");
    Json rep;
    rep["generator"] = kind;
    rep["sites"] = model.energies.size();
    rep["alpha"] = model.alpha;
    rep["c_delta"] = model.c_delta;
    rep["report"] = report;

    Csv csv;
    if (report == "weights") {
        const SuleMeasure sm = sule_spectral_measure(model);
        csv.comment("sule weights: spectral measure of delta_0 over the eigenbasis");
        csv.comment("columns: energy, weight");
        for (const Atom& at : sm.measure.atoms) csv.row({fnum(at.pos), fnum(at.mass)});
        rep["renormalized"] = sm.renormalized;
        rep["atoms"] = sm.measure.atoms.size();
    } else if (report == "dimension-bound") {
        const double eps = num_or(p, "", "eps", 0.05);
        const SuleBoundChain chain = sule_dimension_bound(model, eps);
        csv.comment("sule dimension-bound: limsup-tail cover sums under the verdict gauge");
        csv.comment("columns: k, log_sum");
        for (std::size_t i = 0; i < chain.cover.trace.k.size(); ++i)
            csv.row({std::to_string(chain.cover.trace.k[i]),
                     fnum(chain.cover.trace.log_sum[i])});
        rep["decay_rate"] = chain.fit.D;
        rep["decay_log_C"] = chain.fit.log_C;
        rep["gauge"] = chain.f.name;
        rep["verdict"] = to_string(chain.cover.trace.verdict);
        rep["bound"] = chain.cover.bound.str();
        rep["bound_gauge"] = chain.cover.bound_gauge.name;
        rep["vs_log_power"] = to_string(chain.vs_log_power);
    } else {
        fail(Err::BadConfig, "report: must be weights or dimension-bound, got '" + report + "'");
    }
    out.write("sule.csv", csv.buf);
    out.report(std::move(rep));
}

std::function<double(LatticeSite)> lattice_potential_from_json(const Json& j,
                                                               const LatticeHamiltonian& h,
                                                               std::string* name) {
    const std::string kind = str_key(j, "potential", "kind");
    *name = kind;
    if (kind == "zero") return {};
    if (kind == "constant") {
        const double c = num_key(j, "potential", "value");
        return [c](LatticeSite) { return c; };
    }
    if (kind == "table") {
        auto vals = std::make_shared<std::vector<double>>(
            jio::num_array(need(j, "potential", "values"), "potential.values"));
        const std::int64_t N = h.box_radius;
        const int nu = h.nu;
        const bool half = h.half_line;
        const std::size_t dim = half ? static_cast<std::size_t>(N)
                                     : (nu == 1 ? static_cast<std::size_t>(2 * N + 1)
                                                : static_cast<std::size_t>((2 * N + 1) *
                                                                           (2 * N + 1)));
        require(vals->size() == dim, Err::BadConfig,
                "potential.values must list one value per site, in enumeration order");
        return [vals, N, nu, half](LatticeSite s) {
            const std::int64_t idx = nu == 1 ? (half ? s.x - 1 : s.x + N)
                                             : (s.y + N) * (2 * N + 1) + (s.x + N);
            return (*vals)[static_cast<std::size_t>(idx)];
        };
    }
    fail(Err::BadConfig, "potential.kind: must be zero, constant, or table, got '" + kind + "'");
}

void run_dynamics(const Json& p, Emitter& out) {
    LatticeHamiltonian h;
    h.nu = static_cast<int>(int_or(p, "", "nu", 1));
    h.box_radius = static_cast<int>(int_key(p, "", "box_radius"));
    h.half_line = bool_or(p, "", "half_line", false);
    h.hopping = num_or(p, "", "hopping", 1.0);
    h.potential = lattice_potential_from_json(need(p, "", "potential"), h, &h.potential_name);

    std::vector<double> psi;
    const Json& pj = need(p, "", "psi");
    if (pj.is_object() && pj.contains("site")) {
        LatticeSite site;
        site.x = int_or(pj["site"], "psi.site", "x", 0);
        site.y = int_or(pj["site"], "psi.site", "y", 0);
        psi = delta_state(h, site);
    } else if (pj.is_object() && pj.contains("values")) {
        psi = jio::num_array(pj["values"], "psi.values");
    } else {
        fail(Err::BadConfig, "psi must carry either site or values");
    }

    const EvolutionPlan plan = make_plan(h, std::move(psi), num_or(p, "", "leakage", 1e-6));

    const std::string obs_spec = str_key(p, "", "observable");
    const auto colon = obs_spec.find(':');
    require(colon != std::string::npos, Err::BadConfig,
            "observable must be moment:<m> or proj:<N>");
    const std::string obs_kind = obs_spec.substr(0, colon);
    const std::string obs_arg = obs_spec.substr(colon + 1);

    std::vector<double> T_grid = grid_from_json(need(p, "", "T_grid"), "T_grid");
    std::sort(T_grid.begin(), T_grid.end());

    Json rep;
    rep["dim"] = plan.dim;
    rep["observable"] = obs_spec;

    Csv csv;
    csv.comment("dynamics: time-averaged observable with its envelope");
    csv.comment("columns: T, value, bound, pass");
    if (obs_kind == "moment") {
        double m = 0.0;
        try {
            m = std::stod(obs_arg);
        } catch (const std::exception&) {
            fail(Err::BadConfig, "observable: bad moment exponent '" + obs_arg + "'");
        }
        UphHypothesis hyp;
        hyp.rho = gauge_from_json(need(p, "", "gauge"), "gauge");
        hyp.lengths = grid_from_json(need(p, "", "lengths"), "lengths");
        if (p.contains("window")) {
            const std::vector<double> w = jio::num_array(p["window"], "window");
            require(w.size() == 2, Err::BadConfig, "window must be [lo, hi]");
            hyp.window_lo = w[0];
            hyp.window_hi = w[1];
        }
        const MomentReport r = check_moment_lower_bound(plan, hyp, m, T_grid);
        for (const MomentRow& row : r.rows)
            csv.row({fnum(row.T), fnum(row.moment), fnum(row.envelope), row.ok ? "1" : "0"});
        rep["fitted_C"] = r.fitted_C;
        rep["fitted_exponent"] = r.fitted_exponent;
        rep["envelope_exponent"] = r.envelope_exponent;
        rep["certificate_constant"] = r.gate.cert.constant;
        rep["component_mass"] = r.gate.component_mass;
        rep["pass"] = r.pass;
    } else if (obs_kind == "proj") {
        int radius = -1;
        try {
            radius = std::stoi(obs_arg);
        } catch (const std::exception&) {
            fail(Err::BadConfig, "observable: bad projection radius '" + obs_arg + "'");
        }
        const std::vector<double> vals =
            evolve_and_average(plan, projection_observable(radius), T_grid);
        bool all_ok = true;
        for (std::size_t i = 0; i < T_grid.size(); ++i) {
            const bool ok = vals[i] <= 1.0 + 1e-9;
            csv.row({fnum(T_grid[i]), fnum(vals[i]), fnum(1.0), ok ? "1" : "0"});
            all_ok = all_ok && ok;
        }
        rep["pass"] = all_ok;
    } else {
        fail(Err::BadConfig, "observable: unknown kind '" + obs_kind + "'");
    }
    out.write("dynamics.csv", csv.buf);
    out.report(std::move(rep));
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "gauge-compare", "set-dim",        "measure-dim", "borel-scan",
        "boole",         "lyapunov",       "subordinacy", "sparse-barrier",
        "rank-one",      "sule",           "dynamics"};
    return names;
}

RunResult run(const RunConfig& config) {
    require(config.params.is_object(), Err::BadConfig, "config must be a JSON object");
    require(config.workers >= 0, Err::BadConfig, "workers must be >= 0");
#ifdef _OPENMP
    if (config.workers > 0) omp_set_num_threads(config.workers);
#endif
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    require(!ec, Err::IoFailure, "cannot create output directory " + config.out_dir);

    Emitter out;
    out.dir = config.out_dir;
    out.cfg = &config;

    const Json& p = config.params;
    if (config.command == "gauge-compare")
        run_gauge_compare(p, out);
    else if (config.command == "set-dim")
        run_set_dim(p, out);
    else if (config.command == "measure-dim")
        run_measure_dim(p, out);
    else if (config.command == "borel-scan")
        run_borel_scan(p, out);
    else if (config.command == "boole")
        run_boole(p, out);
    else if (config.command == "lyapunov")
        run_lyapunov(p, out);
    else if (config.command == "subordinacy")
        run_subordinacy(p, out);
    else if (config.command == "sparse-barrier")
        run_sparse_barrier(p, out);
    else if (config.command == "rank-one")
        run_rank_one(p, out);
    else if (config.command == "sule")
        run_sule(p, out, config.seed);
    else if (config.command == "dynamics")
        run_dynamics(p, out);
    else
        fail(Err::BadConfig, "command: unknown subcommand '" + config.command + "'");
    return std::move(out.result);
}

}  // namespace specdim
