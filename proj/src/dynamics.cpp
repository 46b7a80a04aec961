#include "specdim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "specdim/error.hpp"
#include "specdim/trend.hpp"

namespace specdim {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::Map<const MatrixXd> qmat(const EvolutionPlan& plan) {
    return {plan.modes.data(), static_cast<Index>(plan.dim), static_cast<Index>(plan.dim)};
}

double potential_at(const LatticeHamiltonian& h, LatticeSite n) {
    const double v = h.potential ? h.potential(n) : 0.0;
    require(std::isfinite(v), Err::BadParams, "potential must be finite on the box");
    return v;
}

// H v from the lattice structure; the oracle side of the reconstruction probe
VectorXd apply_h(const LatticeHamiltonian& h, const std::vector<LatticeSite>& sites,
                 const VectorXd& v) {
    const Index dim = v.size();
    VectorXd out(dim);
    const std::int64_t N = h.box_radius;
    const std::int64_t side = 2 * N + 1;
    for (Index i = 0; i < dim; ++i) {
        double acc = potential_at(h, sites[static_cast<std::size_t>(i)]) * v[i];
        if (h.nu == 1) {
            if (i > 0) acc += h.hopping * v[i - 1];
            if (i + 1 < dim) acc += h.hopping * v[i + 1];
        } else {
            const std::int64_t x = sites[static_cast<std::size_t>(i)].x;
            if (x > -N) acc += h.hopping * v[i - 1];
            if (x < N) acc += h.hopping * v[i + 1];
            if (i >= side) acc += h.hopping * v[i - side];
            if (i + side < dim) acc += h.hopping * v[i + side];
        }
        out[i] = acc;
    }
    return out;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// sum_{jk} W_{jk} sinc((E_j - E_k) T) for symmetric W
double kernel_sum(const MatrixXd& W, const std::vector<double>& E, double T) {
    const Index n = W.rows();
    double diag = 0.0, off = 0.0;
    for (Index k = 0; k < n; ++k) {
        diag += W(k, k);
        const double ek = E[static_cast<std::size_t>(k)];
        const double* col = W.col(k).data();
        for (Index j = 0; j < k; ++j)
            off += col[j] * sinc((E[static_cast<std::size_t>(j)] - ek) * T);
    }
    return diag + 2.0 * off;
}

// <|<v, psi(t)>|^2>_T for g_j = v_j psi_j in the eigenbasis
double avg_sq_inner(const std::vector<double>& g, const std::vector<double>& E, double T) {
    const std::size_t n = g.size();
    double diag = 0.0, off = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        diag += g[k] * g[k];
        for (std::size_t j = 0; j < k; ++j) off += g[j] * g[k] * sinc((E[j] - E[k]) * T);
    }
    return diag + 2.0 * off;
}

std::vector<double> mode_overlap(const EvolutionPlan& plan, const std::vector<double>& v_sites) {
    require(v_sites.size() == plan.dim, Err::BadParams, "state must live on the box");
    const Eigen::Map<const VectorXd> v(v_sites.data(), static_cast<Index>(plan.dim));
    const VectorXd vm = qmat(plan).transpose() * v;
    std::vector<double> g(plan.dim);
    for (std::size_t j = 0; j < plan.dim; ++j) g[j] = vm[static_cast<Index>(j)] * plan.psi_modes[j];
    return g;
}

void check_leakage(const EvolutionPlan& plan, double T) {
    const double lost = boundary_mass(plan, T);
    require(lost <= plan.leakage_budget, Err::LeakageExceeded,
            "boundary mass exceeds the leakage budget; enlarge box_radius");
}

double rho_of_inv_T(const GaugeFunction& rho, double T) {
    const double s = std::log(T);
    require(s > rho.s_min, Err::InvalidGrid, "T outside the gauge domain");
    return std::exp(rho.log_form(s));
}

std::vector<double> clean_lengths(std::vector<double> lengths, const SpectralMeasure& mu,
                                  const GaugeFunction& rho) {
    for (double l : lengths)
        require(std::isfinite(l) && l > 0.0, Err::InvalidGrid, "lengths must be positive");
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    require(lengths.size() >= 6, Err::InvalidGrid, "need at least 6 interval lengths");
    if (mu.resolution_floor > 0.0)
        require(lengths.back() >= mu.resolution_floor, Err::BadParams,
                "grid goes below the measure's resolution floor");
    for (double l : lengths)
        require(-std::log(l) > rho.s_min, Err::InvalidGrid, "length outside the gauge domain");
    return lengths;
}

// sup over centered intervals of length l of mu(I), sweeping a uniform grid
// plus every atom position
double sup_interval_mass(const SpectralMeasure& mu, double l, int centers) {
    const double lo = mu.support_lo() - 0.5 * l;
    const double hi = mu.support_hi() + 0.5 * l;
    double sup = 0.0;
    const double step = (hi - lo) / (centers - 1);
    for (int k = 0; k < centers; ++k) {
        const double c = lo + step * k;
        sup = std::max(sup, mu.interval_mass(c - 0.5 * l, c + 0.5 * l));
    }
    for (const Atom& at : mu.atoms)
        sup = std::max(sup, mu.interval_mass(at.pos - 0.5 * l, at.pos + 0.5 * l));
    return sup;
}

SpectralMeasure window_component(const SpectralMeasure& mu, double lo, double hi, Err gate_err) {
    if (lo >= hi) return mu;
    SpectralMeasure comp;
    for (const Atom& at : mu.atoms)
        if (at.pos >= lo && at.pos <= hi) comp.atoms.push_back(at);
    require(!comp.atoms.empty(), gate_err, "no spectral mass in the hypothesis window");
    comp.resolution_floor = mu.resolution_floor;
    comp.finalize();
    return comp;
}

HypothesisGate run_gate(const EvolutionPlan& plan, const UphHypothesis& hyp, Err gate_err) {
    const SpectralMeasure mu = state_spectral_measure(plan);
    const SpectralMeasure comp = window_component(mu, hyp.window_lo, hyp.window_hi, gate_err);
    HypothesisGate gate;
    gate.component_mass = comp.total_mass();
    gate.cert = uph_certificate(comp, hyp.rho, hyp.lengths);
    require(gate.cert.is_uph, gate_err,
            "spectral measure not certified UrhoH at the tested scales");
    return gate;
}

struct LineFit {
    double slope = 0.0;
};

LineFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    require(det > 0.0, Err::InvalidGrid, "degenerate abscissas in slope fit");
    return {(n * sxy - sx * sy) / det};
}

}  // namespace

std::vector<LatticeSite> enumerate_sites(const LatticeHamiltonian& h) {
    require(h.nu == 1 || h.nu == 2, Err::BadParams, "nu must be 1 or 2");
    require(!h.half_line || h.nu == 1, Err::BadParams, "half-line boxes are one-dimensional");
    require(h.box_radius >= 2, Err::BadParams, "box_radius must be at least 2");
    const std::int64_t N = h.box_radius;
    std::vector<LatticeSite> sites;
    if (h.nu == 1) {
        if (h.half_line)
            for (std::int64_t x = 1; x <= N; ++x) sites.push_back({x, 0});
        else
            for (std::int64_t x = -N; x <= N; ++x) sites.push_back({x, 0});
    } else {
        for (std::int64_t y = -N; y <= N; ++y)
            for (std::int64_t x = -N; x <= N; ++x) sites.push_back({x, y});
    }
    return sites;
}

std::size_t site_index(const LatticeHamiltonian& h, LatticeSite n) {
    const std::int64_t N = h.box_radius;
    if (h.nu == 1) {
        require(n.y == 0, Err::BadParams, "one-dimensional site has y = 0");
        if (h.half_line) {
            require(n.x >= 1 && n.x <= N, Err::BadParams, "site outside the box");
            return static_cast<std::size_t>(n.x - 1);
        }
        require(n.x >= -N && n.x <= N, Err::BadParams, "site outside the box");
        return static_cast<std::size_t>(n.x + N);
    }
    require(n.x >= -N && n.x <= N && n.y >= -N && n.y <= N, Err::BadParams,
            "site outside the box");
    return static_cast<std::size_t>((n.y + N) * (2 * N + 1) + (n.x + N));
}

std::vector<double> delta_state(const LatticeHamiltonian& h, LatticeSite n) {
    std::vector<double> v(enumerate_sites(h).size(), 0.0);
    v[site_index(h, n)] = 1.0;
    return v;
}

int ballistic_radius(double T) {
    require(T >= 0.0 && std::isfinite(T), Err::BadParams, "T must be >= 0");
    return static_cast<int>(std::ceil(2.0 * T + 10.0 * std::cbrt(std::max(T, 1.0)) + 48.0));
}

EvolutionPlan make_plan(const LatticeHamiltonian& h, std::vector<double> psi_sites,
                        double leakage_budget) {
    require(std::isfinite(h.hopping), Err::BadParams, "hopping must be finite");
    require(leakage_budget > 0.0, Err::BadParams, "leakage budget must be positive");

    EvolutionPlan plan;
    plan.h = h;
    plan.leakage_budget = leakage_budget;
    plan.sites = enumerate_sites(h);
    plan.dim = plan.sites.size();
    const std::size_t cap = h.nu == 1 ? 8192 : 4096;
    require(plan.dim <= cap, Err::BadParams, "box too large for exact diagonalization");
    require(psi_sites.size() == plan.dim, Err::BadParams, "psi must live on the box");

    double nrm2 = 0.0;
    for (double x : psi_sites) {
        require(std::isfinite(x), Err::BadParams, "psi entries must be finite");
        nrm2 += x * x;
    }
    const double nrm = std::sqrt(nrm2);
    require(std::abs(nrm - 1.0) <= 1e-6, Err::BadParams, "psi must be normalized");
    for (double& x : psi_sites) x /= nrm;
    plan.psi_sites = std::move(psi_sites);

    const Index dim = static_cast<Index>(plan.dim);
    plan.site_moment1.resize(plan.dim);
    for (std::size_t i = 0; i < plan.dim; ++i)
        plan.site_moment1[i] = std::hypot(static_cast<double>(plan.sites[i].x),
                                          static_cast<double>(plan.sites[i].y));

    VectorXd vdiag(dim);
    for (Index i = 0; i < dim; ++i)
        vdiag[i] = potential_at(h, plan.sites[static_cast<std::size_t>(i)]);

    Eigen::SelfAdjointEigenSolver<MatrixXd> es;
    if (h.nu == 1) {
        const VectorXd sub = VectorXd::Constant(dim - 1, h.hopping);
        es.computeFromTridiagonal(vdiag, sub, Eigen::ComputeEigenvectors);
    } else {
        MatrixXd H = MatrixXd::Zero(dim, dim);
        H.diagonal() = vdiag;
        const std::int64_t N = h.box_radius;
        const Index side = static_cast<Index>(2 * N + 1);
        for (Index i = 0; i < dim; ++i) {
            const std::int64_t x = plan.sites[static_cast<std::size_t>(i)].x;
            if (x < N) {
                H(i, i + 1) = h.hopping;
                H(i + 1, i) = h.hopping;
            }
            if (i + side < dim) {
                H(i, i + side) = h.hopping;
                H(i + side, i) = h.hopping;
            }
        }
        es.compute(H);
    }
    require(es.info() == Eigen::Success, Err::BadParams, "diagonalization failed");

    plan.eigenvalues.resize(plan.dim);
    for (std::size_t j = 0; j < plan.dim; ++j)
        plan.eigenvalues[j] = es.eigenvalues()[static_cast<Index>(j)];
    plan.modes.resize(plan.dim * plan.dim);
    Eigen::Map<MatrixXd>(plan.modes.data(), dim, dim) = es.eigenvectors();

    // reconstruction probes: H v vs Q Lambda Q^T v within 1e-9 ||H||
    const double scale =
        std::max({1.0, std::abs(plan.eigenvalues.front()), std::abs(plan.eigenvalues.back())});
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> gauss;
    for (int probe = 0; probe < 8; ++probe) {
        VectorXd v(dim);
        for (Index i = 0; i < dim; ++i) v[i] = gauss(rng);
        v.normalize();
        const VectorXd direct = apply_h(h, plan.sites, v);
        const VectorXd via =
            es.eigenvectors() * es.eigenvalues().cwiseProduct(es.eigenvectors().transpose() * v);
        require((direct - via).norm() <= 1e-9 * scale, Err::BadParams,
                "eigendecomposition failed the reconstruction probe");
    }

    const Eigen::Map<const VectorXd> psi(plan.psi_sites.data(), dim);
    const VectorXd pm = es.eigenvectors().transpose() * psi;
    plan.psi_modes.resize(plan.dim);
    for (std::size_t j = 0; j < plan.dim; ++j) plan.psi_modes[j] = pm[static_cast<Index>(j)];
    return plan;
}

Observable moment_observable(double m) {
    require(m >= 0.0 && std::isfinite(m), Err::BadParams, "moment must be >= 0");
    Observable obs;
    obs.kind = Observable::Kind::Moment;
    obs.moment = m;
    return obs;
}

Observable projection_observable(int radius) {
    require(radius >= 0, Err::BadParams, "projection radius must be >= 0");
    Observable obs;
    obs.kind = Observable::Kind::Projection;
    obs.radius = radius;
    return obs;
}

Observable rank_one_observable(std::vector<double> phi_sites) {
    require(!phi_sites.empty(), Err::BadParams, "phi must be nonempty");
    Observable obs;
    obs.kind = Observable::Kind::RankOne;
    obs.phi = std::move(phi_sites);
    return obs;
}

Observable energy_function_observable(std::function<double(double)> f) {
    require(static_cast<bool>(f), Err::BadParams, "energy function must be set");
    Observable obs;
    obs.kind = Observable::Kind::EnergyFunction;
    obs.energy_fn = std::move(f);
    return obs;
}

std::vector<double> evolve_and_average(const EvolutionPlan& plan, const Observable& obs,
                                       const std::vector<double>& T_grid) {
    require(!T_grid.empty(), Err::InvalidGrid, "empty T grid");
    for (double T : T_grid) {
        require(std::isfinite(T) && T > 0.0, Err::BadParams, "T must be positive");
        check_leakage(plan, T);
    }
    const Index dim = static_cast<Index>(plan.dim);
    std::vector<double> out(T_grid.size());

    switch (obs.kind) {
        case Observable::Kind::EnergyFunction: {
            require(static_cast<bool>(obs.energy_fn), Err::BadParams, "energy function not set");
            // diagonal in the modes: the average is t-independent
            double acc = 0.0;
            for (std::size_t j = 0; j < plan.dim; ++j)
                acc += obs.energy_fn(plan.eigenvalues[j]) * plan.psi_modes[j] * plan.psi_modes[j];
            std::fill(out.begin(), out.end(), acc);
            return out;
        }
        case Observable::Kind::RankOne: {
            const std::vector<double> g = mode_overlap(plan, obs.phi);
#pragma omp parallel for schedule(dynamic)
            for (std::size_t i = 0; i < T_grid.size(); ++i)
                out[i] = avg_sq_inner(g, plan.eigenvalues, T_grid[i]);
            return out;
        }
        case Observable::Kind::Moment:
        case Observable::Kind::Projection: {
            VectorXd d(dim);
            for (Index i = 0; i < dim; ++i) {
                const double r = plan.site_moment1[static_cast<std::size_t>(i)];
                d[i] = obs.kind == Observable::Kind::Moment
                           ? std::pow(r, obs.moment)
                           : (r <= obs.radius + 1e-9 ? 1.0 : 0.0);
            }
            const auto Q = qmat(plan);
            MatrixXd W = Q.transpose() * d.asDiagonal() * Q;
            for (Index k = 0; k < dim; ++k)
                for (Index j = 0; j < dim; ++j)
                    W(j, k) *= plan.psi_modes[static_cast<std::size_t>(j)] *
                               plan.psi_modes[static_cast<std::size_t>(k)];
#pragma omp parallel for schedule(dynamic)
            for (std::size_t i = 0; i < T_grid.size(); ++i)
                out[i] = kernel_sum(W, plan.eigenvalues, T_grid[i]);
            return out;
        }
    }
    fail(Err::BadParams, "unknown observable kind");
}

double evolve_and_average(const EvolutionPlan& plan, const Observable& obs, double T) {
    return evolve_and_average(plan, obs, std::vector<double>{T})[0];
}

std::vector<double> site_populations(const EvolutionPlan& plan, double T) {
    require(std::isfinite(T) && T >= 0.0, Err::BadParams, "T must be >= 0");
    const Index dim = static_cast<Index>(plan.dim);
    VectorXd cr(dim), ci(dim);
    for (Index j = 0; j < dim; ++j) {
        const double ph = plan.eigenvalues[static_cast<std::size_t>(j)] * T;
        cr[j] = plan.psi_modes[static_cast<std::size_t>(j)] * std::cos(ph);
        ci[j] = -plan.psi_modes[static_cast<std::size_t>(j)] * std::sin(ph);
    }
    const auto Q = qmat(plan);
    const VectorXd re = Q * cr;
    const VectorXd im = Q * ci;
    std::vector<double> pop(plan.dim);
    double total = 0.0;
    for (std::size_t i = 0; i < plan.dim; ++i) {
        pop[i] = re[static_cast<Index>(i)] * re[static_cast<Index>(i)] +
                 im[static_cast<Index>(i)] * im[static_cast<Index>(i)];
        total += pop[i];
    }
    require(std::abs(total - 1.0) <= 1e-10, Err::BadParams, "unitarity lost in evolution");
    return pop;
}

double boundary_mass(const EvolutionPlan& plan, double T) {
    const std::vector<double> pop = site_populations(plan, T);
    const std::int64_t N = plan.h.box_radius;
    const std::int64_t buffer = std::clamp<std::int64_t>(N / 16, 1, 64);
    const std::int64_t edge = N - buffer;
    double acc = 0.0;
    for (std::size_t i = 0; i < plan.dim; ++i) {
        const LatticeSite s = plan.sites[i];
        const std::int64_t r = plan.h.nu == 2 ? std::max(std::abs(s.x), std::abs(s.y))
                                              : (plan.h.half_line ? s.x : std::abs(s.x));
        if (r > edge) acc += pop[i];
    }
    return acc;
}

SpectralMeasure state_spectral_measure(const EvolutionPlan& plan,
                                       const std::vector<double>& v_sites) {
    require(v_sites.size() == plan.dim, Err::BadParams, "state must live on the box");
    const Eigen::Map<const VectorXd> v(v_sites.data(), static_cast<Index>(plan.dim));
    const VectorXd vm = qmat(plan).transpose() * v;

    const double scale = std::max(
        {1.0, std::abs(plan.eigenvalues.front()), std::abs(plan.eigenvalues.back())});
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < plan.dim; ++j) {
        const double w = vm[static_cast<Index>(j)] * vm[static_cast<Index>(j)];
        if (w < 1e-300) continue;
        if (!atoms.empty() && plan.eigenvalues[j] - atoms.back().pos <= 1e-12 * scale)
            atoms.back().mass += w;
        else
            atoms.push_back({plan.eigenvalues[j], w});
    }
    require(!atoms.empty(), Err::BadParams, "state has no spectral weight");

    double max_gap = 0.0;
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
        max_gap = std::max(max_gap, atoms[i + 1].pos - atoms[i].pos);
    SpectralMeasure mu = finite_atoms(std::move(atoms));
    mu.resolution_floor = 2.0 * max_gap;
    return mu;
}

SpectralMeasure state_spectral_measure(const EvolutionPlan& plan) {
    return state_spectral_measure(plan, plan.psi_sites);
}

UphCertificate uph_certificate(const SpectralMeasure& mu, const GaugeFunction& rho,
                               const std::vector<double>& lengths, int centers_per_length) {
    require(mu.finalized(), Err::BadParams, "measure not finalized");
    require(mu.total_mass() > 0.0, Err::BadParams, "empty measure");
    require(centers_per_length >= 9, Err::BadParams, "need at least 9 centers per length");
    require(static_cast<bool>(rho.log_form), Err::BadParams, "gauge has no log form");
    const std::vector<double> ls = clean_lengths(lengths, mu, rho);

    UphCertificate out;
    out.lengths = ls;
    out.sup_ratio.resize(ls.size());
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const double l = ls[i];
        const double rho_l = std::exp(rho.log_form(-std::log(l)));
        out.sup_ratio[i] = sup_interval_mass(mu, l, centers_per_length) / rho_l;
        out.constant = std::max(out.constant, out.sup_ratio[i]);
    }

    std::vector<double> xs(ls.size()), ys(ls.size());
    for (std::size_t i = 0; i < ls.size(); ++i) {
        xs[i] = 1.0 / ls[i];  // increasing as scales refine
        ys[i] = std::log(std::max(out.sup_ratio[i], 1e-300));
    }
    // 0.5 log units per decade separates bounded upward convergence of the
    // sup (AC measures approach sup density from below) from an escaping
    // ratio: an interior atom under power(1) grows at ln 10 = 2.3 per decade.
    const TrendReport tr = classify_trend(xs, ys, TrendOptions{0.5, 2.0, 0.5});
    out.slope = tr.slope;
    out.is_uph = tr.cls == Trend::Stable || tr.cls == Trend::Decreasing;
    return out;
}

CorrelationReport check_correlation_bound(const EvolutionPlan& plan,
                                          const std::vector<std::vector<double>>& phis,
                                          const UphHypothesis& hyp,
                                          const std::vector<double>& T_grid) {
    require(!phis.empty(), Err::BadParams, "need at least one phi");
    require(!T_grid.empty(), Err::InvalidGrid, "empty T grid");
    CorrelationReport rep;
    rep.gate = run_gate(plan, hyp, Err::NotUpH);

    std::vector<std::vector<double>> gs;
    gs.reserve(phis.size());
    for (const auto& phi : phis) {
        double nrm2 = 0.0;
        for (double x : phi) nrm2 += x * x;
        require(nrm2 <= 1.0 + 1e-9, Err::BadParams, "phi must have norm at most 1");
        gs.push_back(mode_overlap(plan, phi));
    }

    rep.rows.resize(phis.size() * T_grid.size());
#pragma omp parallel for schedule(dynamic) collapse(2)
    for (std::size_t pi = 0; pi < phis.size(); ++pi)
        for (std::size_t ti = 0; ti < T_grid.size(); ++ti) {
            CorrelationRow& row = rep.rows[pi * T_grid.size() + ti];
            row.phi_index = pi;
            row.T = T_grid[ti];
            row.average = std::max(0.0, avg_sq_inner(gs[pi], plan.eigenvalues, T_grid[ti]));
        }

    for (CorrelationRow& row : rep.rows)
        rep.fitted_C = std::max(rep.fitted_C, row.average / rho_of_inv_T(hyp.rho, row.T));
    for (CorrelationRow& row : rep.rows) {
        row.envelope = rep.fitted_C * rho_of_inv_T(hyp.rho, row.T);
        row.ok = row.average <= row.envelope * (1.0 + 1e-9);
    }
    rep.headroom = rep.fitted_C / rep.gate.cert.constant;
    rep.pass = rep.headroom <= kEnvelopeHeadroom &&
               std::all_of(rep.rows.begin(), rep.rows.end(),
                           [](const CorrelationRow& r) { return r.ok; });
    return rep;
}

CompactReport check_compact_average(const EvolutionPlan& plan,
                                    const std::vector<SingularTriple>& triples, int p,
                                    const UphHypothesis& hyp,
                                    const std::vector<double>& T_grid) {
    require(!triples.empty(), Err::BadParams, "need at least one singular triple");
    require(p >= 1, Err::BadParams, "p must be a positive integer");
    require(!T_grid.empty(), Err::InvalidGrid, "empty T grid");

    CompactReport rep;
    rep.gate = run_gate(plan, hyp, Err::NotUpH);

    double powsum = 0.0;
    std::vector<std::vector<double>> gl, gr;
    for (const SingularTriple& t : triples) {
        require(std::isfinite(t.value) && t.value > 0.0, Err::BadParams,
                "singular values must be positive");
        double nl = 0.0, nr = 0.0;
        for (double x : t.left) nl += x * x;
        for (double x : t.right) nr += x * x;
        require(std::abs(nl - 1.0) <= 1e-8 && std::abs(nr - 1.0) <= 1e-8, Err::BadParams,
                "singular vectors must be normalized");
        powsum += std::pow(t.value, p);
        gl.push_back(mode_overlap(plan, t.left));
        gr.push_back(mode_overlap(plan, t.right));
    }
    rep.schatten = std::pow(powsum, 1.0 / p);

    rep.rows.resize(T_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t ti = 0; ti < T_grid.size(); ++ti) {
        const double T = T_grid[ti];
        double cs = 0.0;
        for (std::size_t n = 0; n < triples.size(); ++n) {
            const double a = std::max(0.0, avg_sq_inner(gl[n], plan.eigenvalues, T));
            const double b = std::max(0.0, avg_sq_inner(gr[n], plan.eigenvalues, T));
            cs += triples[n].value * std::sqrt(a * b);
        }
        rep.rows[ti].T = T;
        rep.rows[ti].average_bound = cs;
    }
    for (CompactRow& row : rep.rows) {
        const double rho_t = rho_of_inv_T(hyp.rho, row.T);
        row.envelope = std::pow(kEnvelopeHeadroom * rep.gate.cert.constant, 1.0 / p) *
                       rep.schatten * std::pow(rho_t, 1.0 / p);
        row.ok = row.average_bound <= row.envelope * (1.0 + 1e-9);
    }
    rep.all_ok = std::all_of(rep.rows.begin(), rep.rows.end(),
                             [](const CompactRow& r) { return r.ok; });
    return rep;
}

MomentReport check_moment_lower_bound(const EvolutionPlan& plan, const UphHypothesis& hyp,
                                      double m, const std::vector<double>& T_grid) {
    require(m > 0.0 && std::isfinite(m), Err::BadParams, "moment must be positive");
    require(T_grid.size() >= 4, Err::InvalidGrid, "need at least 4 T values");
    for (std::size_t i = 1; i < T_grid.size(); ++i)
        require(T_grid[i] > T_grid[i - 1], Err::InvalidGrid, "T grid must be increasing");

    MomentReport rep;
    rep.gate = run_gate(plan, hyp, Err::HypothesisFailed);

    const std::vector<double> moments = evolve_and_average(plan, moment_observable(m), T_grid);
    const double nu = static_cast<double>(plan.h.nu);
    const double c_nu = plan.h.half_line ? 1.0 : (plan.h.nu == 1 ? 2.0 : 3.14159265358979324);

    std::vector<double> env_base(T_grid.size());
    rep.fitted_C = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        const double rho_t = rho_of_inv_T(hyp.rho, T_grid[i]);
        env_base[i] = std::pow(rho_t, -m / nu);
        require(moments[i] > 0.0, Err::BadParams, "zero moment in the envelope fit");
        rep.fitted_C = std::min(rep.fitted_C, moments[i] / env_base[i]);
    }

    rep.rows.resize(T_grid.size());
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        MomentRow& row = rep.rows[i];
        row.T = T_grid[i];
        row.moment = moments[i];
        row.envelope = rep.fitted_C * env_base[i];
        const double rho_t = rho_of_inv_T(hyp.rho, T_grid[i]);
        const double mass = rep.gate.component_mass;
        row.n_t = std::pow(mass * mass / (64.0 * rep.gate.cert.constant * c_nu * rho_t), 1.0 / nu);
        row.ok = row.moment >= row.envelope * (1.0 - 1e-9);
    }

    std::vector<double> lnT(T_grid.size()), lnM(T_grid.size()), lnE(T_grid.size());
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        lnT[i] = std::log(T_grid[i]);
        lnM[i] = std::log(moments[i]);
        lnE[i] = std::log(env_base[i]);
    }
    rep.fitted_exponent = fit_slope(lnT, lnM).slope;
    rep.envelope_exponent = fit_slope(lnT, lnE).slope;
    rep.pass = rep.fitted_exponent >= rep.envelope_exponent - 0.1 &&
               std::all_of(rep.rows.begin(), rep.rows.end(),
                           [](const MomentRow& r) { return r.ok; });
    return rep;
}

Complementarity complementarity_check(const EvolutionPlan& plan, int radius, double T) {
    require(radius >= 0, Err::BadParams, "radius must be >= 0");
    require(std::isfinite(T) && T > 0.0, Err::BadParams, "T must be positive");
    check_leakage(plan, T);
    const Index dim = static_cast<Index>(plan.dim);
    VectorXd d(dim);
    for (Index i = 0; i < dim; ++i)
        d[i] = plan.site_moment1[static_cast<std::size_t>(i)] <= radius + 1e-9 ? 1.0 : 0.0;
    const auto Q = qmat(plan);
    const MatrixXd A = Q.transpose() * d.asDiagonal() * Q;
    // the complement uses I - A so that P + (1 - P) is the exact identity
    MatrixXd Win(dim, dim), Wout(dim, dim);
    for (Index k = 0; k < dim; ++k)
        for (Index j = 0; j < dim; ++j) {
            const double w = plan.psi_modes[static_cast<std::size_t>(j)] *
                             plan.psi_modes[static_cast<std::size_t>(k)];
            Win(j, k) = w * A(j, k);
            Wout(j, k) = w * ((j == k ? 1.0 : 0.0) - A(j, k));
        }
    Complementarity out;
    out.inside = kernel_sum(Win, plan.eigenvalues, T);
    out.outside = kernel_sum(Wout, plan.eigenvalues, T);
    return out;
}

VectorSpaceCheck vector_space_bound_check(const EvolutionPlan& plan,
                                          const std::vector<double>& psi1_sites,
                                          const std::vector<double>& psi2_sites, double a,
                                          double b, const GaugeFunction& rho,
                                          const std::vector<double>& lengths) {
    require(psi1_sites.size() == plan.dim && psi2_sites.size() == plan.dim, Err::BadParams,
            "states must live on the box");
    require(std::isfinite(a) && std::isfinite(b) && (a != 0.0 || b != 0.0), Err::BadParams,
            "coefficients must not both vanish");
    double n1 = 0.0, n2 = 0.0;
    for (double x : psi1_sites) n1 += x * x;
    for (double x : psi2_sites) n2 += x * x;
    require(std::abs(n1 - 1.0) <= 1e-9 && std::abs(n2 - 1.0) <= 1e-9, Err::BadParams,
            "psi_1, psi_2 must be normalized");

    std::vector<double> phi(plan.dim);
    for (std::size_t i = 0; i < plan.dim; ++i) phi[i] = a * psi1_sites[i] + b * psi2_sites[i];

    const SpectralMeasure mu1 = state_spectral_measure(plan, psi1_sites);
    const SpectralMeasure mu2 = state_spectral_measure(plan, psi2_sites);
    const SpectralMeasure muf = state_spectral_measure(plan, phi);

    VectorSpaceCheck out;
    out.lengths = clean_lengths(lengths, mu1, rho);
    out.sup_ratio.resize(out.lengths.size());
    out.ok = true;
    for (std::size_t i = 0; i < out.lengths.size(); ++i) {
        const double l = out.lengths[i];
        const double rho_l = std::exp(rho.log_form(-std::log(l)));
        out.c1 = std::max(out.c1, sup_interval_mass(mu1, l, 257) / rho_l);
        out.c2 = std::max(out.c2, sup_interval_mass(mu2, l, 257) / rho_l);
        out.sup_ratio[i] = sup_interval_mass(muf, l, 257) / rho_l;
    }
    const double aa = std::abs(a), ab = std::abs(b);
    out.bound_constant = out.c1 * (aa * aa + aa * ab) + out.c2 * (ab * ab + aa * ab);
    for (double r : out.sup_ratio)
        if (r > out.bound_constant * (1.0 + 1e-9)) out.ok = false;
    return out;
}

ContinuitySplit continuity_split(const SpectralMeasure& mu, const GaugeFunction& rho, double eps,
                                 const std::vector<double>& lengths) {
    require(mu.finalized(), Err::BadParams, "measure not finalized");
    require(eps > 0.0, Err::BadParams, "eps must be positive");
    require(!mu.density.empty(), Err::UnsupportedDensity,
            "split needs an explicit AC component");
    require(mu.atom_mass() < eps, Err::BadParams, "atomic mass exceeds the split budget");

    ContinuitySplit out;
    out.singular_part.atoms = mu.atoms;
    out.singular_part.resolution_floor = mu.resolution_floor;
    out.singular_part.finalize();
    out.uph_part.density = mu.density;
    out.uph_part.resolution_floor = mu.resolution_floor;
    out.uph_part.finalize();
    out.cert = uph_certificate(out.uph_part, rho, lengths);
    require(out.cert.is_uph, Err::NotUpH, "density component not certified UrhoH");
    return out;
}

}  // namespace specdim
