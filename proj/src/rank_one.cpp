#include "specdim/rank_one.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "specdim/borel.hpp"
#include "specdim/error.hpp"

namespace specdim {
namespace {

// Numerical-rank concessions: orthogonalized vectors carry an entrywise
// roundoff floor ~1e-14..1e-12, so the SULE inequality is certified up to an
// additive kSuleFloor, and c_delta is fitted over every entry whose magnitude
// exceeds kSuleFitFloor; smaller entries sit under the additive allowance.
constexpr double kSuleFloor = 1e-11;
constexpr double kSuleFitFloor = 1e-12;
// Atoms below this weight are below double resolution of |phi(0)|^2 and are
// dropped from the spectral measure (total dropped mass < M * floor).
constexpr double kWeightFloor = 1e-26;

double check_probability(const SpectralMeasure& mu) {
    require(mu.finalized(), Err::BadParams, "base measure must be finalized");
    const double total = mu.total_mass();
    require(std::abs(total - 1.0) <= 1e-9, Err::NotProbability,
            "base measure must be a probability measure");
    return total;
}

std::complex<double> transform_parts(const RankOnePerturbation& p, std::complex<double> z,
                                     double margin, std::complex<double>* den_out) {
    check_probability(p.base);
    const std::complex<double> F = borel_transform(p.base, z, margin);
    const std::complex<double> den = 1.0 + p.coupling * F;
    if (z.imag() == 0.0)
        require(std::abs(den) >= 1e-12, Err::Resonance, "1 + lambda F vanishes at this energy");
    *den_out = den;
    return F;
}

double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
    const double h = (hi - lo) / panels;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// int_u^v w(y)/(x - y)^2 dy for w linear on [u, v], x outside.
double linear_segment_g(double u, double v, double wu, double slope, double x) {
    const double c1 = wu + slope * (x - u);
    auto H = [&](double t) { return -c1 / t - slope * std::log(std::abs(t)); };
    return H(x - u) - H(x - v);
}

double density_g(const DensityPiece& p, double x) {
    switch (p.kind) {
        case DensityPiece::Kind::Const:
            return p.value * (1.0 / (x - p.b) - 1.0 / (x - p.a));
        case DensityPiece::Kind::Semicircle: {
            // y = 2 sin(theta) absorbs the edge square roots; the integrand
            // is smooth for x outside [-2, 2] (accuracy degrades within
            // ~1e-5 of an edge, where G is already huge).
            auto f = [&](double th) {
                const double c = std::cos(th);
                const double d = x - 2.0 * std::sin(th);
                return c * c / (d * d);
            };
            const double half_pi = std::numbers::pi / 2.0;
            return 2.0 * p.value / std::numbers::pi * simpson(f, -half_pi, half_pi, 2048);
        }
        case DensityPiece::Kind::Table: {
            double total = 0.0;
            for (std::size_t i = 1; i < p.xs.size(); ++i) {
                const double y0 = p.xs[i - 1], y1 = p.xs[i];
                const double u = std::max(y0, p.a), v = std::min(y1, p.b);
                if (v <= u) continue;
                const double m = (p.ws[i] - p.ws[i - 1]) / (y1 - y0);
                const double wu = p.ws[i - 1] + m * (u - y0);
                total += linear_segment_g(u, v, wu, m, x);
            }
            return total;
        }
    }
    return 0.0;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    require(det > 0.0, Err::BadParams, "degenerate abscissas in least squares");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

double refit_c_delta(const SULEModel& model) {
    // Every entry large enough to matter must be covered by the constant;
    // entries below kSuleFitFloor are roundoff and the additive kSuleFloor
    // absorbs them.  Log domain keeps far-tail ratios from overflowing.
    double log_c = 0.0;
    for (std::size_t n = 0; n < model.vectors.size(); ++n) {
        const double mn = static_cast<double>(model.centers[n]);
        for (std::size_t m = 0; m < model.vectors[n].size(); ++m) {
            const double phi = std::abs(model.vectors[n][m]);
            if (phi < kSuleFitFloor) continue;
            const double pred_log =
                model.delta * std::abs(mn) - model.alpha * std::abs(static_cast<double>(m) - mn);
            log_c = std::max(log_c, std::log(phi) - pred_log);
        }
    }
    return std::exp(log_c);
}

std::int64_t argmax_abs(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    return static_cast<std::int64_t>(best);
}

}  // namespace

std::complex<double> perturbed_transform(const RankOnePerturbation& p, std::complex<double> z,
                                         double margin) {
    std::complex<double> den;
    const std::complex<double> F = transform_parts(p, z, margin, &den);
    return F / den;
}

double perturbed_im(const RankOnePerturbation& p, std::complex<double> z, double margin) {
    std::complex<double> den;
    const std::complex<double> F = transform_parts(p, z, margin, &den);
    return F.imag() / std::norm(den);
}

PerturbedSpectrum perturbed_eigenvalues(const RankOnePerturbation& p) {
    const double total = check_probability(p.base);
    require(p.coupling != 0.0, Err::BadParams, "coupling must be nonzero");
    require(p.base.density.empty(), Err::NotAtomic,
            "perturbed_eigenvalues needs a purely atomic base");
    const std::size_t N = p.base.atoms.size();
    require(N >= 1, Err::BadParams, "base measure has no atoms");

    std::vector<double> E(N), a(N);
    for (std::size_t i = 0; i < N; ++i) {
        E[i] = p.base.atoms[i].pos;
        a[i] = p.base.atoms[i].mass;
        require(a[i] > 0.0, Err::BadParams, "atoms need positive mass");
        if (i > 0) require(E[i] > E[i - 1], Err::BadParams, "atom positions must be distinct");
    }

    const double lam = p.coupling;
    const double target = -1.0 / lam;
    auto F = [&](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) s += a[i] / (E[i] - x);
        return s;
    };
    // F is strictly increasing from -inf to +inf on each gap, so a bracket
    // with F(xl) < target < F(xr) pins exactly one root; bisect to the last
    // representable midpoint.
    auto bisect = [&](double xl, double xr) {
        while (true) {
            const double mid = 0.5 * (xl + xr);
            if (mid <= xl || mid >= xr) break;
            (F(mid) < target ? xl : xr) = mid;
        }
        return 0.5 * (xl + xr);
    };
    auto shrink_from_left = [&](double pole, double start) {
        double t = start;
        for (int i = 0; i < 300 && !(F(pole + t) < target); ++i) t *= 0.5;
        require(F(pole + t) < target, Err::BadParams, "gap too small to bracket a root");
        return pole + t;
    };
    auto shrink_from_right = [&](double pole, double start) {
        double t = start;
        for (int i = 0; i < 300 && !(F(pole - t) > target); ++i) t *= 0.5;
        require(F(pole - t) > target, Err::BadParams, "gap too small to bracket a root");
        return pole - t;
    };

    std::vector<double> roots;
    roots.reserve(N);
    if (lam < 0.0) {
        // one eigenvalue below E_1: F > 0 there, decreasing to 0 at -inf
        const double reach = std::abs(lam) * total + 1.0;
        roots.push_back(bisect(E[0] - reach, shrink_from_right(E[0], reach * 0.5)));
    }
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const double gap = E[k + 1] - E[k];
        const double xl = shrink_from_left(E[k], 0.25 * gap);
        const double xr = shrink_from_right(E[k + 1], 0.25 * gap);
        roots.push_back(bisect(xl, xr));
    }
    if (lam > 0.0) {
        // one eigenvalue above E_N; at the root 1/lam <= total/(x - E_N)
        const double reach = lam * total + 1.0;
        roots.push_back(bisect(shrink_from_left(E[N - 1], reach * 0.5), E[N - 1] + reach));
    }

    PerturbedSpectrum out;
    out.eigenvalues = roots;
    out.weights.reserve(N);
    for (double x : roots) {
        double g = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double d = x - E[i];
            g += a[i] / (d * d);
        }
        out.weights.push_back(1.0 / (lam * lam * g));
    }
    return out;
}

GValue g_function(const SpectralMeasure& mu, double x) {
    require(mu.finalized(), Err::BadParams, "measure must be finalized");
    require(std::isfinite(x), Err::BadParams, "x must be finite");
    double total = 0.0;
    for (const Atom& at : mu.atoms) {
        const double d = x - at.pos;
        if (std::abs(d) < 1e-150) return {false, 0.0};
        total += at.mass / (d * d);
    }
    for (const DensityPiece& p : mu.density) {
        if (x >= p.a && x <= p.b) return {false, 0.0};
        total += density_g(p, x);
    }
    if (!std::isfinite(total)) return {false, 0.0};
    return {true, total};
}

CoverBoundResult cover_dimension_bound(const std::vector<double>& positions,
                                       const std::vector<double>& weights,
                                       const GaugeFunction& f, const std::vector<double>& b,
                                       double eps, const CoverBoundOptions& opt) {
    const std::size_t N = positions.size();
    require(weights.size() == N && b.size() == N, Err::BadParams,
            "positions, weights, b must align");
    require(N >= 16, Err::BadParams, "need at least 16 atoms");
    require(eps > 0.0 && eps < 0.5, Err::BadParams, "eps must lie in (0, 1/2)");
    require(static_cast<bool>(f.log_form), Err::BadParams, "gauge has no log form");

    for (std::size_t n = 0; n < N; ++n) {
        require(std::isfinite(positions[n]), Err::BadParams, "positions must be finite");
        require(std::isfinite(weights[n]) && weights[n] >= 0.0, Err::BadParams,
                "weights must be nonnegative");
        require(b[n] > 0.0 && std::isfinite(b[n]), Err::BadParams, "b must be positive");
        if (weights[n] == 0.0) continue;
        const double s = -std::log(weights[n]);
        require(s > f.s_min - 1e-12, Err::HypothesisFailed,
                "a weight is too large for the gauge's domain");
        require(f.log_form(s) <= std::log(b[n]) + 1e-12, Err::HypothesisFailed,
                "f(a_n) <= b_n fails");
    }

    if (!opt.extended_family) {
        for (std::size_t n = 1; n < N; ++n)
            require(b[n] <= b[n - 1] * (1.0 + 1e-12), Err::BadParams,
                    "summability test needs non-increasing b");
        // Cauchy condensation on the available range: sum b_n converges iff
        // c_k = 2^k b_{2^k} decays geometrically.  Conservative: very slowly
        // converging b (1/(n ln^2 n)) is refused.
        std::vector<double> cond;
        for (std::size_t step = 1; step <= N; step *= 2)
            cond.push_back(static_cast<double>(step) * b[step - 1]);
        require(cond.size() >= 5, Err::BadParams, "too few atoms for the condensation test");
        for (std::size_t k = cond.size() / 2; k + 1 < cond.size(); ++k)
            require(cond[k + 1] <= 0.9 * cond[k] + 1e-300, Err::NotSummable,
                    "b fails the condensation ratio test");
    }

    int J = opt.generations > 0
                ? opt.generations
                : static_cast<int>(std::floor(std::log2(static_cast<double>(N)))) - 1;
    require(J >= 4, Err::InvalidGrid, "need at least five generations");
    require((std::size_t{1} << J) <= N, Err::InvalidGrid, "generations exceed the atom count");

    // generation j covers the tail n >= 2^j (1-based) by the intervals A_n
    std::vector<Generation> gens;
    gens.reserve(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) {
        Generation g;
        for (std::size_t n = std::size_t{1} << j; n <= N; ++n) {
            const double a = weights[n - 1];
            if (a == 0.0) continue;
            const double s = -std::log(a);
            const double half = 0.5 * std::pow(a, 0.5 - eps);
            g.push_back({positions[n - 1] - half, (0.5 - eps) * s, 0.0});
        }
        require(!g.empty(), Err::InvalidGrid, "a tail generation has no atoms of positive weight");
        gens.push_back(std::move(g));
    }

    CoverBoundResult out;
    out.eps = eps;
    out.tree = explicit_tree(std::move(gens), true);
    out.tree.name = "limsup_tail_cover";

    const double alpha_eps = 2.0 / (1.0 - 2.0 * eps);
    // A member strictly above f(t^{2/(1-2 eps)}): its cover sums are tails of
    // a convergent series, so the verdict channel can resolve Zero.  In the
    // extended family that is a power > 1 of the member; in the stretched
    // family, double the stretch.
    out.test_gauge = opt.extended_family ? pow_gauge(stretch_gauge(f, alpha_eps), 2.0)
                                         : stretch_gauge(f, 2.0 * alpha_eps);

    int k_min = -1;
    for (int j = 0; j <= J; ++j) {
        double min_len = std::numeric_limits<double>::infinity();
        for (const IntervalClass& c : out.tree.stored[static_cast<std::size_t>(j)])
            min_len = std::min(min_len, c.log_len);
        if (min_len > out.test_gauge.s_min + 1e-9) {
            k_min = j;
            break;
        }
    }
    require(k_min >= 0 && k_min + 4 <= J, Err::InvalidGrid,
            "fewer than five generations clear the gauge domain");
    out.k_min = k_min;
    out.trace = measure_verdict(out.tree, out.test_gauge, k_min, J);
    out.bound_gauge = stretch_gauge(f, 2.0);

    Interval idx;
    idx.lo = 0.0;
    idx.lo_open = true;
    idx.hi_open = true;
    idx.hi_unbounded = true;
    out.bound = family_dimension_from_alpha(stretched_family(f, idx), 2.0);
    return out;
}

GTailAudit g_tail_audit(const std::vector<double>& positions, const std::vector<double>& weights,
                        double eps, std::size_t n0, double x) {
    const std::size_t N = positions.size();
    require(weights.size() == N && N >= 1, Err::BadParams, "positions and weights must align");
    require(eps > 0.0 && eps < 0.5, Err::BadParams, "eps must lie in (0, 1/2)");
    require(n0 >= 1 && n0 <= N, Err::BadParams, "n0 out of range (1-based)");

    GTailAudit out;
    for (std::size_t n = 1; n <= N; ++n) {
        const double a = weights[n - 1];
        require(a >= 0.0, Err::BadParams, "weights must be nonnegative");
        const double d = x - positions[n - 1];
        require(d != 0.0, Err::BadParams, "x sits on an atom");
        const double term = a / (d * d);
        if (n < n0) {
            out.head += term;
        } else if (a > 0.0) {
            const double half = 0.5 * std::pow(a, 0.5 - eps);
            require(std::abs(d) >= half * (1.0 - 1e-12), Err::BadParams,
                    "x lies inside a tail interval A_n");
            out.tail_bound += 4.0 * std::pow(a, 2.0 * eps);
        }
        out.g_value += term;
    }
    const double rhs = out.head + out.tail_bound;
    out.holds = out.g_value <= rhs + 1e-12 * std::max(1.0, rhs);
    return out;
}

SULEModel synthetic_sule(const SyntheticSuleOptions& opt) {
    require(opt.sites >= 8 && opt.sites <= 4096, Err::BadParams, "sites must lie in [8, 4096]");
    require(opt.alpha > 0.0, Err::BadParams, "alpha must be positive");
    require(opt.delta > 0.0 && opt.delta < 1.0, Err::BadParams, "delta must lie in (0, 1)");
    const int M = opt.sites;

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> sub(0.1, 0.9);
    std::vector<double> energies(M);
    for (int n = 0; n < M; ++n) energies[n] = (n + sub(rng)) / M;

    // Sign-modulated exponential bumps.  With all-positive entries the family
    // is a Markov kernel: col_n - e^{-alpha} col_{n-1} vanishes identically
    // left of n, so orthogonalization strips every left tail and delta_0 ends
    // up on two modes.  Random signs keep |raw| = e^{-alpha|m-n|} (the SULE
    // bound constrains magnitudes only) while killing that telescoping.
    std::bernoulli_distribution coin(0.5);
    Eigen::MatrixXd raw(M, M);
    for (int n = 0; n < M; ++n)
        for (int m = 0; m < M; ++m)
            raw(m, n) = (coin(rng) ? 1.0 : -1.0) * std::exp(-opt.alpha * std::abs(m - n));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    Eigen::MatrixXd Q = qr.householderQ();
    for (int n = 0; n < M; ++n)
        if (Q(n, n) < 0.0) Q.col(n) *= -1.0;

    SULEModel model;
    model.nu = 1;
    model.alpha = opt.alpha;
    model.delta = opt.delta;
    model.energies = std::move(energies);
    model.centers.resize(M);
    model.vectors.assign(M, std::vector<double>(M));
    for (int n = 0; n < M; ++n) {
        for (int m = 0; m < M; ++m) model.vectors[n][m] = Q(m, n);
        model.centers[n] = argmax_abs(model.vectors[n]);
    }
    model.c_delta = refit_c_delta(model);
    return model;
}

SULEModel anderson_sule(int sites, double disorder, std::uint64_t seed) {
    require(sites >= 8 && sites <= 4096, Err::BadParams, "sites must lie in [8, 4096]");
    require(disorder > 0.0, Err::BadParams, "disorder must be positive");
    const int M = sites;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    Eigen::VectorXd diag(M);
    for (int i = 0; i < M; ++i) diag[i] = disorder * u(rng);
    Eigen::VectorXd sub = Eigen::VectorXd::Ones(M - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    require(es.info() == Eigen::Success, Err::BadParams, "diagonalization failed");

    SULEModel model;
    model.nu = 1;
    model.delta = 0.1;
    model.energies.resize(M);
    model.centers.resize(M);
    model.vectors.assign(M, std::vector<double>(M));
    for (int n = 0; n < M; ++n) {
        model.energies[n] = es.eigenvalues()[n];
        if (n > 0)
            require(model.energies[n] > model.energies[n - 1], Err::BadParams,
                    "degenerate eigenvalues");
        for (int m = 0; m < M; ++m) model.vectors[n][m] = es.eigenvectors()(m, n);
        model.centers[n] = argmax_abs(model.vectors[n]);
        if (model.vectors[n][static_cast<std::size_t>(model.centers[n])] < 0.0)
            for (double& x : model.vectors[n]) x = -x;
    }

    // decay rate: median least-squares slope of ln|phi| against the distance
    // from the center, over entries above the roundoff floor
    std::vector<double> rates;
    for (int n = 0; n < M; ++n) {
        std::vector<double> xs, ys;
        for (int m = 0; m < M; ++m) {
            const double phi = std::abs(model.vectors[n][m]);
            const double dist = std::abs(static_cast<double>(m - model.centers[n]));
            if (phi > 1e-12 && dist >= 1.0) {
                xs.push_back(dist);
                ys.push_back(std::log(phi));
            }
        }
        if (xs.size() < 3) continue;
        const double rate = -least_squares(xs, ys).slope;
        if (rate > 0.0) rates.push_back(rate);
    }
    require(rates.size() >= static_cast<std::size_t>(M / 4), Err::BadParams,
            "eigenvectors show no exponential decay");
    std::sort(rates.begin(), rates.end());
    model.alpha = std::max(0.02, rates[rates.size() / 2]);
    model.c_delta = refit_c_delta(model);
    return model;
}

void validate_sule(const SULEModel& model) {
    const std::size_t N = model.vectors.size();
    require(N >= 2, Err::BadParams, "model needs at least two states");
    require(model.energies.size() == N && model.centers.size() == N, Err::BadParams,
            "model arrays must align");
    require(model.nu == 1, Err::BadParams, "stored lattices are one-dimensional");
    require(model.alpha > 0.0 && model.delta >= 0.0 && model.c_delta > 0.0, Err::BadParams,
            "model constants must be positive");
    const std::size_t M = model.vectors[0].size();
    for (const auto& v : model.vectors)
        require(v.size() == M, Err::BadParams, "vectors must share one lattice");
    for (std::size_t n = 0; n < N; ++n) {
        require(model.centers[n] >= 0 && model.centers[n] < static_cast<std::int64_t>(M),
                Err::BadParams, "center off the lattice");
        if (n > 0)
            require(model.energies[n] > model.energies[n - 1], Err::BadParams,
                    "energies must be strictly increasing");
    }

    Eigen::MatrixXd V(M, N);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t m = 0; m < M; ++m) V(m, n) = model.vectors[n][m];
    const Eigen::MatrixXd G = V.transpose() * V;
    const double ortho_err =
        (G - Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N)))
            .cwiseAbs()
            .maxCoeff();
    require(ortho_err <= 1e-10, Err::BadParams, "basis is not orthonormal within 1e-10");

    for (std::size_t n = 0; n < N; ++n) {
        const double mn = static_cast<double>(model.centers[n]);
        for (std::size_t m = 0; m < M; ++m) {
            const double bound =
                model.c_delta * std::exp(model.delta * std::abs(mn) -
                                         model.alpha * std::abs(static_cast<double>(m) - mn));
            require(std::abs(model.vectors[n][m]) <= bound + kSuleFloor, Err::BadParams,
                    "SULE inequality fails on a stored entry");
        }
    }
}

SuleMeasure sule_spectral_measure(const SULEModel& model) {
    const std::size_t N = model.vectors.size();
    require(N >= 1 && model.energies.size() == N, Err::BadParams, "model arrays must align");
    double total = 0.0;
    std::vector<Atom> atoms;
    for (std::size_t n = 0; n < N; ++n) {
        require(!model.vectors[n].empty(), Err::BadParams, "empty vector");
        const double w = model.vectors[n][0] * model.vectors[n][0];
        total += w;
        if (w >= kWeightFloor) atoms.push_back({model.energies[n], w});
    }
    require(!atoms.empty(), Err::BadParams, "no state has weight at the origin");

    SuleMeasure out;
    out.renormalized = std::abs(total - 1.0) > 1e-10;
    if (out.renormalized)
        for (Atom& at : atoms) at.mass /= total;
    out.measure = finite_atoms(std::move(atoms));
    return out;
}

DecayFit relabel_decay_fit(const std::vector<double>& values, int nu) {
    require(nu >= 1 && nu <= 4, Err::BadParams, "nu must lie in [1, 4]");
    require(values.size() >= 8, Err::BadParams, "need at least 8 values");
    std::vector<double> v;
    v.reserve(values.size());
    for (double x : values) {
        require(std::isfinite(x) && x >= 0.0, Err::BadParams, "values must be nonnegative");
        if (x > 0.0) v.push_back(x);
    }
    std::sort(v.begin(), v.end(), std::greater<>());

    DecayFit fit;
    fit.sorted_log_v.reserve(v.size());
    for (double x : v) fit.sorted_log_v.push_back(std::log(x));

    // fit over the resolvable range; entries at the roundoff floor would
    // flatten the slope
    std::vector<double> xs, ys;
    for (std::size_t n = 1; n <= v.size(); ++n) {
        if (v[n - 1] <= 1e-13) break;
        xs.push_back(std::pow(static_cast<double>(n), 1.0 / nu));
        ys.push_back(fit.sorted_log_v[n - 1]);
    }
    require(xs.size() >= 8, Err::BadParams, "need at least 8 values above the 1e-13 fit floor");
    fit.D = -least_squares(xs, ys).slope;

    double lc = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) lc = std::max(lc, ys[i] + fit.D * xs[i]);
    fit.log_C = lc;
    return fit;
}

SuleBoundChain sule_dimension_bound(const SULEModel& model, double eps) {
    validate_sule(model);
    const SuleMeasure sm = sule_spectral_measure(model);
    const std::size_t N = sm.measure.atoms.size();
    std::vector<double> positions(N), weights(N);
    for (std::size_t i = 0; i < N; ++i) {
        positions[i] = sm.measure.atoms[i].pos;
        weights[i] = sm.measure.atoms[i].mass;
    }

    SuleBoundChain chain;
    chain.fit = relabel_decay_fit(weights, model.nu);
    require(chain.fit.D > 0.0, Err::HypothesisFailed, "origin weights do not decay");

    const double D = chain.fit.D;
    const int nu = model.nu;
    char name[64];
    std::snprintf(name, sizeof name, "decay_gauge(D=%.6g,nu=%d)", D, nu);
    chain.f.name = name;
    chain.f.s_min = 1e-6;
    chain.f.log_form = [D, nu](double s) { return -static_cast<double>(nu) * std::log(s / D); };

    // b_n = c/n with the smallest c making f(a_n) <= b_n hold; the chain only
    // needs b up to a scalar
    double lc = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= N; ++n) {
        const double s = -std::log(weights[n - 1]);
        lc = std::max(lc, std::log(static_cast<double>(n)) + chain.f.log_form(s));
    }
    lc = std::max(lc, 0.0) + 1e-9;
    std::vector<double> b(N);
    for (std::size_t n = 1; n <= N; ++n) b[n - 1] = std::exp(lc - std::log(static_cast<double>(n)));

    CoverBoundOptions opt;
    opt.extended_family = true;
    chain.cover = cover_dimension_bound(positions, weights, chain.f, b, eps, opt);

    const GaugeFunction lp = make_log_power(static_cast<double>(nu));
    const double s_lo = std::max(chain.cover.bound_gauge.s_min, lp.s_min);
    chain.vs_log_power = compare(chain.cover.bound_gauge, lp, default_s_grid(s_lo));
    return chain;
}

}  // namespace specdim
