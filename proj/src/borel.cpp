#include "specdim/borel.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "specdim/error.hpp"
#include "specdim/logdomain.hpp"
#include "specdim/trend.hpp"

namespace specdim {

namespace {

using cplx = std::complex<double>;

cplx piece_transform(const DensityPiece& p, cplx z) {
    switch (p.kind) {
        case DensityPiece::Kind::Const:
            // ∫_a^b w dx/(x-z) = w (ln(b-z) - ln(a-z)); both args stay in one
            // half plane, so principal logs never wrap.
            return p.value * (std::log(cplx(p.b) - z) - std::log(cplx(p.a) - z));
        case DensityPiece::Kind::Table: {
            // Segment density wa + m(x - xa): antiderivative
            // m(xb - xa) + (wa + m(xa - z)) (ln(xb - z) - ln(xa - z)).
            cplx acc = 0.0;
            for (std::size_t i = 0; i + 1 < p.xs.size(); ++i) {
                const double xa = std::max(p.a, p.xs[i]), xb = std::min(p.b, p.xs[i + 1]);
                if (xb <= xa) continue;
                const double slope = (p.ws[i + 1] - p.ws[i]) / (p.xs[i + 1] - p.xs[i]);
                const double wa = p.ws[i] + slope * (xa - p.xs[i]);
                const cplx l = std::log(cplx(xb) - z) - std::log(cplx(xa) - z);
                acc += slope * (xb - xa) + (wa + slope * (cplx(xa) - z)) * l;
            }
            return acc;
        }
        case DensityPiece::Kind::Semicircle: {
            if (p.a <= -2.0 && p.b >= 2.0) {
                // Full semicircle: F(z) = (-z + sqrt(z-2) sqrt(z+2))/2 with
                // principal square roots picks the decaying Herglotz branch
                // on both half planes and on the real axis off [-2,2].
                return p.value * 0.5 * (-z + std::sqrt(z - 2.0) * std::sqrt(z + 2.0));
            }
            // Clipped semicircle piece: adaptive quadrature on Re and Im.
            namespace bq = boost::math::quadrature;
            auto base = [&](double x) { return p.weight(x); };
            auto re = [&](double x) {
                const cplx d = cplx(x) - z;
                return base(x) * (d.real() / std::norm(d));
            };
            auto im = [&](double x) {
                const cplx d = cplx(x) - z;
                return base(x) * (z.imag() / std::norm(d));
            };
            std::vector<double> cuts{p.a, p.b};
            if (z.real() > p.a && z.real() < p.b) cuts.insert(cuts.begin() + 1, z.real());
            double rr = 0.0, ri = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                rr += bq::gauss_kronrod<double, 15>::integrate(re, cuts[i], cuts[i + 1], 25, 1e-10);
                ri += bq::gauss_kronrod<double, 15>::integrate(im, cuts[i], cuts[i + 1], 25, 1e-10);
            }
            return {rr, ri};
        }
    }
    return 0.0;
}

}  // namespace

std::complex<double> borel_transform(const SpectralMeasure& mu, cplx z, double margin) {
    require(mu.finalized(), Err::BadParams, "borel_transform: measure not finalized");
    if (z.imag() == 0.0) {
        for (const auto& at : mu.atoms)
            require(std::fabs(at.pos - z.real()) >= margin, Err::PoleProximity,
                    "borel_transform: real z within margin of an atom");
        for (const auto& p : mu.density)
            require(z.real() < p.a - margin || z.real() > p.b + margin, Err::PoleProximity,
                    "borel_transform: real z inside density support");
    }
    cplx acc = 0.0;
    for (const auto& at : mu.atoms) acc += at.mass / (cplx(at.pos) - z);
    for (const auto& p : mu.density) acc += piece_transform(p, z);
    return acc;
}

const char* to_string(BoundaryClass c) {
    switch (c) {
        case BoundaryClass::Zero: return "Zero";
        case BoundaryClass::Bounded: return "Bounded";
        case BoundaryClass::Infinite: return "Infinite";
        default: return "Undetermined";
    }
}

namespace {

BoundaryClass class_of(Trend t) {
    switch (t) {
        case Trend::Increasing: return BoundaryClass::Infinite;
        case Trend::Decreasing: return BoundaryClass::Zero;
        case Trend::Stable: return BoundaryClass::Bounded;
        default: return BoundaryClass::Undetermined;
    }
}

}  // namespace

BoundaryPair hausborel_compare(const SpectralMeasure& mu, double x, const GaugeFunction& rho,
                               const std::vector<double>& eps_grid) {
    require(eps_grid.size() >= 8, Err::InvalidGrid, "hausborel: need >= 8 scales");
    for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i)
        require(eps_grid[i] > eps_grid[i + 1], Err::InvalidGrid,
                "hausborel: eps grid must strictly decrease");
    const double gap = mu.min_atom_gap();
    const double floor = std::max(mu.resolution_floor, std::isfinite(gap) ? 1e-9 * gap : 0.0);
    require(eps_grid.back() >= floor, Err::InvalidGrid,
            "hausborel: eps grid below resolved scales of the measure");

    // The identification of the two limsup classes needs rho below the linear
    // gauge: rho(t)/t -> infinity.
    require(compare(rho, make_power(1.0), default_s_grid(rho.s_min)) == Ordering::Precedes,
            Err::GaugeNotSubLinear, "hausborel: gauge must lie strictly below power(1)");

    BoundaryPair out;
    out.x = x;
    out.eps = eps_grid;
    const std::size_t n = eps_grid.size();
    out.log_mass_ratio.resize(n);
    out.log_borel_ratio.resize(n);
    std::vector<double> inv_eps(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double eps = eps_grid[i];
        const double s = std::log(1.0 / eps);
        const double lrho = rho.log_form(s);
        const double m = mu.ball_mass(x, eps);
        out.log_mass_ratio[i] = (m > 0.0 ? std::log(m) : kNegInf) - lrho;
        const double imf = borel_transform(mu, {x, eps}).imag();
        out.log_borel_ratio[i] = (imf > 0.0 ? std::log(imf) : kNegInf) - s - lrho;
        inv_eps[i] = 1.0 / eps;
    }
    auto classify_channel = [&](const std::vector<double>& r) {
        if (r.back() == kNegInf) return BoundaryClass::Zero;
        return class_of(classify_trend(inv_eps, r).cls);
    };
    out.mass_class = classify_channel(out.log_mass_ratio);
    out.borel_class = classify_channel(out.log_borel_ratio);
    out.both_resolved = out.mass_class != BoundaryClass::Undetermined &&
                        out.borel_class != BoundaryClass::Undetermined;
    out.consistent = out.both_resolved && out.mass_class == out.borel_class;
    return out;
}

namespace {

// F restricted to the real axis for a purely atomic measure.
double f_real(const SpectralMeasure& mu, double x) {
    double acc = 0.0;
    for (const auto& at : mu.atoms) acc += at.mass / (at.pos - x);
    return acc;
}

// Root of f_real = target inside (lo, hi), where the endpoint signs are known
// from the pole structure; never evaluates at the endpoints.
double branch_root(const SpectralMeasure& mu, double lo, double hi, double target,
                   bool rising_from_neg) {
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double v = f_real(mu, mid) - target;
        if ((v < 0.0) == rising_from_neg)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

BooleReport boole_check(const SpectralMeasure& mu, const std::vector<double>& lambdas) {
    require(mu.finalized(), Err::BadParams, "boole_check: measure not finalized");
    require(mu.density.empty(), Err::NotAtomic, "boole_check: measure must be purely atomic");
    require(!mu.atoms.empty(), Err::NotAtomic, "boole_check: no atoms");
    require(std::fabs(mu.total_mass() - 1.0) <= 1e-12, Err::NotProbability,
            "boole_check: measure must be a probability measure");
    const auto& a = mu.atoms;
    const std::size_t n = a.size();

    BooleReport rep;
    rep.rows.resize(lambdas.size());
#pragma omp parallel for schedule(static)
    for (long long li = 0; li < static_cast<long long>(lambdas.size()); ++li) {
        const double lam = lambdas[static_cast<std::size_t>(li)];
        double total = 0.0;
        // Left tail: F rises 0 -> +inf on (-inf, E_1); {F > lam} = (x, E_1).
        {
            double lo = a.front().pos - std::max(2.0 / lam, 2.0 * (a.back().pos - a.front().pos + 1.0));
            double x = branch_root(mu, lo, a.front().pos, lam, true);
            total += a.front().pos - x;
        }
        // Interior gaps: F rises -inf -> +inf; |F| > lam on both ends.
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double gl = a[k].pos, gr = a[k + 1].pos;
            const double xm = branch_root(mu, gl, gr, -lam, true);  // F = -lam
            const double xp = branch_root(mu, gl, gr, lam, true);   // F = +lam
            if (!(xm <= xp))
                fail(Err::UnresolvedLevelSet, "boole_check: level-set branches overlap");
            total += (xm - gl) + (gr - xp);
        }
        // Right tail: F rises -inf -> 0 on (E_N, inf); {F < -lam} = (E_N, x).
        {
            double hi = a.back().pos + std::max(2.0 / lam, 2.0 * (a.back().pos - a.front().pos + 1.0));
            double x = branch_root(mu, a.back().pos, hi, -lam, true);
            total += x - a.back().pos;
        }
        rep.rows[static_cast<std::size_t>(li)] = {lam, total, 2.0 / lam};
    }
    for (const auto& r : rep.rows)
        rep.max_rel_err =
            std::max(rep.max_rel_err, std::fabs(r.level_set_measure - r.expected) / r.expected);
    return rep;
}

}  // namespace specdim
