#include "specdim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specdim/error.hpp"
#include "specdim/logdomain.hpp"
#include "specdim/trend.hpp"

namespace specdim {

namespace {

double clip(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

// Antiderivative of sqrt(4 - x^2).
double semi_prim(double x) {
    x = clip(x, -2.0, 2.0);
    return 0.5 * x * std::sqrt(std::max(0.0, 4.0 - x * x)) + 2.0 * std::asin(0.5 * x);
}

}  // namespace

double DensityPiece::weight(double x) const {
    if (x < a || x > b) return 0.0;
    switch (kind) {
        case Kind::Const:
            return value;
        case Kind::Semicircle:
            if (x < -2.0 || x > 2.0) return 0.0;
            return value * std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
        case Kind::Table: {
            if (xs.empty() || x < xs.front() || x > xs.back()) return 0.0;
            auto it = std::upper_bound(xs.begin(), xs.end(), x);
            if (it == xs.begin()) return ws.front();
            std::size_t i = static_cast<std::size_t>(it - xs.begin());
            if (i >= xs.size()) return ws.back();
            double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            return ws[i - 1] + t * (ws[i] - ws[i - 1]);
        }
    }
    return 0.0;
}

double DensityPiece::integral(double x1, double x2) const {
    x1 = std::max(x1, a);
    x2 = std::min(x2, b);
    if (x2 <= x1) return 0.0;
    switch (kind) {
        case Kind::Const:
            return value * (x2 - x1);
        case Kind::Semicircle:
            return value * (semi_prim(x2) - semi_prim(x1)) / (2.0 * std::numbers::pi);
        case Kind::Table: {
            if (xs.size() < 2) return 0.0;
            double lo = std::max(x1, xs.front()), hi = std::min(x2, xs.back());
            if (hi <= lo) return 0.0;
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                double sa = std::max(lo, xs[i]), sb = std::min(hi, xs[i + 1]);
                if (sb <= sa) continue;
                acc += 0.5 * (weight(sa) + weight(sb)) * (sb - sa);
            }
            return acc;
        }
    }
    return 0.0;
}

void SpectralMeasure::finalize() {
    for (const auto& at : atoms)
        require(at.mass > 0.0, Err::BadParams, "measure: atom masses must be positive");
    for (const auto& p : density) {
        require(p.b > p.a, Err::BadParams, "measure: density piece needs b > a");
        if (p.kind == DensityPiece::Kind::Table)
            require(p.xs.size() == p.ws.size() && p.xs.size() >= 2, Err::BadParams,
                    "measure: table piece needs matching xs/ws, >= 2 nodes");
    }
    if (!std::is_sorted(atoms.begin(), atoms.end(),
                        [](const Atom& u, const Atom& v) { return u.pos < v.pos; }))
        std::sort(atoms.begin(), atoms.end(),
                  [](const Atom& u, const Atom& v) { return u.pos < v.pos; });
    prefix_.clear();
    finalized_ = true;
    if (atoms.empty()) return;
    uniform_mass_ = true;
    for (const auto& at : atoms) uniform_mass_ = uniform_mass_ && (at.mass == atoms[0].mass);
    if (uniform_mass_) return;  // prefix is i * mass, no table needed
    prefix_.resize(atoms.size() + 1);
    prefix_[0] = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) prefix_[i + 1] = prefix_[i] + atoms[i].mass;
}

double SpectralMeasure::prefix_upto(std::size_t i) const {
    if (atoms.empty()) return 0.0;
    if (uniform_mass_) return static_cast<double>(i) * atoms[0].mass;
    return prefix_[i];
}

double SpectralMeasure::atom_mass() const {
    require(finalized(), Err::BadParams, "measure not finalized");
    return prefix_upto(atoms.size());
}

double SpectralMeasure::density_mass() const {
    double acc = 0.0;
    for (const auto& p : density) acc += p.total();
    return acc;
}

double SpectralMeasure::interval_mass(double a, double b) const {
    require(finalized(), Err::BadParams, "measure not finalized");
    if (b <= a) return 0.0;
    double acc = 0.0;
    if (!atoms.empty()) {
        auto lo = std::upper_bound(atoms.begin(), atoms.end(), a,
                                   [](double v, const Atom& at) { return v < at.pos; });
        auto hi = std::lower_bound(atoms.begin(), atoms.end(), b,
                                   [](const Atom& at, double v) { return at.pos < v; });
        acc += prefix_upto(static_cast<std::size_t>(hi - atoms.begin())) -
               prefix_upto(static_cast<std::size_t>(lo - atoms.begin()));
    }
    for (const auto& p : density) acc += p.integral(a, b);
    return acc;
}

double SpectralMeasure::ball_mass(double x, double eps) const {
    require(eps > 0.0, Err::BadParams, "ball_mass: eps must be > 0");
    return interval_mass(x - eps, x + eps);
}

double SpectralMeasure::min_atom_gap() const {
    require(finalized(), Err::BadParams, "measure not finalized");
    double g = kPosInf;
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
        g = std::min(g, atoms[i + 1].pos - atoms[i].pos);
    return g;
}

double SpectralMeasure::support_lo() const {
    double lo = kPosInf;
    if (!atoms.empty()) lo = atoms.front().pos;
    for (const auto& p : density) lo = std::min(lo, p.a);
    return lo;
}

double SpectralMeasure::support_hi() const {
    double hi = kNegInf;
    if (!atoms.empty()) hi = atoms.back().pos;
    for (const auto& p : density) hi = std::max(hi, p.b);
    return hi;
}

std::vector<Atom> SpectralMeasure::atoms_in(double a, double b) const {
    auto lo = std::upper_bound(atoms.begin(), atoms.end(), a,
                               [](double v, const Atom& at) { return v < at.pos; });
    auto hi = std::lower_bound(atoms.begin(), atoms.end(), b,
                               [](const Atom& at, double v) { return at.pos < v; });
    return {lo, hi};
}

SpectralMeasure dirac(double pos, double mass) {
    SpectralMeasure m;
    m.atoms = {{pos, mass}};
    m.finalize();
    return m;
}

SpectralMeasure finite_atoms(std::vector<Atom> atoms) {
    SpectralMeasure m;
    m.atoms = std::move(atoms);
    m.finalize();
    return m;
}

SpectralMeasure lebesgue(double a, double b, double mass) {
    require(b > a, Err::BadParams, "lebesgue: b > a required");
    SpectralMeasure m;
    DensityPiece p;
    p.kind = DensityPiece::Kind::Const;
    p.a = a;
    p.b = b;
    p.value = mass / (b - a);
    m.density = {p};
    m.finalize();
    return m;
}

SpectralMeasure semicircle(double mass) {
    SpectralMeasure m;
    DensityPiece p;
    p.kind = DensityPiece::Kind::Semicircle;
    p.a = -2.0;
    p.b = 2.0;
    p.value = mass;
    m.density = {p};
    m.finalize();
    return m;
}

SpectralMeasure cantor_midpoint_atoms(int depth, double mass) {
    require(depth >= 1 && depth <= 25, Err::BadParams, "cantor atoms: depth in [1,25]");
    std::vector<double> lefts{0.0};
    double len = 1.0;
    for (int k = 0; k < depth; ++k) {
        len /= 3.0;
        std::vector<double> next;
        next.reserve(lefts.size() * 2);
        for (double l : lefts) {
            next.push_back(l);
            next.push_back(l + 2.0 * len);
        }
        lefts.swap(next);
    }
    SpectralMeasure m;
    m.atoms.reserve(lefts.size());
    const double w = mass / static_cast<double>(lefts.size());
    for (double l : lefts) m.atoms.push_back({l + 0.5 * len, w});
    m.resolution_floor = len;
    m.finalize();
    return m;
}

SpectralMeasure mix(const SpectralMeasure& a, double wa, const SpectralMeasure& b, double wb) {
    require(wa >= 0.0 && wb >= 0.0, Err::BadParams, "mix: negative weights");
    SpectralMeasure m;
    auto push = [&m](const SpectralMeasure& src, double w) {
        if (w == 0.0) return;
        for (const auto& at : src.atoms) m.atoms.push_back({at.pos, at.mass * w});
        for (auto p : src.density) {
            p.value *= w;
            if (p.kind == DensityPiece::Kind::Table)
                for (auto& v : p.ws) v *= w;
            m.density.push_back(std::move(p));
        }
    };
    push(a, wa);
    push(b, wb);
    m.resolution_floor = std::max(a.resolution_floor, b.resolution_floor);
    m.finalize();
    return m;
}

const char* to_string(ScalingVerdict v) {
    switch (v) {
        case ScalingVerdict::Diverges: return "Diverges";
        case ScalingVerdict::BoundedNonzero: return "BoundedNonzero";
        case ScalingVerdict::TendsToZero: return "TendsToZero";
        default: return "Undetermined";
    }
}

const char* to_string(MeasureClass c) {
    switch (c) {
        case MeasureClass::Singular: return "Singular";
        case MeasureClass::Continuous: return "Continuous";
        case MeasureClass::Mixed: return "Mixed";
        default: return "Undetermined";
    }
}

namespace {

// Mass profile of one sample point; rho-independent so dimension scans can
// reuse it across the whole family.
struct MassProfile {
    double x = 0.0;
    double weight = 0.0;
    std::vector<double> eps;     // decreasing
    std::vector<double> log_m;   // ln ball mass, -inf below support
};

std::vector<double> default_eps_grid(const SpectralMeasure& mu) {
    const double lo_s = mu.support_lo(), hi_s = mu.support_hi();
    const double width = (std::isfinite(lo_s) && std::isfinite(hi_s)) ? hi_s - lo_s : 0.0;
    const double hi = width > 0.0 ? width / 4.0 : 1.0;
    double lo = std::max(mu.resolution_floor, hi * 1e-12);
    if (lo <= 0.0) lo = hi * 1e-12;
    auto g = geometric_grid(lo, hi, 24);
    std::reverse(g.begin(), g.end());
    return g;
}

MassProfile profile_at(const SpectralMeasure& mu, double x, double w,
                       const std::vector<double>& eps) {
    MassProfile p;
    p.x = x;
    p.weight = w;
    p.eps = eps;
    p.log_m.resize(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        double m = mu.ball_mass(x, eps[i]);
        p.log_m[i] = m > 0.0 ? std::log(m) : kNegInf;
    }
    return p;
}

ScalingReport report_from_profile(const MassProfile& p, const GaugeFunction& rho) {
    ScalingReport rep;
    rep.x = p.x;
    rep.eps = p.eps;
    rep.log_ratio.resize(p.eps.size());
    std::vector<double> inv_eps(p.eps.size());
    for (std::size_t i = 0; i < p.eps.size(); ++i) {
        const double s = std::log(1.0 / p.eps[i]);
        require(s > rho.s_min, Err::InvalidGrid, "local_scaling: eps inside gauge domain gap");
        rep.log_ratio[i] = p.log_m[i] - rho.log_form(s);
        inv_eps[i] = 1.0 / p.eps[i];
    }
    // eps decreasing => 1/eps increasing, smallest scale last.
    if (p.log_m.back() == kNegInf) {
        rep.verdict = ScalingVerdict::TendsToZero;  // no mass at the finest resolved scale
        return rep;
    }
    TrendReport tr = classify_trend(inv_eps, rep.log_ratio);
    rep.slope = tr.slope;
    rep.spread = tr.spread;
    switch (tr.cls) {
        case Trend::Increasing: rep.verdict = ScalingVerdict::Diverges; break;
        case Trend::Decreasing: rep.verdict = ScalingVerdict::TendsToZero; break;
        case Trend::Stable: rep.verdict = ScalingVerdict::BoundedNonzero; break;
        default: rep.verdict = ScalingVerdict::Undetermined; break;
    }
    return rep;
}

double density_quantile(const SpectralMeasure& mu, double q) {
    // q in (0,1) relative to the density component.
    double target = q * mu.density_mass();
    for (const auto& p : mu.density) {
        double t = p.total();
        if (target > t) {
            target -= t;
            continue;
        }
        double lo = p.a, hi = p.b;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (p.integral(p.a, mid) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
    return mu.density.back().b;
}

std::vector<MassProfile> collect_profiles(const SpectralMeasure& mu, const ClassifyOptions& opt) {
    require(mu.total_mass() > 0.0, Err::BadParams, "classify: empty measure");
    std::vector<double> eps = opt.eps_grid.empty() ? default_eps_grid(mu) : opt.eps_grid;
    require(eps.size() >= 8, Err::InvalidGrid, "classify: eps grid needs >= 8 points");
    for (std::size_t i = 0; i + 1 < eps.size(); ++i)
        require(eps[i] > eps[i + 1], Err::InvalidGrid, "classify: eps grid must decrease");
    require(eps.back() >= mu.resolution_floor, Err::InvalidGrid,
            "classify: eps grid dips below the resolution floor");

    // Atoms above the floor are always sampled, each with its own mass.
    std::vector<std::size_t> forced;
    double forced_mass = 0.0;
    for (std::size_t i = 0; i < mu.atoms.size(); ++i)
        if (mu.atoms[i].mass >= opt.atom_floor) {
            forced.push_back(i);
            forced_mass += mu.atoms[i].mass;
        }

    const double atom_rest = mu.atom_mass() - forced_mass;
    const double dens_mass = mu.density_mass();
    const std::size_t budget = opt.points > forced.size() ? opt.points - forced.size() : 0;
    std::size_t n_atom = 0, n_dens = 0;
    if (atom_rest + dens_mass > 0.0 && budget > 0) {
        n_atom = static_cast<std::size_t>(
            std::llround(static_cast<double>(budget) * atom_rest / (atom_rest + dens_mass)));
        if (atom_rest > 0.0 && n_atom == 0) n_atom = 1;
        n_dens = budget - n_atom;
        if (dens_mass > 0.0 && n_dens == 0) {
            n_dens = 1;
            if (n_atom > 1) --n_atom;
        }
        if (dens_mass == 0.0) {
            n_atom += n_dens;
            n_dens = 0;
        }
        if (atom_rest == 0.0) {
            n_dens += n_atom;
            n_atom = 0;
        }
    }

    std::vector<MassProfile> prof;
    for (std::size_t i : forced)
        prof.push_back(profile_at(mu, mu.atoms[i].pos, mu.atoms[i].mass, eps));

    if (n_atom > 0) {
        // Quantile atoms of the un-forced atomic mass.
        std::vector<std::size_t> picks;
        double cum = 0.0;
        std::size_t fi = 0;
        std::size_t j = 0;
        double target = (0.5) / static_cast<double>(n_atom) * atom_rest;
        for (std::size_t i = 0; i < mu.atoms.size() && picks.size() < n_atom; ++i) {
            if (fi < forced.size() && forced[fi] == i) {
                ++fi;
                continue;
            }
            cum += mu.atoms[i].mass;
            while (picks.size() < n_atom && cum >= target) {
                picks.push_back(i);
                ++j;
                target = (static_cast<double>(j) + 0.5) / static_cast<double>(n_atom) * atom_rest;
            }
        }
        const double w = atom_rest / static_cast<double>(picks.size());
        for (std::size_t i : picks) prof.push_back(profile_at(mu, mu.atoms[i].pos, w, eps));
    }
    for (std::size_t j = 0; j < n_dens; ++j) {
        double q = (static_cast<double>(j) + 0.5) / static_cast<double>(n_dens);
        prof.push_back(
            profile_at(mu, density_quantile(mu, q), dens_mass / static_cast<double>(n_dens), eps));
    }
    return prof;
}

ClassifyReport classify_profiles(const std::vector<MassProfile>& prof, const GaugeFunction& rho,
                                 double eta) {
    ClassifyReport rep;
    for (const auto& p : prof) {
        ScalingReport r = report_from_profile(p, rho);
        rep.samples.push_back({p.x, p.weight, r.verdict});
        switch (r.verdict) {
            case ScalingVerdict::Diverges: rep.mass_diverging += p.weight; break;
            case ScalingVerdict::BoundedNonzero: rep.mass_bounded += p.weight; break;
            case ScalingVerdict::TendsToZero: rep.mass_vanishing += p.weight; break;
            default: rep.mass_undetermined += p.weight; break;
        }
    }
    const double W = rep.mass_diverging + rep.mass_bounded + rep.mass_vanishing +
                     rep.mass_undetermined;
    if (W <= 0.0 || rep.mass_undetermined > eta * W) return rep;  // Undetermined
    if (rep.mass_diverging >= (1.0 - eta) * W)
        rep.verdict = MeasureClass::Singular;
    else if (rep.mass_diverging <= eta * W)
        rep.verdict = MeasureClass::Continuous;
    else
        rep.verdict = MeasureClass::Mixed;
    return rep;
}

}  // namespace

ScalingReport local_scaling(const SpectralMeasure& mu, double x, const GaugeFunction& rho,
                            const std::vector<double>& eps_grid) {
    require(mu.finalized(), Err::BadParams, "local_scaling: measure not finalized");
    require(eps_grid.size() >= 8, Err::InvalidGrid, "local_scaling: need >= 8 scales");
    for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i)
        require(eps_grid[i] > eps_grid[i + 1], Err::InvalidGrid,
                "local_scaling: eps grid must strictly decrease");
    require(eps_grid.back() >= mu.resolution_floor, Err::InvalidGrid,
            "local_scaling: eps grid dips below the resolution floor");
    return report_from_profile(profile_at(mu, x, 1.0, eps_grid), rho);
}

ClassifyReport classify(const SpectralMeasure& mu, const GaugeFunction& rho,
                        const ClassifyOptions& opt) {
    return classify_profiles(collect_profiles(mu, opt), rho, opt.eta);
}

MeasureDimensionResult measure_dimension(const SpectralMeasure& mu, const CompleteFamily& family,
                                         double alpha_tol, const ClassifyOptions& opt) {
    require(alpha_tol > 0.0, Err::BadParams, "measure_dimension: alpha_tol must be > 0");
    const Interval& I = family.index;
    require(!I.lo_unbounded && !I.hi_unbounded, Err::BadInterval,
            "measure_dimension: index interval must be bounded");

    auto prof = collect_profiles(mu, opt);
    MeasureDimensionResult res;
    auto class_at = [&](double alpha) {
        MeasureClass c = classify_profiles(prof, family.member(alpha), opt.eta).verdict;
        res.probes.emplace_back(alpha, c);
        require(c != MeasureClass::Undetermined, Err::NonMonotoneVerdicts,
                "measure_dimension: undetermined classification at alpha=" +
                    std::to_string(alpha));
        return c;
    };
    auto check_monotone = [&]() {
        auto rank = [](MeasureClass c) {
            return c == MeasureClass::Continuous ? 0 : (c == MeasureClass::Mixed ? 1 : 2);
        };
        auto sorted = res.probes;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            require(rank(sorted[i].second) <= rank(sorted[i + 1].second), Err::NonMonotoneVerdicts,
                    "measure_dimension: classification not monotone in alpha");
    };

    const double margin = std::min(alpha_tol, (I.hi - I.lo) * 1e-3);
    const double lo_eff = I.lo_open ? I.lo + margin : I.lo;
    const double hi_eff = I.hi_open ? I.hi - margin : I.hi;
    const MeasureClass c_lo = class_at(lo_eff);
    const MeasureClass c_hi = (hi_eff == lo_eff) ? c_lo : class_at(hi_eff);

    // Upper dimension: critical index of singularity.
    if (c_lo == MeasureClass::Singular) {
        res.upper = I.lo_open ? DimensionValue{DimKind::Zero, 0.0}
                              : DimensionValue{DimKind::Member, I.lo};
    } else if (c_hi != MeasureClass::Singular) {
        res.upper = I.hi_open ? DimensionValue{DimKind::One, 0.0}
                              : DimensionValue{DimKind::Member, I.hi};
    } else {
        double a = lo_eff, b = hi_eff;  // a not singular, b singular
        while (b - a > alpha_tol) {
            double mid = 0.5 * (a + b);
            (class_at(mid) == MeasureClass::Singular ? b : a) = mid;
        }
        res.upper = family_dimension_from_alpha(family, 0.5 * (a + b));
    }

    // Lower dimension: critical index of continuity.
    if (c_hi == MeasureClass::Continuous) {
        res.lower = I.hi_open ? DimensionValue{DimKind::One, 0.0}
                              : DimensionValue{DimKind::Member, I.hi};
    } else if (c_lo != MeasureClass::Continuous) {
        res.lower = I.lo_open ? DimensionValue{DimKind::Zero, 0.0}
                              : DimensionValue{DimKind::Member, I.lo};
    } else {
        double a = lo_eff, b = hi_eff;  // a continuous, b not
        while (b - a > alpha_tol) {
            double mid = 0.5 * (a + b);
            (class_at(mid) == MeasureClass::Continuous ? a : b) = mid;
        }
        res.lower = family_dimension_from_alpha(family, 0.5 * (a + b));
    }
    check_monotone();
    return res;
}

}  // namespace specdim
