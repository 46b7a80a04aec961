#include "specdim/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specdim/error.hpp"
#include "specdim/logdomain.hpp"

namespace specdim {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

Generation CoverTree::generation(int k) const {
    require(k >= 0, Err::GenerationUnavailable, "generation index must be >= 0");
    if (k < static_cast<int>(stored.size())) return stored[static_cast<std::size_t>(k)];
    if (rule && k <= max_generation) return rule(k);
    fail(Err::GenerationUnavailable,
         "generation " + std::to_string(k) + " not stored and no rule covers it");
}

CoverTree cantor_tree(double ratio, int max_generation) {
    require(ratio > 0.0 && ratio < 0.5, Err::BadParams, "cantor tree needs ratio in (0, 1/2)");
    CoverTree t;
    t.name = "cantor";
    t.max_generation = max_generation;
    const double llen = std::log(1.0 / ratio);
    t.rule = [llen](int k) {
        return Generation{{kNan, llen * k, std::log(2.0) * k}};
    };
    return t;
}

CoverTree log_cantor_tree(int max_generation) {
    CoverTree t;
    t.name = "log_cantor";
    t.max_generation = max_generation;
    t.rule = [](int k) {
        return Generation{{kNan, std::ldexp(1.0, k), std::log(2.0) * k}};
    };
    return t;
}

namespace {

void validate_nesting(const std::vector<Generation>& gens) {
    for (std::size_t k = 0; k + 1 < gens.size(); ++k) {
        std::vector<std::pair<double, double>> parents;  // [left, right]
        for (const auto& c : gens[k]) {
            if (std::isnan(c.left)) return;  // positions absent: nesting is structural
            parents.emplace_back(c.left, c.left + std::exp(-c.log_len));
        }
        std::sort(parents.begin(), parents.end());
        for (const auto& c : gens[k + 1]) {
            if (std::isnan(c.left)) return;
            const double r = c.left + std::exp(-c.log_len);
            bool inside = false;
            for (const auto& p : parents) {
                if (p.first <= c.left + 1e-12 && r <= p.second + 1e-12) {
                    inside = true;
                    break;
                }
            }
            require(inside, Err::BadParams,
                    "cover tree: generation " + std::to_string(k + 1) +
                        " interval escapes generation " + std::to_string(k));
        }
    }
}

}  // namespace

CoverTree explicit_tree(std::vector<Generation> generations, bool validate_containment) {
    require(!generations.empty(), Err::BadParams, "explicit tree needs generations");
    if (validate_containment) validate_nesting(generations);
    CoverTree t;
    t.name = "explicit";
    t.stored = std::move(generations);
    t.max_generation = static_cast<int>(t.stored.size()) - 1;
    return t;
}

namespace {

std::vector<double> cover_terms(const Generation& gen, const GaugeFunction& rho) {
    std::vector<double> terms(gen.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(gen.size()); ++i) {
        const auto& c = gen[static_cast<std::size_t>(i)];
        terms[static_cast<std::size_t>(i)] = c.log_count + rho.log_form(c.log_len);
    }
    return terms;
}

void check_domain(const Generation& gen, const GaugeFunction& rho) {
    for (const auto& c : gen)
        require(c.log_len > rho.s_min, Err::BadParams,
                "cover_sum: interval log-length " + std::to_string(c.log_len) +
                    " below gauge domain s_min=" + std::to_string(rho.s_min));
}

}  // namespace

double cover_sum(const CoverTree& tree, const GaugeFunction& rho, int k) {
    Generation gen = tree.generation(k);
    check_domain(gen, rho);
    return log_sum_exp(cover_terms(gen, rho));
}

double cover_sum_serial(const CoverTree& tree, const GaugeFunction& rho, int k) {
    Generation gen = tree.generation(k);
    check_domain(gen, rho);
    double acc = kNegInf;
    for (const auto& c : gen) acc = log_add_exp(acc, c.log_count + rho.log_form(c.log_len));
    return acc;
}

const char* to_string(CoverVerdict v) {
    switch (v) {
        case CoverVerdict::Infinite: return "Infinite";
        case CoverVerdict::Finite: return "Finite";
        case CoverVerdict::Zero: return "Zero";
        default: return "Undetermined";
    }
}

CoverTrace measure_verdict(const CoverTree& tree, const GaugeFunction& rho, int k_min, int k_max,
                           const CoverOptions& opt) {
    require(k_min >= 0 && k_max >= k_min + 4, Err::InvalidGrid,
            "measure_verdict: need k_max >= k_min + 4");
    CoverTrace tr;
    for (int k = k_min; k <= k_max; ++k) {
        tr.k.push_back(k);
        tr.log_sum.push_back(cover_sum(tree, rho, k));
    }
    // Per-generation least-squares slope over the tail half.
    const std::size_t n = tr.k.size();
    const std::size_t tail_begin = n / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double lo = tr.log_sum[tail_begin], hi = tr.log_sum[tail_begin];
    std::size_t m = 0;
    for (std::size_t i = tail_begin; i < n; ++i) {
        if (!std::isfinite(tr.log_sum[i])) return tr;  // Undetermined
        const double x = tr.k[i];
        sx += x;
        sy += tr.log_sum[i];
        sxx += x * x;
        sxy += x * tr.log_sum[i];
        lo = std::min(lo, tr.log_sum[i]);
        hi = std::max(hi, tr.log_sum[i]);
        ++m;
    }
    const double md = static_cast<double>(m);
    tr.slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
    tr.spread = hi - lo;
    if (tr.slope >= opt.delta)
        tr.verdict = CoverVerdict::Infinite;
    else if (tr.slope <= -opt.delta)
        tr.verdict = CoverVerdict::Zero;
    else if (tr.spread <= opt.band)
        tr.verdict = CoverVerdict::Finite;
    return tr;
}

namespace {

// Which side of the critical index a probe lies on.
enum class Side { Below, Above, At, Unknown };

Side side_of(const CoverTrace& tr) {
    // Slope floor resolving dimension gaps far below the verdict dead band.
    constexpr double kSlopeFloor = 1e-4;
    switch (tr.verdict) {
        case CoverVerdict::Infinite: return Side::Below;
        case CoverVerdict::Zero: return Side::Above;
        default: break;
    }
    if (tr.slope > kSlopeFloor) return Side::Below;
    if (tr.slope < -kSlopeFloor) return Side::Above;
    if (tr.verdict == CoverVerdict::Finite) return Side::At;
    return Side::Unknown;
}

}  // namespace

SetDimensionResult set_dimension(const CoverTree& tree, const CompleteFamily& family, int k_min,
                                 int k_max, double alpha_tol, const CoverOptions& opt) {
    require(alpha_tol > 0.0, Err::BadParams, "set_dimension: alpha_tol must be > 0");
    SetDimensionResult res;

    auto probe = [&](double alpha) {
        CoverTrace tr = measure_verdict(tree, family.member(alpha), k_min, k_max, opt);
        res.probes.emplace_back(alpha, tr.verdict);
        Side s = side_of(tr);
        require(s != Side::Unknown, Err::NonMonotoneVerdicts,
                "set_dimension: undetermined verdict at alpha=" + std::to_string(alpha));
        return s;
    };
    auto check_monotone = [&]() {
        // Infinite probes must all sit below Zero probes.
        double hi_inf = kNegInf, lo_zero = kPosInf;
        for (const auto& [a, v] : res.probes) {
            if (v == CoverVerdict::Infinite) hi_inf = std::max(hi_inf, a);
            if (v == CoverVerdict::Zero) lo_zero = std::min(lo_zero, a);
        }
        require(hi_inf <= lo_zero, Err::NonMonotoneVerdicts,
                "set_dimension: Infinite verdict above a Zero verdict");
    };

    const Interval& I = family.index;
    require(!I.lo_unbounded, Err::BadInterval, "set_dimension: index unbounded below");

    // Low edge.
    double a_lo = I.lo_open ? I.lo + std::min(alpha_tol, (I.hi_unbounded ? 1.0 : (I.hi - I.lo)) * 1e-3)
                            : I.lo;
    Side s_lo = probe(a_lo);
    if (s_lo == Side::At) return {family_dimension_from_alpha(family, a_lo), res.probes};
    if (s_lo == Side::Above) {
        check_monotone();
        DimensionValue d = I.lo_open ? DimensionValue{DimKind::Zero, 0.0}
                                     : DimensionValue{DimKind::Member, I.lo};
        return {d, res.probes};
    }

    // High edge; for an unbounded index scan geometrically for a sign flip.
    double a_hi;
    Side s_hi = Side::Unknown;
    if (I.hi_unbounded) {
        a_hi = std::max(1.0, 2.0 * a_lo);
        bool flipped = false;
        for (int j = 0; j < 48; ++j) {
            s_hi = probe(a_hi);
            if (s_hi == Side::At) return {family_dimension_from_alpha(family, a_hi), res.probes};
            if (s_hi == Side::Above) {
                flipped = true;
                break;
            }
            a_hi *= 2.0;
        }
        if (!flipped) {
            check_monotone();
            return {{DimKind::One, 0.0}, res.probes};
        }
    } else {
        a_hi = I.hi_open ? I.hi - std::min(alpha_tol, (I.hi - I.lo) * 1e-3) : I.hi;
        s_hi = probe(a_hi);
        if (s_hi == Side::At) return {family_dimension_from_alpha(family, a_hi), res.probes};
        if (s_hi == Side::Below) {
            check_monotone();
            DimensionValue d = I.hi_open ? DimensionValue{DimKind::One, 0.0}
                                         : DimensionValue{DimKind::Member, I.hi};
            return {d, res.probes};
        }
    }

    // Bracket [a_lo (Below), a_hi (Above)]; bisect.
    while (a_hi - a_lo > alpha_tol) {
        const double mid = 0.5 * (a_lo + a_hi);
        Side s = probe(mid);
        if (s == Side::At) {
            check_monotone();
            return {family_dimension_from_alpha(family, mid), res.probes};
        }
        (s == Side::Below ? a_lo : a_hi) = mid;
    }
    check_monotone();
    return {family_dimension_from_alpha(family, 0.5 * (a_lo + a_hi)), res.probes};
}

}  // namespace specdim
