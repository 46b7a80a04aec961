#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "specdim/trend.hpp"

namespace specdim {

/// Dimension gauge rho: increasing on (0, t_max), rho(0+) = 0.  Canonical
/// representation is the log form s -> ln rho(e^{-s}) with s = ln(1/t), so a
/// gauge can be evaluated at scales like t ~ e^{-1e9} that have no double
/// representation.  Direct evaluation is derived and may underflow; all
/// internal consumers stay in the log form.
struct GaugeFunction {
    std::string name;
    double s_min = 0.0;  // log form is valid for s > s_min
    std::function<double(double)> log_form;

    double log_at_scale(double s) const { return log_form(s); }
    /// rho(t) for t in (0,1); convenience channel only.
    double operator()(double t) const;
};

/// Asymptotic order at t -> 0+:  rho < xi (Precedes) iff rho/xi -> infinity.
enum class Ordering { Precedes, Succeeds, Equivalent, Undetermined };

const char* to_string(Ordering o);

/// Grid pre: >= 8 points, >= 4 decades, strictly increasing, above both
/// gauges' s_min.  Finite-scale verdict via the shared trend classifier;
/// Undetermined when the trend does not resolve (never guesses).
Ordering compare(const GaugeFunction& rho, const GaugeFunction& xi,
                 const std::vector<double>& s_grid);

/// 48-point geometric grid on [1e1, 1e10], clipped above s_min.
std::vector<double> default_s_grid(double s_min = 0.0);
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

// Named gauges.
GaugeFunction make_power(double alpha);        // t^alpha
GaugeFunction make_log_power(double alpha);    // (ln(1/t))^{-alpha}
GaugeFunction make_f_delta(double delta);      // 1/(ln(1/t) (ln ln(1/t))^{1+delta})
GaugeFunction make_rho_beta(double beta);      // t^{2/(1+beta)} (ln(1/t))^{-2 beta/(1+beta)}

GaugeFunction pow_gauge(const GaugeFunction& g, double c);      // g(t)^c
GaugeFunction stretch_gauge(const GaugeFunction& g, double a);  // g(t^a)

/// Index interval for a complete family; may be open/closed/unbounded per end.
struct Interval {
    double lo = 0.0, hi = 0.0;
    bool lo_open = true, hi_open = false;
    bool lo_unbounded = false, hi_unbounded = false;

    bool contains(double a) const;
    bool below(double a) const;  // a lies below the interval
    bool above(double a) const;
    std::string str() const;
};

/// Interval-indexed, order-monotone family {rho_alpha : alpha in I}.
struct CompleteFamily {
    std::string name;
    Interval index;
    std::function<GaugeFunction(double)> member;
};

CompleteFamily power_family(Interval index);
CompleteFamily log_power_family(Interval index);
/// {f(t^alpha) : alpha in I}
CompleteFamily stretched_family(const GaugeFunction& f, Interval index);
/// {base(t)^beta : beta in I}
CompleteFamily pow_family(const GaugeFunction& base, Interval index);

/// Generalized dimension relative to a family: an interior member, or the
/// degenerate values below/above every member.
enum class DimKind { Zero, Member, One };

struct DimensionValue {
    DimKind kind = DimKind::Zero;
    double alpha = 0.0;  // meaningful for Member
    std::string str() const;
};

/// Case split for a critical index alpha' (+-inf allowed).
DimensionValue family_dimension_from_alpha(const CompleteFamily& family, double alpha_prime);

/// Builder keyed by gauge name; params checked per template.
GaugeFunction build_named(const std::string& name, const std::map<std::string, double>& params);

}  // namespace specdim
