#include "specdim/gauge.hpp"

#include <cmath>

#include "specdim/error.hpp"
#include "specdim/logdomain.hpp"

namespace specdim {

double GaugeFunction::operator()(double t) const {
    require(t > 0.0 && t < 1.0, Err::BadParams, "gauge: direct evaluation needs t in (0,1)");
    return std::exp(log_form(std::log(1.0 / t)));
}

const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Precedes: return "Precedes";
        case Ordering::Succeeds: return "Succeeds";
        case Ordering::Equivalent: return "Equivalent";
        default: return "Undetermined";
    }
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    require(lo > 0.0 && hi > lo && n >= 2, Err::InvalidGrid, "geometric_grid: bad bounds");
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
    return g;
}

std::vector<double> default_s_grid(double s_min) {
    double lo = std::max(10.0, s_min * 1.5 + 10.0);
    return geometric_grid(lo, lo * 1e9, 48);
}

Ordering compare(const GaugeFunction& rho, const GaugeFunction& xi,
                 const std::vector<double>& s_grid) {
    require(s_grid.size() >= 8, Err::InvalidGrid, "compare: need >= 8 grid points");
    for (std::size_t i = 0; i + 1 < s_grid.size(); ++i)
        require(s_grid[i] < s_grid[i + 1], Err::InvalidGrid, "compare: grid must increase");
    require(s_grid.back() >= 1e4 * s_grid.front(), Err::InvalidGrid,
            "compare: grid must span >= 4 decades");
    require(s_grid.front() > rho.s_min && s_grid.front() > xi.s_min, Err::InvalidGrid,
            "compare: grid enters a gauge's invalid range");

    std::vector<double> d(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i)
        d[i] = rho.log_form(s_grid[i]) - xi.log_form(s_grid[i]);

    switch (classify_trend(s_grid, d).cls) {
        case Trend::Increasing: return Ordering::Precedes;
        case Trend::Decreasing: return Ordering::Succeeds;
        case Trend::Stable: return Ordering::Equivalent;
        default: return Ordering::Undetermined;
    }
}

GaugeFunction make_power(double alpha) {
    require(alpha > 0.0, Err::BadParams, "power gauge needs alpha > 0");
    return {"power(" + std::to_string(alpha) + ")", 0.0,
            [alpha](double s) { return -alpha * s; }};
}

GaugeFunction make_log_power(double alpha) {
    require(alpha > 0.0, Err::BadParams, "log_power gauge needs alpha > 0");
    return {"log_power(" + std::to_string(alpha) + ")", 0.0,
            [alpha](double s) { return -alpha * std::log(s); }};
}

GaugeFunction make_f_delta(double delta) {
    require(delta > 0.0, Err::BadParams, "f_delta gauge needs delta > 0");
    return {"f_delta(" + std::to_string(delta) + ")", 1.0,
            [delta](double s) { return -std::log(s) - (1.0 + delta) * std::log(std::log(s)); }};
}

GaugeFunction make_rho_beta(double beta) {
    // The source family is stated for beta > 1 but is a valid gauge (and is
    // used downstream) for every beta > 0, e.g. beta = 1 gives t/ln(1/t).
    require(beta > 0.0, Err::BadParams, "rho_beta gauge needs beta > 0");
    const double p = 2.0 / (1.0 + beta);
    const double q = 2.0 * beta / (1.0 + beta);
    return {"rho_beta(" + std::to_string(beta) + ")", 1.0,
            [p, q](double s) { return -p * s - q * std::log(s); }};
}

GaugeFunction pow_gauge(const GaugeFunction& g, double c) {
    require(c > 0.0, Err::BadParams, "pow_gauge needs exponent > 0");
    auto base = g.log_form;
    return {g.name + "^" + std::to_string(c), g.s_min,
            [base, c](double s) { return c * base(s); }};
}

GaugeFunction stretch_gauge(const GaugeFunction& g, double a) {
    require(a > 0.0, Err::BadParams, "stretch_gauge needs exponent > 0");
    auto base = g.log_form;
    return {g.name + "(t^" + std::to_string(a) + ")", g.s_min / a,
            [base, a](double s) { return base(a * s); }};
}

bool Interval::contains(double a) const {
    if (!lo_unbounded) {
        if (a < lo || (lo_open && a == lo)) return false;
    }
    if (!hi_unbounded) {
        if (a > hi || (hi_open && a == hi)) return false;
    }
    return true;
}

bool Interval::below(double a) const {
    if (lo_unbounded) return false;
    return a < lo || (lo_open && a == lo);
}

bool Interval::above(double a) const {
    if (hi_unbounded) return false;
    return a > hi || (hi_open && a == hi);
}

std::string Interval::str() const {
    std::string s = lo_open || lo_unbounded ? "(" : "[";
    s += lo_unbounded ? "-inf" : std::to_string(lo);
    s += ", ";
    s += hi_unbounded ? "inf" : std::to_string(hi);
    s += hi_open || hi_unbounded ? ")" : "]";
    return s;
}

CompleteFamily power_family(Interval index) {
    return {"power", index, [](double a) { return make_power(a); }};
}

CompleteFamily log_power_family(Interval index) {
    return {"log_power", index, [](double a) { return make_log_power(a); }};
}

CompleteFamily stretched_family(const GaugeFunction& f, Interval index) {
    return {f.name + "(t^alpha)", index, [f](double a) { return stretch_gauge(f, a); }};
}

CompleteFamily pow_family(const GaugeFunction& base, Interval index) {
    return {base.name + "^beta", index, [base](double b) { return pow_gauge(base, b); }};
}

std::string DimensionValue::str() const {
    switch (kind) {
        case DimKind::Zero: return "Zero";
        case DimKind::One: return "One";
        default: return "Member(" + std::to_string(alpha) + ")";
    }
}

DimensionValue family_dimension_from_alpha(const CompleteFamily& family, double alpha_prime) {
    if (alpha_prime == kNegInf) return {DimKind::Zero, 0.0};
    if (alpha_prime == kPosInf) return {DimKind::One, 0.0};
    if (family.index.contains(alpha_prime)) return {DimKind::Member, alpha_prime};
    if (family.index.below(alpha_prime)) return {DimKind::Zero, 0.0};
    if (family.index.above(alpha_prime)) return {DimKind::One, 0.0};
    fail(Err::BadInterval, "family_dimension_from_alpha: index not comparable to interval");
}

GaugeFunction build_named(const std::string& name, const std::map<std::string, double>& params) {
    auto need = [&](const char* key) {
        auto it = params.find(key);
        require(it != params.end(), Err::BadParams,
                "gauge '" + name + "' needs parameter '" + key + "'");
        return it->second;
    };
    if (name == "power") return make_power(need("alpha"));
    if (name == "log_power") return make_log_power(need("alpha"));
    if (name == "f_delta") return make_f_delta(need("delta"));
    if (name == "rho_beta") return make_rho_beta(need("beta"));
    if (name == "G_beta")
        fail(Err::BadParams, "gauge 'G_beta' needs a barrier profile; use barrier_gauge()");
    fail(Err::UnknownName, "unknown gauge name '" + name + "'");
}

}  // namespace specdim
