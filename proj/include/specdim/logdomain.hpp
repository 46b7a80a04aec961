#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

/// Log-domain arithmetic.  Quantities that overflow or underflow double
/// range (transfer-matrix norms, cover sums at deep generations, measure
/// masses at tiny scales) are carried as natural logs of their magnitude.
namespace specdim {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// ln(e^a + e^b), safe for a, b near +-inf.
inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = a > b ? a : b;
    double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

/// ln(e^a - e^b) for a > b; kNegInf when equal.
inline double log_sub_exp(double a, double b) {
    if (b == kNegInf) return a;
    if (a == b) return kNegInf;
    return a + std::log1p(-std::exp(b - a));
}

/// ln(sum_i e^{v[i]}) over [begin, begin+n), plain left-to-right pass.
double log_sum_exp_serial(const double* v, std::size_t n);

/// OpenMP log-sum-exp.  Partial sums are formed over a fixed chunk grid
/// (independent of the thread count) and combined in chunk order, so the
/// result is bit-identical for any number of workers.
double log_sum_exp(const double* v, std::size_t n);

inline double log_sum_exp(const std::vector<double>& v) {
    return log_sum_exp(v.data(), v.size());
}
inline double log_sum_exp_serial(const std::vector<double>& v) {
    return log_sum_exp_serial(v.data(), v.size());
}

/// Signed log-domain scalar: value = sign * e^{log_mag}, sign in {-1,0,+1}.
struct SignedLog {
    double log_mag = kNegInf;
    int sign = 0;

    static SignedLog zero() { return {kNegInf, 0}; }
    static SignedLog one() { return {0.0, 1}; }
    static SignedLog from_double(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::fabs(x)), x > 0 ? 1 : -1};
    }
    double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }
};

inline SignedLog operator*(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return SignedLog::zero();
    return {a.log_mag + b.log_mag, a.sign * b.sign};
}

inline SignedLog operator+(SignedLog a, SignedLog b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.sign == b.sign) return {log_add_exp(a.log_mag, b.log_mag), a.sign};
    if (a.log_mag == b.log_mag) return SignedLog::zero();
    const SignedLog& hi = a.log_mag > b.log_mag ? a : b;
    const SignedLog& lo = a.log_mag > b.log_mag ? b : a;
    return {log_sub_exp(hi.log_mag, lo.log_mag), hi.sign};
}

inline SignedLog operator-(SignedLog a, SignedLog b) {
    b.sign = -b.sign;
    return a + b;
}

/// x * e^s without spurious overflow when x == 0.
inline double scaled(double x, double log_scale) {
    return x == 0.0 ? 0.0 : x * std::exp(log_scale);
}

}  // namespace specdim
