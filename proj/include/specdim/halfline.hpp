#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specdim/gauge.hpp"
#include "specdim/logdomain.hpp"
#include "specdim/trend.hpp"

/// Half-line discrete Schrodinger operators psi(n-1) + psi(n+1) + V(n)psi(n),
/// n >= 1.  Provides the two fundamental solutions u1, u2, log-scaled
/// transfer-matrix products, L-norms with fractional lengths, length scales
/// L(eps), upper Lyapunov exponents and the subordinacy-style functionals
/// built on them.
namespace specdim {

/// On-site potential V(n), n >= 1.
struct Potential {
    std::string name;
    std::function<double(std::int64_t)> v;

    double operator()(std::int64_t n) const { return v(n); }
};

Potential constant_potential(double c);
/// V(n) = vals[n-1] for n <= vals.size(), fill beyond.
Potential table_potential(std::vector<double> vals, double fill = 0.0);

/// Boundary phase theta in (-pi/2, pi/2] acts as the rank-one shift
/// V(1) -> V(1) - tan(theta) on top of Dirichlet data.  theta == pi/2
/// (Neumann-type) is handled by swapping the roles of the fundamental
/// solutions instead of evaluating tan; see solve_u1_u2.
struct HalfLineOperator {
    Potential potential;
    double theta = 0.0;

    bool neumann() const;
    /// V(n) with the theta shift folded into site 1 (identity when neumann).
    double effective_v(std::int64_t n) const;
};

/// 2x2 real matrix e^{log_scale} * unit with Frobenius-norm-1 unit part.
/// log_det carries ln|det| of the represented matrix from the factored
/// product; the cofactor expansion of unit cancels catastrophically once
/// log_scale exceeds ~18, so the factored value is the honest one.
struct ScaledMatrix2 {
    double unit[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    double log_scale = 0.0;   // ln of Frobenius norm
    double log_opnorm = 0.0;  // ln of 2-norm of the represented matrix
    double log_det = 0.0;     // ln|det|; ~0 for genuine transfer products
    int det_sign = 1;
};

/// Streaming transfer product Phi_n = T_n ... T_1 * Phi_0 with
/// T_n = [[E - V(n), -1], [1, 0]], kept as a rotation Q times an upper
/// triangular factor whose diagonal is stored in logs.  One Givens step per
/// site; the determinant drift la + lc accumulates genuine rounding error
/// (no cancellation), which is what makes the det invariant checkable at
/// any growth rate.
class TransferProduct {
  public:
    TransferProduct(const HalfLineOperator& H, double E);

    void step();
    std::int64_t steps() const { return n_; }

    double log_frobenius() const;
    double log_opnorm() const;
    /// la + lc; |.| is the deviation of ln det from 0.
    double log_det_drift() const { return la_ + lc_; }
    int det_sign() const { return sa_ * sc_; }

    ScaledMatrix2 snapshot() const;
    /// Columns of Phi_n: out = {u1(n+1), u1(n), u2(n+1), u2(n)}.
    void columns(SignedLog out[4]) const;

  private:
    const HalfLineOperator* h_;
    double energy_;
    std::int64_t n_ = 0;
    double q_[2][2] = {{1.0, 0.0}, {0.0, 1.0}};  // rotation, det +1
    double la_ = 0.0, lc_ = 0.0;                 // ln|R00|, ln|R11|
    int sa_ = 1, sc_ = 1;
    SignedLog sb_ = SignedLog::zero();           // R01
};

/// Phi_n(theta, E) after n >= 1 steps.
ScaledMatrix2 transfer(const HalfLineOperator& H, double E, std::int64_t n);

/// One fundamental solution sampled at checkpoint lengths L (real-valued):
/// ||u||^2_L = sum_{n<=floor(L)} u(n)^2 + (L - floor(L)) u(floor(L)+1)^2.
struct SolutionTrace {
    double energy = 0.0;
    std::vector<double> lengths;
    std::vector<double> log_norm2;   // ln ||u||^2_L
    std::vector<double> log_u;       // ln |u(floor(L))|
    std::vector<int> sign_u;
    std::vector<double> log_u_next;  // ln |u(floor(L)+1)|
    std::vector<int> sign_u_next;
};

struct SolutionPair {
    SolutionTrace u1, u2;
    /// Factored-determinant Wronskian u1(n+1)u2(n) - u2(n+1)u1(n) at each
    /// checkpoint; exactly 1 in exact arithmetic.
    std::vector<double> wronskian;
};

/// Three-term recursion from u1(0)=0, u1(1)=1 and u2(0)=1, u2(1)=0 (theta
/// shift folded into V(1); for theta == pi/2 the roles swap: u1 = (1,0),
/// u2 = (0,-1), keeping the Wronskian +1).  Checkpoints must be increasing,
/// each in [1, n_max - 1].
SolutionPair solve_u1_u2(const HalfLineOperator& H, double E, std::int64_t n_max,
                         const std::vector<double>& checkpoints);

struct LengthScaleResult {
    double L = 0.0;
    double log_product = 0.0;  // ln(||u1||_L ||u2||_L) at the returned L
};

/// L(eps) solving ||u1||_L ||u2||_L = 1/(2 eps), by bisection in real L
/// (the product is continuous and strictly increasing).  Relative tolerance
/// 1e-6.  LengthNotReached when the product at n_max is still short; the
/// message reports the attained log product.
LengthScaleResult length_scale(const HalfLineOperator& H, double E, double eps,
                               std::int64_t n_max = 1000000);

/// Geometric checkpoint schedule lo, lo*ratio, ... capped at hi (integers,
/// deduplicated).  Default ratio 1.25.
std::vector<std::int64_t> geometric_schedule(std::int64_t lo, std::int64_t hi,
                                             double ratio = 1.25);

struct LyapunovResult {
    std::vector<std::int64_t> ns;
    std::vector<double> lambda;  // (1/n) ln ||Phi_n||_2
    double estimate = 0.0;       // max of lambda over the last decade of n
    bool positive = false;
    TrendReport trend;       // trend of lambda over the schedule
    double det_drift = 0.0;  // max |ln det Phi_n| seen
};

inline constexpr double kLyapunovMin = 0.01;

/// limsup (1/n) ln ||Phi_n||.  The positivity flag requires the tail max to
/// exceed kLyapunovMin with a Stable or Increasing lambda trend, which keeps
/// the parabolic ||Phi_n|| ~ n band-edge case out.
LyapunovResult upper_lyapunov(const HalfLineOperator& H, double E,
                              std::vector<std::int64_t> schedule = {});

struct LyapunovPoint {
    double energy = 0.0;
    double estimate = 0.0;
    bool positive = false;
};

std::vector<LyapunovPoint> lyapunov_scan(const HalfLineOperator& H,
                                         const std::vector<double>& energies,
                                         std::int64_t n_max);
std::vector<LyapunovPoint> lyapunov_scan_serial(const HalfLineOperator& H,
                                                const std::vector<double>& energies,
                                                std::int64_t n_max);

enum class SubordinacyVerdict { TendsToZero, BoundedAway, Undetermined };
std::string to_string(SubordinacyVerdict v);

struct SubordinacyResult {
    std::vector<double> lengths;    // checkpoints with the gauge defined
    std::vector<double> log_value;  // ln of rho(1/(||u1||_L ||u2||_L)) ||u1||^2_L
    std::vector<double> running_min;
    SubordinacyVerdict verdict = SubordinacyVerdict::Undetermined;
    TrendReport trend;
};

/// Trace of rho(||u1||_L^{-1} ||u2||_L^{-1}) ||u1||^2_L with a liminf-style
/// verdict: the trend of the running minimum decides TendsToZero (decreasing
/// without floor) vs BoundedAway (stable).
SubordinacyResult subordinacy_functional(const HalfLineOperator& H, double E,
                                         const GaugeFunction& rho,
                                         const std::vector<double>& L_schedule);

struct TransferSumResult {
    std::vector<double> lengths;
    std::vector<double> log_sum;    // ln sum_{n<=L} ||Phi_n||_F^2
    std::vector<double> log_ratio;  // log_sum - ln f(L)
    double limsup_log_ratio = kNegInf;
    bool threshold_attained = false;  // some point with ratio >= 2
};

/// Running sum of squared Frobenius norms against a growth function f
/// (supplied as L -> ln f(L)).  Frobenius is the natural norm here:
/// sum_n ||Phi_n||_F^2 telescopes to ||u1||^2 + ||u2||^2 up to endpoint
/// terms.  The attainment flag tests ratio >= 2 with 1e-9 slack.
TransferSumResult transfer_sum_criterion(const HalfLineOperator& H, double E,
                                         const std::function<double(double)>& log_f,
                                         const std::vector<double>& L_schedule);

struct SchnolResult {
    std::vector<double> lengths;
    std::vector<double> log_ratio;  // ln of ||u1||^2_L / (L (ln L)^{1+delta})
    Trend trend = Trend::Undetermined;
};

/// ||u1||^2_L against L (ln L)^{1+delta}: trend report only, no pass/fail
/// threshold.  Checkpoints must exceed e so the denominator is positive.
SchnolResult schnol_trace(const HalfLineOperator& H, double E, double delta,
                          const std::vector<double>& L_schedule);

enum class BoundGaugeKind {
    FromGrowth,  // g(f^{-1}(c t^{-2})) with g(x) = 1/(x (ln x)^{1+delta})
    RhoBeta,     // the t^{2/(1+beta)} / ln^{2beta/(1+beta)}(1/t) family
    FDelta,      // 1/(ln(1/t) (ln ln(1/t))^{1+delta})
};

/// Gauge builders for the dimension bounds.  For FromGrowth, log_f is the
/// monotone growth function as w -> ln f(e^w); its inverse is found by
/// bisection.  param is delta (FromGrowth, FDelta) or beta (RhoBeta); c is
/// the folded constant in c t^{-2} (FromGrowth only).
GaugeFunction bound_gauge(BoundGaugeKind kind, const std::function<double(double)>& log_f,
                          double param, double c = 1.0);

}  // namespace specdim
