#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specdim/gauge.hpp"
#include "specdim/halfline.hpp"

/// Sparse-barrier potentials: super-exponentially spaced sites L_k carrying
/// V(L_k) = beta(L_k)^eta, with everything off-barrier free.  Provides the
/// scale recursion, transfer-norm sandwich checks, the F_{n,delta}
/// functional, Green-function factorization identities, and the gauges the
/// construction's dimension bounds land on.
namespace specdim {

/// Growth profile: ln beta must be increasing and convex (that convexity is
/// what makes beta^{-1} subadditive under products).
struct BarrierProfile {
    std::string name;
    std::function<double(double)> log_beta;  // x -> ln beta(x), x > 0
    double eta = 1.0;
};

BarrierProfile exp_profile(double eta = 1.0);                   // beta(x) = e^x
BarrierProfile exp_scaled_profile(double c, double eta = 1.0);  // beta(x) = e^{cx}
/// beta(x) = x^p: ln beta = p ln x is concave, so validation rejects it.
BarrierProfile power_profile(double p, double eta = 1.0);

/// Monotonicity on a grid, ln-convexity via uniform second differences
/// (tolerance -1e-9), and beta^{-1}(xy) <= beta^{-1}(x) + beta^{-1}(y) + 1e-9
/// on 10^3 seeded random pairs.  BadProfile on any violation.
void validate_profile(const BarrierProfile& p);

/// beta^{-1}(y) for ln y = log_y, by monotone bisection.  The result is kept
/// in natural units: admissible profiles grow at least exponentially, so the
/// inverse of any representable log stays tame.
double beta_inv(const BarrierProfile& p, double log_y);

struct ScaleEntry {
    int index = 0;        // 1-based barrier index
    std::int64_t L = 0;   // valid when materializable
    double log_L = 0.0;   // ln L_k, always present
    bool materializable = false;
    double log_beta_L = 0.0;  // ln beta(L_k); valid when beta_ok
    double log_v = 0.0;       // eta * ln beta(L_k); valid when beta_ok
    bool beta_ok = false;
};

struct SparseScales {
    std::vector<ScaleEntry> entries;
    std::int64_t cap = 0;
};

inline constexpr std::int64_t kScaleCap = std::int64_t(1) << 53;  // exact-integer ceiling range

/// L_1 = 2, L_{n+1} = ceil(beta(L_n)^n) computed in log domain.  Scales past
/// cap keep only log_L (symbolic); the chain stops once beta's argument
/// leaves double range.  Rejects profiles whose scales fail to increase.
SparseScales build_scales(const BarrierProfile& p, int K, std::int64_t cap = kScaleCap);

/// V(n) = beta(L_k)^eta at n == L_k, 0 elsewhere (binary search per lookup).
/// ScaleNotMaterializable when the queried site needs a barrier value beyond
/// double range, or lies past cap while symbolic scales exist.
Potential barrier_potential(const BarrierProfile& p, const SparseScales& s);

/// max{1, V-2} <= ||T_{L_k}(E)|| <= V+3, checked in log domain so it covers
/// barriers whose V never materializes.  Requires |E| <= 2.
struct SingleStepRow {
    int k = 0;
    double energy = 0.0;
    double log_norm = 0.0, log_lo = 0.0, log_hi = 0.0;
    bool ok = false;
};
std::vector<SingleStepRow> single_step_bounds(const BarrierProfile& p, const SparseScales& s,
                                              const std::vector<double>& E_grid);

/// Elliptic conjugation bound: free products at energy E in (-2,2) satisfy
/// 1 <= ||Phi|| <= C(E) with C(E) = sqrt((2+|E|)/(2-|E|)).
double free_stretch_bound(double E);

struct FreeStretchRow {
    double energy = 0.0;
    std::int64_t max_len = 0;
    double min_log_norm = 0.0, max_log_norm = 0.0, log_bound = 0.0;
    bool ok = false;
};
/// Scans every free-product length in [1, max_len] per energy.
std::vector<FreeStretchRow> free_stretch_check(const std::vector<double>& E_grid,
                                               std::int64_t max_len);

struct ExpBoundRow {
    int n = 0;
    std::int64_t m = 0;
    double energy = 0.0;
    double log_norm = 0.0, log_lower = 0.0, log_upper = 0.0;
    bool within = false;
};

struct ExpBoundReport {
    double eps = 0.0;
    std::vector<ExpBoundRow> rows;
    std::vector<int> ns;               // distinct barrier indices, sorted
    std::vector<double> lower_margin;  // min over rows of log_norm - log_lower
    std::vector<double> upper_margin;  // min over rows of log_upper - log_norm
};

/// ln ||Phi_m(E)|| against the sandwich
///   alpha (ln L_n - ln b) - eps ln b <= ln ||Phi_m|| <= alpha (ln L_n + ln b) + eps ln b
/// with b = beta^{-1}(L_n), alpha = ln beta(L_n) / ln L_n, for m sampled
/// geometrically in [L_n, L_{n+1}).  The sandwich only holds for n large, so
/// violations are reported in the margins, never thrown.
ExpBoundReport expbound_check(const BarrierProfile& p, const SparseScales& s,
                              const std::vector<double>& E_grid, double eps,
                              const std::vector<int>& n_range, int m_samples = 8,
                              std::int64_t max_steps = 10000000);

struct FnDeltaResult {
    int n = 0;
    double delta = 0.0;
    double eps = 0.0;
    std::vector<double> l;
    std::vector<double> log_F;
    std::vector<int> case_id;        // 1 if l <= boundary, else 2
    double log_min = 0.0;            // min of log_F over the grid
    double l_at_min = 0.0;
    double log_case_boundary = 0.0;  // ln(D_n C_n L_n^{-2 eps})
};

/// F_{n,delta}(l) = (A_n + l B_n) / beta^{-1}((C_n + l D_n) m (ln m)^2)^{1-delta},
/// m = l + L_n - 1, with A = L_n/b, B = A^{-2 alpha}, C = L_n b, D = C^{2 alpha}
/// all carried in logs.  eps only places the case-1/case-2 marker (the
/// boundary's finite-n epsilon is a free parameter).
FnDeltaResult f_n_delta(const BarrierProfile& p, const SparseScales& s, int n, double delta,
                        const std::vector<double>& l_grid, double eps = 0.5);

/// G(i, j, z) of the half-line operator via truncated tridiagonal solves,
/// doubling the box until the value settles to relative 1e-10 (BoxTooSmall
/// if it never does).  Im z > 0 required.  Passing n_trunc > 0 pins the box.
std::complex<double> green_function(const HalfLineOperator& H, std::int64_t i, std::int64_t j,
                                    std::complex<double> z, std::int64_t n_trunc = 0);

struct GreenIdentityRow {
    std::int64_t n = 0;
    std::complex<double> full;  // G(1, n, z)
    double rel_err_split = 0.0;     // G(1,n) vs -G(1,L_k-1) G'_k(L_k,n)
    double rel_err_site = 0.0;      // G'_k(L_k,n) vs -G'_k(L_k+1,n)/(V-z)
    double rel_err_combined = 0.0;  // G(1,n) vs G(1,L_k-1) G'_k(L_k+1,n)/(V-z)
};

/// Checks the resolvent factorization across barrier k: G'_k is the Green
/// function of the operator decoupled at the (L_k - 1, L_k) bond, i.e. the
/// half-line starting at L_k, computed by an independent solve.
std::vector<GreenIdentityRow> green_identity_check(const BarrierProfile& p,
                                                   const SparseScales& s, int k,
                                                   const std::vector<std::int64_t>& ns,
                                                   std::complex<double> z);

/// G(t) = 1/beta^{-1}(1/t^2).
GaugeFunction barrier_gauge(const BarrierProfile& p);
/// beta^{-1}(1/t^2)^{delta - 1}, delta in (0,1): the continuity-side gauge.
GaugeFunction barrier_gauge_lower(const BarrierProfile& p, double delta);
/// 1/(b (ln b)^{1+delta}) with b = beta^{-1}(1/t^2): the singularity-side gauge.
GaugeFunction barrier_gauge_upper(const BarrierProfile& p, double delta);

}  // namespace specdim
