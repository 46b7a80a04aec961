#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specdim/gauge.hpp"
#include "specdim/measure.hpp"

/// Quantum dynamics on finite truncations of Z^nu (nu = 1 primary): exact
/// eigenpair time averaging, UrhoH certification of truncated spectral
/// measures, and the time-averaged correlation/compact/moment bounds they
/// imply.
namespace specdim {

struct LatticeSite {
    std::int64_t x = 0;
    std::int64_t y = 0;
};

/// (H psi)(n) = hopping * sum_{|n-m|=1} psi(m) + V(n) psi(n), truncated to a
/// finite box: nu = 1 full line {|n| <= N} or half-line [1, N], nu = 2 square
/// box {max(|x|,|y|) <= N}.  The truncated matrix is exactly symmetric.
struct LatticeHamiltonian {
    int nu = 1;
    int box_radius = 0;
    bool half_line = false;  // nu = 1 only
    double hopping = 1.0;    // 0 turns hopping off (diagonal H)
    std::string potential_name = "zero";
    std::function<double(LatticeSite)> potential;  // empty: V = 0
};

std::vector<LatticeSite> enumerate_sites(const LatticeHamiltonian& h);
std::size_t site_index(const LatticeHamiltonian& h, LatticeSite n);
std::vector<double> delta_state(const LatticeHamiltonian& h, LatticeSite n);
/// Box radius that keeps a leakage budget of 1e-6 for free-line evolution up
/// to time T (light cone speed 2 plus the Airy spreading of the front).
int ballistic_radius(double T);

/// Eigendecomposition of the truncated H plus the initial state in both
/// bases.  Built by make_plan, which renormalizes psi and verifies the
/// reconstruction H = Q Lambda Q^T within 1e-9 relative on probe vectors.
struct EvolutionPlan {
    LatticeHamiltonian h;
    std::vector<LatticeSite> sites;    // basis enumeration
    std::vector<double> site_moment1;  // |n| per site, Euclidean
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> modes;         // column-major dim x dim, column j = eigenvector j
    std::vector<double> psi_sites;     // unit norm
    std::vector<double> psi_modes;
    double leakage_budget = 1e-6;
    std::size_t dim = 0;
};

EvolutionPlan make_plan(const LatticeHamiltonian& h, std::vector<double> psi_sites,
                        double leakage_budget = 1e-6);

struct Observable {
    enum class Kind { Moment, Projection, RankOne, EnergyFunction };
    Kind kind = Kind::Moment;
    double moment = 2.0;                      // |X|^moment
    int radius = 0;                           // P_N: Euclidean |n| <= radius
    std::vector<double> phi;                  // |phi><phi|, phi on sites
    std::function<double(double)> energy_fn;  // f(H), diagonal in the modes
};

Observable moment_observable(double m);
Observable projection_observable(int radius);
Observable rank_one_observable(std::vector<double> phi_sites);
Observable energy_function_observable(std::function<double(double)> f);

/// <<A>>_T by the exact eigenpair kernel (1/T) int_0^T e^{i(Ej-Ek)t} dt =
/// sinc((Ej-Ek)T); no time quadrature.  Each T is checked for unitarity and
/// for boundary mass (outside radius N - buffer) within the leakage budget;
/// LeakageExceeded demands a larger box.  The grid variant shares the mode
/// transform of the observable across the whole grid.
double evolve_and_average(const EvolutionPlan& plan, const Observable& obs, double T);
std::vector<double> evolve_and_average(const EvolutionPlan& plan, const Observable& obs,
                                       const std::vector<double>& T_grid);

std::vector<double> site_populations(const EvolutionPlan& plan, double T);  // |psi(T, n)|^2
double boundary_mass(const EvolutionPlan& plan, double T);

/// Spectral measure of a site-basis state in the truncated eigenbasis:
/// atoms (E_j, <phi_j, v>^2), near-degenerate energies merged.  The
/// resolution floor is twice the largest eigenvalue gap: below that scale
/// the truncation's atomicity is an artifact and no continuity claim
/// survives.
SpectralMeasure state_spectral_measure(const EvolutionPlan& plan);
SpectralMeasure state_spectral_measure(const EvolutionPlan& plan,
                                       const std::vector<double>& v_sites);

struct UphCertificate {
    bool is_uph = false;
    double constant = 0.0;         // sup over tested intervals of mu(I)/rho(|I|)
    std::vector<double> lengths;   // tested lengths, descending
    std::vector<double> sup_ratio; // per length
    double slope = 0.0;            // growth of ln sup_ratio as scales refine
};

/// Scans mu(I)/rho(|I|) over a center-swept interval grid (uniform centers
/// plus every atom position).  Certifies UrhoH at the tested scales with
/// constant = the sup unless the ratio grows as scales refine; refuses to
/// test lengths below the measure's resolution floor.
UphCertificate uph_certificate(const SpectralMeasure& mu, const GaugeFunction& rho,
                               const std::vector<double>& lengths, int centers_per_length = 257);

/// Hypothesis for the dynamical bounds: "P_{rho c} psi != 0" replaced by a
/// UrhoH certificate of the state's truncated spectral measure restricted to
/// an energy window (the component surrogate).  window_lo >= window_hi means
/// the full measure.
struct UphHypothesis {
    GaugeFunction rho;
    std::vector<double> lengths;
    double window_lo = 0.0, window_hi = 0.0;
};

struct HypothesisGate {
    UphCertificate cert;
    double component_mass = 0.0;  // ||psi_1||^2 of the windowed component
};

/// Fitted-constant headroom allowed over the certificate constant: the
/// correlation bound's universal factor is not made explicit, so the pass
/// verdict requires the single fitted constant to stay within this factor
/// of the certified one (shape exactness is carried by the envelope rows).
inline constexpr double kEnvelopeHeadroom = 64.0;

struct CorrelationRow {
    std::size_t phi_index = 0;
    double T = 0.0;
    double average = 0.0;   // <|<phi, psi(t)>|^2>_T, closed form
    double envelope = 0.0;  // fitted_C * rho(1/T)
    bool ok = false;
};

struct CorrelationReport {
    HypothesisGate gate;
    double fitted_C = 0.0;  // sup of average / rho(1/T)
    double headroom = 0.0;  // fitted_C / certificate constant
    std::vector<CorrelationRow> rows;
    bool pass = false;
};

/// Time-averaged overlap bound <|<phi, psi(t)>|^2>_T < C rho(1/T) for every
/// ||phi|| <= 1.  NotUpH when the hypothesis gate fails.
CorrelationReport check_correlation_bound(const EvolutionPlan& plan,
                                          const std::vector<std::vector<double>>& phis,
                                          const UphHypothesis& hyp,
                                          const std::vector<double>& T_grid);

struct SingularTriple {
    double value = 0.0;         // singular value, > 0
    std::vector<double> left;   // A = sum value |left><right| on sites
    std::vector<double> right;
};

struct CompactRow {
    double T = 0.0;
    double average_bound = 0.0;  // Cauchy-Schwarz majorant of <|<A>|>_T
    double envelope = 0.0;       // (headroom C)^{1/p} ||A||_p rho(1/T)^{1/p}
    bool ok = false;
};

struct CompactReport {
    HypothesisGate gate;
    double schatten = 0.0;  // ||A||_p = (sum value^p)^{1/p}
    std::vector<CompactRow> rows;
    bool all_ok = false;
};

/// Compact-operator average bound <|<A>|>_T < C^{1/p} ||A||_p rho(1/T)^{1/p}.
/// The reported per-T value is the closed-form Cauchy-Schwarz majorant
/// sum_n E_n sqrt(L(left_n) L(right_n)) >= <|<A>|>_T, so compliance of the
/// majorant verifies the bound a fortiori.
CompactReport check_compact_average(const EvolutionPlan& plan,
                                    const std::vector<SingularTriple>& triples, int p,
                                    const UphHypothesis& hyp, const std::vector<double>& T_grid);

struct MomentRow {
    double T = 0.0;
    double moment = 0.0;    // <<|X|^m>>_T
    double envelope = 0.0;  // fitted_C * rho(1/T)^{-m/nu}
    double n_t = 0.0;       // proof's crossing radius, audit only
    bool ok = false;
};

struct MomentReport {
    HypothesisGate gate;
    double fitted_C = 0.0;           // largest single constant the envelope supports
    double fitted_exponent = 0.0;    // LS slope of ln moment against ln T
    double envelope_exponent = 0.0;  // slope of ln rho(1/T)^{-m/nu} against ln T
    std::vector<MomentRow> rows;
    bool pass = false;
};

/// Moment lower bound <<|X|^m>>_T > C rho(1/T)^{-m/nu} under the certified
/// hypothesis (HypothesisFailed otherwise).  Reports the single fitted C,
/// the growth-exponent comparison (pass needs fitted >= envelope - 0.1), and
/// the proof's N_T = (mass^2/(64 C1 c_nu rho(1/T)))^{1/nu} crossing radius
/// with C1 = certificate constant (order-only audit trail).
MomentReport check_moment_lower_bound(const EvolutionPlan& plan, const UphHypothesis& hyp,
                                      double m, const std::vector<double>& T_grid);

struct Complementarity {
    double inside = 0.0;   // <||P_N psi(t)||^2>_T
    double outside = 0.0;  // <||(1 - P_N) psi(t)||^2>_T
};
Complementarity complementarity_check(const EvolutionPlan& plan, int radius, double T);

struct VectorSpaceCheck {
    double c1 = 0.0, c2 = 0.0;      // certificate constants of psi_1, psi_2
    double bound_constant = 0.0;    // c1 (|a|^2 + |ab|) + c2 (|b|^2 + |ab|)
    std::vector<double> lengths;
    std::vector<double> sup_ratio;  // of mu_phi over the same grid
    bool ok = false;
};

/// The vector-space bound mu_phi(I) <= (C1(|a|^2+|ab|) + C2(|b|^2+|ab|))
/// rho(|I|) for phi = a psi_1 + b psi_2, with all three measures tested on
/// one interval grid.
VectorSpaceCheck vector_space_bound_check(const EvolutionPlan& plan,
                                          const std::vector<double>& psi1_sites,
                                          const std::vector<double>& psi2_sites, double a,
                                          double b, const GaugeFunction& rho,
                                          const std::vector<double>& lengths);

struct ContinuitySplit {
    SpectralMeasure uph_part;       // the density components
    SpectralMeasure singular_part;  // the atoms; total mass < eps
    UphCertificate cert;            // of the UrhoH part
};

/// Constructive decomposition mu = mu_1 + mu_2 with mu_2(R) < eps and mu_1
/// UrhoH, for measures that are explicit atomic+AC mixtures: atoms go to
/// mu_2 (their mass must fit the eps budget), densities to mu_1, which must
/// certify.  General singular-continuous decompositions are out of scope.
ContinuitySplit continuity_split(const SpectralMeasure& mu, const GaugeFunction& rho, double eps,
                                 const std::vector<double>& lengths);

}  // namespace specdim
