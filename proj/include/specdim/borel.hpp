#pragma once

#include <complex>
#include <vector>

#include "specdim/gauge.hpp"
#include "specdim/measure.hpp"

namespace specdim {

/// F(z) = ∫ dμ(x)/(x - z).  Herglotz: Im F > 0 on the upper half plane.
/// Atoms sum directly; Const/Table density pieces integrate in closed form,
/// Semicircle pieces by adaptive quadrature (rel. tol 1e-10).  Real z must
/// stay `margin` away from the support.
std::complex<double> borel_transform(const SpectralMeasure& mu, std::complex<double> z,
                                     double margin = 1e-9);

enum class BoundaryClass { Zero, Bounded, Infinite, Undetermined };
const char* to_string(BoundaryClass c);

struct BoundaryPair {
    double x = 0.0;
    std::vector<double> eps;           // decreasing
    std::vector<double> log_mass_ratio;    // ln( M(x,eps)/rho(eps) )
    std::vector<double> log_borel_ratio;   // ln( (eps/rho(eps)) Im F(x+i eps) )
    BoundaryClass mass_class = BoundaryClass::Undetermined;
    BoundaryClass borel_class = BoundaryClass::Undetermined;
    bool both_resolved = false;
    bool consistent = false;  // same class when both resolved
};

/// Compares the maximal-function channel M(x,eps)/rho(eps) against the
/// boundary channel (eps/rho(eps)) Im F(x+i eps) over one eps grid.  The two
/// limsups land in the same class {0}, (0,inf), {inf} whenever rho(t)/t -> inf,
/// which is checked up front (GaugeNotSubLinear otherwise).
BoundaryPair hausborel_compare(const SpectralMeasure& mu, double x, const GaugeFunction& rho,
                               const std::vector<double>& eps_grid);

struct BooleRow {
    double lambda;
    double level_set_measure;  // |{E : |F(E)| > lambda}|
    double expected;           // 2/lambda
};

struct BooleReport {
    std::vector<BooleRow> rows;
    double max_rel_err = 0.0;
};

/// Exact-identity check |{E : |F_mu(E)| > lambda}| = 2/lambda for purely
/// atomic probability measures, via monotone bisection on each of the 2N
/// level-set branches.
BooleReport boole_check(const SpectralMeasure& mu, const std::vector<double>& lambdas);

}  // namespace specdim
