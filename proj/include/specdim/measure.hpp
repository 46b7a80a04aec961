#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specdim/gauge.hpp"

namespace specdim {

struct Atom {
    double pos;
    double mass;
};

/// Piecewise density component.  Const and Semicircle integrate in closed
/// form; Table is piecewise linear between nodes (also closed form).
struct DensityPiece {
    enum class Kind { Const, Semicircle, Table };
    Kind kind = Kind::Const;
    double a = 0.0, b = 1.0;  // support [a, b]
    double value = 1.0;       // Const height / Semicircle scale
    std::vector<double> xs, ws;

    double weight(double x) const;
    double integral(double x1, double x2) const;  // over [x1,x2] ∩ [a,b]
    double total() const { return integral(a, b); }
};

/// Finite positive Borel measure on the line: finite atom list plus optional
/// piecewise density.  Atoms are kept sorted with prefix masses so ball
/// masses of huge atomic approximations stay O(log n).
struct SpectralMeasure {
    std::vector<Atom> atoms;
    std::vector<DensityPiece> density;
    /// Finest scale at which this object faithfully represents its target
    /// (e.g. the interval length of the deepest generation used to place
    /// approximation atoms).  0 when exact at all scales.
    double resolution_floor = 0.0;

    void finalize();  // sort atoms, build prefix masses
    bool finalized() const { return finalized_; }

    double atom_mass() const;
    double density_mass() const;
    double total_mass() const { return atom_mass() + density_mass(); }

    /// Mass of the open ball (x - eps, x + eps).
    double ball_mass(double x, double eps) const;
    /// Mass of the open interval (a, b).
    double interval_mass(double a, double b) const;

    double min_atom_gap() const;  // +inf with < 2 atoms
    double support_lo() const;
    double support_hi() const;

    std::vector<Atom> atoms_in(double a, double b) const;  // open interval

  private:
    std::vector<double> prefix_;
    bool uniform_mass_ = false;
    bool finalized_ = false;
    double prefix_upto(std::size_t i) const;  // total mass of atoms[0..i)
};

SpectralMeasure dirac(double pos, double mass = 1.0);
SpectralMeasure finite_atoms(std::vector<Atom> atoms);
SpectralMeasure lebesgue(double a, double b, double mass = 1.0);
SpectralMeasure semicircle(double mass = 1.0);
/// Equal weights on the midpoints of the generation-`depth` intervals of the
/// middle-thirds construction on [0,1]; resolution floor 3^{-depth}.
SpectralMeasure cantor_midpoint_atoms(int depth, double mass = 1.0);
SpectralMeasure mix(const SpectralMeasure& a, double wa, const SpectralMeasure& b, double wb);

enum class ScalingVerdict { Diverges, BoundedNonzero, TendsToZero, Undetermined };
const char* to_string(ScalingVerdict v);

struct ScalingReport {
    double x = 0.0;
    std::vector<double> eps;        // decreasing
    std::vector<double> log_ratio;  // ln M(x,eps) - ln rho(eps)
    ScalingVerdict verdict = ScalingVerdict::Undetermined;
    double slope = 0.0;  // per decade of 1/eps
    double spread = 0.0;
};

/// Trend of ln(mu(B(x,eps))/rho(eps)) over a decreasing eps grid that stays
/// at or above the measure's resolution floor.
ScalingReport local_scaling(const SpectralMeasure& mu, double x, const GaugeFunction& rho,
                            const std::vector<double>& eps_grid);

enum class MeasureClass { Singular, Continuous, Mixed, Undetermined };
const char* to_string(MeasureClass c);

struct ClassifyOptions {
    std::size_t points = 64;       // sampling budget
    double atom_floor = 1e-4;      // atoms above this mass are always sampled
    double eta = 0.05;             // mass fraction tolerance in the verdict
    std::vector<double> eps_grid;  // empty: derived from support and floor
};

struct SamplePoint {
    double x;
    double weight;
    ScalingVerdict verdict;
};

struct ClassifyReport {
    MeasureClass verdict = MeasureClass::Undetermined;
    double mass_diverging = 0.0;
    double mass_bounded = 0.0;
    double mass_vanishing = 0.0;
    double mass_undetermined = 0.0;
    std::vector<SamplePoint> samples;
};

/// mu-proportional deterministic sampling (atom quantiles + density
/// quantiles); verdict by mass-weighted vote with tolerance eta.
ClassifyReport classify(const SpectralMeasure& mu, const GaugeFunction& rho,
                        const ClassifyOptions& opt = {});

struct MeasureDimensionResult {
    DimensionValue upper;  // critical index of singularity
    DimensionValue lower;  // critical index of continuity
    std::vector<std::pair<double, MeasureClass>> probes;
};

/// Upper/lower generalized dimensions relative to a family, located by
/// bisection on classify verdicts (checked monotone in alpha).
MeasureDimensionResult measure_dimension(const SpectralMeasure& mu, const CompleteFamily& family,
                                         double alpha_tol, const ClassifyOptions& opt = {});

}  // namespace specdim
