#pragma once

#include <vector>

/// Tail-trend classifier shared by every limit-style verdict in the library
/// (gauge comparison, cover-sum growth, scaling reports, envelope checks).
/// All asymptotic claims are decided by the same finite-scale instrument and
/// carry a fourth outcome instead of a guess.
namespace specdim {

enum class Trend { Increasing, Decreasing, Stable, Undetermined };

struct TrendOptions {
    double slope_tol = 0.1;     // log units per decade of abscissa
    double band = 2.0;          // max tail spread for a Stable verdict, log units
    double tail_fraction = 0.5; // portion of the grid the verdict may use
};

struct TrendReport {
    Trend cls = Trend::Undetermined;
    double slope = 0.0;   // least-squares slope of y against log10(x) over the tail
    double spread = 0.0;  // max - min of y over the tail
    std::size_t tail_begin = 0;
};

/// x must be positive and strictly increasing.  y values of -inf (empty mass,
/// dead branches) force Undetermined unless the finite part already decides.
TrendReport classify_trend(const std::vector<double>& x, const std::vector<double>& y,
                           const TrendOptions& opt = {});

}  // namespace specdim
