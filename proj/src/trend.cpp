#include "specdim/trend.hpp"

#include <algorithm>
#include <cmath>

#include "specdim/error.hpp"

namespace specdim {

TrendReport classify_trend(const std::vector<double>& x, const std::vector<double>& y,
                           const TrendOptions& opt) {
    require(x.size() == y.size(), Err::InvalidGrid, "trend: grid/value size mismatch");
    require(x.size() >= 4, Err::InvalidGrid, "trend: need at least 4 samples");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        require(x[i] > 0.0 && x[i] < x[i + 1], Err::InvalidGrid,
                "trend: abscissa must be positive and strictly increasing");

    const std::size_t n = x.size();
    std::size_t tail = std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(n * opt.tail_fraction)));
    tail = std::min(tail, n);

    TrendReport rep;
    rep.tail_begin = n - tail;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double lo = y[rep.tail_begin], hi = y[rep.tail_begin];
    for (std::size_t i = rep.tail_begin; i < n; ++i) {
        if (!std::isfinite(y[i])) return rep;  // Undetermined
        double lx = std::log10(x[i]);
        sx += lx;
        sy += y[i];
        sxx += lx * lx;
        sxy += lx * y[i];
        lo = std::min(lo, y[i]);
        hi = std::max(hi, y[i]);
    }
    const double m = static_cast<double>(tail);
    const double denom = m * sxx - sx * sx;
    if (denom <= 0.0) return rep;
    rep.slope = (m * sxy - sx * sy) / denom;
    rep.spread = hi - lo;

    if (rep.slope > opt.slope_tol)
        rep.cls = Trend::Increasing;
    else if (rep.slope < -opt.slope_tol)
        rep.cls = Trend::Decreasing;
    else if (rep.spread <= opt.band)
        rep.cls = Trend::Stable;
    return rep;
}

}  // namespace specdim
