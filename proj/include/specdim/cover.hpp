#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specdim/gauge.hpp"

namespace specdim {

/// One class of intervals inside a generation: `count = e^{log_count}`
/// congruent intervals of log-length `log_len = ln(1/(b-a))`.  Grouping by
/// class is what lets self-similar trees reach generation 60 (2^60 intervals)
/// without materializing anything.  `left` is the left endpoint when the tree
/// carries positions (NaN otherwise; a class then has count 1).
struct IntervalClass {
    double left;
    double log_len;
    double log_count = 0.0;
};

using Generation = std::vector<IntervalClass>;

/// Nested interval scheme: every interval of generation k+1 lies inside an
/// interval of generation k.  Explicit trees validate containment on
/// construction; rule-built trees are nested by construction.
struct CoverTree {
    std::string name;
    std::vector<Generation> stored;                     // stored[k] = generation k
    std::function<Generation(int)> rule;                // optional lazy generator
    int max_generation = 0;

    Generation generation(int k) const;
};

CoverTree cantor_tree(double ratio = 1.0 / 3.0, int max_generation = 400);
/// Generation k: 2^k intervals of length e^{-2^k}.
CoverTree log_cantor_tree(int max_generation = 60);
CoverTree explicit_tree(std::vector<Generation> generations, bool validate_containment = true);

/// ln sum over generation-k intervals of rho(|F_i|), computed as a
/// log-sum-exp of log_count + ln rho at log-length.  OpenMP kernel; the
/// serial variant is the reference implementation for testing.
double cover_sum(const CoverTree& tree, const GaugeFunction& rho, int k);
double cover_sum_serial(const CoverTree& tree, const GaugeFunction& rho, int k);

enum class CoverVerdict { Infinite, Finite, Zero, Undetermined };
const char* to_string(CoverVerdict v);

struct CoverTrace {
    std::vector<int> k;
    std::vector<double> log_sum;
    double slope = 0.0;   // log units per generation over the tail
    double spread = 0.0;
    CoverVerdict verdict = CoverVerdict::Undetermined;
};

struct CoverOptions {
    double delta = 0.3;  // per-generation growth threshold
    double band = 2.0;   // stabilization band, log units
};

/// Verdict on mu^rho of the limit set from the growth trend of cover sums
/// over generations [k_min, k_max] (k_max >= k_min + 4).
CoverTrace measure_verdict(const CoverTree& tree, const GaugeFunction& rho, int k_min, int k_max,
                           const CoverOptions& opt = {});

struct SetDimensionResult {
    DimensionValue dim;
    std::vector<std::pair<double, CoverVerdict>> probes;  // alpha -> verdict, in probe order
};

/// Critical index alpha' = sup{alpha : verdict Infinite} located by bisection;
/// inside the verdict dead band the recorded tail slope decides the side.
/// Probes must be order-consistent or NonMonotoneVerdicts is raised.
SetDimensionResult set_dimension(const CoverTree& tree, const CompleteFamily& family, int k_min,
                                 int k_max, double alpha_tol, const CoverOptions& opt = {});

}  // namespace specdim
