// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations.  Inputs are seeded, so repeated runs time the same work.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "specdim/cover.hpp"
#include "specdim/dynamics.hpp"
#include "specdim/gauge.hpp"
#include "specdim/halfline.hpp"
#include "specdim/logdomain.hpp"

using namespace specdim;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, double max_rel) {
    std::printf("%-24s %10.1f ms %10.1f ms %8.2fx %12.2e\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, max_rel);
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-24s %13s %13s %9s %12s\n", "kernel", "serial", "parallel", "speedup",
                "max rel diff");

    {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-700.0, 40.0);
        std::vector<double> v(1 << 22);
        for (auto& x : v) x = u(rng);
        auto t0 = Clock::now();
        double s = log_sum_exp_serial(v);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        double p = log_sum_exp(v);
        const double tp = ms_since(t0);
        row("log_sum_exp 4M", ts, tp, rel_diff(s, p));
    }

    {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> len(5.0, 60.0), cnt(0.0, 14.0);
        Generation g;
        for (int i = 0; i < 200000; ++i) g.push_back({nan, len(rng), cnt(rng)});
        CoverTree tree = explicit_tree({g}, false);
        GaugeFunction rho = make_power(0.7);
        auto t0 = Clock::now();
        double s = cover_sum_serial(tree, rho, 0);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        double p = cover_sum(tree, rho, 0);
        const double tp = ms_since(t0);
        row("cover_sum 200k", ts, tp, rel_diff(s, p));
    }

    {
        HalfLineOperator H{table_potential({0.4, -1.1, 0.9, 1.7, -0.3}, 0.0), 0.0};
        std::vector<double> energies;
        for (int i = 0; i < 64; ++i) energies.push_back(-1.9 + 3.8 * i / 63.0);
        auto t0 = Clock::now();
        auto s = lyapunov_scan_serial(H, energies, 200000);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        auto p = lyapunov_scan(H, energies, 200000);
        const double tp = ms_since(t0);
        double d = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            d = std::max(d, rel_diff(s[i].estimate, p[i].estimate));
        row("lyapunov_scan 64x2e5", ts, tp, d);
    }

    {
        LatticeHamiltonian h;
        h.nu = 1;
        h.box_radius = 192;
        EvolutionPlan plan = make_plan(h, delta_state(h, {0, 0}));
        Observable x2 = moment_observable(2.0);
        std::vector<double> T;
        for (int i = 0; i < 8; ++i) T.push_back(4.0 + 5.0 * i);
        auto t0 = Clock::now();
        std::vector<double> s(T.size());
        for (std::size_t i = 0; i < T.size(); ++i)
            s[i] = evolve_and_average(plan, x2, T[i]);  // one-T calls: serial over the grid
        const double ts = ms_since(t0);
        t0 = Clock::now();
        auto p = evolve_and_average(plan, x2, T);  // grid call: OpenMP across T
        const double tp = ms_since(t0);
        double d = 0.0;
        for (std::size_t i = 0; i < T.size(); ++i) d = std::max(d, rel_diff(s[i], p[i]));
        row("evolve grid box 192", ts, tp, d);
    }

    return 0;
}
