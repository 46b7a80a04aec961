#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "specdim/error.hpp"
#include "specdim/gauge.hpp"
#include "specdim/halfline.hpp"

using namespace specdim;

namespace {

template <class F>
Err thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Err::InvalidGrid;
}

// deterministic bounded "random" potential, |V| <= 2
Potential hash_potential(double amp = 2.0) {
    Potential p;
    p.name = "hash";
    p.v = [amp](std::int64_t n) {
        std::uint64_t x = static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ull;
        x ^= x >> 31;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        return amp * (2.0 * (x >> 11) * 0x1.0p-53 - 1.0);
    };
    return p;
}

std::vector<double> double_grid(double lo, double hi) {
    std::vector<double> g;
    for (double v = lo; v <= hi; v *= 2.0) g.push_back(v);
    return g;
}

}  // namespace

TEST_CASE("free transfer growth matches the spectral radius") {
    HalfLineOperator H{constant_potential(0.0)};
    // E = 3: T = [[3,-1],[1,0]], top eigenvalue (3+sqrt(5))/2
    double gamma = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    ScaledMatrix2 m = transfer(H, 3.0, 2000);
    CHECK(m.log_opnorm / 2000.0 == doctest::Approx(gamma).epsilon(1e-3));

    LyapunovResult r = upper_lyapunov(H, 3.0, geometric_schedule(100, 100000));
    CHECK(r.estimate == doctest::Approx(gamma).epsilon(1e-4));
    CHECK(r.positive);
    CHECK(r.det_drift < 1e-10);
}

TEST_CASE("constant barrier has the closed-form exponent") {
    HalfLineOperator H{constant_potential(5.0)};
    // E = 0: T = [[-5,-1],[1,0]], |eigenvalue| = (5+sqrt(21))/2
    double gamma = std::log((5.0 + std::sqrt(21.0)) / 2.0);
    LyapunovResult r = upper_lyapunov(H, 0.0, geometric_schedule(100, 100000));
    CHECK(r.estimate == doctest::Approx(gamma).epsilon(1e-4));
    CHECK(r.positive);
}

TEST_CASE("exponent vanishes inside the free band") {
    HalfLineOperator H{constant_potential(0.0)};
    std::vector<double> energies;
    for (int i = 0; i < 5; ++i) energies.push_back(-1.9 + i * (3.8 / 4.0));
    auto pts = lyapunov_scan(H, energies, 100000);
    for (const auto& p : pts) {
        CHECK(p.estimate < 0.01);
        CHECK_FALSE(p.positive);
    }
}

TEST_CASE("determinant and wronskian survive a million steps") {
    HalfLineOperator H{hash_potential()};
    TransferProduct tp(H, 0.7);
    for (int i = 0; i < 1000000; ++i) tp.step();
    CHECK(std::fabs(tp.log_det_drift()) < 1e-8);
    CHECK(tp.det_sign() == 1);
    CHECK(tp.log_frobenius() >= tp.log_opnorm());

    SolutionPair sp = solve_u1_u2(H, 0.7, 1000001, {1000000.0});
    CHECK(sp.wronskian[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("free solutions are the chebyshev recursion") {
    HalfLineOperator H{constant_potential(0.0)};
    double theta = M_PI / 5.0;
    double E = 2.0 * std::cos(theta);
    SolutionPair sp = solve_u1_u2(H, E, 64, {7.0, 20.0});
    // u1(n) = sin(n theta)/sin(theta); n = 7 keeps sin(n theta) well off zero
    double u7 = std::sin(7.0 * theta) / std::sin(theta);
    CHECK(sp.u1.log_u[0] == doctest::Approx(std::log(std::fabs(u7))).epsilon(1e-10));
    CHECK(sp.u1.sign_u[0] == (u7 > 0 ? 1 : -1));
    CHECK(sp.wronskian[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sp.wronskian[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("boundary phase swaps the solution roles") {
    HalfLineOperator H{constant_potential(0.0), M_PI / 2.0};
    SolutionPair sp = solve_u1_u2(H, 0.9, 200, {100.0});
    CHECK(sp.wronskian[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("subordinacy functional separates the gauges on the free line") {
    HalfLineOperator H{constant_potential(0.0)};
    auto L = double_grid(64.0, 100000.0);

    // both solutions bounded: rho(1/(||u1|| ||u2||)) ||u1||^2 ~ const at power(1)
    SubordinacyResult stable = subordinacy_functional(H, 1.0, make_power(1.0), L);
    CHECK(stable.verdict == SubordinacyVerdict::BoundedAway);

    // power(2) kills the functional
    SubordinacyResult dead = subordinacy_functional(H, 1.0, make_power(2.0), L);
    CHECK(dead.verdict == SubordinacyVerdict::TendsToZero);
    CHECK(to_string(dead.verdict) == "TendsToZero");
}

TEST_CASE("transfer sums grow linearly on the free line") {
    HalfLineOperator H{constant_potential(0.0)};
    auto L = double_grid(64.0, 100000.0);
    TransferSumResult r =
        transfer_sum_criterion(H, 1.0, [](double l) { return std::log(l); }, L);
    REQUIRE(r.lengths.size() == L.size());
    // sum_{n<=L} ||Phi_n||_F^2 >= 2L since det = 1
    CHECK(r.limsup_log_ratio >= std::log(2.0) - 1e-9);
    CHECK(r.limsup_log_ratio < 4.0);
}

TEST_CASE("schnol ratio decays for bounded solutions") {
    HalfLineOperator H{constant_potential(0.0)};
    SchnolResult r = schnol_trace(H, 1.0, 0.5, double_grid(16.0, 100000.0));
    CHECK(r.trend == Trend::Decreasing);
}

TEST_CASE("length scale solves the norm product equation") {
    HalfLineOperator H{constant_potential(0.0)};
    LengthScaleResult r = length_scale(H, 1.0, 1e-4);
    CHECK(r.log_product == doctest::Approx(std::log(5000.0)).epsilon(1e-4));
    CHECK(r.L > 10.0);
    CHECK(thrown_code([&] { length_scale(H, 1.0, 1e-300, 1000); }) == Err::LengthNotReached);
}

TEST_CASE("schedules are geometric, capped, and deduplicated") {
    auto s = geometric_schedule(10, 100, 2.0);
    REQUIRE(s.size() == 5);
    CHECK(s.front() == 10);
    CHECK(s.back() == 100);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
    CHECK(thrown_code([] { geometric_schedule(100, 10); }) == Err::BadParams);
}

TEST_CASE("bound gauges reduce to the named families") {
    auto grid = default_s_grid(20.0);
    CHECK(compare(bound_gauge(BoundGaugeKind::RhoBeta, {}, 1.0), make_rho_beta(1.0), grid) ==
          Ordering::Equivalent);
    CHECK(compare(bound_gauge(BoundGaugeKind::FDelta, {}, 0.5), make_f_delta(0.5), grid) ==
          Ordering::Equivalent);

    // f(L) = L^2: g(f^{-1}(t^{-2})) = g(1/t) = t (ln(1/t))^{-(1+delta)}
    auto log_f = [](double w) { return 2.0 * w; };  // w = ln L
    GaugeFunction fg = bound_gauge(BoundGaugeKind::FromGrowth, log_f, 0.5, 1.0);
    GaugeFunction ref;
    ref.name = "ref";
    ref.s_min = 2.0;
    ref.log_form = [](double s) { return -s - 1.5 * std::log(s); };
    CHECK(compare(fg, ref, default_s_grid(std::max(fg.s_min, ref.s_min))) ==
          Ordering::Equivalent);
}

TEST_CASE("potential builders") {
    Potential t = table_potential({5.0, 7.0}, -1.0);
    CHECK(t.v(1) == 5.0);
    CHECK(t.v(2) == 7.0);
    CHECK(t.v(3) == -1.0);  // fill value past the table
    HalfLineOperator H{constant_potential(2.0), 0.0};
    CHECK_FALSE(H.neumann());  // neumann means theta == pi/2
    CHECK(H.effective_v(1) == 2.0);
    CHECK(HalfLineOperator{constant_potential(2.0), M_PI / 2.0}.neumann());
    HalfLineOperator Ht{constant_potential(2.0), 0.3};
    CHECK_FALSE(Ht.neumann());
    CHECK(Ht.effective_v(1) != 2.0);  // theta shift folds into site 1
    CHECK(Ht.effective_v(2) == 2.0);
}
