#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "specdim/error.hpp"
#include "specdim/gauge.hpp"

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

const std::vector<double> kGrid = default_s_grid(10.0);

}  // namespace

TEST_CASE("named gauges evaluate their closed forms") {
    GaugeFunction p = make_power(0.5);
    CHECK(p(0.25) == doctest::Approx(0.5));
    CHECK(p.log_form(7.0) == doctest::Approx(-3.5));

    GaugeFunction lp = make_log_power(2.0);
    // t = e^{-s}: rho = s^{-2}
    CHECK(lp.log_form(100.0) == doctest::Approx(-2.0 * std::log(100.0)));

    GaugeFunction fd = make_f_delta(0.5);
    // 1/(s (ln s)^{1.5})
    CHECK(fd.log_form(50.0) == doctest::Approx(-std::log(50.0) - 1.5 * std::log(std::log(50.0))));

    GaugeFunction rb = make_rho_beta(1.0);
    // t^{2/(1+beta)} (ln(1/t))^{-2 beta/(1+beta)} = t s^{-1} at beta = 1
    CHECK(rb.log_form(20.0) == doctest::Approx(-20.0 - std::log(20.0)));
}

TEST_CASE("asymptotic ordering of the standard ladder") {
    // rho Precedes xi iff rho/xi -> infinity at t -> 0+.
    CHECK(compare(make_power(0.5), make_power(1.0), kGrid) == Ordering::Precedes);
    CHECK(compare(make_power(1.0), make_power(0.5), kGrid) == Ordering::Succeeds);
    CHECK(compare(make_power(0.7), make_power(0.7), kGrid) == Ordering::Equivalent);

    // log-powers sit above every positive power
    CHECK(compare(make_log_power(3.0), make_power(0.1), kGrid) == Ordering::Precedes);
    // f_delta lies below (ln(1/t))^{-1} by the extra ln ln factor
    CHECK(compare(make_f_delta(0.5), make_log_power(1.0), kGrid) == Ordering::Succeeds);
    // rho_beta(1) = t/ln(1/t) sits just below power(1)
    CHECK(compare(make_rho_beta(1.0), make_power(1.0), kGrid) == Ordering::Succeeds);
    CHECK(compare(make_rho_beta(1.0), make_power(0.9), kGrid) == Ordering::Succeeds);
    CHECK(compare(make_power(1.1), make_rho_beta(1.0), kGrid) == Ordering::Succeeds);
}

TEST_CASE("pow and stretch algebra") {
    CHECK(compare(stretch_gauge(make_power(0.5), 2.0), make_power(1.0), kGrid) ==
          Ordering::Equivalent);
    CHECK(compare(pow_gauge(make_power(0.35), 2.0), make_power(0.7), kGrid) ==
          Ordering::Equivalent);
    CHECK(compare(pow_gauge(make_log_power(1.0), 2.0), make_log_power(2.0), kGrid) ==
          Ordering::Equivalent);
    // stretching a log-power only changes the constant: (a s)^{-1} ~ s^{-1}
    CHECK(compare(stretch_gauge(make_log_power(1.0), 3.0), make_log_power(1.0), kGrid) ==
          Ordering::Equivalent);
}

TEST_CASE("comparison grid contracts") {
    CHECK(thrown_code([] {
              compare(make_power(1.0), make_power(0.5), {1.0, 2.0, 3.0, 4.0});
          }) == Err::InvalidGrid);
    CHECK(thrown_code([] { geometric_grid(1.0, 0.5, 8); }) == Err::InvalidGrid);
    CHECK(thrown_code([] { geometric_grid(-1.0, 10.0, 8); }) == Err::InvalidGrid);

    auto g = geometric_grid(1.0, 100.0, 9);
    CHECK(g.size() == 9);
    CHECK(g.front() == doctest::Approx(1.0));
    CHECK(g.back() == doctest::Approx(100.0));
    CHECK(g[4] == doctest::Approx(10.0));

    auto d = default_s_grid(100.0);
    CHECK(d.size() == 48);
    CHECK(d.front() == doctest::Approx(160.0));  // max(10, 1.5 s_min + 10)
    CHECK(d.back() / d.front() == doctest::Approx(1e9));
}

TEST_CASE("family dimension case split") {
    Interval idx;
    idx.lo = 0.0;
    idx.hi = 1.0;
    CompleteFamily fam = power_family(idx);

    DimensionValue mid = family_dimension_from_alpha(fam, 0.5);
    CHECK(mid.kind == DimKind::Member);
    CHECK(mid.alpha == doctest::Approx(0.5));
    CHECK(mid.str() == "Member(0.500000)");

    CHECK(family_dimension_from_alpha(fam, -1.0).kind == DimKind::Zero);
    CHECK(family_dimension_from_alpha(fam, 2.0).kind == DimKind::One);
    // closed top end belongs to the family
    CHECK(family_dimension_from_alpha(fam, 1.0).kind == DimKind::Member);
}

TEST_CASE("family members match the standalone builders") {
    Interval idx;
    idx.lo = 0.0;
    idx.hi = 2.0;
    CHECK(compare(power_family(idx).member(0.5), make_power(0.5), kGrid) ==
          Ordering::Equivalent);
    CHECK(compare(log_power_family(idx).member(1.0), make_log_power(1.0), kGrid) ==
          Ordering::Equivalent);
    CHECK(compare(stretched_family(make_log_power(1.0), idx).member(2.0),
                  stretch_gauge(make_log_power(1.0), 2.0), kGrid) == Ordering::Equivalent);
    CHECK(compare(pow_family(make_power(1.0), idx).member(0.5), make_power(0.5), kGrid) ==
          Ordering::Equivalent);
}

TEST_CASE("build_named validates its parameters") {
    GaugeFunction g = build_named("power", {{"alpha", 0.5}});
    CHECK(g.log_form(10.0) == doctest::Approx(-5.0));
    CHECK(build_named("log_power", {{"alpha", 1.0}}).name == make_log_power(1.0).name);

    CHECK(thrown_code([] { build_named("no_such_gauge", {}); }) == Err::UnknownName);
    CHECK(thrown_code([] { build_named("power", {}); }) == Err::BadParams);
    CHECK(thrown_code([] { build_named("G_beta", {}); }) == Err::BadParams);
}
