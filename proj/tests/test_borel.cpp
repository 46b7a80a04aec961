#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "specdim/borel.hpp"
#include "specdim/error.hpp"
#include "specdim/gauge.hpp"
#include "specdim/measure.hpp"

using namespace specdim;
using cplx = std::complex<double>;

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

std::vector<double> down_grid(double hi, double lo, int n) {
    std::vector<double> g(n);
    double r = std::pow(lo / hi, 1.0 / (n - 1));
    double v = hi;
    for (int i = 0; i < n; ++i, v *= r) g[i] = v;
    return g;
}

// adaptive quadrature of w(y)/(y - z) as an independent oracle
cplx quad_transform(const std::function<double(double)>& w, double a, double b, cplx z) {
    using boost::math::quadrature::gauss_kronrod;
    auto re = [&](double y) { return std::real(w(y) / (y - z)); };
    auto im = [&](double y) { return std::imag(w(y) / (y - z)); };
    double r = gauss_kronrod<double, 61>::integrate(re, a, b, 12, 1e-12);
    double i = gauss_kronrod<double, 61>::integrate(im, a, b, 12, 1e-12);
    return {r, i};
}

}  // namespace

TEST_CASE("transform of atoms and boxes matches closed forms") {
    SpectralMeasure atom = dirac(0.3, 2.0);
    cplx z(0.1, 0.05);
    cplx expect = 2.0 / (cplx(0.3) - z);
    CHECK(std::abs(borel_transform(atom, z) - expect) < 1e-14);
    CHECK(borel_transform(atom, {0.0, 1.0}).imag() > 0.0);  // Herglotz

    SpectralMeasure leb = lebesgue(0.0, 1.0);
    cplx zl(0.5, 0.1);
    cplx expect_leb = std::log((1.0 - zl) / (-zl));
    CHECK(std::abs(borel_transform(leb, zl) - expect_leb) < 1e-10);

    // real z off the support is allowed: int_0^1 dy/(y - 2) = -ln 2
    CHECK(borel_transform(leb, {2.0, 0.0}).imag() == 0.0);
    CHECK(borel_transform(leb, {2.0, 0.0}).real() == doctest::Approx(-std::log(2.0)));
}

TEST_CASE("transform of densities matches adaptive quadrature") {
    SpectralMeasure sc = semicircle();
    auto w = [](double y) { return std::sqrt(4.0 - y * y) / (2.0 * M_PI); };
    for (cplx z : {cplx(0.0, 0.5), cplx(1.2, 0.01), cplx(-1.7, 0.2)}) {
        cplx got = borel_transform(sc, z);
        cplx ref = quad_transform(w, -2.0, 2.0, z);
        CHECK(std::abs(got - ref) < 1e-8);
    }
}

TEST_CASE("pole proximity guards real evaluation") {
    CHECK(thrown_code([] { borel_transform(dirac(0.3), {0.3, 0.0}); }) == Err::PoleProximity);
    CHECK(thrown_code([] {
              borel_transform(lebesgue(0.0, 1.0), {0.5, 0.0});
          }) == Err::PoleProximity);
    CHECK(thrown_code([] {
              SpectralMeasure mu;
              borel_transform(mu, {0.0, 1.0});
          }) == Err::BadParams);  // not finalized
}

TEST_CASE("boundary channels agree on resolved instances") {
    auto eps = down_grid(1e-2, 1e-7, 14);

    // atom at the probe point: both channels diverge
    BoundaryPair at = hausborel_compare(dirac(0.0), 0.0, make_power(0.5), eps);
    CHECK(at.mass_class == BoundaryClass::Infinite);
    CHECK(at.borel_class == BoundaryClass::Infinite);
    CHECK(at.consistent);

    // AC point against a sub-linear gauge: both vanish
    BoundaryPair ac = hausborel_compare(lebesgue(0.0, 1.0), 0.5, make_power(0.5), eps);
    CHECK(ac.mass_class == BoundaryClass::Zero);
    CHECK(ac.borel_class == BoundaryClass::Zero);
    CHECK(ac.consistent);

    // atom against the log-power gauge: both grow like ln(1/eps)
    BoundaryPair lg = hausborel_compare(dirac(0.0), 0.0, make_log_power(1.0), eps);
    CHECK(lg.mass_class == BoundaryClass::Infinite);
    CHECK(lg.borel_class == BoundaryClass::Infinite);
    CHECK(lg.consistent);

    // gauges at or below t itself are refused
    CHECK(thrown_code([&] {
              hausborel_compare(dirac(0.0), 0.0, make_rho_beta(1.0), eps);
          }) == Err::GaugeNotSubLinear);

    // off-support point: mass channel dies
    BoundaryPair off = hausborel_compare(lebesgue(0.0, 1.0), 3.0, make_power(0.5), eps);
    CHECK(off.mass_class == BoundaryClass::Zero);
    CHECK(off.consistent);
}

TEST_CASE("the comparison requires a strictly sub-linear gauge") {
    auto eps = down_grid(1e-2, 1e-7, 14);
    CHECK(thrown_code([&] {
              hausborel_compare(dirac(0.0), 0.0, make_power(1.0), eps);
          }) == Err::GaugeNotSubLinear);
    CHECK(thrown_code([&] {
              hausborel_compare(dirac(0.0), 0.0, make_power(1.5), eps);
          }) == Err::GaugeNotSubLinear);
}

TEST_CASE("level sets of atomic transforms obey the 2/lambda law") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(-1.0, 1.0), mass(0.1, 1.0);
    std::vector<Atom> atoms;
    double tot = 0.0;
    for (int i = 0; i < 5; ++i) {
        atoms.push_back({pos(rng), mass(rng)});
        tot += atoms.back().mass;
    }
    for (auto& a : atoms) a.mass /= tot;

    BooleReport rep = boole_check(finite_atoms(atoms), {5.0, 20.0, 80.0});
    REQUIRE(rep.rows.size() == 3);
    for (const auto& r : rep.rows)
        CHECK(r.level_set_measure == doctest::Approx(2.0 / r.lambda).epsilon(1e-8));
    CHECK(rep.max_rel_err < 1e-8);
}

TEST_CASE("the level-set law needs an atomic probability measure") {
    CHECK(thrown_code([] {
              boole_check(finite_atoms({{0.0, 2.0}}), {10.0});
          }) == Err::NotProbability);
    CHECK(thrown_code([] { boole_check(lebesgue(0.0, 1.0), {10.0}); }) == Err::NotAtomic);
}
