#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "specdim/error.hpp"
#include "specdim/gauge.hpp"
#include "specdim/measure.hpp"

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

std::vector<double> down_grid(double hi, double lo, int n) {
    std::vector<double> g(n);
    double r = std::pow(lo / hi, 1.0 / (n - 1));
    double v = hi;
    for (int i = 0; i < n; ++i, v *= r) g[i] = v;
    return g;
}

}  // namespace

TEST_CASE("atom bookkeeping and open-interval semantics") {
    SpectralMeasure mu = finite_atoms({{1.0, 0.25}, {0.0, 0.5}, {2.0, 0.25}});
    CHECK(mu.finalized());
    CHECK(mu.atoms.front().pos == 0.0);            // sorted on finalize
    CHECK(mu.total_mass() == doctest::Approx(1.0));
    CHECK(mu.interval_mass(0.0, 2.0) == doctest::Approx(0.25));  // endpoints excluded
    CHECK(mu.interval_mass(-0.1, 2.1) == doctest::Approx(1.0));
    CHECK(mu.ball_mass(0.0, 0.5) == doctest::Approx(0.5));  // open ball holds its center
    CHECK(mu.ball_mass(0.0, 1.5) == doctest::Approx(0.75));
    CHECK(mu.support_lo() == 0.0);
    CHECK(mu.support_hi() == 2.0);

    CHECK(thrown_code([] { finite_atoms({{0.0, -1.0}}); }) == Err::BadParams);
}

TEST_CASE("density builders integrate in closed form") {
    SpectralMeasure leb = lebesgue(0.0, 1.0);
    CHECK(leb.total_mass() == doctest::Approx(1.0));
    CHECK(leb.ball_mass(0.5, 0.1) == doctest::Approx(0.2));
    CHECK(leb.ball_mass(0.0, 0.1) == doctest::Approx(0.1));  // clipped at the edge
    CHECK(leb.atom_mass() == 0.0);

    SpectralMeasure sc = semicircle();
    CHECK(sc.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sc.interval_mass(-2.0, 0.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sc.support_lo() == doctest::Approx(-2.0));

    SpectralMeasure c = cantor_midpoint_atoms(8);
    CHECK(c.atoms.size() == 256);
    CHECK(c.total_mass() == doctest::Approx(1.0));
    CHECK(c.resolution_floor == doctest::Approx(std::pow(3.0, -8.0)));

    SpectralMeasure m = mix(leb, 0.3, sc, 0.7);
    CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.interval_mass(-3.0, 0.0) == doctest::Approx(0.35).epsilon(1e-6));
}

TEST_CASE("interval mass agrees with a direct-sum oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(-3.0, 3.0), mass(0.01, 1.0);
    std::vector<Atom> atoms;
    for (int i = 0; i < 200; ++i) atoms.push_back({pos(rng), mass(rng)});
    SpectralMeasure mu = finite_atoms(atoms);

    for (int q = 0; q < 100; ++q) {
        double a = pos(rng), b = pos(rng);
        if (a > b) std::swap(a, b);
        double direct = 0.0;
        for (const auto& at : atoms)
            if (at.pos > a && at.pos < b) direct += at.mass;
        CHECK(mu.interval_mass(a, b) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("local scaling verdicts on the model measures") {
    auto eps = down_grid(1e-1, 1e-8, 15);

    ScalingReport atom = local_scaling(dirac(0.0), 0.0, make_power(0.5), eps);
    CHECK(atom.verdict == ScalingVerdict::Diverges);

    ScalingReport flat = local_scaling(lebesgue(0.0, 1.0), 0.5, make_power(1.0), eps);
    CHECK(flat.verdict == ScalingVerdict::BoundedNonzero);
    CHECK(flat.log_ratio.front() == doctest::Approx(std::log(2.0)));

    ScalingReport thin = local_scaling(lebesgue(0.0, 1.0), 0.5, make_power(0.5), eps);
    CHECK(thin.verdict == ScalingVerdict::TendsToZero);

    ScalingReport off = local_scaling(lebesgue(0.0, 1.0), 5.0, make_power(1.0), eps);
    CHECK(off.verdict == ScalingVerdict::TendsToZero);  // no mass near x

    CHECK(thrown_code([&] {
              auto up = eps;
              std::reverse(up.begin(), up.end());
              local_scaling(dirac(0.0), 0.0, make_power(0.5), up);
          }) == Err::InvalidGrid);
    CHECK(thrown_code([&] {
              local_scaling(cantor_midpoint_atoms(4), 0.5, make_power(0.5), eps);
          }) == Err::InvalidGrid);  // grid dips below the resolution floor
}

TEST_CASE("classification by mass-weighted vote") {
    GaugeFunction rho = make_power(1.0);
    CHECK(classify(lebesgue(0.0, 1.0), rho).verdict == MeasureClass::Continuous);
    CHECK(classify(finite_atoms({{0.0, 0.5}, {1.0, 0.5}}), rho).verdict ==
          MeasureClass::Singular);

    ClassifyReport mixed = classify(mix(dirac(0.25), 0.5, lebesgue(0.0, 1.0), 0.5), rho);
    CHECK(mixed.verdict == MeasureClass::Mixed);
    CHECK(mixed.mass_diverging == doctest::Approx(0.5).epsilon(0.1));
    CHECK(mixed.mass_diverging + mixed.mass_bounded + mixed.mass_vanishing +
              mixed.mass_undetermined == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("measure dimension of lebesgue is the full power index") {
    Interval idx;
    idx.lo = 0.0;
    idx.hi = 1.0;
    MeasureDimensionResult r =
        measure_dimension(lebesgue(0.0, 1.0), power_family(idx), 1e-3);
    REQUIRE(r.upper.kind == DimKind::Member);
    REQUIRE(r.lower.kind == DimKind::Member);
    CHECK(r.upper.alpha == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(r.lower.alpha == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("measure dimension of the cantor approximation") {
    Interval idx;
    idx.lo = 0.0;
    idx.hi = 1.0;
    MeasureDimensionResult r =
        measure_dimension(cantor_midpoint_atoms(12), power_family(idx), 1e-2);
    double target = std::log(2.0) / std::log(3.0);
    REQUIRE(r.upper.kind == DimKind::Member);
    REQUIRE(r.lower.kind == DimKind::Member);
    CHECK(r.upper.alpha == doctest::Approx(target).epsilon(0.15));
    CHECK(r.lower.alpha == doctest::Approx(target).epsilon(0.15));
}
