#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "specdim/borel.hpp"
#include "specdim/error.hpp"
#include "specdim/gauge.hpp"
#include "specdim/measure.hpp"
#include "specdim/rank_one.hpp"

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

struct Instance {
    std::vector<double> E;
    std::vector<double> a;  // probability weights
};

Instance random_instance(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> ue(-2.0, 2.0), ua(0.05, 1.0);
    Instance in;
    in.E.resize(n);
    for (auto& e : in.E) e = ue(rng);
    std::sort(in.E.begin(), in.E.end());
    for (int i = 1; i < n; ++i)
        if (in.E[i] - in.E[i - 1] < 1e-3) in.E[i] = in.E[i - 1] + 1e-3;
    double tot = 0.0;
    in.a.resize(n);
    for (auto& w : in.a) tot += (w = ua(rng));
    for (auto& w : in.a) w /= tot;
    return in;
}

SpectralMeasure to_measure(const Instance& in) {
    std::vector<Atom> atoms(in.E.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i] = {in.E[i], in.a[i]};
    return finite_atoms(std::move(atoms));
}

// eigenvalues of diag(E) + lambda sqrt(a) sqrt(a)^T
std::vector<double> dense_oracle(const Instance& in, double lambda) {
    const int n = static_cast<int>(in.E.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) A(i, i) = in.E[i];
    Eigen::VectorXd s(n);
    for (int i = 0; i < n; ++i) s(i) = std::sqrt(in.a[i]);
    A += lambda * s * s.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

}  // namespace

TEST_CASE("perturbed transform is the aronszajn-krein fraction") {
    std::mt19937_64 rng(23);
    Instance in = random_instance(rng, 8);
    RankOnePerturbation p{to_measure(in), 0.7};
    for (cplx z : {cplx(0.2, 0.3), cplx(-1.0, 0.01), cplx(3.0, 1.0)}) {
        cplx F = borel_transform(p.base, z);
        cplx expect = F / (1.0 + 0.7 * F);
        CHECK(std::abs(perturbed_transform(p, z) - expect) < 1e-12);
        CHECK(perturbed_im(p, z) == doctest::Approx(expect.imag()).epsilon(1e-10));
    }
}

TEST_CASE("perturbed eigenvalues match dense diagonalization") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 6; ++k) {
        const int n = 3 + static_cast<int>(rng() % 30);
        const double lambda = (k % 2 ? -1.0 : 1.0) * (0.3 + 0.4 * (k % 3));
        Instance in = random_instance(rng, n);
        PerturbedSpectrum sp = perturbed_eigenvalues({to_measure(in), lambda});
        std::vector<double> oracle = dense_oracle(in, lambda);

        REQUIRE(sp.eigenvalues.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i)
            CHECK(std::fabs(sp.eigenvalues[i] - oracle[i]) < 1e-10);

        // strict interlacing with the unperturbed atoms
        for (std::size_t i = 0; i < in.E.size(); ++i) {
            if (lambda > 0) {
                CHECK(sp.eigenvalues[i] > in.E[i]);
                if (i + 1 < in.E.size()) CHECK(sp.eigenvalues[i] < in.E[i + 1]);
            } else {
                CHECK(sp.eigenvalues[i] < in.E[i]);
                if (i > 0) CHECK(sp.eigenvalues[i] > in.E[i - 1]);
            }
        }

        // total spectral mass of the cyclic vector is conserved
        double tot = 0.0;
        for (double w : sp.weights) tot += w;
        CHECK(tot == doctest::Approx(1.0).epsilon(1e-10));
    }

    CHECK(thrown_code([] {
              perturbed_eigenvalues({lebesgue(0.0, 1.0), 0.5});
          }) == Err::NotAtomic);
}

TEST_CASE("g function closed forms") {
    SpectralMeasure two = finite_atoms({{0.0, 0.5}, {1.0, 0.5}});
    GValue g = g_function(two, 2.0);
    REQUIRE(g.finite);
    CHECK(g.value == doctest::Approx(0.5 / 4.0 + 0.5 / 1.0));
    CHECK_FALSE(g_function(two, 0.0).finite);  // atom at x

    SpectralMeasure leb = lebesgue(0.0, 1.0);
    CHECK_FALSE(g_function(leb, 0.5).finite);  // density touches x
    GValue off = g_function(leb, 2.0);
    REQUIRE(off.finite);
    CHECK(off.value == doctest::Approx(0.5));  // int_0^1 dy/(2-y)^2
}

TEST_CASE("tail audit of the interval construction") {
    std::vector<double> pos, w;
    for (int n = 1; n <= 64; ++n) {
        pos.push_back(1.0 / n);  // accumulating at 0
        w.push_back(std::exp(-0.5 * n));
    }
    GTailAudit audit = g_tail_audit(pos, w, 0.05, 8, -1.0);
    CHECK(audit.holds);
    CHECK(audit.g_value <= audit.head + audit.tail_bound);
    CHECK(audit.g_value > 0.0);

    // x inside one of the tail intervals violates the geometry
    CHECK(thrown_code([&] { g_tail_audit(pos, w, 0.05, 8, pos[20] + 1e-12); }) ==
          Err::BadParams);
}

TEST_CASE("cover bound on planted exponential weights") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    std::vector<double> pos(256), w(256), b(256);
    for (int n = 0; n < 256; ++n) {
        pos[n] = up(rng);
        w[n] = std::exp(-(n + 1.0));
        // f(w_n) for f = log_power(2), padded away from roundoff equality
        b[n] = 1.001 * std::pow(n + 1.0, -2.0);
    }
    GaugeFunction f = make_log_power(2.0);

    CoverBoundResult r = cover_dimension_bound(pos, w, f, b, 0.05);
    CHECK(r.trace.verdict == CoverVerdict::Zero);
    REQUIRE(r.bound.kind == DimKind::Member);
    CHECK(r.bound.alpha == doctest::Approx(2.0));
    // f(t^2) = (2 ln(1/t))^{-2} is log-power(2) up to constants
    CHECK(compare(r.bound_gauge, make_log_power(2.0), default_s_grid(20.0)) ==
          Ordering::Equivalent);

    // hypothesis gate: b too small somewhere
    auto bad_b = b;
    bad_b[40] = 1e-30;
    CHECK(thrown_code([&] { cover_dimension_bound(pos, w, f, bad_b, 0.05); }) ==
          Err::HypothesisFailed);

    // b = 1/n is not summable without the extended family
    std::vector<double> harmonic(256);
    for (int n = 0; n < 256; ++n) harmonic[n] = 1.001 / (n + 1.0);
    CHECK(thrown_code([&] {
              cover_dimension_bound(pos, w, make_log_power(1.0), harmonic, 0.05);
          }) == Err::NotSummable);
    CoverBoundOptions ext;
    ext.extended_family = true;
    CoverBoundResult re =
        cover_dimension_bound(pos, w, make_log_power(1.0), harmonic, 0.05, ext);
    CHECK(re.bound.kind == DimKind::Member);
}

TEST_CASE("synthetic sule models validate and fill a complete basis") {
    SyntheticSuleOptions opt;
    opt.sites = 64;
    opt.alpha = 0.35;
    SULEModel m = synthetic_sule(opt);
    validate_sule(m);
    CHECK(m.vectors.size() == 64);
    CHECK(m.c_delta >= 1.0);

    SuleMeasure sm = sule_spectral_measure(m);
    CHECK(sm.measure.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(sm.renormalized);

    // breaking one entry must trip validation
    SULEModel broken = m;
    broken.vectors[10][40] = 1.0;
    CHECK(thrown_code([&] { validate_sule(broken); }) == Err::BadParams);
}

TEST_CASE("anderson model is localized enough to validate") {
    SULEModel m = anderson_sule(64, 2.0, 7);
    validate_sule(m);
    CHECK(m.alpha > 0.0);
    CHECK(sule_spectral_measure(m).measure.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("relabel fit recovers a planted decay rate") {
    std::vector<double> v;
    for (int n = 1; n <= 40; ++n) v.push_back(3.0 * std::exp(-0.2 * n));
    std::shuffle(v.begin(), v.end(), std::mt19937_64(3));
    DecayFit fit = relabel_decay_fit(v, 1);
    CHECK(fit.D == doctest::Approx(0.2).epsilon(1e-9));
    for (std::size_t n = 1; n <= fit.sorted_log_v.size(); ++n) {
        if (fit.sorted_log_v[n - 1] <= std::log(1e-13)) break;
        CHECK(fit.sorted_log_v[n - 1] <= fit.log_C - fit.D * double(n) + 1e-9);
    }
    CHECK(thrown_code([] { relabel_decay_fit({1.0, 0.5}, 1); }) == Err::BadParams);
}

TEST_CASE("dimension bound chain lands in the log-power class") {
    SyntheticSuleOptions opt;
    opt.sites = 64;
    opt.alpha = 0.35;
    SuleBoundChain chain = sule_dimension_bound(synthetic_sule(opt));
    CHECK(chain.fit.D > 0.0);
    CHECK(chain.cover.trace.verdict == CoverVerdict::Zero);
    CHECK(chain.vs_log_power == Ordering::Equivalent);
    REQUIRE(chain.cover.bound.kind == DimKind::Member);
    CHECK(chain.cover.bound.alpha == doctest::Approx(2.0));
}

TEST_CASE("sorted origin amplitudes of the default model decay exponentially") {
    SULEModel m = synthetic_sule();  // 256 sites, alpha = 1
    std::vector<double> origin;
    for (const auto& vec : m.vectors) origin.push_back(std::fabs(vec[0]));
    DecayFit fit = relabel_decay_fit(origin, 1);
    CHECK(fit.D > 0.0);
}
