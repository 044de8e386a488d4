#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "npbo/field.hpp"
#include "npbo/norms.hpp"
#include "npbo/semigroup.hpp"

using namespace npbo;

TEST_CASE("symbol values at pinned frequencies") {
    SymbolParams p(1.0);
    // b(2) = i*2*|2| + (|2| - |2|^3) = -6 + 4i
    cplx b2 = symbol_eval(2.0, p);
    CHECK(b2.real() == doctest::Approx(-6.0).epsilon(1e-15));
    CHECK(b2.imag() == doctest::Approx(4.0).epsilon(1e-15));
    // odd imaginary part, even real part
    cplx bm2 = symbol_eval(-2.0, p);
    CHECK(bm2.real() == doctest::Approx(-6.0).epsilon(1e-15));
    CHECK(bm2.imag() == doctest::Approx(-4.0).epsilon(1e-15));
    // xi = 1 is neutral: |xi| - |xi|^3 = 0
    CHECK(symbol_eval(1.0, p).real() == 0.0);
    CHECK(symbol_eval(0.0, p) == cplx(0.0, 0.0));
    // mu scales only the real part
    SymbolParams p3(3.0);
    CHECK(symbol_eval(2.0, p3).real() == doctest::Approx(-18.0).epsilon(1e-15));
    CHECK(symbol_eval(2.0, p3).imag() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(SymbolParams(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SymbolParams(0.0), std::invalid_argument);
}

TEST_CASE("propagator modulus and oscillation") {
    SymbolParams p(1.0);
    // |F(0.1, 2)| = e^{-0.6}
    CHECK(std::abs(propagator(0.1, 2.0, p)) == doctest::Approx(std::exp(-0.6)).epsilon(1e-14));
    // at xi = 1 the modulus is exactly 1 for all t; only the phase moves
    CHECK(std::abs(propagator(5.0, 1.0, p)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::arg(propagator(0.3, 1.0, p)) == doctest::Approx(0.3).epsilon(1e-14));
    // max modulus growth rate is e^{2 mu t/(3 sqrt 3)} at xi = 1/sqrt(3)
    double xs = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(propagator(1.0, xs, p)) ==
          doctest::Approx(std::exp(2.0 / (3.0 * std::sqrt(3.0)))).epsilon(1e-14));
}

TEST_CASE("semigroup: identity, law, forward-only, realness, mean preservation") {
    TorusGrid g(32.0, 256);
    SymbolParams p(0.7);
    Field phi = Field::from_function(g, [](double x) { return std::exp(-x * x / 4.0) * (1.0 + 0.3 * std::sin(x)); });

    Field id = semigroup_apply(phi, 0.0, p);
    // t = 0 only drops the Nyquist mode
    for (int j = 0; j < g.n; ++j) {
        if (j == g.n / 2) continue;
        CHECK(std::abs(id.coeff(j) - phi.coeff(j)) < 1e-15 * (1.0 + std::abs(phi.coeff(j))));
    }

    Field two_step = semigroup_apply(semigroup_apply(phi, 0.3, p), 0.5, p);
    Field one_step = semigroup_apply(phi, 0.8, p);
    Field diff = two_step - one_step;
    CHECK(l2_norm(diff) < 1e-12 * l2_norm(one_step));

    CHECK_THROWS_AS(semigroup_apply(phi, -0.1, p), std::domain_error);
    CHECK(semigroup_apply(phi, 0.4, p).is_real());
    // \hat u(0) is conserved by the linear flow
    CHECK(std::abs(semigroup_apply(phi, 2.0, p).mean_coeff() - phi.mean_coeff()) < 1e-14);
}

TEST_CASE("single lattice mode evolves by the exact scalar propagator") {
    TorusGrid g(8.0, 64);
    SymbolParams p(1.3);
    int k = 5;
    std::vector<cplx> c(g.n, 0.0);
    c[k] = cplx(0.4, -0.2);
    c[g.n - k] = std::conj(c[k]);
    Field phi(g, c, true);
    double t = 0.21;
    Field out = semigroup_apply(phi, t, p);
    CHECK(std::abs(out.coeff(k) - propagator(t, g.freq(k), p) * c[k]) < 1e-15);
    CHECK(std::abs(out.coeff(g.n - k) - propagator(t, g.freq(g.n - k), p) * c[g.n - k]) < 1e-15);
}

TEST_CASE("multiplier_sup: closed form at lambda = 0 and brute-force oracle") {
    // sup e^{a(xi - xi^3)} = e^{2a/(3 sqrt 3)} at xi = 1/sqrt(3)
    for (double a : {0.05, 1.0, 7.0}) {
        auto [arg, val] = multiplier_sup(0.0, a);
        CHECK(arg == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
        CHECK(val == doctest::Approx(std::exp(2.0 * a / (3.0 * std::sqrt(3.0)))).epsilon(1e-12));
    }
    // independent dense scan for lambda > 0
    for (double lambda : {0.5, 1.0, 3.0}) {
        for (double a : {0.05, 0.6, 2.0}) {
            double brute = 0.0;
            double cap = std::max(4.0, 2.0 * lambda / a);
            for (int i = 1; i <= 2000000; ++i) {
                double xi = cap * i / 2000000.0;
                double v = std::pow(xi, lambda) * std::exp(a * (xi - xi * xi * xi));
                brute = std::max(brute, v);
            }
            CHECK(multiplier_sup(lambda, a).second == doctest::Approx(brute).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(multiplier_sup(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(multiplier_sup(-1.0, 1.0), std::domain_error);
}

TEST_CASE("weighted_multiplier_sup dominates the homogeneous sup and hits lambda = 0 exactly") {
    for (double a : {0.01, 0.5, 2.0}) {
        CHECK(weighted_multiplier_sup(0.0, a).second ==
              doctest::Approx(std::exp(2.0 * a / (3.0 * std::sqrt(3.0)))).epsilon(1e-12));
        for (double lambda : {0.5, 2.0}) {
            double hom = multiplier_sup(lambda, a).second;
            double wtd = weighted_multiplier_sup(lambda, a).second;
            CHECK(wtd >= hom * (1.0 - 1e-12));
            // <xi>^lambda <= 2^{lambda/2} max(1, xi^lambda)
            CHECK(wtd <= std::pow(2.0, 0.5 * lambda) *
                             std::max(std::exp(2.0 * a / (3.0 * std::sqrt(3.0))), hom) *
                             (1.0 + 1e-12));
        }
    }
}

TEST_CASE("growth bound holds on a smooth corpus and the report carries the ratio") {
    TorusGrid g(32.0, 256);
    SymbolParams p(1.0);
    std::vector<Field> corpus = {
        Field::from_function(g, [](double x) { return std::exp(-x * x); }),
        Field::from_function(g, [](double x) { return x * std::exp(-x * x / 2.0); }),
        Field::from_function(g, [](double x) { return std::exp(-(x - 2) * (x - 2)); }),
    };
    std::vector<double> ts = {0.0, 0.1, 0.5, 1.0, 2.0};
    for (double s : {-1.0, 0.0, 1.5}) {
        EstimateReport rep = growth_bound_check(corpus, s, ts, p);
        CHECK(rep.pass);
        CHECK(rep.scalars.at("max_ratio") <= 1.0 + 1e-10);
        CHECK(rep.scalars.at("max_ratio") > 0.1);
        CHECK(rep.rows.size() == corpus.size() * ts.size());
    }
    std::vector<Field> with_zero = corpus;
    with_zero.push_back(Field::zero(g));
    EstimateReport rep = growth_bound_check(with_zero, 0.0, ts, p);
    CHECK(rep.pass);
    CHECK(rep.notes.size() == 1);
    CHECK_THROWS_AS(growth_bound_check({}, 0.0, ts, p), std::invalid_argument);
}

TEST_CASE("smoothing probe recovers the -lambda/3 blow-up exponent") {
    SymbolParams p(1.0);
    auto ts = log_spaced(1e-6, 1.0, 25);
    for (double lambda : {1.0, 2.0, 3.0}) {
        PropagatorProbe probe = smoothing_probe(0.0, lambda, ts, p);
        CHECK(probe.pass);
        CHECK(probe.fitted_slope == doctest::Approx(-lambda / 3.0).epsilon(0.05));
        // measured norm never exceeds a fixed multiple of the envelope
        CHECK(probe.envelope_constant < 10.0);
        CHECK(probe.envelope_constant > 0.01);
    }
    PropagatorProbe flat = smoothing_probe(0.0, 0.0, ts, p);
    CHECK(flat.pass);
    CHECK(std::abs(flat.fitted_slope) < 0.05);
}

TEST_CASE("derivative factors: pinned value, xi = 0 rejection, FD convergence") {
    SymbolParams p(1.0);
    auto [f1, f2] = propagator_derivative_factors(1.0, 1.0, p);
    CHECK(f1.real() == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(f1.imag() == doctest::Approx(2.0).epsilon(1e-14));
    // d2/dxi2 bracket at t=1, xi=1: (2i - 6) + (-2+2i)^2 = -6 - 6i
    CHECK(f2.real() == doctest::Approx(-6.0).epsilon(1e-14));
    CHECK(f2.imag() == doctest::Approx(-6.0).epsilon(1e-14));
    CHECK_THROWS_AS(propagator_derivative_factors(1.0, 0.0, p), std::domain_error);

    // centered differences of F itself converge at order 2 to F * factor
    SymbolParams q(0.8);
    double t = 0.4, xi = 0.7;
    cplx F = propagator(t, xi, q);
    auto [g1, g2] = propagator_derivative_factors(t, xi, q);
    std::vector<double> hs = {1e-2, 5e-3, 2.5e-3};
    std::vector<double> err1, err2;
    for (double h : hs) {
        cplx fd1 = (propagator(t, xi + h, q) - propagator(t, xi - h, q)) / (2.0 * h);
        cplx fd2 = (propagator(t, xi + h, q) - 2.0 * F + propagator(t, xi - h, q)) / (h * h);
        err1.push_back(std::abs(fd1 - F * g1));
        err2.push_back(std::abs(fd2 - F * g2));
    }
    for (size_t i = 0; i + 1 < hs.size(); ++i) {
        CHECK(err1[i] / err1[i + 1] == doctest::Approx(4.0).epsilon(0.1));
        CHECK(err2[i] / err2[i + 1] == doctest::Approx(4.0).epsilon(0.1));
    }
}

TEST_CASE("log_spaced covers its endpoints geometrically") {
    auto v = log_spaced(1e-3, 10.0, 9);
    REQUIRE(v.size() == 9);
    CHECK(v.front() == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(v.back() == doctest::Approx(10.0).epsilon(1e-12));
    double r = v[1] / v[0];
    for (size_t i = 1; i + 1 < v.size(); ++i)
        CHECK(v[i + 1] / v[i] == doctest::Approx(r).epsilon(1e-10));
}
