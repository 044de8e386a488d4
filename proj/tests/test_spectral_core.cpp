#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>

#include "npbo/corpus.hpp"
#include "npbo/field.hpp"
#include "npbo/norms.hpp"

using namespace npbo;

namespace {

// independent O(n^2) continuum-calibrated transform for oracle checks
std::vector<cplx> slow_transform(const TorusGrid& g, const std::vector<double>& f) {
    std::vector<cplx> c(g.n);
    for (int k = 0; k < g.n; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < g.n; ++j)
            acc += f[j] * std::exp(cplx(0.0, -g.freq(k) * g.node(j)));
        c[k] = acc * g.dx();
    }
    return c;
}

Field gaussian_field(const TorusGrid& g, double a = 1.0) {
    return Field::from_function(g, [a](double x) { return std::exp(-a * x * x); });
}

}  // namespace

TEST_CASE("grid validation and layout") {
    CHECK_THROWS_AS(TorusGrid(-1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(TorusGrid(10.0, 48), std::invalid_argument);
    CHECK_THROWS_AS(TorusGrid(10.0, 8), std::invalid_argument);
    TorusGrid g(20.0, 128);
    CHECK(g.dx() == doctest::Approx(40.0 / 128).epsilon(1e-15));
    CHECK(g.dxi() == doctest::Approx(M_PI / 20.0).epsilon(1e-15));
    CHECK(g.node(0) == -20.0);
    CHECK(g.wavenumber(1) == 1);
    CHECK(g.wavenumber(127) == -1);
    CHECK(g.wavenumber(64) == -64);
}

TEST_CASE("forward transform matches direct summation oracle") {
    TorusGrid g(7.0, 32);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> f(g.n);
    for (auto& v : f) v = U(rng);
    Field F = Field::from_samples(g, f);
    auto slow = slow_transform(g, f);
    for (int k = 0; k < g.n; ++k)
        CHECK(std::abs(F.coeff(k) - slow[k]) < 1e-12);
}

TEST_CASE("pure cosine concentrates on +-1 with coefficient L") {
    TorusGrid g(10.0, 64);
    Field F = Field::from_function(g, [&](double x) { return std::cos(M_PI * x / g.L); });
    for (int k = 0; k < g.n; ++k) {
        double expected = (std::abs(g.wavenumber(k)) == 1) ? g.L : 0.0;
        CHECK(std::abs(F.coeff(k) - cplx(expected)) < 1e-11);
    }
}

TEST_CASE("gaussian zero mode approximates the continuum integral") {
    // int exp(-x^2) dx = sqrt(pi); spectral accuracy at L = 20
    TorusGrid g(20.0, 256);
    Field F = gaussian_field(g);
    CHECK(F.mean_coeff().real() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    // and \hat f(xi) = sqrt(pi) e^{-xi^2/4}
    for (int k : {1, 5, 20}) {
        double xi = g.freq(k);
        double expect = std::sqrt(M_PI) * std::exp(-xi * xi / 4.0);
        CHECK(std::abs(F.coeff(k) - cplx(expect)) < 1e-12 * (1.0 + expect));
    }
}

TEST_CASE("round trip physical -> spectral -> physical") {
    TorusGrid g(13.0, 128);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::vector<double> f(g.n);
    for (auto& v : f) v = U(rng);
    auto back = Field::from_samples(g, f).physical();
    for (int j = 0; j < g.n; ++j) {
        CHECK(std::abs(back[j].real() - f[j]) < 1e-12);
        CHECK(std::abs(back[j].imag()) < 1e-12);
    }
}

TEST_CASE("parseval: l2 norm equals physical-side sum") {
    TorusGrid g(9.0, 64);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> f(g.n);
    for (auto& v : f) v = U(rng);
    Field F = Field::from_samples(g, f);
    double phys = 0.0;
    for (double v : f) phys += v * v;
    phys = std::sqrt(phys * g.dx());
    CHECK(l2_norm(F) == doctest::Approx(phys).epsilon(1e-12));
}

TEST_CASE("hilbert transform: sends sin to cos, kills constants, squares to -1") {
    TorusGrid g(4.0 * M_PI, 128);  // lattice contains xi = 1
    Field S = Field::from_function(g, [](double x) { return std::sin(x); });
    Field HS = S.hilbert();
    auto p = HS.physical_real();
    for (int j = 0; j < g.n; ++j)
        CHECK(p[j] == doctest::Approx(std::cos(g.node(j))).epsilon(1e-11));

    Field C = Field::from_function(g, [](double) { return 2.5; });
    CHECK(l2_norm(C.hilbert()) < 1e-13);

    // H^2 = -Id on mean-zero data
    Field HHS = HS.hilbert();
    Field diff = HHS + S;
    CHECK(l2_norm(diff) < 1e-12);
    CHECK(HS.is_real());
}

TEST_CASE("hilbert is an l2 isometry on mean-zero data") {
    TorusGrid g(16.0, 128);
    Field F = Field::from_function(g, [](double x) { return x * std::exp(-x * x); });
    CHECK(l2_norm(F.hilbert()) == doctest::Approx(l2_norm(F)).epsilon(1e-12));
}

TEST_CASE("derivative multiplier: sin -> cos, gaussian oracle") {
    TorusGrid g(4.0 * M_PI, 128);
    Field S = Field::from_function(g, [](double x) { return std::sin(x); });
    auto p = S.derivative().physical_real();
    for (int j = 0; j < g.n; ++j)
        CHECK(p[j] == doctest::Approx(std::cos(g.node(j))).epsilon(1e-11));

    TorusGrid g2(20.0, 256);
    Field G = gaussian_field(g2);
    auto dp = G.derivative().physical_real();
    for (int j = 0; j < g2.n; ++j) {
        double x = g2.node(j);
        CHECK(std::abs(dp[j] - (-2.0 * x * std::exp(-x * x))) < 1e-10);
    }
}

TEST_CASE("multiplier composition and realness bookkeeping") {
    TorusGrid g(10.0, 64);
    Field F = gaussian_field(g);
    auto m1 = [](double xi) { return cplx(std::cos(xi), 0.0); };
    auto m2 = [](double xi) { return cplx(1.0 / (1.0 + xi * xi), 0.0); };
    Field a = F.apply_multiplier(m1).apply_multiplier(m2);
    Field b = F.apply_multiplier([&](double xi) { return m1(xi) * m2(xi); });
    Field diff = a - b;
    CHECK(l2_norm(diff) < 1e-13);
    CHECK(a.is_real());

    // non-Hermitian multiplier must clear the realness flag
    Field c = F.apply_multiplier([](double xi) { return cplx(0.0, xi > 0 ? 1.0 : 0.0); });
    CHECK(!c.is_real());
}

TEST_CASE("sobolev norms of the unit gaussian") {
    TorusGrid g(20.0, 512);
    Field G = Field::from_function(g, [](double x) { return std::exp(-x * x / 2.0); });
    // ||e^{-x^2/2}||_{L2} = pi^{1/4}
    CHECK(l2_norm(G) == doctest::Approx(std::pow(M_PI, 0.25)).epsilon(1e-12));
    // ||G||_{H^1}^2 = ||G||^2 + ||G'||^2 = sqrt(pi)(1 + 1/2)
    double h1 = std::sqrt(std::sqrt(M_PI) * 1.5);
    CHECK(sobolev_norm(G, 1.0) == doctest::Approx(h1).epsilon(1e-12));
    // negative index is below L2, positive above
    CHECK(sobolev_norm(G, -1.0) < l2_norm(G));
    CHECK(sobolev_norm(G, 1.0) > l2_norm(G));
}

TEST_CASE("weighted norms of the unit gaussian") {
    TorusGrid g(20.0, 512);
    Field G = Field::from_function(g, [](double x) { return std::exp(-x * x / 2.0); });
    // int x^2 e^{-x^2} dx = sqrt(pi)/2
    double xg = std::sqrt(std::sqrt(M_PI) / 2.0);
    // the origin clamp |x| -> dx adds an O(dx^3) squared-mass bias
    CHECK(homogeneous_weighted_norm(G, 1.0) == doctest::Approx(xg).epsilon(5e-4));
    // <x>^1 weight: int (1+x^2) e^{-x^2} = (3/2) sqrt(pi)
    double wg = std::sqrt(1.5 * std::sqrt(M_PI));
    CHECK(weighted_norm(G, 1.0) == doctest::Approx(wg).epsilon(1e-10));
    double z = zsr_norm(G, 1.0, 1.0);
    double s1 = sobolev_norm(G, 1.0);
    CHECK(z == doctest::Approx(std::sqrt(s1 * s1 + wg * wg)).epsilon(1e-9));
}

TEST_CASE("stein derivative: domain, constants, and self-convergence") {
    TorusGrid g(16.0, 256);
    Field G = gaussian_field(g);
    CHECK_THROWS_AS(stein_derivative(G, 0.0), std::domain_error);
    CHECK_THROWS_AS(stein_derivative(G, 1.0), std::domain_error);

    Field C = Field::from_function(g, [](double) { return 1.0; });
    CHECK(l2_norm(stein_derivative(C, 0.5)) < 1e-12);

    // refine the grid at fixed L: values should converge (smooth datum)
    TorusGrid g2(16.0, 512);
    Field G2 = gaussian_field(g2);
    double a = l2_norm(stein_derivative(G, 0.5));
    double b = l2_norm(stein_derivative(G2, 0.5));
    CHECK(std::abs(a - b) / b < 0.01);
}

TEST_CASE("stein seminorm is comparable to the homogeneous sobolev seminorm") {
    // ||D^b f|| ~ ||f||_{\dot H^b} within fixed brackets for smooth bumps
    TorusGrid g(16.0, 256);
    std::vector<Field> fields = {
        gaussian_field(g),
        Field::from_function(g, [](double x) { return x * std::exp(-x * x); }),
        Field::from_function(g, [](double x) { return std::exp(-2.0 * (x - 1) * (x - 1)); }),
    };
    for (double b : {0.25, 0.5, 0.75}) {
        NormSpec hom{NormSpec::homogeneous_sobolev, b, 1.0};
        for (const Field& f : fields) {
            double st = l2_norm(stein_derivative(f, b));
            double hb = hom.evaluate(f);
            CHECK(st / hb > 0.1);
            CHECK(st / hb < 10.0);
        }
    }
}

TEST_CASE("xts norm: single snapshot closed form and domain errors") {
    TorusGrid g(16.0, 128);
    Field G = gaussian_field(g);
    std::vector<double> times = {0.25};
    std::vector<Field> fields = {G};
    TrajectoryView tv{&times, &fields};
    double s = -0.5;
    double expect = sobolev_norm(G, s) + std::pow(0.25, 0.5 / 3.0) * l2_norm(G);
    CHECK(xts_norm(tv, s, 1.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(xts_norm(tv, s, 0.1), std::domain_error);  // no times in (0, T]
    std::vector<double> none;
    std::vector<Field> nofields;
    TrajectoryView empty{&none, &nofields};
    CHECK_THROWS_AS(xts_norm(empty, s, 1.0), std::domain_error);
}

TEST_CASE("field serialization round trip") {
    TorusGrid g(12.0, 64);
    Field F = Field::from_function(g, [](double x) { return std::sin(0.7 * x) * std::exp(-x * x / 9.0); });
    std::string path = "roundtrip_field.bin";
    write_field_binary(F, path);
    Field G = read_field_binary(path);
    CHECK(G.grid() == F.grid());
    CHECK(G.is_real());
    Field diff = G - F;
    CHECK(l2_norm(diff) < 1e-13);
    std::remove(path.c_str());

    std::ostringstream os;
    write_field_csv(F, os);
    std::string head = os.str().substr(0, 8);
    CHECK(head == "x,re,im\n");
}

TEST_CASE("corpus generation is deterministic and respects the decay margin") {
    TorusGrid g(64.0, 512);
    CorpusParams params;
    params.count = 4;
    auto a = generate_corpus(CorpusKind::gaussian, params, 42, g);
    auto b = generate_corpus(CorpusKind::gaussian, params, 42, g);
    auto c = generate_corpus(CorpusKind::gaussian, params, 43, g);
    REQUIRE(a.size() == 4);
    Field d0 = a[0] - b[0];
    CHECK(l2_norm(d0) == 0.0);
    Field d1 = a[0] - c[0];
    CHECK(l2_norm(d1) > 0.0);
    for (const Field& f : a) CHECK_NOTHROW(check_decay_margin(f));
}

TEST_CASE("decay margin rejects wide data and names the domain size") {
    TorusGrid g(8.0, 64);
    Field wide = Field::from_function(g, [](double x) { return std::exp(-x * x / 400.0); });
    try {
        check_decay_margin(wide);
        FAIL("expected a decay-margin rejection");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("8") != std::string::npos);
    }
}

TEST_CASE("odd corpus members are odd; rough corpus has the requested spectral slope") {
    TorusGrid g(64.0, 512);
    CorpusParams params;
    params.count = 3;
    auto odd = generate_corpus(CorpusKind::gaussian_odd, params, 7, g);
    for (const Field& f : odd) {
        CHECK(std::abs(f.mean_coeff()) < 1e-12);
        auto p = f.physical_real();
        for (int j = 1; j < g.n / 2; ++j)
            CHECK(std::abs(p[g.n / 2 + j] + p[g.n / 2 - j]) < 1e-10);
    }

    params.s = -1.0;
    auto rough = generate_corpus(CorpusKind::rough_spectral, params, 7, g);
    for (const Field& f : rough) {
        CHECK(f.is_real());
        CHECK(std::isfinite(sobolev_norm(f, params.s)));
        CHECK_NOTHROW(check_decay_margin(f));
    }
}
