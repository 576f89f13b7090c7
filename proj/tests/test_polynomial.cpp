#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "rootcurve/complex_poly.hpp"
#include "rootcurve/root_solver.hpp"
#include "support.hpp"

using rootcurve::ComplexNum;
using rootcurve::ComplexPoly;
using Catch::Matchers::WithinAbs;

namespace {
const ComplexNum kI{0.0, 1.0};

ComplexPoly random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::vector<ComplexNum> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = {box(rng), box(rng)};
    while (std::abs(c.back()) < 0.25) c.back() = {box(rng), box(rng)};
    return ComplexPoly(std::move(c));
}
}  // namespace

TEST_CASE("eval: Horner evaluation") {
    CHECK(std::abs(eval(ComplexPoly{{1, 0}, {2, 0}}, kI) - ComplexNum{1.0, 2.0}) < 1e-15);
    CHECK(eval(ComplexPoly{}, ComplexNum{3.0, -4.0}) == ComplexNum{0.0, 0.0});
    // x^3 - 3x + 2 = (x-1)^2 (x+2)
    const ComplexPoly cubic{{2, 0}, {-3, 0}, {0, 0}, {1, 0}};
    CHECK(std::abs(eval(cubic, ComplexNum{-2.0, 0.0})) < 1e-14);
}

TEST_CASE("derivative: power rule and degree collapse") {
    const ComplexPoly cubic{{2, 0}, {-3, 0}, {0, 0}, {1, 0}};
    CHECK(derivative(cubic) == ComplexPoly{{-3, 0}, {0, 0}, {3, 0}});
    CHECK(derivative(ComplexPoly{{5, 0}}).is_zero());
    CHECK(derivative(ComplexPoly{}).is_zero());
}

TEST_CASE("ring operations normalize exactly-zero leading coefficients") {
    CHECK(add(ComplexPoly{{1, 0}, {1, 0}}, ComplexPoly{{1, 0}, {-1, 0}}) == ComplexPoly{{2, 0}});
    CHECK(mul(ComplexPoly{{0, 0}, {1, 0}}, ComplexPoly{{0, 0}, {1, 0}}) ==
          ComplexPoly{{0, 0}, {0, 0}, {1, 0}});
    CHECK(rootcurve::pow(ComplexPoly{{1, 0}, {1, 0}}, 0) == ComplexPoly{{1, 0}});
    CHECK(scale(ComplexPoly{{1, 0}, {2, 0}}, ComplexNum{0.0, 1.0}) ==
          ComplexPoly{{{0.0, 1.0}, {0.0, 2.0}}});
    CHECK(mul(ComplexPoly{}, ComplexPoly{{1, 0}, {1, 0}}).is_zero());
}

TEST_CASE("deflate: synthetic division by a known root") {
    CHECK(deflate(ComplexPoly{{-1, 0}, {0, 0}, {1, 0}}, ComplexNum{1.0, 0.0}) ==
          ComplexPoly{{1, 0}, {1, 0}});
    CHECK(deflate(ComplexPoly{{2, 0}, {-3, 0}, {0, 0}, {1, 0}}, ComplexNum{1.0, 0.0}) ==
          ComplexPoly{{-2, 0}, {1, 0}, {1, 0}});
    const ComplexPoly q = deflate(ComplexPoly{{1, 0}, {0, 0}, {1, 0}}, kI);
    REQUIRE(q.degree() == 1);
    CHECK(std::abs(q.coeff(0) - kI) < 1e-15);
    CHECK(std::abs(q.coeff(1) - ComplexNum{1.0, 0.0}) < 1e-15);
    CHECK_THROWS_AS(deflate(ComplexPoly{{1, 0}}, kI), std::invalid_argument);
    CHECK_THROWS_AS(deflate(ComplexPoly{}, kI), std::invalid_argument);
}

TEST_CASE("deflate identity: p = (x - r) q + p(r) to machine precision") {
    std::mt19937_64 rng(0x5eed0001);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexPoly p = random_poly(rng, 2 + trial % 7);
        const ComplexNum r{box(rng), box(rng)};
        const ComplexPoly q = deflate(p, r);
        const ComplexPoly back =
            add(mul(q, ComplexPoly{{-r, {1.0, 0.0}}}), ComplexPoly{{eval(p, r)}});
        const double scale = std::max(p.coeff_scale(), 1.0);
        REQUIRE(back.coeffs().size() == p.coeffs().size());
        for (std::size_t k = 0; k < p.coeffs().size(); ++k)
            CHECK(std::abs(back.coeff(k) - p.coeff(k)) < 1e-12 * scale);
    }
}

TEST_CASE("resultant: closed forms and the Sylvester determinant oracle") {
    // product over roots of p of q: q(1) q(-1) = 4
    const ComplexNum r1 = resultant(ComplexPoly{{-1, 0}, {0, 0}, {1, 0}},
                                    ComplexPoly{{1, 0}, {0, 0}, {1, 0}});
    CHECK_THAT(r1.real(), WithinAbs(4.0, 1e-12));
    CHECK_THAT(r1.imag(), WithinAbs(0.0, 1e-12));

    // Res(x - c, q) = q(c)
    const ComplexNum c{0.3, -0.8};
    const ComplexPoly q{{1, 0}, {2, 0}, {0, 0}, {1, 0}};
    CHECK(std::abs(resultant(ComplexPoly{{-c, {1.0, 0.0}}}, q) - eval(q, c)) < 1e-14);

    // p = x^2 + 3x + 2 against its derivative, with a hand-rolled 3x3 Sylvester
    // determinant as the oracle:
    //   | 1 3 2 |
    //   | 2 3 0 |
    //   | 0 2 3 |
    const ComplexPoly p{{2, 0}, {3, 0}, {1, 0}};
    const ComplexPoly dp = derivative(p);
    const double oracle = 1.0 * (3.0 * 3.0 - 0.0 * 2.0) - 3.0 * (2.0 * 3.0 - 0.0 * 0.0) +
                          2.0 * (2.0 * 2.0 - 3.0 * 0.0);
    REQUIRE(oracle == -1.0);
    CHECK(std::abs(resultant(p, dp) - ComplexNum{oracle, 0.0}) < 1e-12);

    CHECK_THROWS_AS(resultant(ComplexPoly{}, q), std::invalid_argument);
}

TEST_CASE("resultant: product-over-roots identity on random polynomials") {
    std::mt19937_64 rng(0x5eed0002);
    for (int trial = 0; trial < 40; ++trial) {
        const ComplexPoly p = random_poly(rng, 2 + trial % 7);
        const ComplexPoly q = random_poly(rng, 2 + (trial + 3) % 7);
        ComplexNum prod = rootcurve::ipow(p.leading_coeff(), static_cast<unsigned long>(q.degree()));
        for (const auto& root : roots_all(p)) prod *= eval(q, root);
        const double res = std::abs(resultant(p, q));
        CHECK(std::abs(res - std::abs(prod)) <= 1e-8 * std::max(res, 1e-30));
    }
}

TEST_CASE("discriminant: quadratics and double roots") {
    CHECK(std::abs(discriminant(ComplexPoly{{2, 0}, {3, 0}, {1, 0}}) - ComplexNum{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(discriminant(ComplexPoly{{1, 0}, {-2, 0}, {1, 0}})) < 1e-12);
    CHECK(std::abs(discriminant(ComplexPoly{{2, 0}, {-3, 0}, {0, 0}, {1, 0}})) < 1e-10);
    CHECK_THROWS_AS(discriminant(ComplexPoly{{5, 0}}), std::invalid_argument);
}

TEST_CASE("discriminant tracks root clustering on constructed instances") {
    std::mt19937_64 rng(0x5eed0003);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexNum a{box(rng), box(rng)};
        ComplexNum b{box(rng), box(rng)};
        while (std::abs(a - b) < 0.3) b = {box(rng), box(rng)};
        const ComplexPoly lin_a{{-a, {1.0, 0.0}}};
        const ComplexPoly lin_b{{-b, {1.0, 0.0}}};

        const ComplexPoly doubled = mul(mul(lin_a, lin_a), lin_b);
        CHECK(std::abs(discriminant(doubled)) < 1e-10);
        auto roots = roots_all(doubled);
        double closest = 1e300;
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                closest = std::min(closest, std::abs(roots[i] - roots[j]));
        CHECK(closest < 1e-6);

        const ComplexNum shift{0.5, 0.0};
        const ComplexPoly separated = mul(mul(lin_a, ComplexPoly{{-a - shift, {1.0, 0.0}}}), lin_b);
        CHECK(std::abs(discriminant(separated)) > 1e-6);
    }
}

TEST_CASE("roots_all: closed-form cases") {
    const auto pure = roots_all(ComplexPoly{{1, 0}, {0, 0}, {1, 0}});
    REQUIRE(pure.size() == 2);
    CHECK(std::abs(pure[0] - ComplexNum{0.0, -1.0}) < 1e-14);
    CHECK(std::abs(pure[1] - ComplexNum{0.0, 1.0}) < 1e-14);

    const auto cubic = roots_all(ComplexPoly{{2, 0}, {-3, 0}, {0, 0}, {1, 0}});
    REQUIRE(cubic.size() == 3);
    CHECK(std::abs(cubic[0] - ComplexNum{1.0, 0.0}) < 1e-6);
    CHECK(std::abs(cubic[1] - ComplexNum{1.0, 0.0}) < 1e-6);
    CHECK(std::abs(cubic[2] - ComplexNum{-2.0, 0.0}) < 1e-12);

    // x^5 + i: the fifth roots of -i, all on the unit circle (radical oracle)
    const auto quint = roots_all(ComplexPoly{{{0.0, 1.0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {1.0, 0.0}}});
    REQUIRE(quint.size() == 5);
    std::vector<ComplexNum> expected;
    for (int k = 0; k < 5; ++k) expected.push_back(std::polar(1.0, (-M_PI / 2 + 2 * M_PI * k) / 5.0));
    CHECK(testsupport::sorted_match_distance(quint, expected) < 1e-12);

    CHECK_THROWS_AS(roots_all(ComplexPoly{{1, 0}}), std::invalid_argument);
}

TEST_CASE("roots_all: reconstruction from the returned roots") {
    std::mt19937_64 rng(0x5eed0004);
    int done = 0;
    while (done < 40) {
        const ComplexPoly p = random_poly(rng, 2 + done % 7);
        const auto roots = roots_all(p);
        double sep = 1e300;
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                sep = std::min(sep, std::abs(roots[i] - roots[j]));
        if (sep < 0.05) continue;  // spec asks this only for well-conditioned draws
        ++done;
        ComplexPoly back{{p.leading_coeff()}};
        for (const auto& r : roots) back = mul(back, ComplexPoly{{-r, {1.0, 0.0}}});
        const double scale = p.coeff_scale();
        REQUIRE(back.degree() == p.degree());
        for (std::size_t k = 0; k < p.coeffs().size(); ++k)
            CHECK(std::abs(back.coeff(k) - p.coeff(k)) <= 1e-8 * scale);
    }
}

TEST_CASE("roots_all: exhausted iteration budget raises NonConvergence") {
    rootcurve::RootSolveOptions opts;
    opts.max_iterations = 1;
    opts.tolerance = 1e-15;
    const ComplexPoly p{{2, 0}, {-3, 0}, {0, 0}, {0.5, 0.5}, {1, 0}, {1, 0}};
    CHECK_THROWS_AS(roots_all(p, opts), rootcurve::NonConvergence);
}

TEST_CASE("roots_all: deterministic ordering and zero roots") {
    // z^3 (z^2 + 1): exact zero roots are split off and reported first
    const ComplexPoly p{{0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}, {1, 0}};
    const auto roots = roots_all(p);
    REQUIRE(roots.size() == 5);
    for (int k = 0; k < 3; ++k) CHECK(roots[static_cast<std::size_t>(k)] == ComplexNum{0.0, 0.0});

    const auto again = roots_all(p);
    CHECK(roots == again);
}
