#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_potentials.hpp"
#include "zs/monodromy.hpp"

using namespace zs;

namespace {

double entry_dist(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("zero potential: M(x, lambda) = E_lambda(x)")
{
    const Potential z = Potential::zero();
    for (const cd lam : {cd{pi, 0.0}, cd{3.7, 0.0}, cd{-12.3, 0.4}, cd{0.0, 0.0}})
        for (const double x : {0.0, 0.31, 1.0})
            CHECK(entry_dist(fundamental_matrix(z, x, lam), E_lambda(lam, x)) < 1e-12);

    // M(1, pi) = diag(-1, -1)
    const Mat2 m = fundamental_matrix(z, 1.0, cd{pi, 0.0});
    CHECK(std::abs(m.m1 + 1.0) < 1e-13);
    CHECK(std::abs(m.m4 + 1.0) < 1e-13);
    CHECK(std::abs(m.m2) < 1e-14);
}

TEST_CASE("constant potential matches the matrix exponential")
{
    for (const cd lam : {cd{0.0, 0.0}, cd{1.0, 0.0}, cd{5.4, 0.0}, cd{2.0, 0.7}, cd{42.5, -0.3}}) {
        const Mat2 got = fundamental_matrix(Potential::constant(1.0, 1.0), 1.0, lam);
        const Mat2 want = testing::constant_monodromy(1.0, 1.0, 1.0, lam);
        CHECK(entry_dist(got, want) < 1e-10);
    }
    // x interior and asymmetric constants
    const Mat2 got = fundamental_matrix(Potential::constant(0.8, -1.4), 0.62, cd{3.1, 0.2});
    CHECK(entry_dist(got, testing::constant_monodromy(0.8, -1.4, 0.62, cd{3.1, 0.2})) < 1e-10);
}

TEST_CASE("Wronskian: determinant pinned at 1")
{
    const Potential p = testing::four_mode_real();
    for (const cd lam : {cd{2.3, 0.0}, cd{31.4, 0.5}, cd{150.0, -0.8}, cd{402.1, 0.1}})
        for (const double x : {0.4, 1.0})
            CHECK(std::abs(fundamental_matrix(p, x, lam).det() - 1.0) < 1e-10);
}

TEST_CASE("iterated series oracle")
{
    SUBCASE("zero terms give the free evolution")
    {
        CHECK(entry_dist(iterated_series(testing::four_mode_real(), 0.8, cd{4.0, 0.1}, 0),
                         E_lambda(cd{4.0, 0.1}, 0.8)) < 1e-15);
    }
    SUBCASE("zero potential: any depth stays free")
    {
        CHECK(entry_dist(iterated_series(Potential::zero(), 1.0, cd{7.7, 0.0}, 6),
                         E_lambda(cd{7.7, 0.0}, 1.0)) < 1e-14);
    }
    SUBCASE("small potential: series agrees with the transfer-matrix solver")
    {
        const Potential p = testing::random_potential(4, 1e-2, 11);
        for (const cd lam : {cd{1.2, 0.0}, cd{8.0, 0.3}, cd{19.5, 0.0}}) {
            const Mat2 a = fundamental_matrix(p, 1.0, lam);
            const Mat2 b = iterated_series(p, 1.0, lam, 6);
            CHECK(entry_dist(a, b) < 1e-9);
        }
    }
    SUBCASE("moderate potential: full oracle equivalence at 1e-8")
    {
        const Potential p = testing::random_potential(3, 0.2, 23);
        const cd lam{6.5, 0.2};
        CHECK(entry_dist(fundamental_matrix(p, 1.0, lam), iterated_series(p, 1.0, lam, 12)) <
              1e-8);
    }
    SUBCASE("depth cap") { CHECK_THROWS(iterated_series(Potential::zero(), 1.0, 1.0, 13)); }
}

TEST_CASE("discriminant closed forms")
{
    const Potential c11 = Potential::constant(1.0, 1.0);
    CHECK(std::abs(discriminant(c11, cd{0.0, 0.0}) - 2.0 * std::cosh(1.0)) < 1e-12);
    CHECK(std::abs(discriminant(c11, cd{1.0, 0.0}) - 2.0) < 1e-12);  // omega -> 0 limit
    CHECK(std::abs(discriminant(Potential::zero(), cd{0.0, 0.0}) - 2.0) < 1e-13);

    // 2 cos sqrt(lambda^2 - 1) on a sample sweep
    for (double re = 0.3; re < 40.0; re *= 1.9) {
        const cd lam{re, 0.1};
        const cd want = 2.0 * std::cos(std::sqrt(lam * lam - 1.0));
        CHECK(std::abs(discriminant(c11, lam) - want) < 1e-10);
    }
}

TEST_CASE("antidiscriminant closed forms")
{
    CHECK(std::abs(antidiscriminant(Potential::zero(), cd{2.7, 0.3})) < 1e-13);
    CHECK(std::abs(antidiscriminant(Potential::constant(1.0, 1.0), cd{3.3, 0.0})) < 1e-12);

    // constant (a,b): delta = i (a-b) sin(omega)/omega
    const cd lam{pi, 0.0};
    const cd om = std::sqrt(lam * lam - 2.0);
    const cd want = -iu * std::sin(om) / om;  // a=1, b=2
    CHECK(std::abs(antidiscriminant(Potential::constant(1.0, 2.0), lam) - want) < 1e-12);
}

TEST_CASE("dirichlet characteristic closed forms")
{
    // zero potential: chi_D = sin(lambda)
    for (const cd lam : {cd{1.1, 0.0}, cd{4.0 * pi, 0.0}, cd{2.2, -0.4}})
        CHECK(std::abs(dirichlet_char(Potential::zero(), lam) - std::sin(lam)) < 1e-12);

    // constant (a,b): chi_D = (lambda - (a+b)/2) sin(omega)/omega
    const Potential c12 = Potential::constant(1.0, 2.0);
    const cd lam{2.6, 0.0};
    const cd om = std::sqrt(lam * lam - 2.0);
    CHECK(std::abs(dirichlet_char(c12, lam) - (lam - 1.5) * std::sin(om) / om) < 1e-12);

    // omega = pi zero for constant (1,1)
    CHECK(std::abs(dirichlet_char(Potential::constant(1.0, 1.0),
                                  cd{std::sqrt(pi * pi + 1.0), 0.0})) < 1e-12);
}

TEST_CASE("jet: zero potential closed forms")
{
    const cd lam{1.3, 0.2};
    const DiscriminantJet j = discriminant_jet(Potential::zero(), lam);
    CHECK(std::abs(j.value - 2.0 * std::cos(lam)) < 1e-12);
    CHECK(std::abs(j.d1 + 2.0 * std::sin(lam)) < 1e-12);
    CHECK(std::abs(j.d2 + 2.0 * std::cos(lam)) < 1e-12);
}

TEST_CASE("jet derivatives against independent oracles")
{
    const Potential p = testing::random_potential(3, 0.4, 3);
    const cd lam{5.3, 0.15};
    const DiscriminantJet j = discriminant_jet(p, lam);

    SUBCASE("finite differences, h = 1e-5")
    {
        const double h = 1e-5;
        const cd fd1 = (discriminant(p, lam + h) - discriminant(p, lam - h)) / (2.0 * h);
        const cd fd2 =
            (discriminant(p, lam + h) - 2.0 * j.value + discriminant(p, lam - h)) / (h * h);
        CHECK(std::abs(j.d1 - fd1) < 1e-6);
        CHECK(std::abs(j.d2 - fd2) < 1e-3);  // fd2 is round-off limited at this h
    }
    SUBCASE("variation-of-parameters quadrature for dDelta")
    {
        CHECK(std::abs(j.d1 - testing::quadrature_ddelta(p, lam)) < 1e-8);
    }
    SUBCASE("second derivative against finite differences of the first")
    {
        const double h = 1e-5;
        const cd fd = (discriminant_jet(p, lam + h).d1 - discriminant_jet(p, lam - h).d1) /
                      (2.0 * h);
        CHECK(std::abs(j.d2 - fd) < 1e-7);
    }
}

TEST_CASE("iterated series agrees off the real axis")
{
    const Potential p = testing::random_potential(3, 0.15, 41);
    const cd lam{11.3, 1.0};
    CHECK((fundamental_matrix(p, 1.0, lam) - iterated_series(p, 1.0, lam, 10)).max_abs() < 1e-8);
}

TEST_CASE("approximant error bound holds at interior x")
{
    const Potential p = testing::four_mode_real();
    for (const double x : {0.37, 0.81})
        for (const double re : {60.0, 240.0}) {
            const cd lam{re, 0.3};
            const double err =
                (fundamental_matrix(p, x, lam, 1e-9) - approx_monodromy_a1(p, x, lam)).max_abs();
            // generous constant; the point is the 1/|lambda|^2 scaling in x < 1
            CHECK(err < 100.0 * std::exp(std::abs(lam.imag()) * x) / std::norm(lam));
        }
}

TEST_CASE("entirety proxy: closed contour integral of Delta vanishes")
{
    const Potential p = testing::random_potential(2, 0.5, 17);
    const cd center{0.7, 0.3};
    const double r = 2.0;
    const int npts = 64;
    cd acc{0.0, 0.0};
    for (int k = 0; k < npts; ++k) {
        const cd e = std::polar(1.0, 2.0 * pi * k / npts);
        acc += discriminant(p, center + r * e) * (iu * r * e);
    }
    acc *= 2.0 * pi / npts;
    CHECK(std::abs(acc) < 1e-8);
}

TEST_CASE("large-lambda approximant")
{
    SUBCASE("zero potential reduces to the free evolution")
    {
        CHECK(entry_dist(approx_monodromy_a1(Potential::zero(), 0.7, cd{35.0, 0.2}),
                         E_lambda(cd{35.0, 0.2}, 0.7)) < 1e-14);
    }
    SUBCASE("lambda = 0 rejected")
    {
        CHECK_THROWS_AS(approx_monodromy_a1(Potential::zero(), 1.0, cd{0.0, 0.0}),
                        std::invalid_argument);
    }
    SUBCASE("constant potential: closed-form comparison")
    {
        // Phi' = 0, so P = 0 and the approximant is
        // E + (1/2.lambda)(E(-x) - E(x)) Phi + (Q(x)/2.lambda) E R with Q(x) = a b x
        const cd a{1.0, 0.0}, b{1.0, 0.0};
        const Potential p = Potential::constant(a, b);
        for (const cd lam : {cd{30.0, 0.0}, cd{120.0, 0.4}}) {
            const double x = 1.0;
            const Mat2 E = E_lambda(lam, x);
            const Mat2 want = E + (1.0 / (2.0 * lam)) * ((E_lambda(lam, -x) - E) * Phi_mat(a, b)) +
                              (a * b * x / (2.0 * lam)) * (E * R_mat());
            CHECK(entry_dist(approx_monodromy_a1(p, x, lam), want) < 1e-13);
        }
    }
    SUBCASE("error decays like 1/lambda^2 with no growth trend")
    {
        const Potential p = testing::four_mode_real();
        double at50 = 0.0, worst = 0.0;
        for (const double re : {50.0, 100.0, 200.0, 400.0, 800.0})
            for (const double im : {0.0, 0.5, 1.0}) {
                const cd lam{re, im};
                const double err =
                    entry_dist(fundamental_matrix(p, 1.0, lam, 1e-9), approx_monodromy_a1(p, 1.0, lam)) /
                    std::exp(std::abs(im));
                const double weighted = err * std::norm(lam);
                if (re == 50.0)
                    at50 = std::max(at50, weighted);
                worst = std::max(worst, weighted);
            }
        CHECK(worst <= 4.0 * at50);
    }
}

TEST_CASE("oracle triangle: solver, series, exponential on one constant potential")
{
    const Potential p = Potential::constant(0.3, -0.2);
    const cd lam{9.4, 0.3};
    const Mat2 a = fundamental_matrix(p, 1.0, lam);
    const Mat2 b = iterated_series(p, 1.0, lam, 10);
    const Mat2 c = testing::constant_monodromy(0.3, -0.2, 1.0, lam);
    CHECK(entry_dist(a, b) < 1e-8);
    CHECK(entry_dist(a, c) < 1e-10);
}

TEST_CASE("solver rejections")
{
    CHECK_THROWS_AS(fundamental_matrix(Potential::zero(), 1.2, cd{1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fundamental_matrix(Potential::zero(), 1.0, cd{1.0, 0.0}, -1.0),
                    std::invalid_argument);
}
