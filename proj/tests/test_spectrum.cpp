#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "test_potentials.hpp"
#include "zs/spectrum.hpp"

using namespace zs;

TEST_CASE("lexicographic order")
{
    CHECK(lex_leq(cd{1.0, 0.0}, cd{2.0, 0.0}));
    CHECK(lex_leq(cd{1.0, -1.0}, cd{1.0, 1.0}));
    CHECK_FALSE(lex_leq(cd{2.0, 0.0}, cd{1.0, 5.0}));
    CHECK(lex_leq(cd{1.0, 1.0}, cd{1.0, 1.0}));

    // totality and idempotent sorting on random values
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 500; ++k) {
        cd a{u(rng), u(rng)}, b{u(rng), u(rng)};
        CHECK((lex_leq(a, b) || lex_leq(b, a)));
        if (!lex_leq(a, b))
            std::swap(a, b);
        const cd a1 = a, b1 = b;
        if (!lex_leq(a, b))
            std::swap(a, b);
        CHECK(a == a1);
        CHECK(b == b1);
    }
}

TEST_CASE("dirichlet eigenvalues")
{
    SUBCASE("zero potential: mu_n = n pi")
    {
        const RootResult r = dirichlet_eigenvalue(Potential::zero(), 5);
        CHECK(r.converged);
        CHECK(r.in_window);
        CHECK(std::abs(r.value - 5.0 * pi) < 1e-12);
    }
    SUBCASE("constant (1,1): closed-form roots sign(n) sqrt(n^2 pi^2 + 1)")
    {
        const Potential p = Potential::constant(1.0, 1.0);
        const RootResult r1 = dirichlet_eigenvalue(p, 1);
        CHECK(std::abs(r1.value - std::sqrt(pi * pi + 1.0)) < 1e-10);
        CHECK(doctest::Approx(r1.value.real()).epsilon(1e-7) == 3.2969081);
        const RootResult rm3 = dirichlet_eigenvalue(p, -3);
        CHECK(std::abs(rm3.value + std::sqrt(9.0 * pi * pi + 1.0)) < 1e-10);
    }
}

TEST_CASE("critical points")
{
    CHECK(std::abs(critical_point(Potential::zero(), 4).value - 4.0 * pi) < 1e-12);
    const RootResult r = critical_point(Potential::constant(1.0, 1.0), 2);
    CHECK(std::abs(r.value - std::sqrt(4.0 * pi * pi + 1.0)) < 1e-10);

    // real-type potential: the critical points stay on the real axis
    const RootResult rt = critical_point(testing::four_mode_real(), 6);
    CHECK(rt.converged);
    CHECK(std::abs(rt.value.imag()) < 1e-9);
}

TEST_CASE("periodic pairs")
{
    SUBCASE("zero potential: double root at n pi")
    {
        const PairResult r = periodic_pair(Potential::zero(), 3);
        CHECK(r.converged);
        CHECK(r.collapsed);
        CHECK(std::abs(r.minus - 3.0 * pi) < 1e-10);
        CHECK(std::abs(r.plus - r.minus) == 0.0);
    }
    SUBCASE("constant (1,1): collapsed pair at sqrt(4 pi^2 + 1)")
    {
        const PairResult r = periodic_pair(Potential::constant(1.0, 1.0), 2);
        CHECK(r.converged);
        CHECK(r.collapsed);
        CHECK(std::abs(r.minus - std::sqrt(4.0 * pi * pi + 1.0)) < 1e-10);
    }
    SUBCASE("single-mode potential splits at the resonant index, gamma = 2")
    {
        SolverSettings s;
        s.n_floor = 1;
        const PairResult r = periodic_pair(Potential::single_mode(1.0, 1.0), -1, s);
        CHECK(r.converged);
        CHECK(r.in_window);
        CHECK_FALSE(r.collapsed);
        CHECK(std::abs((r.plus - r.minus) - 2.0) < 1e-9);
        CHECK(lex_leq(r.minus, r.plus));
    }
}

TEST_CASE("kappa")
{
    for (const int n : {4, 5, -7})
        CHECK(std::abs(kappa(Potential::zero(), n).value) < 1e-12);

    // constant (1,1): Delta(mu_n) = 2(-1)^n exactly and delta = 0, so kappa = 0
    for (const int n : {4, -5}) {
        const KappaResult k = kappa(Potential::constant(1.0, 1.0), n);
        CHECK(k.ok);
        CHECK(std::abs(k.value) < 1e-10);
    }

    // single-mode (1,1) at the resonant index: mu_{-1} = 1 - pi, Delta there is
    // exactly -2 and delta vanishes, so kappa_{-1} = 0 despite the wide-open gap
    SolverSettings s;
    s.n_floor = 1;
    const KappaResult km = kappa(Potential::single_mode(1.0, 1.0), -1, s);
    CHECK(km.ok);
    CHECK(std::abs(km.value) < 1e-9);
}

TEST_CASE("spectral table: zero potential rows are exact")
{
    const SpectralTable t = spectral_table(Potential::zero(), -8, 8);
    CHECK(t.rows.size() == 10);  // |n| in [4, 8]
    for (const SpectralRow& r : t.rows) {
        const double np = r.n * pi;
        CHECK(r.converged());
        CHECK(std::abs(r.mu - np) < 1e-10);
        CHECK(std::abs(r.lam_dot - np) < 1e-10);
        CHECK(std::abs(r.lam_minus - np) < 1e-10);
        CHECK(std::abs(r.lam_plus - np) < 1e-10);
        CHECK(std::abs(r.gamma) < 1e-10);
        CHECK(std::abs(r.kappa) < 1e-10);
        CHECK(std::abs(r.delta_at_mu) < 1e-10);
        CHECK(std::abs(r.Delta_at_mu - (r.n % 2 == 0 ? 2.0 : -2.0)) < 1e-10);
        CHECK(r.localized);
    }
}

TEST_CASE("spectral table: constant potential has tau_n = lam_dot_n")
{
    const SpectralTable t = spectral_table(Potential::constant(1.0, 1.0), 4, 16);
    for (const SpectralRow& r : t.rows) {
        CHECK(r.converged());
        const double exact = std::sqrt(r.n * r.n * pi * pi + 1.0);
        CHECK(std::abs(r.tau - r.lam_dot) < 1e-10);
        CHECK(std::abs(r.gamma) < 1e-10);
        CHECK(std::abs(r.lam_dot - exact) < 1e-9);
        CHECK(std::abs(r.mu - exact) < 1e-9);
    }
}

TEST_CASE("spectral table: real-type potential keeps rows real and ordered")
{
    // this potential is strong enough that |n| = 4 falls outside the 1/4 window
    // (its localization bound is 5); the contract range starts at 5 here
    SolverSettings s;
    s.n_floor = 5;
    const SpectralTable t = spectral_table(testing::four_mode_real(), -12, 12, s);
    int checked = 0;
    for (const SpectralRow& r : t.rows) {
        REQUIRE(r.converged());
        CHECK(std::abs(r.mu.imag()) < 1e-9);
        CHECK(std::abs(r.lam_dot.imag()) < 1e-9);
        CHECK(std::abs(r.lam_minus.imag()) < 1e-9);
        CHECK(r.lam_minus.real() <= r.lam_plus.real() + 1e-12);
        CHECK(r.gamma.real() >= -1e-10);
        ++checked;
    }
    CHECK(checked == 16);

    // same ordering contract on a random selfadjoint-class potential (its n=4 gap
    // is wide enough to leave the 1/4 window, so start one index up)
    const SpectralTable rt = spectral_table(testing::random_potential(4, 0.3, 61, true), 5, 12);
    for (const SpectralRow& r : rt.rows) {
        REQUIRE(r.converged());
        CHECK(std::abs(r.mu.imag()) < 1e-9);
        CHECK(r.lam_minus.real() <= r.lam_plus.real() + 1e-12);
    }
}

TEST_CASE("root residual and multiplier-product invariants across a table")
{
    SolverSettings s;
    s.n_floor = 5;
    const SpectralTable t = spectral_table(testing::four_mode_real(), 5, 24, s);
    for (const SpectralRow& r : t.rows) {
        REQUIRE(r.converged());
        CHECK(r.res_mu <= 1e-9);
        CHECK(r.res_crit <= 1e-9);
        CHECK(r.res_pair <= 1e-9);
        // (Delta + delta)(Delta - delta)/4 = 1 at Dirichlet eigenvalues
        const cd prod = (r.Delta_at_mu + r.delta_at_mu) * (r.Delta_at_mu - r.delta_at_mu);
        CHECK(std::abs(prod - 4.0) < 1e-9);
    }
}

TEST_CASE("localization bound")
{
    const SpectralTable t = spectral_table(Potential::constant(1.0, 1.0), -32, 32);
    const auto nb = localization_bound(t);
    REQUIRE(nb.has_value());
    CHECK(*nb <= 16);
    // constant (1,1): |mu_n - n pi| ~ 1/(2 pi n) < 1/n for every row
    CHECK(*nb == 4);
}

TEST_CASE("winding numbers on synthetic holomorphic functions")
{
    // f(z) = (z - a)(z - b)
    const cd a{0.3, 0.2}, b{-0.4, -0.1};
    const HoloFn f = [&](cd z) {
        return std::pair<cd, cd>{(z - a) * (z - b), 2.0 * z - a - b};
    };
    CHECK(winding_number(f, cd{0.0, 0.0}, 1.0) == 2);
    CHECK(winding_number(f, cd{0.35, 0.2}, 0.1) == 1);
    CHECK(winding_number(f, cd{2.0, 0.0}, 0.5) == 0);

    // double root
    const HoloFn g = [&](cd z) {
        return std::pair<cd, cd>{(z - a) * (z - a), 2.0 * (z - a)};
    };
    CHECK(winding_number(g, cd{0.0, 0.0}, 1.0) == 2);
}

TEST_CASE("argument-principle localization finds roots without a good seed")
{
    const cd root{0.42, -0.17};
    const HoloFn f = [&](cd z) {
        const cd w = std::sin(z - root);
        return std::pair<cd, cd>{w, std::cos(z - root)};
    };
    const auto got = locate_root_in_disc(f, cd{0.0, 0.0}, 0.8, 1e-12);
    REQUIRE(got.has_value());
    CHECK(std::abs(*got - root) < 1e-10);

    CHECK_FALSE(locate_root_in_disc(f, cd{2.5, 2.5}, 0.3, 1e-12).has_value());
}

TEST_CASE("argument-principle localization on the real characteristic function")
{
    // the disc fallback must find the Dirichlet root of the constant potential
    // with no seed information at all
    const Potential p = Potential::constant(1.0, 1.0);
    int hint = 0;
    const HoloFn chi = [&](cd z) {
        const MonodromyJet j = monodromy_jet(p, 1.0, z, 1e-12, &hint);
        return std::pair<cd, cd>{chi_d_of(j.M), chi_d_of(j.dM)};
    };
    const auto got = locate_root_in_disc(chi, cd{5.0 * pi, 0.0}, 0.5, 1e-12);
    REQUIRE(got.has_value());
    CHECK(std::abs(*got - std::sqrt(25.0 * pi * pi + 1.0)) < 1e-10);
}

TEST_CASE("explicit index sets and log spacing")
{
    const auto idx = log_spaced_indices(8, 128, 10, true);
    CHECK(idx.size() == 20);
    CHECK(idx.front() == 8);
    for (std::size_t i = 1; i < idx.size() / 2; ++i)
        CHECK(idx[i] > idx[i - 1]);
    CHECK(idx[idx.size() / 2 - 1] == 128);

    const SpectralTable t = spectral_table(Potential::zero(), {5, -6, 9, 9, 2});
    CHECK(t.rows.size() == 3);  // 2 dropped by the contract floor, duplicate merged
    CHECK(t.row(9) != nullptr);
    CHECK(t.row(-6) != nullptr);
    CHECK(t.row(2) == nullptr);
}

TEST_CASE("csv export round trip")
{
    const SpectralTable t = spectral_table(Potential::zero(), 4, 6);
    std::ostringstream os;
    write_csv(t, os);
    const std::string text = os.str();
    CHECK(text.starts_with("n,re_mu,im_mu"));
    int lines = 0;
    for (char ch : text)
        if (ch == '\n')
            ++lines;
    CHECK(lines == 1 + 3);

    // first data row parses back to mu = 4 pi
    std::istringstream is(text);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    std::replace(row.begin(), row.end(), ',', ' ');
    std::istringstream rs(row);
    int n;
    double re_mu, im_mu;
    rs >> n >> re_mu >> im_mu;
    CHECK(n == 4);
    CHECK(std::abs(re_mu - 4.0 * pi) < 1e-10);
    CHECK(std::abs(im_mu) < 1e-12);
}
