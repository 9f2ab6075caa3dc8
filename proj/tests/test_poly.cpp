#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nfkit/errors.hpp"
#include "nfkit/factor.hpp"
#include "nfkit/matrix.hpp"
#include "nfkit/poly.hpp"
#include "oracles.hpp"

using namespace nfkit;
using oracle::random_poly;

namespace {

RatPoly P(char const* s) { return parse_poly(s); }

// Sylvester-matrix resultant, independent of the subresultant PRS.
Rational sylvester_resultant(RatPoly const& a, RatPoly const& b)
{
    const int m = a.degree(), n = b.degree();
    RatMatrix s(m + n, m + n);
    auto ac = a.coeffs(), bc = b.coeffs();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s(i, i + j) = ac[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s(n + i, i + j) = bc[n - j];
    return det(s);
}

// Rabin's test: h of degree n is irreducible over F_q iff x^(q^n) = x mod h
// and gcd(x^(q^(n/r)) - x, h) = 1 for every prime r dividing n.
bool rabin_irreducible(ModPoly const& h)
{
    Integer const& q = h.modulus();
    const int n = h.degree();
    ModPoly x = ModPoly::x(q);
    auto frob = [&](int k) { return powmod(x, ipow(q, static_cast<unsigned long>(k)), h); };
    if (frob(n) != divrem(x, h).second) return false;
    for (int r = 2; r <= n; ++r) {
        bool prime = true;
        for (int d = 2; d * d <= r; ++d) prime = prime && r % d != 0;
        if (!prime || n % r) continue;
        if (gcd(frob(n / r) - x, h).degree() > 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("parse and format")
{
    CHECK(to_string(P("x^2-235")) == "x^2-235");
    CHECK(to_string(P("3x^2 + 1/2 x - 7")) == "(6*x^2+x-14)/2");
    CHECK(to_string(P("(1+a)/2"), "a") == "(a+1)/2");
    CHECK(P("2(x+1)^2") == P("2x^2+4x+2"));
    std::string var;
    parse_poly("a^3 - 2", &var);
    CHECK(var == "a");
    CHECK_THROWS_AS(P("x^2 + y"), ParseError);
    CHECK_THROWS_AS(P("x^2 +"), ParseError);
    CHECK_THROWS_AS(P("1/(x+1)"), ParseError);
    try {
        P("x^2 $ 1");
        FAIL("expected a parse error");
    } catch (ParseError const& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("poly_arith examples")
{
    CHECK(gcd(P("x^2-1"), P("x-1")) == P("x-1"));
    auto [q, r] = divrem(P("x^2-235"), P("x-2"));
    CHECK(q == P("x+2"));
    CHECK(r == P("-231"));
    CHECK(P("x-1") * P("x+1") == P("x^2-1"));
    CHECK_THROWS_AS(divrem(P("x"), RatPoly{}), DomainError);

    auto [q2, r2] = divrem(P("x^3/2 + 1/3"), P("2x/3 - 1"));
    CHECK(q2 * P("2x/3 - 1") + r2 == P("x^3/2 + 1/3"));
    CHECK(r2.degree() < 1);

    auto e = xgcd(P("x^2+1"), P("x^3-2"));
    CHECK(e.g == P("1"));
    CHECK(e.s * P("x^2+1") + e.t * P("x^3-2") == P("1"));
}

TEST_CASE("resultant examples")
{
    CHECK(resultant(P("x-2"), P("x-3")) == -1);
    CHECK(resultant(P("x^2-2"), P("x^2-3")) == 1);
    CHECK(resultant(P("x^2-1"), P("x-1")) == 0);
    CHECK_THROWS_AS(resultant(P("x"), RatPoly{}), DomainError);
}

TEST_CASE("discriminant examples")
{
    CHECK(discriminant(P("x^2-235")) == 940);
    CHECK(discriminant(P("x^2+3")) == -12);
    CHECK(discriminant(P("x^2-1")) == 4);
    CHECK(discriminant(P("x^4-10x^2+1")) == 147456);
    CHECK(discriminant(P("x^4-13x^2+16")) == 2822400);
    CHECK(discriminant(P("x^4+4x^2+2")) == 2048);
    CHECK(discriminant(P("x^4-x^3+x^2-x+1")) == 125);
    CHECK_THROWS_AS(discriminant(P("7")), DomainError);
}

TEST_CASE("factor_mod_p examples")
{
    auto f = IntPoly{-235, 0, 1};
    auto r7 = factor_mod_p(ModPoly(f, Integer(7)), 1);
    REQUIRE(r7.factors.size() == 2);
    CHECK(r7.factors[0].first == ModPoly(Integer(7), {2, 1}));
    CHECK(r7.factors[1].first == ModPoly(Integer(7), {5, 1}));

    auto r2 = factor_mod_p(ModPoly(f, Integer(2)), 1);
    REQUIRE(r2.factors.size() == 1);
    CHECK(r2.factors[0].first == ModPoly(Integer(2), {1, 1}));
    CHECK(r2.factors[0].second == 2);

    auto r3 = factor_mod_p(ModPoly(f, Integer(3)), 1);
    REQUIRE(r3.factors.size() == 2);
    CHECK(r3.factors[0].first == ModPoly(Integer(3), {1, 1}));
    CHECK(r3.factors[1].first == ModPoly(Integer(3), {2, 1}));

    CHECK_THROWS_AS(factor_mod_p(ModPoly(f, Integer(9)), 1), DomainError);
}

TEST_CASE("factor_mod_p handles p-th powers and is seed independent")
{
    // (x^2+x+1)^3 * (x+1)^2 * x over F_3 involves a cube, i.e. a p-th power.
    Integer p(3);
    ModPoly a(p, {1, 1, 1}), b(p, {1, 1}), x = ModPoly::x(p);
    ModPoly f = a * a * a * b * b * x;
    auto fac1 = factor_mod_p(f, 1);
    ModPoly prod = ModPoly::constant(fac1.unit, p);
    for (auto const& [g, m] : fac1.factors)
        for (unsigned i = 0; i < m; ++i) prod = prod * g;
    CHECK(prod == f);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        IntPoly g = random_poly(rng, 12, 30);
        if (g.degree() < 1) continue;
        for (unsigned long q : {2UL, 5UL, 101UL}) {
            ModPoly gm(g, Integer(q));
            if (gm.is_zero()) continue;
            auto u = factor_mod_p(gm, 1);
            auto v = factor_mod_p(gm, 12345);
            REQUIRE(u.factors.size() == v.factors.size());
            for (std::size_t i = 0; i < u.factors.size(); ++i)
                CHECK(u.factors[i].first.degree() == v.factors[i].first.degree());
            ModPoly back = ModPoly::constant(u.unit, Integer(q));
            for (auto const& [h, m] : u.factors) {
                CHECK(rabin_irreducible(h));
                for (unsigned i = 0; i < m; ++i) back = back * h;
            }
            CHECK(back == gm);
        }
    }
}

TEST_CASE("factor_over_Z examples")
{
    auto irr = [](char const* s) { return is_irreducible_over_Q(P(s)); };
    CHECK(irr("x^2-235"));
    CHECK(irr("x^4-13x^2+16"));
    CHECK(irr("x^4-x^3+x^2-x+1"));
    CHECK_FALSE(irr("x^2-1"));
    CHECK(irr("x^4-10x^2+1"));  // every reduction mod p splits, still irreducible
    CHECK_THROWS_AS(irr("5"), DomainError);

    auto f = factor_over_Z(IntPoly{-1, 0, 0, 0, 1});
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].first == IntPoly{-1, 1});
    CHECK(f.factors[1].first == IntPoly{1, 1});
    CHECK(f.factors[2].first == IntPoly{1, 0, 1});

    auto g = factor_over_Z(IntPoly{-12, 0, 6});  // 6(x^2-2)
    CHECK(g.content == 6);
    REQUIRE(g.factors.size() == 1);

    // Non-monic factors: (2x+1)^2 (3x^2-5) x
    IntPoly h = IntPoly{1, 2} * IntPoly{1, 2} * IntPoly{-5, 0, 3} * IntPoly::x() * Integer(-4);
    auto fh = factor_over_Z(h);
    CHECK(expand(fh) == h);
    CHECK(fh.factors.size() == 3);
}

TEST_CASE("Zassenhaus remultiplies exactly on random products")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly a = random_poly(rng, 8, 50), b = random_poly(rng, 8, 50);
        if (a.is_zero() || b.is_zero()) continue;
        IntPoly f = a * b;
        auto fac = factor_over_Z(f);
        CHECK(expand(fac) == f);
        for (auto const& [g, m] : fac.factors) {
            CHECK(g.content() == 1);
            CHECK(g.lc() > 0);
        }
    }
}

TEST_CASE("resultant agrees with the Sylvester determinant and detects common factors")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        RatPoly a(random_poly(rng, 6, 20)), b(random_poly(rng, 6, 20));
        if (a.degree() < 1 || b.degree() < 1) continue;
        if (trial % 3 == 0) {
            RatPoly c(random_poly(rng, 2, 5));
            if (c.degree() >= 1) {
                a = a * c;
                b = b * c;
            }
        }
        Rational r = resultant(a, b);
        CHECK(r == sylvester_resultant(a, b));
        CHECK((r == 0) == (gcd(a, b).degree() >= 1));
    }
}

TEST_CASE("discriminant of a product")
{
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 100) {
        RatPoly f(random_poly(rng, 5, 20)), g(random_poly(rng, 5, 20));
        if (f.degree() < 1 || g.degree() < 1) continue;
        if (discriminant(f) == 0 || discriminant(g) == 0) continue;
        Rational r = resultant(f, g);
        if (r == 0) continue;
        CHECK(discriminant(f * g) == discriminant(f) * discriminant(g) * r * r);
        ++checked;
    }
}

TEST_CASE("Sturm root counts")
{
    CHECK(sturm_real_root_count(P("x^2-235"), std::nullopt, std::nullopt) == 2);
    CHECK(sturm_real_root_count(P("x^3-2"), std::nullopt, std::nullopt) == 1);
    CHECK(sturm_real_root_count(P("x^2+3"), std::nullopt, std::nullopt) == 0);
    CHECK(sturm_real_root_count(P("x^2-235"), Rational(15), Rational(16)) == 1);
    CHECK(sturm_real_root_count(P("x^2-4"), Rational(-2), Rational(2)) == 1);  // (-2, 2]
    CHECK(sturm_real_root_count(P("x^4-10x^2+1"), std::nullopt, std::nullopt) == 4);
    CHECK_THROWS_AS(sturm_real_root_count(P("(x-1)^2"), std::nullopt, std::nullopt), DomainError);

    // Non-real roots come in conjugate pairs, and all real roots lie in (-B, B].
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        RatPoly f(random_poly(rng, 9, 20));
        if (f.degree() < 1) continue;
        f = squarefree_part(f);
        int r = sturm_real_root_count(f, std::nullopt, std::nullopt);
        CHECK(r <= f.degree());
        CHECK((f.degree() - r) % 2 == 0);
            Rational b = root_bound(f);
        CHECK(sturm_real_root_count(f, -b, b) == r);
    }
}

TEST_CASE("squarefree part")
{
    CHECK(squarefree_part(P("(x-1)^2")) == P("x-1"));
    CHECK(squarefree_part(P("x^2-235")) == P("x^2-235"));
    CHECK(squarefree_part(P("(x^2+1)^2(x-2)")) == P("(x^2+1)(x-2)"));
    CHECK(squarefree_part(P("4(x-1/2)^3")) == P("x-1/2"));
}
