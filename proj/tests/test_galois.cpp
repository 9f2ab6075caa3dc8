#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "nfkit/errors.hpp"
#include "nfkit/galois.hpp"
#include "nfkit/quadfield.hpp"

using namespace nfkit;

namespace {

char const* const corpus[] = {"x^2-235", "x^2+3", "x^2-5", "x^3-2", "x^4+4x^2+2", "x^4-x^3+x^2-x+1",
                              "x^4-10x^2+1", "x^4-13x^2+16", "x^4-2", "x^3-19", "x^3-x^2-2x-8"};

Field field(char const* f) { return NumberField::create(parse_poly(f)); }

FieldElem random_elem(Field const& K, std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Integer> c;
    for (int i = 0; i < K->degree(); ++i) c.push_back(dist(rng));
    return K->from_int_coords(c);
}

bool same_set(std::vector<FieldElem> a, std::vector<FieldElem> b)
{
    if (a.size() != b.size()) return false;
    for (auto const& x : a)
        if (std::find(b.begin(), b.end(), x) == b.end()) return false;
    return true;
}

// Multiplication table of a group given by permutations closed under composition.
GroupTable perm_table(std::vector<std::vector<int>> const& perms)
{
    auto compose = [](std::vector<int> const& p, std::vector<int> const& q) {
        std::vector<int> r(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
        return r;
    };
    GroupTable t(perms.size(), std::vector<std::size_t>(perms.size()));
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (std::size_t j = 0; j < perms.size(); ++j) {
            auto c = compose(perms[i], perms[j]);
            t[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return t;
}

// Closure of a set of generating permutations, identity first.
GroupTable generated(std::vector<std::vector<int>> gens)
{
    std::vector<int> id(gens[0].size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    std::vector<std::vector<int>> all{id};
    for (std::size_t k = 0; k < all.size(); ++k)
        for (auto const& g : gens) {
            std::vector<int> r(id.size());
            for (std::size_t i = 0; i < id.size(); ++i) r[i] = g[all[k][i]];
            if (std::find(all.begin(), all.end(), r) == all.end()) all.push_back(r);
        }
    return perm_table(all);
}

// Quaternion group on {+-1, +-i, +-j, +-k}: index 2u + s is sign s of unit u.
GroupTable quaternion_table()
{
    // unit products: m[u][v] = (sign, unit)
    const int mul[4][4][2] = {{{0, 0}, {0, 1}, {0, 2}, {0, 3}},
                              {{0, 1}, {1, 0}, {0, 3}, {1, 2}},
                              {{0, 2}, {1, 3}, {1, 0}, {0, 1}},
                              {{0, 3}, {0, 2}, {1, 1}, {1, 0}}};
    GroupTable t(8, std::vector<std::size_t>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int s = (a % 2) ^ (b % 2) ^ mul[a / 2][b / 2][0];
            t[a][b] = static_cast<std::size_t>(2 * mul[a / 2][b / 2][1] + s);
        }
    return t;
}

}  // namespace

TEST_CASE("roots in a field")
{
    Field K2 = field("x^2-2");
    FieldElem a = K2->gen();
    CHECK(same_set(roots_in_field(parse_poly("x^2-2"), K2), {a, -a}));
    CHECK(roots_in_field(parse_poly("x^2-3"), K2).empty());
    CHECK(roots_in_field(parse_poly("x^3-1"), K2).size() == 1);

    Field K = field("x^4-2");
    FieldElem b = K->gen();
    CHECK(same_set(roots_in_field(parse_poly("x^4-2"), K), {b, -b}));

    Field L = field("x^4-13x^2+16");
    auto r = roots_in_field(parse_poly("x^4-13x^2+16"), L);
    REQUIRE(r.size() == 4);
    for (auto const& x : r) CHECK((x.pow(4) - 13 * x.pow(2) + L->from_rational(16)).is_zero());

    // repeated roots are reported once
    CHECK(roots_in_field(parse_poly("(x^2-2)^2*(x-1)"), K2).size() == 3);
}

TEST_CASE("factoring over a number field")
{
    Field K = field("x^2+1");
    auto f = factor_over_field(field_poly(K, parse_poly("x^4-1")));
    REQUIRE(f.size() == 4);
    for (auto const& h : f) CHECK(degree(h) == 1);

    auto g = factor_over_field(field_poly(K, parse_poly("x^4+4")));  // (x^2-2x+2)(x^2+2x+2) over Q
    CHECK(g.size() == 4);

    auto h = factor_over_field(field_poly(K, parse_poly("x^2-2")));
    REQUIRE(h.size() == 1);
    CHECK(degree(h[0]) == 2);

    // the product of the factors is the monic input
    Field C = field("x^3-2");
    FieldPoly p = field_poly(C, parse_poly("x^6-4"));
    FieldPoly prod{C->one()};
    for (auto const& q : factor_over_field(p)) prod = mul(prod, q);
    CHECK(prod == p);
}

TEST_CASE("automorphism groups of the examples")
{
    auto G1 = automorphism_group(field("x^4-13x^2+16"));
    CHECK(G1.order() == 4);
    CHECK(G1.id.tag == "C2xC2");

    Field K = field("x^4-2");
    auto G2 = automorphism_group(K);
    CHECK(G2.order() == 2);
    CHECK(G2.id.tag == "C2");
    CHECK(G2.elements[1].gen_image == -K->gen());

    auto G3 = automorphism_group(field("x^4-x^3+x^2-x+1"));
    CHECK(G3.order() == 4);
    CHECK(G3.id.tag == "C4");

    auto G4 = automorphism_group(field("x^3-2"));
    CHECK(G4.order() == 1);
    CHECK(G4.id.tag == "C1");
    CHECK(automorphism_group(field("x^2-235")).id.tag == "C2");
}

TEST_CASE("group identification")
{
    CHECK(identify_group({{0}}).tag == "C1");
    CHECK(identify_group(quaternion_table()).tag == "Q8");
    CHECK(identify_group(generated({{1, 2, 3, 0}, {3, 2, 1, 0}})).tag == "D4");
    CHECK(identify_group(generated({{1, 2, 0}, {1, 0, 2}})).tag == "S3");
    CHECK(identify_group(generated({{1, 2, 0, 4, 3}})).tag == "C6");
    CHECK(identify_group(generated({{1, 2, 3, 4, 5, 6, 7, 0}})).tag == "C8");
    CHECK(identify_group(generated({{1, 2, 3, 0, 4, 5}, {0, 1, 2, 3, 5, 4}})).tag == "C4xC2");
    CHECK(identify_group(generated({{1, 0, 2, 3, 4, 5}, {0, 1, 3, 2, 4, 5}, {0, 1, 2, 3, 5, 4}})).tag ==
          "C2xC2xC2");
    CHECK(identify_group(generated({{1, 0, 3, 2}, {2, 3, 0, 1}})).tag == "C2xC2");
    CHECK(identify_group(generated({{1, 2, 3, 4, 5, 6, 0}})).tag == "C7");
    auto a4 = identify_group(generated({{1, 2, 0, 3}, {1, 0, 3, 2}}));
    CHECK(a4.order == 12);
    CHECK(a4.to_string() == "other(12)");

    CHECK_THROWS_AS(identify_group({{0, 1}, {0, 1}}), DomainError);
    CHECK_THROWS_AS(identify_group({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), DomainError);  // Latin square, no identity
    CHECK_THROWS_AS(identify_group({}), DomainError);
    // Latin square with identity that is not associative
    GroupTable loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(identify_group(loop), DomainError);
}

TEST_CASE("splitting fields")
{
    auto t0 = std::chrono::steady_clock::now();
    Field S = splitting_field(parse_poly("x^4-2"));
    CHECK(S->degree() == 8);
    auto G = automorphism_group(S);
    CHECK(G.order() == 8);
    CHECK(G.id.tag == "D4");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 30);
    MESSAGE("x^4-2 splitting field and group: " << secs << " s");

    CHECK(splitting_field(parse_poly("x^2-235"))->degree() == 2);
    CHECK(splitting_field(parse_poly("x^4-13x^2+16"))->degree() == 4);
    CHECK_THROWS_AS(splitting_field(parse_poly("x^4-2"), 6), LimitError);
    CHECK_THROWS_AS(splitting_field(parse_poly("x^4-1")), DomainError);
}

TEST_CASE("normal basis generators")
{
    Field K = field("x^4+4x^2+2");
    FieldElem a = K->gen();
    CHECK(normal_basis_check(-2 * a.pow(3) + 10 * a.pow(2) - 2 * a));
    CHECK_FALSE(normal_basis_check(a));
    CHECK_FALSE(normal_basis_check(K->one()));
    CHECK_THROWS_AS(normal_basis_check(field("x^4-2")->gen()), DomainError);

    FieldElem beta = random_normal_basis_generator(K, 7);
    CHECK(normal_basis_check(beta));
    CHECK(random_normal_basis_generator(K, 7) == beta);
    CHECK_THROWS_AS(random_normal_basis_generator(K, 7, 3, 0), LimitError);

    Field Q2 = field("x^2-2");
    FieldElem g = random_normal_basis_generator(Q2, 1);
    CHECK(g.coord(1) != 0);
    CHECK(g.coord(0) != 0);
}

TEST_CASE("integral normal bases and tame ramification")
{
    Field C = field("x^4-x^3+x^2-x+1");
    CHECK(integral_normal_basis_check(C->gen()));
    CHECK_FALSE(integral_normal_basis_check(C->one()));
    CHECK_THROWS_AS(integral_normal_basis_check(C->gen() * Rational(1, 2)), DomainError);

    Field K = field("x^4+4x^2+2");
    auto G = automorphism_group(K);
    std::mt19937_64 rng(11);
    int normal = 0;
    for (int i = 0; i < 200; ++i) {
        FieldElem b = random_elem(K, rng, 3);
        CHECK_FALSE(integral_normal_basis_check(G, b));
        normal += normal_basis_check(G, b);
    }
    CHECK(normal > 0);

    auto t1 = is_tamely_ramified(K);
    CHECK_FALSE(t1.tame);
    REQUIRE(t1.witnesses.size() == 1);
    CHECK(t1.witnesses[0] == std::pair<Integer, unsigned>(2, 4));

    auto t2 = is_tamely_ramified(C);
    CHECK(t2.tame);
    CHECK(t2.witnesses.empty());

    auto t3 = is_tamely_ramified(field("x^2-235"));
    CHECK_FALSE(t3.tame);
    REQUIRE(t3.witnesses.size() == 1);
    CHECK(t3.witnesses[0] == std::pair<Integer, unsigned>(2, 2));
}

TEST_CASE("automorphisms are ring homomorphisms forming a group")
{
    std::mt19937_64 rng(3);
    for (auto f : corpus) {
        Field K = field(f);
        auto G = automorphism_group(K);
        CAPTURE(f);
        CHECK(K->degree() % G.order() == 0);
        CHECK(G.elements[0].gen_image == K->gen());
        for (auto const& s : G.elements)
            for (int i = 0; i < 5; ++i) {
                FieldElem x = random_elem(K, rng, 5), y = random_elem(K, rng, 5);
                CHECK(hom_apply(s, x + y) == hom_apply(s, x) + hom_apply(s, y));
                CHECK(hom_apply(s, x * y) == hom_apply(s, x) * hom_apply(s, y));
            }
        // Latin square and consistency with composition
        for (std::size_t i = 0; i < G.order(); ++i)
            for (std::size_t j = 0; j < G.order(); ++j) {
                FieldHom c = hom_compose(G.elements[j], G.elements[i]);
                CHECK(c.gen_image == G.elements[G.table[i][j]].gen_image);
            }
        CHECK_NOTHROW(identify_group(G.table));
    }
}

TEST_CASE("splitting field degrees of the corpus")
{
    for (auto f : corpus) {
        RatPoly p = parse_poly(f);
        CAPTURE(f);
        Field S = splitting_field(p);
        long d = p.degree(), n = S->degree(), fact = 1;
        for (long k = 2; k <= d; ++k) fact *= k;
        CHECK(n % d == 0);
        CHECK(fact % n == 0);
        CHECK((automorphism_group(NumberField::create(p)).order() == static_cast<std::size_t>(d)) == (n == d));
    }
}

TEST_CASE("normal basis check is invariant under automorphisms")
{
    std::mt19937_64 rng(5);
    for (auto f : {"x^4+4x^2+2", "x^4-x^3+x^2-x+1", "x^4-13x^2+16", "x^2-235", "x^4-10x^2+1"}) {
        Field K = field(f);
        auto G = automorphism_group(K);
        for (int i = 0; i < 20; ++i) {
            FieldElem b = random_elem(K, rng, 2);
            bool v = normal_basis_check(G, b);
            for (auto const& s : G.elements) CHECK(normal_basis_check(G, hom_apply(s, b)) == v);
        }
    }
}

TEST_CASE("quadratic normal basis closed form")
{
    // beta = a + b w: with w^2 = m the conjugate matrix has determinant -2ab,
    // with w^2 = w + c it has determinant -b(2a + b).
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> dist(-4, 4);
    for (std::int64_t D : {5, 8, 12, -3, -4, 13, 940, -23}) {
        Field K = quadratic_field(D);
        auto G = automorphism_group(K);
        bool omega = ((D % 4) + 4) % 4 == 1;
        for (int i = 0; i < 100; ++i) {
            long a = dist(rng), b = dist(rng);
            FieldElem beta = K->from_int_coords({a, b});
            long det = omega ? -b * (2 * a + b) : -2 * a * b;
            CHECK(normal_basis_check(G, beta) == (det != 0));
        }
    }
}
