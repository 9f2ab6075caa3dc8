#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "nfkit/abgrp.hpp"
#include "nfkit/errors.hpp"
#include "oracles.hpp"

using namespace nfkit;
using oracle::AutBrute;
using oracle::partitions;

namespace {

IntMatrix diag(std::vector<long> d)
{
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

FinAbGroup G(std::vector<long> d)
{
    FinAbGroup g;
    for (long x : d) g.divisors.emplace_back(x);
    return g;
}

void check_snf(IntMatrix const& M)
{
    SmithForm s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.S);
    CHECK(abs(det(s.U)) == 1);
    CHECK(abs(det(s.V)) == 1);
    Integer prev = 1;
    for (std::size_t i = 0; i < s.S.rows(); ++i)
        for (std::size_t j = 0; j < s.S.cols(); ++j) {
            if (i != j) {
                CHECK(s.S(i, j) == 0);
                continue;
            }
            Integer d = s.S(i, i);
            CHECK(d >= 0);
            // d_i | d_(i+1), zeros last
            if (prev == 0)
                CHECK(d == 0);
            else
                CHECK(d % prev == 0);
            prev = d;
        }
}

}  // namespace

TEST_CASE("smith normal form examples")
{
    SmithForm s = smith_normal_form(diag({2, 3}));
    CHECK(s.S == diag({1, 6}));
    CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));
    CHECK(smith_normal_form(diag({6})).S == diag({6}));
    check_snf(diag({2, 3}));
    IntMatrix z(2, 3);
    check_snf(z);
}

TEST_CASE("smith normal form on random matrices")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_int_distribution<long> big(-1000000, 1000000), small(-4, 4);
    for (int t = 0; t < 150; ++t) {
        int m = dim(rng), n = dim(rng);
        IntMatrix M(m, n);
        bool use_small = t % 2 == 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = use_small ? small(rng) : big(rng);
        CAPTURE(t);
        check_snf(M);
    }
}

TEST_CASE("groups from relations")
{
    IntMatrix r6(1, 1);
    r6(0, 0) = 6;
    auto g6 = group_from_relations(1, r6);
    CHECK(g6.group() == G({6}));
    CHECK(g6.group().to_string() == "Z/6");
    CHECK(group_from_relations(2, diag({5, 5})).group() == G({5, 5}));
    auto free = group_from_relations(1, IntMatrix(0, 1));
    CHECK(free.group().free_rank == 1);
    CHECK(free.group().divisors.empty());
    CHECK_THROWS_AS(group_from_relations(1, IntMatrix(0, 1), false), DomainError);
    CHECK(abelian_group({2, 3}) == G({6}));
    CHECK(abelian_group({4, 6}) == G({2, 12}));

    // coordinates respect the relations
    IntMatrix rels(2, 3);
    rels(0, 0) = 2, rels(0, 1) = 4, rels(0, 2) = 6;
    rels(1, 0) = 0, rels(1, 1) = 3, rels(1, 2) = 9;
    auto P = group_from_relations(3, rels);
    CHECK(P.group().divisors == std::vector<Integer>{Integer(6)});
    CHECK(P.group().free_rank == 1);
    CHECK(P.is_zero(rels.row_vector(0)));
    CHECK(P.is_zero(rels.row_vector(1)));
    CHECK_FALSE(P.is_zero({1, 0, 0}));
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            std::vector<Integer> x{a, b, a + b};
            CHECK(P.coordinates(P.element(P.coordinates(x))) == P.coordinates(x));
        }
}

TEST_CASE("sylow subgroups")
{
    CHECK(sylow_subgroup(G({6}), 5).is_trivial());
    CHECK(sylow_subgroup(G({75}), 5) == G({25}));
    CHECK(sylow_subgroup(G({5, 35}), 5) == G({5, 5}));
    FinAbGroup inf;
    inf.free_rank = 1;
    CHECK_THROWS_AS(sylow_subgroup(inf, 5), DomainError);
}

TEST_CASE("automorphism counts")
{
    CHECK(aut_order_abelian_p_group(G({5})) == 4);
    CHECK(aut_order_abelian_p_group(G({25})) == 20);
    CHECK(aut_order_abelian_p_group(G({5, 5})) == 480);
    CHECK(aut_order_abelian_p_group(G({})) == 1);
    CHECK_THROWS_AS(aut_order_abelian_p_group(G({6})), DomainError);
}

TEST_CASE("automorphism formula against brute force")
{
    AutBrute brute;
    // (Z/2)^n has too many subgroups for the memo beyond order 64
    for (auto [p, limit] : {std::pair{2L, 64L}, std::pair{3L, 243L}, std::pair{5L, 625L}}) {
        long order = 1;
        for (int n = 1;; ++n) {
            order *= p;
            if (order > limit) break;
            std::vector<std::vector<int>> parts;
            std::vector<int> cur;
            partitions(n, n, cur, parts);
            for (auto const& e : parts) {
                std::vector<long> mods;
                FinAbGroup g;
                for (int k : e) {
                    long q = 1;
                    for (int i = 0; i < k; ++i) q *= p;
                    mods.push_back(q);
                    g.divisors.emplace_back(q);
                }
                CAPTURE(g.to_string());
                CHECK(aut_order_abelian_p_group(g) == Integer(std::to_string(brute.run(mods))));
            }
        }
    }
}

TEST_CASE("cohen-lenstra masses")
{
    RationalInterval w = cohen_lenstra_wp(5, 20);
    CHECK(w.width() < Rational(1, Integer("1000000000000")));
    CHECK(w.lo < w.hi);
    // independent float product
    long double prod = 1;
    long double pk = 25;
    for (int k = 2; k <= 60; ++k, pk *= 5) prod *= 1 - 1 / pk;
    CHECK(std::abs(static_cast<double>(to_long_double(w.midpoint()) - prod)) < 1e-12);
    CHECK(std::abs(static_cast<double>(to_long_double(w.midpoint())) - 0.950416) < 1e-6);

    RationalInterval m = cohen_lenstra_mass(G({5}), 5, 20);
    CHECK(std::abs(static_cast<double>(to_long_double(m.midpoint())) - 0.047521) < 1e-6);
    CHECK(std::abs(static_cast<double>(1 - to_long_double(w.midpoint())) - 0.049584) < 1e-6);
    CHECK(cohen_lenstra_wp(5, 30).width() < cohen_lenstra_wp(5, 20).width());
    CHECK_THROWS_AS(cohen_lenstra_mass(G({6}), 5, 20), DomainError);

    // partial sums of masses over p-groups of order <= p^4 increase and stay below 1
    for (long p : {2L, 3L, 5L}) {
        Rational total = 0;
        Rational prev = -1;
        for (int n = 0; n <= 4; ++n) {
            std::vector<std::vector<int>> parts;
            std::vector<int> cur;
            partitions(n, n, cur, parts);
            for (auto const& e : parts) {
                FinAbGroup g;
                for (int k : e) g.divisors.push_back(ipow(Integer(p), k));
                total += cohen_lenstra_mass(g, p, 40).hi;
            }
            CHECK(total > prev);
            CHECK(total < 1);
            prev = total;
        }
    }
}
