#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nfkit/errors.hpp"
#include "nfkit/geometry.hpp"
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

// Brute-force box scan: every nonzero v with v^T G v <= bound, normalized so
// that the last nonzero coordinate is positive.
std::vector<std::vector<Integer>> box_scan(RatMatrix const& G, Rational const& bound, long r)
{
    const std::size_t n = G.rows();
    std::vector<std::vector<Integer>> out;
    std::vector<long> x(n, -r);
    for (;;) {
        bool zero = true, positive = false;
        for (std::size_t i = n; i-- > 0;)
            if (x[i] != 0) {
                zero = false;
                positive = x[i] > 0;
                break;
            }
        if (!zero && positive) {
            Rational v = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) v += G(i, j) * x[i] * x[j];
            if (v <= bound) out.emplace_back(x.begin(), x.end());
        }
        std::size_t i = 0;
        while (i < n && ++x[i] > r) x[i++] = -r;
        if (i == n) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("real embeddings")
{
    auto K = field("x^2-235");
    auto e = real_embeddings(K);
    REQUIRE(e.size() == 2);
    auto r = refine(e[0], Rational(1, 100));
    CHECK(r.hi - r.lo < Rational(1, 100));
    CHECK(r.lo > 15);
    CHECK(r.hi < 16);
    CHECK(r.lo * r.lo < 235);
    CHECK(r.hi * r.hi > 235);
    CHECK(e[1].approx() == doctest::Approx(-std::sqrt(235.0)).epsilon(1e-14));
    CHECK(real_embeddings(field("x^2+3")).empty());
    CHECK(real_embeddings(field("x^3-2")).size() == 1);
    for (auto f : corpus) {
        auto L = field(f);
        auto es = real_embeddings(L);
        CHECK(static_cast<int>(es.size()) == L->signature().first);
        RatPoly p(L->polynomial());
        for (auto const& x : es) CHECK(sgn(p.eval(x.lo)) * sgn(p.eval(x.hi)) < 0);
        for (std::size_t i = 1; i < es.size(); ++i) CHECK(es[i].hi <= es[i - 1].lo);
    }
}

TEST_CASE("complex embeddings")
{
    auto K = field("x^3-2");
    auto c = complex_embeddings(K);
    REQUIRE(c.size() == 1);
    const long double pi = std::acos(-1.0L);
    auto z = std::polar(std::cbrt(2.0L), 2 * pi / 3);
    CHECK(std::abs(c[0].approx - z) < 1e-15L);
    CHECK(c[0].radius < 1e-12L);
    CHECK(c[0].mirror().imag() < 0);
    for (auto f : corpus) {
        auto L = field(f);
        CHECK(static_cast<int>(complex_embeddings(L).size()) == L->signature().second);
    }
}

TEST_CASE("signs and floors")
{
    auto K = field("x^2-235");
    auto e = real_embeddings(K);
    CHECK(sign_at(e[0], K->gen()) == 1);
    CHECK(sign_at(e[1], K->gen()) == -1);
    CHECK(sign_at(e[0], K->zero()) == 0);
    CHECK(sign_at(e[0], K->parse("15-a")) == -1);
    CHECK(sign_at(e[1], K->parse("15-a")) == 1);
    CHECK(floor_at(e[0], K->gen()) == 15);
    CHECK(floor_at(e[1], K->gen()) == -16);
    CHECK(floor_at(e[0], K->from_rational(7)) == 7);
    CHECK(floor_at(e[0], K->parse("a/5")) == 3);

    std::mt19937_64 rng(21);
    for (auto f : corpus) {
        auto L = field(f);
        for (auto const& x : real_embeddings(L)) {
            long double root = x.approx();
            for (int t = 0; t < 20; ++t) {
                FieldElem a = random_elem(L, rng, 9), b = random_elem(L, rng, 9);
                CHECK(sign_at(x, a * b) == sign_at(x, a) * sign_at(x, b));
                // float oracle away from zero
                long double v = 0;
                auto q = a.coords();
                for (std::size_t k = q.size(); k-- > 0;) v = v * root + to_long_double(q[k]);
                if (std::abs(v) > 1e-6L) CHECK(sign_at(x, a) == (v > 0 ? 1 : -1));
                if (std::abs(v - std::floor(v)) > 1e-6L && std::abs(v - std::ceil(v)) > 1e-6L)
                    CHECK(floor_at(x, a) == Integer(std::to_string(static_cast<long long>(std::floor(v)))));
            }
        }
    }
}

TEST_CASE("logarithmic embedding")
{
    auto K = field("x^2-3");
    FieldElem u = K->parse("2+a");
    auto l = log_embedding(u);
    REQUIRE(l.values.size() == 2);
    const long double expected = std::log(2.0L + std::sqrt(3.0L));
    CHECK(std::abs(l.values[0] - expected) < 1e-15L);
    CHECK(std::abs(l.values[1] + expected) < 1e-15L);
    CHECK(l.error <= 1e-10L);
    CHECK(std::abs(l.values[0] - 1.3169L) < 1e-3L);
    auto m = log_embedding(K->from_rational(-1));
    CHECK(m.values == std::vector<long double>{0, 0});
    auto sq = log_embedding(u * u);
    CHECK(std::abs(sq.values[0] - 2 * l.values[0]) < 1e-15L);
    CHECK_THROWS_AS(log_embedding(K->zero()), DomainError);
    CHECK_THROWS_AS(log_embedding(field("x^3-2")->gen()), DomainError);

    for (auto D : fundamental_discriminants(1, 300, 1)) {
        QuadUnit eps = fundamental_unit(D);
        Field L = quadratic_field(D);
        FieldElem v = L->from_rational(Rational(eps.x)) + L->gen() * Rational(eps.y);
        for (long k : {1, 3, -2}) {
            auto img = log_embedding(v.pow(k));
            CHECK(std::abs(img.values[0] + img.values[1]) <= 2 * img.error);
        }
    }
}

TEST_CASE("Minkowski bounds")
{
    CHECK(minkowski_bound(field("x^4-10x^2+1")) == Rational(9, 2));
    Rational b = minkowski_bound(field("x^2+3"));
    CHECK(b < Rational(111, 100));
    CHECK(to_long_double(b) == doctest::Approx(2 * std::sqrt(3.0) / std::acos(-1.0)).epsilon(1e-12));
    Rational c = minkowski_bound(field("x^2-235"));
    CHECK(c * c * 4 >= 940);
    CHECK(to_long_double(c) == doctest::Approx(std::sqrt(940.0) / 2).epsilon(1e-12));
    for (auto f : corpus) {
        auto L = field(f);
        const int d = L->degree(), s = L->signature().second;
        long double fact = std::tgamma(d + 1.0L);
        long double expect = std::pow(4 / std::acos(-1.0L), s) * fact / std::pow((long double)d, d) *
                             std::sqrt(std::abs(to_long_double(Rational(maximal_order(L).discriminant()))));
        Rational got = minkowski_bound(L);
        CHECK(to_long_double(got) >= expect * (1 - 1e-15L));
        CHECK(to_long_double(got) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("T2 Gram matrices")
{
    auto K = field("x^2+3");
    MinkowskiGram G = minkowski_gram(maximal_order(K));
    CHECK(G.error == 0);
    CHECK(G.gram(0, 0) == 2);
    CHECK(G.gram(1, 1) == 2);
    CHECK(abs(G.gram(0, 1)) == 1);
    // det of the T2 Gram matrix of O_K is |disc O_K|
    for (auto f : corpus) {
        auto L = field(f);
        Order O = maximal_order(L);
        MinkowskiGram M = minkowski_gram(O);
        long double det_val = to_long_double(det(M.gram));
        long double disc = std::abs(to_long_double(Rational(O.discriminant())));
        CHECK(det_val == doctest::Approx(disc).epsilon(1e-12));
        CHECK(M.error < Rational(1, 1000000000));
        for (std::size_t i = 0; i < M.gram.rows(); ++i) CHECK(M.gram(i, i) > 0);
    }
    auto L = field("x^3-2");
    CHECK(to_long_double(t2_upper(L->one())) == doctest::Approx(3).epsilon(1e-15));
    CHECK(to_long_double(t2_upper(L->gen())) == doctest::Approx(3 * std::pow(2.0, 2.0 / 3)).epsilon(1e-15));
}

TEST_CASE("Fincke-Pohst examples")
{
    RatMatrix I2 = RatMatrix::identity(2);
    auto v1 = fincke_pohst(I2, 1);
    std::sort(v1.begin(), v1.end());
    CHECK(v1 == std::vector<std::vector<Integer>>{{0, 1}, {1, 0}});
    auto v2 = fincke_pohst(I2, 2);
    CHECK(v2.size() == 4);
    CHECK(std::find(v2.begin(), v2.end(), std::vector<Integer>{1, 1}) != v2.end());
    CHECK(std::find(v2.begin(), v2.end(), std::vector<Integer>{-1, 1}) != v2.end());

    // the six units of Z[(1 + sqrt -3)/2], one per sign pair
    auto K = field("x^2+3");
    Order O = maximal_order(K);
    MinkowskiGram G = minkowski_gram(O);
    auto v = fincke_pohst(G, 2);
    CHECK(v.size() == 3);
    for (auto const& c : v) CHECK(abs(O.element(c).norm()) == 1);

    RatMatrix bad(2, 2);
    bad(0, 0) = 1, bad(1, 1) = -1;
    CHECK_THROWS_AS(fincke_pohst(bad, 3), DomainError);
    CHECK_THROWS_AS(fincke_pohst(RatMatrix::identity(6), 1000, 100), LimitError);
}

TEST_CASE("Fincke-Pohst against box scan")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> ent(-4, 4), bnd(1, 20);
    int done = 0;
    while (done < 120) {
        const std::size_t n = done % 2 ? 3 : 2;
        RatMatrix A(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = ent(rng);
        RatMatrix G = A.transpose() * A;
        for (std::size_t i = 0; i < n; ++i) G(i, i) += Rational(1, 3);
        Rational bound(bnd(rng));
        // coordinates are bounded by sqrt(bound / lambda_min) <= sqrt(bound * ||G^-1||)
        RatMatrix inv = inverse(G);
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += inv(i, i);
        long r = static_cast<long>(std::sqrt(to_long_double(bound * tr))) + 1;
        auto got = fincke_pohst(G, bound);
        std::sort(got.begin(), got.end());
        CHECK(got == box_scan(G, bound, r));
        ++done;
    }
}

TEST_CASE("Fincke-Pohst with a rounded Gram matrix")
{
    auto K = field("x^4-2");
    Order O = maximal_order(K);
    MinkowskiGram G = minkowski_gram(O);
    CHECK(G.error > 0);
    Rational bound = 40;
    auto v = fincke_pohst(G, bound);
    // exact values: T2(x) = sum |sigma(x)|^2 by embedding each vector separately
    for (auto const& c : v) CHECK(t2_upper(O.element(c)) <= bound + G.error * 100);
    // the unit 1 and the root a are short
    CHECK(std::find(v.begin(), v.end(), std::vector<Integer>{1, 0, 0, 0}) != v.end());
}

TEST_CASE("principality")
{
    auto K = field("x^2-235");
    Order O = maximal_order(K);
    Ideal p2 = ideal_from_gens(O, {K->from_rational(2), K->parse("a+1")});
    CHECK_FALSE(quadratic_generator(p2).has_value());
    auto g = quadratic_generator(ideal_mul(p2, p2));
    REQUIRE(g.has_value());
    CHECK(principal_ideal(O, *g) == ideal_mul(p2, p2));
    auto h = quadratic_generator(principal_ideal(O, K->parse("a+3")));
    REQUIRE(h.has_value());
    CHECK(principal_ideal(O, *h) == principal_ideal(O, K->parse("a+3")));
    CHECK_THROWS_AS(quadratic_generator(unit_ideal(maximal_order(field("x^3-2")))), DomainError);

    auto L = field("x^4-10x^2+1");
    Order OL = maximal_order(L);
    for (auto const& P : prime_decomposition(OL, 2)) {
        auto s = short_generator(P.ideal);
        REQUIRE(s.has_value());
        CHECK(principal_ideal(OL, *s) == P.ideal);
    }
}

TEST_CASE("class number one certification")
{
    auto r = verify_class_number_one(field("x^4-10x^2+1"));
    CHECK(r.status == ClassNumberOneStatus::confirmed);
    CHECK(r.bound == Rational(9, 2));
    CHECK_FALSE(r.generators.empty());
    for (auto const& [P, g] : r.generators) CHECK(principal_ideal(P.ideal.order(), g) == P.ideal);

    CHECK(verify_class_number_one(field("x^2-5")).status == ClassNumberOneStatus::confirmed);
    CHECK(verify_class_number_one(field("x^2+3")).status == ClassNumberOneStatus::confirmed);

    auto K = field("x^2-235");
    auto s = verify_class_number_one(K);
    CHECK(s.status == ClassNumberOneStatus::refuted);
    REQUIRE(s.witness.has_value());
    Order O = maximal_order(K);
    CHECK(s.witness->ideal == ideal_from_gens(O, {K->from_rational(2), K->parse("a+1")}));
}

TEST_CASE("ideal enumeration")
{
    auto K = field("x^2+5");
    Order O = maximal_order(K);
    auto I = ideals_up_to(O, 10);
    CHECK(I[0].is_unit());
    // count by norm from the Dedekind zeta coefficients: sum_{d | n} chi(d)
    std::vector<long> by_norm(11, 0);
    for (auto const& J : I) ++by_norm[J.norm().get_ui()];
    for (long n = 1; n <= 10; ++n) {
        long expect = 0;
        for (long dv = 1; dv <= n; ++dv)
            if (n % dv == 0) expect += kronecker(-20, dv);
        CHECK(by_norm[n] == expect);
    }
}

TEST_CASE("ideal class count agrees with forms")
{
    for (int sign : {-1, 1})
        for (auto D : fundamental_discriminants(1, 500, sign)) {
            CAPTURE(D);
            Field K = quadratic_field(D);
            std::size_t h = sign < 0 ? FormClassGroup(D).class_number()
                                     : WideClassGroup(D).group().order().get_ui();
            CHECK(ideal_class_count(K) == h);
            auto r = verify_class_number_one(K);
            CHECK((r.status == ClassNumberOneStatus::confirmed) == (h == 1));
            CHECK(r.status != ClassNumberOneStatus::inconclusive);
        }
}

TEST_CASE("plot data")
{
    auto K = field("x^2+3");
    Order O = maximal_order(K);
    auto pts = plot_lattice_points(O, 2);
    auto has = [&](long double x, long double y) {
        return std::any_of(pts.begin(), pts.end(),
                           [&](PlotPoint const& p) { return std::abs(p.x - x) < 1e-12L && std::abs(p.y - y) < 1e-12L; });
    };
    CHECK(has(0, 0));
    CHECK(has(1, 0));
    CHECK(has(0.5L, std::sqrt(3.0L) / 2));
    CHECK_FALSE(has(0.5L, 0));
    for (auto const& p : pts) CHECK((std::abs(p.x) <= 2 && std::abs(p.y) <= 2));
    CHECK(std::abs(fundamental_domain_area(O) - std::sqrt(3.0L) / 2) < 1e-9L);
    CHECK_THROWS_AS(plot_lattice_points(maximal_order(field("x^2-3")), 2), DomainError);

    auto hyp = plot_unit_hyperbola_points(12, 3);
    auto find = [&](Rational a, Rational b) {
        return *std::find_if(hyp.begin(), hyp.end(), [&](auto const& p) { return p.a == a && p.b == b; });
    };
    CHECK(find(2, 1).on_curve);
    CHECK(find(2, 1).in_order);
    CHECK(find(-2, 1).on_curve);
    CHECK(find(1, 0).on_curve);
    CHECK_FALSE(find(1, 1).on_curve);
    std::size_t units = std::count_if(hyp.begin(), hyp.end(), [](auto const& p) { return p.on_curve && p.in_order; });
    CHECK(units == 6);  // +-1, +-2 +-a
    auto gold = plot_unit_hyperbola_points(5, 1);
    CHECK(std::any_of(gold.begin(), gold.end(), [](auto const& p) {
        return p.a == Rational(1, 2) && p.b == Rational(1, 2) && p.in_order && p.on_curve;
    }));

    auto logs = plot_log_units(12, 2);
    CHECK(logs.size() == 10);
    for (auto const& p : logs) CHECK(std::abs(p.x + p.y) < 1e-12L);
    for (auto const& p : logs) CHECK(std::abs(p.x - p.k * std::log(2.0L + std::sqrt(3.0L))) < 1e-12L);
}
