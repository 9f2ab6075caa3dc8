#include "nfkit/galois.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "nfkit/errors.hpp"
#include "nfkit/factor.hpp"
#include "nfkit/ideal.hpp"
#include "nfkit/order.hpp"

namespace nfkit {

std::vector<FieldPoly> factor_over_field(FieldPoly const& g0)
{
    FieldPoly g = g0;
    trim(g);
    if (g.empty()) throw DomainError("cannot factor the zero polynomial");
    if (degree(g) < 1) return {};
    Field K = g.back().field();
    for (auto const& c : g) require_same_field(c, K->one());
    if (degree(gcd(g, derivative(g))) > 0) throw DomainError("factor_over_field needs a squarefree polynomial");
    if (degree(g) == 1) return {monic(g)};
    FieldElem alpha = K->gen();
    for (long k = 0; k <= 64; k = k > 0 ? -k : 1 - k) {
        FieldPoly gs = shift(g, alpha * Rational(-k));  // g(x - k alpha)
        RatPoly N = norm(gs);
        if (gcd(N, N.derivative()).degree() > 0) continue;
        std::vector<FieldPoly> out;
        for (auto const& [Ni, m] : factor_over_Z(N.primitive()).factors) {
            FieldPoly G = gcd(gs, field_poly(K, RatPoly(Ni)));
            out.push_back(monic(shift(G, alpha * Rational(k))));
        }
        std::stable_sort(out.begin(), out.end(),
                         [](FieldPoly const& a, FieldPoly const& b) { return degree(a) < degree(b); });
        return out;
    }
    throw LimitError("no squarefree norm among the first shifts");
}

std::vector<FieldElem> roots_in_field(RatPoly const& g, Field const& K)
{
    if (g.is_zero()) throw DomainError("roots of the zero polynomial");
    std::vector<FieldElem> roots;
    if (g.degree() < 1) return roots;
    RatPoly sf = squarefree_part(g);
    for (auto const& h : factor_over_field(field_poly(K, sf)))
        if (degree(h) == 1) roots.push_back(-h[0]);
    return roots;
}

GroupId identify_group(GroupTable const& t)
{
    std::size_t n = t.size();
    if (n == 0) throw DomainError("empty group table");
    for (auto const& row : t) {
        if (row.size() != n) throw DomainError("group table is not square");
        std::vector<bool> seen(n, false);
        for (auto v : row) {
            if (v >= n || seen[v]) throw DomainError("group table row is not a permutation");
            seen[v] = true;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<bool> seen(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            if (seen[t[i][j]]) throw DomainError("group table column is not a permutation");
            seen[t[i][j]] = true;
        }
    }
    std::size_t e = n;
    for (std::size_t i = 0; i < n && e == n; ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) ok = t[i][j] == j && t[j][i] == j;
        if (ok) e = i;
    }
    if (e == n) throw DomainError("group table has no identity");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (t[t[a][b]][c] != t[a][t[b][c]]) throw DomainError("group table is not associative");

    bool abelian = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) abelian = abelian && t[a][b] == t[b][a];
    std::map<std::size_t, std::size_t> order_count;
    std::size_t max_order = 1;
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t k = 1, x = a;
        while (x != e) {
            x = t[x][a];
            ++k;
        }
        ++order_count[k];
        max_order = std::max(max_order, k);
    }

    GroupId id;
    id.order = n;
    auto cyclic = [&] { return "C" + std::to_string(n); };
    switch (n) {
    case 1: case 2: case 3: case 5: case 7: id.tag = cyclic(); break;
    case 4: id.tag = max_order == 4 ? "C4" : "C2xC2"; break;
    case 6: id.tag = abelian ? "C6" : "S3"; break;
    case 8:
        if (abelian)
            id.tag = max_order == 8 ? "C8" : max_order == 4 ? "C4xC2" : "C2xC2xC2";
        else
            id.tag = order_count[2] == 5 ? "D4" : "Q8";
        break;
    default: id.tag = "other";
    }
    return id;
}

AutGroup automorphism_group(Field const& K)
{
    AutGroup G;
    G.field = K;
    FieldElem alpha = K->gen();
    auto roots = roots_in_field(RatPoly(K->polynomial()), K);
    // identity first, the rest in the order found
    auto it = std::find(roots.begin(), roots.end(), alpha);
    if (it == roots.end()) throw Error("the generator is not among the roots of its own polynomial");
    std::rotate(roots.begin(), it, it + 1);
    for (auto const& r : roots) G.elements.push_back({K, K, r});
    std::size_t n = roots.size();
    G.table.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // (s_i o s_j)(alpha) = s_i(s_j(alpha))
            FieldElem img = hom_apply(G.elements[i], roots[j]);
            auto pos = std::find(roots.begin(), roots.end(), img);
            if (pos == roots.end()) throw Error("automorphisms are not closed under composition");
            G.table[i][j] = static_cast<std::size_t>(pos - roots.begin());
        }
    G.id = identify_group(G.table);
    return G;
}

Field splitting_field(RatPoly const& f, int degree_cap)
{
    if (!is_irreducible_over_Q(f)) throw DomainError("splitting_field needs an irreducible polynomial");
    Field K = NumberField::create(f);
    if (K->degree() > degree_cap) throw LimitError("splitting field degree exceeds the cap");
    RatPoly sf = f.monic();
    for (;;) {
        auto factors = factor_over_field(field_poly(K, sf));
        FieldPoly const& h = factors.back();  // largest degree
        if (degree(h) <= 1) return K;
        if (static_cast<long>(K->degree()) * degree(h) > degree_cap)
            throw LimitError("splitting field degree exceeds the cap");
        K = adjoin_root(K, h).field;
    }
}

namespace {

AutGroup normal_group(Field const& K)
{
    AutGroup G = automorphism_group(K);
    if (!G.is_normal()) throw DomainError("the field is not normal over Q");
    return G;
}

}  // namespace

bool normal_basis_check(AutGroup const& G, FieldElem const& beta)
{
    if (!G.is_normal()) throw DomainError("the field is not normal over Q");
    if (beta.field() != G.field) throw DomainError("element is not in the field of the group");
    std::size_t d = G.order();
    RatMatrix M(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        auto c = hom_apply(G.elements[i], beta).coords();
        for (std::size_t j = 0; j < d; ++j) M(i, j) = c[j];
    }
    return rank(M) == d;
}

bool normal_basis_check(FieldElem const& beta) { return normal_basis_check(normal_group(beta.field()), beta); }

FieldElem random_normal_basis_generator(Field const& K, std::uint64_t seed, long coeff_bound, std::uint64_t budget)
{
    if (coeff_bound < 1) throw DomainError("coefficient bound must be positive");
    AutGroup G = normal_group(K);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coeff(-coeff_bound, coeff_bound);
    for (std::uint64_t tries = 0; tries < budget; ++tries) {
        std::vector<Integer> c(static_cast<std::size_t>(K->degree()));
        for (auto& v : c) v = coeff(rng);
        FieldElem beta = K->from_int_coords(c);
        if (normal_basis_check(G, beta)) return beta;
    }
    throw LimitError("no normal basis generator within the sampling budget");
}

bool integral_normal_basis_check(AutGroup const& G, FieldElem const& beta)
{
    if (!G.is_normal()) throw DomainError("the field is not normal over Q");
    if (beta.field() != G.field) throw DomainError("element is not in the field of the group");
    Order O = maximal_order(G.field);
    std::size_t d = G.order();
    IntMatrix M(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        auto c = coords_in_order(O, hom_apply(G.elements[i], beta));
        if (!c) throw DomainError("element is not integral");
        for (std::size_t j = 0; j < d; ++j) M(i, j) = (*c)[j];
    }
    return abs(det(M)) == 1;
}

bool integral_normal_basis_check(FieldElem const& beta)
{
    return integral_normal_basis_check(normal_group(beta.field()), beta);
}

TameResult is_tamely_ramified(Field const& K)
{
    TameResult r;
    for (auto const& rp : ramified_primes(K)) {
        std::vector<unsigned> seen;
        for (auto const& [e, f] : rp.shape) {
            if (e % rp.p != 0 || std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
            seen.push_back(e);
            r.witnesses.emplace_back(rp.p, e);
        }
    }
    r.tame = r.witnesses.empty();
    return r;
}

}  // namespace nfkit
