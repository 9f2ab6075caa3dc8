#include "nfkit/factor.hpp"

#include <algorithm>

#include "nfkit/errors.hpp"

namespace nfkit {

namespace {

bool poly_less(ModPoly const& a, ModPoly const& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
    return false;
}

bool poly_less(IntPoly const& a, IntPoly const& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
    return false;
}

ModPoly exact_quotient(ModPoly const& a, ModPoly const& b) { return divrem(a, b).first; }

bool is_one(ModPoly const& f) { return f.degree() == 0 && f.coeffs()[0] == 1; }

// Squarefree factorization over F_p of a monic polynomial.
void squarefree_mod_p(ModPoly const& f, unsigned mult, std::vector<std::pair<ModPoly, unsigned>>& out)
{
    Integer const& p = f.modulus();
    if (f.degree() < 1) return;
    ModPoly d = f.derivative();
    if (d.is_zero()) {
        // f = g(x^p) = g(x)^p since Frobenius is the identity on F_p.
        const unsigned long pu = p.get_ui();
        std::vector<Integer> root;
        for (std::size_t i = 0; i < f.coeffs().size(); i += pu) root.push_back(f.coeffs()[i]);
        squarefree_mod_p(ModPoly(p, root), mult * static_cast<unsigned>(pu), out);
        return;
    }
    ModPoly c = gcd(f, d);
    ModPoly w = exact_quotient(f, c);
    unsigned i = 1;
    while (!is_one(w)) {
        ModPoly y = gcd(w, c);
        ModPoly fac = exact_quotient(w, y);
        if (fac.degree() > 0) out.emplace_back(fac.monic(), i * mult);
        ++i;
        w = y;
        c = exact_quotient(c, y);
    }
    if (c.degree() > 0) {
        const unsigned long pu = p.get_ui();
        std::vector<Integer> root;
        for (std::size_t k = 0; k < c.coeffs().size(); k += pu) root.push_back(c.coeffs()[k]);
        squarefree_mod_p(ModPoly(p, root).monic(), mult * static_cast<unsigned>(pu), out);
    }
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly g)
{
    std::vector<std::pair<ModPoly, int>> out;
    Integer const& p = g.modulus();
    ModPoly x = ModPoly::x(p);
    ModPoly h = divrem(x, g).second;
    for (int d = 1; 2 * d <= g.degree(); ++d) {
        h = powmod(h, p, g);
        ModPoly fac = gcd(g, h - x);
        if (fac.degree() > 0) {
            out.emplace_back(fac, d);
            g = exact_quotient(g, fac);
            h = divrem(h, g).second;
        }
    }
    if (g.degree() > 0) out.emplace_back(g, g.degree());
    return out;
}

// Equal-degree splitting of a product of distinct irreducibles of degree d.
void equal_degree(ModPoly const& f, int d, gmp_randclass& rng, std::vector<ModPoly>& out)
{
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    Integer const& p = f.modulus();
    for (;;) {
        std::vector<Integer> c(f.degree());
        for (auto& x : c) x = rng.get_z_range(p);
        ModPoly a(p, c);
        if (a.degree() < 1) continue;
        ModPoly b;
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            ModPoly t = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                t = divrem(t * t, f).second;
                b = b + t;
            }
        } else {
            Integer e = (ipow(p, static_cast<unsigned long>(d)) - 1) / 2;
            b = powmod(a, e, f) - ModPoly::constant(1, p);
        }
        ModPoly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(exact_quotient(f, g), d, rng, out);
            return;
        }
    }
}

// Extended gcd over F_p: returns (s, t) with s a + t b = 1, assuming coprime inputs.
std::pair<ModPoly, ModPoly> xgcd_mod(ModPoly const& a, ModPoly const& b)
{
    Integer const& p = a.modulus();
    ModPoly r0 = a, r1 = b;
    ModPoly s0 = ModPoly::constant(1, p), s1(p, {});
    ModPoly t0(p, {}), t1 = ModPoly::constant(1, p);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        ModPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        ModPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw DomainError("Hensel lifting: factors are not coprime");
    Integer inv;
    mpz_invert(inv.get_mpz_t(), r0.coeffs()[0].get_mpz_t(), p.get_mpz_t());
    return {s0 * inv, t0 * inv};
}

ModPoly with_modulus(ModPoly const& f, Integer const& m) { return ModPoly(f.lift(), m); }

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
// Afterwards the same relations hold mod m^2.
void hensel_step(IntPoly const& f, ModPoly& g, ModPoly& h, ModPoly& s, ModPoly& t, Integer const& m)
{
    Integer m2 = m * m;
    ModPoly G = with_modulus(g, m2), H = with_modulus(h, m2);
    ModPoly S = with_modulus(s, m2), T = with_modulus(t, m2);
    ModPoly F(f, m2);
    ModPoly e = F - G * H;
    auto [q, r] = divrem(S * e, H);
    ModPoly g2 = G + T * e + q * G;
    ModPoly h2 = H + r;
    ModPoly b = S * g2 + T * h2 - ModPoly::constant(1, m2);
    auto [c, d] = divrem(S * b, h2);
    ModPoly s2 = S - d;
    ModPoly t2 = T - T * b - c * g2;
    g = std::move(g2);
    h = std::move(h2);
    s = std::move(s2);
    t = std::move(t2);
}

// F = lc(F) * prod(factors) mod p with monic factors. Returns monic lifts mod target.
void lift_tree(IntPoly const& F, std::vector<ModPoly> const& factors, std::size_t lo, std::size_t hi,
               Integer const& p, Integer const& target, std::vector<ModPoly>& out)
{
    if (hi - lo == 1) {
        out[lo] = ModPoly(F, target).monic();
        return;
    }
    std::size_t mid = (lo + hi) / 2;
    ModPoly g = ModPoly::constant(F.lc(), p), h = ModPoly::constant(1, p);
    for (std::size_t i = lo; i < mid; ++i) g = g * factors[i];
    for (std::size_t i = mid; i < hi; ++i) h = h * factors[i];
    // Degree normalization required by the Hensel step: deg s < deg h, deg t < deg g.
    ModPoly s = divrem(xgcd_mod(g, h).first, h).second;
    ModPoly t = divrem(ModPoly::constant(1, p) - s * g, h).first;
    Integer m = p;
    while (m < target) {
        hensel_step(F, g, h, s, t, m);
        m *= m;
    }
    lift_tree(with_modulus(g, target).lift(), factors, lo, mid, p, target, out);
    lift_tree(with_modulus(h, target).lift(), factors, mid, hi, p, target, out);
}

Integer symmetric(Integer const& x, Integer const& m)
{
    Integer r = mod(x, m);
    if (2 * r > m) r -= m;
    return r;
}

IntPoly symmetric(ModPoly const& f)
{
    std::vector<Integer> c = f.coeffs();
    for (auto& x : c) x = symmetric(x, f.modulus());
    return IntPoly(std::move(c));
}

// Irreducible factors of a primitive squarefree polynomial with positive lc.
std::vector<IntPoly> zassenhaus(IntPoly h)
{
    std::vector<IntPoly> result;
    if (h.degree() <= 1) {
        if (h.degree() == 1) result.push_back(h);
        return result;
    }
    if (h.coeffs()[0] == 0) {
        result.push_back(IntPoly::x());
        auto rest = zassenhaus(*divide_exact(h, IntPoly::x()));
        result.insert(result.end(), rest.begin(), rest.end());
        return result;
    }

    // Try several good primes and keep the one with the fewest modular factors.
    Integer best_p = 0;
    std::vector<ModPoly> best;
    int tried = 0;
    for (unsigned long q = 3; tried < 7; q += 2) {
        Integer p(q);
        if (!is_prime(p)) continue;
        if (mpz_divisible_p(h.lc().get_mpz_t(), p.get_mpz_t())) continue;
        ModPoly hm(h, p);
        if (gcd(hm, hm.derivative()).degree() > 0) continue;
        ++tried;
        auto fac = factor_mod_p(hm, q);
        if (best_p == 0 || fac.factors.size() < best.size()) {
            best_p = p;
            best.clear();
            for (auto& [f, e] : fac.factors) best.push_back(f);
        }
        if (best.size() == 1) break;
    }
    if (best.size() == 1) {
        result.push_back(h);
        return result;
    }

    // Coefficients of lc(h) * g / lc(g) for any factor g are bounded by
    // 2^n * ||h||_2; the extra lc(h) keeps the bound valid after division.
    const int n = h.degree();
    Integer norm2 = 0;
    for (auto const& c : h.coeffs()) norm2 += c * c;
    Integer bound = (isqrt(norm2) + 1) * ipow(2, static_cast<unsigned long>(n)) * abs(h.lc());
    Integer M = best_p;
    while (M <= 2 * bound) M *= best_p;

    std::vector<ModPoly> lifted(best.size());
    lift_tree(h, best, 0, best.size(), best_p, M, lifted);

    std::vector<ModPoly> rest = lifted;
    for (std::size_t k = 1; 2 * k <= rest.size();) {
        bool found = false;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            Integer lc = h.lc();
            // Constant-term pretest.
            Integer c0 = lc;
            for (auto i : idx) c0 = mod(c0 * rest[i].coeffs()[0], M);
            c0 = symmetric(c0, M);
            Integer target = lc * h.coeffs()[0];
            if (c0 != 0 && mpz_divisible_p(target.get_mpz_t(), c0.get_mpz_t())) {
                ModPoly prod = ModPoly::constant(lc, M);
                for (auto i : idx) prod = prod * rest[i];
                IntPoly cand = symmetric(prod).primitive_part();
                if (auto q = divide_exact(h, cand)) {
                    result.push_back(cand);
                    h = *q;
                    std::vector<ModPoly> keep;
                    for (std::size_t i = 0, j = 0; i < rest.size(); ++i) {
                        if (j < idx.size() && idx[j] == i) {
                            ++j;
                            continue;
                        }
                        keep.push_back(rest[i]);
                    }
                    rest = std::move(keep);
                    found = true;
                    break;
                }
            }
            // Next k-subset in lexicographic order.
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == rest.size() - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++k;
    }
    if (h.degree() > 0) result.push_back(h.primitive_part());
    return result;
}

}  // namespace

ModFactorization factor_mod_p(ModPoly const& f, std::uint64_t seed)
{
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    Integer const& p = f.modulus();
    if (!is_prime(p)) throw DomainError("modulus " + p.get_str() + " is not prime");
    ModFactorization out;
    out.unit = f.lc();
    if (f.degree() == 0) return out;

    std::vector<std::pair<ModPoly, unsigned>> sqf;
    squarefree_mod_p(f.monic(), 1, sqf);

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(static_cast<unsigned long>(seed));
    for (auto const& [g, m] : sqf)
        for (auto const& [block, d] : distinct_degree(g)) {
            std::vector<ModPoly> parts;
            equal_degree(block, d, rng, parts);
            for (auto& q : parts) out.factors.emplace_back(std::move(q), m);
        }
    std::sort(out.factors.begin(), out.factors.end(), [](auto const& a, auto const& b) {
        if (poly_less(a.first, b.first)) return true;
        if (poly_less(b.first, a.first)) return false;
        return a.second < b.second;
    });
    return out;
}

IntFactorization factor_over_Z(IntPoly const& f)
{
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    IntFactorization out;
    out.content = f.content();
    if (f.lc() < 0) out.content = -out.content;
    if (f.degree() == 0) return out;
    for (auto const& [g, m] : squarefree_decomposition(f.primitive_part()))
        for (auto& q : zassenhaus(g)) out.factors.emplace_back(std::move(q), m);
    std::sort(out.factors.begin(), out.factors.end(),
              [](auto const& a, auto const& b) { return poly_less(a.first, b.first); });
    return out;
}

bool is_irreducible_over_Q(RatPoly const& f)
{
    if (f.degree() < 1) throw DomainError("irreducibility of a constant polynomial");
    auto fac = factor_over_Z(f.primitive());
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

IntPoly expand(IntFactorization const& fac)
{
    IntPoly r = IntPoly::constant(fac.content);
    for (auto const& [g, m] : fac.factors)
        for (unsigned i = 0; i < m; ++i) r = r * g;
    return r;
}

}  // namespace nfkit
