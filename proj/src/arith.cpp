#include "nfkit/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nfkit/errors.hpp"

namespace nfkit {

Integer isqrt(Integer const& n)
{
    if (n < 0) throw DomainError("isqrt of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(Integer const& n, Integer* root)
{
    if (n < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) *root = isqrt(n);
    return true;
}

bool is_prime(Integer const& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Integer mod(Integer const& a, Integer const& m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer floor_div(Integer const& a, Integer const& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer ceil_div(Integer const& a, Integer const& b)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer ipow(Integer const& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational rpow(Rational const& base, long e)
{
    if (e < 0) {
        if (base == 0) throw DomainError("zero to a negative power");
        Rational inv = 1 / base;
        return rpow(inv, -e);
    }
    Rational r(ipow(base.get_num(), static_cast<unsigned long>(e)),
               ipow(base.get_den(), static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
}

Integer floor(Rational const& q)
{
    return floor_div(q.get_num(), q.get_den());
}

Integer ceil(Rational const& q)
{
    return ceil_div(q.get_num(), q.get_den());
}

int kronecker(Integer const& a, Integer const& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

unsigned valuation(Integer n, Integer const& p)
{
    if (n == 0) throw DomainError("valuation of zero");
    unsigned v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

namespace {

// Brent's cycle finding; returns a nontrivial factor or 0 on failure.
Integer brent_rho(Integer const& n, unsigned long c, std::uint64_t budget)
{
    Integer y = 2, x, g = 1, q = 1, ys;
    std::uint64_t r = 1, used = 0;
    const std::uint64_t m = 128;
    auto step = [&](Integer& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                step(y);
                Integer d = x - y;
                q = q * abs(d);
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
            used += lim;
            if (used > budget) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            step(ys);
            Integer d = x - ys;
            d = abs(d);
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

void split_composite(Integer const& n, std::map<Integer, unsigned>& out, std::uint64_t budget)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer root;
    if (is_square(n, &root)) {
        split_composite(root, out, budget);
        split_composite(root, out, budget);
        return;
    }
    for (unsigned long c = 1; c < 16; ++c) {
        Integer d = brent_rho(n, c, budget);
        if (d != 0) {
            split_composite(d, out, budget);
            Integer rest = n / d;
            split_composite(rest, out, budget);
            return;
        }
    }
    throw LimitError("could not factor the composite cofactor " + n.get_str());
}

}  // namespace

Factorization factor_integer(Integer n, std::uint64_t trial_bound, std::uint64_t rho_iterations)
{
    if (n == 0) throw DomainError("cannot factor zero");
    n = abs(n);
    std::map<Integer, unsigned> found;
    for (std::uint64_t p = 2; p <= trial_bound; p = (p == 2 ? 3 : p + 2)) {
        if (n == 1) break;
        if (p * p > n) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        if (e) found[Integer(static_cast<unsigned long>(p))] += e;
    }
    split_composite(n, found, rho_iterations);
    return {found.begin(), found.end()};
}

std::vector<Integer> prime_divisors(Integer const& n)
{
    std::vector<Integer> out;
    for (auto const& [p, e] : factor_integer(n)) out.push_back(p);
    return out;
}

Integer squarefree_core(Integer const& n)
{
    if (n == 0) throw DomainError("squarefree core of zero");
    Integer core = n < 0 ? -1 : 1;
    for (auto const& [p, e] : factor_integer(n))
        if (e % 2) core *= p;
    return core;
}

std::string to_string(Integer const& n) { return n.get_str(); }

std::string to_string(Rational const& q) { return q.get_str(); }

long double to_long_double(Rational const& q)
{
    // Truncate |q| to a 64-bit mantissa times a power of two, so neither the
    // precision nor the exponent range of double limits the result.
    if (q == 0) return 0;
    Integer num = abs(q.get_num());
    Integer const& den = q.get_den();
    long shift = 66 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                       static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
    Integer t = shift >= 0 ? Integer((num << shift) / den) : Integer(num / (den << -shift));
    long extra = static_cast<long>(mpz_sizeinbase(t.get_mpz_t(), 2)) - 64;
    if (extra > 0) {
        t >>= extra;
        shift -= extra;
    }
    long double v = std::ldexp(static_cast<long double>(mpz_get_ui(t.get_mpz_t())), static_cast<int>(-shift));
    return q < 0 ? -v : v;
}

Rational rational_from_string(std::string const& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0) throw DomainError("not a rational number: " + s);
    q.canonicalize();
    return q;
}

}  // namespace nfkit
