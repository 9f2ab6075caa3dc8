#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nfkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Prime factorization as (prime, exponent) pairs, primes ascending.
using Factorization = std::vector<std::pair<Integer, unsigned>>;

Integer isqrt(Integer const& n);
bool is_square(Integer const& n, Integer* root = nullptr);
bool is_prime(Integer const& n);

/// Remainder in [0, |m|).
Integer mod(Integer const& a, Integer const& m);
Integer floor_div(Integer const& a, Integer const& b);
Integer ceil_div(Integer const& a, Integer const& b);
Integer ipow(Integer const& base, unsigned long e);
Rational rpow(Rational const& base, long e);

/// Floor and ceiling of a rational.
Integer floor(Rational const& q);
Integer ceil(Rational const& q);

int kronecker(Integer const& a, Integer const& n);

/// p-adic valuation of a nonzero integer.
unsigned valuation(Integer n, Integer const& p);

/// Trial division up to `trial_bound`, then Brent's variant of Pollard rho
/// on the composite cofactors. Throws LimitError when a composite cofactor
/// survives the rho budget rather than returning a partial answer.
Factorization factor_integer(Integer n, std::uint64_t trial_bound = 1000000,
                             std::uint64_t rho_iterations = 1u << 22);

std::vector<Integer> prime_divisors(Integer const& n);

/// Primes in [2, bound] by a sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Squarefree kernel sign(n) * prod p^(e mod 2).
Integer squarefree_core(Integer const& n);

std::string to_string(Integer const& n);
std::string to_string(Rational const& q);

/// Conversions that never go through `double` for large values.
long double to_long_double(Rational const& q);
Rational rational_from_string(std::string const& s);

}  // namespace nfkit
