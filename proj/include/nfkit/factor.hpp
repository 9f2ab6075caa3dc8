#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nfkit/poly.hpp"

namespace nfkit {

struct ModFactorization {
    Integer unit;  // leading coefficient of the input
    std::vector<std::pair<ModPoly, unsigned>> factors;  // monic irreducible
};

/// Squarefree decomposition, distinct-degree and equal-degree (Cantor-Zassenhaus)
/// factorization over F_p. All randomness comes from `seed`; factors are returned
/// sorted by (degree, coefficients) so the output does not depend on the seed.
/// DomainError for a zero polynomial or a composite modulus.
ModFactorization factor_mod_p(ModPoly const& f, std::uint64_t seed = 1);

struct IntFactorization {
    Integer content;  // signed so that content * prod(factors^m) == f
    std::vector<std::pair<IntPoly, unsigned>> factors;  // primitive, positive lc
};

/// Zassenhaus: factor modulo a good prime, Hensel lift, recombine by subsets.
IntFactorization factor_over_Z(IntPoly const& f);

/// The rational polynomial f has degree >= 1 and no nontrivial factor over Q.
bool is_irreducible_over_Q(RatPoly const& f);

/// Product content * prod(factor^multiplicity), for round-trip checks.
IntPoly expand(IntFactorization const& fac);

}  // namespace nfkit
