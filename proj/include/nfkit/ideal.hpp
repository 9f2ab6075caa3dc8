#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nfkit/order.hpp"

namespace nfkit {

/// Nonzero integral ideal of a maximal order, stored as the lower-triangular
/// HNF of its Z-basis in order coordinates.
class Ideal {
public:
    Ideal() = default;
    /// Rows are order coordinates of Z-module generators; DomainError when
    /// they span a zero or non-full module. The caller guarantees closure.
    Ideal(Order O, IntMatrix const& generators);

    Order const& order() const { return O_; }
    IntMatrix const& hnf_basis() const { return hnf_; }
    Integer const& norm() const { return norm_; }
    /// Smallest positive rational integer in the ideal.
    Integer const& minimum() const { return hnf_(0, 0); }
    std::vector<FieldElem> basis() const;
    bool contains(FieldElem const& a) const;
    bool contains_coords(std::vector<Integer> const& x) const;
    bool is_unit() const { return norm_ == 1; }

    bool operator==(Ideal const& o) const;
    bool operator!=(Ideal const& o) const { return !(*this == o); }

private:
    Order O_;
    IntMatrix hnf_;
    Integer norm_;
};

/// DomainError when all generators are zero or one is not integral.
Ideal ideal_from_gens(Order const& O, std::vector<FieldElem> const& gens);
Ideal principal_ideal(Order const& O, FieldElem const& a);
Ideal unit_ideal(Order const& O);
Ideal ideal_mul(Ideal const& a, Ideal const& b);
Ideal ideal_pow(Ideal const& a, unsigned e);
Ideal ideal_add(Ideal const& a, Ideal const& b);

struct PrimeIdeal {
    Ideal ideal;
    Integer p;
    unsigned e = 0, f = 0;
    FieldElem gen2;  // ideal = (p, gen2)
    /// Element of O with beta * P contained in pO and beta not in pO.
    std::vector<Integer> beta;

    bool operator==(PrimeIdeal const& o) const { return ideal == o.ideal; }
};

/// Dedekind-Kummer applied to alpha, or to another generator theta of K
/// with p not dividing [O : Z[theta]] when p divides the index of Z[alpha].
/// DomainError when no such theta is found (common index divisors).
std::vector<PrimeIdeal> prime_decomposition(Order const& O, Integer const& p);

/// Fractional ideal num / den with no common rational factor.
struct FracIdeal {
    Ideal num;
    Integer den = 1;
};

FracIdeal frac_ideal(Ideal const& num, Integer const& den);
FracIdeal principal_frac_ideal(Order const& O, FieldElem const& a);
FracIdeal frac_mul(FracIdeal const& a, FracIdeal const& b);
bool operator==(FracIdeal const& a, FracIdeal const& b);

long valuation(Ideal const& I, PrimeIdeal const& P);
long valuation(FracIdeal const& I, PrimeIdeal const& P);

using IdealFactorization = std::vector<std::pair<PrimeIdeal, long>>;

IdealFactorization factor_ideal(Ideal const& I);
/// Exponents may be negative.
IdealFactorization factor_ideal(FracIdeal const& I);
/// Product of P^e over nonnegative exponents.
Ideal recombine(Order const& O, IdealFactorization const& fac);

struct RamifiedPrime {
    Integer p;
    std::vector<std::pair<unsigned, unsigned>> shape;  // (e_i, f_i)
};

/// Primes dividing disc(O_K) with their splitting shapes.
std::vector<RamifiedPrime> ramified_primes(Field const& K);

}  // namespace nfkit
