#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "nfkit/abgrp.hpp"
#include "nfkit/ideal.hpp"

namespace nfkit {

/// Real embedding given by an isolating interval (lo, hi) of a real root of f.
struct RealEmbedding {
    Field field;
    Rational lo, hi;

    long double approx() const;
};

/// Real embeddings in decreasing order of the root; exact rational endpoints.
std::vector<RealEmbedding> real_embeddings(Field const& K);
/// Bisect until hi - lo < width.
RealEmbedding refine(RealEmbedding const& e, Rational const& width);

/// Non-real embedding alpha -> z with Im z > 0; its mirror is conj(z).
struct ComplexEmbedding {
    Field field;
    std::complex<long double> approx;
    long double radius = 0;  // the root lies within this distance of approx
    std::size_t pair_id = 0;

    std::complex<long double> mirror() const { return std::conj(approx); }
};

/// One embedding per conjugate pair, sorted by real part then imaginary part.
/// Error when the root disks cannot be separated.
std::vector<ComplexEmbedding> complex_embeddings(Field const& K);

/// Enclosure of sigma(a) of width below `width`.
RationalInterval evaluate(RealEmbedding const& e, FieldElem const& a, Rational const& width);
/// Exact sign of sigma(a).
int sign_at(RealEmbedding const& e, FieldElem const& a);
/// Exact floor of sigma(a).
Integer floor_at(RealEmbedding const& e, FieldElem const& a);

struct LogEmbedding {
    std::vector<long double> values;  // log|sigma_i(u)| over the real embeddings
    long double error = 0;  // absolute error bound per component
};

/// Logarithmic embedding of a nonzero element of a totally real field;
/// DomainError for zero or fields with complex places.
LogEmbedding log_embedding(FieldElem const& u);

/// Upper bound (4/pi)^s d!/d^d sqrt|disc O_K| with pi replaced by a lower bound.
Rational minkowski_bound(Field const& K);

/// T2 Gram matrix of a Z-basis: <x, y> = sum over embeddings of sigma(x) conj(sigma(y)).
/// Exact for totally real fields; otherwise every entry is within `error`.
struct MinkowskiGram {
    std::vector<FieldElem> basis;
    RatMatrix gram;
    Rational error = 0;
};

MinkowskiGram minkowski_gram(std::vector<FieldElem> const& basis);
MinkowskiGram minkowski_gram(Order const& O);
MinkowskiGram minkowski_gram(Ideal const& I);
/// T2(x) = sum |sigma(x)|^2, exact for totally real fields, upper bound otherwise.
Rational t2_upper(FieldElem const& x);

/// All nonzero v with v^T G v <= bound, one of each pair +-v (last nonzero
/// coordinate positive). With a nonzero Gram error the result may contain a
/// few extra vectors but never misses one. DomainError when G (minus its error)
/// is not positive definite; LimitError after `budget` enumeration nodes.
std::vector<std::vector<Integer>> fincke_pohst(MinkowskiGram const& G, Rational const& bound,
                                               std::uint64_t budget = 50000000);
std::vector<std::vector<Integer>> fincke_pohst(RatMatrix const& gram, Rational const& bound,
                                               std::uint64_t budget = 50000000);

/// Generator of I found among elements with T2 <= slack * d * gamma_d * N(I)^(2/d),
/// gamma_d the Hermite constant (degree <= 8).
std::optional<FieldElem> short_generator(Ideal const& I, Rational const& slack = Rational(3, 2),
                                         std::uint64_t budget = 5000000);

/// Exact principality test for ideals of quadratic maximal orders: short
/// vectors for imaginary fields, a walk over the lattice minima for real ones.
std::optional<FieldElem> quadratic_generator(Ideal const& I);

enum class ClassNumberOneStatus { confirmed, refuted, inconclusive };

struct ClassNumberOneResult {
    ClassNumberOneStatus status = ClassNumberOneStatus::inconclusive;
    Rational bound;
    /// Every prime of norm <= bound with the generator found for it.
    std::vector<std::pair<PrimeIdeal, FieldElem>> generators;
    /// The non-principal prime (refuted) or the undecided one (inconclusive).
    std::optional<PrimeIdeal> witness;
};

ClassNumberOneResult verify_class_number_one(Field const& K);

/// Integral ideals of O_K with norm <= bound, unit ideal first.
std::vector<Ideal> ideals_up_to(Order const& O, Integer const& bound);

/// Class number of a quadratic field from the ideals below the Minkowski bound,
/// grouped by quadratic_generator.
std::size_t ideal_class_count(Field const& K);

struct PlotPoint {
    long double x, y;
};

/// Minkowski images of the elements of an imaginary quadratic order with
/// |x|, |y| <= box.
std::vector<PlotPoint> plot_lattice_points(Order const& O, Rational const& box);
/// Area of the fundamental parallelogram of O in C.
long double fundamental_domain_area(Order const& O);

struct HyperbolaPoint {
    Rational a, b;  // the element a + b sqrt(m), D = m or 4m
    bool in_order = false;
    bool on_curve = false;  // a^2 - m b^2 = +-1
};

/// Half-integral points (a, b) with |a|, |b| <= box for a real quadratic D.
std::vector<HyperbolaPoint> plot_unit_hyperbola_points(std::int64_t D, Rational const& box);

struct LogUnitPoint {
    long k;
    int sign;
    long double x, y;
};

/// Images of +-eps^k for |k| <= count under the logarithmic embedding.
std::vector<LogUnitPoint> plot_log_units(std::int64_t D, long count);

}  // namespace nfkit
