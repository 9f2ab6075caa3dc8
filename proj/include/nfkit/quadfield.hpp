#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nfkit/abgrp.hpp"
#include "nfkit/ideal.hpp"

namespace nfkit {

/// Binary quadratic form a x^2 + b x y + c y^2.
struct Form {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t disc() const { return b * b - 4 * a * c; }
    bool is_primitive() const;
    bool operator==(Form const& o) const = default;
};

struct FormHash {
    std::size_t operator()(Form const& f) const
    {
        std::uint64_t h = static_cast<std::uint64_t>(f.a) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(f.b) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(f.c) + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Discriminant of Q(sqrt m); DomainError when m is a square.
Integer fundamental_discriminant(Integer const& m);
bool is_fundamental_discriminant(std::int64_t D);

/// Fundamental discriminants D with lo <= |D| <= hi and sign(D) = sign,
/// ordered by |D|. Uses a squarefree sieve.
std::vector<std::int64_t> fundamental_discriminants(std::int64_t lo, std::int64_t hi, int sign);

/// Q(sqrt m) defined by x^2 - x + (1 - D)/4 or x^2 - D/4, so that the maximal
/// order has basis 1, a and discriminant D. DomainError unless D is fundamental.
Field quadratic_field(std::int64_t D);

Form principal_form(std::int64_t D);
Form opposite(Form const& f);
bool is_reduced(Form const& f);
/// D > 0: one reduction step (a, b, c) -> (c, b', a') on the cycle.
Form rho(Form const& f);
/// Some reduced form equivalent to f (for D < 0, the reduced form).
Form reduce_to_reduced(Form const& f);
/// D < 0: the reduced form. D > 0: the lexicographically least form on the
/// reduction cycle. DomainError for imprimitive forms or square D.
Form reduce_form(Form const& f);
/// Canonical representative of the product class; DomainError on mismatch.
Form compose(Form const& f, Form const& g);
/// Composition without the final reduction.
Form compose_raw(Form const& f, Form const& g);
/// The forms of the reduction cycle of a reduced indefinite form.
std::vector<Form> reduction_cycle(Form const& f);

/// Narrow (form) class group of a fundamental discriminant.
class FormClassGroup {
public:
    explicit FormClassGroup(std::int64_t D);

    std::int64_t discriminant() const { return D_; }
    std::size_t class_number() const { return reps_.size(); }
    /// One canonical form per class; index 0 is the principal class.
    std::vector<Form> const& representatives() const { return reps_; }
    FinAbGroup const& group() const { return pres_->group(); }
    AbGroupPresentation const& presentation() const { return *pres_; }
    /// Forms generating the group; class coordinates refer to these.
    std::vector<Form> const& generators() const { return gens_; }

    std::size_t class_index(Form const& f) const;
    /// Exponent vector w.r.t. generators() of the class with the given index.
    std::vector<Integer> const& generator_coords(std::size_t idx) const { return gen_coords_[idx]; }
    /// Coordinates in the cyclic components of group().
    std::vector<Integer> coordinates(Form const& f) const;
    /// Canonical form of the class with the given component coordinates.
    Form form_of(std::vector<Integer> const& coords) const;
    std::size_t compose_index(std::size_t i, std::size_t j) const;
    /// Relations between generators() (rows), whose SNF gives group().
    IntMatrix const& relations() const { return rels_; }

private:
    std::int64_t D_;
    IntMatrix rels_;
    std::vector<Form> reps_;
    std::unordered_map<Form, std::size_t, FormHash> index_;  // every reduced form -> class
    std::vector<Form> gens_;
    std::vector<std::vector<Integer>> gen_coords_;
    std::optional<AbGroupPresentation> pres_;
};

FormClassGroup form_class_group(std::int64_t D);

/// Fundamental unit x + y w (w = (1 + sqrt D)/2 or sqrt(D/4)), y > 0, > 1.
struct QuadUnit {
    std::int64_t D = 0;
    Integer x, y;
    int norm = 0;
    /// X, Y with unit = (X + Y sqrt D)/2 and X^2 - D Y^2 = 4 norm.
    Integer pell_x() const;
    Integer pell_y() const;
};

/// Continued fraction expansion; DomainError unless D > 0 is fundamental.
QuadUnit fundamental_unit(std::int64_t D);

/// Wide class group of a quadratic field as a quotient of the form group.
class WideClassGroup {
public:
    explicit WideClassGroup(std::int64_t D);

    std::int64_t discriminant() const { return narrow_.discriminant(); }
    FormClassGroup const& narrow() const { return narrow_; }
    FinAbGroup const& group() const { return pres_->group(); }
    /// Norm of the fundamental unit for D > 0; 0 for D < 0.
    int unit_norm() const { return unit_norm_; }
    std::size_t narrow_class_number() const { return narrow_.class_number(); }

    /// Group element of the class of a nonzero ideal of a maximal order with discriminant D.
    std::vector<Integer> dlog(Ideal const& I) const;
    std::vector<Integer> dlog(Form const& f) const;
    /// Ideal of O in the class with the given component coordinates.
    Ideal ideal_of(Order const& O, std::vector<Integer> const& coords) const;
    /// Generator i of group() as an ideal of O.
    Ideal generator_ideal(Order const& O, std::size_t i) const;

private:
    FormClassGroup narrow_;
    std::optional<AbGroupPresentation> pres_;  // quotient, generators = narrow generators
    int unit_norm_ = 0;
};

WideClassGroup class_group_wide(std::int64_t D);

/// sqrt(D) as an element of K, where D = disc(O) for a quadratic maximal order O.
FieldElem sqrt_disc(Order const& O);
/// Form (a, b, c) with I / content = a Z + ((-b + sqrt D)/2) Z.
Form form_of_ideal(Ideal const& I);
/// The ideal a Z + ((-b + sqrt D)/2) Z for a form with a > 0, or an ideal in
/// the same class otherwise.
Ideal ideal_of_form(Order const& O, Form const& f);

/// Generator g with gO = I, or nothing when I is not principal.
std::optional<FieldElem> is_principal_with_gen(Ideal const& I);

}  // namespace nfkit
