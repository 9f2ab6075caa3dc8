#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfkit/matrix.hpp"
#include "nfkit/poly.hpp"

namespace nfkit {

class NumberField;
class FieldElem;
/// Fields are shared immutable objects; two fields are the same field only
/// when they are the same object.
using Field = std::shared_ptr<const NumberField>;

struct OrderBasis;  // defined in order.hpp; cached maximal-order data

/// Q[x]/(f) for a monic irreducible integral f. Inputs that are not monic
/// integral are rescaled: if F = c x^d + ... is the primitive integral
/// multiple of the input, the field is defined by c^(d-1) F(x/c), whose root
/// alpha is c times the root theta of the input. `input_root()` returns theta.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    /// DomainError for constant or reducible input.
    static Field create(RatPoly const& f, std::string var = "a");

    IntPoly const& polynomial() const { return f_; }
    RatPoly const& input_polynomial() const { return input_; }
    Integer const& scale() const { return scale_; }
    int degree() const { return f_.degree(); }
    std::pair<int, int> signature() const { return signature_; }
    /// Discriminant of the defining polynomial, i.e. of Z[alpha].
    Integer const& poly_discriminant() const { return disc_; }
    std::string const& var() const { return var_; }

    FieldElem gen() const;
    FieldElem input_root() const;
    FieldElem one() const;
    FieldElem zero() const;
    FieldElem from_rational(Rational const& q) const;
    FieldElem from_coords(std::vector<Rational> const& c) const;
    FieldElem from_int_coords(std::vector<Integer> const& c) const;
    /// Evaluate a polynomial at alpha.
    FieldElem from_poly(RatPoly const& p) const;
    /// Parse an element written as a polynomial in the field variable.
    FieldElem parse(std::string const& text) const;

    /// Reduce an integer coefficient vector of any length modulo f.
    std::vector<Integer> reduce(std::vector<Integer> c) const;

    /// Memoized maximal order data, computed at most once per field.
    template <class Compute>
    std::shared_ptr<const OrderBasis> maximal_order_basis(Compute&& compute) const
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (!max_order_) max_order_ = compute();
        return max_order_;
    }

private:
    NumberField() = default;
    IntPoly f_;
    RatPoly input_;
    Integer scale_ = 1;
    std::string var_;
    std::pair<int, int> signature_;
    Integer disc_;
    // alpha^k in the power basis for k = d .. 2d-2
    std::vector<std::vector<Integer>> high_powers_;

    mutable std::mutex cache_mutex_;
    mutable std::shared_ptr<const OrderBasis> max_order_;
};

/// Element of a number field: numerator coordinates in the power basis
/// 1, alpha, ..., alpha^(d-1) over a common positive denominator.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(Field K, std::vector<Integer> num, Integer den = 1);

    Field const& field() const { return K_; }
    std::vector<Integer> const& numerator() const { return num_; }
    Integer const& denominator() const { return den_; }
    std::vector<Rational> coords() const;
    Rational coord(std::size_t i) const;
    RatPoly as_poly() const;

    bool is_zero() const;
    bool is_rational() const;
    bool is_integral_coords() const { return den_ == 1; }

    FieldElem operator-() const;
    friend FieldElem operator+(FieldElem const& a, FieldElem const& b);
    friend FieldElem operator-(FieldElem const& a, FieldElem const& b);
    friend FieldElem operator*(FieldElem const& a, FieldElem const& b);
    friend FieldElem operator/(FieldElem const& a, FieldElem const& b);
    friend FieldElem operator*(FieldElem const& a, Rational const& q);
    friend FieldElem operator*(Rational const& q, FieldElem const& a) { return a * q; }
    FieldElem& operator+=(FieldElem const& o) { return *this = *this + o; }
    FieldElem& operator-=(FieldElem const& o) { return *this = *this - o; }
    FieldElem& operator*=(FieldElem const& o) { return *this = *this * o; }
    bool operator==(FieldElem const& o) const;
    bool operator!=(FieldElem const& o) const { return !(*this == o); }

    FieldElem inverse() const;
    FieldElem pow(long e) const;

    /// Row i holds the coordinates of this * alpha^i.
    RatMatrix rep_matrix() const;
    Rational trace() const;
    Rational norm() const;
    RatPoly charpoly() const;
    RatPoly minimal_polynomial() const;

    std::string to_string() const;

private:
    void normalize();
    Field K_;
    std::vector<Integer> num_;
    Integer den_ = 1;
};

/// Throws DomainError unless both elements live in the same field object.
void require_same_field(FieldElem const& a, FieldElem const& b);

// ---- polynomials with coefficients in a number field (index i = x^i)

using FieldPoly = std::vector<FieldElem>;

FieldPoly field_poly(Field const& K, RatPoly const& p);
void trim(FieldPoly& p);
int degree(FieldPoly const& p);
FieldPoly add(FieldPoly const& a, FieldPoly const& b);
FieldPoly sub(FieldPoly const& a, FieldPoly const& b);
FieldPoly mul(FieldPoly const& a, FieldPoly const& b);
std::pair<FieldPoly, FieldPoly> divrem(FieldPoly const& a, FieldPoly const& b);
/// Monic gcd; both inputs must share the coefficient field.
FieldPoly gcd(FieldPoly a, FieldPoly b);
FieldPoly monic(FieldPoly const& p);
FieldPoly derivative(FieldPoly const& p);
FieldElem eval(FieldPoly const& p, FieldElem const& x);
/// p(x + c).
FieldPoly shift(FieldPoly const& p, FieldElem const& c);
/// Norm down to Q: prod over conjugates of K, i.e. Res_t(f(t), P(t, x)).
RatPoly norm(FieldPoly const& p);
std::string to_string(FieldPoly const& p, std::string_view var = "x");

// ---- morphisms

/// Field homomorphism determined by the image of the domain's generator alpha.
struct FieldHom {
    Field domain, codomain;
    FieldElem gen_image;
};

/// DomainError unless f_domain(img) = 0 in the codomain.
FieldHom hom_new(Field const& dom, Field const& cod, FieldElem const& img);
FieldHom hom_identity(Field const& K);
FieldElem hom_apply(FieldHom const& h, FieldElem const& a);
/// Apply h1 first, then h2.
FieldHom hom_compose(FieldHom const& h1, FieldHom const& h2);

// ---- compositum and adjoining roots

struct Compositum {
    Field field;
    FieldElem a, b;  // roots of the two input polynomials inside `field`
    long k;  // primitive element is a + k*b
};

/// Absolute field Q(gamma) containing a root a of f and a root b of g with
/// gamma = a + k b; k is the first of 1, 2, 3, ... for which the norm
/// resultant is squarefree. Among its irreducible factors one of largest
/// degree defines the result. DomainError for reducible inputs.
Compositum compositum(RatPoly const& f, RatPoly const& g, std::string var = "a");

struct Adjoined {
    Field field;  // L = Q(gamma), gamma = beta + k alpha
    FieldHom embedding;  // K -> L
    FieldElem root;  // beta in L, a root of h
};

/// Absolute field generated over K by a root of h in K[x]. h must be
/// squarefree; when h is reducible over K, the root of a largest-degree
/// factor of the norm is taken. Shifts are scanned in the order 0, 1, -1, 2, ...
Adjoined adjoin_root(Field const& K, FieldPoly const& h, std::string var = "a");

}  // namespace nfkit
