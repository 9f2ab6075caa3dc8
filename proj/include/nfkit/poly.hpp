#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nfkit/arith.hpp"

namespace nfkit {

/// Dense univariate polynomial over Z; coeffs()[i] is the coefficient of x^i.
/// Never stores trailing zeros, so the zero polynomial has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly constant(Integer c);
    static IntPoly monomial(Integer c, std::size_t k);
    static IntPoly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::vector<Integer> const& coeffs() const { return c_; }
    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
    Integer const& lc() const;

    Integer content() const;
    IntPoly primitive_part() const;
    IntPoly derivative() const;

    Integer eval(Integer const& x) const;
    Rational eval(Rational const& x) const;

    IntPoly operator-() const;
    IntPoly& operator+=(IntPoly const& o);
    IntPoly& operator-=(IntPoly const& o);
    IntPoly& operator*=(Integer const& k);
    friend IntPoly operator+(IntPoly a, IntPoly const& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, IntPoly const& b) { return a -= b; }
    friend IntPoly operator*(IntPoly const& a, IntPoly const& b);
    friend IntPoly operator*(IntPoly a, Integer const& k) { return a *= k; }
    friend IntPoly operator*(Integer const& k, IntPoly a) { return a *= k; }
    bool operator==(IntPoly const& o) const { return c_ == o.c_; }

    /// Exact division by an integer dividing every coefficient.
    IntPoly divexact(Integer const& k) const;

private:
    void normalize();
    std::vector<Integer> c_;
};

/// lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(IntPoly const& a, IntPoly const& b);

/// Exact division over Z; returns std::nullopt when b does not divide a.
std::optional<IntPoly> divide_exact(IntPoly const& a, IntPoly const& b);

/// Primitive gcd with positive leading coefficient (times the gcd of contents).
IntPoly gcd(IntPoly const& a, IntPoly const& b);

/// Resultant by the subresultant PRS.
Integer resultant(IntPoly const& a, IntPoly const& b);
Integer discriminant(IntPoly const& f);

/// Squarefree decomposition over Z of a primitive polynomial:
/// f = prod_i g_i^i with g_i squarefree, pairwise coprime, primitive.
std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(IntPoly const& f);

IntPoly compose(IntPoly const& f, IntPoly const& g);

/// Polynomial over Q, stored as a primitive integer polynomial and a
/// positive denominator so gcds and resultants stay in integer arithmetic.
class RatPoly {
public:
    RatPoly() = default;
    RatPoly(IntPoly num, Integer den = 1);
    RatPoly(std::initializer_list<long> coeffs) : RatPoly(IntPoly(coeffs)) {}
    static RatPoly from_coeffs(std::vector<Rational> const& c);
    static RatPoly constant(Rational const& c);
    static RatPoly x() { return RatPoly(IntPoly::x()); }

    int degree() const { return num_.degree(); }
    bool is_zero() const { return num_.is_zero(); }
    Rational coeff(std::size_t i) const;
    Rational lc() const;
    std::vector<Rational> coeffs() const;

    /// f = (scale) * primitive(f): returns primitive integer polynomial
    /// with positive leading coefficient.
    IntPoly primitive() const;
    IntPoly const& numerator() const { return num_; }
    Integer const& denominator() const { return den_; }

    RatPoly monic() const;
    RatPoly derivative() const;
    Rational eval(Rational const& x) const;

    RatPoly operator-() const;
    friend RatPoly operator+(RatPoly const& a, RatPoly const& b);
    friend RatPoly operator-(RatPoly const& a, RatPoly const& b);
    friend RatPoly operator*(RatPoly const& a, RatPoly const& b);
    friend RatPoly operator*(RatPoly const& a, Rational const& k);
    bool operator==(RatPoly const& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    void normalize();
    IntPoly num_;
    Integer den_ = 1;
};

std::pair<RatPoly, RatPoly> divrem(RatPoly const& a, RatPoly const& b);
/// Monic gcd (zero only when both inputs are zero).
RatPoly gcd(RatPoly const& a, RatPoly const& b);

struct RatXgcd {
    RatPoly g, s, t;  // s*a + t*b = g, g monic
};
RatXgcd xgcd(RatPoly const& a, RatPoly const& b);

Rational resultant(RatPoly const& a, RatPoly const& b);
/// (-1)^(d(d-1)/2) Res(f, f') / lc(f); DomainError for constants.
Rational discriminant(RatPoly const& f);
/// f / gcd(f, f'), monic.
RatPoly squarefree_part(RatPoly const& f);
RatPoly compose(RatPoly const& f, RatPoly const& g);

/// Number of distinct real roots in (lo, hi]; an empty bound means -inf/+inf.
/// f must be squarefree (DomainError otherwise).
int sturm_real_root_count(RatPoly const& f, std::optional<Rational> const& lo,
                          std::optional<Rational> const& hi);

/// Sturm chain used by sturm_real_root_count, exposed for interval refinement.
std::vector<IntPoly> sturm_sequence(RatPoly const& f);
int sign_variations(std::vector<IntPoly> const& chain, std::optional<Rational> const& at,
                    bool plus_infinity);

/// Upper bound on the absolute value of every complex root (Cauchy).
Rational root_bound(RatPoly const& f);

std::string to_string(IntPoly const& f, std::string_view var = "x");
std::string to_string(RatPoly const& f, std::string_view var = "x");

/// Parses expressions such as "x^2-235", "(1+a)/2", "3x^2 + 1/2 x - 7".
/// Accepts integer and rational coefficients, '^', '*', implicit products,
/// parentheses and division by nonzero constants. At most one variable name
/// may appear; it is returned through `var` when non-null.
RatPoly parse_poly(std::string_view text, std::string* var = nullptr);

/// Polynomial over F_p with coefficients in [0, p).
class ModPoly {
public:
    ModPoly() = default;
    ModPoly(Integer p, std::vector<Integer> coeffs);
    ModPoly(IntPoly const& f, Integer p);
    static ModPoly constant(Integer c, Integer p);
    static ModPoly x(Integer p);

    Integer const& modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::vector<Integer> const& coeffs() const { return c_; }
    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
    Integer const& lc() const;

    ModPoly monic() const;
    ModPoly derivative() const;
    /// Coefficients in [0, p) reinterpreted over Z.
    IntPoly lift() const;
    Integer eval(Integer const& x) const;

    friend ModPoly operator+(ModPoly const& a, ModPoly const& b);
    friend ModPoly operator-(ModPoly const& a, ModPoly const& b);
    friend ModPoly operator*(ModPoly const& a, ModPoly const& b);
    friend ModPoly operator*(ModPoly const& a, Integer const& k);
    bool operator==(ModPoly const& o) const { return p_ == o.p_ && c_ == o.c_; }

private:
    void normalize();
    Integer p_;
    std::vector<Integer> c_;
};

std::pair<ModPoly, ModPoly> divrem(ModPoly const& a, ModPoly const& b);
ModPoly gcd(ModPoly a, ModPoly b);
/// base^e mod m.
ModPoly powmod(ModPoly const& base, Integer e, ModPoly const& m);

}  // namespace nfkit
