#include "nfkit/numfield.hpp"

#include <algorithm>

#include "nfkit/errors.hpp"
#include "nfkit/factor.hpp"

namespace nfkit {

// ---------------------------------------------------------------- NumberField

Field NumberField::create(RatPoly const& input, std::string var)
{
    if (input.degree() < 1) throw DomainError("defining polynomial must be non-constant");
    if (!is_irreducible_over_Q(input)) throw DomainError("defining polynomial is reducible over Q");
    IntPoly F = input.primitive();
    const int d = F.degree();
    Integer c = F.lc();
    std::vector<Integer> g(d + 1, 1);
    for (int i = 0; i < d; ++i) g[i] = F.coeffs()[i] * ipow(c, static_cast<unsigned long>(d - 1 - i));

    std::shared_ptr<NumberField> K(new NumberField());
    K->f_ = IntPoly(std::move(g));
    K->input_ = input;
    K->scale_ = c;
    K->var_ = std::move(var);
    K->disc_ = discriminant(K->f_);
    const int r = sturm_real_root_count(RatPoly(K->f_), std::nullopt, std::nullopt);
    K->signature_ = {r, (d - r) / 2};

    // alpha^d = -(f_0 + ... + f_{d-1} alpha^{d-1}); later powers by shifting.
    std::vector<Integer> cur(d);
    for (int i = 0; i < d; ++i) cur[i] = -K->f_.coeffs()[i];
    for (int k = d; k <= 2 * d - 2; ++k) {
        K->high_powers_.push_back(cur);
        std::vector<Integer> next(d, 0);
        for (int i = 0; i + 1 < d; ++i) next[i + 1] = cur[i];
        for (int i = 0; i < d; ++i) next[i] -= cur[d - 1] * K->f_.coeffs()[i];
        cur = std::move(next);
    }
    return K;
}

std::vector<Integer> NumberField::reduce(std::vector<Integer> c) const
{
    const std::size_t d = static_cast<std::size_t>(degree());
    if (c.size() <= d) {
        c.resize(d, 0);
        return c;
    }
    // Reduce from the top for lengths beyond 2d-1.
    while (c.size() > 2 * d - 1) {
        const std::size_t k = c.size() - 1;
        Integer t = c[k];
        c.pop_back();
        if (t == 0) continue;
        for (std::size_t i = 0; i < d; ++i) c[k - d + i] -= t * f_.coeffs()[i];
    }
    std::vector<Integer> out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::size_t k = d; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        auto const& row = high_powers_[k - d];
        for (std::size_t i = 0; i < d; ++i) mpz_addmul(out[i].get_mpz_t(), c[k].get_mpz_t(), row[i].get_mpz_t());
    }
    return out;
}

FieldElem NumberField::gen() const
{
    std::vector<Integer> c(degree(), 0);
    if (degree() == 1)
        c[0] = -f_.coeffs()[0];
    else
        c[1] = 1;
    return FieldElem(shared_from_this(), std::move(c));
}

FieldElem NumberField::input_root() const { return gen() * (Rational(1) / Rational(scale_)); }

FieldElem NumberField::one() const { return from_rational(1); }

FieldElem NumberField::zero() const { return from_rational(0); }

FieldElem NumberField::from_rational(Rational const& q) const
{
    std::vector<Integer> c(degree(), 0);
    c[0] = q.get_num();
    return FieldElem(shared_from_this(), std::move(c), q.get_den());
}

FieldElem NumberField::from_coords(std::vector<Rational> const& c) const
{
    if (c.size() != static_cast<std::size_t>(degree())) throw DomainError("coordinate vector has the wrong length");
    RatPoly p = RatPoly::from_coeffs(c);
    std::vector<Integer> num = p.numerator().coeffs();
    num.resize(degree(), 0);
    return FieldElem(shared_from_this(), std::move(num), p.denominator());
}

FieldElem NumberField::from_int_coords(std::vector<Integer> const& c) const
{
    if (c.size() != static_cast<std::size_t>(degree())) throw DomainError("coordinate vector has the wrong length");
    return FieldElem(shared_from_this(), c);
}

FieldElem NumberField::from_poly(RatPoly const& p) const
{
    if (degree() == 1) {
        // alpha is rational here; evaluate instead of reducing.
        return from_rational(p.eval(Rational(-f_.coeffs()[0])));
    }
    return FieldElem(shared_from_this(), reduce(p.numerator().coeffs()), p.denominator());
}

FieldElem NumberField::parse(std::string const& text) const
{
    std::string v;
    RatPoly p = parse_poly(text, &v);
    if (!v.empty() && v != var_)
        throw ParseError("unknown variable '" + v + "', the field generator is '" + var_ + "'", 0);
    return from_poly(p);
}

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem(Field K, std::vector<Integer> num, Integer den) : K_(std::move(K)), num_(std::move(num)), den_(std::move(den))
{
    if (!K_) throw DomainError("element without a field");
    num_ = K_->reduce(std::move(num_));
    if (den_ == 0) throw DomainError("zero denominator");
    normalize();
}

void FieldElem::normalize()
{
    if (den_ < 0) {
        den_ = -den_;
        for (auto& x : num_) x = -x;
    }
    Integer g = den_;
    for (auto const& x : num_) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g != 1) {
        for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

void require_same_field(FieldElem const& a, FieldElem const& b)
{
    if (!a.field() || a.field() != b.field()) throw DomainError("elements belong to different fields");
}

std::vector<Rational> FieldElem::coords() const
{
    std::vector<Rational> out;
    for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coord(i));
    return out;
}

Rational FieldElem::coord(std::size_t i) const
{
    Rational r(num_.at(i), den_);
    r.canonicalize();
    return r;
}

RatPoly FieldElem::as_poly() const { return RatPoly(IntPoly(num_), den_); }

bool FieldElem::is_zero() const
{
    return std::all_of(num_.begin(), num_.end(), [](Integer const& x) { return x == 0; });
}

bool FieldElem::is_rational() const
{
    return std::all_of(num_.begin() + 1, num_.end(), [](Integer const& x) { return x == 0; });
}

FieldElem FieldElem::operator-() const
{
    FieldElem r = *this;
    for (auto& x : r.num_) x = -x;
    return r;
}

FieldElem operator+(FieldElem const& a, FieldElem const& b)
{
    require_same_field(a, b);
    std::vector<Integer> c(a.num_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
    return FieldElem(a.K_, std::move(c), a.den_ * b.den_);
}

FieldElem operator-(FieldElem const& a, FieldElem const& b)
{
    require_same_field(a, b);
    std::vector<Integer> c(a.num_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.num_[i] * b.den_ - b.num_[i] * a.den_;
    return FieldElem(a.K_, std::move(c), a.den_ * b.den_);
}

FieldElem operator*(FieldElem const& a, FieldElem const& b)
{
    require_same_field(a, b);
    const std::size_t d = a.num_.size();
    std::vector<Integer> c(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (a.num_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            mpz_addmul(c[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
    return FieldElem(a.K_, std::move(c), a.den_ * b.den_);
}

FieldElem operator*(FieldElem const& a, Rational const& q)
{
    std::vector<Integer> c = a.num_;
    for (auto& x : c) x *= q.get_num();
    return FieldElem(a.K_, std::move(c), a.den_ * q.get_den());
}

FieldElem operator/(FieldElem const& a, FieldElem const& b)
{
    require_same_field(a, b);
    return a * b.inverse();
}

bool FieldElem::operator==(FieldElem const& o) const
{
    return K_ == o.K_ && den_ == o.den_ && num_ == o.num_;
}

FieldElem FieldElem::inverse() const
{
    if (is_zero()) throw DomainError("division by zero in a number field");
    if (K_->degree() == 1 || is_rational()) return K_->from_rational(Rational(1) / coord(0));
    // s * a + t * f = 1 with a = num/den  =>  a^{-1} = den * s(alpha) / ... ; xgcd over Q.
    RatXgcd e = xgcd(RatPoly(IntPoly(num_)), RatPoly(K_->polynomial()));
    return K_->from_poly(e.s) * Rational(den_);
}

FieldElem FieldElem::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    FieldElem result = K_->one(), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

RatMatrix FieldElem::rep_matrix() const
{
    const std::size_t d = num_.size();
    RatMatrix m(d, d);
    FieldElem cur = *this;
    FieldElem a = K_->gen();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) m(i, j) = cur.coord(j);
        if (i + 1 < d) cur = cur * a;
    }
    return m;
}

Rational FieldElem::trace() const
{
    RatMatrix m = rep_matrix();
    Rational t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

Rational FieldElem::norm() const
{
    if (is_zero()) return 0;
    // N(a) = Res(f, A) / den^d for monic f.
    Integer r = resultant(K_->polynomial(), IntPoly(num_));
    Rational q(r, ipow(den_, static_cast<unsigned long>(K_->degree())));
    q.canonicalize();
    return q;
}

RatPoly FieldElem::charpoly() const
{
    // Reduce to upper Hessenberg form, then use the standard recurrence.
    RatMatrix h = rep_matrix();
    const std::size_t n = h.rows();
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t piv = n;
        for (std::size_t r = m; r < n; ++r)
            if (h(r, m - 1) != 0) {
                piv = r;
                break;
            }
        if (piv == n) continue;
        if (piv != m) {
            h.swap_rows(piv, m);
            h.swap_cols(piv, m);
        }
        Rational t = h(m, m - 1);
        for (std::size_t r = m + 1; r < n; ++r) {
            if (h(r, m - 1) == 0) continue;
            Rational u = h(r, m - 1) / t;
            for (std::size_t j = 0; j < n; ++j) h(r, j) -= u * h(m, j);
            for (std::size_t j = 0; j < n; ++j) h(j, m) += u * h(j, r);
        }
    }
    std::vector<RatPoly> p(n + 1);
    p[0] = RatPoly::constant(1);
    RatPoly x = RatPoly::x();
    for (std::size_t m = 1; m <= n; ++m) {
        p[m] = (x - RatPoly::constant(h(m - 1, m - 1))) * p[m - 1];
        Rational t = 1;
        for (std::size_t i = 1; i < m; ++i) {
            t *= h(m - i, m - i - 1);
            p[m] = p[m] - RatPoly::constant(t * h(m - i - 1, m - 1)) * p[m - i - 1];
        }
    }
    return p[n];
}

RatPoly FieldElem::minimal_polynomial() const { return squarefree_part(charpoly()); }

std::string FieldElem::to_string() const { return nfkit::to_string(as_poly(), K_->var()); }

// ---------------------------------------------------------------- FieldPoly

FieldPoly field_poly(Field const& K, RatPoly const& p)
{
    FieldPoly out;
    for (auto const& c : p.coeffs()) out.push_back(K->from_rational(c));
    return out;
}

void trim(FieldPoly& p)
{
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(FieldPoly const& p) { return static_cast<int>(p.size()) - 1; }

FieldPoly add(FieldPoly const& a, FieldPoly const& b)
{
    FieldPoly r = a.size() >= b.size() ? a : b;
    FieldPoly const& s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
    trim(r);
    return r;
}

FieldPoly sub(FieldPoly const& a, FieldPoly const& b)
{
    FieldPoly nb = b;
    for (auto& c : nb) c = -c;
    return add(a, nb);
}

FieldPoly mul(FieldPoly const& a, FieldPoly const& b)
{
    if (a.empty() || b.empty()) return {};
    Field const& K = a[0].field();
    FieldPoly r(a.size() + b.size() - 1, K->zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

std::pair<FieldPoly, FieldPoly> divrem(FieldPoly const& a, FieldPoly const& b0)
{
    FieldPoly b = b0;
    trim(b);
    if (b.empty()) throw DomainError("division by the zero polynomial");
    FieldPoly r = a;
    trim(r);
    if (r.size() < b.size()) return {FieldPoly{}, r};
    Field const& K = b[0].field();
    FieldElem inv = b.back().inverse();
    FieldPoly q(r.size() - b.size() + 1, K->zero());
    const std::size_t db = b.size() - 1;
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k].is_zero()) continue;
        FieldElem t = r[k] * inv;
        q[k - db] = t;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= t * b[j];
    }
    r.resize(b.size() - 1);
    trim(r);
    trim(q);
    return {q, r};
}

FieldPoly monic(FieldPoly const& p0)
{
    FieldPoly p = p0;
    trim(p);
    if (p.empty()) return p;
    FieldElem inv = p.back().inverse();
    for (auto& c : p) c = c * inv;
    return p;
}

FieldPoly gcd(FieldPoly a, FieldPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        FieldPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

FieldPoly derivative(FieldPoly const& p)
{
    FieldPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rational(static_cast<long>(i)));
    trim(r);
    return r;
}

FieldElem eval(FieldPoly const& p, FieldElem const& x)
{
    FieldElem r = x.field()->zero();
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

FieldPoly shift(FieldPoly const& p, FieldElem const& c)
{
    // Horner in K[x]: r = r * (x + c) + p_i.
    FieldPoly r;
    for (std::size_t i = p.size(); i-- > 0;) {
        FieldPoly next(r.size() + 1, c.field()->zero());
        for (std::size_t j = 0; j < r.size(); ++j) {
            next[j + 1] += r[j];
            next[j] += r[j] * c;
        }
        next[0] += p[i];
        r = std::move(next);
    }
    trim(r);
    return r;
}

namespace {

// Newton interpolation through (i, values[i]), i = 0..n.
RatPoly interpolate_at_integers(std::vector<Rational> values)
{
    const std::size_t n = values.size();
    // Divided differences in place.
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            values[i] = (values[i] - values[i - 1]) / Rational(static_cast<long>(j));
            if (i == j) break;
        }
    RatPoly r;
    for (std::size_t i = n; i-- > 0;) {
        r = r * (RatPoly::x() - RatPoly::constant(Rational(static_cast<long>(i)))) + RatPoly::constant(values[i]);
    }
    return r;
}

}  // namespace

RatPoly norm(FieldPoly const& p0)
{
    FieldPoly p = p0;
    trim(p);
    if (p.empty()) return {};
    Field const& K = p[0].field();
    const std::size_t n = static_cast<std::size_t>(K->degree()) * (p.size() - 1);
    std::vector<Rational> values;
    for (std::size_t i = 0; i <= n; ++i) values.push_back(eval(p, K->from_rational(Rational(static_cast<long>(i)))).norm());
    return interpolate_at_integers(std::move(values));
}

std::string to_string(FieldPoly const& p, std::string_view var)
{
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + p[i].to_string() + ")";
        if (i >= 1) out += "*" + std::string(var);
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

// ---------------------------------------------------------------- morphisms

FieldHom hom_new(Field const& dom, Field const& cod, FieldElem const& img)
{
    if (img.field() != cod) throw DomainError("image does not lie in the codomain");
    FieldPoly f = field_poly(cod, RatPoly(dom->polynomial()));
    if (!eval(f, img).is_zero()) throw DomainError("image is not a root of the domain's defining polynomial");
    return {dom, cod, img};
}

FieldHom hom_identity(Field const& K) { return {K, K, K->gen()}; }

FieldElem hom_apply(FieldHom const& h, FieldElem const& a)
{
    if (a.field() != h.domain) throw DomainError("element is not in the domain of the map");
    FieldElem r = h.codomain->zero();
    auto const& c = a.numerator();
    for (std::size_t i = c.size(); i-- > 0;) r = r * h.gen_image + h.codomain->from_rational(Rational(c[i]));
    return r * Rational(Integer(1), a.denominator());
}

FieldHom hom_compose(FieldHom const& h1, FieldHom const& h2)
{
    if (h1.codomain != h2.domain) throw DomainError("maps are not composable");
    return {h1.domain, h2.codomain, hom_apply(h2, h1.gen_image)};
}

// ---------------------------------------------------------------- adjoining

namespace {

// Substitute alpha -> x in the coefficients of h(gamma - k x):
// returns sum_j c_j(x) (gamma - k x)^j as a polynomial in L[x].
FieldPoly lift_through(FieldPoly const& h, Field const& L, FieldElem const& gamma, long k)
{
    FieldPoly lin{gamma, L->from_rational(Rational(-k))};
    FieldPoly result;
    FieldPoly power{L->one()};
    for (auto const& c : h) {
        // c(x) with rational coefficients, as a polynomial in L[x]
        FieldPoly cx = field_poly(L, c.as_poly());
        result = add(result, mul(cx, power));
        power = mul(power, lin);
    }
    return result;
}

struct AdjoinCore {
    Field L;
    FieldElem alpha_L, beta_L;
    long k;
};

AdjoinCore adjoin_with_shifts(Field const& K, FieldPoly const& h, std::vector<long> const& shifts, std::string const& var)
{
    FieldElem alpha = K->gen();
    for (long k : shifts) {
        // N(z) = norm(h(z - k alpha)); its roots are beta_j + k alpha_i.
        FieldPoly hs = shift(h, alpha * Rational(-k));
        RatPoly N = norm(hs);
        if (N.degree() < 1) continue;
        if (gcd(N, N.derivative()).degree() > 0) continue;
        auto fac = factor_over_Z(N.primitive());
        IntPoly best;
        for (auto const& [g, m] : fac.factors)
            if (g.degree() > best.degree()) best = g;
        Field L = NumberField::create(RatPoly(best), var);
        FieldElem gamma = L->input_root();
        FieldPoly fx = field_poly(L, RatPoly(K->polynomial()));
        FieldPoly common = gcd(fx, lift_through(h, L, gamma, k));
        if (degree(common) != 1) throw DomainError("adjoin: primitive element did not separate the roots");
        FieldElem aL = -common[0];
        FieldElem bL = gamma - aL * Rational(k);
        return {L, aL, bL, k};
    }
    throw LimitError("no separating shift found");
}

std::vector<long> shift_sequence(bool include_zero, bool both_signs, long count)
{
    std::vector<long> s;
    if (include_zero) s.push_back(0);
    for (long k = 1; k <= count; ++k) {
        s.push_back(k);
        if (both_signs) s.push_back(-k);
    }
    return s;
}

}  // namespace

Adjoined adjoin_root(Field const& K, FieldPoly const& h0, std::string var)
{
    FieldPoly h = h0;
    trim(h);
    if (degree(h) < 1) throw DomainError("cannot adjoin a root of a constant polynomial");
    for (auto const& c : h) require_same_field(c, K->one());
    if (degree(gcd(h, derivative(h))) > 0) throw DomainError("adjoin_root needs a squarefree polynomial");
    auto core = adjoin_with_shifts(K, h, shift_sequence(true, true, 64), var);
    // Input polynomial of L was monic-normalized; gamma is the input root.
    return {core.L, hom_new(K, core.L, core.alpha_L), core.beta_L};
}

Compositum compositum(RatPoly const& f, RatPoly const& g, std::string var)
{
    if (f.degree() < 1 || g.degree() < 1) throw DomainError("compositum of constant polynomials");
    Field Kf = NumberField::create(f, var);
    Field Kg = NumberField::create(g, var);
    // Adjoining a rational root changes nothing.
    if (g.degree() == 1) return {Kf, Kf->input_root(), Kf->from_rational(-g.coeff(0) / g.coeff(1)), 0};
    if (f.degree() == 1) return {Kg, Kg->from_rational(-f.coeff(0) / f.coeff(1)), Kg->input_root(), 0};
    // Work with the monic normalizations a' = c_f a and b' = c_g b, so the
    // primitive element is a' + k b'; for monic inputs this is a + k b.
    FieldPoly h = field_poly(Kg, RatPoly(Kf->polynomial()));
    auto core = adjoin_with_shifts(Kg, h, shift_sequence(false, false, 64), var);
    FieldElem a = core.beta_L * (Rational(1) / Rational(Kf->scale()));
    FieldElem b = core.alpha_L * (Rational(1) / Rational(Kg->scale()));
    return {core.L, a, b, core.k};
}

}  // namespace nfkit
