#include "nfkit/poly.hpp"

#include <algorithm>
#include <cctype>

#include "nfkit/errors.hpp"

namespace nfkit {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs)
{
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
}

IntPoly IntPoly::constant(Integer c) { return IntPoly(std::vector<Integer>{std::move(c)}); }

IntPoly IntPoly::monomial(Integer c, std::size_t k)
{
    std::vector<Integer> v(k + 1, 0);
    v[k] = std::move(c);
    return IntPoly(std::move(v));
}

void IntPoly::normalize()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer const& IntPoly::lc() const
{
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
}

Integer IntPoly::content() const
{
    Integer g = 0;
    for (auto const& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const
{
    if (is_zero()) return {};
    Integer g = content();
    if (lc() < 0) g = -g;
    return divexact(g);
}

IntPoly IntPoly::divexact(Integer const& k) const
{
    IntPoly r = *this;
    if (k == 1) return r;
    for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    return r;
}

IntPoly IntPoly::derivative() const
{
    if (c_.size() <= 1) return {};
    std::vector<Integer> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(d));
}

Integer IntPoly::eval(Integer const& x) const
{
    Integer r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Rational IntPoly::eval(Rational const& x) const
{
    // Homogenized Horner: sum c_i n^i d^(deg-i) / d^deg.
    if (c_.empty()) return 0;
    Integer const& n = x.get_num();
    Integer const& d = x.get_den();
    Integer acc = 0, dp = 1;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc * n + c_[i] * dp;
        dp *= d;
    }
    // After the loop dp = d^(deg+1); one factor too many.
    Rational r(acc, dp / d);
    r.canonicalize();
    return r;
}

IntPoly IntPoly::operator-() const
{
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

IntPoly& IntPoly::operator+=(IntPoly const& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

IntPoly& IntPoly::operator-=(IntPoly const& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

IntPoly& IntPoly::operator*=(Integer const& k)
{
    if (k == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= k;
    return *this;
}

IntPoly operator*(IntPoly const& a, IntPoly const& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return IntPoly(std::move(r));
}

IntPoly pseudo_remainder(IntPoly const& a, IntPoly const& b)
{
    if (b.is_zero()) throw DomainError("pseudo-remainder by the zero polynomial");
    if (a.degree() < b.degree()) return a;
    std::vector<Integer> r = a.coeffs();
    auto const& bc = b.coeffs();
    Integer const& l = b.lc();
    const int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        Integer t = r[k];
        for (auto& x : r) x *= l;
        if (t != 0)
            for (int j = 0; j <= db; ++j)
                mpz_submul(r[k - db + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
        r.pop_back();
    }
    return IntPoly(std::move(r));
}

std::optional<IntPoly> divide_exact(IntPoly const& a, IntPoly const& b)
{
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Integer> r = a.coeffs();
    std::vector<Integer> q(a.degree() - b.degree() + 1);
    auto const& bc = b.coeffs();
    const int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        if (!mpz_divisible_p(r[k].get_mpz_t(), b.lc().get_mpz_t())) return std::nullopt;
        Integer t = r[k] / b.lc();
        q[k - db] = t;
        if (t != 0)
            for (int j = 0; j <= db; ++j)
                mpz_submul(r[k - db + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
    }
    for (int i = 0; i < db; ++i)
        if (r[i] != 0) return std::nullopt;
    return IntPoly(std::move(q));
}

IntPoly gcd(IntPoly const& a0, IntPoly const& b0)
{
    if (a0.is_zero()) return b0.is_zero() ? IntPoly{} : b0.primitive_part() * b0.content();
    if (b0.is_zero()) return a0.primitive_part() * a0.content();
    Integer c;
    Integer ca = a0.content(), cb = b0.content();
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    IntPoly a = a0.primitive_part(), b = b0.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.primitive_part();
    }
    return a.primitive_part() * c;
}

Integer resultant(IntPoly const& a0, IntPoly const& b0)
{
    if (a0.is_zero() || b0.is_zero()) throw DomainError("resultant with the zero polynomial");
    IntPoly a = a0, b = b0;
    int s = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 && b.degree() % 2) s = -1;
    }
    if (b.degree() == 0) return s * ipow(b.lc(), static_cast<unsigned long>(a.degree()));
    Integer ca = a.content(), cb = b.content();
    a = a.divexact(ca);
    b = b.divexact(cb);
    Integer t = ipow(ca, static_cast<unsigned long>(b.degree())) *
                ipow(cb, static_cast<unsigned long>(a.degree()));
    Integer g = 1, h = 1;
    for (;;) {
        const int delta = a.degree() - b.degree();
        if (a.degree() % 2 && b.degree() % 2) s = -s;
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return 0;
        b = r.divexact(g * ipow(h, static_cast<unsigned long>(delta)));
        g = a.lc();
        if (delta > 0) {
            Integer num = ipow(g, static_cast<unsigned long>(delta));
            Integer den = ipow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (b.degree() == 0) break;
    }
    const unsigned long da = static_cast<unsigned long>(a.degree());
    Integer num = ipow(b.lc(), da);
    Integer den = ipow(h, da - 1);
    Integer hh;
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return s * t * hh;
}

Integer discriminant(IntPoly const& f)
{
    if (f.degree() < 1) throw DomainError("discriminant of a constant polynomial");
    const long d = f.degree();
    Integer r = resultant(f, f.derivative());
    Integer q;
    mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), f.lc().get_mpz_t());
    return ((d * (d - 1) / 2) % 2) ? Integer(-q) : q;
}

std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(IntPoly const& f0)
{
    // Yun's algorithm.
    std::vector<std::pair<IntPoly, unsigned>> out;
    if (f0.degree() < 1) return out;
    IntPoly f = f0.primitive_part();
    IntPoly fp = f.derivative();
    IntPoly a = gcd(f, fp).primitive_part();
    IntPoly b = *divide_exact(f, a);
    IntPoly c = *divide_exact(fp, a);
    IntPoly d = c - b.derivative();
    for (unsigned i = 1; b.degree() > 0; ++i) {
        IntPoly g = gcd(b, d).primitive_part();
        if (g.degree() > 0) out.emplace_back(g, i);
        IntPoly nb = *divide_exact(b, g);
        IntPoly nc = *divide_exact(d, g);
        b = std::move(nb);
        d = nc - b.derivative();
    }
    return out;
}

IntPoly compose(IntPoly const& f, IntPoly const& g)
{
    IntPoly r;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) r = r * g + IntPoly::constant(f.coeffs()[i]);
    return r;
}

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(IntPoly num, Integer den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_ == 0) throw DomainError("zero denominator");
    normalize();
}

void RatPoly::normalize()
{
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    Integer c = num_.content();
    Integer g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        num_ = num_.divexact(g);
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

RatPoly RatPoly::from_coeffs(std::vector<Rational> const& c)
{
    Integer den = 1;
    for (auto const& q : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> num(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) num[i] = c[i].get_num() * (den / c[i].get_den());
    return RatPoly(IntPoly(std::move(num)), den);
}

RatPoly RatPoly::constant(Rational const& c)
{
    return RatPoly(IntPoly::constant(c.get_num()), c.get_den());
}

Rational RatPoly::coeff(std::size_t i) const
{
    Rational r(num_.coeff(i), den_);
    r.canonicalize();
    return r;
}

Rational RatPoly::lc() const
{
    Rational r(num_.lc(), den_);
    r.canonicalize();
    return r;
}

std::vector<Rational> RatPoly::coeffs() const
{
    std::vector<Rational> out;
    for (std::size_t i = 0; i < num_.coeffs().size(); ++i) out.push_back(coeff(i));
    return out;
}

IntPoly RatPoly::primitive() const { return num_.primitive_part(); }

RatPoly RatPoly::monic() const
{
    if (is_zero()) return *this;
    return RatPoly(num_, num_.lc());
}

RatPoly RatPoly::derivative() const { return RatPoly(num_.derivative(), den_); }

Rational RatPoly::eval(Rational const& x) const { return num_.eval(x) / den_; }

RatPoly RatPoly::operator-() const { return RatPoly(-num_, den_); }

RatPoly operator+(RatPoly const& a, RatPoly const& b)
{
    return RatPoly(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatPoly operator-(RatPoly const& a, RatPoly const& b)
{
    return RatPoly(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatPoly operator*(RatPoly const& a, RatPoly const& b)
{
    return RatPoly(a.num_ * b.num_, a.den_ * b.den_);
}

RatPoly operator*(RatPoly const& a, Rational const& k)
{
    return RatPoly(a.num_ * k.get_num(), a.den_ * k.get_den());
}

std::pair<RatPoly, RatPoly> divrem(RatPoly const& a, RatPoly const& b)
{
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (a.degree() < b.degree()) return {RatPoly{}, a};
    // a = A/da, b = B/db. Pseudo-divide A by B over Z, then rescale.
    IntPoly const& B = b.numerator();
    std::vector<Integer> r = a.numerator().coeffs();
    const int db = B.degree();
    const int dq = a.degree() - db;
    std::vector<Rational> q(dq + 1);
    std::vector<Rational> rr(r.begin(), r.end());
    Rational inv_lc = Rational(1) / Rational(B.lc());
    for (int k = a.degree(); k >= db; --k) {
        Rational t = rr[k] * inv_lc;
        q[k - db] = t;
        if (t == 0) continue;
        for (int j = 0; j <= db; ++j) rr[k - db + j] -= t * Rational(B.coeffs()[j]);
    }
    rr.resize(db);
    // A = Q B + R with Q, R over Q; a = (db/da) Q b + R/da.
    Rational sq(b.denominator(), a.denominator());
    sq.canonicalize();
    Rational sr(1, a.denominator());
    sr.canonicalize();
    return {RatPoly::from_coeffs(q) * sq, RatPoly::from_coeffs(rr) * sr};
}

RatPoly gcd(RatPoly const& a, RatPoly const& b)
{
    IntPoly g = gcd(a.numerator(), b.numerator());
    return RatPoly(g).monic();
}

RatXgcd xgcd(RatPoly const& a, RatPoly const& b)
{
    RatPoly r0 = a, r1 = b;
    RatPoly s0 = RatPoly::constant(1), s1;
    RatPoly t0, t1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        RatPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        RatPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = Rational(1) / r0.lc();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Rational resultant(RatPoly const& a, RatPoly const& b)
{
    if (a.is_zero() || b.is_zero()) throw DomainError("resultant with the zero polynomial");
    // Res(A/da, B/db) = Res(A, B) / (da^deg b * db^deg a).
    Rational r(resultant(a.numerator(), b.numerator()),
               ipow(a.denominator(), static_cast<unsigned long>(b.degree())) *
                   ipow(b.denominator(), static_cast<unsigned long>(a.degree())));
    r.canonicalize();
    return r;
}

Rational discriminant(RatPoly const& f)
{
    if (f.degree() < 1) throw DomainError("discriminant of a constant polynomial");
    // disc is homogeneous of degree 2d-2 in the coefficients.
    Rational r(discriminant(f.numerator()),
               ipow(f.denominator(), static_cast<unsigned long>(2 * f.degree() - 2)));
    r.canonicalize();
    return r;
}

RatPoly squarefree_part(RatPoly const& f)
{
    if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
    if (f.degree() == 0) return RatPoly::constant(1);
    IntPoly const& n = f.numerator();
    IntPoly g = gcd(n, n.derivative());
    return RatPoly(*divide_exact(n.primitive_part(), g.primitive_part())).monic();
}

RatPoly compose(RatPoly const& f, RatPoly const& g)
{
    RatPoly r;
    auto c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) r = r * g + RatPoly::constant(c[i]);
    return r;
}

std::vector<IntPoly> sturm_sequence(RatPoly const& f)
{
    std::vector<IntPoly> chain;
    if (f.is_zero()) return chain;
    chain.push_back(f.primitive());
    chain.push_back(chain[0].derivative().primitive_part());
    while (!chain.back().is_zero()) {
        IntPoly const& a = chain[chain.size() - 2];
        IntPoly const& b = chain.back();
        IntPoly r = pseudo_remainder(a, b);
        if (r.is_zero()) break;
        // prem = lc(b)^k * rem with k = deg a - deg b + 1; we need -rem up to a
        // positive factor.
        const int k = a.degree() - b.degree() + 1;
        bool flip = !(b.lc() < 0 && k % 2);
        Integer c = r.content();
        IntPoly next = r.divexact(c);
        if (flip) next = -next;
        chain.push_back(std::move(next));
    }
    if (chain.back().is_zero()) chain.pop_back();
    return chain;
}

namespace {

int sign_of(Integer const& x) { return sgn(x); }

int sign_at_infinity(IntPoly const& p, bool plus)
{
    int s = sign_of(p.lc());
    if (!plus && p.degree() % 2) s = -s;
    return s;
}

}  // namespace

int sign_variations(std::vector<IntPoly> const& chain, std::optional<Rational> const& at,
                    bool plus_infinity)
{
    int prev = 0, changes = 0;
    for (auto const& p : chain) {
        int s = at ? sgn(p.eval(*at)) : sign_at_infinity(p, plus_infinity);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

int sturm_real_root_count(RatPoly const& f, std::optional<Rational> const& lo,
                          std::optional<Rational> const& hi)
{
    if (f.is_zero()) throw DomainError("root count of the zero polynomial");
    if (f.degree() == 0) return 0;
    auto chain = sturm_sequence(f);
    if (chain.back().degree() > 0) throw DomainError("Sturm count requires a squarefree polynomial");
    if (lo && hi && *hi <= *lo) return 0;
    return sign_variations(chain, lo, false) - sign_variations(chain, hi, true);
}

Rational root_bound(RatPoly const& f)
{
    if (f.degree() < 1) return 0;
    IntPoly const& n = f.numerator();
    Integer m = 0;
    for (int i = 0; i < n.degree(); ++i)
        if (abs(n.coeffs()[i]) > m) m = abs(n.coeffs()[i]);
    Rational b(m, abs(n.lc()));
    b.canonicalize();
    return b + 1;
}

// ---------------------------------------------------------------- formatting

std::string to_string(IntPoly const& f, std::string_view var)
{
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        Integer const& c = f.coeffs()[i];
        if (c == 0) continue;
        Integer a = abs(c);
        if (c < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (i == 0 || a != 1) {
            out += a.get_str();
            if (i > 0) out += "*";
        }
        if (i >= 1) out += var;
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

std::string to_string(RatPoly const& f, std::string_view var)
{
    std::string n = to_string(f.numerator(), var);
    if (f.denominator() == 1) return n;
    auto const& c = f.numerator().coeffs();
    if (std::count_if(c.begin(), c.end(), [](Integer const& x) { return x != 0; }) > 1)
        n = "(" + n + ")";
    return n + "/" + f.denominator().get_str();
}

// ---------------------------------------------------------------- parsing

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    RatPoly parse()
    {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
        RatPoly r = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return r;
    }

    std::string const& var() const { return var_; }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary()
    {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '(';
    }

    RatPoly expr()
    {
        RatPoly r = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                r = r + term();
            } else if (peek('-')) {
                ++pos_;
                r = r - term();
            } else {
                return r;
            }
        }
    }

    RatPoly term()
    {
        RatPoly r = unary();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                r = r * unary();
            } else if (peek('/')) {
                ++pos_;
                std::size_t at = pos_;
                RatPoly d = unary();
                if (d.degree() > 0) throw ParseError("division by a non-constant polynomial", at);
                if (d.is_zero()) throw ParseError("division by zero", at);
                r = r * (Rational(1) / d.coeff(0));
            } else if (starts_primary()) {
                r = r * power();
            } else {
                return r;
            }
        }
    }

    RatPoly unary()
    {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    RatPoly power()
    {
        RatPoly base = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("expected an exponent", start);
            if (pos_ - start > 4) throw ParseError("exponent too large", start);
            unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
            RatPoly r = RatPoly::constant(1);
            for (unsigned i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    RatPoly primary()
    {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatPoly r = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatPoly::constant(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (var_.empty())
                var_ = name;
            else if (name != var_)
                throw ParseError("second variable '" + name + "' (already using '" + var_ + "')", start);
            return RatPoly::x();
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::string var_;
};

}  // namespace

RatPoly parse_poly(std::string_view text, std::string* var)
{
    PolyParser p(text);
    RatPoly r = p.parse();
    if (var) *var = p.var();
    return r;
}

// ---------------------------------------------------------------- ModPoly

ModPoly::ModPoly(Integer p, std::vector<Integer> coeffs) : p_(std::move(p)), c_(std::move(coeffs))
{
    for (auto& x : c_) x = mod(x, p_);
    normalize();
}

ModPoly::ModPoly(IntPoly const& f, Integer p) : ModPoly(std::move(p), f.coeffs()) {}

ModPoly ModPoly::constant(Integer c, Integer p) { return ModPoly(std::move(p), {std::move(c)}); }

ModPoly ModPoly::x(Integer p) { return ModPoly(std::move(p), {0, 1}); }

void ModPoly::normalize()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer const& ModPoly::lc() const
{
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
}

ModPoly ModPoly::monic() const
{
    if (is_zero() || lc() == 1) return *this;
    Integer inv;
    if (!mpz_invert(inv.get_mpz_t(), lc().get_mpz_t(), p_.get_mpz_t()))
        throw DomainError("leading coefficient not invertible mod " + p_.get_str());
    return *this * inv;
}

ModPoly ModPoly::derivative() const
{
    if (c_.size() <= 1) return ModPoly(p_, {});
    std::vector<Integer> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return ModPoly(p_, std::move(d));
}

IntPoly ModPoly::lift() const { return IntPoly(c_); }

Integer ModPoly::eval(Integer const& x) const
{
    Integer r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = mod(r * x + c_[i], p_);
    return r;
}

ModPoly operator+(ModPoly const& a, ModPoly const& b)
{
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return ModPoly(a.p_, std::move(r));
}

ModPoly operator-(ModPoly const& a, ModPoly const& b)
{
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return ModPoly(a.p_, std::move(r));
}

ModPoly operator*(ModPoly const& a, ModPoly const& b)
{
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p_, {});
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return ModPoly(a.p_, std::move(r));
}

ModPoly operator*(ModPoly const& a, Integer const& k)
{
    std::vector<Integer> r = a.c_;
    for (auto& x : r) x *= k;
    return ModPoly(a.p_, std::move(r));
}

std::pair<ModPoly, ModPoly> divrem(ModPoly const& a, ModPoly const& b)
{
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    Integer const& p = a.modulus();
    if (a.degree() < b.degree()) return {ModPoly(p, {}), a};
    Integer inv;
    if (!mpz_invert(inv.get_mpz_t(), b.lc().get_mpz_t(), p.get_mpz_t()))
        throw DomainError("leading coefficient not invertible");
    std::vector<Integer> r = a.coeffs();
    auto const& bc = b.coeffs();
    const int db = b.degree();
    std::vector<Integer> q(a.degree() - db + 1, 0);
    for (int k = a.degree(); k >= db; --k) {
        Integer t = mod(r[k] * inv, p);
        q[k - db] = t;
        if (t == 0) continue;
        for (int j = 0; j <= db; ++j) {
            mpz_submul(r[k - db + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
            mpz_mod(r[k - db + j].get_mpz_t(), r[k - db + j].get_mpz_t(), p.get_mpz_t());
        }
    }
    r.resize(db);
    return {ModPoly(p, std::move(q)), ModPoly(p, std::move(r))};
}

ModPoly gcd(ModPoly a, ModPoly b)
{
    while (!b.is_zero()) {
        ModPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

ModPoly powmod(ModPoly const& base, Integer e, ModPoly const& m)
{
    ModPoly result = ModPoly::constant(1, m.modulus());
    result = divrem(result, m).second;
    ModPoly b = divrem(base, m).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = divrem(result * b, m).second;
        e >>= 1;
        if (e > 0) b = divrem(b * b, m).second;
    }
    return result;
}

}  // namespace nfkit
