#include "nfkit/ideal.hpp"

#include <algorithm>
#include <random>

#include "nfkit/errors.hpp"
#include "nfkit/factor.hpp"

namespace nfkit {

namespace {

void require_same_order(Order const& a, Order const& b)
{
    if (a.field() != b.field() || a.data() != b.data()) throw DomainError("ideals belong to different orders");
}

std::vector<Integer> unit_vector(int d, int i, Integer const& v = 1)
{
    std::vector<Integer> e(d, 0);
    e[i] = v;
    return e;
}

FieldElem eval_at(IntPoly const& g, FieldElem const& x)
{
    FieldElem r = x.field()->zero();
    for (int i = g.degree(); i >= 0; --i) r = r * x + x.field()->from_rational(g.coeff(i));
    return r;
}

// A generator theta of O with p not dividing [O : Z[theta]], with its
// characteristic polynomial.
std::optional<std::pair<FieldElem, IntPoly>> good_generator(Order const& O, Integer const& p)
{
    Field const& K = O.field();
    const int d = K->degree();
    const unsigned target = valuation(abs(O.discriminant()), p);
    auto try_theta = [&](FieldElem const& t) -> std::optional<IntPoly> {
        RatPoly c = t.charpoly();
        if (c.denominator() != 1) return std::nullopt;
        IntPoly g = c.numerator();
        Integer disc = discriminant(g);
        if (disc == 0) return std::nullopt;
        if (valuation(abs(disc), p) != target) return std::nullopt;
        return g;
    };
    std::vector<FieldElem> candidates{K->gen()};
    for (int i = 1; i < d; ++i) candidates.push_back(O.basis_element(i));
    for (int i = 1; i < d; ++i) candidates.push_back(K->gen() + O.basis_element(i));
    for (auto const& t : candidates)
        if (auto g = try_theta(t)) return std::pair{t, *g};
    std::mt19937_64 rng(p.get_ui() + 1);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int tries = 0; tries < 400; ++tries) {
        std::vector<Integer> x(d);
        for (auto& v : x) v = c(rng);
        FieldElem t = O.element(x);
        if (auto g = try_theta(t)) return std::pair{t, *g};
    }
    return std::nullopt;
}

// Reduce x modulo an ideal J with pO in J; returns the coordinates at the
// positions where the HNF diagonal of J is p.
std::vector<Integer> quotient_coords(IntMatrix const& h, std::vector<Integer> x)
{
    const int d = static_cast<int>(x.size());
    for (int i = d - 1; i >= 0; --i) {
        Integer q = floor_div(x[i], h(i, i));
        if (q != 0)
            for (int j = 0; j <= i; ++j) x[j] -= q * h(i, j);
    }
    std::vector<Integer> out;
    for (int i = 0; i < d; ++i)
        if (h(i, i) != 1) out.push_back(x[i]);
    return out;
}

// Minimal polynomial over F_p of x acting on O/J.
ModPoly quotient_minpoly(Order const& O, Ideal const& J, std::vector<Integer> const& x, Integer const& p)
{
    const int d = O.degree();
    std::vector<Integer> pw(d, 0);
    pw[0] = 1;
    IntMatrix rows(0, 0);
    for (int k = 0;; ++k) {
        rows.append_row(quotient_coords(J.hnf_basis(), pw));
        IntMatrix ker = left_kernel_mod_p(rows, p);
        if (ker.rows() > 0) return ModPoly(p, ker.row_vector(0)).monic();
        pw = O.multiply(pw, x);
        for (auto& v : pw) v = mod(v, p);
    }
}

std::vector<Integer> eval_coords(Order const& O, ModPoly const& m, std::vector<Integer> const& x)
{
    std::vector<Integer> r(O.degree(), 0);
    for (int i = m.degree(); i >= 0; --i) {
        r = O.multiply(r, x);
        r[0] += m.coeff(i);  // the first basis element is 1
    }
    return r;
}

// Split O/rad(pO), a product of finite fields, into its prime components
// using minimal polynomials of random elements.
std::vector<std::pair<Ideal, unsigned>> split_radical(Order const& O, Integer const& p)
{
    const int d = O.degree();
    std::mt19937_64 rng(p.get_ui() * 7 + 3);
    std::uniform_int_distribution<long> c(0, p.fits_slong_p() && p < 1000 ? p.get_si() - 1 : 999);
    std::vector<Ideal> todo{Ideal(O, p_radical(O, p))};
    std::vector<std::pair<Ideal, unsigned>> primes;
    int budget = 2000;
    while (!todo.empty()) {
        Ideal J = todo.back();
        todo.pop_back();
        Integer dim = valuation(J.norm(), p);
        for (;;) {
            if (--budget < 0) throw LimitError("prime splitting over " + p.get_str() + " exceeded its budget");
            std::vector<Integer> x(d);
            for (auto& v : x) v = c(rng);
            ModPoly m = quotient_minpoly(O, J, x, p);
            auto fac = factor_mod_p(m).factors;
            if (fac.size() == 1) {
                if (m.degree() == dim) {
                    primes.emplace_back(J, static_cast<unsigned>(m.degree()));
                    break;
                }
                continue;
            }
            for (auto const& [mj, ej] : fac) {
                IntMatrix gens = O.mult_matrix(eval_coords(O, mj, x));
                todo.push_back(ideal_add(J, Ideal(O, gens)));
            }
            break;
        }
    }
    return primes;
}

// gamma with P = (p, gamma).
FieldElem second_generator(Ideal const& P, Integer const& p)
{
    Order const& O = P.order();
    const int d = O.degree();
    FieldElem pe = O.field()->from_rational(p);
    for (std::size_t i = 0; i < P.hnf_basis().rows(); ++i) {
        FieldElem g = O.element(P.hnf_basis().row_vector(i));
        if (ideal_from_gens(O, {pe, g}) == P) return g;
    }
    std::mt19937_64 rng(p.get_ui() + 17);
    std::uniform_int_distribution<long> c(-2, 2);
    for (int tries = 0; tries < 5000; ++tries) {
        std::vector<Integer> x(d);
        for (auto& v : x) v = c(rng);
        FieldElem g = O.element(x * P.hnf_basis());
        if (ideal_from_gens(O, {pe, g}) == P) return g;
    }
    throw LimitError("no two-element form found over " + p.get_str());
}

// beta in O with beta * P in pO and beta not in pO.
std::vector<Integer> inverse_witness(Ideal const& P, Integer const& p)
{
    Order const& O = P.order();
    const int d = O.degree();
    IntMatrix m(d, d * d);
    for (int i = 0; i < d; ++i) {
        auto e = unit_vector(d, i);
        for (int j = 0; j < d; ++j) {
            auto prod = O.multiply(e, P.hnf_basis().row_vector(j));
            for (int k = 0; k < d; ++k) m(i, j * d + k) = mod(prod[k], p);
        }
    }
    IntMatrix ker = left_kernel_mod_p(m, p);
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        auto v = ker.row_vector(r);
        for (auto const& x : v)
            if (x != 0) return v;
    }
    throw DomainError("ideal is not a proper prime over " + p.get_str());
}

bool divide_rows(IntMatrix& m, Integer const& p)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (auto const& v : m.row(i))
            if (!mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (auto& v : m.row(i)) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return true;
}

}  // namespace

Ideal::Ideal(Order O, IntMatrix const& generators) : O_(std::move(O))
{
    if (generators.rows() == 0) throw DomainError("zero ideal");
    try {
        hnf_ = hnf(generators);
    } catch (DomainError const&) {
        throw DomainError("generators do not span a nonzero ideal");
    }
    norm_ = 1;
    for (std::size_t i = 0; i < hnf_.rows(); ++i) norm_ *= hnf_(i, i);
}

std::vector<FieldElem> Ideal::basis() const
{
    std::vector<FieldElem> out;
    for (std::size_t i = 0; i < hnf_.rows(); ++i) out.push_back(O_.element(hnf_.row_vector(i)));
    return out;
}

bool Ideal::contains_coords(std::vector<Integer> const& x) const
{
    std::vector<Integer> sol;
    return solve_triangular_integral(hnf_, x, sol);
}

bool Ideal::contains(FieldElem const& a) const
{
    auto c = O_.coords(a);
    return c && contains_coords(*c);
}

bool Ideal::operator==(Ideal const& o) const
{
    return O_.field() == o.O_.field() && O_.data() == o.O_.data() && hnf_ == o.hnf_;
}

Ideal ideal_from_gens(Order const& O, std::vector<FieldElem> const& gens)
{
    const int d = O.degree();
    IntMatrix rows(0, d);
    for (auto const& g : gens) {
        if (g.is_zero()) continue;
        auto c = O.coords(g);
        if (!c) throw DomainError("ideal generator " + g.to_string() + " is not integral");
        IntMatrix m = O.mult_matrix(*c);
        for (int i = 0; i < d; ++i) rows.append_row(m.row(i));
    }
    if (rows.rows() == 0) throw DomainError("zero ideal");
    return Ideal(O, rows);
}

Ideal principal_ideal(Order const& O, FieldElem const& a) { return ideal_from_gens(O, {a}); }

Ideal unit_ideal(Order const& O) { return Ideal(O, IntMatrix::identity(O.degree())); }

Ideal ideal_mul(Ideal const& a, Ideal const& b)
{
    require_same_order(a.order(), b.order());
    Order const& O = a.order();
    const int d = O.degree();
    IntMatrix rows(0, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            rows.append_row(O.multiply(a.hnf_basis().row_vector(i), b.hnf_basis().row_vector(j)));
    return Ideal(O, rows);
}

Ideal ideal_pow(Ideal const& a, unsigned e)
{
    Ideal r = unit_ideal(a.order());
    Ideal b = a;
    while (e) {
        if (e & 1) r = ideal_mul(r, b);
        e >>= 1;
        if (e) b = ideal_mul(b, b);
    }
    return r;
}

Ideal ideal_add(Ideal const& a, Ideal const& b)
{
    require_same_order(a.order(), b.order());
    IntMatrix rows = a.hnf_basis();
    for (std::size_t i = 0; i < b.hnf_basis().rows(); ++i) rows.append_row(b.hnf_basis().row(i));
    return Ideal(a.order(), rows);
}

std::vector<PrimeIdeal> prime_decomposition(Order const& O, Integer const& p)
{
    if (!is_prime(p)) throw DomainError("prime decomposition needs a prime, got " + p.get_str());
    std::vector<PrimeIdeal> out;
    auto gen = good_generator(O, p);
    if (!gen) {
        Ideal pO = principal_ideal(O, O.field()->from_rational(p));
        for (auto& [I, f] : split_radical(O, p)) {
            PrimeIdeal P;
            P.p = p;
            P.f = f;
            P.ideal = I;
            P.gen2 = second_generator(I, p);
            P.beta = inverse_witness(I, p);
            P.e = static_cast<unsigned>(valuation(pO, P));
            out.push_back(std::move(P));
        }
        std::sort(out.begin(), out.end(), [](PrimeIdeal const& a, PrimeIdeal const& b) {
            if (a.f != b.f) return a.f < b.f;
            auto const& x = a.ideal.hnf_basis();
            auto const& y = b.ideal.hnf_basis();
            for (std::size_t i = 0; i < x.rows(); ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    if (x(i, j) != y(i, j)) return x(i, j) < y(i, j);
            return false;
        });
        return out;
    }
    auto const& [theta, g] = *gen;
    for (auto const& [gi, ei] : factor_mod_p(ModPoly(g, p)).factors) {
        PrimeIdeal P;
        P.p = p;
        P.e = ei;
        P.f = static_cast<unsigned>(gi.degree());
        P.gen2 = eval_at(gi.lift(), theta);
        P.ideal = ideal_from_gens(O, {O.field()->from_rational(p), P.gen2});
        P.beta = inverse_witness(P.ideal, p);
        out.push_back(std::move(P));
    }
    return out;
}

FracIdeal frac_ideal(Ideal const& num, Integer const& den)
{
    if (den <= 0) throw DomainError("fractional ideal denominator must be positive");
    Integer g = den;
    IntMatrix const& h = num.hnf_basis();
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (auto const& v : h.row(i)) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return {num, den};
    IntMatrix r = h;
    divide_rows(r, g);
    return {Ideal(num.order(), r), den / g};
}

FracIdeal principal_frac_ideal(Order const& O, FieldElem const& a)
{
    if (a.is_zero()) throw DomainError("zero ideal");
    Integer D = a.denominator();
    return frac_ideal(principal_ideal(O, a * Rational(D)), D);
}

FracIdeal frac_mul(FracIdeal const& a, FracIdeal const& b)
{
    return frac_ideal(ideal_mul(a.num, b.num), a.den * b.den);
}

bool operator==(FracIdeal const& a, FracIdeal const& b) { return a.num == b.num && a.den == b.den; }

long valuation(Ideal const& I, PrimeIdeal const& P)
{
    require_same_order(I.order(), P.ideal.order());
    if (!mpz_divisible_p(I.norm().get_mpz_t(), P.p.get_mpz_t())) return 0;
    Order const& O = I.order();
    IntMatrix rows = I.hnf_basis();
    long k = 0;
    for (;;) {
        IntMatrix next(0, O.degree());
        for (std::size_t i = 0; i < rows.rows(); ++i) next.append_row(O.multiply(rows.row_vector(i), P.beta));
        if (!divide_rows(next, P.p)) return k;
        ++k;
        rows = hnf(next);
    }
}

long valuation(FracIdeal const& I, PrimeIdeal const& P)
{
    return valuation(I.num, P) - static_cast<long>(P.e) * static_cast<long>(nfkit::valuation(I.den, P.p));
}

IdealFactorization factor_ideal(Ideal const& I)
{
    IdealFactorization out;
    if (I.is_unit()) return out;
    for (auto const& p : prime_divisors(I.norm()))
        for (auto& P : prime_decomposition(I.order(), p)) {
            long v = valuation(I, P);
            if (v > 0) out.emplace_back(std::move(P), v);
        }
    return out;
}

IdealFactorization factor_ideal(FracIdeal const& I)
{
    std::vector<Integer> primes = prime_divisors(I.num.norm());
    for (auto const& q : prime_divisors(I.den))
        if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
    std::sort(primes.begin(), primes.end());
    IdealFactorization out;
    for (auto const& p : primes)
        for (auto& P : prime_decomposition(I.num.order(), p)) {
            long v = valuation(I, P);
            if (v != 0) out.emplace_back(std::move(P), v);
        }
    return out;
}

Ideal recombine(Order const& O, IdealFactorization const& fac)
{
    Ideal r = unit_ideal(O);
    for (auto const& [P, e] : fac) {
        if (e < 0) throw DomainError("recombine needs nonnegative exponents");
        r = ideal_mul(r, ideal_pow(P.ideal, static_cast<unsigned>(e)));
    }
    return r;
}

std::vector<RamifiedPrime> ramified_primes(Field const& K)
{
    Order O = maximal_order(K);
    std::vector<RamifiedPrime> out;
    for (auto const& p : prime_divisors(abs(O.discriminant()))) {
        RamifiedPrime r{p, {}};
        for (auto const& P : prime_decomposition(O, p)) r.shape.emplace_back(P.e, P.f);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace nfkit
