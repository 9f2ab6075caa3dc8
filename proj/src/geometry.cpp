#include "nfkit/geometry.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>

#include "nfkit/errors.hpp"
#include "nfkit/quadfield.hpp"

namespace nfkit {

namespace {

using cld = std::complex<long double>;

constexpr long double kEps = LDBL_EPSILON;

int sgn(Rational const& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

RationalInterval interval_mul(RationalInterval const& a, RationalInterval const& b)
{
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

// Horner evaluation of p over [lo, hi].
RationalInterval interval_eval(RatPoly const& p, Rational const& lo, Rational const& hi)
{
    std::vector<Rational> c = p.coeffs();
    if (c.empty()) return {0, 0};
    RationalInterval acc{c.back(), c.back()};
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        acc = interval_mul(acc, {lo, hi});
        acc.lo += c[k];
        acc.hi += c[k];
    }
    return acc;
}

long double ld(Integer const& n) { return to_long_double(Rational(n)); }

struct RootApprox {
    cld z;
    long double r;
};

cld eval_ld(std::vector<long double> const& c, cld z)
{
    cld acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

// All complex roots of a squarefree monic polynomial by Weierstrass iteration
// and Newton polishing, with a disk radius from |f/f'| guaranteed per root.
std::vector<RootApprox> all_roots(IntPoly const& f)
{
    const int d = f.degree();
    std::vector<long double> c(d + 1), dc(d);
    for (int k = 0; k <= d; ++k) c[k] = ld(f.coeffs()[k]) / ld(f.lc());
    for (int k = 1; k <= d; ++k) dc[k - 1] = k * c[k];
    long double R = to_long_double(root_bound(RatPoly(f)));
    std::vector<cld> z(d);
    const long double pi = 3.14159265358979323846264338327950288L;
    for (int k = 0; k < d; ++k) z[k] = std::polar(R, 2 * pi * k / d + 0.4L);
    for (int it = 0; it < 5000; ++it) {
        long double change = 0;
        for (int i = 0; i < d; ++i) {
            cld den = 1;
            for (int j = 0; j < d; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) == 0) den = kEps;
            cld step = eval_ld(c, z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step) / std::max(1.0L, std::abs(z[i])));
        }
        if (change < 16 * kEps) break;
    }
    std::vector<RootApprox> out;
    for (int i = 0; i < d; ++i) {
        for (int it = 0; it < 4; ++it) {
            cld fp = eval_ld(dc, z[i]);
            if (std::abs(fp) == 0) break;
            z[i] -= eval_ld(c, z[i]) / fp;
        }
        long double mag = 0, az = std::abs(z[i]);
        for (int k = d; k >= 0; --k) mag = mag * az + std::abs(c[k]);
        long double fp = std::abs(eval_ld(dc, z[i]));
        if (fp == 0) throw Error("root approximation failed: vanishing derivative");
        long double r = d * (std::abs(eval_ld(c, z[i])) + 4 * (d + 1) * kEps * mag) / fp;
        out.push_back({z[i], r});
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (std::abs(out[i].z - out[j].z) <= out[i].r + out[j].r)
                throw Error("root approximation failed: root disks overlap");
    return out;
}

// Roots in embedding order: real roots (decreasing), then each complex pair z, conj z.
std::vector<RootApprox> embedding_roots(Field const& K)
{
    std::vector<RootApprox> out;
    for (auto const& e : real_embeddings(K)) {
        RealEmbedding r = refine(e, Rational(1, Integer(1) << 100));
        long double m = to_long_double((r.lo + r.hi) / 2);
        out.push_back({cld(m, 0), to_long_double(r.hi - r.lo) + std::abs(m) * kEps});
    }
    for (auto const& c : complex_embeddings(K)) {
        out.push_back({c.approx, c.radius});
        out.push_back({c.mirror(), c.radius});
    }
    return out;
}

struct EmbeddedElem {
    std::vector<cld> v;
    std::vector<long double> err;
};

EmbeddedElem embed(FieldElem const& x, std::vector<RootApprox> const& roots)
{
    std::vector<Rational> q = x.coords();
    std::vector<long double> c(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) c[k] = to_long_double(q[k]);
    EmbeddedElem out;
    for (auto const& rt : roots) {
        cld val = eval_ld(c, rt.z);
        long double az = std::abs(rt.z), mag = 0, deriv = 0;
        for (std::size_t k = c.size(); k-- > 0;) {
            deriv = deriv * (az + rt.r) + mag;
            mag = mag * az + std::abs(c[k]);
        }
        out.v.push_back(val);
        out.err.push_back(deriv * rt.r + 4 * (c.size() + 1) * kEps * mag + std::abs(val) * kEps);
    }
    return out;
}

Rational sqrt_upper(Integer const& n)
{
    Integer r;
    if (is_square(n, &r)) return Rational(r);
    Integer scale = ipow(10, 12);
    Rational out(isqrt(n * scale * scale) + 1, scale);
    out.canonicalize();
    return out;
}

// Rational upper bound for x^(1/d), exact when x is a d-th power.
Rational root_upper(Rational const& x, int d)
{
    Integer t = x.get_num() * ipow(x.get_den(), d - 1), r;
    if (mpz_root(r.get_mpz_t(), t.get_mpz_t(), d) != 0) {
        Rational out(r, x.get_den());
        out.canonicalize();
        return out;
    }
    Integer scale = Integer(1) << 32;
    t *= ipow(scale, d);
    mpz_root(r.get_mpz_t(), t.get_mpz_t(), d);
    Rational out(r + 1, x.get_den() * scale);
    out.canonicalize();
    return out;
}

// gamma_d^d for the Hermite constants of dimensions 1..8.
Rational hermite_power(int d)
{
    static const Rational table[] = {Rational(1), Rational(4, 3), Rational(2), Rational(4),
                                     Rational(8), Rational(64, 3), Rational(64), Rational(256)};
    if (d < 1 || d > 8) throw LimitError("no Hermite constant stored for dimension " + std::to_string(d));
    return table[d - 1];
}

Rational rational_from_ld(long double x)
{
    // x rounded toward zero to 63 mantissa bits
    int e;
    long double m = std::frexp(x, &e);
    Integer mant(0);
    auto scaled = static_cast<long long>(std::ldexp(m, 63));
    mant = Integer(std::to_string(scaled));
    Rational out(mant);
    if (e - 63 >= 0)
        out *= Rational(Integer(1) << (e - 63));
    else
        out /= Rational(Integer(1) << (63 - e));
    return out;
}

}  // namespace

// ---------------------------------------------------------------- real embeddings

long double RealEmbedding::approx() const
{
    RealEmbedding r = refine(*this, Rational(1, Integer(1) << 80));
    return to_long_double((r.lo + r.hi) / 2);
}

std::vector<RealEmbedding> real_embeddings(Field const& K)
{
    RatPoly f(K->polynomial());
    std::vector<RealEmbedding> out;
    if (f.degree() == 1) {
        Rational r = -f.coeff(0) / f.coeff(1);
        out.push_back({K, r - 1, r + 1});
        return out;
    }
    auto chain = sturm_sequence(f);
    auto count = [&](Rational const& lo, Rational const& hi) {
        return sign_variations(chain, lo, false) - sign_variations(chain, hi, false);
    };
    Rational B = root_bound(f);
    std::function<void(Rational const&, Rational const&, int)> isolate = [&](Rational const& lo, Rational const& hi,
                                                                               int n) {
        if (n == 0) return;
        if (n == 1) {
            out.push_back({K, lo, hi});
            return;
        }
        Rational mid = (lo + hi) / 2;
        isolate(mid, hi, count(mid, hi));
        isolate(lo, mid, count(lo, mid));
    };
    isolate(-B, B, count(-B, B));
    return out;
}

RealEmbedding refine(RealEmbedding const& e, Rational const& width)
{
    RatPoly f(e.field->polynomial());
    RealEmbedding r = e;
    int slo = sgn(f.eval(r.lo));
    while (r.hi - r.lo >= width) {
        Rational mid = (r.lo + r.hi) / 2;
        int s = sgn(f.eval(mid));
        if (s == 0) {
            Rational w = (r.hi - r.lo) / 4;
            r.lo = mid - w;
            r.hi = mid + w;
            slo = sgn(f.eval(r.lo));
        } else if (s == slo) {
            r.lo = mid;
        } else {
            r.hi = mid;
        }
    }
    return r;
}

std::vector<ComplexEmbedding> complex_embeddings(Field const& K)
{
    std::vector<ComplexEmbedding> out;
    const int s = K->signature().second;
    if (s == 0) return out;
    auto roots = all_roots(K->polynomial());
    int real = 0;
    for (auto const& rt : roots) {
        if (std::abs(rt.z.imag()) <= rt.r)
            ++real;
        else if (rt.z.imag() > 0)
            out.push_back({K, rt.z, rt.r, 0});
    }
    if (real != K->signature().first || static_cast<int>(out.size()) != s)
        throw Error("root approximation failed: could not separate real and complex roots");
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
        return a.approx.real() != b.approx.real() ? a.approx.real() < b.approx.real()
                                                  : a.approx.imag() < b.approx.imag();
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].pair_id = i;
    return out;
}

RationalInterval evaluate(RealEmbedding const& e, FieldElem const& a, Rational const& width)
{
    RatPoly p = a.as_poly();
    RealEmbedding r = e;
    for (;;) {
        RationalInterval v = interval_eval(p, r.lo, r.hi);
        if (v.width() < width) return v;
        r = refine(r, (r.hi - r.lo) / 256);
    }
}

int sign_at(RealEmbedding const& e, FieldElem const& a)
{
    if (a.is_zero()) return 0;
    RatPoly p = a.as_poly();
    RealEmbedding r = e;
    for (;;) {
        RationalInterval v = interval_eval(p, r.lo, r.hi);
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        r = refine(r, (r.hi - r.lo) / 256);
    }
}

Integer floor_at(RealEmbedding const& e, FieldElem const& a)
{
    RationalInterval v = evaluate(e, a, Rational(1, 1024));
    Integer lo = floor(v.lo), hi = floor(v.hi);
    if (lo == hi) return lo;
    // one integer m = hi lies in the enclosure
    return sign_at(e, a - a.field()->from_rational(Rational(hi))) >= 0 ? hi : hi - 1;
}

LogEmbedding log_embedding(FieldElem const& u)
{
    Field const& K = u.field();
    if (u.is_zero()) throw DomainError("logarithmic embedding of zero");
    if (K->signature().second != 0) throw DomainError("logarithmic embedding needs a totally real field");
    LogEmbedding out;
    for (auto const& e : real_embeddings(K)) {
        Rational w(1, Integer(1) << 64);
        for (;;) {
            RationalInterval v = evaluate(e, u, w);
            if (v.lo > 0 || v.hi < 0) {
                Rational lo = abs(v.lo), hi = abs(v.hi);
                if (lo > hi) std::swap(lo, hi);
                if (hi - lo < lo * Rational(1, Integer(1) << 56)) {
                    long double m = to_long_double((lo + hi) / 2);
                    out.values.push_back(std::log(m));
                    out.error = std::max(out.error, to_long_double((hi - lo) / lo) + 8 * kEps * (1 + std::abs(std::log(m))));
                    break;
                }
            }
            w /= Integer(1) << 32;
        }
    }
    return out;
}

Rational minkowski_bound(Field const& K)
{
    const int d = K->degree(), s = K->signature().second;
    Order O = maximal_order(K);
    Rational pi_lower(Integer("314159265358979"), Integer("100000000000000"));
    pi_lower.canonicalize();
    Rational b = rpow(Rational(4) / pi_lower, s);
    Integer fact = 1;
    for (int k = 2; k <= d; ++k) fact *= k;
    b *= Rational(fact) / Rational(ipow(d, d));
    b *= sqrt_upper(abs(O.discriminant()));
    b.canonicalize();
    return b;
}

// ---------------------------------------------------------------- T2 lattices

MinkowskiGram minkowski_gram(std::vector<FieldElem> const& basis)
{
    if (basis.empty()) throw DomainError("Gram matrix of an empty basis");
    Field const& K = basis[0].field();
    const std::size_t n = basis.size();
    MinkowskiGram G{basis, RatMatrix(n, n), 0};
    if (K->signature().second == 0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) G.gram(i, j) = G.gram(j, i) = (basis[i] * basis[j]).trace();
        return G;
    }
    if (K->degree() == 2) {
        // complex conjugation is the nontrivial automorphism x -> Tr(x) - x
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                FieldElem cj = K->from_rational(basis[j].trace()) - basis[j];
                G.gram(i, j) = G.gram(j, i) = (basis[i] * cj).trace();
            }
        return G;
    }
    auto roots = embedding_roots(K);
    std::vector<EmbeddedElem> emb;
    for (auto const& b : basis) emb.push_back(embed(b, roots));
    long double err = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            long double v = 0, e = 0, mag = 0;
            for (std::size_t k = 0; k < roots.size(); ++k) {
                cld x = emb[i].v[k], y = emb[j].v[k];
                v += (x * std::conj(y)).real();
                e += std::abs(x) * emb[j].err[k] + std::abs(y) * emb[i].err[k] + emb[i].err[k] * emb[j].err[k];
                mag += std::abs(x) * std::abs(y);
            }
            e += 4 * (roots.size() + 1) * kEps * mag + std::abs(v) * kEps;
            G.gram(i, j) = G.gram(j, i) = rational_from_ld(v);
            err = std::max(err, e);
        }
    G.error = rational_from_ld(err * 2);
    return G;
}

MinkowskiGram minkowski_gram(Order const& O) { return minkowski_gram(O.basis()); }

MinkowskiGram minkowski_gram(Ideal const& I) { return minkowski_gram(I.basis()); }

Rational t2_upper(FieldElem const& x)
{
    MinkowskiGram G = minkowski_gram(std::vector<FieldElem>{x});
    return G.gram(0, 0) + G.error;
}

std::vector<std::vector<Integer>> fincke_pohst(RatMatrix const& gram, Rational const& bound, std::uint64_t budget)
{
    const std::size_t n = gram.rows();
    if (gram.cols() != n) throw DomainError("Gram matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (gram(i, j) != gram(j, i)) throw DomainError("Gram matrix must be symmetric");
    // Q(x) = sum_i q_ii (x_i + sum_{j > i} q_ij x_j)^2
    RatMatrix q = gram;
    for (std::size_t i = 0; i < n; ++i) {
        if (q(i, i) <= 0) throw DomainError("Gram matrix is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) q(j, i) = q(i, j), q(i, j) /= q(i, i);
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
    }
    std::vector<std::vector<Integer>> out;
    if (n == 0 || bound <= 0) return out;
    std::vector<Integer> x(n, 0);
    std::uint64_t nodes = 0;
    std::function<void(std::size_t, Rational const&, bool)> rec = [&](std::size_t i, Rational const& T, bool zero_above) {
        if (++nodes > budget) throw LimitError("short vector enumeration exceeded its budget");
        Rational c = 0;
        for (std::size_t j = i + 1; j < n; ++j) c -= q(i, j) * x[j];
        long double s = std::sqrt(to_long_double(T / q(i, i)));
        long double cl = to_long_double(c);
        Integer lo(std::to_string(static_cast<long long>(std::floor(cl - s)) - 1));
        Integer hi(std::to_string(static_cast<long long>(std::ceil(cl + s)) + 1));
        if (zero_above && lo < 0) lo = 0;
        for (Integer v = lo; v <= hi; ++v) {
            Rational t = v - c;
            Rational rest = T - q(i, i) * t * t;
            if (rest < 0) continue;
            x[i] = v;
            if (i == 0) {
                if (!(zero_above && v == 0)) out.push_back(x);
            } else {
                rec(i - 1, rest, zero_above && v == 0);
            }
        }
        x[i] = 0;
    };
    rec(n - 1, bound, true);
    return out;
}

std::vector<std::vector<Integer>> fincke_pohst(MinkowskiGram const& G, Rational const& bound, std::uint64_t budget)
{
    if (G.error == 0) return fincke_pohst(G.gram, bound, budget);
    // |v^T (G* - G) v| <= error |v|_1^2 <= n error |v|_2^2, so v^T (G - n error I) v <= v^T G* v
    const std::size_t n = G.gram.rows();
    RatMatrix lower = G.gram;
    for (std::size_t i = 0; i < n; ++i) lower(i, i) -= G.error * static_cast<long>(n);
    std::vector<std::vector<Integer>> out;
    try {
        out = fincke_pohst(lower, bound, budget);
    } catch (DomainError const&) {
        throw DomainError("Gram matrix is under-resolved for enumeration");
    }
    std::erase_if(out, [&](std::vector<Integer> const& v) {
        Rational val = 0, l1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            l1 += abs(v[i]);
            for (std::size_t j = 0; j < n; ++j) val += G.gram(i, j) * v[i] * v[j];
        }
        return val > bound + G.error * l1 * l1;
    });
    return out;
}

// ---------------------------------------------------------------- principality

std::optional<FieldElem> short_generator(Ideal const& I, Rational const& slack, std::uint64_t budget)
{
    const int d = I.order().degree();
    Integer const& N = I.norm();
    auto basis = I.basis();
    if (N == 1) return I.order().field()->one();
    Rational bound = slack * d * root_upper(Rational(N * N) * hermite_power(d), d);
    MinkowskiGram G = minkowski_gram(basis);
    for (auto const& v : fincke_pohst(G, bound, budget)) {
        FieldElem g = I.order().field()->zero();
        for (std::size_t i = 0; i < v.size(); ++i) g += basis[i] * Rational(v[i]);
        if (abs(g.norm()) == N) return g;
    }
    return std::nullopt;
}

std::optional<FieldElem> quadratic_generator(Ideal const& I)
{
    Order const& O = I.order();
    Field const& K = O.field();
    if (K->degree() != 2) throw DomainError("quadratic principality test needs a quadratic field");
    Integer const& N = I.norm();
    auto basis = I.basis();
    if (K->signature().first == 0) {
        // T2(g) = 2 N(g) for imaginary quadratic fields
        for (auto const& v : fincke_pohst(minkowski_gram(basis), Rational(2 * N))) {
            FieldElem g = basis[0] * Rational(v[0]) + basis[1] * Rational(v[1]);
            if (g.norm() == N) return g;
        }
        return std::nullopt;
    }
    // A generator g is a lattice minimum of I, and so are g eps^k. Minima of
    // b1 (Z + Z theta) far out in the direction |sigma_1| -> 0 are b1 (q theta - p)
    // for convergents p/q of sigma_1(theta); the expansion is eventually periodic
    // and one period meets every minimum up to units.
    RealEmbedding e = real_embeddings(K).front();
    FieldElem const& b1 = basis[0];
    FieldElem const& b2 = basis[1];
    for (auto const& g : {b1, b2})
        if (abs(g.norm()) == N) return g;
    FieldElem theta = b2 / b1;
    std::vector<FieldElem> seen;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // p_{k-2}, q_{k-2}, p_{k-1}, q_{k-1}
    for (;;) {
        Integer a = floor_at(e, theta);
        Integer p = a * p1 + p0, q = a * q1 + q0;
        p0 = p1, q0 = q1, p1 = p, q1 = q;
        FieldElem g = b2 * Rational(q) - b1 * Rational(p);
        if (abs(g.norm()) == N) return g;
        if (std::find(seen.begin(), seen.end(), theta) != seen.end()) return std::nullopt;
        seen.push_back(theta);
        theta = (theta - K->from_rational(Rational(a))).inverse();
    }
}

ClassNumberOneResult verify_class_number_one(Field const& K)
{
    Order O = maximal_order(K);
    ClassNumberOneResult out;
    out.bound = minkowski_bound(K);
    Integer B = floor(out.bound);
    for (auto p : primes_up_to(B.get_ui())) {
        for (auto const& P : prime_decomposition(O, Integer(p))) {
            if (P.ideal.norm() > B) continue;
            std::optional<FieldElem> g;
            try {
                g = short_generator(P.ideal);
            } catch (LimitError const&) {
            }
            if (!g && K->degree() == 2) {
                g = is_principal_with_gen(P.ideal);
                if (!g) {
                    out.status = ClassNumberOneStatus::refuted;
                    out.witness = P;
                    return out;
                }
            }
            if (!g) {
                out.status = ClassNumberOneStatus::inconclusive;
                out.witness = P;
                return out;
            }
            out.generators.emplace_back(P, *g);
        }
    }
    out.status = ClassNumberOneStatus::confirmed;
    return out;
}

std::vector<Ideal> ideals_up_to(Order const& O, Integer const& bound)
{
    std::vector<Ideal> primes;
    if (bound >= 2)
        for (auto p : primes_up_to(bound.get_ui()))
            for (auto const& P : prime_decomposition(O, Integer(p)))
                if (P.ideal.norm() <= bound) primes.push_back(P.ideal);
    std::vector<Ideal> out{unit_ideal(O)};
    if (bound < 1) out.clear();
    // products of primes with nondecreasing index
    std::function<void(Ideal const&, std::size_t)> rec = [&](Ideal const& I, std::size_t from) {
        for (std::size_t i = from; i < primes.size(); ++i) {
            if (I.norm() * primes[i].norm() > bound) continue;
            Ideal J = ideal_mul(I, primes[i]);
            out.push_back(J);
            rec(J, i);
        }
    };
    if (!out.empty()) rec(unit_ideal(O), 0);
    return out;
}

std::size_t ideal_class_count(Field const& K)
{
    if (K->degree() != 2) throw DomainError("ideal class count is implemented for quadratic fields");
    Order O = maximal_order(K);
    auto conj = [&](Ideal const& J) {
        std::vector<FieldElem> gens;
        for (auto const& b : J.basis()) gens.push_back(K->from_rational(b.trace()) - b);
        return ideal_from_gens(O, gens);
    };
    std::vector<Ideal> reps;
    for (auto const& I : ideals_up_to(O, floor(minkowski_bound(K)))) {
        bool found = false;
        for (auto const& J : reps)
            if (quadratic_generator(ideal_mul(I, conj(J)))) {
                found = true;
                break;
            }
        if (!found) reps.push_back(I);
    }
    return reps.size();
}

// ---------------------------------------------------------------- plot data

std::vector<PlotPoint> plot_lattice_points(Order const& O, Rational const& box)
{
    Field const& K = O.field();
    if (K->degree() != 2 || K->signature().first != 0) throw DomainError("lattice plot needs an imaginary quadratic field");
    auto roots = embedding_roots(K);
    std::vector<RootApprox> upper{roots[0]};
    auto w0 = embed(O.basis_element(0), upper).v[0], w1 = embed(O.basis_element(1), upper).v[0];
    long double det = w0.real() * w1.imag() - w0.imag() * w1.real();
    long double b = to_long_double(box);
    long double ru = b * (std::abs(w1.imag()) + std::abs(w1.real())) / std::abs(det) + 1;
    long double rv = b * (std::abs(w0.imag()) + std::abs(w0.real())) / std::abs(det) + 1;
    std::vector<PlotPoint> out;
    for (long u = -static_cast<long>(ru); u <= static_cast<long>(ru); ++u)
        for (long v = -static_cast<long>(rv); v <= static_cast<long>(rv); ++v) {
            cld z = static_cast<long double>(u) * w0 + static_cast<long double>(v) * w1;
            if (std::abs(z.real()) <= b + 1e-12L && std::abs(z.imag()) <= b + 1e-12L) out.push_back({z.real(), z.imag()});
        }
    std::sort(out.begin(), out.end(), [](auto const& p, auto const& q) { return p.x != q.x ? p.x < q.x : p.y < q.y; });
    return out;
}

long double fundamental_domain_area(Order const& O)
{
    Field const& K = O.field();
    if (K->degree() != 2 || K->signature().first != 0) throw DomainError("fundamental domain needs an imaginary quadratic field");
    std::vector<RootApprox> upper{embedding_roots(K)[0]};
    auto w0 = embed(O.basis_element(0), upper).v[0], w1 = embed(O.basis_element(1), upper).v[0];
    return std::abs(w0.real() * w1.imag() - w0.imag() * w1.real());
}

std::vector<HyperbolaPoint> plot_unit_hyperbola_points(std::int64_t D, Rational const& box)
{
    if (D <= 0 || !is_fundamental_discriminant(D)) throw DomainError("unit plot needs a real quadratic discriminant");
    const bool odd = D % 4 == 1;
    const Integer m = odd ? D : D / 4;
    const Integer steps = odd ? 2 : 1;
    Integer n = floor(box * steps);
    std::vector<HyperbolaPoint> out;
    for (Integer i = -n; i <= n; ++i)
        for (Integer j = -n; j <= n; ++j) {
            HyperbolaPoint pt{Rational(i, steps), Rational(j, steps)};
            pt.a.canonicalize();
            pt.b.canonicalize();
            pt.in_order = odd ? mod(i - j, 2) == 0 : true;
            Rational nm = pt.a * pt.a - Rational(m) * pt.b * pt.b;
            pt.on_curve = nm == 1 || nm == -1;
            out.push_back(pt);
        }
    return out;
}

std::vector<LogUnitPoint> plot_log_units(std::int64_t D, long count)
{
    if (D <= 0) throw DomainError("logarithmic unit plot needs a real quadratic discriminant");
    QuadUnit u = fundamental_unit(D);
    Field K = quadratic_field(D);
    FieldElem eps = K->from_rational(Rational(u.x)) + K->gen() * Rational(u.y);
    std::vector<LogUnitPoint> out;
    for (long k = -count; k <= count; ++k) {
        LogEmbedding l = log_embedding(eps.pow(k));
        for (int s : {1, -1}) out.push_back({k, s, l.values[0], l.values[1]});
    }
    return out;
}

}  // namespace nfkit
