#include "nfkit/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nfkit/errors.hpp"

namespace nfkit {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 isqrt64(i64 n)
{
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i64 floor_div64(i64 a, i64 b)
{
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 mod64(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// g = gcd(a, b) >= 0 with x a + y b = g.
i64 xgcd64(i64 a, i64 b, i64& x, i64& y)
{
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (a < 0) a = -a, x0 = -x0, y0 = -y0;
    x = x0, y = y0;
    return a;
}

i64 to_i64(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) throw LimitError("quadratic form coefficient exceeds 64 bits");
    return static_cast<i64>(v);
}

i64 to_i64(Integer const& v)
{
    if (!v.fits_slong_p()) throw LimitError("quadratic form coefficient exceeds 64 bits");
    return v.get_si();
}

void require_form(Form const& f)
{
    i64 D = f.disc();
    if (D == 0 || (D > 0 && isqrt64(D) * isqrt64(D) == D)) throw DomainError("form discriminant is a square");
    if (!f.is_primitive()) throw DomainError("form is not primitive");
    if (D < 0 && f.a <= 0) throw DomainError("definite forms must be positive");
}

// Transformations are tracked as M with (x, y)^T = M (X, Y)^T.
struct Mat2 {
    Integer m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    void times(i64 s00, i64 s01, i64 s10, i64 s11)
    {
        Integer n00 = m00 * s00 + m01 * s10, n01 = m00 * s01 + m01 * s11;
        Integer n10 = m10 * s00 + m11 * s10, n11 = m10 * s01 + m11 * s11;
        m00 = n00, m01 = n01, m10 = n10, m11 = n11;
    }
};

// (a, b, c) -> (c, -b + 2ct, ...) via [[0, -1], [1, t]].
Form step(Form const& f, i64 bnew, Mat2* M)
{
    i64 D = f.disc();
    if (M) M->times(0, -1, 1, (bnew + f.b) / (2 * f.c));
    i128 num = static_cast<i128>(bnew) * bnew - D;
    return {f.c, bnew, to_i64(num / (4 * static_cast<i128>(f.c)))};
}

Form rho_tracked(Form const& f, Mat2* M)
{
    i64 D = f.disc();
    i64 s = isqrt64(D);
    i64 ac = f.c < 0 ? -f.c : f.c;
    i64 m = 2 * ac;
    i64 r = mod64(-f.b, m);
    i64 bnew = ac > s ? (r <= ac ? r : r - m) : s - mod64(s - r, m);
    return step(f, bnew, M);
}

// Definite reduction with tracking.
Form reduce_definite(Form f, Mat2* M)
{
    for (;;) {
        // normalize b into (-a, a]
        i64 t = floor_div64(f.a - f.b, 2 * f.a);
        if (t != 0) {
            if (M) M->times(1, t, 0, 1);
            i64 b = f.b + 2 * f.a * t;
            f = {f.a, b, to_i64((static_cast<i128>(b) * b - f.disc()) / (4 * static_cast<i128>(f.a)))};
        }
        if (f.a > f.c || (f.a == f.c && f.b < 0)) {
            f = step(f, -f.b, M);
            continue;
        }
        return f;
    }
}

Form reduce_tracked(Form const& f, Mat2* M)
{
    require_form(f);
    if (f.disc() < 0) return reduce_definite(f, M);
    Form g = f;
    long guard = 0;
    while (!is_reduced(g)) {
        g = rho_tracked(g, M);
        if (++guard > 100000000) throw LimitError("indefinite reduction did not terminate");
    }
    return g;
}

std::vector<char> squarefree_sieve(i64 hi)
{
    std::vector<char> sf(hi + 1, 1);
    for (i64 p = 2; p * p <= hi; ++p)
        for (i64 q = p * p; q <= hi; q += p * p) sf[q] = 0;
    return sf;
}

}  // namespace

bool Form::is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

Integer fundamental_discriminant(Integer const& m)
{
    if (m == 0 || (m > 0 && is_square(m))) throw DomainError("no quadratic field for a square argument");
    Integer core = squarefree_core(m);
    if (core == 1) throw DomainError("no quadratic field for a square argument");
    return mod(core, 4) == 1 ? core : 4 * core;
}

bool is_fundamental_discriminant(i64 D)
{
    if (D == 0 || D == 1) return false;
    auto squarefree = [](i64 n) {
        n = n < 0 ? -n : n;
        for (i64 p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    if (mod64(D, 4) == 1) return squarefree(D);
    if (mod64(D, 4) != 0) return false;
    i64 m = D / 4;
    return (mod64(m, 4) == 2 || mod64(m, 4) == 3) && squarefree(m);
}

std::vector<i64> fundamental_discriminants(i64 lo, i64 hi, int sign)
{
    if (lo < 1 || hi < lo - 1 || (sign != 1 && sign != -1)) throw DomainError("bad discriminant range");
    std::vector<i64> out;
    if (hi < lo) return out;
    std::vector<char> sf = squarefree_sieve(hi);
    for (i64 n = lo; n <= hi; ++n) {
        i64 D = sign * n;
        bool ok = false;
        if (mod64(D, 4) == 1)
            ok = D != 1 && sf[n];
        else if (n % 4 == 0) {
            i64 m = D / 4;
            ok = (mod64(m, 4) == 2 || mod64(m, 4) == 3) && sf[n / 4];
        }
        if (ok) out.push_back(D);
    }
    return out;
}

Field quadratic_field(i64 D)
{
    if (!is_fundamental_discriminant(D)) throw DomainError("not a fundamental discriminant: " + std::to_string(D));
    if (mod64(D, 4) == 1) return NumberField::create(RatPoly(IntPoly({Integer((1 - D) / 4), -1, 1})));
    return NumberField::create(RatPoly(IntPoly({Integer(-D / 4), 0, 1})));
}

Form principal_form(i64 D)
{
    i64 b = mod64(D, 2);
    return {1, b, (b * b - D) / 4};
}

Form opposite(Form const& f) { return {f.a, -f.b, f.c}; }

bool is_reduced(Form const& f)
{
    i64 D = f.disc();
    if (D < 0) {
        i64 ab = f.b < 0 ? -f.b : f.b;
        if (!(ab <= f.a && f.a <= f.c)) return false;
        return !((ab == f.a || f.a == f.c) && f.b < 0);
    }
    i64 s = isqrt64(D);
    i64 a2 = 2 * (f.a < 0 ? -f.a : f.a);
    return f.b >= 1 && f.b <= s && a2 <= s + f.b && a2 + f.b >= s + 1;
}

Form rho(Form const& f)
{
    if (f.disc() <= 0) throw DomainError("rho is defined for indefinite forms");
    return rho_tracked(f, nullptr);
}

Form reduce_to_reduced(Form const& f) { return reduce_tracked(f, nullptr); }

std::vector<Form> reduction_cycle(Form const& f)
{
    if (f.disc() <= 0 || !is_reduced(f)) throw DomainError("reduction cycle needs a reduced indefinite form");
    std::vector<Form> cyc{f};
    for (Form g = rho(f); !(g == f); g = rho(g)) cyc.push_back(g);
    return cyc;
}

Form reduce_form(Form const& f)
{
    Form g = reduce_to_reduced(f);
    if (g.disc() < 0) return g;
    auto cyc = reduction_cycle(g);
    return *std::min_element(cyc.begin(), cyc.end(), [](Form const& x, Form const& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    });
}

Form compose_raw(Form const& f, Form const& g)
{
    i64 D = f.disc();
    if (g.disc() != D) throw DomainError("composition of forms with different discriminants");
    i64 s = (f.b + g.b) / 2;
    i64 x1, y1, x2, y2;
    i64 g1 = xgcd64(f.a, g.a, x1, y1);
    i64 beta = xgcd64(g1, s, x2, y2);
    i128 m1 = static_cast<i128>(x2) * x1, m2 = static_cast<i128>(x2) * y1, m3 = y2;
    i128 A = static_cast<i128>(f.a) * g.a / (static_cast<i128>(beta) * beta);
    i128 num = m1 * f.a * g.b + m2 * g.a * f.b + m3 * ((static_cast<i128>(f.b) * g.b + D) / 2);
    if (num % beta != 0) throw Error("form composition: inexact division");
    i128 B = num / beta;
    i128 twoA = 2 * (A < 0 ? -A : A);
    B %= twoA;
    if (B < 0) B += twoA;
    if (B > twoA / 2) B -= twoA;
    i128 cnum = B * B - D;
    if (cnum % (4 * A) != 0) throw Error("form composition: inexact division");
    return {to_i64(A), to_i64(B), to_i64(cnum / (4 * A))};
}

Form compose(Form const& f, Form const& g)
{
    require_form(f);
    require_form(g);
    return reduce_form(compose_raw(f, g));
}

FormClassGroup::FormClassGroup(i64 D) : D_(D)
{
    if (!is_fundamental_discriminant(D)) throw DomainError("not a fundamental discriminant: " + std::to_string(D));
    auto add_class = [&](Form const& f) {
        if (index_.count(f)) return;
        std::size_t idx = reps_.size();
        if (D < 0) {
            index_[f] = idx;
            reps_.push_back(f);
            return;
        }
        auto cyc = reduction_cycle(f);
        for (auto const& g : cyc) index_[g] = idx;
        reps_.push_back(*std::min_element(cyc.begin(), cyc.end(), [](Form const& x, Form const& y) {
            return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
        }));
    };
    add_class(reduce_to_reduced(principal_form(D)));
    if (D < 0) {
        i64 n = -D;
        for (i64 a = 1; 3 * a * a <= n; ++a)
            for (i64 b = -a + 1; b <= a; ++b) {
                if (mod64(b - D, 2) != 0) continue;
                i64 num = b * b - D;
                if (num % (4 * a) != 0) continue;
                Form f{a, b, num / (4 * a)};
                if (f.c < a || (f.c == a && b < 0) || !f.is_primitive()) continue;
                add_class(f);
            }
    } else {
        i64 s = isqrt64(D);
        for (i64 a = 1; a <= s; ++a) {
            i64 blo = std::max({i64(1), 2 * a - s, s + 1 - 2 * a});
            if (mod64(blo - D, 2) != 0) ++blo;
            for (i64 b = blo; b <= s; b += 2) {
                i64 num = b * b - D;
                if (num % (4 * a) != 0) continue;
                Form f{a, b, num / (4 * a)};
                if (!f.is_primitive()) continue;
                add_class(f);
            }
        }
    }

    // Greedy generators by maximal order; H is the subgroup found so far.
    const std::size_t h = reps_.size();
    std::vector<std::size_t> order(h, 0);
    for (std::size_t i = 0; i < h; ++i) {
        std::size_t x = i, k = 1;
        while (x != 0) x = compose_index(x, i), ++k;
        order[i] = k;
    }
    std::vector<std::vector<i64>> coords(h);
    std::vector<char> in_H(h, 0);
    std::vector<std::size_t> H{0};
    in_H[0] = 1;
    std::vector<std::vector<i64>> rel_rows;
    while (H.size() < h) {
        std::size_t g = h;
        for (std::size_t i = 0; i < h; ++i)
            if (!in_H[i] && (g == h || order[i] > order[g])) g = i;
        std::size_t k = gens_.size();
        gens_.push_back(reps_[g]);
        for (auto idx : H) coords[idx].push_back(0);
        std::size_t x = g;
        i64 m = 1;
        while (!in_H[x]) x = compose_index(x, g), ++m;
        std::vector<i64> rel(coords[x]);
        rel[k] -= m;
        rel_rows.push_back(rel);
        std::vector<std::size_t> H2 = H;
        std::size_t gj = 0;  // g^j
        for (i64 j = 1; j < m; ++j) {
            gj = compose_index(gj, g);
            for (auto e : H) {
                std::size_t y = compose_index(e, gj);
                coords[y] = coords[e];
                coords[y][k] = j;
                H2.push_back(y);
                in_H[y] = 1;
            }
        }
        H = std::move(H2);
    }
    const std::size_t k = gens_.size();
    rels_ = IntMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < rel_rows[i].size(); ++j) rels_(i, j) = rel_rows[i][j];
    gen_coords_.resize(h);
    for (std::size_t i = 0; i < h; ++i) {
        gen_coords_[i].assign(k, 0);
        for (std::size_t j = 0; j < coords[i].size(); ++j) gen_coords_[i][j] = coords[i][j];
    }
    pres_.emplace(k, rels_, false);
}

std::size_t FormClassGroup::class_index(Form const& f) const
{
    if (f.disc() != D_) throw DomainError("form has the wrong discriminant");
    auto it = index_.find(reduce_to_reduced(f));
    if (it == index_.end()) throw Error("reduced form missing from the class table");
    return it->second;
}

std::size_t FormClassGroup::compose_index(std::size_t i, std::size_t j) const
{
    return class_index(compose_raw(reps_[i], reps_[j]));
}

std::vector<Integer> FormClassGroup::coordinates(Form const& f) const
{
    return pres_->coordinates(gen_coords_[class_index(f)]);
}

Form FormClassGroup::form_of(std::vector<Integer> const& coords) const
{
    std::vector<Integer> x = pres_->element(coords);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        std::size_t gi = class_index(gens_[i]);
        std::size_t ord = 1;
        for (std::size_t y = gi; y != 0; y = compose_index(y, gi)) ++ord;
        Integer e = mod(x[i], ord);
        for (Integer t = 0; t < e; ++t) idx = compose_index(idx, gi);
    }
    return reps_[idx];
}

FormClassGroup form_class_group(i64 D) { return FormClassGroup(D); }

Integer QuadUnit::pell_x() const { return mod64(D, 4) == 1 ? Integer(2 * x + y) : Integer(2 * x); }

Integer QuadUnit::pell_y() const { return y; }

QuadUnit fundamental_unit(i64 D)
{
    if (D <= 0) throw DomainError("fundamental unit needs a positive discriminant");
    if (!is_fundamental_discriminant(D)) throw DomainError("not a fundamental discriminant: " + std::to_string(D));
    const bool odd = mod64(D, 4) == 1;
    // xi = (P + sqrt N) / Q
    const i64 N = odd ? D : D / 4;
    const i64 s = isqrt64(N);
    i64 P = odd ? 1 : 0, Q = odd ? 2 : 1;
    Integer p0 = 1, p1 = 0, q0 = 0, q1 = 1;  // p_{k-1}, p_{k-2}, q_{k-1}, q_{k-2}
    for (long k = 0; k < 100000000; ++k) {
        i64 a = Q > 0 ? floor_div64(P + s, Q) : floor_div64(P + s + 1, Q);
        Integer p = a * p0 + p1, q = a * q0 + q1;
        p1 = p0, p0 = p, q1 = q0, q0 = q;
        QuadUnit u;
        u.D = D;
        // unit = p - q xi'
        if (odd) {
            u.x = p - q;
            u.y = q;
            Integer n = u.x * u.x + u.x * u.y + u.y * u.y * ((1 - D) / 4);
            if (n == 1 || n == -1) {
                u.norm = n.get_si();
                return u;
            }
        } else {
            u.x = p;
            u.y = q;
            Integer n = u.x * u.x - N * u.y * u.y;
            if (n == 1 || n == -1) {
                u.norm = n.get_si();
                return u;
            }
        }
        i64 Pn = a * Q - P;
        i64 Qn = (N - Pn * Pn) / Q;
        P = Pn, Q = Qn;
    }
    throw LimitError("continued fraction period exceeds the step budget");
}

WideClassGroup::WideClassGroup(i64 D) : narrow_(D)
{
    if (D < 0) {
        pres_.emplace(narrow_.presentation());
        return;
    }
    i64 b0 = mod64(D, 2);
    std::size_t neg = narrow_.class_index(Form{-1, b0, (D - b0 * b0) / 4});
    const std::size_t k = narrow_.generators().size();
    if (neg == 0) {
        unit_norm_ = -1;
        pres_.emplace(narrow_.presentation());
        return;
    }
    unit_norm_ = 1;
    IntMatrix rels = narrow_.relations();
    std::vector<Integer> row = narrow_.generator_coords(neg);
    rels.append_row(row);
    pres_.emplace(k, rels, false);
}

std::vector<Integer> WideClassGroup::dlog(Form const& f) const
{
    return pres_->coordinates(narrow_.generator_coords(narrow_.class_index(f)));
}

std::vector<Integer> WideClassGroup::dlog(Ideal const& I) const { return dlog(form_of_ideal(I)); }

Ideal WideClassGroup::ideal_of(Order const& O, std::vector<Integer> const& coords) const
{
    std::vector<Integer> x = pres_->element(coords);
    FormClassGroup const& G = narrow_;
    auto const& gens = G.generators();
    std::size_t idx = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::size_t gi = G.class_index(gens[i]);
        std::size_t ord = 1;
        for (std::size_t y = gi; y != 0; y = G.compose_index(y, gi)) ++ord;
        Integer e = mod(x[i], ord);
        for (Integer t = 0; t < e; ++t) idx = G.compose_index(idx, gi);
    }
    return ideal_of_form(O, G.representatives()[idx]);
}

Ideal WideClassGroup::generator_ideal(Order const& O, std::size_t i) const
{
    std::size_t n = group().divisors.size() + group().free_rank;
    if (i >= n) throw DomainError("generator index out of range");
    std::vector<Integer> e(n, 0);
    e[i] = 1;
    return ideal_of(O, e);
}

WideClassGroup class_group_wide(i64 D) { return WideClassGroup(D); }

FieldElem sqrt_disc(Order const& O)
{
    if (O.degree() != 2) throw DomainError("quadratic order expected");
    FieldElem w = O.basis_element(1);
    FieldElem delta = w * Rational(2) - O.field()->from_rational(w.trace());
    if (!(delta * delta == O.field()->from_rational(O.discriminant())))
        throw DomainError("order discriminant does not match its basis");
    return delta;
}

Form form_of_ideal(Ideal const& I)
{
    Order const& O = I.order();
    if (O.degree() != 2) throw DomainError("quadratic order expected");
    IntMatrix const& H = I.hnf_basis();
    Integer g = H(1, 1);
    if (H(0, 0) % g != 0 || H(1, 0) % g != 0) throw Error("quadratic ideal HNF has an unexpected shape");
    Integer a = H(0, 0) / g, h = H(1, 0) / g;
    Rational t = O.basis_element(1).trace();
    if (t.get_den() != 1) throw Error("order basis element has non-integral trace");
    Integer b = -(2 * h + t.get_num());
    Integer D = O.discriminant();
    Integer num = b * b - D;
    if (num % (4 * a) != 0) throw Error("ideal does not give an integral form");
    return {to_i64(a), to_i64(b), to_i64(Integer(num / (4 * a)))};
}

Ideal ideal_of_form(Order const& O, Form const& f)
{
    if (f.disc() != O.discriminant()) throw DomainError("form and order have different discriminants");
    Form g = f;
    if (g.a < 0) {
        if (g.disc() < 0) throw DomainError("definite forms must be positive");
        g = reduce_to_reduced(g);
        if (g.a < 0) g = rho(g);
    }
    FieldElem delta = sqrt_disc(O);
    Field const& K = O.field();
    FieldElem w = (K->from_rational(-g.b) + delta) * Rational(1, 2);
    return ideal_from_gens(O, {K->from_rational(g.a), w});
}

std::optional<FieldElem> is_principal_with_gen(Ideal const& I)
{
    Order const& O = I.order();
    Form f = form_of_ideal(I);
    Integer content = I.hnf_basis()(1, 1);
    Mat2 M;
    Form g = reduce_tracked(f, &M);
    bool found = g.a == 1 || g.a == -1;
    if (!found && g.disc() > 0) {
        Form start = g;
        for (g = rho_tracked(g, &M); !(g == start); g = rho_tracked(g, &M))
            if (g.a == 1 || g.a == -1) {
                found = true;
                break;
            }
    }
    if (!found) return std::nullopt;
    // f(p, r) = +-1 and f(x, y) = N(x a - y w) / a with w = (-b + sqrt D)/2
    Field const& K = O.field();
    FieldElem w = (K->from_rational(-f.b) + sqrt_disc(O)) * Rational(1, 2);
    FieldElem gen = (K->from_rational(Rational(M.m00 * f.a)) - w * Rational(M.m10)) * Rational(content);
    if (!(principal_ideal(O, gen) == I)) throw Error("principal generator check failed");
    return gen;
}

}  // namespace nfkit
