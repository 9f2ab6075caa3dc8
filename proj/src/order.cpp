#include "nfkit/order.hpp"

#include "nfkit/errors.hpp"
#include "nfkit/factor.hpp"

namespace nfkit {

namespace {

// HNF of rows/den with the common content of rows and den removed.
std::pair<IntMatrix, Integer> normalized_basis(IntMatrix const& rows, Integer den)
{
    IntMatrix h = hnf(rows);
    Integer g = den;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h(i, j).get_mpz_t());
    if (g != 1) {
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j <= i; ++j) mpz_divexact(h(i, j).get_mpz_t(), h(i, j).get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
    return {h, den};
}

std::optional<std::vector<Integer>> coords_raw(OrderBasis const& b, FieldElem const& a)
{
    // a = x * B / den  <=>  x * B = a_num * den / a_den.
    std::vector<Integer> w = a.numerator();
    for (auto& v : w) {
        v *= b.den;
        if (!mpz_divisible_p(v.get_mpz_t(), a.denominator().get_mpz_t())) return std::nullopt;
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), a.denominator().get_mpz_t());
    }
    std::vector<Integer> x;
    if (!solve_triangular_integral(b.basis_num, w, x)) return std::nullopt;
    return x;
}

FieldElem element_raw(Field const& K, OrderBasis const& b, std::size_t i)
{
    return FieldElem(K, b.basis_num.row_vector(i), b.den);
}

}  // namespace

Order::Order(Field K, IntMatrix const& rows, Integer const& den) : K_(std::move(K))
{
    const int d = K_->degree();
    if (rows.cols() != static_cast<std::size_t>(d)) throw DomainError("order basis has the wrong dimension");
    auto data = std::make_shared<OrderBasis>();
    std::tie(data->basis_num, data->den) = normalized_basis(rows, den);
    Integer det_b = 1;
    for (int i = 0; i < d; ++i) det_b *= data->basis_num(i, i);
    Integer dend = ipow(data->den, static_cast<unsigned long>(d));
    if (!mpz_divisible_p(dend.get_mpz_t(), det_b.get_mpz_t()))
        throw DomainError("module does not contain the equation order");
    data->index = dend / det_b;
    data->disc = K_->poly_discriminant() / (data->index * data->index);

    std::vector<FieldElem> w;
    for (int i = 0; i < d; ++i) w.push_back(element_raw(K_, *data, i));
    if (!coords_raw(*data, K_->one())) throw DomainError("module does not contain 1");
    data->table.assign(d, IntMatrix(d, d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (j < i) {
                for (int k = 0; k < d; ++k) data->table[i](j, k) = data->table[j](i, k);
                continue;
            }
            auto c = coords_raw(*data, w[i] * w[j]);
            if (!c) throw DomainError("module is not closed under multiplication");
            for (int k = 0; k < d; ++k) data->table[i](j, k) = (*c)[k];
        }
    d_ = std::move(data);
}

FieldElem Order::basis_element(std::size_t i) const { return element_raw(K_, *d_, i); }

std::vector<FieldElem> Order::basis() const
{
    std::vector<FieldElem> out;
    for (int i = 0; i < degree(); ++i) out.push_back(basis_element(i));
    return out;
}

FieldElem Order::element(std::vector<Integer> const& coords) const
{
    std::vector<Integer> v = coords * d_->basis_num;
    return FieldElem(K_, std::move(v), d_->den);
}

std::optional<std::vector<Integer>> Order::coords(FieldElem const& a) const
{
    if (a.field() != K_) throw DomainError("element is not in the field of the order");
    return coords_raw(*d_, a);
}

std::vector<Integer> Order::multiply(std::vector<Integer> const& x, std::vector<Integer> const& y) const
{
    const std::size_t d = x.size();
    std::vector<Integer> out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (y[j] == 0) continue;
            Integer c = x[i] * y[j];
            auto row = d_->table[i].row(j);
            for (std::size_t k = 0; k < d; ++k) mpz_addmul(out[k].get_mpz_t(), c.get_mpz_t(), row[k].get_mpz_t());
        }
    }
    return out;
}

IntMatrix Order::mult_matrix(std::vector<Integer> const& x) const
{
    const std::size_t d = x.size();
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) m(j, k) += x[i] * d_->table[i](j, k);
    }
    return m;
}

bool Order::contains(Order const& o) const
{
    for (int i = 0; i < o.degree(); ++i)
        if (!coords(o.basis_element(i))) return false;
    return true;
}

Order equation_order(Field const& K) { return Order(K, IntMatrix::identity(K->degree()), 1); }

DedekindResult dedekind_test(Order const& O, Integer const& p)
{
    if (!is_prime(p)) throw DomainError("Dedekind test needs a prime, got " + p.get_str());
    Field const& K = O.field();
    IntPoly const& f = K->polynomial();
    ModPoly fb(f, p);
    ModPoly g = ModPoly::constant(1, p);
    for (auto const& [gi, e] : factor_mod_p(fb, 1).factors) g = g * gi;
    ModPoly h = divrem(fb, g).first;
    IntPoly F = (g.lift() * h.lift() - f);
    for (auto const& c : F.coeffs())
        if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) throw DomainError("Dedekind test: internal inconsistency");
    F = F.divexact(p);
    ModPoly Z = gcd(gcd(ModPoly(F, p), g), h);
    if (Z.degree() == 0) return {true, O};
    // O' = Z[alpha] + U(alpha)/p Z[alpha] with U = f / Z mod p.
    IntPoly U = divrem(fb, Z).first.lift();
    const int d = K->degree();
    IntMatrix gens(0, d);
    for (int i = 0; i < d; ++i) {
        std::vector<Integer> r(d, 0);
        r[i] = p;
        gens.append_row(r);
    }
    FieldElem u = K->from_poly(RatPoly(U));
    FieldElem a = K->gen();
    FieldElem cur = u;
    for (int j = 0; j < d; ++j) {
        gens.append_row(cur.numerator());
        cur = cur * a;
    }
    return {false, Order(K, gens, p)};
}

IntMatrix p_radical(Order const& O, Integer const& p)
{
    // Kernel of x -> x^q on O/pO (additive since q is a power of p), plus pO.
    const int d = O.degree();
    Integer q = p;
    while (q < d) q *= p;
    IntMatrix frob(d, d);
    for (int i = 0; i < d; ++i) {
        std::vector<Integer> b(d, 0), r(d, 0);
        b[i] = 1;
        r[0] = 1;  // the first basis element is 1
        Integer k = q;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) {
                r = O.multiply(r, b);
                for (auto& v : r) v = mod(v, p);
            }
            k >>= 1;
            if (k > 0) {
                b = O.multiply(b, b);
                for (auto& v : b) v = mod(v, p);
            }
        }
        for (int j = 0; j < d; ++j) frob(i, j) = r[j];
    }
    IntMatrix rad = left_kernel_mod_p(frob, p);
    for (int i = 0; i < d; ++i) {
        std::vector<Integer> e(d, 0);
        e[i] = p;
        rad.append_row(e);
    }
    return hnf(rad);
}

Order p_maximal_order(Order O, Integer const& p)
{
    Field const& K = O.field();
    const int d = K->degree();
    for (;;) {
        IntMatrix I = p_radical(O, p);

        // U/pO = kernel of O/pO -> End(I/pI), x -> (b -> x b).
        IntMatrix big(d, d * d);
        for (int i = 0; i < d; ++i) {
            std::vector<Integer> e(d, 0);
            e[i] = 1;
            for (int j = 0; j < d; ++j) {
                std::vector<Integer> prod = O.multiply(e, I.row_vector(j));
                std::vector<Integer> c;
                if (!solve_triangular_integral(I, prod, c)) throw DomainError("radical is not an ideal");
                for (int k = 0; k < d; ++k) big(i, j * d + k) = mod(c[k], p);
            }
        }
        IntMatrix ker = left_kernel_mod_p(big, p);
        IntMatrix ugens = ker;
        for (int i = 0; i < d; ++i) {
            std::vector<Integer> e(d, 0);
            e[i] = p;
            ugens.append_row(e);
        }
        IntMatrix U = hnf(ugens);
        Integer detU = 1;
        for (int i = 0; i < d; ++i) detU *= U(i, i);
        if (detU == ipow(p, static_cast<unsigned long>(d))) return O;  // U = pO
        // O' = U / p, converted to power-basis rows.
        IntMatrix rows = U * O.basis_num();
        O = Order(K, rows, O.den() * p);
    }
}

Order maximal_order(Field const& K)
{
    auto data = K->maximal_order_basis([&]() -> std::shared_ptr<const OrderBasis> {
        Order Z = equation_order(K);
        const int d = K->degree();
        Integer disc = K->poly_discriminant();
        std::vector<Order> locals;
        for (auto const& [p, e] : factor_integer(disc)) {
            if (e < 2) continue;
            auto ded = dedekind_test(Z, p);
            if (ded.p_maximal) continue;
            locals.push_back(p_maximal_order(ded.enlarged, p));
        }
        if (locals.empty()) return Z.data();
        Integer L = 1;
        for (auto const& o : locals) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), o.den().get_mpz_t());
        IntMatrix gens(0, d);
        for (auto const& o : locals) {
            Integer s = L / o.den();
            for (int i = 0; i < d; ++i) {
                auto r = o.basis_num().row_vector(i);
                for (auto& v : r) v *= s;
                gens.append_row(r);
            }
        }
        return Order(K, gens, L).data();
    });
    return Order(K, data);
}

std::optional<std::vector<Integer>> coords_in_order(Order const& O, FieldElem const& a) { return O.coords(a); }

}  // namespace nfkit
