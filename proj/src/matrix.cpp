#include "nfkit/matrix.hpp"

#include <algorithm>

namespace nfkit {

RatMatrix to_rational(IntMatrix const& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

IntMatrix hnf(IntMatrix const& generators)
{
    const std::size_t n = generators.cols();
    std::vector<std::vector<Integer>> active;
    for (std::size_t i = 0; i < generators.rows(); ++i) {
        auto r = generators.row_vector(i);
        if (std::any_of(r.begin(), r.end(), [](Integer const& x) { return x != 0; }))
            active.push_back(std::move(r));
    }
    IntMatrix h(n, n);
    for (std::size_t jj = n; jj-- > 0;) {
        // Euclid on column jj among the active rows until one nonzero entry remains.
        for (;;) {
            std::size_t piv = active.size();
            std::size_t nonzero = 0;
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (active[i][jj] == 0) continue;
                ++nonzero;
                if (piv == active.size() || abs(active[i][jj]) < abs(active[piv][jj])) piv = i;
            }
            if (piv == active.size()) throw DomainError("hnf: lattice is not of full rank");
            if (nonzero == 1) {
                auto row = std::move(active[piv]);
                active.erase(active.begin() + static_cast<std::ptrdiff_t>(piv));
                if (row[jj] < 0)
                    for (auto& x : row) x = -x;
                for (std::size_t j = 0; j < n; ++j) h(jj, j) = row[j];
                break;
            }
            Integer const pv = active[piv][jj];
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (i == piv || active[i][jj] == 0) continue;
                Integer q = floor_div(active[i][jj], pv);
                for (std::size_t j = 0; j <= jj; ++j) active[i][j] -= q * active[piv][j];
            }
            std::erase_if(active, [](std::vector<Integer> const& r) {
                return std::all_of(r.begin(), r.end(), [](Integer const& x) { return x == 0; });
            });
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j-- > 0;) {
            Integer q = floor_div(h(i, j), h(j, j));
            if (q == 0) continue;
            for (std::size_t k = 0; k <= j; ++k) h(i, k) -= q * h(j, k);
        }
    return h;
}

Integer det(IntMatrix const& m0)
{
    if (m0.rows() != m0.cols()) throw DomainError("det of a non-square matrix");
    const std::size_t n = m0.rows();
    if (n == 0) return 1;
    IntMatrix m = m0;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0) ++r;
            if (r == n) return 0;
            m.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Rational det(RatMatrix const& m0)
{
    if (m0.rows() != m0.cols()) throw DomainError("det of a non-square matrix");
    const std::size_t n = m0.rows();
    RatMatrix m = m0;
    Rational d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = k;
        while (r < n && m(r, k) == 0) ++r;
        if (r == n) return 0;
        if (r != k) {
            m.swap_rows(k, r);
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

RatMatrix inverse(RatMatrix const& m0)
{
    if (m0.rows() != m0.cols()) throw DomainError("inverse of a non-square matrix");
    const std::size_t n = m0.rows();
    RatMatrix m = m0;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = k;
        while (r < n && m(r, k) == 0) ++r;
        if (r == n) throw DomainError("matrix is singular");
        m.swap_rows(k, r);
        inv.swap_rows(k, r);
        Rational piv = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rational f = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

std::size_t rank(RatMatrix const& m0)
{
    RatMatrix m = m0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

std::vector<Rational> solve_left(RatMatrix const& a, std::vector<Rational> const& b)
{
    // x A = b  <=>  x = b A^{-1}
    return b * inverse(a);
}

IntMatrix left_kernel_mod_p(IntMatrix const& m, Integer const& p)
{
    // Row-reduce M^T; its null space is the left kernel of M.
    const std::size_t rows = m.cols(), cols = m.rows();
    IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = mod(m(j, i), p);
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        a.swap_rows(r, piv);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), a(r, c).get_mpz_t(), p.get_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) a(r, j) = mod(a(r, j) * inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Integer f = a(i, c);
            for (std::size_t j = 0; j < cols; ++j) a(i, j) = mod(a(i, j) - f * a(r, j), p);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    IntMatrix kernel(0, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Integer> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = mod(-a(i, f), p);
        kernel.append_row(v);
    }
    return kernel;
}

bool solve_triangular_integral(IntMatrix const& h, std::vector<Integer> const& v,
                               std::vector<Integer>& x)
{
    const std::size_t n = h.rows();
    std::vector<Integer> rest = v;
    x.assign(n, 0);
    for (std::size_t j = n; j-- > 0;) {
        if (!mpz_divisible_p(rest[j].get_mpz_t(), h(j, j).get_mpz_t())) return false;
        x[j] = rest[j] / h(j, j);
        if (x[j] == 0) continue;
        for (std::size_t k = 0; k <= j; ++k) rest[k] -= x[j] * h(j, k);
    }
    return true;
}

}  // namespace nfkit
