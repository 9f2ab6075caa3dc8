#include "nfkit/abgrp.hpp"

#include <algorithm>

#include "nfkit/errors.hpp"

namespace nfkit {

namespace {

void row_addmul(IntMatrix& A, std::size_t dst, std::size_t src, Integer const& q)
{
    for (std::size_t j = 0; j < A.cols(); ++j) A(dst, j) += q * A(src, j);
}

void col_addmul(IntMatrix& A, std::size_t dst, std::size_t src, Integer const& q)
{
    for (std::size_t i = 0; i < A.rows(); ++i) A(i, dst) += q * A(i, src);
}

}  // namespace

SmithForm smith_normal_form(IntMatrix const& M)
{
    const std::size_t m = M.rows(), n = M.cols();
    IntMatrix A = M, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero pivot in the remaining block
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (A(i, j) != 0 && (pi == m || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
            if (pi == m) return {A, U, V};
            A.swap_rows(t, pi);
            U.swap_rows(t, pi);
            A.swap_cols(t, pj);
            V.swap_cols(t, pj);

            bool clear = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (A(i, t) == 0) continue;
                Integer q = floor_div(A(i, t), A(t, t));
                row_addmul(A, i, t, -q);
                row_addmul(U, i, t, -q);
                if (A(i, t) != 0) clear = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                Integer q = floor_div(A(t, j), A(t, t));
                col_addmul(A, j, t, -q);
                col_addmul(V, j, t, -q);
                if (A(t, j) != 0) clear = false;
            }
            if (!clear) continue;

            // divisibility chain: pull a non-multiple into row t
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            row_addmul(A, t, bad, 1);
            row_addmul(U, t, bad, 1);
        }
        if (A(t, t) < 0) {
            row_addmul(A, t, t, -2);
            row_addmul(U, t, t, -2);
        }
    }
    return {A, U, V};
}

Integer FinAbGroup::order() const
{
    if (!is_finite()) throw DomainError("infinite group has no finite order");
    Integer o = 1;
    for (auto const& d : divisors) o *= d;
    return o;
}

unsigned FinAbGroup::p_rank(Integer const& p) const
{
    unsigned r = 0;
    for (auto const& d : divisors)
        if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) ++r;
    return r;
}

std::string FinAbGroup::to_string() const
{
    std::string s;
    for (auto const& d : divisors) s += (s.empty() ? "" : " x ") + ("Z/" + d.get_str());
    if (free_rank) s += (s.empty() ? "" : " x ") + (free_rank == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank));
    return s.empty() ? "1" : s;
}

FinAbGroup abelian_group(std::vector<Integer> const& orders)
{
    IntMatrix rels(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) rels(i, i) = orders[i];
    return group_from_relations(orders.size(), rels).group();
}

AbGroupPresentation::AbGroupPresentation(std::size_t ngens, IntMatrix const& rels, bool allow_free)
{
    IntMatrix R = rels;
    if (R.rows() == 0) R = IntMatrix(0, ngens);
    if (R.cols() != ngens) throw DomainError("relation matrix has the wrong number of columns");
    SmithForm snf = smith_normal_form(R);
    V_ = snf.V;
    RatMatrix inv = inverse(to_rational(V_));
    Vinv_ = IntMatrix(ngens, ngens);
    for (std::size_t i = 0; i < ngens; ++i)
        for (std::size_t j = 0; j < ngens; ++j) Vinv_(i, j) = inv(i, j).get_num();
    diag_.assign(ngens, 0);
    for (std::size_t i = 0; i < std::min(R.rows(), ngens); ++i) diag_[i] = snf.S(i, i);
    first_ = 0;
    while (first_ < ngens && diag_[first_] == 1) ++first_;
    for (std::size_t i = first_; i < ngens; ++i) {
        if (diag_[i] == 0)
            ++group_.free_rank;
        else
            group_.divisors.push_back(diag_[i]);
    }
    if (!allow_free && group_.free_rank) throw DomainError("relations do not define a finite group");
}

std::vector<Integer> AbGroupPresentation::coordinates(std::vector<Integer> const& x) const
{
    std::vector<Integer> y = x * V_;
    std::vector<Integer> out;
    for (std::size_t i = first_; i < y.size(); ++i) out.push_back(diag_[i] == 0 ? y[i] : mod(y[i], diag_[i]));
    return out;
}

std::vector<Integer> AbGroupPresentation::element(std::vector<Integer> const& coords) const
{
    std::vector<Integer> y(diag_.size(), 0);
    for (std::size_t k = 0; k < coords.size(); ++k) y[first_ + k] = coords[k];
    return y * Vinv_;
}

bool AbGroupPresentation::is_zero(std::vector<Integer> const& x) const
{
    for (auto const& c : coordinates(x))
        if (c != 0) return false;
    return true;
}

AbGroupPresentation group_from_relations(std::size_t ngens, IntMatrix const& rels, bool allow_free)
{
    return AbGroupPresentation(ngens, rels, allow_free);
}

FinAbGroup sylow_subgroup(FinAbGroup const& G, Integer const& p)
{
    if (!G.is_finite()) throw DomainError("Sylow subgroup of an infinite group");
    if (!is_prime(p)) throw DomainError("Sylow subgroup needs a prime, got " + p.get_str());
    FinAbGroup out;
    for (auto const& d : G.divisors) {
        Integer q = ipow(p, valuation(d, p));
        if (q > 1) out.divisors.push_back(q);
    }
    return out;
}

Integer aut_order_abelian_p_group(FinAbGroup const& G)
{
    if (!G.is_finite()) throw DomainError("automorphism count needs a finite group");
    if (G.divisors.empty()) return 1;
    Integer p = factor_integer(G.divisors.front()).front().first;
    std::vector<unsigned long> e;
    for (auto const& d : G.divisors) {
        unsigned long v = valuation(d, p);
        if (ipow(p, v) != d) throw DomainError("group " + G.to_string() + " is not a p-group");
        e.push_back(v);
    }
    std::sort(e.begin(), e.end());
    // e_1 <= ... <= e_n; d_k = max{l : e_l = e_k}, c_k = min{l : e_l = e_k} (1-based)
    const std::size_t n = e.size();
    Integer out = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t dk = k, ck = k;
        while (dk + 1 < n && e[dk + 1] == e[k]) ++dk;
        while (ck > 0 && e[ck - 1] == e[k]) --ck;
        out *= ipow(p, dk + 1) - ipow(p, k);
        out *= ipow(ipow(p, e[k]), n - (dk + 1));
        out *= ipow(ipow(p, e[k] - 1), n - ck);
    }
    return out;
}

RationalInterval cohen_lenstra_wp(Integer const& p, unsigned terms)
{
    if (terms < 2) throw DomainError("w_p needs at least two terms");
    if (!is_prime(p)) throw DomainError("w_p needs a prime, got " + p.get_str());
    Rational prod = 1;
    for (unsigned k = 2; k <= terms; ++k) prod *= 1 - Rational(1, ipow(p, k));
    // prod_{k > K} (1 - p^-k) >= 1 - sum_{k > K} p^-k = 1 - p^-K / (p - 1)
    Rational tail = Rational(1, ipow(p, terms) * (p - 1));
    return {prod * (1 - tail), prod};
}

RationalInterval cohen_lenstra_mass(FinAbGroup const& A, Integer const& p, unsigned terms)
{
    if (!A.is_finite()) throw DomainError("Cohen-Lenstra mass needs a finite group");
    for (auto const& d : A.divisors)
        if (ipow(p, valuation(d, p)) != d) throw DomainError("group " + A.to_string() + " is not a p-group");
    RationalInterval w = cohen_lenstra_wp(p, terms);
    Rational s = Rational(A.order() * aut_order_abelian_p_group(A));
    return {w.lo / s, w.hi / s};
}

}  // namespace nfkit
