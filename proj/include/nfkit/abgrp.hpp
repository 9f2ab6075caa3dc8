#pragma once

#include <string>
#include <vector>

#include "nfkit/matrix.hpp"

namespace nfkit {

struct SmithForm {
    IntMatrix S, U, V;  // U * M * V = S
};

/// Smith normal form of an m x n integer matrix: S is diagonal with
/// nonnegative entries d_1 | d_2 | ..., U and V unimodular.
SmithForm smith_normal_form(IntMatrix const& M);

/// Finitely generated abelian group Z/d_1 x ... x Z/d_k x Z^r, d_i > 1, d_i | d_(i+1).
struct FinAbGroup {
    std::vector<Integer> divisors;
    unsigned free_rank = 0;

    bool is_finite() const { return free_rank == 0; }
    bool is_trivial() const { return divisors.empty() && free_rank == 0; }
    /// DomainError for infinite groups.
    Integer order() const;
    /// Rank of the p-torsion, i.e. the number of divisors divisible by p.
    unsigned p_rank(Integer const& p) const;
    std::string to_string() const;
    bool operator==(FinAbGroup const& o) const = default;
};

/// Cyclic decomposition of an arbitrary list of orders (e.g. 2, 3 -> Z/6).
FinAbGroup abelian_group(std::vector<Integer> const& orders);

/// Z^ngens modulo the row span of rels, with coordinate maps.
class AbGroupPresentation {
public:
    /// DomainError when the group is infinite and allow_free is false.
    AbGroupPresentation(std::size_t ngens, IntMatrix const& rels, bool allow_free = true);

    FinAbGroup const& group() const { return group_; }
    /// Coordinates of x (a vector in generator coordinates) in the cyclic
    /// components: torsion coordinates reduced into [0, d_i), then free ones.
    std::vector<Integer> coordinates(std::vector<Integer> const& x) const;
    /// Generator coordinates of the element with the given component coordinates.
    std::vector<Integer> element(std::vector<Integer> const& coords) const;
    bool is_zero(std::vector<Integer> const& x) const;

private:
    FinAbGroup group_;
    IntMatrix V_, Vinv_;
    std::vector<Integer> diag_;  // SNF diagonal padded with zeros to ngens
    std::size_t first_;  // first component with diagonal entry != 1
};

AbGroupPresentation group_from_relations(std::size_t ngens, IntMatrix const& rels, bool allow_free = true);

/// DomainError for infinite groups or composite p.
FinAbGroup sylow_subgroup(FinAbGroup const& G, Integer const& p);

/// |Aut(G)| for a finite abelian p-group; DomainError otherwise.
Integer aut_order_abelian_p_group(FinAbGroup const& G);

struct RationalInterval {
    Rational lo, hi;
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(Rational const& x) const { return lo <= x && x <= hi; }
};

/// Enclosure of w_p = prod_{k >= 2} (1 - p^-k) from the product up to k = terms.
RationalInterval cohen_lenstra_wp(Integer const& p, unsigned terms);
/// Enclosure of w_p / (|A| |Aut A|) for a finite abelian p-group A.
RationalInterval cohen_lenstra_mass(FinAbGroup const& A, Integer const& p, unsigned terms);

}  // namespace nfkit
