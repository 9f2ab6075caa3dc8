#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nfkit/numfield.hpp"

namespace nfkit {

/// Monic irreducible factors over K of a squarefree polynomial in K[x]
/// (Trager: factor the norm of g(x - s a) over Q, shifts s = 0, 1, -1, 2, ...).
std::vector<FieldPoly> factor_over_field(FieldPoly const& g);

/// All roots of g in K, without repetition.
std::vector<FieldElem> roots_in_field(RatPoly const& g, Field const& K);

struct GroupId {
    std::size_t order = 1;
    /// C1, C2, C3, C4, C2xC2, C5, C6, S3, C7, C8, C4xC2, C2xC2xC2, D4, Q8 or "other".
    std::string tag = "C1";
    std::string to_string() const { return tag == "other" ? "other(" + std::to_string(order) + ")" : tag; }
};

/// table[i][j] is the index of the product of elements i and j.
using GroupTable = std::vector<std::vector<std::size_t>>;

/// Names groups of order <= 8 by order statistics; DomainError unless the
/// table is a group.
GroupId identify_group(GroupTable const& table);

struct AutGroup {
    Field field;
    std::vector<FieldHom> elements;  // identity first
    GroupTable table;  // table[i][j] = elements[i] o elements[j]
    GroupId id;

    std::size_t order() const { return elements.size(); }
    bool is_normal() const { return elements.size() == static_cast<std::size_t>(field->degree()); }
};

AutGroup automorphism_group(Field const& K);

/// Splitting field of an irreducible f by adjoining roots of nonlinear
/// factors; LimitError when the degree would exceed the cap.
Field splitting_field(RatPoly const& f, int degree_cap = 24);

/// DomainError for non-normal fields.
bool normal_basis_check(FieldElem const& beta);
bool normal_basis_check(AutGroup const& G, FieldElem const& beta);
/// LimitError when `budget` samples find nothing.
FieldElem random_normal_basis_generator(Field const& K, std::uint64_t seed, long coeff_bound = 3,
                                        std::uint64_t budget = 1000);
/// True iff the conjugates of beta form a Z-basis of O_K; DomainError for
/// non-normal fields or non-integral beta.
bool integral_normal_basis_check(FieldElem const& beta);
bool integral_normal_basis_check(AutGroup const& G, FieldElem const& beta);

struct TameResult {
    bool tame = true;
    std::vector<std::pair<Integer, unsigned>> witnesses;  // (p, e) with p | e
};

TameResult is_tamely_ramified(Field const& K);

}  // namespace nfkit
