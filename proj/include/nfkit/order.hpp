#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "nfkit/matrix.hpp"
#include "nfkit/numfield.hpp"

namespace nfkit {

/// Field-independent data of an order: the Z-basis rows basis_num / den in
/// power-basis coordinates, in lower-triangular Hermite normal form.
struct OrderBasis {
    IntMatrix basis_num;
    Integer den = 1;
    Integer disc;
    Integer index;  // [O : Z[alpha]]
    /// table[i] has row j equal to the coordinates of w_i * w_j.
    std::vector<IntMatrix> table;
};

class Order {
public:
    Order() = default;
    /// The order spanned by rows/den; DomainError unless it is a full-rank
    /// ring containing 1.
    Order(Field K, IntMatrix const& rows, Integer const& den);
    Order(Field K, std::shared_ptr<const OrderBasis> data) : K_(std::move(K)), d_(std::move(data)) {}

    Field const& field() const { return K_; }
    int degree() const { return K_->degree(); }
    IntMatrix const& basis_num() const { return d_->basis_num; }
    Integer const& den() const { return d_->den; }
    Integer const& discriminant() const { return d_->disc; }
    Integer const& index() const { return d_->index; }
    std::shared_ptr<const OrderBasis> const& data() const { return d_; }

    FieldElem basis_element(std::size_t i) const;
    std::vector<FieldElem> basis() const;
    FieldElem element(std::vector<Integer> const& coords) const;
    /// Integer coordinates of a in this basis, or nothing when a is not in O.
    std::optional<std::vector<Integer>> coords(FieldElem const& a) const;
    /// Coordinates of x*y for x, y given in order coordinates.
    std::vector<Integer> multiply(std::vector<Integer> const& x, std::vector<Integer> const& y) const;
    /// Row i holds the coordinates of x * w_i.
    IntMatrix mult_matrix(std::vector<Integer> const& x) const;
    bool contains(Order const& o) const;

    bool operator==(Order const& o) const
    {
        return K_ == o.K_ && d_->den == o.d_->den && d_->basis_num == o.d_->basis_num;
    }

private:
    Field K_;
    std::shared_ptr<const OrderBasis> d_;
};

Order equation_order(Field const& K);

struct DedekindResult {
    bool p_maximal;
    Order enlarged;  // equals the input when p_maximal
};

/// Dedekind criterion at p for the equation order.
DedekindResult dedekind_test(Order const& equation, Integer const& p);

/// HNF basis, in O coordinates, of the radical of pO.
IntMatrix p_radical(Order const& O, Integer const& p);

/// Radical-idealizer iteration (Round 2) until the order is p-maximal.
Order p_maximal_order(Order O, Integer const& p);

/// Ring of integers, memoized per field. LimitError when disc(f) cannot
/// be factored.
Order maximal_order(Field const& K);

/// Integer coordinates of a in O, or nothing.
std::optional<std::vector<Integer>> coords_in_order(Order const& O, FieldElem const& a);

}  // namespace nfkit
