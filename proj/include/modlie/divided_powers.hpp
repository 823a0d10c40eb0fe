#pragma once

#include "modlie/algebra.hpp"

#include <span>
#include <string>
#include <vector>

namespace modlie {

/// binom(n, k) mod p by Lucas' theorem: the product of digit-wise binomial
/// coefficients base p, each computed from a small Pascal table.
Scalar binom_mod_p(const PrimeField& field, unsigned long long n, unsigned long long k);

/// Shape of a divided powers algebra O_n(m_1, ..., m_n) over GF(p): basis
/// monomials x_1^(i_1)...x_n^(i_n) with 0 <= i_k < p^(m_k).  The flat index
/// follows the tensor ordering with the last variable fastest, so
/// O_2(2,1) basis labels enumerate x^(i)y^(j) lexicographically on (i, j).
struct DividedPowersShape {
    unsigned p;
    std::vector<unsigned> heights; // m_1, ..., m_n

    std::size_t var_count() const noexcept { return heights.size(); }
    std::size_t var_range(std::size_t var) const; // p^(m_var)
    std::size_t dim() const;

    std::size_t flat_index(std::span<const unsigned> exps) const;
    std::vector<unsigned> exponents(std::size_t flat) const;

    /// "1" for the unit, otherwise concatenated "x^(i)" factors for the
    /// nonzero exponents; variables are named x, y, z, then x4, x5, ...
    std::string monomial_label(std::span<const unsigned> exps) const;
    std::string variable_name(std::size_t var) const;
};

/// O_1(m) over GF(p): dim p^m, x^(i) x^(j) = binom(i+j, i) x^(i+j), zero when
/// i+j falls outside the basis range; x^(0) is the unit.
AlgebraStructure divided_powers_algebra(const PrimeField& field, unsigned m);

/// O_n(m_1, ..., m_n) as the iterated tensor product of the O_1(m_k).
AlgebraStructure divided_powers_multi(const PrimeField& field, std::span<const unsigned> heights);

/// Linear self-map of an algebra's underlying space, acting on column
/// coordinate vectors.  The name is cosmetic and carries no semantics.
struct LinearOperator {
    Matrix matrix;
    std::string name;

    std::size_t dim() const noexcept { return matrix.rows(); }
    Vec apply(const Vec& v) const { return matrix.apply(v); }
    Vec column(std::size_t j) const;
    std::string dump(std::string_view tag = "OP") const {
        return matrix.dump(std::string(tag), name);
    }
};

LinearOperator identity_operator(const PrimeField& field, std::size_t dim);

/// d/dx_var on the given shape: lowers the chosen exponent by one,
/// annihilating monomials with exponent zero.  Throws on a bad variable index.
LinearOperator partial_derivative(const DividedPowersShape& shape, std::size_t var);

/// Matrix of b -> a*b in the given algebra.
LinearOperator multiplication_operator(const AlgebraStructure& alg, const Vec& a,
                                       std::string name = "mult");

LinearOperator operator_power(const LinearOperator& op, unsigned k);
LinearOperator operator_combination(std::span<const LinearOperator* const> ops,
                                    std::span<const Scalar> coefficients);
/// op1 op2 - op2 op1.
LinearOperator commutator(const LinearOperator& op1, const LinearOperator& op2);
/// op1 after op2.
LinearOperator compose(const LinearOperator& op1, const LinearOperator& op2);

struct GenDerivationReport {
    bool ok = false;
    std::optional<PairWitness> witness;
};

/// Checks D(ab) = D(a)b + a D(b) - ab D(1) over all basis pairs of a unital
/// algebra.  Ordinary derivations (D(1) = 0) and multiplication operators
/// both satisfy it.
GenDerivationReport is_generalized_derivation(const AlgebraStructure& alg,
                                              const LinearOperator& op);

} // namespace modlie
