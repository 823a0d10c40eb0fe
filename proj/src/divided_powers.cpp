#include "modlie/divided_powers.hpp"

#include <algorithm>

namespace modlie {

Scalar binom_mod_p(const PrimeField& field, unsigned long long n, unsigned long long k) {
    if (k > n)
        return 0;
    const unsigned p = field.p();
    // small Pascal table for one digit's worth of binomials
    static thread_local std::vector<std::vector<unsigned>> pascal;
    static thread_local unsigned pascal_p = 0;
    if (pascal_p != p) {
        pascal.assign(p, std::vector<unsigned>(p, 0));
        for (unsigned i = 0; i < p; ++i) {
            pascal[i][0] = 1;
            for (unsigned j = 1; j <= i; ++j)
                pascal[i][j] = (pascal[i - 1][j - 1] + (j <= i - 1 ? pascal[i - 1][j] : 0)) % p;
        }
        pascal_p = p;
    }
    unsigned result = 1;
    while (n > 0 || k > 0) {
        const unsigned nd = static_cast<unsigned>(n % p);
        const unsigned kd = static_cast<unsigned>(k % p);
        if (kd > nd)
            return 0;
        result = (result * pascal[nd][kd]) % p;
        if (result == 0)
            return 0;
        n /= p;
        k /= p;
    }
    return static_cast<Scalar>(result);
}

std::size_t DividedPowersShape::var_range(std::size_t var) const {
    if (var >= heights.size())
        throw std::out_of_range("DividedPowersShape: variable index out of range");
    std::size_t r = 1;
    for (unsigned e = 0; e < heights[var]; ++e)
        r *= p;
    return r;
}

std::size_t DividedPowersShape::dim() const {
    std::size_t d = 1;
    for (std::size_t v = 0; v < heights.size(); ++v)
        d *= var_range(v);
    return d;
}

std::size_t DividedPowersShape::flat_index(std::span<const unsigned> exps) const {
    if (exps.size() != heights.size())
        throw std::invalid_argument("flat_index: exponent tuple has wrong arity");
    std::size_t idx = 0;
    for (std::size_t v = 0; v < heights.size(); ++v) {
        const std::size_t range = var_range(v);
        if (exps[v] >= range)
            throw std::out_of_range("flat_index: exponent out of range");
        idx = idx * range + exps[v];
    }
    return idx;
}

std::vector<unsigned> DividedPowersShape::exponents(std::size_t flat) const {
    std::vector<unsigned> exps(heights.size(), 0);
    for (std::size_t v = heights.size(); v-- > 0;) {
        const std::size_t range = var_range(v);
        exps[v] = static_cast<unsigned>(flat % range);
        flat /= range;
    }
    if (flat != 0)
        throw std::out_of_range("exponents: flat index out of range");
    return exps;
}

std::string DividedPowersShape::variable_name(std::size_t var) const {
    static const char* short_names[] = {"x", "y", "z"};
    if (heights.size() <= 3)
        return short_names[var];
    return "x" + std::to_string(var + 1);
}

std::string DividedPowersShape::monomial_label(std::span<const unsigned> exps) const {
    std::string label;
    for (std::size_t v = 0; v < exps.size(); ++v)
        if (exps[v] != 0)
            label += variable_name(v) + "^(" + std::to_string(exps[v]) + ")";
    return label.empty() ? "1" : label;
}

AlgebraStructure divided_powers_algebra(const PrimeField& field, unsigned m) {
    if (m == 0)
        throw std::invalid_argument("divided_powers_algebra: height must be positive");
    DividedPowersShape shape{field.p(), {m}};
    const std::size_t n = shape.dim();
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned e[1] = {static_cast<unsigned>(i)};
        labels[i] = shape.monomial_label(e);
    }
    AlgebraStructure out(field, n, false, "O(" + std::to_string(m) + ")", std::move(labels));
    Vec value(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i + j >= n)
                continue; // x^(i+j) falls outside the allowed range
            const Scalar c = binom_mod_p(field, i + j, i);
            if (c == 0)
                continue;
            std::fill(value.begin(), value.end(), Scalar{0});
            value[i + j] = c;
            out.set_product(i, j, value);
        }
    return out;
}

AlgebraStructure divided_powers_multi(const PrimeField& field, std::span<const unsigned> heights) {
    if (heights.empty())
        throw std::invalid_argument("divided_powers_multi: at least one height required");
    AlgebraStructure out = divided_powers_algebra(field, heights[0]);
    for (std::size_t v = 1; v < heights.size(); ++v)
        out = AlgebraStructure::tensor_product(out, divided_powers_algebra(field, heights[v]));
    // relabel with the multivariate names (x, y, z, ...)
    DividedPowersShape shape{field.p(), std::vector<unsigned>(heights.begin(), heights.end())};
    std::vector<std::string> labels(shape.dim());
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = shape.monomial_label(shape.exponents(i));
    std::string name = "O(";
    for (std::size_t v = 0; v < heights.size(); ++v)
        name += (v ? "," : "") + std::to_string(heights[v]);
    name += ")";
    AlgebraStructure relabeled(field, shape.dim(), false, name, std::move(labels));
    out.each_entry([&](std::size_t i, std::size_t j, const Vec& value) {
        relabeled.set_product(i, j, value);
    });
    return relabeled;
}

Vec LinearOperator::column(std::size_t j) const {
    Vec col(matrix.rows(), 0);
    for (std::size_t r = 0; r < matrix.rows(); ++r)
        col[r] = matrix(r, j);
    return col;
}

LinearOperator identity_operator(const PrimeField& field, std::size_t dim) {
    return LinearOperator{Matrix::identity(field, dim), "id"};
}

LinearOperator partial_derivative(const DividedPowersShape& shape, std::size_t var) {
    if (var >= shape.var_count())
        throw std::out_of_range("partial_derivative: variable index out of range");
    const std::size_t n = shape.dim();
    Matrix m(PrimeField(shape.p), n, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<unsigned> exps = shape.exponents(col);
        if (exps[var] == 0)
            continue;
        exps[var] -= 1;
        m(shape.flat_index(exps), col) = 1;
    }
    return LinearOperator{std::move(m), "d/d" + shape.variable_name(var)};
}

LinearOperator multiplication_operator(const AlgebraStructure& alg, const Vec& a,
                                       std::string name) {
    if (a.size() != alg.dim())
        throw std::invalid_argument("multiplication_operator: dimension mismatch");
    const std::size_t n = alg.dim();
    Matrix m(alg.field(), n, n);
    Vec col(n);
    Vec ej(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(ej.begin(), ej.end(), Scalar{0});
        ej[j] = 1;
        col = alg.multiply(a, ej);
        for (std::size_t r = 0; r < n; ++r)
            m(r, j) = col[r];
    }
    return LinearOperator{std::move(m), std::move(name)};
}

LinearOperator operator_power(const LinearOperator& op, unsigned k) {
    std::string name = k == 0 ? "id" : op.name + "^" + std::to_string(k);
    return LinearOperator{op.matrix.pow(k), std::move(name)};
}

LinearOperator operator_combination(std::span<const LinearOperator* const> ops,
                                    std::span<const Scalar> coefficients) {
    if (ops.empty() || ops.size() != coefficients.size())
        throw std::invalid_argument("operator_combination: operand/coefficient mismatch");
    Matrix sum(ops.front()->matrix.field(), ops.front()->dim(), ops.front()->dim());
    std::string name;
    for (std::size_t s = 0; s < ops.size(); ++s) {
        sum.add_scaled(ops[s]->matrix, coefficients[s]);
        name += (s ? " + " : "") + std::to_string(unsigned(coefficients[s])) + "*" + ops[s]->name;
    }
    return LinearOperator{std::move(sum), std::move(name)};
}

LinearOperator commutator(const LinearOperator& op1, const LinearOperator& op2) {
    return LinearOperator{op1.matrix * op2.matrix - op2.matrix * op1.matrix,
                          "[" + op1.name + "," + op2.name + "]"};
}

LinearOperator compose(const LinearOperator& op1, const LinearOperator& op2) {
    return LinearOperator{op1.matrix * op2.matrix, op1.name + "o" + op2.name};
}

GenDerivationReport is_generalized_derivation(const AlgebraStructure& alg,
                                              const LinearOperator& op) {
    if (op.dim() != alg.dim())
        throw std::invalid_argument("is_generalized_derivation: dimension mismatch");
    const std::optional<Vec> unit = alg.find_unit();
    if (!unit)
        throw std::invalid_argument("is_generalized_derivation: algebra has no unit");
    const std::size_t n = alg.dim();
    const Vec d1 = op.apply(*unit);

    // precompute the operator columns D(e_i)
    std::vector<Vec> dcol(n);
    for (std::size_t i = 0; i < n; ++i)
        dcol[i] = op.column(i);

    GenDerivationReport rep;
    rep.ok = true;
    Vec prod, lhs, rhs, ei(n), ej(n), t3arg;
    for (std::size_t i = 0; i < n && rep.ok; ++i) {
        std::fill(ei.begin(), ei.end(), Scalar{0});
        ei[i] = 1;
        for (std::size_t j = 0; j < n; ++j) {
            std::fill(ej.begin(), ej.end(), Scalar{0});
            ej[j] = 1;
            alg.product_into(i, j, prod);
            lhs = op.apply(prod);                    // D(e_i e_j)
            rhs = alg.multiply(dcol[i], ej);         // D(e_i) e_j
            axpy(alg.field(), rhs, 1, alg.multiply(ei, dcol[j])); // + e_i D(e_j)
            if (!is_zero(d1)) {
                const Vec t3 = alg.multiply(prod, d1); // (e_i e_j) D(1)
                axpy(alg.field(), rhs, alg.field().neg(1), t3);
            }
            if (lhs != rhs) {
                rep.ok = false;
                rep.witness = PairWitness{i, j};
                break;
            }
        }
    }
    return rep;
}

} // namespace modlie
