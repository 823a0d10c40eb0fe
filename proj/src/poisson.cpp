#include "modlie/poisson.hpp"

#include "modlie/parallel.hpp"

#include <thread>

namespace modlie {

AlgebraStructure poisson_bracket(const AlgebraStructure& a, const LinearOperator& d,
                                 const LinearOperator& f, std::string name) {
    const std::size_t n = a.dim();
    if (d.dim() != n || f.dim() != n)
        throw std::invalid_argument("poisson_bracket: operator dimension mismatch");
    AlgebraStructure out(a.field(), n, true, std::move(name), a.labels());
    Vec value(n), t;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec di = d.column(i);
        const Vec fi = f.column(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            value = a.multiply(di, f.column(j));
            t = a.multiply(fi, d.column(j));
            axpy(a.field(), value, a.field().neg(1), t);
            if (!is_zero(value))
                out.set_product(i, j, value);
        }
    }
    return out;
}

namespace {

struct PipelineParts {
    AlgebraStructure a;  // O_2(2,1) over GF(5)
    LinearOperator dx, dy;
    DividedPowersShape shape;
};

PipelineParts make_parts() {
    const PrimeField f(5);
    const unsigned heights[2] = {2, 1};
    DividedPowersShape shape{5, {2, 1}};
    AlgebraStructure a = divided_powers_multi(f, heights);
    LinearOperator dx = partial_derivative(shape, 0);
    LinearOperator dy = partial_derivative(shape, 1);
    return PipelineParts{std::move(a), std::move(dx), std::move(dy), std::move(shape)};
}

} // namespace

AlgebraStructure build_P() {
    PipelineParts parts = make_parts();
    AlgebraStructure p = poisson_bracket(parts.a, parts.dx, parts.dy, "P");
    return p;
}

Cochain2 build_phi() {
    PipelineParts parts = make_parts();
    LinearOperator dx2 = operator_power(parts.dx, 2);
    LinearOperator dx3 = operator_power(parts.dx, 3);
    return poisson_bracket(parts.a, dx2, dx3, "phi");
}

Cochain2 build_psi() {
    PipelineParts parts = make_parts();
    // id - x dx, assembled from audited primitives
    Vec x1(parts.a.dim(), 0);
    const unsigned exps[2] = {1, 0};
    x1[parts.shape.flat_index(exps)] = 1;
    LinearOperator mult_x = multiplication_operator(parts.a, x1, "x.");
    LinearOperator xdx = compose(mult_x, parts.dx);
    LinearOperator id = identity_operator(parts.a.field(), parts.a.dim());
    const LinearOperator* ops[2] = {&id, &xdx};
    const Scalar coeffs[2] = {1, 4};
    LinearOperator id_minus_xdx = operator_combination(ops, coeffs);
    id_minus_xdx.name = "id-x.dx";
    LinearOperator dx5 = operator_power(parts.dx, 5);
    return poisson_bracket(parts.a, id_minus_xdx, dx5, "psi");
}

AlgebraStructure build_D(Scalar coeff_phi, Scalar coeff_psi) {
    AlgebraStructure p = build_P();
    Cochain2 phi = build_phi();
    Cochain2 psi = build_psi();
    const AlgebraStructure* parts[3] = {&p, &phi, &psi};
    const Scalar coeffs[3] = {1, coeff_phi, coeff_psi};
    AlgebraStructure d = AlgebraStructure::sum_of_structures(parts, coeffs);
    d.rename("D");
    return d;
}

AlgebraStructure build_W13() {
    const PrimeField f(5);
    const std::size_t n = 125; // x^(i) d/dx for 0 <= i < 5^3
    std::vector<std::string> labels(n);
    DividedPowersShape shape{5, {3}};
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned e[1] = {static_cast<unsigned>(i)};
        const std::string mon = shape.monomial_label(e);
        labels[i] = (mon == "1") ? "d" : mon + "d";
    }
    AlgebraStructure out(f, n, true, "W13", std::move(labels));
    Vec value(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            // [x^(i) d, x^(j) d] = (binom(i+j-1, i) - binom(i+j-1, j)) x^(i+j-1) d
            if (i + j == 0 || i + j - 1 >= n)
                continue;
            unsigned c = 0;
            if (j >= 1)
                c = binom_mod_p(f, i + j - 1, i);
            if (i >= 1)
                c = (c + 5u - binom_mod_p(f, i + j - 1, j)) % 5u;
            if (c == 0)
                continue;
            std::fill(value.begin(), value.end(), Scalar{0});
            value[i + j - 1] = static_cast<Scalar>(c);
            out.set_product(i, j, value);
        }
    return out;
}

JacobiReport jacobiator(const Cochain2& cochain) { return cochain.jacobiator(); }

CocycleReport cocycle_check(const AlgebraStructure& lie, const Cochain2& cochain) {
    const std::size_t n = lie.dim();
    if (cochain.dim() != n || cochain.field() != lie.field())
        throw std::invalid_argument("cocycle_check: cochain/algebra shape mismatch");
    if (!cochain.check_anticommutative().ok)
        throw std::invalid_argument("cocycle_check: cochain is not alternating");
    if (!lie.check_anticommutative().ok)
        throw std::invalid_argument("cocycle_check: bracket is not anticommutative");
    const unsigned p = lie.field().p();

    // one chunk per worker over the outer index, lexicographic first failure
    struct Slot {
        std::optional<TripleWitness> witness;
        std::size_t count = 0;
    };
    std::vector<Slot> slots(64);
    parallel_ranges(n, [&](std::size_t begin, std::size_t end, std::size_t slot) {
        std::vector<std::uint32_t> acc(n);
        std::size_t count = 0;
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Vec* cij = cochain.stored(i, j);
                const Vec* lij = lie.stored(i, j);
                for (std::size_t k = j + 1; k < n; ++k) {
                    std::fill(acc.begin(), acc.end(), 0u);
                    const unsigned neg = p - 1u;
                    // [e_i, c(e_j,e_k)]
                    if (const Vec* cjk = cochain.stored(j, k))
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*cjk)[l] != 0)
                                lie.add_scaled_product(acc.data(), i, l, (*cjk)[l]);
                    // - [e_j, c(e_i,e_k)]
                    if (const Vec* cik = cochain.stored(i, k))
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*cik)[l] != 0)
                                lie.add_scaled_product(acc.data(), j, l, neg * (*cik)[l] % p);
                    // + [e_k, c(e_i,e_j)]
                    if (cij)
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*cij)[l] != 0)
                                lie.add_scaled_product(acc.data(), k, l, (*cij)[l]);
                    // - c([e_i,e_j], e_k)
                    if (lij)
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*lij)[l] != 0)
                                cochain.add_scaled_product(acc.data(), l, k, neg * (*lij)[l] % p);
                    // + c([e_i,e_k], e_j)
                    if (const Vec* lik = lie.stored(i, k))
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*lik)[l] != 0)
                                cochain.add_scaled_product(acc.data(), l, j, (*lik)[l]);
                    // - c([e_j,e_k], e_i)
                    if (const Vec* ljk = lie.stored(j, k))
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*ljk)[l] != 0)
                                cochain.add_scaled_product(acc.data(), l, i, neg * (*ljk)[l] % p);
                    ++count;
                    for (std::size_t m = 0; m < n; ++m)
                        if (acc[m] % p != 0) {
                            slots[slot].witness = TripleWitness{i, j, k};
                            slots[slot].count = count;
                            return;
                        }
                }
            }
        }
        slots[slot].count = count;
    });

    CocycleReport rep;
    rep.ok = true;
    for (const Slot& s : slots) {
        rep.triples_checked += s.count;
        if (s.witness && (!rep.witness || std::tie(s.witness->i, s.witness->j, s.witness->k) <
                                              std::tie(rep.witness->i, rep.witness->j,
                                                       rep.witness->k))) {
            rep.witness = s.witness;
            rep.ok = false;
        }
    }
    return rep;
}

} // namespace modlie
