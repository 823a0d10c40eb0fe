#include "modlie/divided_powers.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace modlie;

namespace {

Vec basis_vec(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

} // namespace

TEST_CASE("Lucas binomials agree with the Pascal-table oracle for all 0 <= j <= i < 125") {
    const PrimeField f(5);
    const auto pascal = oracles::pascal_table_mod_p(5, 125);
    for (unsigned i = 0; i < 125; ++i)
        for (unsigned j = 0; j <= i; ++j)
            CHECK(binom_mod_p(f, i, j) == pascal[i][j]);
    CHECK(binom_mod_p(f, 3, 7) == 0);
}

TEST_CASE("divided powers algebra O_1(m)") {
    const PrimeField f(5);
    const AlgebraStructure o1 = divided_powers_algebra(f, 1);
    const AlgebraStructure o2 = divided_powers_algebra(f, 2);

    SUBCASE("x^(2) x^(2) = x^(4) in O(1) since binom(4,2) = 6 = 1 mod 5") {
        Vec expected(5, 0);
        expected[4] = 1;
        CHECK(o1.product(2, 2) == expected);
    }

    SUBCASE("x^(4) x^(1) = 0 in O(1): index 5 is out of range") {
        CHECK(is_zero(o1.product(4, 1)));
    }

    SUBCASE("x^(2) x^(3) = 0 in O(2) although x^(5) exists: binom(5,2) = 10 = 0") {
        CHECK(is_zero(o2.product(2, 3)));
        // and the basis vector x^(5) is genuinely there
        CHECK(o2.labels()[5] == "x^(5)");
    }

    SUBCASE("x^(0) is a two-sided unit and the algebra is commutative associative") {
        const auto unit = o2.find_unit();
        REQUIRE(unit);
        CHECK(*unit == basis_vec(25, 0));
        const CommAssocReport rep = o2.check_commutative_associative();
        CHECK(rep.commutative);
        CHECK(rep.associative);
    }
}

TEST_CASE("divided powers multi") {
    const PrimeField f(5);

    SUBCASE("O(2,1) has dimension 125") {
        const unsigned hs[2] = {2, 1};
        CHECK(divided_powers_multi(f, hs).dim() == 125);
    }

    SUBCASE("a single height reduces to the one-variable algebra") {
        const unsigned hs[1] = {2};
        CHECK(divided_powers_multi(f, hs).same_structure(divided_powers_algebra(f, 2)));
    }

    SUBCASE("products match the direct multivariate binomial formula on random pairs") {
        const unsigned hs[2] = {2, 1};
        const AlgebraStructure a = divided_powers_multi(f, hs);
        const DividedPowersShape shape{5, {2, 1}};
        const auto pascal = oracles::pascal_table_mod_p(5, 50);
        std::uint64_t s = 42;
        for (int trial = 0; trial < 50; ++trial) {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            const std::size_t i = (s >> 33) % 125;
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            const std::size_t j = (s >> 33) % 125;
            const auto ei = shape.exponents(i);
            const auto ej = shape.exponents(j);
            // direct evaluation: binom(i1+j1, i1) binom(i2+j2, i2) x^(i+j)
            Vec expected(125, 0);
            if (ei[0] + ej[0] < 25 && ei[1] + ej[1] < 5) {
                const unsigned c = pascal[ei[0] + ej[0]][ei[0]] * pascal[ei[1] + ej[1]][ei[1]] % 5;
                if (c) {
                    const unsigned exps[2] = {ei[0] + ej[0], ei[1] + ej[1]};
                    expected[shape.flat_index(exps)] = static_cast<Scalar>(c);
                }
            }
            CHECK(a.product(i, j) == expected);
        }
    }

    SUBCASE("labels read lexicographically on (i, j)") {
        const unsigned hs[2] = {2, 1};
        const AlgebraStructure a = divided_powers_multi(f, hs);
        CHECK(a.labels()[0] == "1");
        CHECK(a.labels()[1] == "y^(1)");
        CHECK(a.labels()[5] == "x^(1)");
        CHECK(a.labels()[6] == "x^(1)y^(1)");
        CHECK(a.labels()[124] == "x^(24)y^(4)");
    }
}

TEST_CASE("O(2,1) is commutative associative with unit x^(0)") {
    const unsigned hs[2] = {2, 1};
    const AlgebraStructure a = divided_powers_multi(PrimeField(5), hs);
    const CommAssocReport rep = a.check_commutative_associative();
    CHECK(rep.commutative);
    CHECK(rep.associative);
    const auto unit = a.find_unit();
    REQUIRE(unit);
    CHECK(*unit == basis_vec(125, 0));
}

TEST_CASE("flat index / exponent tuple conversion is a bijection") {
    const DividedPowersShape shape{5, {2, 1}};
    REQUIRE(shape.dim() == 125);
    for (std::size_t flat = 0; flat < 125; ++flat) {
        const auto exps = shape.exponents(flat);
        CHECK(shape.flat_index(exps) == flat);
    }
    CHECK_THROWS_AS(shape.exponents(125), std::out_of_range);
    const unsigned bad[2] = {25, 0};
    CHECK_THROWS_AS(shape.flat_index(bad), std::out_of_range);
}

TEST_CASE("partial derivatives") {
    const DividedPowersShape shape1{5, {2}};
    const LinearOperator dx1 = partial_derivative(shape1, 0);

    SUBCASE("dx x^(3) = x^(2) in O(2)") {
        CHECK(dx1.apply(basis_vec(25, 3)) == basis_vec(25, 2));
    }

    SUBCASE("dx 1 = 0") { CHECK(is_zero(dx1.apply(basis_vec(25, 0)))); }

    SUBCASE("dx and dy commute on O(2,1)") {
        const DividedPowersShape shape{5, {2, 1}};
        const LinearOperator dx = partial_derivative(shape, 0);
        const LinearOperator dy = partial_derivative(shape, 1);
        CHECK(commutator(dx, dy).matrix.is_zero());
    }

    SUBCASE("bad variable index throws") {
        CHECK_THROWS_AS(partial_derivative(shape1, 1), std::out_of_range);
    }
}

TEST_CASE("multiplication operators") {
    const PrimeField f(5);
    const AlgebraStructure o1 = divided_powers_algebra(f, 1);

    SUBCASE("multiplication by 1 is the identity") {
        const LinearOperator m1 = multiplication_operator(o1, basis_vec(5, 0));
        CHECK(m1.matrix.is_identity());
    }

    SUBCASE("multiplication by x^(1) sends x^(i) to (i+1) x^(i+1)") {
        const LinearOperator mx = multiplication_operator(o1, basis_vec(5, 1));
        for (unsigned i = 0; i + 1 < 5; ++i) {
            Vec expected(5, 0);
            expected[i + 1] = static_cast<Scalar>(i + 1);
            CHECK(mx.apply(basis_vec(5, i)) == expected);
        }
        CHECK(is_zero(mx.apply(basis_vec(5, 4))));
    }

    SUBCASE("(id - x dx) annihilates x^(1)") {
        const DividedPowersShape shape{5, {1}};
        const LinearOperator dx = partial_derivative(shape, 0);
        const LinearOperator mx = multiplication_operator(o1, basis_vec(5, 1));
        const LinearOperator xdx = compose(mx, dx);
        CHECK(xdx.apply(basis_vec(5, 1)) == basis_vec(5, 1));
        const LinearOperator id = identity_operator(f, 5);
        const LinearOperator* ops[2] = {&id, &xdx};
        const Scalar coeffs[2] = {1, 4};
        const LinearOperator imx = operator_combination(ops, coeffs);
        CHECK(is_zero(imx.apply(basis_vec(5, 1))));
    }
}

TEST_CASE("operator powers and commutators on O(2,1)") {
    const DividedPowersShape shape{5, {2, 1}};
    const unsigned hs[2] = {2, 1};
    const AlgebraStructure a = divided_powers_multi(PrimeField(5), hs);
    const LinearOperator dx = partial_derivative(shape, 0);

    SUBCASE("dx^5 is nonzero (sends x^(5) to 1) but dx^25 vanishes") {
        const LinearOperator dx5 = operator_power(dx, 5);
        const unsigned e5[2] = {5, 0};
        CHECK(dx5.apply(basis_vec(125, shape.flat_index(e5))) == basis_vec(125, 0));
        CHECK(operator_power(dx, 25).matrix.is_zero());
    }

    SUBCASE("power zero is the identity") {
        CHECK(operator_power(dx, 0).matrix.is_identity());
    }

    SUBCASE("id - x dx commutes with dx^5") {
        const unsigned ex[2] = {1, 0};
        const LinearOperator mx = multiplication_operator(a, basis_vec(125, shape.flat_index(ex)));
        const LinearOperator xdx = compose(mx, dx);
        const LinearOperator id = identity_operator(PrimeField(5), 125);
        const LinearOperator* ops[2] = {&id, &xdx};
        const Scalar coeffs[2] = {1, 4};
        const LinearOperator imx = operator_combination(ops, coeffs);
        const LinearOperator dx5 = operator_power(dx, 5);
        CHECK(commutator(imx, dx5).matrix.is_zero());
    }
}

TEST_CASE("generalized derivations") {
    const DividedPowersShape shape{5, {2, 1}};
    const unsigned hs[2] = {2, 1};
    const AlgebraStructure a = divided_powers_multi(PrimeField(5), hs);
    const LinearOperator dx = partial_derivative(shape, 0);
    const LinearOperator dy = partial_derivative(shape, 1);

    SUBCASE("ordinary derivations qualify") {
        CHECK(is_generalized_derivation(a, dx).ok);
        CHECK(is_generalized_derivation(a, dy).ok);
    }

    SUBCASE("multiplication operators qualify") {
        Vec elem(125, 0);
        elem[0] = 2;
        const unsigned ex[2] = {1, 0};
        elem[shape.flat_index(ex)] = 3;
        CHECK(is_generalized_derivation(a, multiplication_operator(a, elem)).ok);
    }

    SUBCASE("dx^2 is not a generalized derivation") {
        const GenDerivationReport rep = is_generalized_derivation(a, operator_power(dx, 2));
        CHECK_FALSE(rep.ok);
        CHECK(rep.witness);
    }

    SUBCASE("the pipeline's operator set is commutator-closed") {
        const unsigned ex[2] = {1, 0};
        const LinearOperator mx = multiplication_operator(a, basis_vec(125, shape.flat_index(ex)));
        const LinearOperator xdx = compose(mx, dx);
        const LinearOperator id = identity_operator(PrimeField(5), 125);
        const LinearOperator* ops[2] = {&id, &xdx};
        const Scalar coeffs[2] = {1, 4};
        const LinearOperator imx = operator_combination(ops, coeffs);

        const LinearOperator* set[4] = {&dx, &dy, &imx, &mx};
        for (const LinearOperator* u : set)
            for (const LinearOperator* v : set) {
                CHECK(is_generalized_derivation(a, *u).ok);
                CHECK(is_generalized_derivation(a, commutator(*u, *v)).ok);
            }
    }
}

TEST_CASE("operator dump format") {
    const DividedPowersShape shape{5, {1}};
    const LinearOperator dx = partial_derivative(shape, 0);
    const std::string text = dx.dump();
    CHECK(text.rfind("OP p=5 dim=5 name=d/dx\n", 0) == 0);
    CHECK(text == "OP p=5 dim=5 name=d/dx\n"
                  "0 1 0 0 0\n"
                  "0 0 1 0 0\n"
                  "0 0 0 1 0\n"
                  "0 0 0 0 1\n"
                  "0 0 0 0 0\n");
}
