#include "modlie/algebra.hpp"
#include "modlie/divided_powers.hpp"
#include "modlie/poisson.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace modlie;

namespace {

// [e1,e2] = e3, everything else zero (Heisenberg-like)
AlgebraStructure heisenberg3() {
    AlgebraStructure alg(PrimeField(5), 3, true, "heis");
    Vec v{0, 0, 1};
    alg.set_product(0, 1, v);
    return alg;
}

AlgebraStructure abelian(std::size_t n) {
    return AlgebraStructure(PrimeField(5), n, true, "abelian" + std::to_string(n));
}

Vec basis_vec(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

} // namespace

TEST_CASE("multiply is the bilinear extension of the table") {
    const AlgebraStructure o2 = divided_powers_algebra(PrimeField(5), 2);

    SUBCASE("zero argument gives zero") {
        const Vec zero(o2.dim(), 0);
        CHECK(is_zero(o2.multiply(zero, basis_vec(o2.dim(), 3))));
    }

    SUBCASE("x^(1) x^(1) = 2 x^(2) in O(2)") {
        const Vec r = o2.multiply(basis_vec(25, 1), basis_vec(25, 1));
        Vec expected(25, 0);
        expected[2] = 2;
        CHECK(r == expected);
    }

    SUBCASE("bilinearity on a combination") {
        // (2 e1 + e3) * e2 = 2 (e1 e2) + (e3 e2)
        Vec u(25, 0);
        u[1] = 2;
        u[3] = 1;
        Vec lhs = o2.multiply(u, basis_vec(25, 2));
        Vec rhs = o2.product(1, 2);
        for (auto& x : rhs)
            x = o2.field().mul(x, 2);
        axpy(o2.field(), rhs, 1, o2.product(3, 2));
        CHECK(lhs == rhs);
    }

    SUBCASE("dimension mismatch throws") {
        CHECK_THROWS_AS(o2.multiply(Vec(3, 0), Vec(25, 0)), std::invalid_argument);
    }
}

TEST_CASE("commutativity and associativity checks") {
    SUBCASE("O(1,1) passes both") {
        const unsigned hs[2] = {1, 1};
        const AlgebraStructure o = divided_powers_multi(PrimeField(5), hs);
        const CommAssocReport rep = o.check_commutative_associative();
        CHECK(rep.commutative);
        CHECK(rep.associative);
    }

    SUBCASE("a bracket algebra fails commutativity") {
        const AlgebraStructure h = heisenberg3();
        const CommAssocReport rep = h.check_commutative_associative();
        CHECK_FALSE(rep.commutative);
        REQUIRE(rep.commutativity_witness);
        CHECK(rep.commutativity_witness->i == 0);
        CHECK(rep.commutativity_witness->j == 1);
    }

    SUBCASE("idempotent one-dimensional algebra passes") {
        AlgebraStructure alg(PrimeField(5), 1, false, "k");
        alg.set_product(0, 0, Vec{1});
        const CommAssocReport rep = alg.check_commutative_associative();
        CHECK(rep.commutative);
        CHECK(rep.associative);
    }
}

TEST_CASE("anticommutativity check") {
    CHECK(heisenberg3().check_anticommutative().ok);
    CHECK(abelian(4).check_anticommutative().ok);

    const AlgebraStructure o2 = divided_powers_algebra(PrimeField(5), 1);
    const AnticommReport rep = o2.check_anticommutative();
    CHECK_FALSE(rep.ok); // 1*1 = 1 != 0
    REQUIRE(rep.witness);
    CHECK(rep.witness->i == 0);
    CHECK(rep.witness->j == 0);

    // loaded full-storage structures exercise the same accessor path
    const AlgebraStructure reloaded = AlgebraStructure::parse_dump(heisenberg3().dump());
    CHECK_FALSE(reloaded.skew_storage());
    CHECK(reloaded.check_anticommutative().ok);
}

TEST_CASE("jacobi check") {
    SUBCASE("cross algebra passes") {
        const JacobiReport rep = oracles::cross_algebra().check_jacobi();
        CHECK(rep.ok);
        CHECK(rep.triples_checked == 1);
    }

    SUBCASE("heisenberg passes") { CHECK(heisenberg3().check_jacobi().ok); }

    SUBCASE("non-anticommutative input is a precondition violation") {
        const AlgebraStructure o = divided_powers_algebra(PrimeField(5), 1);
        CHECK_THROWS_AS(o.check_jacobi(), std::invalid_argument);
    }

    SUBCASE("a broken bracket is caught with a witness") {
        AlgebraStructure bad = oracles::cross_algebra();
        bad.set_product(0, 1, Vec{1, 0, 1}); // [e1,e2] = e1 + e3 breaks Jacobi
        const JacobiReport rep = bad.check_jacobi();
        CHECK_FALSE(rep.ok);
        REQUIRE(rep.witness);
        CHECK(rep.witness->i == 0);
    }
}

TEST_CASE("jacobi engine agrees with the naive pointwise oracle on O(1,1)") {
    const unsigned hs[2] = {1, 1};
    const AlgebraStructure a = divided_powers_multi(PrimeField(5), hs);
    DividedPowersShape shape{5, {1, 1}};
    const LinearOperator dx = partial_derivative(shape, 0);
    const LinearOperator dy = partial_derivative(shape, 1);
    const AlgebraStructure p25 = poisson_bracket(a, dx, dy, "P25");

    const oracles::NaivePoisson25 oracle;
    CHECK(p25.check_jacobi().ok == oracle.jacobi_holds());
    CHECK(p25.check_jacobi().ok);

    // both engines must also agree on the bracket values themselves
    for (std::size_t i = 0; i < 25; ++i)
        for (std::size_t j = 0; j < 25; ++j) {
            const auto ref = oracle.bracket_monomials(unsigned(i / 5), unsigned(i % 5),
                                                      unsigned(j / 5), unsigned(j % 5));
            const Vec got = p25.product(i, j);
            for (std::size_t k = 0; k < 25; ++k)
                CHECK(got[k] == ref[k]);
        }
}

TEST_CASE("sum_of_structures") {
    const AlgebraStructure h = heisenberg3();

    SUBCASE("identity coefficients reproduce the input") {
        const AlgebraStructure* parts[1] = {&h};
        const Scalar coeffs[1] = {1};
        CHECK(AlgebraStructure::sum_of_structures(parts, coeffs).same_structure(h));
    }

    SUBCASE("1 + 4 cancels over GF(5)") {
        const AlgebraStructure* parts[2] = {&h, &h};
        const Scalar coeffs[2] = {1, 4};
        const AlgebraStructure zero = AlgebraStructure::sum_of_structures(parts, coeffs);
        CHECK(zero.same_structure(abelian(3)));
    }

    SUBCASE("scalar linearity") {
        const AlgebraStructure* parts[2] = {&h, &h};
        const Scalar coeffs[2] = {3, 0};
        const AlgebraStructure tripled = AlgebraStructure::sum_of_structures(parts, coeffs);
        Vec expected{0, 0, 3};
        CHECK(tripled.product(0, 1) == expected);
    }

    SUBCASE("dimension mismatch throws") {
        const AlgebraStructure a4 = abelian(4);
        const AlgebraStructure* parts[2] = {&h, &a4};
        const Scalar coeffs[2] = {1, 1};
        CHECK_THROWS_AS(AlgebraStructure::sum_of_structures(parts, coeffs),
                        std::invalid_argument);
    }
}

TEST_CASE("tensor_product") {
    const PrimeField f(5);
    const AlgebraStructure o2 = divided_powers_algebra(f, 2);
    const AlgebraStructure o1 = divided_powers_algebra(f, 1);

    SUBCASE("dimension multiplicativity") {
        const AlgebraStructure t = AlgebraStructure::tensor_product(o2, o1);
        CHECK(t.dim() == 125);
        CHECK(t.dim() == o2.dim() * o1.dim());
    }

    SUBCASE("x^(4) x^(2) = 0 in the first factor since binom(6,2) = 0 mod 5") {
        const AlgebraStructure t = AlgebraStructure::tensor_product(o2, o1);
        // indices: (4,0) -> 4*5+0 = 20, (2,0) -> 10
        CHECK(is_zero(t.product(20, 10)));
    }

    SUBCASE("tensor with a unital line is the identity") {
        AlgebraStructure line(f, 1, false, "K", {"1"});
        line.set_product(0, 0, Vec{1});
        const AlgebraStructure t = AlgebraStructure::tensor_product(o2, line);
        CHECK(t.same_structure(o2));
        CHECK(t.labels() == o2.labels());
    }

    SUBCASE("commutativity and associativity survive the product") {
        const AlgebraStructure t = AlgebraStructure::tensor_product(o1, o1);
        const CommAssocReport rep = t.check_commutative_associative();
        CHECK(rep.commutative);
        CHECK(rep.associative);
    }
}

TEST_CASE("derived subalgebra, center, quotient on small fixtures") {
    const AlgebraStructure h = heisenberg3();

    SUBCASE("derived of heisenberg is the line through e3") {
        const Subspace d = h.derived_subalgebra();
        CHECK(d.dim() == 1);
        CHECK(d.contains(basis_vec(3, 2)));
    }

    SUBCASE("derived of an abelian algebra is zero") {
        CHECK(abelian(4).derived_subalgebra().dim() == 0);
    }

    SUBCASE("center of heisenberg is the line through e3") {
        const Subspace c = h.center();
        CHECK(c.dim() == 1);
        CHECK(c.contains(basis_vec(3, 2)));
    }

    SUBCASE("center of an abelian algebra is everything") {
        CHECK(abelian(4).center().dim() == 4);
    }

    SUBCASE("center of the cross algebra is zero") {
        CHECK(oracles::cross_algebra().center().dim() == 0);
    }

    SUBCASE("quotient by the zero subspace is the algebra itself") {
        const Subspace zero(PrimeField(5), 3);
        CHECK(h.quotient(zero).same_structure(h));
    }

    SUBCASE("heisenberg mod center is 2-dimensional abelian") {
        const AlgebraStructure q = h.quotient(h.center());
        CHECK(q.dim() == 2);
        CHECK(q.same_structure(abelian(2)));
    }

    SUBCASE("a non-ideal is rejected") {
        const Subspace line = Subspace::from_vectors(PrimeField(5), 3,
                                                     std::vector<Vec>{basis_vec(3, 0)});
        CHECK_THROWS_AS(oracles::cross_algebra().quotient(line), std::invalid_argument);
    }

    SUBCASE("center is an ideal and the quotient stays anticommutative") {
        for (const AlgebraStructure& alg : {heisenberg3(), oracles::cross_algebra()}) {
            const AlgebraStructure q = alg.quotient(alg.center());
            CHECK(q.check_anticommutative().ok);
        }
    }
}

TEST_CASE("find_unit") {
    const AlgebraStructure o2 = divided_powers_algebra(PrimeField(5), 1);
    const auto unit = o2.find_unit();
    REQUIRE(unit);
    CHECK(*unit == basis_vec(5, 0));
    CHECK_FALSE(heisenberg3().find_unit());
}

TEST_CASE("dump format and parsing") {
    const AlgebraStructure h = heisenberg3();

    SUBCASE("format is exact") {
        CHECK(h.dump() == "SC p=5 dim=3 name=heis\n0 1 2 1\n1 0 2 4\n");
        CHECK(h.dump("COCHAIN") == "COCHAIN p=5 dim=3 name=heis\n0 1 2 1\n1 0 2 4\n");
    }

    SUBCASE("round trip preserves the structure") {
        const AlgebraStructure back = AlgebraStructure::parse_dump(h.dump());
        CHECK(back.same_structure(h));
        CHECK(back.name() == "heis");
        CHECK(back.dump() == h.dump());
    }

    SUBCASE("malformed input is rejected") {
        CHECK_THROWS(AlgebraStructure::parse_dump(""));
        CHECK_THROWS(AlgebraStructure::parse_dump("XX p=5 dim=3 name=h\n"));
        CHECK_THROWS(AlgebraStructure::parse_dump("SC p=5 dim=3 name=h\n0 1 5 1\n"));
        CHECK_THROWS(AlgebraStructure::parse_dump("SC p=5 dim=3 name=h\n0 1 2 0\n"));
        CHECK_THROWS(AlgebraStructure::parse_dump("SC p=5 dim=3 name=h\n0 1 2 1\n0 1 2 3\n"));
    }
}

TEST_CASE("skew storage rejects bad writes") {
    AlgebraStructure alg(PrimeField(5), 3, true, "skew");
    CHECK_THROWS_AS(alg.set_product(1, 1, Vec(3, 0)), std::invalid_argument);
    CHECK_THROWS_AS(alg.set_product(2, 1, Vec(3, 0)), std::invalid_argument);
}
