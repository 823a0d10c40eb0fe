#pragma once

#include "modlie/divided_powers.hpp"

namespace modlie {

/// An alternating bilinear map on an algebra's space, stored exactly like a
/// bracket (skew structure-constant table).  The 2-cochains phi and psi, and
/// every bracket produced by poisson_bracket, have this shape.
using Cochain2 = AlgebraStructure;

/// [u, v] = d(u) f(v) - f(u) d(v), extended bilinearly from the basis of a.
/// The result uses skew storage, so it is anticommutative by construction for
/// any operator pair; it is a Lie bracket when d and f are commuting
/// generalized derivations of a.
AlgebraStructure poisson_bracket(const AlgebraStructure& a, const LinearOperator& d,
                                 const LinearOperator& f, std::string name);

/// The Poisson Lie algebra P: the bracket (d/dx, d/dy) on O_2(2,1) over
/// GF(5).  125-dimensional, center spanned by 1, derived algebra of P/center
/// of dimension 123.
AlgebraStructure build_P();

/// phi(a,b) = dx^2(a) dx^3(b) - dx^3(a) dx^2(b) on O_2(2,1).
Cochain2 build_phi();

/// psi(a,b) = (id - x dx)(a) dx^5(b) - dx^5(a) (id - x dx)(b) on O_2(2,1).
Cochain2 build_psi();

/// The deformed algebra D = P + c_phi*phi + c_psi*psi; the Melikyan candidate
/// is the default (1, 2).
AlgebraStructure build_D(Scalar coeff_phi = 1, Scalar coeff_psi = 2);

/// W_1(3): basis x^(i) d/dx acting on O_1(3), bracket
/// [a d, b d] = (a d(b) - b d(a)) d.  125-dimensional simple control algebra.
AlgebraStructure build_W13();

struct CocycleReport {
    bool ok = false;
    std::optional<TripleWitness> witness;
    std::size_t triples_checked = 0;
};

/// Chevalley-Eilenberg 2-cocycle condition with adjoint coefficients:
///   [a, c(b,d)] - [b, c(a,d)] + [d, c(a,b)]
///     - c([a,b], d) + c([a,d], b) - c([b,d], a) = 0
/// checked over all unordered basis triples (sufficient for alternating c on
/// a Lie algebra).  The bracket of the algebra itself always passes: the
/// condition then restates the Jacobi identity.
CocycleReport cocycle_check(const AlgebraStructure& lie, const Cochain2& cochain);

/// Cyclic sum c(c(a,b),d) + c(c(b,d),a) + c(c(d,a),b) over all basis triples.
/// Zero for the deformation direction phi + 2*psi, which is why the one-step
/// deformed bracket satisfies Jacobi exactly.
JacobiReport jacobiator(const Cochain2& cochain);

} // namespace modlie
