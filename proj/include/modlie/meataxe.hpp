#pragma once

#include "modlie/algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modlie {

/// splitmix64 stream; the one pseudo-random source in the project, fixed
/// bit-exactly so verdicts reproduce across machines (see README).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, n) via modulo; the bias is irrelevant here.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

/// Matrix representation: a module given by the acting matrices of a spanning
/// set (for the adjoint module, ad(e_i)).
struct MatrixRep {
    PrimeField field;
    std::size_t dim = 0;
    std::vector<Matrix> generators;
};

MatrixRep adjoint_rep(const AlgebraStructure& lie);

/// Generators transposed (the module on the dual space used by Norton's
/// criterion).
MatrixRep transposed_rep(const MatrixRep& rep);

/// The dual module: z acts by -z^T.
MatrixRep dual_rep(const MatrixRep& rep);

/// Smallest subspace containing the seeds and invariant under every
/// generator, computed by closure iteration; canonical rref basis.
Subspace spin(const MatrixRep& rep, std::span<const Vec> seeds);

struct MeataxeOptions {
    unsigned max_random_elements = 200; // iteration cap before "inconclusive"
    unsigned words_per_element = 16;    // words summed into one random element
    unsigned max_word_length = 3;
    unsigned generator_pool = 10;       // generators drawn per element
    unsigned max_kernel_rays = 3;       // enumerate kernels of nullity <= this
    // oversized kernels prove reducibility when one of their vectors spins
    // proper; probing starts only after small-nullity elements have failed to
    // appear, since each probe costs a full spin on irreducible modules
    unsigned oversized_probe_delay = 120;
    unsigned max_oversized_probes = 10;
    std::size_t dense_unknown_limit = 4096; // dense solver cutoff (unknown count)
};

struct IrreducibilityReport {
    enum class Verdict { Irreducible, Reducible, Inconclusive } verdict =
        Verdict::Inconclusive;
    std::optional<Subspace> witness; // proper invariant subspace when reducible
    unsigned elements_tried = 0;
    std::uint64_t seed = 0;
};

/// Norton-criterion irreducibility test on random envelope elements.
///
/// Draws elements theta as GF(p)-combinations of short words in a pool of
/// generators until one is singular with small nullity; spins every
/// one-dimensional subspace of ker(theta) (a superset of the kernel basis,
/// which keeps the criterion conclusive for nullity > 1), then one kernel
/// vector of theta^T under the transposed generators.  All spins full means
/// irreducible; a proper spin yields a witness, on the dual side transferred
/// back through the annihilator.  Deterministic given the seed.
IrreducibilityReport is_irreducible(const MatrixRep& rep, std::uint64_t seed,
                                    const MeataxeOptions& opts = {});

struct DimensionReport {
    std::optional<std::size_t> dimension; // nullopt = inconclusive
    std::string note;
    std::uint64_t seed = 0;
};

/// dim { M : M g = g M for all generators g }.  Solved densely when the
/// unknown count permits; otherwise through the irreducible-module
/// endomorphism computation (standard basis transport), which requires the
/// representation to be irreducible and reports "inconclusive" when it is
/// not.
DimensionReport centralizer_dimension(const MatrixRep& rep, std::uint64_t seed = 1,
                                      const MeataxeOptions& opts = {});

struct SimplicityReport {
    enum class Verdict { Simple, NotSimple, Inconclusive } verdict = Verdict::Inconclusive;
    bool derived_full = false;
    std::optional<Subspace> ideal_witness;
    std::uint64_t seed = 0;
};

/// Simple iff the derived subalgebra is everything and the adjoint module is
/// irreducible.  Requires dim >= 2.
SimplicityReport is_simple(const AlgebraStructure& lie, std::uint64_t seed,
                           const MeataxeOptions& opts = {});

struct FormSpace {
    std::vector<Matrix> basis;      // symmetric matrices G with ad^T G + G ad = 0
    std::vector<std::size_t> ranks; // rank of each basis form
    std::size_t dim() const noexcept { return basis.size(); }
};

struct FormSpaceReport {
    std::optional<FormSpace> forms; // nullopt = inconclusive
    std::string note;
    std::uint64_t seed = 0;
};

/// Solution space of ad(e_k)^T G + G ad(e_k) = 0 over symmetric G, i.e. the
/// symmetric invariant bilinear forms of the algebra.  Dense solve over the
/// n(n+1)/2 upper-triangle unknowns when feasible, otherwise via the module
/// homomorphisms L -> L* of an irreducible adjoint module.
FormSpaceReport invariant_symmetric_forms(const AlgebraStructure& lie, std::uint64_t seed = 1,
                                          const MeataxeOptions& opts = {});

} // namespace modlie
