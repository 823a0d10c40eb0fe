#pragma once

#include "modlie/matrix.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modlie {

struct PairWitness {
    std::size_t i, j;
    bool operator==(const PairWitness&) const = default;
};

struct TripleWitness {
    std::size_t i, j, k;
    bool operator==(const TripleWitness&) const = default;
};

struct CommAssocReport {
    bool commutative = false;
    std::optional<PairWitness> commutativity_witness;
    bool associative = false;
    std::optional<TripleWitness> associativity_witness;
    bool ok() const noexcept { return commutative && associative; }
};

struct AnticommReport {
    bool ok = false;
    std::optional<PairWitness> witness;
};

struct JacobiReport {
    bool ok = false;
    std::optional<TripleWitness> witness;
    std::size_t triples_checked = 0;
};

/// Subspace of GF(p)^n held as a canonical rref basis, so two subspaces are
/// equal iff their bases compare equal row by row.
class Subspace {
public:
    Subspace(PrimeField field, std::size_t ambient);
    static Subspace from_vectors(PrimeField field, std::size_t ambient, std::span<const Vec> vectors);
    static Subspace from_rowspace(const RowSpace& rs);

    std::size_t dim() const noexcept { return basis_.size(); }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    const PrimeField& field() const noexcept { return field_; }
    const std::vector<Vec>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    bool contains(const Vec& v) const;
    /// Residue of v after reduction against the basis.
    Vec reduce(const Vec& v) const;

    bool operator==(const Subspace& o) const noexcept {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    PrimeField field_;
    std::size_t ambient_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

/// Finite-dimensional algebra over GF(p) given by structure constants.
///
/// The multiplication table is stored sparsely, keyed by basis pair (i, j)
/// with a dense coefficient vector for e_i * e_j.  Brackets built from skew
/// formulas use skew storage: only pairs i < j are kept, the diagonal is zero
/// and products with i > j are derived as the negation of (j, i) on the fly.
///
/// Instances are immutable once built (set_product is the construction
/// phase); the check_* results are cached write-once and all operations are
/// safe to call concurrently.
class AlgebraStructure {
public:
    AlgebraStructure(PrimeField field, std::size_t dim, bool skew_storage, std::string name,
                     std::vector<std::string> labels = {});

    AlgebraStructure(const AlgebraStructure& o);
    AlgebraStructure& operator=(const AlgebraStructure& o);
    AlgebraStructure(AlgebraStructure&&) noexcept = default;
    AlgebraStructure& operator=(AlgebraStructure&&) noexcept = default;

    std::size_t dim() const noexcept { return dim_; }
    const PrimeField& field() const noexcept { return field_; }
    bool skew_storage() const noexcept { return skew_; }
    const std::string& name() const noexcept { return name_; }
    void rename(std::string name) { name_ = std::move(name); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Construction-phase setter.  Zero vectors are not stored; for skew
    /// storage only pairs i < j may be written.
    void set_product(std::size_t i, std::size_t j, const Vec& value);

    /// e_i * e_j as a dense coefficient vector.
    Vec product(std::size_t i, std::size_t j) const;
    void product_into(std::size_t i, std::size_t j, Vec& out) const;

    /// acc[k] += s * (e_i e_j)_k without reduction; acc entries stay far
    /// below 2^32 for any scan in this project.
    void add_scaled_product(std::uint32_t* acc, std::size_t i, std::size_t j, unsigned s) const;

    /// Stored table entry for (i, j) or nullptr; skew derivation NOT applied.
    const Vec* stored(std::size_t i, std::size_t j) const {
        const std::int32_t s = slot_[i * dim_ + j];
        return s < 0 ? nullptr : &pool_[static_cast<std::size_t>(s)];
    }

    /// Bilinear extension of the basis products.
    Vec multiply(const Vec& u, const Vec& v) const;

    /// Exhaustive checks over basis pairs/triples; first counterexample in
    /// lexicographic order is reported.  Results are cached.
    CommAssocReport check_commutative_associative() const;
    AnticommReport check_anticommutative() const;
    /// Requires an anticommutative structure (throws otherwise); scans all
    /// unordered triples i < j < k, which together with e_i e_i = 0 covers
    /// the degenerate triples for p != 2.
    JacobiReport check_jacobi() const;

    /// Cyclic sum c(c(a,b),d) + c(c(b,d),a) + c(c(d,a),b) over all unordered
    /// basis triples; requires an alternating structure (throws otherwise).
    /// For a Lie bracket this is exactly the Jacobi identity.
    JacobiReport jacobiator() const;

    /// Coefficient-weighted entrywise sum of structures on the same space.
    static AlgebraStructure sum_of_structures(std::span<const AlgebraStructure* const> structures,
                                              std::span<const Scalar> coefficients);

    /// (u (x) v)(u' (x) v') = (u u') (x) (v v'); basis ordered with the second
    /// factor fastest: index(u_i (x) v_j) = i*dim(b) + j.
    static AlgebraStructure tensor_product(const AlgebraStructure& a, const AlgebraStructure& b);

    /// Span of all basis products, canonical form.
    Subspace derived_subalgebra() const;

    /// Kernel of v -> ([v, e_j])_j; requires anticommutative.
    Subspace center() const;

    /// Quotient by a verified two-sided ideal; the complement basis is the
    /// set of non-pivot coordinates of the ideal's rref basis.
    AlgebraStructure quotient(const Subspace& ideal) const;

    /// Two-sided unit, if one exists (basis fast path, then linear solve).
    std::optional<Vec> find_unit() const;

    /// Text dump: `<tag> p=<p> dim=<d> name=<name>` then `i j k v` lines for
    /// every nonzero coefficient, sorted by (i, j, k).  Skew-derived entries
    /// are materialized so the format is independent of the storage scheme.
    std::string dump(std::string_view tag = "SC") const;
    void write_dump(const std::filesystem::path& path, std::string_view tag = "SC") const;
    static AlgebraStructure parse_dump(std::string_view text);
    static AlgebraStructure load_dump(const std::filesystem::path& path);

    /// Equality of multiplication tables (storage-scheme independent).
    bool same_structure(const AlgebraStructure& o) const;

    /// Calls fn(i, j, value) for every mathematically nonzero basis product,
    /// including the skew-derived ones.
    void each_entry(const std::function<void(std::size_t, std::size_t, const Vec&)>& fn) const;

private:
    struct FlagCache {
        // -1 unknown, 0 false, 1 true; write-once
        std::atomic<signed char> commutative{-1};
        std::atomic<signed char> associative{-1};
        std::atomic<signed char> anticommutative{-1};
        std::atomic<signed char> jacobi{-1};
    };

    JacobiReport cyclic_scan() const;

    PrimeField field_;
    std::size_t dim_;
    bool skew_;
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::int32_t> slot_; // dim*dim -> pool index or -1
    std::vector<Vec> pool_;
    mutable FlagCache flags_;
};

} // namespace modlie
