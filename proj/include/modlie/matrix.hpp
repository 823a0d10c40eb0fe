#pragma once

#include "modlie/gf.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace modlie {

/// Dense row-major matrix over GF(p).
///
/// At the scale of this project (125x125 over GF(5)) dense storage is a few
/// kilobytes, so no sparse variant exists here; sparse storage is reserved
/// for structure-constant tables (see algebra.hpp).
class Matrix {
public:
    Matrix(PrimeField field, std::size_t rows, std::size_t cols);

    static Matrix identity(PrimeField field, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrimeField& field() const noexcept { return field_; }

    Scalar operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

    /// Row r as a span of cols() residues.
    std::span<const Scalar> row(std::size_t r) const { return {e_.data() + r * cols_, cols_}; }
    std::span<Scalar> row(std::size_t r) { return {e_.data() + r * cols_, cols_}; }

    /// Matrix-vector product (column coordinate vector).
    Vec apply(const Vec& v) const;

    Matrix transposed() const;

    /// Exact k-th power of a square matrix; pow(0) is the identity.
    Matrix pow(unsigned k) const;

    bool is_zero() const noexcept;
    bool is_identity() const noexcept;

    bool operator==(const Matrix& o) const noexcept {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);

    /// a += c*b, shape-checked.
    void add_scaled(const Matrix& b, Scalar c);

    /// Dense text dump: `<tag> p=<p> dim=<rows> name=<name>` then one line per
    /// row of space-separated residues.  Square matrices only.
    std::string dump(const std::string& tag, const std::string& name) const;

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivots; // pivot column per pivot row, ascending
};

/// Reduced row-echelon form (Gauss-Jordan, first-nonzero pivot selection).
/// The result is the canonical rref of the row space.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Canonical basis of the right null space { v : m v = 0 }, one vector per
/// free column of rref(m), ordered by free column.
std::vector<Vec> kernel(const Matrix& m);

/// Solves a x = b exactly.  Returns nullopt iff b is not in the column space
/// (free variables are set to zero, so the result is deterministic).
/// Throws on a.rows() != b.size().
std::optional<Vec> solve(const Matrix& a, const Vec& b);

/// Inverse of a square matrix, or nullopt if singular.
std::optional<Matrix> inverse(const Matrix& a);

/// Incrementally maintained row space in reduced row-echelon form.
///
/// insert() reduces the incoming vector against the current basis and, when a
/// nonzero residue remains, normalizes it, back-eliminates its pivot from the
/// older rows and stores it in pivot order.  The basis therefore always equals
/// the rref of everything inserted so far, which makes subspace equality a
/// plain row-by-row comparison.
class RowSpace {
public:
    RowSpace(PrimeField field, std::size_t ambient);

    /// Returns true when the vector enlarged the space.
    bool insert(const Vec& v);

    /// Residue of v after reduction against the basis (zero iff contained).
    Vec reduce(const Vec& v) const;

    bool contains(const Vec& v) const;

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t ambient() const noexcept { return ambient_; }
    bool full() const noexcept { return rows_.size() == ambient_; }
    const PrimeField& field() const noexcept { return field_; }

    /// Pivot-ordered rref rows.
    const std::vector<Vec>& basis() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// Canonical kernel basis of the matrix whose rows were inserted
    /// (i.e. of the linear map v -> (row_i . v)_i restricted to the ambient).
    std::vector<Vec> kernel_of_rows() const;

private:
    PrimeField field_;
    std::size_t ambient_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

struct SpanInfo {
    std::size_t dimension;
    bool contains;
};

/// Rank of span(vectors) and membership of probe in that span.
SpanInfo span_info(const PrimeField& field, std::span<const Vec> vectors, const Vec& probe);

} // namespace modlie
