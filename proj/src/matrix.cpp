#include "modlie/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace modlie {

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vec out(rows_, 0);
    const unsigned p = field_.p();
    for (std::size_t r = 0; r < rows_; ++r) {
        const Scalar* row = e_.data() + r * cols_;
        std::uint32_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            acc += unsigned(row[c]) * unsigned(v[c]);
        out[r] = static_cast<Scalar>(acc % p);
    }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_)
        throw std::invalid_argument("Matrix::mul: field mismatch");
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("Matrix::mul: dimension mismatch");
    Matrix out(a.field_, a.rows_, b.cols_);
    const unsigned p = a.field_.p();
    std::vector<std::uint32_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0u);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const unsigned aik = a(i, k);
            if (aik == 0)
                continue;
            const Scalar* brow = b.e_.data() + k * b.cols_;
            for (std::size_t j = 0; j < b.cols_; ++j)
                acc[j] += aik * unsigned(brow[j]);
        }
        Scalar* orow = out.e_.data() + i * out.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j)
            orow[j] = static_cast<Scalar>(acc[j] % p);
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    out.add_scaled(b, 1);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    out.add_scaled(b, static_cast<Scalar>(a.field().p() - 1));
    return out;
}

void Matrix::add_scaled(const Matrix& b, Scalar c) {
    if (field_ != b.field_ || rows_ != b.rows_ || cols_ != b.cols_)
        throw std::invalid_argument("Matrix::add_scaled: shape or field mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i)
        e_[i] = field_.add(e_[i], field_.mul(c, b.e_[i]));
}

Matrix Matrix::pow(unsigned k) const {
    if (rows_ != cols_)
        throw std::invalid_argument("Matrix::pow: square matrix required");
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (k > 0) {
        if (k & 1u)
            result = result * base;
        base = base * base;
        k >>= 1u;
    }
    return result;
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](Scalar x) { return x == 0; });
}

bool Matrix::is_identity() const noexcept {
    if (rows_ != cols_)
        return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != (r == c ? 1 : 0))
                return false;
    return true;
}

std::string Matrix::dump(const std::string& tag, const std::string& name) const {
    if (rows_ != cols_)
        throw std::invalid_argument("Matrix::dump: square matrix required");
    std::ostringstream out;
    out << tag << " p=" << field_.p() << " dim=" << rows_ << " name=" << name << '\n';
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c)
                out << ' ';
            out << unsigned((*this)(r, c));
        }
        out << '\n';
    }
    return out.str();
}

RrefResult rref(const Matrix& m) {
    Matrix a = m;
    const PrimeField& f = a.field();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0; // next pivot row
    for (std::size_t pc = 0; pc < a.cols() && pr < a.rows(); ++pc) {
        // first nonzero entry at or below pr
        std::size_t sel = a.rows();
        for (std::size_t r = pr; r < a.rows(); ++r)
            if (a(r, pc) != 0) {
                sel = r;
                break;
            }
        if (sel == a.rows())
            continue;
        if (sel != pr)
            for (std::size_t c = 0; c < a.cols(); ++c)
                std::swap(a(sel, c), a(pr, c));
        const Scalar piv_inv = f.inv(a(pr, pc));
        for (std::size_t c = 0; c < a.cols(); ++c)
            a(pr, c) = f.mul(a(pr, c), piv_inv);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pr)
                continue;
            const Scalar coef = a(r, pc);
            if (coef == 0)
                continue;
            const Scalar nc = f.neg(coef);
            for (std::size_t c = 0; c < a.cols(); ++c)
                a(r, c) = f.add(a(r, c), f.mul(nc, a(pr, c)));
        }
        pivots.push_back(pc);
        ++pr;
    }
    return RrefResult{std::move(a), pivots.size(), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

namespace {

std::vector<Vec> kernel_from_rref(const PrimeField& f, const Matrix& red,
                                  const std::vector<std::size_t>& pivots, std::size_t ncols) {
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t pc : pivots)
        is_pivot[pc] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(ncols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = f.neg(red(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

std::vector<Vec> kernel(const Matrix& m) {
    RrefResult r = rref(m);
    return kernel_from_rref(m.field(), r.reduced, r.pivots, m.cols());
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    RrefResult red = rref(aug);
    for (std::size_t r = 0; r < red.rank; ++r)
        if (red.pivots[r] == a.cols())
            return std::nullopt; // pivot in the augmented column
    Vec x(a.cols(), 0);
    for (std::size_t r = 0; r < red.rank; ++r)
        x[red.pivots[r]] = red.reduced(r, a.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("inverse: square matrix required");
    const std::size_t n = a.rows();
    Matrix aug(a.field(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = a(r, c);
        aug(r, n + r) = 1;
    }
    RrefResult red = rref(aug);
    if (red.rank < n || red.pivots[n - 1] >= n)
        return std::nullopt;
    Matrix inv(a.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = red.reduced(r, n + c);
    return inv;
}

RowSpace::RowSpace(PrimeField field, std::size_t ambient) : field_(field), ambient_(ambient) {}

Vec RowSpace::reduce(const Vec& v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("RowSpace::reduce: dimension mismatch");
    Vec w = v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Scalar coef = w[pivots_[r]];
        if (coef == 0)
            continue;
        const Scalar nc = field_.neg(coef);
        const Vec& row = rows_[r];
        for (std::size_t c = 0; c < ambient_; ++c)
            w[c] = field_.add(w[c], field_.mul(nc, row[c]));
    }
    return w;
}

bool RowSpace::insert(const Vec& v) {
    Vec w = reduce(v);
    std::size_t lead = ambient_;
    for (std::size_t c = 0; c < ambient_; ++c)
        if (w[c] != 0) {
            lead = c;
            break;
        }
    if (lead == ambient_)
        return false;
    const Scalar inv = field_.inv(w[lead]);
    for (std::size_t c = 0; c < ambient_; ++c)
        w[c] = field_.mul(w[c], inv);
    // back-eliminate the new pivot column from the existing rows
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Scalar coef = rows_[r][lead];
        if (coef == 0)
            continue;
        const Scalar nc = field_.neg(coef);
        for (std::size_t c = 0; c < ambient_; ++c)
            rows_[r][c] = field_.add(rows_[r][c], field_.mul(nc, w[c]));
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
}

bool RowSpace::contains(const Vec& v) const { return is_zero(reduce(v)); }

std::vector<Vec> RowSpace::kernel_of_rows() const {
    Matrix red(field_, rows_.size(), ambient_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t c = 0; c < ambient_; ++c)
            red(r, c) = rows_[r][c];
    std::vector<Vec> out;
    std::vector<bool> is_pivot(ambient_, false);
    for (std::size_t pc : pivots_)
        is_pivot[pc] = true;
    for (std::size_t free = 0; free < ambient_; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(ambient_, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots_.size(); ++r)
            v[pivots_[r]] = field_.neg(red(r, free));
        out.push_back(std::move(v));
    }
    return out;
}

SpanInfo span_info(const PrimeField& field, std::span<const Vec> vectors, const Vec& probe) {
    RowSpace rs(field, probe.size());
    for (const Vec& v : vectors) {
        if (v.size() != probe.size())
            throw std::invalid_argument("span_info: vector length mismatch");
        rs.insert(v);
    }
    return SpanInfo{rs.rank(), rs.contains(probe)};
}

} // namespace modlie
