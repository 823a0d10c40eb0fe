#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace modlie {

/// Residue of an element of GF(p), always kept reduced into [0, p).
using Scalar = std::uint8_t;

/// Coordinate vector over GF(p); entries are reduced residues.
using Vec = std::vector<Scalar>;

/// Arithmetic in the prime field GF(p) on eagerly reduced byte residues.
///
/// The modulus is carried by the containing object (matrix, algebra, ...)
/// rather than by each element; all entry points reduce their result before
/// returning, so residues never leave [0, p).  Inverses are looked up in a
/// table built at construction.
class PrimeField {
public:
    explicit PrimeField(unsigned p);

    unsigned p() const noexcept { return p_; }

    Scalar reduce(long long v) const noexcept {
        long long r = v % static_cast<long long>(p_);
        if (r < 0)
            r += p_;
        return static_cast<Scalar>(r);
    }

    Scalar add(Scalar a, Scalar b) const noexcept {
        unsigned s = unsigned(a) + unsigned(b);
        if (s >= p_)
            s -= p_;
        return static_cast<Scalar>(s);
    }

    Scalar sub(Scalar a, Scalar b) const noexcept {
        unsigned s = unsigned(a) + p_ - unsigned(b);
        if (s >= p_)
            s -= p_;
        return static_cast<Scalar>(s);
    }

    Scalar neg(Scalar a) const noexcept { return a == 0 ? Scalar{0} : static_cast<Scalar>(p_ - a); }

    Scalar mul(Scalar a, Scalar b) const noexcept {
        return static_cast<Scalar>((unsigned(a) * unsigned(b)) % p_);
    }

    /// Multiplicative inverse; throws on zero.
    Scalar inv(Scalar a) const;

    bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const noexcept { return p_ != o.p_; }

private:
    unsigned p_;
    std::vector<Scalar> inverse_; // inverse_[a] for a in 1..p-1
};

/// Elementwise u += c*v over GF(p).  Lengths must match.
void axpy(const PrimeField& f, Vec& u, Scalar c, const Vec& v);

bool is_zero(const Vec& v) noexcept;

} // namespace modlie
