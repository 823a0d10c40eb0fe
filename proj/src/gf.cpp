#include "modlie/gf.hpp"

namespace modlie {

namespace {

bool is_prime(unsigned n) {
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

PrimeField::PrimeField(unsigned p) : p_(p) {
    if (p < 2 || p > 251)
        throw std::invalid_argument("PrimeField: modulus must be a prime in [2, 251]");
    if (!is_prime(p))
        throw std::invalid_argument("PrimeField: modulus is not prime");
    inverse_.assign(p, 0);
    for (unsigned a = 1; a < p; ++a)
        for (unsigned b = 1; b < p; ++b)
            if ((a * b) % p == 1) {
                inverse_[a] = static_cast<Scalar>(b);
                break;
            }
}

Scalar PrimeField::inv(Scalar a) const {
    if (a == 0)
        throw std::domain_error("PrimeField::inv: zero has no inverse");
    return inverse_[a];
}

void axpy(const PrimeField& f, Vec& u, Scalar c, const Vec& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("axpy: length mismatch");
    if (c == 0)
        return;
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = f.add(u[i], f.mul(c, v[i]));
}

bool is_zero(const Vec& v) noexcept {
    for (Scalar x : v)
        if (x != 0)
            return false;
    return true;
}

} // namespace modlie
