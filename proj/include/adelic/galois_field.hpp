#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace adelic {

using gf_elem = std::uint32_t;

/// The finite field F_q, q = p^m.
///
/// Prime fields use plain modular arithmetic.  Proper prime powers are
/// realised as F_p[x]/(mu) for a primitive polynomial mu found by a
/// deterministic search; an element is encoded as the base-p integer whose
/// digits are its coefficients in 1, x, ..., x^{m-1}.  With this encoding the
/// prime subfield is {0, ..., p-1}, zero is 0 and one is 1.
class GaloisField {
public:
    using elem = gf_elem;

    explicit GaloisField(std::uint64_t q);

    std::uint64_t size() const { return q_; }
    std::uint32_t characteristic() const { return p_; }
    int degree() const { return m_; }

    elem zero() const { return 0; }
    elem one() const { return 1; }
    bool is_zero(elem a) const { return a == 0; }

    elem add(elem a, elem b) const;
    elem sub(elem a, elem b) const;
    elem neg(elem a) const;
    elem mul(elem a, elem b) const;
    elem inv(elem a) const;
    elem div(elem a, elem b) const { return mul(a, inv(b)); }
    elem pow(elem a, std::uint64_t e) const;

    /// Image of an integer in the prime subfield.
    elem from_int(long long n) const;
    elem element(std::uint64_t index) const { return static_cast<elem>(index); }
    std::uint64_t index(elem a) const { return a; }
    elem random(std::mt19937_64& rng) const;

    /// Tr_{F_q/F_p}(a) as an integer in [0, p).
    std::uint32_t trace_to_prime(elem a) const;
    /// An F_p-basis of F_q: 1, x, ..., x^{m-1}.
    std::vector<elem> prime_basis() const;
    /// Coordinates of a in prime_basis().
    std::vector<std::uint32_t> prime_coordinates(elem a) const;

    std::string to_string(elem a) const;

    bool operator==(const GaloisField& o) const { return q_ == o.q_; }

private:
    std::uint64_t q_;
    std::uint32_t p_;
    int m_;
    std::vector<elem> exp_;
    std::vector<std::uint32_t> log_;
};

/// Returns (p, m) with q = p^m, or (0, 0) if q is not a prime power.
std::pair<std::uint32_t, int> prime_power_decomposition(std::uint64_t q);

bool is_prime(std::uint64_t n);

}  // namespace adelic
