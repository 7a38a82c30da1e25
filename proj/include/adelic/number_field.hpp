#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "adelic/integer_poly.hpp"

namespace adelic {

/// Element of Q(theta) in the power basis 1, theta, ..., theta^{n-1}.
struct NfElement {
    std::vector<mpq_class> c;

    friend bool operator==(const NfElement& a, const NfElement& b) { return a.c == b.c; }
};

/// A prime of the order Z[theta] above the rational prime p, given by a
/// monic irreducible factor g of the minimal polynomial mod p (Dedekind).
struct PrimePlace {
    long p = 0;
    std::vector<std::uint32_t> factor;  ///< g mod p, low-to-high
    int e = 1;                          ///< ramification index (multiplicity of g)
    int f = 1;                          ///< residue degree (deg g)
    int index = 0;                      ///< position among the places above p
    /// p divides [O_K : Z[theta]]; valuations here are order-level data.
    bool order_level = false;
    /// Integer lift of (min_poly mod p) / g.  beta(theta)/p has valuation -1
    /// at this place and is integral at the other places above p.
    std::vector<long> beta;

    double log_residue_card() const;

    friend bool operator==(const PrimePlace& a, const PrimePlace& b) { return a.p == b.p && a.factor == b.factor; }
    friend bool operator<(const PrimePlace& a, const PrimePlace& b) {
        if (a.p != b.p) return a.p < b.p;
        if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
        return a.factor < b.factor;
    }
};

/// A number field presented by a monic irreducible integer polynomial; the
/// lattice used throughout is the equation order Z[theta].
class NumberField {
public:
    explicit NumberField(ZPoly min_poly, bool assume_irreducible = false);

    int degree() const { return zpoly::deg(min_poly_); }
    const ZPoly& min_poly() const { return min_poly_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    /// Discriminant of the minimal polynomial (= disc of Z[theta]).
    const mpz_class& discriminant() const { return disc_; }
    bool irreducibility_certified() const { return certified_; }

    /// Complex roots: the r1 real roots ascending, then one root per
    /// conjugate pair (positive imaginary part).
    const std::vector<std::complex<long double>>& roots() const { return roots_; }

    std::vector<PrimePlace> places_above(long p) const;

    NfElement element(std::vector<mpq_class> coeffs) const;
    NfElement from_int(long n) const;
    NfElement zero() const { return element({}); }
    NfElement one() const { return from_int(1); }
    NfElement generator() const;
    NfElement add(const NfElement& a, const NfElement& b) const;
    NfElement sub(const NfElement& a, const NfElement& b) const;
    NfElement mul(const NfElement& a, const NfElement& b) const;
    NfElement inv(const NfElement& a) const;
    bool is_zero(const NfElement& a) const;

    mpq_class norm(const NfElement& a) const;
    std::complex<long double> embed(const NfElement& a, std::size_t root_index) const;
    int valuation(const NfElement& a, const PrimePlace& place) const;
    /// Rational primes at which a has nonzero valuation somewhere.
    std::vector<long> support_primes(const NfElement& a) const;
    /// f'(theta); its valuations give the different of Z[theta].
    NfElement derivative_at_generator() const;

private:
    ZPoly min_poly_;
    mpz_class disc_;
    int r1_ = 0;
    int r2_ = 0;
    bool certified_ = false;
    std::vector<std::complex<long double>> roots_;

    int integral_valuation(ZPoly a, const PrimePlace& place, int bound) const;
};

}  // namespace adelic
