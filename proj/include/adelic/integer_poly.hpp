#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace adelic {

/// Integer / rational polynomials, coefficients low-to-high.
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

namespace zpoly {

void trim(ZPoly& a);
inline int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }
ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly derivative(const ZPoly& a);
/// Remainder modulo a monic polynomial; stays integral.
ZPoly rem_monic(const ZPoly& a, const ZPoly& f);
/// Sylvester resultant, exact (fraction-free Bareiss elimination).
mpz_class resultant(const ZPoly& a, const ZPoly& b);
/// Discriminant of a monic polynomial.
mpz_class discriminant(const ZPoly& f);
std::complex<long double> eval(const ZPoly& a, std::complex<long double> z);

}  // namespace zpoly

namespace qpoly {

void trim(QPoly& a);
inline int deg(const QPoly& a) { return static_cast<int>(a.size()) - 1; }
QPoly mul(const QPoly& a, const QPoly& b);
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// s with s*a = g (mod b) where g = gcd(a, b) is monic.
std::pair<QPoly, QPoly> gcd_cofactor(const QPoly& a, const QPoly& b);
std::complex<long double> eval(const QPoly& a, std::complex<long double> z);
/// a = p / d with p integral and d the least common denominator.
std::pair<ZPoly, mpz_class> clear_denominators(const QPoly& a);

}  // namespace qpoly

/// Prime factorization of |n| (n != 0) by trial division with a
/// probabilistic primality test on the cofactor.
std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n);

/// p-adic valuation of a nonzero integer.
int valuation(mpz_class n, const mpz_class& p);

}  // namespace adelic
