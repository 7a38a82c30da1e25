#pragma once

#include <vector>

#include <gmpxx.h>

#include "adelic/field_core.hpp"

namespace adelic {

using RealMatrix = std::vector<std::vector<long double>>;

/// A fractional ideal of Z[theta] as a Z-module: rows / den, rows in
/// Hermite normal form with respect to the power basis.
struct FractionalIdeal {
    std::vector<std::vector<mpz_class>> rows;
    mpz_class den = 1;
};

FractionalIdeal unit_ideal(const NumberField& K);
FractionalIdeal ideal_product(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b);
/// p O + g(theta) O.
FractionalIdeal prime_ideal(const NumberField& K, const PrimePlace& P);
/// O + (beta(theta)/p) O.
FractionalIdeal inverse_prime_ideal(const NumberField& K, const PrimePlace& P);
/// Index-normalized norm: [O : I] for integral I, extended multiplicatively.
mpq_class ideal_norm(const FractionalIdeal& I);

/// Hermite normal form of an integer generating set of a full-rank lattice.
std::vector<std::vector<mpz_class>> hermite_normal_form(std::vector<std::vector<mpz_class>> gens, std::size_t n);

/// The lattice {u : v(u) >= -n_v} with the archimedean scaling of D.
///   real place:    sqrt(pi) e^{-t} sigma(u)
///   complex place: sqrt(2 pi e^{-t}) (Re sigma(u), Im sigma(u))
/// so that f_alpha(u) = exp(-|embedding(u)|^2).
struct IdealLattice {
    FractionalIdeal ideal;
    std::vector<std::vector<mpq_class>> basis;
    RealMatrix embedding;  ///< row i is the scaled image of basis[i]
    std::vector<long double> scalings;  ///< exp(t_v) per archimedean place
    RealMatrix gram;
};

IdealLattice ideal_lattice(const GlobalField& K, const RepleteDivisor& D);

struct ThetaParams {
    double tol = 1e-12;
    int max_shells = 60;
    long max_points = 50'000'000;
};

struct ThetaResult {
    long double sum = 0;
    long double log_sum = 0;
    long points = 0;
    long double radius_sq = 0;
    long double tail_bound = 0;
    int shells = 0;
};

/// Sum of exp(-|x|^2) over the lattice spanned by the rows of basis.
ThetaResult theta_sum(const RealMatrix& basis, const ThetaParams& params);

/// LLL-reduced copy of a real basis (rows), delta = 0.99.
RealMatrix lll_reduce(RealMatrix b);

}  // namespace adelic
