#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "adelic/ext_field.hpp"
#include "adelic/galois_field.hpp"
#include "adelic/places.hpp"
#include "adelic/poly.hpp"

namespace adelic {

using FqPoly = Poly<GaloisField>;
using LocalField = ExtField<GaloisField>;

/// p(t)/s(t) in lowest terms with s monic.  Zero is ({}, {1}).
struct RationalFunction {
    FqPoly num;
    FqPoly den;

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
};

/// Truncated Laurent expansion: c[i] is the coefficient of s^(start + i).
struct LaurentSeries {
    int start = 0;
    std::vector<LocalField::elem> c;

    /// Coefficient of s^e (zero outside the stored range).
    LocalField::elem coeff(const LocalField& L, int e) const {
        if (e < start || e - start >= static_cast<int>(c.size())) return L.zero();
        return c[static_cast<std::size_t>(e - start)];
    }
};

/// The rational function field F_q(t).
class FunctionField {
public:
    explicit FunctionField(std::uint64_t q);

    std::uint64_t q() const { return k_.size(); }
    const GaloisField& constants() const { return k_; }

    RationalFunction make(FqPoly num, FqPoly den) const;
    RationalFunction from_poly(FqPoly p) const { return make(std::move(p), poly::constant(k_, k_.one())); }
    RationalFunction zero() const { return from_poly({}); }
    RationalFunction one() const { return from_poly({k_.one()}); }
    RationalFunction t() const { return from_poly(poly::x(k_)); }

    bool is_zero(const RationalFunction& f) const { return f.num.empty(); }
    RationalFunction add(const RationalFunction& a, const RationalFunction& b) const;
    RationalFunction sub(const RationalFunction& a, const RationalFunction& b) const;
    RationalFunction neg(const RationalFunction& a) const;
    RationalFunction mul(const RationalFunction& a, const RationalFunction& b) const;
    RationalFunction inv(const RationalFunction& a) const;
    RationalFunction div(const RationalFunction& a, const RationalFunction& b) const { return mul(a, inv(b)); }

    /// Validates and normalizes a finite place (monic irreducible).
    PolyPlace place(FqPoly p) const;
    int place_degree(const PolyPlace& P) const { return poly::deg(P.poly); }

    int valuation(const RationalFunction& f, const PolyPlace& P) const;
    int valuation(const RationalFunction& f, const InfinitePlace&) const;
    int valuation(const FqPoly& a, const PolyPlace& P) const;

    /// Finite places where f has a zero or a pole.
    std::vector<PolyPlace> finite_support(const RationalFunction& f) const;

    /// Random nonzero element with numerator and denominator degree <= height.
    RationalFunction random(std::mt19937_64& rng, int height) const;

    /// Monic irreducible polynomials of degree d in lexicographic order.
    std::vector<PolyPlace> places_of_degree(int d) const;

    /// Residue field k(P) (k itself for the place at infinity).
    LocalField residue_field(const PolyPlace& P) const { return LocalField(k_, P.poly); }
    LocalField residue_field(const InfinitePlace&) const { return LocalField(k_, poly::x(k_)); }

    /// Expansion of f in s = t - alpha (alpha the class of t in k(P)),
    /// resp. in u = 1/t at infinity, with all exponents below max_exp.
    LaurentSeries expand(const LocalField& L, const RationalFunction& f, const PolyPlace& P, int max_exp) const;
    LaurentSeries expand(const LocalField& L, const RationalFunction& f, const InfinitePlace&, int max_exp) const;

    std::string to_string(const FqPoly& p) const;
    std::string to_string(const RationalFunction& f) const;

private:
    GaloisField k_;
};

/// Formal quotient s^a * A / (s^b * B) as a Laurent series up to max_exp.
LaurentSeries series_quotient(const LocalField& L, Poly<LocalField> a, Poly<LocalField> b, int max_exp);

}  // namespace adelic
