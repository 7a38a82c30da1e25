#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "adelic/function_field.hpp"
#include "adelic/number_field.hpp"
#include "adelic/places.hpp"

namespace adelic {

using FieldElement = std::variant<NfElement, RationalFunction>;

/// A number field Q(theta) (Q itself is the degree-one case) or F_q(t).
/// Copies share the underlying immutable field.
class GlobalField {
public:
    static GlobalField rational();
    static GlobalField number_field(ZPoly min_poly, bool assume_irreducible = false);
    static GlobalField function_field(std::uint64_t q);

    bool is_number_field() const { return nf_ != nullptr; }
    bool is_function_field() const { return ff_ != nullptr; }
    bool is_rational() const { return nf_ && nf_->degree() == 1; }
    const NumberField& nf() const;
    const FunctionField& ff() const;

    int genus() const { return 0; }
    /// q for F_q(t); 0 for number fields.
    std::uint64_t q() const { return ff_ ? ff_->q() : 0; }

    std::vector<Place> archimedean_places() const;
    void check_place(const Place& v) const;
    /// log #k(v); zero for archimedean places.
    double log_residue_card(const Place& v) const;
    /// deg v = [k(v) : F_q] for function fields.
    int place_degree(const Place& v) const;
    /// e_v: 1 for real, 2 for complex places.
    int arch_dimension(const Place& v) const;
    /// Ramification index e of a finite place (1 for F_q(t)).
    int ramification(const Place& v) const;

    std::string describe() const;
    std::string describe(const Place& v) const;

private:
    std::shared_ptr<const NumberField> nf_;
    std::shared_ptr<const FunctionField> ff_;
};

/// Integers at non-archimedean places, reals at archimedean ones.
struct RepleteDivisor {
    std::map<Place, long> finite;
    std::map<Place, double> arch;

    bool is_usual() const { return arch.empty(); }
    void normalize();

    RepleteDivisor& operator+=(const RepleteDivisor& o);
    RepleteDivisor& operator-=(const RepleteDivisor& o);
    friend RepleteDivisor operator+(RepleteDivisor a, const RepleteDivisor& b) { return a += b; }
    friend RepleteDivisor operator-(RepleteDivisor a, const RepleteDivisor& b) { return a -= b; }
    RepleteDivisor operator-() const;
    friend bool operator==(const RepleteDivisor&, const RepleteDivisor&) = default;

    long coeff(const Place& v) const;
    double arch_coeff(const Place& v) const;
};

RepleteDivisor single_place(const Place& v, long n);

bool is_zero(const GlobalField& K, const FieldElement& x);
FieldElement field_mul(const GlobalField& K, const FieldElement& a, const FieldElement& b);
FieldElement field_inv(const GlobalField& K, const FieldElement& a);
FieldElement field_one(const GlobalField& K);
std::string to_string(const GlobalField& K, const FieldElement& x);

/// v(x); throws for archimedean places.
int valuation(const GlobalField& K, const FieldElement& x, const Place& v);

/// |x|_v, the normalized module (complex places: squared absolute value).
double module_at_place(const GlobalField& K, const FieldElement& x, const Place& v);
long double log_module_at_place(const GlobalField& K, const FieldElement& x, const Place& v);

/// Finite places where v(x) != 0.
std::vector<Place> finite_support(const GlobalField& K, const FieldElement& x);

/// Product of |x|_v over all places.
double product_formula_defect(const GlobalField& K, const FieldElement& x);
/// Function fields: sum of deg(v) * v(x), which must be zero.
long product_formula_exponent(const GlobalField& K, const FieldElement& x);

/// D_x = -sum v(x)[v], with log|x|_v at archimedean places.
RepleteDivisor replete_divisor_of(const GlobalField& K, const FieldElement& x);

/// log|alpha| = sum n_v log #k(v) + sum t_v.
double log_module(const GlobalField& K, const RepleteDivisor& D);
/// deg D = sum n_v deg v (function fields).
long degree(const GlobalField& K, const RepleteDivisor& D);

/// The canonical divisor: -2[inf] on F_q(t); the different of Z[theta]
/// (n_v = v(f'(theta))) on a number field.
RepleteDivisor different_divisor(const GlobalField& K);

/// log|k| = -log_module(different): (2 - 2g) log q, resp. -log |disc|.
double log_abs_k(const GlobalField& K);

}  // namespace adelic
