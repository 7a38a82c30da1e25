#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "adelic/galois_field.hpp"

namespace adelic {

/// Homogeneous form in X, Y, Z over F_q, scaled so that the coefficient of
/// its largest monomial (lexicographic in the exponents of X, Y, Z) is 1.
struct PlaneForm {
    std::map<std::array<int, 3>, gf_elem> terms;
    int degree = 0;
    /// Irreducibility is taken on trust.
    bool asserted_irreducible = true;

    /// (d-1)(d-2)/2.
    int arithmetic_genus() const { return (degree - 1) * (degree - 2) / 2; }

    friend bool operator==(const PlaneForm& a, const PlaneForm& b) { return a.terms == b.terms; }
    friend bool operator<(const PlaneForm& a, const PlaneForm& b) { return a.terms < b.terms; }
};

/// Finite formal sum of curves.
struct PlaneDivisor {
    std::map<PlaneForm, long> terms;

    void normalize();
    PlaneDivisor& operator+=(const PlaneDivisor& o);
    PlaneDivisor& operator-=(const PlaneDivisor& o);
    friend PlaneDivisor operator+(PlaneDivisor a, const PlaneDivisor& b) { return a += b; }
    friend PlaneDivisor operator-(PlaneDivisor a, const PlaneDivisor& b) { return a -= b; }
    PlaneDivisor operator-() const;
    friend PlaneDivisor operator*(long n, PlaneDivisor a);
    friend bool operator==(const PlaneDivisor&, const PlaneDivisor&) = default;

    /// sum n_z deg z, the class of D in Pic(P^2) = Z.
    long degree() const;
    bool empty() const { return terms.empty(); }
};

PlaneDivisor single_curve(const PlaneForm& f, long n = 1);

struct IntersectionPoint {
    std::string chart;           ///< "Z=1", "Y=1" or "X=1"
    std::string eliminant;       ///< irreducible factor of the eliminant in the chart's first variable
    std::string fiber;           ///< irreducible factor of the fiber gcd over the residue field of the eliminant
    int residue_degree = 0;
    int multiplicity = 0;
};

struct IntersectionReport {
    std::vector<IntersectionPoint> points;
    long total = 0;  ///< sum of multiplicity * residue_degree
};

/// Report of h^i for a plane divisor, in units of log q.
struct SurfaceHReport {
    long h0 = 0, h1 = 0, h2 = 0, chi = 0;
    long log_c_star = 0;  ///< -log # H^0(K)
    long n1 = 0;          ///< additive constant on h^1
    long degree = 0;
};

/// The projective plane over F_q with intersection-theoretic operations.
class ProjectivePlane {
public:
    explicit ProjectivePlane(std::uint64_t q, std::uint64_t seed = 0x5eed);

    const GaloisField& field() const { return k_; }
    std::uint64_t q() const { return k_.size(); }
    std::uint64_t seed() const { return seed_; }

    /// Parses sums of terms like "2*X^2*Y - Z^3"; integer coefficients are
    /// read in the prime field.
    PlaneForm parse(const std::string& text) const;
    PlaneForm line(gf_elem a, gf_elem b, gf_elem c) const;
    std::string to_string(const PlaneForm& f) const;
    std::string to_string(const PlaneDivisor& D) const;

    /// True iff f and g have no common factor.
    bool coprime(const PlaneForm& f, const PlaneForm& g) const;
    /// Throws unless the support forms are pairwise coprime.
    void validate(const PlaneDivisor& D) const;

    /// Degree of Res_Z after a seeded random change of coordinates.
    long total_intersection(const PlaneForm& f, const PlaneForm& g) const;
    /// Closed points of V(f, g) with multiplicities and residue degrees.
    IntersectionReport local_intersections(const PlaneForm& f, const PlaneForm& g) const;
    /// No common zero of f and its partials over the algebraic closure.
    bool is_smooth(const PlaneForm& f) const;

    /// sum_z n_z (z . y); y must not lie in the support of D.
    long restriction_degree(const PlaneDivisor& D, const PlaneForm& y) const;
    /// Intersection pairing in units of log q.
    long index(const PlaneDivisor& A, const PlaneDivisor& B) const;

    /// K = -3 [line].
    PlaneDivisor canonical() const;
    /// chi(D) - chi(0) in units of log q, peeling one curve at a time.  A
    /// nonzero order_seed shuffles the peel order.
    long chi_inductive(const PlaneDivisor& D, std::uint64_t order_seed = 0) const;
    long duality_defect_2d(const PlaneDivisor& D) const;
    long rr2d_defect(const PlaneDivisor& D) const;
    SurfaceHReport h_numbers_geometric(const PlaneDivisor& D) const;

private:
    long pair_intersection(const PlaneForm& z, const PlaneForm& y) const;
    PlaneForm line_avoiding(const PlaneForm& y) const;

    GaloisField k_;
    std::uint64_t seed_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<PlaneForm, PlaneForm>, long> cache_;
};

}  // namespace adelic
