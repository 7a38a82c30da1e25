#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "adelic/field_core.hpp"

namespace adelic {

/// Tr_{k(P)/F_q} of the coefficient of t_P^{-1} in f dt.
gf_elem residue_at(const GlobalField& K, const RationalFunction& f, const Place& P);

/// Sum of residues of f dt over all places (zero by reciprocity).
gf_elem residue_sum_defect(const GlobalField& K, const RationalFunction& f);

/// psi(x) = exp(2 pi i Tr_{F_q/F_p}(x) / p).
std::complex<double> psi(const GaloisField& k, gf_elem x);

/// Finite window: V = A(upper)/A(lower) on a place set containing infinity;
/// places outside the set are frozen at coefficient 0.
struct TruncationWindow {
    std::vector<Place> places;
    RepleteDivisor lower;
    RepleteDivisor upper;
};

/// Symmetric window [lo, hi] on the given places.
TruncationWindow make_window(const std::vector<Place>& places, long lo, long hi);

struct PerpReport {
    long dim_v = 0;        ///< dim_{F_p} A(E)/A(D)
    long dim_v_dual = 0;   ///< dim_{F_p} A(K-D)/A(K-E)
    long dim_image = 0;    ///< image of A(D') in V
    long dim_perp = 0;     ///< its orthogonal in V'
    long dim_expected = 0; ///< image of A(K-D') in V'
    long pairing_rank = 0;
    bool nondegenerate = false;
    bool perp_match = false;
    bool double_perp_match = false;
    /// Basis of the orthogonal, coordinates over F_p in V'.
    std::vector<std::vector<std::uint32_t>> perp_basis;
};

/// Orthogonal of A(D') under <a, b> = Tr_{F_q/F_p} sum_P res_P(a b dt),
/// compared against A(K - D').
PerpReport perp_in_window(const GlobalField& K, const TruncationWindow& W, const RepleteDivisor& Dp);

struct CharacterCount {
    std::uint64_t count = 0;  ///< # H^0(K - D) = # Hom(H^1(D), S^1)
    long log_q = 0;
    bool enumerated = false;  ///< false when the linear-algebra fallback was used
};

CharacterCount h1_character_count(const GlobalField& K, const RepleteDivisor& D, std::uint64_t enumeration_limit = 1'000'000);

}  // namespace adelic
