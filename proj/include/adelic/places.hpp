#pragma once

#include <compare>
#include <variant>
#include <vector>

#include "adelic/galois_field.hpp"
#include "adelic/number_field.hpp"

namespace adelic {

/// Finite place of F_q(t): a monic irreducible polynomial, low-to-high.
struct PolyPlace {
    std::vector<gf_elem> poly;
    auto operator<=>(const PolyPlace&) const = default;
};

/// The place at infinity of F_q(t), uniformizer 1/t.
struct InfinitePlace {
    auto operator<=>(const InfinitePlace&) const = default;
};

struct RealPlace {
    int index = 0;
    auto operator<=>(const RealPlace&) const = default;
};

/// A conjugate pair of complex embeddings; index counts pairs.
struct ComplexPlace {
    int index = 0;
    auto operator<=>(const ComplexPlace&) const = default;
};

using Place = std::variant<PrimePlace, PolyPlace, InfinitePlace, RealPlace, ComplexPlace>;

inline bool is_archimedean(const Place& v) {
    return std::holds_alternative<RealPlace>(v) || std::holds_alternative<ComplexPlace>(v);
}

}  // namespace adelic
