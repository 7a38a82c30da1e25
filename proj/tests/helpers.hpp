#pragma once

#include "adelic/field_core.hpp"

namespace testing_helpers {

using namespace adelic;

inline GlobalField gaussian() { return GlobalField::number_field({1, 0, 1}); }
inline GlobalField sqrt2() { return GlobalField::number_field({-2, 0, 1}); }
inline GlobalField eisenstein() { return GlobalField::number_field({1, 1, 1}); }

inline FieldElement nf_elem(const GlobalField& K, std::vector<long> c) {
    std::vector<mpq_class> q;
    for (long x : c) q.emplace_back(x);
    return K.nf().element(q);
}

inline FieldElement ff_elem(const GlobalField& K, std::vector<long> num, std::vector<long> den = {1}) {
    const auto& k = K.ff().constants();
    FqPoly a, b;
    for (long x : num) a.push_back(k.from_int(x));
    for (long x : den) b.push_back(k.from_int(x));
    return K.ff().make(a, b);
}

inline Place prime(const GlobalField& K, long p, std::size_t i = 0) { return K.nf().places_above(p).at(i); }

inline Place poly_place(const GlobalField& K, std::vector<long> c) {
    const auto& k = K.ff().constants();
    FqPoly a;
    for (long x : c) a.push_back(k.from_int(x));
    return K.ff().place(a);
}

}  // namespace testing_helpers
