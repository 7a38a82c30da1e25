#include "adelic/residue_duality.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "adelic/rr1d.hpp"

namespace adelic {

namespace {

bool is_infinite(const Place& v) { return std::holds_alternative<InfinitePlace>(v); }

LocalField residue_field_of(const FunctionField& ff, const Place& v) {
    if (is_infinite(v)) return ff.residue_field(InfinitePlace{});
    return ff.residue_field(std::get<PolyPlace>(v));
}

LaurentSeries expand_at(const FunctionField& ff, const LocalField& L, const RationalFunction& f, const Place& v, int max_exp) {
    if (is_infinite(v)) return ff.expand(L, f, InfinitePlace{}, max_exp);
    return ff.expand(L, f, std::get<PolyPlace>(v), max_exp);
}

// res of (series) dt: coefficient of s^{-1} at a finite place; at infinity
// dt = -u^{-2} du, so minus the coefficient of u^1.
gf_elem residue_of_series(const LocalField& L, const LaurentSeries& s, bool infinite) {
    if (infinite) return L.base().neg(L.trace(s.coeff(L, 1)));
    return L.trace(s.coeff(L, -1));
}

LaurentSeries series_mul(const LocalField& L, const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r;
    r.start = a.start + b.start;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, L.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = L.add(r.c[i + j], L.mul(a.c[i], b.c[j]));
    return r;
}

// One F_p-basis vector of the window: c s^e at a place.
struct Monomial {
    std::size_t place;
    long exponent;
    LocalField::elem coeff;
};

std::vector<Monomial> monomials(const GaloisField& k, const LocalField& L, std::size_t place, long lo, long hi) {
    std::vector<Monomial> out;
    for (long e = lo; e < hi; ++e)
        for (int j = 0; j < L.degree(); ++j)
            for (auto b : k.prime_basis()) {
                auto c = L.zero();
                c[static_cast<std::size_t>(j)] = b;
                out.push_back({place, e, c});
            }
    return out;
}

std::vector<std::vector<gf_elem>> subset_rows(const std::vector<Monomial>& basis, const std::vector<bool>& keep) {
    std::vector<std::vector<gf_elem>> rows;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!keep[i]) continue;
        std::vector<gf_elem> r(basis.size(), 0);
        r[i] = 1;
        rows.push_back(std::move(r));
    }
    return rows;
}

bool same_span(const GaloisField& fp, const Matrix<GaloisField>& a, const Matrix<GaloisField>& b) {
    const auto ra = a.empty() ? 0 : linalg::rank(fp, a);
    const auto rb = b.empty() ? 0 : linalg::rank(fp, b);
    Matrix<GaloisField> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const auto rab = both.empty() ? 0 : linalg::rank(fp, both);
    return ra == rb && rb == rab;
}

}  // namespace

gf_elem residue_at(const GlobalField& K, const RationalFunction& f, const Place& P) {
    K.check_place(P);
    const auto& ff = K.ff();
    if (!is_infinite(P) && !std::holds_alternative<PolyPlace>(P)) throw std::invalid_argument("residue_at: not a place of F_q(t)");
    LocalField L = residue_field_of(ff, P);
    auto s = expand_at(ff, L, f, P, is_infinite(P) ? 2 : 0);
    return residue_of_series(L, s, is_infinite(P));
}

gf_elem residue_sum_defect(const GlobalField& K, const RationalFunction& f) {
    const auto& ff = K.ff();
    const auto& k = ff.constants();
    gf_elem total = k.zero();
    if (poly::deg(f.den) >= 1)
        for (auto& fac : poly::factor(k, f.den)) total = k.add(total, residue_at(K, f, PolyPlace{fac.poly}));
    total = k.add(total, residue_at(K, f, InfinitePlace{}));
    return total;
}

std::complex<double> psi(const GaloisField& k, gf_elem x) {
    const double a = 2 * std::numbers::pi * static_cast<double>(k.trace_to_prime(x)) / static_cast<double>(k.characteristic());
    return {std::cos(a), std::sin(a)};
}

TruncationWindow make_window(const std::vector<Place>& places, long lo, long hi) {
    TruncationWindow W;
    W.places = places;
    for (const auto& v : places) {
        W.lower += single_place(v, lo);
        W.upper += single_place(v, hi);
    }
    return W;
}

PerpReport perp_in_window(const GlobalField& K, const TruncationWindow& W, const RepleteDivisor& Dp) {
    const auto& ff = K.ff();
    const auto& k = ff.constants();
    const GaloisField fp(k.characteristic());
    const RepleteDivisor kappa = different_divisor(K);

    std::set<Place> in_window(W.places.begin(), W.places.end());
    if (in_window.size() != W.places.size()) throw std::invalid_argument("perp_in_window: repeated window place");
    if (in_window.count(InfinitePlace{}) == 0) throw std::invalid_argument("perp_in_window: the window must contain the place at infinity");
    for (const auto* D : {&W.lower, &W.upper, &Dp}) {
        if (!D->arch.empty()) throw std::invalid_argument("perp_in_window: archimedean coefficients on a function field");
        for (const auto& [v, n] : D->finite)
            if (in_window.count(v) == 0) throw std::invalid_argument("perp_in_window: divisor supported outside the window");
    }
    for (const auto& v : W.places) {
        K.check_place(v);
        if (!(W.lower.coeff(v) <= Dp.coeff(v) && Dp.coeff(v) <= W.upper.coeff(v)))
            throw std::invalid_argument("perp_in_window: D' must satisfy lower <= D' <= upper; enlarge the window");
    }

    std::vector<LocalField> fields;
    for (const auto& v : W.places) fields.push_back(residue_field_of(ff, v));

    // V: exponents [-e, -d); V': exponents [d - kappa, e - kappa).
    std::vector<Monomial> vb, wb;
    std::vector<bool> in_image, in_expected;
    for (std::size_t i = 0; i < W.places.size(); ++i) {
        const auto& v = W.places[i];
        const long d = W.lower.coeff(v), e = W.upper.coeff(v), dp = Dp.coeff(v), kv = kappa.coeff(v);
        for (auto& m : monomials(k, fields[i], i, -e, -d)) {
            in_image.push_back(m.exponent >= -dp);
            vb.push_back(std::move(m));
        }
        for (auto& m : monomials(k, fields[i], i, d - kv, e - kv)) {
            in_expected.push_back(m.exponent >= dp - kv);
            wb.push_back(std::move(m));
        }
    }

    // Gram matrix of the F_p-bilinear residue pairing.
    Matrix<GaloisField> G(vb.size(), std::vector<gf_elem>(wb.size(), 0));
    for (std::size_t a = 0; a < vb.size(); ++a)
        for (std::size_t b = 0; b < wb.size(); ++b) {
            if (vb[a].place != wb[b].place) continue;
            const auto& L = fields[vb[a].place];
            LaurentSeries x{static_cast<int>(vb[a].exponent), {vb[a].coeff}};
            LaurentSeries y{static_cast<int>(wb[b].exponent), {wb[b].coeff}};
            const bool inf = is_infinite(W.places[vb[a].place]);
            G[a][b] = k.trace_to_prime(residue_of_series(L, series_mul(L, x, y), inf));
        }

    PerpReport r;
    r.dim_v = static_cast<long>(vb.size());
    r.dim_v_dual = static_cast<long>(wb.size());
    r.pairing_rank = G.empty() || wb.empty() ? 0 : static_cast<long>(linalg::rank(fp, G));
    r.nondegenerate = r.pairing_rank == r.dim_v && r.pairing_rank == r.dim_v_dual;

    Matrix<GaloisField> image_rows;
    for (std::size_t a = 0; a < vb.size(); ++a)
        if (in_image[a]) image_rows.push_back(G[a]);
    r.dim_image = static_cast<long>(image_rows.size());
    auto perp = linalg::nullspace(fp, image_rows, wb.size());
    r.dim_perp = static_cast<long>(perp.size());
    auto expected = subset_rows(wb, in_expected);
    r.dim_expected = static_cast<long>(expected.size());
    r.perp_match = same_span(fp, perp, expected);

    // (perp)^perp inside V.
    Matrix<GaloisField> back;
    for (const auto& b : perp) {
        std::vector<gf_elem> row(vb.size(), 0);
        for (std::size_t a = 0; a < vb.size(); ++a) {
            gf_elem s = 0;
            for (std::size_t j = 0; j < wb.size(); ++j) s = fp.add(s, fp.mul(G[a][j], b[j]));
            row[a] = s;
        }
        back.push_back(std::move(row));
    }
    auto double_perp = linalg::nullspace(fp, back, vb.size());
    r.double_perp_match = same_span(fp, double_perp, subset_rows(vb, in_image));

    for (const auto& b : perp) r.perp_basis.emplace_back(b.begin(), b.end());
    return r;
}

CharacterCount h1_character_count(const GlobalField& K, const RepleteDivisor& D, std::uint64_t enumeration_limit) {
    const RepleteDivisor dual = different_divisor(K) - D;
    CharacterCount c;
    auto e = h0_ff_enumerate(K, dual, enumeration_limit);
    c.enumerated = e.has_value();
    c.log_q = e ? *e : h0_ff_linear(K, dual);
    c.count = 1;
    for (long i = 0; i < c.log_q; ++i) c.count *= K.q();
    return c;
}

}  // namespace adelic
