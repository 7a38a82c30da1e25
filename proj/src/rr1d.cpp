#include "adelic/rr1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adelic {

namespace {

struct FfDivisor {
    long n_inf = 0;
    std::vector<std::pair<PolyPlace, long>> finite;
};

FfDivisor split(const GlobalField& K, const RepleteDivisor& D) {
    if (!K.is_function_field()) throw std::invalid_argument("expected a function field divisor");
    if (!D.arch.empty()) throw std::invalid_argument("function field divisors have no archimedean part");
    FfDivisor out;
    for (const auto& [v, n] : D.finite) {
        K.check_place(v);
        if (std::holds_alternative<InfinitePlace>(v))
            out.n_inf = n;
        else
            out.finite.emplace_back(std::get<PolyPlace>(v), n);
    }
    return out;
}

// L(D) = { N * B / S : deg B <= bound }, S = prod_{n>0} P^n, N = prod_{n<0} P^{-n}.
struct RrShape {
    FqPoly S, N;
    long bound;  // on deg(N * B)
};

RrShape rr_shape(const GlobalField& K, const FfDivisor& d) {
    const auto& k = K.ff().constants();
    RrShape s{{k.one()}, {k.one()}, 0};
    for (const auto& [P, n] : d.finite) {
        if (n > 0) s.S = poly::mul(k, s.S, poly::pow(k, P.poly, static_cast<unsigned>(n)));
        if (n < 0) s.N = poly::mul(k, s.N, poly::pow(k, P.poly, static_cast<unsigned>(-n)));
    }
    s.bound = d.n_inf + poly::deg(s.S);
    return s;
}

std::vector<RationalFunction> rr_basis(const GlobalField& K, const RepleteDivisor& D) {
    const auto& ff = K.ff();
    const auto& k = ff.constants();
    auto shape = rr_shape(K, split(K, D));
    std::vector<RationalFunction> out;
    for (long j = 0; j + poly::deg(shape.N) <= shape.bound; ++j)
        out.push_back(ff.make(poly::mul(k, shape.N, poly::monomial(k, k.one(), static_cast<int>(j))), shape.S));
    return out;
}

int poly_valuation(const GaloisField& k, FqPoly a, const FqPoly& P) {
    int v = 0;
    for (;;) {
        auto [q, r] = poly::divmod(k, a, P);
        if (!r.empty()) return v;
        a = std::move(q);
        ++v;
    }
}

// Window of V = A(E)/A(D): per place, exponents [-e, -d) of the local parameter.
struct WindowPlace {
    Place place;
    long d, e;
};

std::vector<gf_elem> window_coordinates(const GlobalField& K, const RationalFunction& f, const std::vector<WindowPlace>& w) {
    const auto& ff = K.ff();
    std::vector<gf_elem> out;
    for (const auto& wp : w) {
        const int max_exp = static_cast<int>(-wp.d);
        LocalField L = std::holds_alternative<InfinitePlace>(wp.place) ? ff.residue_field(InfinitePlace{})
                                                                        : ff.residue_field(std::get<PolyPlace>(wp.place));
        LaurentSeries s = std::holds_alternative<InfinitePlace>(wp.place)
                              ? ff.expand(L, f, InfinitePlace{}, max_exp)
                              : ff.expand(L, f, std::get<PolyPlace>(wp.place), max_exp);
        if (s.start < -wp.e) throw std::logic_error("window_coordinates: element does not lie in A(E)");
        for (long i = -wp.e; i < -wp.d; ++i) {
            auto c = s.coeff(L, static_cast<int>(i));
            out.insert(out.end(), c.begin(), c.end());
        }
    }
    return out;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::counting: return "counting";
        case Method::theta: return "theta";
        case Method::duality: return "duality";
        case Method::quotient: return "quotient";
        case Method::formula: return "formula";
    }
    return "unknown";
}

double f_alpha_eval(const GlobalField& K, const RepleteDivisor& D, const FieldElement& u) {
    if (is_zero(K, u)) return 1.0;
    for (const auto& [v, n] : D.finite) K.check_place(v);
    for (const auto& v : finite_support(K, u))
        if (valuation(K, u, v) < -D.coeff(v)) return 0.0;
    if (K.is_function_field()) return 1.0;
    long double expo = 0;
    const auto pi = std::numbers::pi_v<long double>;
    for (const auto& v : K.archimedean_places()) {
        long double t = D.arch_coeff(v);
        long double m = std::exp(log_module_at_place(K, u, v) - t);  // |alpha_v^{-1} u|_v
        if (std::holds_alternative<RealPlace>(v))
            expo += pi * m * m;
        else
            expo += 2 * pi * m;
    }
    return static_cast<double>(std::exp(-expo));
}

long h0_ff_formula(const GlobalField& K, const RepleteDivisor& D) {
    split(K, D);
    const long d = degree(K, D);
    return d >= 0 ? d + 1 - K.genus() : 0;
}

long h0_ff_linear(const GlobalField& K, const RepleteDivisor& D) {
    const auto& k = K.ff().constants();
    auto shape = rr_shape(K, split(K, D));
    if (shape.bound < 0) return 0;
    const int dn = poly::deg(shape.N);
    if (dn == 0) return shape.bound + 1;
    // Kernel of B -> B mod N on polynomials of degree <= bound.
    Matrix<GaloisField> m;
    for (long j = 0; j <= shape.bound; ++j) {
        auto r = poly::rem(k, poly::monomial(k, k.one(), static_cast<int>(j)), shape.N);
        r.resize(static_cast<std::size_t>(dn), k.zero());
        m.push_back(r);
    }
    return shape.bound + 1 - static_cast<long>(linalg::rank(k, m));
}

std::optional<long> h0_ff_enumerate(const GlobalField& K, const RepleteDivisor& D, std::uint64_t limit) {
    const auto& k = K.ff().constants();
    const auto d = split(K, D);
    auto shape = rr_shape(K, d);
    if (shape.bound < 0) return 0;
    const std::uint64_t q = k.size();
    std::uint64_t total = 1;
    for (long i = 0; i <= shape.bound; ++i) {
        if (total > limit / q) return std::nullopt;
        total *= q;
    }
    const int deg_s = poly::deg(shape.S);
    std::uint64_t count = 0;
    FqPoly a(static_cast<std::size_t>(shape.bound) + 1, k.zero());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t r = idx;
        for (auto& c : a) {
            c = k.element(r % q);
            r /= q;
        }
        FqPoly A = a;
        poly::trim(k, A);
        if (A.empty()) {
            ++count;
            continue;
        }
        // A / S must satisfy v_P >= -n_P everywhere and v_inf >= -n_inf.
        bool ok = deg_s - poly::deg(A) >= -d.n_inf;
        for (const auto& [P, n] : d.finite) {
            if (!ok) break;
            const long vs = n > 0 ? n : 0;
            ok = poly_valuation(k, A, P.poly) - vs >= -n;
        }
        if (ok) ++count;
    }
    long dim = 0;
    for (std::uint64_t c = count; c > 1; c /= q) {
        if (c % q != 0) throw std::logic_error("h0_ff_enumerate: count is not a power of q");
        ++dim;
    }
    return dim;
}

long h0_ff(const GlobalField& K, const RepleteDivisor& D, std::uint64_t enumeration_limit) {
    const long formula = h0_ff_formula(K, D);
    const long linear = h0_ff_linear(K, D);
    if (formula != linear)
        throw std::logic_error("h0: dimension formula " + std::to_string(formula) + " disagrees with linear algebra " + std::to_string(linear));
    if (enumeration_limit > 0) {
        auto e = h0_ff_enumerate(K, D, enumeration_limit);
        if (e && *e != linear) throw std::logic_error("h0: enumeration disagrees with linear algebra");
    }
    return linear;
}

long h1_ff_duality(const GlobalField& K, const RepleteDivisor& D, std::uint64_t enumeration_limit) {
    return h0_ff(K, different_divisor(K) - D, enumeration_limit);
}

long h1_ff_quotient(const GlobalField& K, const RepleteDivisor& D, int max_steps) {
    split(K, D);
    const Place inf = InfinitePlace{};
    const Place t0 = PolyPlace{{K.ff().constants().zero(), K.ff().constants().one()}};
    RepleteDivisor E = D;
    const RepleteDivisor step = single_place(inf, 1) + single_place(t0, 1);
    std::vector<long> counts;
    for (int s = 0; s < max_steps; ++s) {
        std::vector<WindowPlace> window;
        long dim_v = 0;
        for (const auto& [v, e] : E.finite) {
            const long d = D.coeff(v);
            if (e > d) {
                window.push_back({v, d, e});
                dim_v += (e - d) * K.place_degree(v);
            }
        }
        long rank = 0;
        if (dim_v > 0) {
            Matrix<GaloisField> m;
            for (const auto& f : rr_basis(K, E)) m.push_back(window_coordinates(K, f, window));
            rank = static_cast<long>(linalg::rank(K.ff().constants(), m));
        }
        counts.push_back(dim_v - rank);
        const auto c = counts.size();
        if (c >= 3 && counts[c - 1] == counts[c - 2] && counts[c - 2] == counts[c - 3]) return counts.back();
        E += step;
    }
    throw std::runtime_error("h1_by_quotient: count did not stabilize");
}

long chi_ff(const GlobalField& K, const RepleteDivisor& D) { return h0_ff(K, D, 0) - h1_ff_quotient(K, D); }

long chi_formula_ff(const GlobalField& K, const RepleteDivisor& D) { return degree(K, D) + 1 - K.genus(); }

double theta_h0(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params) {
    if (!K.is_number_field()) throw std::invalid_argument("theta_h0 requires a number field");
    auto L = ideal_lattice(K, D);
    return static_cast<double>(theta_sum(L.embedding, params).log_sum);
}

double h0(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params) {
    if (K.is_function_field()) return static_cast<double>(h0_ff(K, D, 0)) * std::log(static_cast<double>(K.q()));
    return theta_h0(K, D, params);
}

double h1_by_duality(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params) {
    return h0(K, different_divisor(K) - D, params);
}

double h1_by_quotient(const GlobalField& K, const RepleteDivisor& D) {
    return static_cast<double>(h1_ff_quotient(K, D)) * std::log(static_cast<double>(K.q()));
}

double chi(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params) {
    if (K.is_function_field()) return static_cast<double>(chi_ff(K, D)) * std::log(static_cast<double>(K.q()));
    return h0(K, D, params) - h1_by_duality(K, D, params);
}

double chi_formula(const GlobalField& K, const RepleteDivisor& D) {
    if (K.is_function_field()) return static_cast<double>(chi_formula_ff(K, D)) * std::log(static_cast<double>(K.q()));
    return log_module(K, D) + 0.5 * log_abs_k(K);
}

double rr_identity_defect(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params) {
    if (K.is_function_field()) {
        long defect = (chi_ff(K, D) - chi_ff(K, {})) - degree(K, D);
        return static_cast<double>(defect) * std::log(static_cast<double>(K.q()));
    }
    return (chi(K, D, params) - chi(K, {}, params)) - log_module(K, D);
}

double theta_duality_defect(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params) {
    return theta_h0(K, D, params) - theta_h0(K, different_divisor(K) - D, params) - (log_module(K, D) + 0.5 * log_abs_k(K));
}

HReport h_report(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params) {
    HReport r;
    if (K.is_function_field()) {
        const double lq = std::log(static_cast<double>(K.q()));
        r.logq_units = true;
        r.h0_logq = h0_ff(K, D, 0);
        r.h1_logq = h1_ff_quotient(K, D);
        r.chi_logq = r.h0_logq - r.h1_logq;
        r.h0 = static_cast<double>(r.h0_logq) * lq;
        r.h1 = static_cast<double>(r.h1_logq) * lq;
        r.chi = static_cast<double>(r.chi_logq) * lq;
        r.h0_method = Method::counting;
        r.h1_method = Method::quotient;
        r.chi_method = Method::counting;
        return r;
    }
    r.h0 = theta_h0(K, D, params);
    r.h1 = h1_by_duality(K, D, params);
    r.chi = r.h0 - r.h1;
    r.h0_method = Method::theta;
    r.h1_method = Method::duality;
    r.chi_method = Method::theta;
    return r;
}

double h_new_shift(const GlobalField& K) {
    if (K.is_function_field()) return K.genus() * std::log(static_cast<double>(K.q()));
    return 0.5 * std::log(std::fabs(K.nf().discriminant().get_d()));
}

HReport h_new(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params) {
    HReport r = h_report(K, D, params);
    r.shift = h_new_shift(K);
    r.h0 -= r.shift;
    r.h1 -= r.shift;
    if (r.logq_units) {
        r.h0_logq -= K.genus();
        r.h1_logq -= K.genus();
    }
    return r;
}

}  // namespace adelic
