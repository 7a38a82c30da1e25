#include "adelic/field_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace adelic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const NfElement& as_nf(const FieldElement& x) {
    if (const auto* p = std::get_if<NfElement>(&x)) return *p;
    throw std::invalid_argument("expected a number field element");
}

const RationalFunction& as_ff(const FieldElement& x) {
    if (const auto* p = std::get_if<RationalFunction>(&x)) return *p;
    throw std::invalid_argument("expected a function field element");
}

void check_element(const GlobalField& K, const FieldElement& x) {
    if (K.is_number_field()) {
        const auto& a = as_nf(x);
        if (static_cast<int>(a.c.size()) != K.nf().degree()) throw std::invalid_argument("element does not belong to this number field");
    } else {
        as_ff(x);
    }
}

}  // namespace

GlobalField GlobalField::rational() { return number_field(ZPoly{0, 1}); }

GlobalField GlobalField::number_field(ZPoly min_poly, bool assume_irreducible) {
    GlobalField K;
    K.nf_ = std::make_shared<const NumberField>(std::move(min_poly), assume_irreducible);
    return K;
}

GlobalField GlobalField::function_field(std::uint64_t q) {
    GlobalField K;
    K.ff_ = std::make_shared<const FunctionField>(q);
    return K;
}

const NumberField& GlobalField::nf() const {
    if (!nf_) throw std::invalid_argument("not a number field");
    return *nf_;
}

const FunctionField& GlobalField::ff() const {
    if (!ff_) throw std::invalid_argument("not a function field");
    return *ff_;
}

std::vector<Place> GlobalField::archimedean_places() const {
    std::vector<Place> out;
    if (!nf_) return out;
    for (int i = 0; i < nf_->r1(); ++i) out.emplace_back(RealPlace{i});
    for (int i = 0; i < nf_->r2(); ++i) out.emplace_back(ComplexPlace{i});
    return out;
}

void GlobalField::check_place(const Place& v) const {
    std::visit(overloaded{
                   [&](const PrimePlace& P) {
                       if (!nf_) throw std::invalid_argument("prime place on a function field");
                       auto above = nf_->places_above(P.p);
                       if (std::find(above.begin(), above.end(), P) == above.end())
                           throw std::invalid_argument("place does not belong to this number field");
                   },
                   [&](const PolyPlace& P) {
                       if (!ff_) throw std::invalid_argument("polynomial place on a number field");
                       if (P.poly.empty() || P.poly.back() != ff_->constants().one()) throw std::invalid_argument("place polynomial not monic");
                       for (auto c : P.poly)
                           if (c >= ff_->q()) throw std::invalid_argument("place polynomial has coefficients outside F_q");
                   },
                   [&](const InfinitePlace&) {
                       if (!ff_) throw std::invalid_argument("the place at infinity belongs to function fields only");
                   },
                   [&](const RealPlace& r) {
                       if (!nf_ || r.index < 0 || r.index >= nf_->r1()) throw std::invalid_argument("no such real place");
                   },
                   [&](const ComplexPlace& c) {
                       if (!nf_ || c.index < 0 || c.index >= nf_->r2()) throw std::invalid_argument("no such complex place");
                   },
               },
               v);
}

double GlobalField::log_residue_card(const Place& v) const {
    return std::visit(overloaded{
                          [&](const PrimePlace& P) { return P.log_residue_card(); },
                          [&](const PolyPlace& P) { return static_cast<double>(poly::deg(P.poly)) * std::log(static_cast<double>(q())); },
                          [&](const InfinitePlace&) { return std::log(static_cast<double>(q())); },
                          [&](const RealPlace&) { return 0.0; },
                          [&](const ComplexPlace&) { return 0.0; },
                      },
                      v);
}

int GlobalField::place_degree(const Place& v) const {
    if (const auto* P = std::get_if<PolyPlace>(&v)) return poly::deg(P->poly);
    if (std::holds_alternative<InfinitePlace>(v)) return 1;
    if (const auto* P = std::get_if<PrimePlace>(&v)) return P->f;
    throw std::invalid_argument("degree of an archimedean place");
}

int GlobalField::arch_dimension(const Place& v) const {
    if (std::holds_alternative<RealPlace>(v)) return 1;
    if (std::holds_alternative<ComplexPlace>(v)) return 2;
    throw std::invalid_argument("not an archimedean place");
}

int GlobalField::ramification(const Place& v) const {
    if (const auto* P = std::get_if<PrimePlace>(&v)) return P->e;
    return 1;
}

std::string GlobalField::describe() const {
    if (ff_) return "F_" + std::to_string(ff_->q()) + "(t)";
    if (nf_->degree() == 1) return "Q";
    std::string s = "Q[x]/(";
    const auto& f = nf_->min_poly();
    bool first = true;
    for (int i = zpoly::deg(f); i >= 0; --i) {
        const auto& c = f[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        std::string mag = mpz_class(abs(c)).get_str();
        if (!first) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        if (i == 0 || abs(c) != 1) s += mag;
        if (i > 0) s += i == 1 ? "x" : "x^" + std::to_string(i);
        first = false;
    }
    return s + ")";
}

std::string GlobalField::describe(const Place& v) const {
    return std::visit(overloaded{
                          [&](const PrimePlace& P) {
                              return "P(" + std::to_string(P.p) + "," + std::to_string(P.index) + ")";
                          },
                          [&](const PolyPlace& P) { return "(" + ff().to_string(P.poly) + ")"; },
                          [&](const InfinitePlace&) { return std::string("inf"); },
                          [&](const RealPlace& r) { return "real" + std::to_string(r.index); },
                          [&](const ComplexPlace& c) { return "complex" + std::to_string(c.index); },
                      },
                      v);
}

void RepleteDivisor::normalize() {
    std::erase_if(finite, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(arch, [](const auto& kv) { return kv.second == 0.0; });
}

RepleteDivisor& RepleteDivisor::operator+=(const RepleteDivisor& o) {
    for (const auto& [v, n] : o.finite) finite[v] += n;
    for (const auto& [v, t] : o.arch) arch[v] += t;
    normalize();
    return *this;
}

RepleteDivisor& RepleteDivisor::operator-=(const RepleteDivisor& o) { return *this += -o; }

RepleteDivisor RepleteDivisor::operator-() const {
    RepleteDivisor r = *this;
    for (auto& [v, n] : r.finite) n = -n;
    for (auto& [v, t] : r.arch) t = -t;
    return r;
}

long RepleteDivisor::coeff(const Place& v) const {
    auto it = finite.find(v);
    return it == finite.end() ? 0 : it->second;
}

double RepleteDivisor::arch_coeff(const Place& v) const {
    auto it = arch.find(v);
    return it == arch.end() ? 0.0 : it->second;
}

RepleteDivisor single_place(const Place& v, long n) {
    RepleteDivisor D;
    if (n != 0) D.finite[v] = n;
    return D;
}

bool is_zero(const GlobalField& K, const FieldElement& x) {
    if (K.is_number_field()) return K.nf().is_zero(as_nf(x));
    return K.ff().is_zero(as_ff(x));
}

FieldElement field_mul(const GlobalField& K, const FieldElement& a, const FieldElement& b) {
    if (K.is_number_field()) return K.nf().mul(as_nf(a), as_nf(b));
    return K.ff().mul(as_ff(a), as_ff(b));
}

FieldElement field_inv(const GlobalField& K, const FieldElement& a) {
    if (K.is_number_field()) return K.nf().inv(as_nf(a));
    return K.ff().inv(as_ff(a));
}

FieldElement field_one(const GlobalField& K) {
    if (K.is_number_field()) return K.nf().one();
    return K.ff().one();
}

std::string to_string(const GlobalField& K, const FieldElement& x) {
    if (K.is_function_field()) return K.ff().to_string(as_ff(x));
    const auto& a = as_nf(x);
    std::string s;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += a.c[i].get_str();
        if (i > 0) s += i == 1 ? "*x" : "*x^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

int valuation(const GlobalField& K, const FieldElement& x, const Place& v) {
    check_element(K, x);
    if (is_zero(K, x)) throw std::domain_error("valuation of zero");
    return std::visit(overloaded{
                          [&](const PrimePlace& P) { return K.nf().valuation(as_nf(x), P); },
                          [&](const PolyPlace& P) { return K.ff().valuation(as_ff(x), P); },
                          [&](const InfinitePlace& i) { return K.ff().valuation(as_ff(x), i); },
                          [&](const RealPlace&) -> int { throw std::invalid_argument("valuation at an archimedean place"); },
                          [&](const ComplexPlace&) -> int { throw std::invalid_argument("valuation at an archimedean place"); },
                      },
                      v);
}

long double log_module_at_place(const GlobalField& K, const FieldElement& x, const Place& v) {
    K.check_place(v);
    check_element(K, x);
    if (is_zero(K, x)) return -std::numeric_limits<long double>::infinity();
    if (const auto* r = std::get_if<RealPlace>(&v)) {
        auto z = K.nf().embed(as_nf(x), static_cast<std::size_t>(r->index));
        return std::log(std::fabs(z.real()));
    }
    if (const auto* c = std::get_if<ComplexPlace>(&v)) {
        auto z = K.nf().embed(as_nf(x), static_cast<std::size_t>(K.nf().r1() + c->index));
        return std::log(std::norm(z));
    }
    return -static_cast<long double>(valuation(K, x, v)) * static_cast<long double>(K.log_residue_card(v));
}

double module_at_place(const GlobalField& K, const FieldElement& x, const Place& v) {
    K.check_place(v);
    check_element(K, x);
    if (is_zero(K, x)) return 0.0;
    if (const auto* r = std::get_if<RealPlace>(&v)) {
        auto z = K.nf().embed(as_nf(x), static_cast<std::size_t>(r->index));
        return static_cast<double>(std::fabs(z.real()));
    }
    if (const auto* c = std::get_if<ComplexPlace>(&v)) {
        auto z = K.nf().embed(as_nf(x), static_cast<std::size_t>(K.nf().r1() + c->index));
        return static_cast<double>(std::norm(z));
    }
    const int n = valuation(K, x, v);
    if (K.is_function_field())
        return std::pow(static_cast<double>(K.q()), -static_cast<double>(K.place_degree(v)) * n);
    const auto& P = std::get<PrimePlace>(v);
    return std::pow(static_cast<double>(P.p), -static_cast<double>(P.f) * n);
}

std::vector<Place> finite_support(const GlobalField& K, const FieldElement& x) {
    check_element(K, x);
    if (is_zero(K, x)) throw std::domain_error("support of zero");
    std::vector<Place> out;
    if (K.is_function_field()) {
        const auto& f = as_ff(x);
        for (auto& P : K.ff().finite_support(f)) out.emplace_back(P);
        if (K.ff().valuation(f, InfinitePlace{}) != 0) out.emplace_back(InfinitePlace{});
        return out;
    }
    const auto& a = as_nf(x);
    for (long p : K.nf().support_primes(a))
        for (auto& P : K.nf().places_above(p))
            if (K.nf().valuation(a, P) != 0) out.emplace_back(P);
    return out;
}

long product_formula_exponent(const GlobalField& K, const FieldElement& x) {
    long total = 0;
    for (const auto& v : finite_support(K, x)) total += static_cast<long>(K.place_degree(v)) * valuation(K, x, v);
    return total;
}

double product_formula_defect(const GlobalField& K, const FieldElement& x) {
    if (is_zero(K, x)) throw std::domain_error("product formula: zero element");
    if (K.is_function_field()) return std::pow(static_cast<double>(K.q()), -static_cast<double>(product_formula_exponent(K, x)));
    long double prod = 1;
    for (const auto& v : finite_support(K, x)) prod *= static_cast<long double>(module_at_place(K, x, v));
    for (const auto& v : K.archimedean_places()) {
        const auto& a = as_nf(x);
        if (const auto* r = std::get_if<RealPlace>(&v))
            prod *= std::fabs(K.nf().embed(a, static_cast<std::size_t>(r->index)).real());
        else
            prod *= std::norm(K.nf().embed(a, static_cast<std::size_t>(K.nf().r1() + std::get<ComplexPlace>(v).index)));
    }
    return static_cast<double>(prod);
}

RepleteDivisor replete_divisor_of(const GlobalField& K, const FieldElement& x) {
    if (is_zero(K, x)) throw std::domain_error("replete divisor of zero");
    RepleteDivisor D;
    for (const auto& v : finite_support(K, x)) D.finite[v] = -valuation(K, x, v);
    for (const auto& v : K.archimedean_places()) D.arch[v] = static_cast<double>(log_module_at_place(K, x, v));
    D.normalize();
    return D;
}

double log_module(const GlobalField& K, const RepleteDivisor& D) {
    long double s = 0;
    for (const auto& [v, n] : D.finite) s += static_cast<long double>(n) * K.log_residue_card(v);
    for (const auto& [v, t] : D.arch) s += t;
    return static_cast<double>(s);
}

long degree(const GlobalField& K, const RepleteDivisor& D) {
    if (!D.arch.empty()) throw std::invalid_argument("degree of a divisor with archimedean part");
    long d = 0;
    for (const auto& [v, n] : D.finite) d += static_cast<long>(K.place_degree(v)) * n;
    return d;
}

RepleteDivisor different_divisor(const GlobalField& K) {
    RepleteDivisor D;
    if (K.is_function_field()) {
        D.finite[InfinitePlace{}] = 2 * K.genus() - 2;
        return D;
    }
    const auto& nf = K.nf();
    const auto d = nf.derivative_at_generator();
    for (long p : nf.support_primes(d))
        for (auto& P : nf.places_above(p)) {
            int v = nf.valuation(d, P);
            if (v != 0) D.finite[P] = v;
        }
    return D;
}

double log_abs_k(const GlobalField& K) { return -log_module(K, different_divisor(K)); }

}  // namespace adelic
