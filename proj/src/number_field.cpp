#include "adelic/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "adelic/galois_field.hpp"
#include "adelic/poly.hpp"

namespace adelic {

namespace {

using cld = std::complex<long double>;

Poly<GaloisField> reduce_mod(const GaloisField& k, const ZPoly& a) {
    Poly<GaloisField> r(a.size());
    const auto p = static_cast<long>(k.characteristic());
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_class m = a[i] % p;
        long v = m.get_si();
        r[i] = k.from_int(v);
    }
    poly::trim(k, r);
    return r;
}

ZPoly lift(const Poly<GaloisField>& a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
    return r;
}

mpz_class eval_exact(const ZPoly& f, const mpz_class& x) {
    mpz_class r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
    return r;
}

bool has_rational_root(const ZPoly& f) {
    if (f[0] == 0) return true;
    // Monic: rational roots are integer divisors of the constant term.
    std::vector<mpz_class> divisors{1};
    for (auto& [p, e] : factor_integer(f[0])) {
        std::vector<mpz_class> next;
        for (const auto& d : divisors) {
            mpz_class pk = 1;
            for (int i = 0; i <= e; ++i) {
                next.push_back(d * pk);
                pk *= p;
            }
        }
        divisors = std::move(next);
    }
    for (const auto& d : divisors)
        if (eval_exact(f, d) == 0 || eval_exact(f, -d) == 0) return true;
    return false;
}

// Degree-pattern test: a factor of degree d over Q gives a subset of factor
// degrees summing to d modulo every good prime.
bool degree_patterns_certify(const ZPoly& f, const mpz_class& disc) {
    const int n = zpoly::deg(f);
    std::set<int> possible;
    for (int d = 1; d < n; ++d) possible.insert(d);
    for (long p = 2; p < 600 && !possible.empty(); ++p) {
        if (!is_prime(static_cast<std::uint64_t>(p)) || mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p)) != 0)
            continue;
        GaloisField k(static_cast<std::uint64_t>(p));
        std::set<int> sums{0};
        for (auto& fac : poly::factor(k, reduce_mod(k, f))) {
            for (int i = 0; i < fac.multiplicity; ++i) {
                std::set<int> next = sums;
                for (int s : sums) next.insert(s + poly::deg(fac.poly));
                sums = std::move(next);
            }
        }
        std::set<int> kept;
        for (int d : possible)
            if (sums.count(d) != 0) kept.insert(d);
        possible = std::move(kept);
    }
    return possible.empty();
}

std::vector<cld> polynomial_roots(const ZPoly& f) {
    const int n = zpoly::deg(f);
    std::vector<cld> z(static_cast<std::size_t>(n));
    long double bound = 1;
    for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::fabs(static_cast<long double>(f[static_cast<std::size_t>(i)].get_d())));
    const cld seed(0.4L, 0.9L);
    cld w = 1;
    for (int i = 0; i < n; ++i) {
        w *= seed;
        z[static_cast<std::size_t>(i)] = w * (bound / 2);
    }
    // Aberth iteration.
    const ZPoly df = zpoly::derivative(f);
    for (int iter = 0; iter < 500; ++iter) {
        long double change = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            cld fz = zpoly::eval(f, z[i]);
            cld dz = zpoly::eval(df, z[i]);
            if (std::abs(fz) == 0) continue;
            cld ratio = fz / dz;
            cld sum = 0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) sum += 1.0L / (z[i] - z[j]);
            cld step = ratio / (1.0L - ratio * sum);
            z[i] -= step;
            change = std::max(change, std::abs(step) / (1 + std::abs(z[i])));
        }
        if (change < 1e-19L) break;
    }
    for (auto& r : z) {
        for (int i = 0; i < 5; ++i) {
            cld dz = zpoly::eval(df, r);
            if (std::abs(dz) == 0) break;
            r -= zpoly::eval(f, r) / dz;
        }
    }
    return z;
}

}  // namespace

double PrimePlace::log_residue_card() const { return static_cast<double>(f) * std::log(static_cast<double>(p)); }

NumberField::NumberField(ZPoly min_poly, bool assume_irreducible) : min_poly_(std::move(min_poly)) {
    zpoly::trim(min_poly_);
    if (zpoly::deg(min_poly_) < 1) throw std::invalid_argument("NumberField: minimal polynomial must have positive degree");
    if (min_poly_.back() != 1) throw std::invalid_argument("NumberField: minimal polynomial must be monic");
    const int n = degree();
    disc_ = zpoly::discriminant(min_poly_);
    if (disc_ == 0) throw std::invalid_argument("NumberField: minimal polynomial is not square-free");

    if (n == 1) {
        certified_ = true;
    } else if (has_rational_root(min_poly_)) {
        throw std::invalid_argument("NumberField: minimal polynomial has a rational root");
    } else if (n <= 3) {
        certified_ = true;
    } else {
        certified_ = degree_patterns_certify(min_poly_, disc_);
    }
    if (!certified_ && !assume_irreducible)
        throw std::invalid_argument("NumberField: irreducibility not certified; pass assume_irreducible to proceed");

    auto z = polynomial_roots(min_poly_);
    std::vector<cld> real, upper, lower;
    for (auto r : z) {
        long double tol = 1e-14L * (1 + std::abs(r));
        if (std::fabs(r.imag()) <= tol)
            real.emplace_back(r.real(), 0.0L);
        else if (r.imag() > 0)
            upper.push_back(r);
        else
            lower.push_back(r);
    }
    if (upper.size() != lower.size() || real.size() + 2 * upper.size() != static_cast<std::size_t>(n))
        throw std::runtime_error("NumberField: root isolation failed to pair conjugates");
    std::sort(real.begin(), real.end(), [](cld a, cld b) { return a.real() < b.real(); });
    std::sort(upper.begin(), upper.end(), [](cld a, cld b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
    // Sign of the discriminant is (-1)^{r2}.
    if ((upper.size() % 2 == 0) != (disc_ > 0)) throw std::runtime_error("NumberField: signature inconsistent with discriminant sign");
    r1_ = static_cast<int>(real.size());
    r2_ = static_cast<int>(upper.size());
    roots_ = real;
    roots_.insert(roots_.end(), upper.begin(), upper.end());
    for (std::size_t i = 0; i < roots_.size(); ++i)
        for (std::size_t j = i + 1; j < roots_.size(); ++j)
            if (std::abs(roots_[i] - roots_[j]) < 1e-12L) throw std::runtime_error("NumberField: roots not separated");
}

std::vector<PrimePlace> NumberField::places_above(long p) const {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("places_above: " + std::to_string(p) + " is not prime");
    if (p > 2147483647L) throw std::invalid_argument("places_above: prime too large");
    GaloisField k(static_cast<std::uint64_t>(p));
    auto fbar = reduce_mod(k, min_poly_);
    auto factors = poly::factor(k, fbar);

    // Dedekind criterion: with G = prod lift(g_i)^{e_i}, p divides the index
    // iff some g_i with e_i >= 2 divides ((f - G)/p mod p).
    ZPoly prod{1};
    for (auto& fac : factors)
        for (int i = 0; i < fac.multiplicity; ++i) prod = zpoly::mul(prod, lift(fac.poly));
    ZPoly diff = zpoly::sub(min_poly_, prod);
    for (auto& c : diff) mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
    auto fbar_excess = reduce_mod(k, diff);

    std::vector<PrimePlace> out;
    int idx = 0;
    for (auto& fac : factors) {
        PrimePlace pl;
        pl.p = p;
        pl.factor.assign(fac.poly.begin(), fac.poly.end());
        pl.e = fac.multiplicity;
        pl.f = poly::deg(fac.poly);
        pl.index = idx++;
        pl.order_level = fac.multiplicity >= 2 && (fbar_excess.empty() || poly::rem(k, fbar_excess, fac.poly).empty());
        auto h = poly::exact_div(k, fbar, fac.poly);
        for (auto c : h) pl.beta.push_back(static_cast<long>(c));
        out.push_back(std::move(pl));
    }
    return out;
}

NfElement NumberField::element(std::vector<mpq_class> coeffs) const {
    QPoly a = std::move(coeffs);
    qpoly::trim(a);
    QPoly f(min_poly_.begin(), min_poly_.end());
    if (qpoly::deg(a) >= degree()) a = qpoly::divmod(a, f).second;
    a.resize(static_cast<std::size_t>(degree()));
    return NfElement{std::move(a)};
}

NfElement NumberField::from_int(long n) const { return element({mpq_class(n)}); }

NfElement NumberField::generator() const {
    if (degree() == 1) return element({mpq_class(-min_poly_[0])});
    return element({mpq_class(0), mpq_class(1)});
}

NfElement NumberField::add(const NfElement& a, const NfElement& b) const {
    NfElement r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

NfElement NumberField::sub(const NfElement& a, const NfElement& b) const {
    NfElement r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

NfElement NumberField::mul(const NfElement& a, const NfElement& b) const { return element(qpoly::mul(a.c, b.c)); }

NfElement NumberField::inv(const NfElement& a) const {
    if (is_zero(a)) throw std::domain_error("NumberField: inverse of zero");
    QPoly f(min_poly_.begin(), min_poly_.end());
    auto [g, s] = qpoly::gcd_cofactor(a.c, f);
    if (qpoly::deg(g) != 0) throw std::logic_error("NumberField: element shares a factor with the minimal polynomial");
    return element(s);
}

bool NumberField::is_zero(const NfElement& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](const mpq_class& c) { return c == 0; });
}

mpq_class NumberField::norm(const NfElement& a) const {
    auto [num, den] = qpoly::clear_denominators(a.c);
    mpz_class dn;
    mpz_pow_ui(dn.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(degree()));
    mpq_class r(zpoly::resultant(min_poly_, num), dn);
    r.canonicalize();
    return r;
}

std::complex<long double> NumberField::embed(const NfElement& a, std::size_t root_index) const {
    return qpoly::eval(a.c, roots_.at(root_index));
}

int NumberField::integral_valuation(ZPoly a, const PrimePlace& place, int bound) const {
    ZPoly beta(place.beta.begin(), place.beta.end());
    if (beta.empty()) beta = {1};
    int v = 0;
    for (; v <= bound; ++v) {
        ZPoly c = zpoly::rem_monic(zpoly::mul(a, beta), min_poly_);
        bool divisible = std::all_of(c.begin(), c.end(), [&](const mpz_class& x) {
            return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(place.p)) != 0;
        });
        if (!divisible) return v;
        for (auto& x : c) mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(place.p));
        a = std::move(c);
    }
    throw std::logic_error("NumberField: valuation exceeded the norm bound");
}

int NumberField::valuation(const NfElement& a, const PrimePlace& place) const {
    if (is_zero(a)) throw std::domain_error("NumberField: valuation of zero");
    auto [num, den] = qpoly::clear_denominators(a.c);
    mpz_class n = zpoly::resultant(min_poly_, num);
    const int bound = adelic::valuation(n, mpz_class(place.p)) / place.f;
    const int v_num = integral_valuation(num, place, bound);
    const int v_den = adelic::valuation(den, mpz_class(place.p));
    return v_num - place.e * v_den;
}

std::vector<long> NumberField::support_primes(const NfElement& a) const {
    if (is_zero(a)) throw std::domain_error("NumberField: support of zero");
    auto [num, den] = qpoly::clear_denominators(a.c);
    std::set<long> primes;
    mpz_class n = zpoly::resultant(min_poly_, num);
    for (auto& [p, e] : factor_integer(n)) {
        if (!p.fits_slong_p()) throw std::runtime_error("support_primes: prime too large");
        primes.insert(p.get_si());
    }
    for (auto& [p, e] : factor_integer(den)) primes.insert(p.get_si());
    return {primes.begin(), primes.end()};
}

NfElement NumberField::derivative_at_generator() const {
    ZPoly d = zpoly::derivative(min_poly_);
    std::vector<mpq_class> q(d.begin(), d.end());
    return element(q);
}

}  // namespace adelic
