#include "adelic/galois_field.hpp"

#include <stdexcept>

namespace adelic {

namespace {

constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 20;

std::vector<std::uint32_t> digits(std::uint64_t a, std::uint32_t p, int m) {
    std::vector<std::uint32_t> d(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(a % p);
        a /= p;
    }
    return d;
}

std::uint64_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    std::uint64_t a = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
    return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<std::uint32_t, int> prime_power_decomposition(std::uint64_t q) {
    if (q < 2) return {0, 0};
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;
    int m = 0;
    while (q % p == 0) {
        q /= p;
        ++m;
    }
    if (q != 1 || p > 0xffffffffULL) return {0, 0};
    return {static_cast<std::uint32_t>(p), m};
}

GaloisField::GaloisField(std::uint64_t q) : q_(q) {
    auto [p, m] = prime_power_decomposition(q);
    if (p == 0) throw std::invalid_argument("GaloisField: " + std::to_string(q) + " is not a prime power");
    p_ = p;
    m_ = m;
    if (m_ == 1) return;
    if (q_ > kMaxTableSize) throw std::invalid_argument("GaloisField: q too large for a table field");

    // Deterministic search for a primitive modulus x^m + c_{m-1} x^{m-1} + ... + c_0.
    const auto mm = static_cast<std::size_t>(m_);
    for (std::uint64_t code = 1; code < q_; ++code) {
        auto c = digits(code, p_, m_);
        if (c[0] == 0) continue;
        std::vector<elem> table;
        table.reserve(q_ - 1);
        std::vector<std::uint32_t> cur(mm, 0);
        cur[0] = 1;
        bool primitive = true;
        for (std::uint64_t i = 0; i + 1 < q_; ++i) {
            auto enc = static_cast<elem>(undigits(cur, p_));
            if (i > 0 && enc == 1) {
                primitive = false;
                break;
            }
            table.push_back(enc);
            // cur <- cur * x mod modulus
            std::uint32_t top = cur[mm - 1];
            for (std::size_t j = mm - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            for (std::size_t j = 0; j < mm; ++j) {
                std::uint64_t sub = (static_cast<std::uint64_t>(top) * c[j]) % p_;
                cur[j] = static_cast<std::uint32_t>((cur[j] + p_ - sub) % p_);
            }
        }
        if (!primitive || undigits(cur, p_) != 1) continue;
        exp_ = std::move(table);
        log_.assign(q_, 0);
        for (std::uint32_t i = 0; i < exp_.size(); ++i) log_[exp_[i]] = i;
        return;
    }
    throw std::logic_error("GaloisField: no primitive polynomial found");
}

GaloisField::elem GaloisField::add(elem a, elem b) const {
    if (m_ == 1) {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<elem>(s >= p_ ? s - p_ : s);
    }
    if (p_ == 2) return a ^ b;
    elem r = 0, scale = 1;
    while (a != 0 || b != 0) {
        elem d = (a % p_ + b % p_) % p_;
        r += d * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

GaloisField::elem GaloisField::neg(elem a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    elem r = 0, scale = 1;
    while (a != 0) {
        elem d = (p_ - a % p_) % p_;
        r += d * scale;
        scale *= p_;
        a /= p_;
    }
    return r;
}

GaloisField::elem GaloisField::sub(elem a, elem b) const { return add(a, neg(b)); }

GaloisField::elem GaloisField::mul(elem a, elem b) const {
    if (m_ == 1) return static_cast<elem>((std::uint64_t{a} * b) % p_);
    if (a == 0 || b == 0) return 0;
    std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
}

GaloisField::elem GaloisField::inv(elem a) const {
    if (a == 0) throw std::domain_error("GaloisField: inverse of zero");
    if (m_ == 1) return pow(a, p_ - 2);
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1 - l)];
}

GaloisField::elem GaloisField::pow(elem a, std::uint64_t e) const {
    elem r = one();
    while (e > 0) {
        if (e & 1U) r = mul(r, a);
        a = mul(a, a);
        e >>= 1U;
    }
    return r;
}

GaloisField::elem GaloisField::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<elem>(r);
}

GaloisField::elem GaloisField::random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, q_ - 1);
    return static_cast<elem>(dist(rng));
}

std::uint32_t GaloisField::trace_to_prime(elem a) const {
    elem t = 0, x = a;
    for (int i = 0; i < m_; ++i) {
        t = add(t, x);
        x = pow(x, p_);
    }
    if (t >= p_) throw std::logic_error("GaloisField: trace left the prime field");
    return t;
}

std::vector<GaloisField::elem> GaloisField::prime_basis() const {
    std::vector<elem> b;
    elem s = 1;
    for (int i = 0; i < m_; ++i) {
        b.push_back(s);
        s *= p_;
    }
    return b;
}

std::vector<std::uint32_t> GaloisField::prime_coordinates(elem a) const { return digits(a, p_, m_); }

std::string GaloisField::to_string(elem a) const {
    if (m_ == 1) return std::to_string(a);
    auto d = digits(a, p_, m_);
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + "]";
}

}  // namespace adelic
