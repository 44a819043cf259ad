/*
   Copyright 2026 The ffstat Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ffstat/field.hpp"

#include <sstream>
#include <stdexcept>

namespace ffstat {

bool is_odd_prime(std::uint64_t n) {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

// digit-wise helpers for F_p[t] elements packed as base-p integers
std::vector<std::uint32_t> unpack(std::uint32_t v, std::uint32_t p, std::uint32_t e) {
    std::vector<std::uint32_t> d(e);
    for (std::uint32_t i = 0; i < e; ++i) {
        d[i] = v % p;
        v /= p;
    }
    return d;
}

std::uint32_t pack(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// product of two residues mod a monic modulus of degree e over F_p
std::vector<std::uint32_t> mulmod_fp(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b,
                                     const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
    const std::size_t e = modulus.size() - 1;
    std::vector<std::uint64_t> prod(2 * e, 0);
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    for (std::size_t k = prod.size(); k-- > e;) {
        const std::uint64_t c = prod[k];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= e; ++j)
            prod[k - e + j] = (prod[k - e + j] + (p - c) * modulus[j]) % p;
    }
    std::vector<std::uint32_t> out(e);
    for (std::size_t i = 0; i < e; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
}

bool divides(const std::vector<std::uint32_t>& g, std::vector<std::uint32_t> f, std::uint32_t p) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t k = f.size(); k-- > dg;) {
        const std::uint64_t c = f[k];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j)
            f[k - dg + j] = static_cast<std::uint32_t>((f[k - dg + j] + (p - c) * std::uint64_t(g[j])) % p);
    }
    for (std::size_t i = 0; i < dg; ++i)
        if (f[i] != 0) return false;
    return true;
}

// Trial division by every monic polynomial of degree <= deg(f)/2. Only used
// to pick the defining modulus of a small prime-power field.
bool has_proper_factor(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    const std::size_t n = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint32_t> g(d + 1);
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            g[d] = 1;
            if (divides(g, f, p)) return true;
        }
    }
    return false;
}

}  // namespace

FiniteField::FiniteField(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
    for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
    inv_.assign(q_, 0);
    chi_.assign(q_, 0);
    if (e_ > 1) {
        add_table_.resize(std::size_t(q_) * q_);
        mul_table_.resize(std::size_t(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            const auto da = unpack(a, p_, e_);
            for (std::uint32_t b = 0; b < q_; ++b) {
                const auto db = unpack(b, p_, e_);
                std::vector<std::uint32_t> s(e_);
                for (std::uint32_t i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
                add_table_[std::size_t(a) * q_ + b] = static_cast<std::uint16_t>(pack(s, p_));
                mul_table_[std::size_t(a) * q_ + b] =
                    static_cast<std::uint16_t>(pack(mulmod_fp(da, db, modulus_, p_), p_));
            }
        }
    }
    neg_.assign(q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a) {
        auto d = unpack(a, p_, e_);
        for (auto& x : d) x = x == 0 ? 0 : p_ - x;
        neg_[a] = pack(d, p_);
    }
    // a^(q-2) = a^-1 on the multiplicative group
    for (std::uint32_t a = 1; a < q_; ++a) inv_[a] = pow(Elem{a}, q_ - 2).v;
    for (std::uint32_t a = 1; a < q_; ++a) chi_[a] = -1;
    for (std::uint32_t a = 1; a < q_; ++a) chi_[mul(Elem{a}, Elem{a}).v] = 1;
}

FieldPtr FiniteField::prime(std::uint32_t p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("field characteristic must be an odd prime, got " + std::to_string(p));
    if (p > 65521) throw std::invalid_argument("prime field too large for table-backed characters");
    return FieldPtr(new FiniteField(p, 1, {}));
}

FieldPtr FiniteField::prime_power(std::uint32_t p, std::uint32_t e) {
    if (e == 1) return prime(p);
    if (!is_odd_prime(p)) throw std::invalid_argument("field characteristic must be an odd prime, got " + std::to_string(p));
    if (e == 0) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    if (q > 4096) throw std::invalid_argument("prime-power base field too large (q <= 4096)");
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        std::vector<std::uint32_t> f(e + 1);
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < e; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        f[e] = 1;
        if (f[0] != 0 && !has_proper_factor(f, p)) return FieldPtr(new FiniteField(p, e, std::move(f)));
    }
    throw std::logic_error("no irreducible modulus found");
}

FieldPtr FiniteField::of_order(std::uint32_t q) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be an odd prime power >= 3, got " + std::to_string(q));
    for (std::uint32_t p = 3; p <= q; p += 2) {
        if (q % p != 0) continue;
        std::uint32_t e = 0, r = q;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        if (r != 1 || !is_odd_prime(p)) break;
        return prime_power(p, e);
    }
    throw std::invalid_argument("q must be an odd prime power, got " + std::to_string(q));
}

Elem FiniteField::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return Elem{static_cast<std::uint32_t>(r)};
}

Elem FiniteField::element(std::uint32_t index) const {
    if (index >= q_) throw std::out_of_range("field element index " + std::to_string(index) + " >= q");
    return Elem{index};
}

Elem FiniteField::inv(Elem a) const {
    if (a.v == 0) throw std::domain_error("inverse of zero in F_q");
    return Elem{inv_[a.v]};
}

Elem FiniteField::pow(Elem a, std::uint64_t k) const {
    Elem r = one();
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

std::string FiniteField::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (e_ > 1) os << " (p=" << p_ << ", e=" << e_ << ")";
    return os.str();
}

}  // namespace ffstat
