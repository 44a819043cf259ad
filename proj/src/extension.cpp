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

#include "ffstat/extension.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "ffstat/arith.hpp"
#include "ffstat/enumerate.hpp"

namespace ffstat {

namespace {

Poly least_irreducible(const FieldPtr& base, unsigned n) {
    const std::uint64_t total = monic_count(base->order(), n);
    for (std::uint64_t i = 0; i < total; ++i) {
        Poly f = monic_from_index(base, n, i);
        if (n >= 2 && f.coeff(0).v == 0) continue;
        if (is_irreducible(f)) return f;
    }
    throw std::logic_error("no irreducible polynomial of the requested degree");
}

}  // namespace

ExtensionField::ExtensionField(FieldPtr base, unsigned n)
    : base_(std::move(base)), n_(n), size_(1), modulus_(Poly(base_)) {
    if (n == 0) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t size = 1;
    for (unsigned i = 0; i < n; ++i) {
        size *= base_->order();
        if (size > (1u << 24)) throw std::invalid_argument("extension field larger than 2^24 elements");
    }
    size_ = static_cast<std::uint32_t>(size);
    modulus_ = least_irreducible(base_, n);

    const std::uint32_t group = size_ - 1;
    auto to_index = [&](const Poly& r) {
        std::uint32_t idx = 0;
        for (std::size_t j = n_; j-- > 0;) idx = idx * base_->order() + r.coeff(j).v;
        return idx;
    };
    auto from_index = [&](std::uint32_t idx) {
        std::vector<Elem> c(n_);
        for (unsigned j = 0; j < n_; ++j) {
            c[j] = Elem{idx % base_->order()};
            idx /= base_->order();
        }
        return Poly(base_, std::move(c));
    };

    exp_.assign(group, 0);
    log_.assign(size_, kZeroLog);
    bool found = false;
    for (std::uint32_t cand = 1; cand < size_ && !found; ++cand) {
        const Poly g = from_index(cand);
        Poly cur = Poly::one(base_);
        std::uint32_t k = 0;
        bool primitive = true;
        for (; k < group; ++k) {
            const std::uint32_t idx = to_index(cur);
            if (k > 0 && idx == 1) {
                primitive = false;
                break;
            }
            exp_[k] = idx;
            cur = mulmod(cur, g, modulus_);
        }
        found = primitive;
    }
    if (!found) throw std::logic_error("no primitive element found");
    for (std::uint32_t k = 0; k < group; ++k) log_[exp_[k]] = k;

    zech_.assign(group, kZeroLog);
    for (std::uint32_t k = 0; k < group; ++k) {
        const std::uint32_t s = add(ExtElem{exp_[k]}, one()).index;
        zech_[k] = log_[s];
    }
}

ExtElem ExtensionField::element(std::uint32_t index) const {
    if (index >= size_) throw std::out_of_range("extension element index out of range");
    return {index};
}

std::vector<Elem> ExtensionField::digits(ExtElem a) const {
    std::vector<Elem> c(n_);
    std::uint32_t idx = a.index;
    for (unsigned j = 0; j < n_; ++j) {
        c[j] = Elem{idx % base_->order()};
        idx /= base_->order();
    }
    return c;
}

ExtElem ExtensionField::add(ExtElem a, ExtElem b) const {
    const std::uint32_t q = base_->order();
    std::uint32_t x = a.index, y = b.index, out = 0, place = 1;
    for (unsigned j = 0; j < n_; ++j) {
        out += base_->add(Elem{x % q}, Elem{y % q}).v * place;
        x /= q;
        y /= q;
        place *= q;
    }
    return {out};
}

ExtElem ExtensionField::mul(ExtElem a, ExtElem b) const {
    if (a.index == 0 || b.index == 0) return zero();
    const std::uint64_t k = (std::uint64_t(log_of(a)) + log_of(b)) % (size_ - 1);
    return {exp_[k]};
}

ExtElem ExtensionField::pow(ExtElem a, std::uint64_t k) const {
    ExtElem r = one();
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

ExtElem ExtensionField::frobenius(ExtElem a) const { return pow(a, base_->order()); }

unsigned ExtensionField::minimal_degree(ExtElem a) const {
    ExtElem y = frobenius(a);
    unsigned m = 1;
    while (y != a) {
        y = frobenius(y);
        ++m;
    }
    return m;
}

bool ExtensionField::in_subfield(ExtElem a, unsigned m) const {
    if (m == 0 || n_ % m != 0) throw std::invalid_argument("subfield degree must divide the extension degree");
    ExtElem y = a;
    for (unsigned i = 0; i < m; ++i) y = frobenius(y);
    return y == a;
}

ExtElem ExtensionField::eval(const Poly& f, ExtElem x) const {
    if (!f.F().same_as(*base_)) throw std::invalid_argument("polynomial not over the base field");
    ExtElem acc = zero();
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = add(mul(acc, x), embed(c[i]));
    return acc;
}

int ExtensionField::quadratic_character(ExtElem a) const {
    if (a.index == 0) return 0;
    const ExtElem v = pow(a, (std::uint64_t(size_) - 1) / 2);
    if (v == one()) return 1;
    return -1;
}

int ExtensionField::quadratic_character(Elem c) const {
    const int chi = base_->quadratic_character(c);
    return (n_ % 2 == 0 && chi != 0) ? 1 : chi;
}

int ExtensionField::character_at_infinity(const Poly& f) const {
    if (f.is_zero()) throw std::domain_error("character of the zero polynomial");
    if (f.deg() % 2 == 1) return 0;
    return quadratic_character(f.leading());
}

std::vector<std::int8_t> ExtensionField::character_table(const Poly& f) const {
    if (!f.F().same_as(*base_)) throw std::invalid_argument("polynomial not over the base field");
    const std::uint32_t group = size_ - 1;
    const auto& c = f.coeffs();
    std::vector<std::uint32_t> clog(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) clog[i] = log_[c[i].v];
    std::vector<std::int8_t> out(size_, 0);
    for (std::uint32_t xi = 0; xi < size_; ++xi) {
        const std::uint32_t lx = log_[xi];
        std::uint32_t acc = kZeroLog;
        for (std::size_t i = c.size(); i-- > 0;) {
            // acc = acc * x
            if (acc != kZeroLog) acc = (lx == kZeroLog) ? kZeroLog : static_cast<std::uint32_t>((std::uint64_t(acc) + lx) % group);
            // acc = acc + c_i
            const std::uint32_t b = clog[i];
            if (b == kZeroLog) continue;
            if (acc == kZeroLog) {
                acc = b;
                continue;
            }
            const std::uint32_t z = zech_[(b + group - acc) % group];
            acc = (z == kZeroLog) ? kZeroLog : static_cast<std::uint32_t>((std::uint64_t(acc) + z) % group);
        }
        out[xi] = acc == kZeroLog ? 0 : (acc % 2 == 0 ? 1 : -1);
    }
    return out;
}

int quad_char_eval(const Poly& f, const P1Point& x, const ExtensionField& ext) {
    if (f.is_zero()) throw std::domain_error("character of the zero polynomial");
    if (x.at_infinity) return ext.character_at_infinity(f);
    return ext.quadratic_character(ext.eval(f, x.x));
}

ExtensionPtr extension_field(const FieldPtr& base, unsigned n) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>, unsigned>, ExtensionPtr> cache;
    const auto key = std::make_tuple(base->characteristic(), base->extension_degree(), base->modulus(), n);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ext = std::make_shared<const ExtensionField>(base, n);
    cache.emplace(key, ext);
    return ext;
}

}  // namespace ffstat
