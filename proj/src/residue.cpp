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

#include "ffstat/residue.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "ffstat/enumerate.hpp"

namespace ffstat {

ResidueReducer::ResidueReducer(const Poly& monic_modulus) : field_(monic_modulus.field()) {
    if (!monic_modulus.is_monic()) throw std::invalid_argument("residue modulus must be monic");
    k_ = static_cast<unsigned>(monic_modulus.deg());
    for (unsigned j = 0; j <= k_; ++j) m_.push_back(monic_modulus.coeff(j).v);
    count_ = monic_count(field_->order(), k_);
}

std::uint64_t ResidueReducer::reduce(std::span<const std::uint32_t> coeffs) const {
    const FiniteField& f = *field_;
    const std::uint64_t q = f.order();
    std::size_t n = coeffs.size();
    while (n > 0 && coeffs[n - 1] == 0) --n;
    if (n <= k_) {
        std::uint64_t idx = 0;
        for (std::size_t j = n; j-- > 0;) idx = idx * q + coeffs[j];
        return idx;
    }
    thread_local std::vector<std::uint32_t> r;
    r.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t t = n; t-- > k_;) {
        const Elem c{r[t]};
        if (c.v == 0) continue;
        // m is monic: subtract c * X^(t-k) * m
        for (unsigned j = 0; j < k_; ++j)
            if (m_[j] != 0) r[t - k_ + j] = f.sub(Elem{r[t - k_ + j]}, f.mul(c, Elem{m_[j]})).v;
        r[t] = 0;
    }
    std::uint64_t idx = 0;
    for (std::size_t j = k_; j-- > 0;) idx = idx * q + r[j];
    return idx;
}

std::uint64_t ResidueReducer::reduce(const Poly& f) const {
    std::vector<std::uint32_t> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeffs()[i].v;
    return reduce(std::span<const std::uint32_t>(c));
}

namespace {

std::vector<std::int8_t> build_legendre_table(const Poly& p) {
    const FiniteField& f = p.F();
    const std::uint64_t q = f.order();
    const unsigned e = static_cast<unsigned>(p.deg());
    const std::uint64_t n = monic_count(q, e);
    if (n > (std::uint64_t(1) << 24)) throw std::invalid_argument("Legendre table too large");
    std::vector<std::uint32_t> m(e + 1);
    for (unsigned j = 0; j <= e; ++j) m[j] = p.coeff(j).v;
    std::vector<std::int8_t> table(n, -1);
    table[0] = 0;
    std::vector<std::uint32_t> a(e, 0), sq(2 * e, 0);
    for (std::uint64_t r = 0; r < n; ++r) {
        std::fill(sq.begin(), sq.end(), 0);
        for (unsigned i = 0; i < e; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < e; ++j) sq[i + j] = f.add(Elem{sq[i + j]}, f.mul(Elem{a[i]}, Elem{a[j]})).v;
        }
        for (std::size_t t = 2 * e - 1; t-- > e;) {
            const Elem c{sq[t]};
            if (c.v == 0) continue;
            for (unsigned j = 0; j < e; ++j) sq[t - e + j] = f.sub(Elem{sq[t - e + j]}, f.mul(c, Elem{m[j]})).v;
            sq[t] = 0;
        }
        std::uint64_t idx = 0;
        for (unsigned j = e; j-- > 0;) idx = idx * q + sq[j];
        if (r != 0) table[idx] = 1;
        for (unsigned j = 0; j < e; ++j) {
            if (++a[j] < q) break;
            a[j] = 0;
        }
    }
    return table;
}

}  // namespace

std::shared_ptr<const std::vector<std::int8_t>> legendre_table(const Poly& monic_prime) {
    if (!monic_prime.is_monic() || monic_prime.is_constant())
        throw std::invalid_argument("Legendre table needs a monic nonconstant prime");
    using Key = std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const std::vector<std::int8_t>>> cache;
    std::vector<std::uint32_t> digits;
    for (const Elem c : monic_prime.coeffs()) digits.push_back(c.v);
    Key key{monic_prime.F().characteristic(), monic_prime.F().extension_degree(), monic_prime.F().modulus(), digits};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const std::vector<std::int8_t>>(build_legendre_table(monic_prime));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::move(key), table).first->second;
}

}  // namespace ffstat
