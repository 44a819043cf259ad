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

#include "ffstat/primes.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "ffstat/enumerate.hpp"

namespace ffstat {

std::vector<bool> irreducible_sieve(const FieldPtr& field, unsigned d) {
    const FiniteField& f = *field;
    const std::uint64_t q = f.order();
    const std::uint64_t total = monic_count(q, d);
    if (total > (std::uint64_t(1) << 28)) throw std::invalid_argument("sieve too large");
    std::vector<bool> prime(total, true);
    if (d == 0) return std::vector<bool>(1, false);
    std::vector<std::uint32_t> a, b, prod(d + 1);
    for (unsigned k = 1; 2 * k <= d; ++k) {
        const std::uint64_t na = monic_count(q, k), nb = monic_count(q, d - k);
        a.assign(k + 1, 0);
        a[k] = 1;
        for (std::uint64_t ia = 0; ia < na; ++ia) {
            b.assign(d - k + 1, 0);
            b[d - k] = 1;
            for (std::uint64_t ib = 0; ib < nb; ++ib) {
                std::fill(prod.begin(), prod.end(), 0);
                for (unsigned i = 0; i <= k; ++i) {
                    if (a[i] == 0) continue;
                    for (unsigned j = 0; j <= d - k; ++j)
                        prod[i + j] = f.add(Elem{prod[i + j]}, f.mul(Elem{a[i]}, Elem{b[j]})).v;
                }
                std::uint64_t idx = 0;
                for (unsigned j = d; j-- > 0;) idx = idx * q + prod[j];
                prime[idx] = false;
                // odometer over the low coefficients of b
                for (unsigned j = 0; j < d - k; ++j) {
                    if (++b[j] < q) break;
                    b[j] = 0;
                }
            }
            for (unsigned j = 0; j < k; ++j) {
                if (++a[j] < q) break;
                a[j] = 0;
            }
        }
    }
    return prime;
}

PrimeTable::PrimeTable(FieldPtr field, unsigned max_degree) : field_(std::move(field)), by_degree_(max_degree + 1) {
    packed_.resize(max_degree + 1);
    for (unsigned d = 1; d <= max_degree; ++d) {
        by_degree_[d] = enumerate(field_, d, PolyKind::Prime);
        auto& flat = packed_[d];
        flat.reserve(by_degree_[d].size() * (d + 1));
        for (const Poly& p : by_degree_[d])
            for (unsigned j = 0; j <= d; ++j) flat.push_back(p.coeff(j).v);
    }
}

const std::vector<std::uint32_t>& PrimeTable::packed(unsigned d) const {
    if (d == 0 || d >= packed_.size()) throw std::out_of_range("prime table degree out of range");
    return packed_[d];
}

std::shared_ptr<const PrimeTable> PrimeTable::get(const FieldPtr& field, unsigned max_degree) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>>, std::shared_ptr<const PrimeTable>> cache;
    const auto key = std::make_tuple(field->characteristic(), field->extension_degree(), field->modulus());
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->max_degree() >= max_degree) return it->second;
    auto table = std::make_shared<const PrimeTable>(field, max_degree);
    cache[key] = table;
    return table;
}

const std::vector<Poly>& PrimeTable::of_degree(unsigned d) const {
    if (d == 0 || d >= by_degree_.size()) throw std::out_of_range("prime table degree out of range");
    return by_degree_[d];
}

std::size_t PrimeTable::total() const {
    std::size_t n = 0;
    for (const auto& v : by_degree_) n += v.size();
    return n;
}

}  // namespace ffstat
