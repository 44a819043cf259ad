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

#include "ffstat/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffstat/arith.hpp"
#include "ffstat/primes.hpp"

namespace ffstat {

std::uint64_t monic_count(std::uint64_t q, unsigned d) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < d; ++i) {
        if (r > (UINT64_MAX >> 1) / q) throw std::overflow_error("q^d does not fit in 63 bits");
        r *= q;
    }
    return r;
}

Poly monic_from_index(const FieldPtr& field, unsigned d, std::uint64_t index) {
    const std::uint64_t q = field->order();
    std::vector<Elem> c(d + 1);
    for (unsigned j = 0; j < d; ++j) {
        c[j] = Elem{static_cast<std::uint32_t>(index % q)};
        index /= q;
    }
    if (index != 0) throw std::out_of_range("monic index exceeds q^d");
    c[d] = Elem{1};
    return Poly(field, std::move(c));
}

std::uint64_t monic_index(const Poly& monic) {
    if (!monic.is_monic()) throw std::invalid_argument("monic_index of a non-monic polynomial");
    const std::uint64_t q = monic.F().order();
    std::uint64_t idx = 0;
    for (std::size_t j = monic.deg(); j-- > 0;) idx = idx * q + monic.coeff(j).v;
    return idx;
}

std::vector<Poly> enumerate(const FieldPtr& field, unsigned d, PolyKind kind, IndexRange range) {
    if (kind == PolyKind::Prime && d == 0) throw std::invalid_argument("prime enumeration needs degree >= 1");
    const std::uint64_t total = monic_count(field->order(), d);
    const std::uint64_t end = std::min(range.end, total);
    std::vector<Poly> out;
    std::vector<bool> sieve;
    const bool use_sieve = kind == PolyKind::Prime && total <= (std::uint64_t(1) << 24);
    if (use_sieve) sieve = irreducible_sieve(field, d);
    for (std::uint64_t i = range.begin; i < end; ++i) {
        if (use_sieve && !sieve[i]) continue;
        Poly f = monic_from_index(field, d, i);
        switch (kind) {
            case PolyKind::Monic:
                break;
            case PolyKind::Prime:
                if (!use_sieve && !is_irreducible(f)) continue;
                break;
            case PolyKind::SquarefreeMonic:
                if (!is_squarefree(f)) continue;
                break;
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<IndexRange> partition(std::uint64_t total, unsigned parts) {
    if (parts == 0) parts = 1;
    std::vector<IndexRange> out;
    const std::uint64_t base = total / parts, extra = total % parts;
    std::uint64_t at = 0;
    for (unsigned i = 0; i < parts; ++i) {
        const std::uint64_t len = base + (i < extra ? 1 : 0);
        out.push_back({at, at + len});
        at += len;
    }
    return out;
}

}  // namespace ffstat
