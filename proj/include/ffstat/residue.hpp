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

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ffstat/poly.hpp"

namespace ffstat {

/// Reduction of packed coefficient arrays modulo a fixed monic polynomial.
///
/// Residues are identified by their index sum_j c_j q^j (deg < deg m).
class ResidueReducer {
public:
    explicit ResidueReducer(const Poly& monic_modulus);

    unsigned degree() const { return k_; }
    /// q^deg(m)
    std::uint64_t residue_count() const { return count_; }
    const FieldPtr& field() const { return field_; }

    /// Index of (sum_j coeffs[j] X^j) mod m.
    std::uint64_t reduce(std::span<const std::uint32_t> coeffs) const;
    std::uint64_t reduce(const Poly& f) const;

private:
    FieldPtr field_;
    std::vector<std::uint32_t> m_;
    unsigned k_;
    std::uint64_t count_;
};

/// Legendre symbol (r / P) for every residue r mod a monic prime P, by
/// marking the squares r^2 mod P. Tables are cached per prime and shared.
std::shared_ptr<const std::vector<std::int8_t>> legendre_table(const Poly& monic_prime);

}  // namespace ffstat
