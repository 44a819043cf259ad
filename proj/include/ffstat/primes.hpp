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
#include <vector>

#include "ffstat/poly.hpp"

namespace ffstat {

/// Irreducibility flags for every monic polynomial of degree d, indexed by
/// monic index. Built by marking all products a*b with 1 <= deg a <= d/2.
std::vector<bool> irreducible_sieve(const FieldPtr& field, unsigned d);

/// Monic primes of every degree 1..max_degree, in enumeration order.
///
/// Tables are built once per (field, max_degree) and shared read-only.
class PrimeTable {
public:
    static std::shared_ptr<const PrimeTable> get(const FieldPtr& field, unsigned max_degree);

    PrimeTable(FieldPtr field, unsigned max_degree);

    const FieldPtr& field() const { return field_; }
    unsigned max_degree() const { return static_cast<unsigned>(by_degree_.size()) - 1; }
    const std::vector<Poly>& of_degree(unsigned d) const;
    /// Coefficient indices of the degree-d primes, d+1 entries per prime,
    /// ascending, in the same order as of_degree(d).
    const std::vector<std::uint32_t>& packed(unsigned d) const;
    std::size_t total() const;

private:
    FieldPtr field_;
    std::vector<std::vector<Poly>> by_degree_;
    std::vector<std::vector<std::uint32_t>> packed_;
};

}  // namespace ffstat
