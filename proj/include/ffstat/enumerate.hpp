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
#include <vector>

#include "ffstat/poly.hpp"

namespace ffstat {

enum class PolyKind { Monic, Prime, SquarefreeMonic };

/// Half-open range [begin, end) of monic indices of a fixed degree.
struct IndexRange {
    std::uint64_t begin = 0;
    std::uint64_t end = UINT64_MAX;
};

/// q^d, or throws std::overflow_error if it does not fit in 63 bits.
std::uint64_t monic_count(std::uint64_t q, unsigned d);

/// The monic polynomial of degree d with lexicographic index `index`:
/// coefficient j (j < d) is base-q digit j of index, so increasing index
/// runs lexicographically over (c_{d-1}, ..., c_0).
Poly monic_from_index(const FieldPtr& field, unsigned d, std::uint64_t index);
std::uint64_t monic_index(const Poly& monic);

/// Every monic polynomial of degree d of the given kind whose monic index
/// lies in `range`, in increasing index order. Splitting the index space
/// into disjoint ranges and concatenating reproduces the full stream.
std::vector<Poly> enumerate(const FieldPtr& field, unsigned d, PolyKind kind, IndexRange range = {});

/// Splits [0, total) into `parts` contiguous ranges of near-equal size.
std::vector<IndexRange> partition(std::uint64_t total, unsigned parts);

}  // namespace ffstat
