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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ffstat/biquad.hpp"
#include "ffstat/poly.hpp"

namespace ffstat {

inline constexpr int kCacheVersion = 1;

/// (kind, q, degree or genus, variant). Variant is empty for prime tables.
struct CacheKey {
    std::string kind;
    std::uint32_t q = 0;
    unsigned param = 0;
    std::string variant;

    std::string file_name() const;
    bool operator==(const CacheKey&) const = default;
};

/// One record per polynomial (prime tables) or per triple (families); each
/// polynomial is its ascending coefficient indices.
using CacheRecord = std::vector<std::vector<std::uint32_t>>;

struct CacheEntry {
    CacheKey key;
    std::vector<CacheRecord> payload;
    std::uint64_t checksum = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// One compact JSON array per record, joined by newlines. This is exactly
/// the body of the cache file and what the checksum covers.
std::string canonical_payload(const std::vector<CacheRecord>& payload);

std::uint64_t payload_checksum(const std::vector<CacheRecord>& payload);

enum class CacheStatus { Hit, Missing, Stale, Corrupt };

/// Versioned JSON-lines files under one directory. Writes go to a temporary
/// file renamed into place while holding an exclusive lock on the
/// directory, so concurrent processes never interleave.
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(const CacheKey& key) const;

    /// Fills `out` on a hit. `why` receives a one-line reason otherwise.
    CacheStatus load(const CacheKey& key, CacheEntry& out, std::string* why = nullptr) const;
    /// Sets the checksum of `entry` and writes it.
    void store(CacheEntry& entry) const;

    /// Primes of degree 1..max_degree, by degree (index 0 empty). Stale or
    /// corrupt files are rebuilt and a warning is appended.
    std::vector<std::vector<Poly>> primes(const FieldPtr& field, unsigned max_degree,
                                          std::vector<std::string>& warnings) const;
    /// enumerate_family, through the cache.
    std::vector<CurveTriple> family(const FieldPtr& field, unsigned g, Variant v,
                                    std::vector<std::string>& warnings) const;

private:
    std::filesystem::path dir_;
};

}  // namespace ffstat
