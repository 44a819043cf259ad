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

#include "ffstat/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ffstat/primes.hpp"

namespace ffstat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::mutex& process_mutex() {
    static std::mutex m;
    return m;
}

// Exclusive lock on <dir>/.lock for the lifetime of the object, plus a
// process-wide mutex since flock does not order threads sharing a file.
class DirLock {
public:
    explicit DirLock(const fs::path& dir) : guard_(process_mutex()) {
        fs::create_directories(dir);
        fd_ = ::open((dir / ".lock").c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
        if (fd_ < 0) throw std::runtime_error("cannot open lock file in " + dir.string());
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            throw std::runtime_error("cannot lock " + dir.string());
        }
    }
    ~DirLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    std::lock_guard<std::mutex> guard_;
    int fd_ = -1;
};

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json header_of(const CacheEntry& e) {
    return json{{"version", kCacheVersion}, {"kind", e.key.kind},   {"q", e.key.q},
                {"param", e.key.param},     {"variant", e.key.variant}, {"records", e.payload.size()},
                {"checksum", hex64(e.checksum)}};
}

void write_entry(const fs::path& path, const CacheEntry& e) {
    const fs::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << header_of(e).dump() << '\n';
        const std::string body = canonical_payload(e.payload);
        out << body;
        if (!body.empty()) out << '\n';
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

CacheRecord record_of(std::initializer_list<const Poly*> polys) {
    CacheRecord r;
    for (const Poly* p : polys) {
        std::vector<std::uint32_t> c;
        for (Elem e : p->coeffs()) c.push_back(e.v);
        r.push_back(std::move(c));
    }
    return r;
}

Poly poly_of(const FieldPtr& field, const std::vector<std::uint32_t>& c) {
    std::vector<Elem> e;
    e.reserve(c.size());
    for (std::uint32_t v : c) e.push_back(field->element(v));
    return Poly(field, std::move(e));
}

CacheStatus load_unlocked(const fs::path& path, const CacheKey& key, CacheEntry& out, std::string* why) {
    auto fail = [&](CacheStatus s, const std::string& reason) {
        if (why) *why = reason;
        return s;
    };
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(CacheStatus::Missing, "no cache file");
    std::string line;
    if (!std::getline(in, line)) return fail(CacheStatus::Corrupt, "empty cache file");
    json header;
    try {
        header = json::parse(line);
        if (header.at("version").get<int>() != kCacheVersion)
            return fail(CacheStatus::Stale, "cache version " + header.at("version").dump() + " is not " +
                                                std::to_string(kCacheVersion));
        const CacheKey stored{header.at("kind").get<std::string>(), header.at("q").get<std::uint32_t>(),
                              header.at("param").get<unsigned>(), header.at("variant").get<std::string>()};
        if (!(stored == key)) return fail(CacheStatus::Corrupt, "header key does not match the file name");
    } catch (const json::exception& e) {
        return fail(CacheStatus::Corrupt, std::string("unreadable header: ") + e.what());
    }

    CacheEntry e;
    e.key = key;
    try {
        const auto records = header.at("records").get<std::size_t>();
        e.payload.reserve(records);
        while (std::getline(in, line)) {
            const json j = json::parse(line);
            CacheRecord r = j.get<CacheRecord>();
            for (const auto& poly : r)
                for (std::uint32_t c : poly)
                    if (c >= key.q) return fail(CacheStatus::Corrupt, "coefficient out of range");
            e.payload.push_back(std::move(r));
        }
        if (e.payload.size() != records) return fail(CacheStatus::Corrupt, "record count mismatch");
        e.checksum = payload_checksum(e.payload);
        if (hex64(e.checksum) != header.at("checksum").get<std::string>())
            return fail(CacheStatus::Corrupt, "checksum mismatch");
    } catch (const json::exception& ex) {
        return fail(CacheStatus::Corrupt, std::string("unreadable record: ") + ex.what());
    }
    out = std::move(e);
    return CacheStatus::Hit;
}

}  // namespace

std::string CacheKey::file_name() const {
    std::string s = kind + "-q" + std::to_string(q) + "-" + std::to_string(param);
    if (!variant.empty()) s += "-" + variant;
    return s + ".jsonl";
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string canonical_payload(const std::vector<CacheRecord>& payload) {
    std::string s;
    for (std::size_t i = 0; i < payload.size(); ++i) {
        if (i) s += '\n';
        s += json(payload[i]).dump();
    }
    return s;
}

std::uint64_t payload_checksum(const std::vector<CacheRecord>& payload) { return fnv1a64(canonical_payload(payload)); }

DiskCache::DiskCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path DiskCache::path_for(const CacheKey& key) const { return dir_ / key.file_name(); }

CacheStatus DiskCache::load(const CacheKey& key, CacheEntry& out, std::string* why) const {
    return load_unlocked(path_for(key), key, out, why);
}

void DiskCache::store(CacheEntry& entry) const {
    entry.checksum = payload_checksum(entry.payload);
    DirLock lock(dir_);
    write_entry(path_for(entry.key), entry);
}

namespace {

// Load under the directory lock, rebuilding on anything but a hit.
template <class Build>
CacheEntry load_or_build(const DiskCache& cache, const CacheKey& key, Build build,
                         std::vector<std::string>& warnings) {
    DirLock lock(cache.dir());
    CacheEntry e;
    std::string why;
    const CacheStatus s = load_unlocked(cache.path_for(key), key, e, &why);
    if (s == CacheStatus::Hit) return e;
    if (s != CacheStatus::Missing)
        warnings.push_back("rebuilding cache " + cache.path_for(key).string() + ": " + why);
    e = CacheEntry{key, build(), 0};
    e.checksum = payload_checksum(e.payload);
    write_entry(cache.path_for(key), e);
    return e;
}

}  // namespace

std::vector<std::vector<Poly>> DiskCache::primes(const FieldPtr& field, unsigned max_degree,
                                                 std::vector<std::string>& warnings) const {
    const CacheKey key{"primes", field->order(), max_degree, ""};
    const CacheEntry e = load_or_build(
        *this, key,
        [&] {
            std::vector<CacheRecord> payload;
            const auto table = PrimeTable::get(field, max_degree);
            for (unsigned d = 1; d <= max_degree; ++d)
                for (const Poly& P : table->of_degree(d)) payload.push_back(record_of({&P}));
            return payload;
        },
        warnings);
    std::vector<std::vector<Poly>> out(max_degree + 1);
    for (const CacheRecord& r : e.payload) {
        Poly P = poly_of(field, r.at(0));
        const std::size_t d = P.deg();
        if (d == 0 || d > max_degree) throw std::runtime_error("cache record of unexpected degree");
        out[d].push_back(std::move(P));
    }
    return out;
}

std::vector<CurveTriple> DiskCache::family(const FieldPtr& field, unsigned g, Variant v,
                                           std::vector<std::string>& warnings) const {
    const CacheKey key{"family", field->order(), g, variant_name(v)};
    const CacheEntry e = load_or_build(
        *this, key,
        [&] {
            std::vector<CacheRecord> payload;
            for (const CurveTriple& t : enumerate_family(field, g, v)) payload.push_back(record_of({&t.f1, &t.f2, &t.f3}));
            return payload;
        },
        warnings);
    std::vector<CurveTriple> out;
    out.reserve(e.payload.size());
    for (const CacheRecord& r : e.payload) {
        if (r.size() != 3) throw std::runtime_error("cache record is not a triple");
        out.push_back(CurveTriple{poly_of(field, r[0]), poly_of(field, r[1]), poly_of(field, r[2]), v, g});
    }
    return out;
}

}  // namespace ffstat
