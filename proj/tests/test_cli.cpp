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

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "ffstat/arith.hpp"
#include "ffstat/cache.hpp"
#include "ffstat/cli.hpp"
#include "ffstat/enumerate.hpp"
#include "ffstat/primes.hpp"

using namespace ffstat;
using namespace ffstat::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ffstat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> f;
    std::istringstream in(line);
    for (std::string x; std::getline(in, x, ',');) f.push_back(x);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    return f;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("ffstat-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    return d;
}

// Brute force over monic triples: square-free product, length g+3, at most
// one constant slot.
long brute_family_count(const FieldPtr& F, unsigned g) {
    long count = 0;
    for (unsigned d1 = 0; d1 <= g + 3; ++d1)
        for (unsigned d2 = 0; d1 + d2 <= g + 3; ++d2)
            for (unsigned d3 = 0; d1 + d2 + d3 <= g + 3; ++d3) {
                const unsigned zeros = (d1 == 0) + (d2 == 0) + (d3 == 0);
                if (zeros >= 2) continue;
                const bool even = (d1 + d3) % 2 == 0 && (d2 + d3) % 2 == 0;
                if (d1 + d2 + d3 + (even ? 0 : 1) != g + 3) continue;
                for (const Poly& a : enumerate(F, d1, PolyKind::Monic))
                    for (const Poly& b : enumerate(F, d2, PolyKind::Monic))
                        for (const Poly& c : enumerate(F, d3, PolyKind::Monic)) count += is_squarefree(a * b * c);
            }
    return count;
}

}  // namespace

TEST_CASE("config validation names the field") {
    RunConfig c;
    CHECK_NOTHROW(validate(c));
    for (std::uint32_t q : {0u, 1u, 2u, 4u, 15u, 8192u, 4099u * 3u}) {
        c.q = q;
        try {
            validate(c);
            FAIL("q = " << q << " accepted");
        } catch (const ConfigError& e) {
            CHECK(e.field() == "q");
            CHECK(std::string(e.what()).find('\n') == std::string::npos);
        }
    }
    for (std::uint32_t q : {3u, 5u, 9u, 25u, 27u, 4093u}) {
        c.q = q;
        CHECK_NOTHROW(validate(c));
    }
    c = RunConfig{};
    auto field_of = [](const RunConfig& bad) {
        try {
            validate(bad);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("none");
    };
    RunConfig b = c;
    b.genus = 13;
    CHECK(field_of(b) == "genus");
    b = c;
    b.alpha = 0;
    CHECK(field_of(b) == "alpha");
    b = c;
    b.threads = 0;
    CHECK(field_of(b) == "threads");
    b = c;
    b.n_max = 0;
    CHECK(field_of(b) == "n-max");
    b = c;
    b.M = 0;
    CHECK(field_of(b) == "M");
    b = c;
    b.kernel = "gauss";
    CHECK(field_of(b) == "kernel");
    b = c;
    b.command = Command::Density;
    b.genus = 0;
    CHECK(field_of(b) == "genus");
}

TEST_CASE("command line errors exit 1 with one line") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"moments", "--q", "4"},
             {"moments", "--q", "9", "--genus", "x"},
             {"lfunc", "--q", "3", "--modulus", "1,0,3"},
             {"lfunc", "--q", "3", "--modulus", "X^2"},
             {"lemma61", "--q", "3", "--prime", "X^2+2"},
             {"curve", "--q", "3", "--f1", "X^2", "--f2", "X"},
             {"moments", "--q", "3", "--format", "xml"},
             {"moments", "--q", "3", "--genus", "3", "--n-max", "8", "--work-budget", "1000"},
             {"bogus"},
             {}}) {
        const Result r = invoke(args);
        CHECK(r.code == 1);
        CHECK(r.out.empty());
        CHECK(split_lines(r.err).size() == 1);
    }
    CHECK(invoke({"moments", "--q", "4"}).err.find("q:") != std::string::npos);
    CHECK(invoke({"lfunc", "--q", "3", "--modulus", "1,0,3"}).err.find("modulus: ") != std::string::npos);
    CHECK(invoke({"moments", "--q", "3", "--format", "xml"}).err.find("format: ") != std::string::npos);
    const Result help = invoke({"moments", "--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("avg_T_num") != std::string::npos);
}

TEST_CASE("family count matches a brute-force count") {
    auto F = FiniteField::prime(3);
    for (unsigned g : {0u, 1u}) {
        const Result r = invoke({"family", "--q", "3", "--genus", std::to_string(g), "--variant", "monic", "--count"});
        REQUIRE(r.code == 0);
        const auto lines = split_lines(r.out);
        REQUIRE(lines.size() == 2);
        CHECK(lines[0] == "q,g,variant,family_size,size_ratio");
        CHECK(split_csv(lines[1])[3] == std::to_string(brute_family_count(F, g)));
    }
    CHECK(split_csv(split_lines(invoke({"family", "--q", "3", "--genus", "0", "--count"}).out)[1])[3] == "24");
    const Result list = invoke({"family", "--q", "3", "--genus", "0"});
    CHECK(split_lines(list.out).size() == 25);
}

TEST_CASE("genus-0 moments are zero") {
    const Result r = invoke({"moments", "--q", "3", "--genus", "0", "--n-max", "3"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "q,g,n,family_size,avg_T_num,avg_T_den,avg_trace,reference,gap,roots_term,bilinear_term,roots_bound,nongen_bound");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split_csv(lines[i]);
        REQUIRE(f.size() == 13);
        CHECK(f[4] == "0");
        CHECK(f[5] == "1");
        CHECK(f[9].empty() == (i % 2 == 1));
    }
}

TEST_CASE("lfunc output for X^2+1") {
    const Result r = invoke({"lfunc", "--q", "3", "--modulus", "X^2+1", "--check-rh", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("delta") == 0);
    CHECK(j.at("lambda") == 1);
    CHECK(j.at("lstar_coeffs") == nlohmann::json::array({1}));
    CHECK(j.at("rh_max_deviation").get<double>() < 1e-9);
    // deg 3 modulus: delta = 1, lstar = 1 + a u + q u^2
    const auto k = nlohmann::json::parse(
        invoke({"lfunc", "--q", "3", "--modulus", "X^3+2X+1", "--n-max", "8", "--check-rh", "--format", "json"}).out);
    CHECK(k.at("delta") == 1);
    CHECK(k.at("lstar_coeffs").size() == 3);
    CHECK(k.at("lstar_coeffs")[2] == 3);
    CHECK(k.at("traces_t").size() == 8);
    CHECK(k.at("rh_max_deviation").get<double>() < 1e-9);
}

TEST_CASE("curve command reproduces the worked example") {
    const Result r = invoke({"curve", "--q", "3", "--f1", "X^2+1", "--f2", "X^2+X+2", "--f3", "1", "--n-max", "6",
                             "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("genus") == 1);
    CHECK(j.at("N")[0] == 4);
    CHECK(j.at("T")[1] == -6);
    CHECK(j.at("P_C") == nlohmann::json::array({1, 0, 3}));
}

TEST_CASE("serialization") {
    for (double x : {0.1, 1.0 / 3, 1e-300, -2.5e17, 123456.789, 5e-324}) CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.1) == "0.1");

    Table t;
    t.columns = {"a", "b", "c", "d", "e"};
    t.rows.push_back({mpq_class(-3, 7), IntList{1, -2, 3}, std::monostate{}, std::string("x,y"), true});
    CHECK(render_csv(t) == "a,b,c,d,e\n-3/7,1;-2;3,,\"x,y\",true\n");
    const auto j = nlohmann::json::parse(render_json(t));
    REQUIRE(j.is_array());
    CHECK(j[0].at("a").at("num") == "-3");
    CHECK(j[0].at("a").at("den") == "7");
    CHECK(j[0].at("c").is_null());
    t.single = true;
    CHECK(nlohmann::json::parse(render_json(t)).is_object());
}

TEST_CASE("output is identical across thread counts") {
    for (const std::vector<std::string>& base :
         {std::vector<std::string>{"moments", "--q", "3", "--genus", "2", "--n-max", "6", "--variant", "full"},
          std::vector<std::string>{"moments", "--q", "5", "--genus", "1", "--n-max", "4", "--mode", "sample",
                                   "--sample-size", "300", "--seed", "7"},
          std::vector<std::string>{"eulersum", "--q", "3", "--n", "3", "--M", "5", "--kind", "zero"}}) {
        auto one = base, many = base;
        one.insert(one.end(), {"--threads", "1"});
        many.insert(many.end(), {"--threads", "3"});
        const Result a = invoke(one), b = invoke(many);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("--out writes the file") {
    const fs::path dir = fresh_dir("out");
    fs::create_directories(dir);
    const fs::path file = dir / "p.csv";
    const Result r = invoke({"primes", "--q", "3", "--max-degree", "2", "--out", file.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(file);
    std::stringstream s;
    s << in.rdbuf();
    CHECK(s.str() == invoke({"primes", "--q", "3", "--max-degree", "2"}).out);
    fs::remove_all(dir);
}

TEST_CASE("cache round trip") {
    auto F = FiniteField::prime(3);
    const fs::path dir = fresh_dir("cache");
    DiskCache cache(dir);
    std::vector<std::string> warnings;

    SUBCASE("primes reload equals the sieve") {
        const auto first = cache.primes(F, 6, warnings);
        CHECK(fs::exists(cache.path_for({"primes", 3, 6, ""})));
        const auto again = cache.primes(F, 6, warnings);
        const auto table = PrimeTable::get(F, 6);
        for (unsigned d = 1; d <= 6; ++d) {
            CHECK(first[d] == table->of_degree(d));
            CHECK(again[d] == table->of_degree(d));
        }
        CHECK(warnings.empty());
    }

    SUBCASE("family reload keeps the order") {
        const auto fresh = enumerate_family(F, 2, Variant::Monic);
        const auto stored = cache.family(F, 2, Variant::Monic, warnings);
        const auto reloaded = cache.family(F, 2, Variant::Monic, warnings);
        REQUIRE(reloaded.size() == fresh.size());
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            CHECK(reloaded[i].f1 == fresh[i].f1);
            CHECK(reloaded[i].f2 == fresh[i].f2);
            CHECK(reloaded[i].f3 == fresh[i].f3);
            CHECK(reloaded[i].genus == 2);
        }
        CHECK(stored.size() == fresh.size());
        CHECK(warnings.empty());
    }

    SUBCASE("store then load gives the same payload and checksum") {
        CacheEntry e{{"primes", 3, 1, ""}, {{{0, 1}}, {{1, 1}}, {{2, 1}}}, 0};
        cache.store(e);
        CHECK(e.checksum == payload_checksum(e.payload));
        CacheEntry back;
        REQUIRE(cache.load(e.key, back) == CacheStatus::Hit);
        CHECK(back.payload == e.payload);
        CHECK(back.checksum == e.checksum);
    }

    SUBCASE("tampered payload is rebuilt with a warning") {
        const CacheKey key{"primes", 3, 4, ""};
        cache.primes(F, 4, warnings);
        const fs::path p = cache.path_for(key);
        std::stringstream s;
        s << std::ifstream(p).rdbuf();
        std::string text = s.str();
        const auto pos = text.find("[[1,1]]");  // X+1
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 7, "[[2,1]]");
        std::ofstream(p, std::ios::trunc) << text;

        CacheEntry e;
        std::string why;
        CHECK(cache.load(key, e, &why) == CacheStatus::Corrupt);
        CHECK(why == "checksum mismatch");
        const auto rebuilt = cache.primes(F, 4, warnings);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("checksum") != std::string::npos);
        CHECK(rebuilt[1] == PrimeTable::get(F, 4)->of_degree(1));
        CHECK(cache.load(key, e) == CacheStatus::Hit);
    }

    SUBCASE("stale version is not reused") {
        const CacheKey key{"family", 3, 0, "monic"};
        cache.family(F, 0, Variant::Monic, warnings);
        const fs::path p = cache.path_for(key);
        std::stringstream s;
        s << std::ifstream(p).rdbuf();
        std::string text = s.str();
        text.replace(text.find("\"version\":1"), 11, "\"version\":0");
        std::ofstream(p, std::ios::trunc) << text;
        CacheEntry e;
        CHECK(cache.load(key, e) == CacheStatus::Stale);
        CHECK(cache.family(F, 0, Variant::Monic, warnings).size() == 24);
        CHECK(warnings.size() == 1);
        CHECK(cache.load(key, e) == CacheStatus::Hit);
    }

    SUBCASE("garbage file is rebuilt") {
        const CacheKey key{"primes", 3, 2, ""};
        fs::create_directories(dir);
        std::ofstream(cache.path_for(key)) << "not json\n";
        CHECK(cache.primes(F, 2, warnings)[2].size() == 3);
        CHECK(warnings.size() == 1);
    }

    SUBCASE("concurrent users agree") {
        std::vector<std::size_t> sizes(4);
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < sizes.size(); ++i)
            pool.emplace_back([&, i] {
                std::vector<std::string> w;
                sizes[i] = DiskCache(dir).family(F, 1, Variant::Full, w).size();
            });
        for (auto& t : pool) t.join();
        for (std::size_t s : sizes) CHECK(s == 144 * 4);
        CacheEntry e;
        CHECK(cache.load({"family", 3, 1, "full"}, e) == CacheStatus::Hit);
    }

    fs::remove_all(dir);
}

TEST_CASE("cache directory resolution") {
    const char* old = std::getenv("FFSTAT_CACHE_DIR");
    const std::string saved = old ? old : "";
    ::setenv("FFSTAT_CACHE_DIR", "/tmp/from-env", 1);
    CHECK(resolve_cache_dir(std::nullopt) == "/tmp/from-env");
    CHECK(resolve_cache_dir(std::string("/tmp/from-flag")) == "/tmp/from-flag");
    ::unsetenv("FFSTAT_CACHE_DIR");
    CHECK(resolve_cache_dir(std::nullopt).empty());
    if (old) ::setenv("FFSTAT_CACHE_DIR", saved.c_str(), 1);

    const fs::path dir = fresh_dir("cli-cache");
    const Result a = invoke({"primes", "--q", "5", "--max-degree", "3", "--cache-dir", dir.string()});
    const Result b = invoke({"primes", "--q", "5", "--max-degree", "3", "--cache-dir", dir.string()});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(fs::exists(dir / "primes-q5-3.jsonl"));
    fs::remove_all(dir);
}
