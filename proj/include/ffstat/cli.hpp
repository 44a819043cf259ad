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

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ffstat/biquad.hpp"
#include "ffstat/eulerprod.hpp"
#include "ffstat/lfunc.hpp"

namespace ffstat::cli {

enum class Command { Lfunc, Family, Curve, Moments, Density, Lemma61, Eulersum, Primes };
enum class Format { Csv, Json };
enum class Mode { Exhaustive, Sample };

const char* command_name(Command c);

/// Everything a run needs. Polynomial fields hold the text as given; they
/// are parsed against F_q during validation.
struct RunConfig {
    Command command = Command::Moments;
    std::uint32_t q = 3;
    unsigned genus = 1;
    unsigned n_max = 4;
    unsigned n = 2;
    unsigned M = 8;
    unsigned d_max = 8;
    unsigned max_degree = 4;
    double alpha = 0.25;
    Variant variant = Variant::Monic;
    Mode mode = Mode::Exhaustive;
    CharSign sign = CharSign::Plus;
    FactorKind kind = FactorKind::Plus;
    std::string kernel = "fejer";
    std::uint64_t seed = 1;
    std::uint64_t sample_size = 1000;
    std::uint64_t work_budget = 200'000'000;
    std::uint64_t check_curves = 4;
    unsigned threads = 1;
    bool check_rh = false;
    bool count = false;
    std::string modulus, prime, f1, f2 = "1", f3 = "1";
    std::string cache_dir;  // empty: no disk cache
    Format format = Format::Csv;
    std::string out;        // empty: stdout
};

/// A rejected configuration. what() is a single line starting with the
/// offending field name.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Throws ConfigError on the first out-of-range field.
void validate(const RunConfig& c);

/// Cache directory in effect: the flag if given, else FFSTAT_CACHE_DIR,
/// else none.
std::string resolve_cache_dir(const std::optional<std::string>& flag);

using IntList = std::vector<mpz_class>;
using Cell = std::variant<std::monostate, std::string, long long, double, bool, mpz_class, mpq_class, IntList>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// JSON as one object instead of an array of rows.
    bool single = false;
};

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// Header row, then one line per row. Rationals print as num/den, integer
/// lists as semicolon-separated values, empty cells as nothing.
std::string render_csv(const Table& t);
/// Rationals become {"num", "den"} objects with decimal strings.
std::string render_json(const Table& t);

/// Runs a validated configuration, writing the rendered table to `out` (or
/// the --out file) and warnings to `err`. Returns 0, 1 on a configuration
/// problem found while running, 2 on InvariantViolation.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Parses argv, validates and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffstat::cli
