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
#include <span>
#include <unordered_map>
#include <vector>

#include "ffstat/extension.hpp"
#include "ffstat/poly.hpp"

namespace ffstat {

/// Monic: f1, f2, f3 all monic. Full: f1, f2 range over every leading
/// coefficient, f3 stays monic.
enum class Variant { Monic, Full };

const char* variant_name(Variant v);

/// A family member (f1, f2, f3) of the biquadratic family of genus `genus`,
/// i.e. the curve Y1^2 = f1 f3, Y2^2 = f2 f3.
struct CurveTriple {
    Poly f1, f2, f3;
    Variant variant = Variant::Monic;
    unsigned genus = 0;
};

/// d1 + d2 + d3, plus 1 unless d1 + d3 and d2 + d3 are both even.
unsigned genus_length_L(unsigned d1, unsigned d2, unsigned d3);

struct DegreePattern {
    unsigned d1 = 0, d2 = 0, d3 = 0;
    /// Two degrees are zero and the third is g+3 or g+2: the triple gives a
    /// hyperelliptic curve and is not a family member.
    bool excluded = false;
};

/// Every (d1, d2, d3) with L(d1, d2, d3) = g + 3, in lexicographic order,
/// found by exhausting d1 + d2 + d3 <= g + 3. Excluded patterns are kept
/// and flagged.
std::vector<DegreePattern> degree_patterns(unsigned g);

/// Validates a triple (square-free, pairwise coprime, f3 monic, monic f1 f2
/// in the monic variant, admissible pattern) and returns its genus. Throws
/// std::invalid_argument otherwise.
unsigned triple_genus(const Poly& f1, const Poly& f2, const Poly& f3, Variant v);

/// All members, ordered by pattern, then by the monic indices of f1, f2,
/// f3, then (full variant) by the leading coefficients of f1 and f2.
std::vector<CurveTriple> enumerate_family(const FieldPtr& field, unsigned g, Variant v);

/// Member count, by enumeration of the monic family; the full count is
/// (q-1)^2 times the monic one by construction.
mpz_class family_size(const FieldPtr& field, unsigned g, Variant v);

struct CurveData {
    unsigned genus = 0;
    std::vector<mpz_class> N;    // N[n], n = 1..n_max (N[0] unused)
    std::vector<mpz_class> T;    // T[n] = q^n + 1 - N[n]
    std::vector<mpz_class> P_C;  // zeta numerator, ascending, degree 2g
};

/// N_n = sum over x in P^1(F_{q^n}) of 1 + chi(f1f3(x)) + chi(f2f3(x)) + chi(f1f2(x)).
CurveData curve_counts(const CurveTriple& t, unsigned n_max);

/// Zeta numerator from T_1..T_g and the functional equation, checked by
/// recomputing T_{g+1}. Throws InvariantViolation when that check fails.
/// The returned N, T cover n = 1..max(n_max, g+1).
CurveData zeta_numerator(const CurveTriple& t, unsigned n_max = 0);

/// Character values chi_2(f(x)), x in F_{q^n}, for a fixed set of monic
/// square-free polynomials, so that traces of many triples are inner
/// products. Immutable after construction.
class TraceTable {
public:
    /// Tabulates the monic normalizations of every polynomial in `family`.
    TraceTable(const FieldPtr& field, unsigned n, const std::vector<CurveTriple>& family);

    const ExtensionField& ext() const { return *ext_; }
    unsigned n() const { return n_; }
    /// Values of chi_2(f(x)) for the monic normalization of f.
    std::span<const std::int8_t> values(const Poly& f) const;
    /// sum over x in P^1 of chi_2(a b g h(x)) with a, b the leading
    /// coefficients of g, h.
    long pair_sum(const Poly& g, const Poly& h) const;
    /// T_n of the triple.
    long trace(const CurveTriple& t) const;

private:
    static std::uint64_t key(const Poly& monic);

    ExtensionPtr ext_;
    unsigned n_;
    std::unordered_map<std::uint64_t, std::vector<std::int8_t>> values_;
};

}  // namespace ffstat
