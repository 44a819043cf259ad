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

#include "ffstat/biquad.hpp"

#include <stdexcept>

#include "ffstat/arith.hpp"
#include "ffstat/enumerate.hpp"
#include "ffstat/errors.hpp"
#include "ffstat/lfunc.hpp"

namespace ffstat {

const char* variant_name(Variant v) { return v == Variant::Monic ? "monic" : "full"; }

unsigned genus_length_L(unsigned d1, unsigned d2, unsigned d3) {
    const bool even = (d1 + d3) % 2 == 0 && (d2 + d3) % 2 == 0;
    return d1 + d2 + d3 + (even ? 0 : 1);
}

namespace {

bool pattern_excluded(unsigned g, unsigned d1, unsigned d2, unsigned d3) {
    const unsigned zeros = (d1 == 0) + (d2 == 0) + (d3 == 0);
    const unsigned top = d1 + d2 + d3;
    return zeros == 2 && (top == g + 3 || top == g + 2);
}

mpz_class power(std::uint64_t q, unsigned n) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, n);
    return r;
}

}  // namespace

std::vector<DegreePattern> degree_patterns(unsigned g) {
    std::vector<DegreePattern> out;
    for (unsigned d1 = 0; d1 <= g + 3; ++d1)
        for (unsigned d2 = 0; d1 + d2 <= g + 3; ++d2)
            for (unsigned d3 = 0; d1 + d2 + d3 <= g + 3; ++d3)
                if (genus_length_L(d1, d2, d3) == g + 3) out.push_back({d1, d2, d3, pattern_excluded(g, d1, d2, d3)});
    return out;
}

unsigned triple_genus(const Poly& f1, const Poly& f2, const Poly& f3, Variant v) {
    for (const Poly* f : {&f1, &f2, &f3})
        if (f->is_zero() || !is_squarefree(*f)) throw std::invalid_argument("triple entries must be nonzero and square-free");
    if (!f3.is_monic()) throw std::invalid_argument("f3 must be monic");
    if (v == Variant::Monic && (!f1.is_monic() || !f2.is_monic()))
        throw std::invalid_argument("monic variant needs monic f1 and f2");
    if (!gcd(f1, f2).is_one() || !gcd(f1, f3).is_one() || !gcd(f2, f3).is_one())
        throw std::invalid_argument("triple entries must be pairwise coprime");
    const unsigned d1 = static_cast<unsigned>(f1.deg()), d2 = static_cast<unsigned>(f2.deg()),
                   d3 = static_cast<unsigned>(f3.deg());
    const unsigned L = genus_length_L(d1, d2, d3);
    if (L < 3) throw std::invalid_argument("degree pattern has no genus");
    const unsigned g = L - 3;
    if (pattern_excluded(g, d1, d2, d3)) throw std::invalid_argument("degree pattern gives a hyperelliptic curve");
    return g;
}

std::vector<CurveTriple> enumerate_family(const FieldPtr& field, unsigned g, Variant v) {
    std::vector<std::vector<Poly>> sf(g + 4);
    for (unsigned d = 0; d <= g + 3; ++d) sf[d] = enumerate(field, d, PolyKind::SquarefreeMonic);
    const std::uint32_t q = field->order();
    std::vector<CurveTriple> out;
    for (const DegreePattern& p : degree_patterns(g)) {
        if (p.excluded) continue;
        for (const Poly& f1 : sf[p.d1])
            for (const Poly& f2 : sf[p.d2]) {
                if (!gcd(f1, f2).is_one()) continue;
                for (const Poly& f3 : sf[p.d3]) {
                    if (!gcd(f1, f3).is_one() || !gcd(f2, f3).is_one()) continue;
                    if (v == Variant::Monic) {
                        out.push_back({f1, f2, f3, v, g});
                        continue;
                    }
                    for (std::uint32_t a = 1; a < q; ++a)
                        for (std::uint32_t b = 1; b < q; ++b) out.push_back({f1 * Elem{a}, f2 * Elem{b}, f3, v, g});
                }
            }
    }
    return out;
}

mpz_class family_size(const FieldPtr& field, unsigned g, Variant v) {
    const mpz_class monic = static_cast<unsigned long>(enumerate_family(field, g, Variant::Monic).size());
    if (v == Variant::Monic) return monic;
    const unsigned long q1 = field->order() - 1;
    return monic * q1 * q1;
}

CurveData curve_counts(const CurveTriple& t, unsigned n_max) {
    CurveData cd;
    cd.genus = t.genus;
    cd.N.assign(n_max + 1, 0);
    cd.T.assign(n_max + 1, 0);
    const FieldPtr& field = t.f1.field();
    const Poly D1 = t.f1 * t.f3, D2 = t.f2 * t.f3, D3 = t.f1 * t.f2;
    for (unsigned n = 1; n <= n_max; ++n) {
        const auto ext = extension_field(field, n);
        long s = 0;
        for (std::uint32_t i = 0; i < ext->size(); ++i) {
            const P1Point x = P1Point::finite(ext->element(i));
            s += quad_char_eval(D1, x, *ext) + quad_char_eval(D2, x, *ext) + quad_char_eval(D3, x, *ext);
        }
        const P1Point inf = P1Point::infinity();
        s += quad_char_eval(D1, inf, *ext) + quad_char_eval(D2, inf, *ext) + quad_char_eval(D3, inf, *ext);
        const mpz_class qn1 = power(field->order(), n) + 1;
        cd.N[n] = qn1 + s;
        cd.T[n] = -s;
    }
    return cd;
}

CurveData zeta_numerator(const CurveTriple& t, unsigned n_max) {
    const unsigned g = t.genus;
    CurveData cd = curve_counts(t, std::max(n_max, g + 1));
    const std::uint64_t q = t.f1.F().order();
    // T_n are the power sums of the reciprocal roots of P_C
    const std::vector<mpz_class> low = coefficients_from_power_sums(cd.T, g);
    std::vector<mpz_class> a(2 * g + 1);
    for (unsigned j = 0; j <= g; ++j) a[j] = low[j];
    for (unsigned j = g + 1; j <= 2 * g; ++j) a[j] = power(q, j - g) * a[2 * g - j];
    const auto p = power_sums_from_coefficients(a, g + 1);
    if (p[g + 1] != cd.T[g + 1])
        throw InvariantViolation("zeta numerator does not reproduce N_" + std::to_string(g + 1));
    cd.P_C = std::move(a);
    return cd;
}

std::uint64_t TraceTable::key(const Poly& monic) {
    return (static_cast<std::uint64_t>(monic.deg()) << 48) | monic_index(monic);
}

TraceTable::TraceTable(const FieldPtr& field, unsigned n, const std::vector<CurveTriple>& family)
    : ext_(extension_field(field, n)), n_(n) {
    for (const CurveTriple& t : family)
        for (const Poly* f : {&t.f1, &t.f2, &t.f3}) {
            const Poly m = f->monic();
            const std::uint64_t k = key(m);
            if (!values_.count(k)) values_.emplace(k, ext_->character_table(m));
        }
}

std::span<const std::int8_t> TraceTable::values(const Poly& f) const {
    const auto it = values_.find(key(f.monic()));
    if (it == values_.end()) throw std::out_of_range("polynomial not tabulated");
    return it->second;
}

long TraceTable::pair_sum(const Poly& g, const Poly& h) const {
    const auto vg = values(g), vh = values(h);
    long s = 0;
    for (std::size_t i = 0; i < vg.size(); ++i) s += vg[i] * vh[i];
    const int c = ext_->quadratic_character(g.F().mul(g.leading(), h.leading()));
    if ((g.deg() + h.deg()) % 2 == 0) s += 1;  // infinity: chi(lc) of the product
    return c * s;
}

long TraceTable::trace(const CurveTriple& t) const {
    return -(pair_sum(t.f1, t.f3) + pair_sum(t.f2, t.f3) + pair_sum(t.f1, t.f2));
}

}  // namespace ffstat
