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

#include "ffstat/lfunc.hpp"

#include <cmath>
#include <stdexcept>

#include "ffstat/arith.hpp"
#include "ffstat/enumerate.hpp"
#include "ffstat/numeric.hpp"
#include "ffstat/primes.hpp"

namespace ffstat {

const char* sign_name(CharSign s) { return s == CharSign::Plus ? "plus" : "minus"; }

QuadChar::QuadChar(Poly D, CharSign sign) : d_(std::move(D)), monic_(d_.field()), sign_(sign) {
    if (d_.is_zero()) throw std::invalid_argument("character modulus must be nonzero");
    monic_ = d_.monic();
    if (!is_squarefree(monic_)) throw std::invalid_argument("character modulus must be square-free");
    if (!monic_.is_constant()) primes_ = squarefree_prime_factors(monic_);
    for (const Poly& p : primes_) {
        reducers_.emplace_back(p);
        tables_.push_back(legendre_table(p));
    }
}

QuadChar QuadChar::twisted(CharSign s) const {
    QuadChar c = *this;
    c.sign_ = s;
    return c;
}

int QuadChar::value(const Poly& f) const {
    if (f.is_zero()) return primes_.empty() ? 1 : 0;
    int v = 1;
    for (std::size_t i = 0; i < primes_.size() && v != 0; ++i) v *= (*tables_[i])[reducers_[i].reduce(f)];
    if (sign_ == CharSign::Minus && f.deg() % 2 == 1) v = -v;
    return v;
}

int char_value(const QuadChar& chi, const Poly& f) { return chi.value(f); }

std::vector<std::int8_t> residue_character_table(const QuadChar& chi) {
    const FieldPtr& field = chi.monic_modulus().field();
    const FiniteField& f = *field;
    const std::uint32_t q = f.order();
    const unsigned k = chi.degree();
    const std::uint64_t total = monic_count(q, k);
    std::vector<std::int8_t> out(total, 1);
    if (k == 0) return out;
    const auto& primes = chi.primes();
    std::vector<std::shared_ptr<const std::vector<std::int8_t>>> tables;
    for (const Poly& p : primes) tables.push_back(legendre_table(p));

    if (!f.is_prime_field()) {
        std::vector<ResidueReducer> red;
        for (const Poly& p : primes) red.emplace_back(p);
        std::vector<std::uint32_t> c(k, 0);
        for (std::uint64_t r = 0; r < total; ++r) {
            int v = 1;
            for (std::size_t i = 0; i < primes.size(); ++i) v *= (*tables[i])[red[i].reduce(c)];
            out[r] = static_cast<std::int8_t>(v);
            for (unsigned j = 0; j < k; ++j) {
                if (++c[j] < q) break;
                c[j] = 0;
            }
        }
        return out;
    }

    // Prime field: stepping digit j (with or without wrap) adds X^j mod P_i
    // to the residue mod P_i, so residues are updated by additions only.
    struct Track {
        unsigned e;
        std::vector<std::vector<std::uint32_t>> xpow;  // xpow[j] = X^j mod P_i
        std::vector<std::uint32_t> s;
        const std::vector<std::int8_t>* table;
    };
    std::vector<Track> tracks;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        Track t;
        t.e = static_cast<unsigned>(primes[i].deg());
        for (unsigned j = 0; j < k; ++j) {
            const Poly r = Poly::monomial(field, j) % primes[i];
            std::vector<std::uint32_t> d(t.e, 0);
            for (unsigned a = 0; a < t.e; ++a) d[a] = r.coeff(a).v;
            t.xpow.push_back(std::move(d));
        }
        t.s.assign(t.e, 0);
        t.table = tables[i].get();
        tracks.push_back(std::move(t));
    }
    std::vector<std::uint32_t> c(k, 0);
    for (std::uint64_t r = 0; r < total; ++r) {
        int v = 1;
        for (const Track& t : tracks) {
            std::uint64_t idx = 0;
            for (unsigned a = t.e; a-- > 0;) idx = idx * q + t.s[a];
            v *= (*t.table)[idx];
        }
        out[r] = static_cast<std::int8_t>(v);
        for (unsigned j = 0; j < k; ++j) {
            for (Track& t : tracks)
                for (unsigned a = 0; a < t.e; ++a) {
                    const std::uint32_t x = t.s[a] + t.xpow[j][a];
                    t.s[a] = x >= q ? x - q : x;
                }
            if (++c[j] < q) break;
            c[j] = 0;
        }
    }
    return out;
}

mpz_class character_sum(const QuadChar& chi, unsigned d) {
    mpz_class s = 0;
    for (const Poly& f : enumerate(chi.modulus().field(), d, PolyKind::Monic)) s += chi.value(f);
    return s;
}

LPoly l_polynomial(const QuadChar& chi) {
    const unsigned k = chi.degree();
    if (k == 0) throw std::invalid_argument("L-polynomial needs a nonconstant modulus");
    const std::uint32_t q = chi.modulus().F().order();
    const auto table = residue_character_table(chi);
    LPoly L;
    L.q = q;
    L.modulus_degree = k;
    L.sign = chi.sign();
    L.lambda = chi.lambda();
    L.coeffs.resize(k);
    for (unsigned d = 0; d < k; ++d) {
        const std::uint64_t lo = monic_count(q, d);
        long s = 0;
        for (std::uint64_t i = lo; i < 2 * lo; ++i) s += table[i];
        if (chi.sign() == CharSign::Minus && d % 2 == 1) s = -s;
        L.coeffs[d] = s;
    }
    return L;
}

LPoly complete_l(const LPoly& raw, const QuadChar& chi) {
    if (raw.completed) throw std::invalid_argument("complete_l expects a raw L-polynomial");
    if (raw.sign != chi.sign() || raw.modulus_degree != chi.degree())
        throw std::invalid_argument("L-polynomial does not belong to this character");
    LPoly out = raw;
    out.completed = true;
    out.lambda = chi.lambda();
    const unsigned two_delta = chi.degree() - 1 - out.lambda;
    out.delta = two_delta / 2;
    std::vector<mpz_class> a = raw.coeffs;
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (out.lambda == 1) {
        // a = (1 - s u) b
        const int s = chi.sign() == CharSign::Plus ? 1 : -1;
        if (a.empty()) throw InvariantViolation("L-polynomial vanishes identically");
        std::vector<mpz_class> b(a.size() - 1);
        mpz_class prev = 0;
        for (std::size_t j = 0; j + 1 < a.size(); ++j) {
            b[j] = a[j] + s * prev;
            prev = b[j];
        }
        if (a.back() + s * prev != 0)
            throw InvariantViolation("L-polynomial is not divisible by its trivial factor");
        a = std::move(b);
    }
    if (a.size() != two_delta + 1)
        throw InvariantViolation("completed L-polynomial has degree " + std::to_string(long(a.size()) - 1) +
                                 ", expected " + std::to_string(two_delta));
    out.coeffs = std::move(a);
    return out;
}

bool satisfies_functional_equation(const LPoly& L) {
    if (!L.completed || L.coeffs.size() != 2 * L.delta + 1) return false;
    mpz_class qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), L.q, L.delta);
    for (unsigned j = 0; j <= 2 * L.delta; ++j) {
        mpz_class qj;
        mpz_ui_pow_ui(qj.get_mpz_t(), L.q, j);
        if (L.coeffs[j] * qd != qj * L.coeffs[2 * L.delta - j]) return false;
    }
    return true;
}

std::vector<mpz_class> power_sums_from_coefficients(const std::vector<mpz_class>& c, unsigned n_max) {
    if (c.empty() || c[0] != 1) throw std::invalid_argument("power sums need constant coefficient 1");
    auto coef = [&](std::size_t i) { return i < c.size() ? c[i] : mpz_class(0); };
    std::vector<mpz_class> p(n_max + 1);
    std::size_t deg = c.size() - 1;
    while (deg > 0 && c[deg] == 0) --deg;
    p[0] = static_cast<unsigned long>(deg);
    for (unsigned n = 1; n <= n_max; ++n) {
        mpz_class s = -mpz_class(n) * coef(n);
        for (unsigned i = 1; i < n && i <= deg; ++i) s -= coef(i) * p[n - i];
        p[n] = s;
    }
    return p;
}

std::vector<mpz_class> coefficients_from_power_sums(const std::vector<mpz_class>& p, unsigned k) {
    if (p.size() <= k) throw std::invalid_argument("not enough power sums");
    std::vector<mpz_class> c(k + 1);
    c[0] = 1;
    for (unsigned n = 1; n <= k; ++n) {
        mpz_class s = -p[n];
        for (unsigned i = 1; i < n; ++i) s -= c[i] * p[n - i];
        if (!mpz_divisible_ui_p(s.get_mpz_t(), n)) throw InvariantViolation("power sums do not give integer coefficients");
        c[n] = s / n;
    }
    return c;
}

double FrobeniusData::trace(unsigned n) const {
    return traces.at(n).get_d() / std::pow(static_cast<double>(q), n / 2.0);
}

FrobeniusData frobenius_traces(const LPoly& lstar, unsigned n_max, bool with_roots) {
    if (!lstar.completed) throw std::invalid_argument("frobenius_traces expects a completed L-polynomial");
    FrobeniusData fd;
    fd.q = lstar.q;
    fd.delta = lstar.delta;
    fd.traces = power_sums_from_coefficients(lstar.coeffs, n_max);
    if (with_roots) {
        fd.roots = reciprocal_roots(lstar.coeffs);
        fd.rh_max_deviation = rh_deviation(*fd.roots, lstar.q);
    }
    return fd;
}

mpz_class von_mangoldt_sum(const QuadChar& chi, unsigned n) {
    if (n == 0) throw std::invalid_argument("von Mangoldt sums need n >= 1");
    const auto table = PrimeTable::get(chi.modulus().field(), n);
    mpz_class s = 0;
    for (unsigned m = 1; m <= n; ++m) {
        if (n % m) continue;
        const unsigned k = n / m;
        long part = 0;
        for (const Poly& p : table->of_degree(m)) {
            const int v = chi.value(p);
            part += (k % 2 == 1) ? v : v * v;
        }
        s += mpz_class(part) * m;
    }
    return s;
}

mpz_class explicit_formula_trace(const QuadChar& chi, unsigned n) {
    const int eps = (chi.sign() == CharSign::Minus && n % 2 == 1) ? -1 : 1;
    return eps * static_cast<int>(chi.lambda()) + von_mangoldt_sum(chi, n);
}

mpq_class zeta_q_value(std::uint64_t q, long s) {
    if (s <= 1) throw std::domain_error("zeta_q has a pole at s = 1 and is not evaluated for s <= 1");
    mpz_class qs;
    mpz_ui_pow_ui(qs.get_mpz_t(), q, static_cast<unsigned long>(s - 1));
    mpq_class r(qs, qs - 1);
    r.canonicalize();
    return r;
}

PrimeCharacterSums::PrimeCharacterSums(FieldPtr field, unsigned max_modulus_degree, unsigned n_max)
    : field_(std::move(field)), max_mod_deg_(max_modulus_degree), n_max_(n_max) {
    const auto table = PrimeTable::get(field_, std::max(n_max, max_modulus_degree));
    block_start_.assign(n_max + 2, 0);
    block_count_.assign(n_max + 1, 0);
    std::size_t total = 0;
    for (unsigned m = 1; m <= n_max; ++m) {
        block_start_[m] = total;
        block_count_[m] = table->of_degree(m).size();
        total += block_count_[m];
    }
    block_start_[n_max + 1] = total;
    columns_.resize(max_modulus_degree + 1);
    for (unsigned e = 1; e <= max_modulus_degree; ++e) {
        for (const Poly& pi : table->of_degree(e)) {
            const ResidueReducer red(pi);
            const auto leg = legendre_table(pi);
            std::vector<std::int8_t> col(total);
            for (unsigned m = 1; m <= n_max; ++m) {
                const auto& packed = table->packed(m);
                for (std::size_t j = 0; j < block_count_[m]; ++j) {
                    const std::span<const std::uint32_t> coeffs(packed.data() + j * (m + 1), m + 1);
                    col[block_start_[m] + j] = (*leg)[red.reduce(coeffs)];
                }
            }
            columns_[e].emplace(monic_index(pi), std::move(col));
        }
    }
}

std::vector<mpz_class> PrimeCharacterSums::sums(const QuadChar& chi) const {
    if (chi.degree() > max_mod_deg_) throw std::invalid_argument("modulus degree exceeds the precomputed range");
    if (!chi.modulus().F().same_as(*field_)) throw std::invalid_argument("character over a different field");
    const std::size_t total = block_start_[n_max_ + 1];
    std::vector<std::int8_t> prod(total, 1);
    for (const Poly& p : chi.primes()) {
        const auto& col = columns_[p.deg()].at(monic_index(p));
        for (std::size_t i = 0; i < total; ++i) prod[i] = static_cast<std::int8_t>(prod[i] * col[i]);
    }
    std::vector<long> s1(n_max_ + 1, 0), s2(n_max_ + 1, 0);
    for (unsigned m = 1; m <= n_max_; ++m)
        for (std::size_t i = block_start_[m]; i < block_start_[m + 1]; ++i) {
            s1[m] += prod[i];
            s2[m] += prod[i] != 0;
        }
    std::vector<mpz_class> out(n_max_ + 1, 0);
    for (unsigned n = 1; n <= n_max_; ++n) {
        mpz_class s = 0;
        for (unsigned m = 1; m <= n; ++m)
            if (n % m == 0) s += mpz_class((n / m) % 2 == 1 ? s1[m] : s2[m]) * m;
        if (chi.sign() == CharSign::Minus && n % 2 == 1) s = -s;
        out[n] = s;
    }
    return out;
}

}  // namespace ffstat
