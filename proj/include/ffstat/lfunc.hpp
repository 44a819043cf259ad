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

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ffstat/errors.hpp"
#include "ffstat/poly.hpp"
#include "ffstat/residue.hpp"

namespace ffstat {

enum class CharSign { Plus, Minus };

const char* sign_name(CharSign s);

/// The quadratic character chi_D^{+/-} for a square-free modulus D.
///
/// A nonmonic D defines the same character as its monic normalization:
/// constants are units and (F/P) only depends on F mod P. The minus twist
/// multiplies by (-1)^deg F.
class QuadChar {
public:
    /// Throws std::invalid_argument when D is zero or not square-free.
    QuadChar(Poly D, CharSign sign = CharSign::Plus);

    const Poly& modulus() const { return d_; }
    const Poly& monic_modulus() const { return monic_; }
    CharSign sign() const { return sign_; }
    unsigned degree() const { return static_cast<unsigned>(monic_.deg()); }
    /// Distinct monic prime factors of D, sorted.
    const std::vector<Poly>& primes() const { return primes_; }
    /// 1 iff deg D is even.
    unsigned lambda() const { return degree() % 2 == 0 ? 1 : 0; }

    QuadChar twisted(CharSign s) const;

    int value(const Poly& f) const;

private:
    Poly d_;
    Poly monic_;
    CharSign sign_;
    std::vector<Poly> primes_;
    std::vector<ResidueReducer> reducers_;
    std::vector<std::shared_ptr<const std::vector<std::int8_t>>> tables_;
};

int char_value(const QuadChar& chi, const Poly& f);

/// chi(F) for every residue F mod D, by residue index (sign ignored: the
/// table is for chi_D^+ on residues).
std::vector<std::int8_t> residue_character_table(const QuadChar& chi);

struct LPoly {
    std::uint32_t q = 0;
    std::vector<mpz_class> coeffs;  // ascending
    unsigned modulus_degree = 0;
    bool completed = false;
    unsigned lambda = 0;
    unsigned delta = 0;
    CharSign sign = CharSign::Plus;

    /// Degree of the coefficient list (trailing zeros count in raw form).
    std::size_t length() const { return coeffs.size(); }
};

/// sum_{F monic, deg F = d} chi(F), by enumeration.
mpz_class character_sum(const QuadChar& chi, unsigned d);

/// Raw L(u, chi): coefficients 0..deg D - 1 (trailing zeros kept).
/// Throws std::invalid_argument for constant D.
LPoly l_polynomial(const QuadChar& chi);

/// L* = L / (1 - u)^lambda for the plus sign and L / (1 + u)^lambda for the
/// minus sign. Throws InvariantViolation when the division is not exact or
/// the quotient does not have degree 2 delta.
LPoly complete_l(const LPoly& raw, const QuadChar& chi);

/// c_j = q^(j - delta) c_(2 delta - j) for all j, exactly.
bool satisfies_functional_equation(const LPoly& completed);

/// Power sums p_1..p_n_max of the reciprocal roots of sum_j c_j u^j (c_0 = 1),
/// by Newton's identities. Element 0 of the result is unused (set to the
/// number of roots).
std::vector<mpz_class> power_sums_from_coefficients(const std::vector<mpz_class>& coeffs, unsigned n_max);

/// Inverse direction: coefficients c_0 = 1, ..., c_k from p_1..p_k. Throws
/// InvariantViolation when a step is not an exact integer division.
std::vector<mpz_class> coefficients_from_power_sums(const std::vector<mpz_class>& p, unsigned k);

struct FrobeniusData {
    std::uint32_t q = 0;
    unsigned delta = 0;
    /// traces[n] = t_n = q^(n/2) Tr(Theta^n), n = 1..n_max (traces[0] = 2 delta).
    std::vector<mpz_class> traces;
    std::optional<std::vector<std::complex<long double>>> roots;
    std::optional<double> rh_max_deviation;

    double trace(unsigned n) const;
};

/// Newton traces of a completed L-polynomial; with_roots adds the reciprocal
/// roots and their deviation from the circle |rho| = sqrt(q).
FrobeniusData frobenius_traces(const LPoly& lstar, unsigned n_max, bool with_roots = false);

/// sum_{F monic, deg F = n} Lambda(F) chi(F), by enumeration of primes of
/// degree dividing n.
mpz_class von_mangoldt_sum(const QuadChar& chi, unsigned n);

/// The right side of the explicit formula, q^(n/2) (-Tr Theta^n) =
/// eps_n lambda + sum Lambda(F) chi(F), with eps_n = 1 for the plus sign and
/// (-1)^n for the minus sign. Equals -t_n.
mpz_class explicit_formula_trace(const QuadChar& chi, unsigned n);

/// zeta_q(s) = 1 / (1 - q^(1-s)). Throws std::domain_error for s <= 1.
mpq_class zeta_q_value(std::uint64_t q, long s);

/// Von Mangoldt character sums for many moduli at once.
///
/// For every monic prime P with deg P <= n_max, chi_{P_i}(P) is stored per
/// small prime P_i; the sums for D = prod P_i are products of these columns.
class PrimeCharacterSums {
public:
    PrimeCharacterSums(FieldPtr field, unsigned max_modulus_degree, unsigned n_max);

    /// Entry n (1..n_max) is sum_{deg F = n} Lambda(F) chi(F).
    std::vector<mpz_class> sums(const QuadChar& chi) const;

    unsigned n_max() const { return n_max_; }

private:
    FieldPtr field_;
    unsigned max_mod_deg_;
    unsigned n_max_;
    std::vector<std::size_t> block_start_;  // by degree, into a column
    std::vector<std::size_t> block_count_;
    // columns_[deg P_i][monic index of P_i]
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::int8_t>>> columns_;
};

}  // namespace ffstat
