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

#include <functional>
#include <vector>

#include "ffstat/poly.hpp"

namespace ffstat {

/// One character term c * eps^deg(Q) * chi_D(Q) of a local factor.
struct CharacterTerm {
    mpq_class c;
    int eps = 1;
    Poly D;
};

/// delta(u; Q) = (sum_i c_i chi_i(Q)) u^deg Q + O(|u|^((1+eta) deg Q)).
struct LocalFactorSpec {
    FieldPtr field;
    std::vector<CharacterTerm> character_part;
    /// The full local factor 1 + delta(u; Q) for a monic prime Q.
    std::function<mpq_class(const Poly& Q, const mpq_class& u)> exact_factor;
    mpq_class eta = 1;

    /// sum_i c_i chi_i(Q).
    mpq_class linear_coefficient(const Poly& Q) const;
};

enum class FactorKind { Plus, Minus, Zero };

const char* kind_name(FactorKind k);

/// 1 + delta_{P,kind}(u; Q) exactly. Throws std::invalid_argument unless P
/// and Q are monic irreducible.
mpq_class local_factor(FactorKind kind, const Poly& P, const Poly& Q, const mpq_class& u);

/// The LocalFactorSpec whose exact factor is local_factor(kind, P, ., .), eta = 1.
LocalFactorSpec delta_spec(FactorKind kind, const Poly& P);

/// Exact factor 1 - u^(2 deg Q): the product tends to 1 / zeta_q(2) at u = 1/q.
LocalFactorSpec inverse_zeta2_spec(const FieldPtr& field);

/// Exact factor 1 for every Q.
LocalFactorSpec trivial_spec(const FieldPtr& field);

/// |1 + delta - 1 - linear u^deg Q| / |u|^((1+eta) deg Q), as a double.
double remainder_ratio(const LocalFactorSpec& spec, const Poly& Q, const mpq_class& u);

/// Whether |u| < min(q^(-1/(1+eta)), q^(-1/2)).
bool in_convergence_disc(std::uint64_t q, const mpq_class& eta, const mpq_class& u);

struct TruncatedProduct {
    unsigned M = 0;
    mpq_class u;
    mpq_class value;
    /// Set when u lies outside the disc; the value is still exact.
    bool outside_disc = false;
};

/// prod over monic primes Q with lo <= deg Q <= hi of the exact factor.
/// Numerators and denominators are multiplied separately and reduced once.
mpq_class partial_product(const LocalFactorSpec& spec, unsigned lo, unsigned hi, const mpq_class& u);

/// Q_delta^(M)(u). Throws std::invalid_argument for M = 0.
TruncatedProduct truncated_product(const LocalFactorSpec& spec, unsigned M, const mpq_class& u);

/// (q^(1/2)|u|)^M / M + (q |u|^(1+eta))^M / M, a scale without the implied
/// constant.
double tail_bound(std::uint64_t q, const mpq_class& eta, unsigned M, double u);

/// H_{P,kind}(u) truncated at M: the product of the exact factors divided by
/// the L local factors (1 - chi(Q) u^deg Q)^(-1) they absorb.
mpq_class h_value(FactorKind kind, const Poly& P, const mpq_class& u, unsigned M);

/// L(u, chi_P^sign) evaluated exactly from the L-polynomial.
mpq_class l_value(const Poly& P, bool minus, const mpq_class& u);

/// L(u, chi_P^+/-)^2 H_{P,+/-}(u), or L(u, chi_P^+) L(u, chi_P^-) H_{P,0}(u)
/// for the zero kind, with H truncated at M.
mpq_class assembled_product(FactorKind kind, const Poly& P, const mpq_class& u, unsigned M);

struct PrimeSumReport {
    std::uint64_t q = 0;
    unsigned n = 0, M = 0;
    FactorKind kind = FactorKind::Plus;
    mpq_class sum;
    mpq_class reference;  // pi_q(n) / zeta_q(2)
    /// q^(n-2M)/n, q^(n/2) M^3 / n, q^n / (n M q^(M/2)).
    double scale_truncation = 0, scale_characters = 0, scale_tail = 0;
    /// |sum - reference| n / q^(n/2).
    double scaled_gap = 0;
};

/// sum over monic primes P of degree n of Q_{delta_{P,kind}}^(M)(1/q).
/// Per-prime products run on `threads` workers and are added in prime order.
PrimeSumReport prime_sum(FactorKind kind, const FieldPtr& field, unsigned n, unsigned M, unsigned threads = 1);

}  // namespace ffstat
