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
#include <vector>

#include "ffstat/poly.hpp"

namespace ffstat {

struct MobiusResult {
    int mu = 0;
    bool squarefree = false;
};

/// Möbius function of a nonzero polynomial (units have mu = 1).
/// Square-freeness comes from gcd(F, F'); the prime count from distinct-degree
/// factorization. Throws std::domain_error on zero.
MobiusResult mobius_squarefree(const Poly& f);

bool is_squarefree(const Poly& f);

/// Rabin's test. Throws std::domain_error on constant input.
bool is_irreducible(const Poly& f);

/// Irreducibility by trial division against every monic polynomial of degree
/// <= deg(f)/2. Reference oracle for small cases.
bool is_irreducible_trial(const Poly& f);

/// Degree-d blocks of a square-free polynomial: element d holds the product of
/// its monic prime factors of degree d (index 0 unused).
std::vector<Poly> distinct_degree_factorization(const Poly& squarefree);

/// Monic prime factors of a square-free polynomial, sorted by poly_less.
std::vector<Poly> squarefree_prime_factors(const Poly& squarefree);

/// Legendre symbol (F / P) by Euler's criterion F^((|P|-1)/2) mod P.
/// Throws std::invalid_argument if P is not monic irreducible.
int legendre_symbol(const Poly& f, const Poly& p);

/// Jacobi symbol (A / B) for monic square-free B, computed with the
/// reciprocity law (A/B)(B/A) = (-1)^((q-1)/2 deg A deg B) for monic coprime
/// A, B and (c/B) = chi_q(c)^deg B for constants.
int jacobi_symbol(const Poly& a, const Poly& b);

/// Same value as legendre_symbol, via jacobi_symbol.
int legendre_symbol_reciprocity(const Poly& f, const Poly& p);

/// Exact number of monic irreducibles of degree n (necklace formula).
/// Throws std::invalid_argument for n = 0.
mpz_class prime_count_exact(std::uint64_t q, unsigned n);

/// Number of monic square-free polynomials of degree d.
mpz_class squarefree_count(std::uint64_t q, unsigned d);

/// Classical Möbius function on positive integers.
int integer_mobius(unsigned n);

}  // namespace ffstat
