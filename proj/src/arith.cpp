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

#include "ffstat/arith.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffstat/enumerate.hpp"

namespace ffstat {

namespace {

mpz_class ipow(std::uint64_t base, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// X^(q^k) mod m, by repeated q-th powering
Poly frobenius_power_of_x(const Poly& m, unsigned k) {
    const mpz_class q = m.F().order();
    Poly r = Poly::x(m.field()) % m;
    for (unsigned i = 0; i < k; ++i) r = powmod(r, q, m);
    return r;
}

std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("square-free test of the zero polynomial");
    if (f.is_constant()) return true;
    return gcd(f, f.derivative()).is_constant();
}

std::vector<Poly> distinct_degree_factorization(const Poly& squarefree) {
    Poly rest = squarefree.monic();
    const std::size_t n = rest.deg();
    std::vector<Poly> blocks(n + 1, Poly::one(rest.field()));
    const mpz_class q = rest.F().order();
    const Poly x = Poly::x(rest.field());
    Poly h = x % rest;
    for (std::size_t d = 1; !rest.is_constant() && 2 * d <= rest.deg(); ++d) {
        h = powmod(h, q, rest);
        Poly g = gcd(rest, h - x);
        if (!g.is_constant()) {
            blocks[d] = g;
            rest = rest / g;
            h = h % rest;
        }
    }
    if (!rest.is_constant()) blocks[rest.deg()] = rest;
    return blocks;
}

std::vector<Poly> squarefree_prime_factors(const Poly& squarefree) {
    if (!is_squarefree(squarefree)) throw std::invalid_argument("factorization input is not square-free");
    std::vector<Poly> out;
    if (squarefree.is_constant()) return out;
    const auto blocks = distinct_degree_factorization(squarefree);
    for (std::size_t d = 1; d < blocks.size(); ++d) {
        if (blocks[d].is_constant()) continue;
        if (blocks[d].deg() == d) {
            out.push_back(blocks[d]);
            continue;
        }
        // split a block of equal-degree primes by trial division
        Poly rest = blocks[d];
        for (const Poly& p : enumerate(rest.field(), static_cast<unsigned>(d), PolyKind::Prime)) {
            if ((rest % p).is_zero()) {
                out.push_back(p);
                rest = rest / p;
                if (rest.is_constant()) break;
            }
        }
    }
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

MobiusResult mobius_squarefree(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("Möbius function of the zero polynomial");
    if (f.is_constant()) return {1, true};
    if (!is_squarefree(f)) return {0, false};
    const auto blocks = distinct_degree_factorization(f);
    std::size_t r = 0;
    for (std::size_t d = 1; d < blocks.size(); ++d)
        if (!blocks[d].is_constant()) r += blocks[d].deg() / d;
    return {r % 2 == 0 ? 1 : -1, true};
}

bool is_irreducible(const Poly& f) {
    if (f.is_zero() || f.is_constant()) throw std::domain_error("irreducibility test needs a nonconstant polynomial");
    const Poly m = f.monic();
    const unsigned n = static_cast<unsigned>(m.deg());
    if (n == 1) return true;
    const Poly x = Poly::x(m.field()) % m;
    if (!(frobenius_power_of_x(m, n) - x).is_zero()) return false;
    for (const unsigned r : prime_divisors(n)) {
        if (!gcd(frobenius_power_of_x(m, n / r) - x, m).is_one()) return false;
    }
    return true;
}

bool is_irreducible_trial(const Poly& f) {
    if (f.is_zero() || f.is_constant()) throw std::domain_error("irreducibility test needs a nonconstant polynomial");
    const Poly m = f.monic();
    for (unsigned d = 1; 2 * d <= m.deg(); ++d)
        for (const Poly& g : enumerate(m.field(), d, PolyKind::Monic))
            if ((m % g).is_zero()) return false;
    return true;
}

int legendre_symbol(const Poly& f, const Poly& p) {
    require_same_field(f, p);
    if (!p.is_monic() || p.is_constant() || !is_irreducible(p))
        throw std::invalid_argument("Legendre symbol modulus must be monic irreducible");
    const Poly r = f % p;
    if (r.is_zero()) return 0;
    mpz_class e = ipow(p.F().order(), static_cast<unsigned>(p.deg()));
    e = (e - 1) / 2;
    const Poly v = powmod(r, e, p);
    if (v.is_one()) return 1;
    if (v.is_constant() && v.coeff(0) == p.F().from_int(-1)) return -1;
    throw std::logic_error("Euler criterion produced a non-unit value; modulus not prime");
}

int jacobi_symbol(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (!b.is_monic()) throw std::invalid_argument("Jacobi symbol modulus must be monic");
    const FiniteField& field = a.F();
    const bool half_odd = ((field.order() - 1) / 2) % 2 == 1;
    int sign = 1;
    Poly top = a % b;
    Poly bottom = b;
    while (true) {
        if (bottom.is_constant()) return sign;  // (A / 1) = 1
        if (top.is_zero()) return 0;
        const std::size_t db = bottom.deg();
        // pull the leading constant out: (cA'/B) = chi_q(c)^deg B (A'/B)
        const Elem c = top.leading();
        if (db % 2 == 1) sign *= field.quadratic_character(c);
        if (top.is_constant()) return sign;
        const Poly monic_top = top.monic();
        if (half_odd && (monic_top.deg() * db) % 2 == 1) sign = -sign;
        top = bottom % monic_top;
        bottom = monic_top;
    }
}

int legendre_symbol_reciprocity(const Poly& f, const Poly& p) {
    if (!p.is_monic() || p.is_constant() || !is_irreducible(p))
        throw std::invalid_argument("Legendre symbol modulus must be monic irreducible");
    return jacobi_symbol(f, p);
}

int integer_mobius(unsigned n) {
    if (n == 0) throw std::domain_error("mobius(0)");
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

mpz_class prime_count_exact(std::uint64_t q, unsigned n) {
    if (n == 0) throw std::invalid_argument("prime count needs degree n >= 1");
    mpz_class sum = 0;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d) continue;
        const int mu = integer_mobius(d);
        if (mu == 0) continue;
        sum += mu * ipow(q, n / d);
    }
    if (sum % n != 0) throw std::logic_error("necklace sum not divisible by n");
    return sum / n;
}

mpz_class squarefree_count(std::uint64_t q, unsigned d) {
    if (d <= 1) return ipow(q, d);
    return ipow(q, d) - ipow(q, d - 1);
}

}  // namespace ffstat
