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

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ffstat/field.hpp"

namespace ffstat {

/// Dense univariate polynomial over a base field F_q.
///
/// Coefficients are stored in ascending order with no trailing zeros, so
/// the zero polynomial has an empty coefficient vector. Its degree is the
/// sentinel std::nullopt (minus infinity), never -1.
class Poly {
public:
    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<Elem> coeffs);

    /// Coefficients given as integers, reduced into F_p (prime fields) or
    /// taken as element indices (they must then lie in [0, q)).
    static Poly from_ints(FieldPtr field, const std::vector<long long>& coeffs);
    static Poly constant(FieldPtr field, Elem c);
    static Poly one(FieldPtr field) { return constant(field, Elem{1}); }
    /// c * X^n
    static Poly monomial(FieldPtr field, std::size_t n, Elem c = Elem{1});
    static Poly x(FieldPtr field) { return monomial(std::move(field), 1); }

    const FieldPtr& field() const { return field_; }
    const FiniteField& F() const { return *field_; }
    const std::vector<Elem>& coeffs() const { return c_; }

    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    /// Degree of a nonzero polynomial; throws std::domain_error on zero.
    std::size_t deg() const;

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back().v == 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].v == 1; }

    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }
    /// Leading coefficient; zero for the zero polynomial.
    Elem leading() const { return c_.empty() ? Elem{0} : c_.back(); }

    Elem eval(Elem x) const;
    Poly monic() const;
    Poly derivative() const;

    friend bool operator==(const Poly& a, const Poly& b);

    Poly& operator+=(const Poly& b);
    Poly& operator-=(const Poly& b);
    Poly& operator*=(const Poly& b);

private:
    void trim();

    FieldPtr field_;
    std::vector<Elem> c_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, Elem c);

struct DivMod {
    Poly quotient;
    Poly remainder;
};

/// Long division a = quotient * b + remainder with deg(remainder) < deg(b).
/// Throws std::domain_error when b is zero.
DivMod divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd; zero when both inputs are zero.
Poly gcd(const Poly& a, const Poly& b);

Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
/// base^exponent mod m for a nonconstant modulus m.
Poly powmod(const Poly& base, const mpz_class& exponent, const Poly& m);

/// Total order used for deterministic containers: by degree, then by
/// coefficients from the top down.
bool poly_less(const Poly& a, const Poly& b);

/// Throws std::invalid_argument when a and b live over different fields.
void require_same_field(const Poly& a, const Poly& b);

}  // namespace ffstat
