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

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ffstat {

/// Element of a base field F_q, stored as its index in [0, q).
///
/// For a prime field the index is the residue. For q = p^e the index is
/// the base-p digit string of the representing polynomial over F_p
/// (digit j = coefficient of t^j).
struct Elem {
    std::uint32_t v = 0;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// The base field F_q with q = p^e, p an odd prime.
///
/// Instances are immutable; share them through FieldPtr.
class FiniteField {
public:
    /// F_p. Throws std::invalid_argument unless p is an odd prime.
    static FieldPtr prime(std::uint32_t p);
    /// F_{p^e} built on the lexicographically least monic irreducible of
    /// degree e over F_p. Requires p^e <= 4096.
    static FieldPtr prime_power(std::uint32_t p, std::uint32_t e);
    /// Accepts any odd prime power q.
    static FieldPtr of_order(std::uint32_t q);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t extension_degree() const { return e_; }
    std::uint32_t order() const { return q_; }
    bool is_prime_field() const { return e_ == 1; }
    /// Ascending F_p coefficients of the defining modulus (empty for e = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool same_as(const FiniteField& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }
    /// Image of an integer under Z -> F_p -> F_q.
    Elem from_int(long long n) const;
    /// Element with the given index; throws if index >= q.
    Elem element(std::uint32_t index) const;

    Elem add(Elem a, Elem b) const {
        if (e_ == 1) {
            const std::uint32_t s = a.v + b.v;
            return Elem{s >= p_ ? s - p_ : s};
        }
        return Elem{add_table_[std::size_t(a.v) * q_ + b.v]};
    }
    Elem neg(Elem a) const {
        if (e_ == 1) return Elem{a.v == 0 ? 0 : p_ - a.v};
        return Elem{neg_[a.v]};
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (e_ == 1) return Elem{static_cast<std::uint32_t>(std::uint64_t(a.v) * b.v % p_)};
        return Elem{mul_table_[std::size_t(a.v) * q_ + b.v]};
    }
    /// Throws std::domain_error on zero.
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t k) const;

    /// The quadratic character of F_q: 0, 1 or -1.
    int quadratic_character(Elem a) const { return chi_[a.v]; }

    std::string describe() const;

private:
    FiniteField(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

    std::uint32_t p_;
    std::uint32_t e_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    // prime-power fields use full tables; prime fields compute directly
    std::vector<std::uint16_t> add_table_;
    std::vector<std::uint16_t> mul_table_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::int8_t> chi_;
};

bool is_odd_prime(std::uint64_t n);

}  // namespace ffstat
