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

#include <cstdint>
#include <memory>
#include <vector>

#include "ffstat/poly.hpp"

namespace ffstat {

/// Element of F_{q^n}: index whose base-q digits are the coefficients of the
/// representing polynomial modulo the defining modulus.
struct ExtElem {
    std::uint32_t index = 0;
    friend constexpr auto operator<=>(ExtElem, ExtElem) = default;
};

/// A point of P^1(F_{q^n}).
struct P1Point {
    bool at_infinity = false;
    ExtElem x{};

    static P1Point infinity() { return {true, {}}; }
    static P1Point finite(ExtElem e) { return {false, e}; }
};

/// F_{q^n} = F_q[T]/(m(T)) with m the lexicographically least monic
/// irreducible of degree n. Arithmetic is table driven (exp/log and Zech
/// logarithms over a fixed primitive element).
class ExtensionField {
public:
    ExtensionField(FieldPtr base, unsigned n);

    const FieldPtr& base() const { return base_; }
    unsigned degree() const { return n_; }
    /// q^n
    std::uint32_t size() const { return size_; }
    const Poly& modulus() const { return modulus_; }

    ExtElem zero() const { return {0}; }
    ExtElem one() const { return {1}; }
    /// F_q sits inside F_{q^n} as the constants.
    ExtElem embed(Elem c) const { return {c.v}; }
    ExtElem element(std::uint32_t index) const;

    ExtElem add(ExtElem a, ExtElem b) const;
    ExtElem mul(ExtElem a, ExtElem b) const;
    ExtElem pow(ExtElem a, std::uint64_t k) const;
    /// a^q
    ExtElem frobenius(ExtElem a) const;

    /// Degree over F_q of the minimal polynomial of a.
    unsigned minimal_degree(ExtElem a) const;
    /// Whether a lies in the subfield F_{q^m}; m must divide n.
    bool in_subfield(ExtElem a, unsigned m) const;

    ExtElem eval(const Poly& f, ExtElem x) const;

    /// chi_2(a) by Euler's criterion a^((q^n-1)/2).
    int quadratic_character(ExtElem a) const;
    /// chi_2 on the image of F_q: chi_q(c)^n.
    int quadratic_character(Elem c) const;

    /// chi_2(f(x)) for every x, indexed by element index. Uses Horner in log
    /// coordinates and the parity of the discrete log.
    std::vector<std::int8_t> character_table(const Poly& f) const;
    /// chi_2(f(infinity)) under the leading-coefficient convention.
    int character_at_infinity(const Poly& f) const;

    /// Coefficient digits of an element (ascending powers of T).
    std::vector<Elem> digits(ExtElem a) const;

private:
    static constexpr std::uint32_t kZeroLog = UINT32_MAX;

    std::uint32_t log_of(ExtElem a) const { return log_[a.index]; }

    FieldPtr base_;
    unsigned n_;
    std::uint32_t size_;
    Poly modulus_;
    std::vector<std::uint32_t> exp_;  // exp_[k] = index of g^k, k < size-1
    std::vector<std::uint32_t> log_;  // log_[index], kZeroLog for 0
    std::vector<std::uint32_t> zech_;  // 1 + g^k = g^zech_[k]
};

using ExtensionPtr = std::shared_ptr<const ExtensionField>;

/// Shared, cached F_{q^n} over the given base field.
ExtensionPtr extension_field(const FieldPtr& base, unsigned n);

/// chi_2(F(x)) for x in P^1(F_{q^n}): Euler's criterion at finite points,
/// and at infinity chi_2(leading coefficient) when deg F is even, else 0.
int quad_char_eval(const Poly& f, const P1Point& x, const ExtensionField& ext);

}  // namespace ffstat
