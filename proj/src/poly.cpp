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

#include "ffstat/poly.hpp"

#include <stdexcept>

namespace ffstat {

Poly::Poly(FieldPtr field) : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("polynomial needs a field");
}

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    if (!field_) throw std::invalid_argument("polynomial needs a field");
    for (const Elem e : c_)
        if (e.v >= field_->order()) throw std::out_of_range("coefficient index outside F_q");
    trim();
}

Poly Poly::from_ints(FieldPtr field, const std::vector<long long>& coeffs) {
    std::vector<Elem> c;
    c.reserve(coeffs.size());
    for (const long long v : coeffs) {
        if (field->is_prime_field()) {
            c.push_back(field->from_int(v));
        } else {
            if (v < 0) throw std::out_of_range("negative element index");
            c.push_back(field->element(static_cast<std::uint32_t>(v)));
        }
    }
    return Poly(std::move(field), std::move(c));
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), std::vector<Elem>{c}); }

Poly Poly::monomial(FieldPtr field, std::size_t n, Elem c) {
    std::vector<Elem> v(n + 1, Elem{0});
    v[n] = c;
    return Poly(std::move(field), std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
}

std::size_t Poly::deg() const {
    if (c_.empty()) throw std::domain_error("degree of the zero polynomial");
    return c_.size() - 1;
}

Elem Poly::eval(Elem x) const {
    const FiniteField& f = *field_;
    Elem acc{0};
    for (std::size_t i = c_.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c_[i]);
    return acc;
}

Poly Poly::monic() const {
    if (c_.empty()) throw std::domain_error("monic normalization of the zero polynomial");
    return *this * field_->inv(c_.back());
}

Poly Poly::derivative() const {
    std::vector<Elem> d;
    if (c_.size() > 1) d.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = field_->mul(field_->from_int(static_cast<long long>(i)), c_[i]);
    return Poly(field_, std::move(d));
}

bool operator==(const Poly& a, const Poly& b) { return a.field_->same_as(*b.field_) && a.c_ == b.c_; }

void require_same_field(const Poly& a, const Poly& b) {
    if (a.field().get() != b.field().get() && !a.F().same_as(b.F()))
        throw std::invalid_argument("polynomials over different fields: " + a.F().describe() + " vs " + b.F().describe());
}

Poly& Poly::operator+=(const Poly& b) {
    require_same_field(*this, b);
    if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), Elem{0});
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = field_->add(c_[i], b.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& b) {
    require_same_field(*this, b);
    if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), Elem{0});
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = field_->sub(c_[i], b.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& b) {
    *this = *this * b;
    return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly operator-(const Poly& a) {
    std::vector<Elem> c(a.coeffs());
    for (auto& e : c) e = a.F().neg(e);
    return Poly(a.field(), std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.field());
    const FiniteField& f = a.F();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Elem> c(x.size() + y.size() - 1, Elem{0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].v == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(x[i], y[j]));
    }
    return Poly(a.field(), std::move(c));
}

Poly operator*(const Poly& a, Elem s) {
    std::vector<Elem> c(a.coeffs());
    for (auto& e : c) e = a.F().mul(e, s);
    return Poly(a.field(), std::move(c));
}

DivMod divmod(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const FiniteField& f = a.F();
    if (a.is_zero() || a.deg() < b.deg()) return {Poly(a.field()), a};
    std::vector<Elem> r(a.coeffs());
    const auto& d = b.coeffs();
    const std::size_t db = b.deg();
    const Elem lead_inv = f.inv(b.leading());
    std::vector<Elem> quo(a.deg() - db + 1, Elem{0});
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k].v == 0) continue;
        const Elem c = f.mul(r[k], lead_inv);
        quo[k - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = f.sub(r[k - db + j], f.mul(c, d[j]));
    }
    r.resize(db);
    return {Poly(a.field(), std::move(quo)), Poly(a.field(), std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly gcd(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, const mpz_class& exponent, const Poly& m) {
    if (m.is_constant()) throw std::domain_error("powmod needs a nonconstant modulus");
    if (exponent < 0) throw std::domain_error("negative exponent in powmod");
    Poly result = Poly::one(m.field()) % m;
    Poly b = base % m;
    const std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m);
        if (mpz_tstbit(exponent.get_mpz_t(), i)) result = mulmod(result, b, m);
    }
    return result;
}

bool poly_less(const Poly& a, const Poly& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = x.size(); i-- > 0;)
        if (x[i].v != y[i].v) return x[i].v < y[i].v;
    return false;
}

}  // namespace ffstat
