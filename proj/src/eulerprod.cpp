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

#include "ffstat/eulerprod.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "ffstat/arith.hpp"
#include "ffstat/lfunc.hpp"
#include "ffstat/parallel.hpp"
#include "ffstat/primes.hpp"

namespace ffstat {

const char* kind_name(FactorKind k) {
    switch (k) {
        case FactorKind::Plus: return "plus";
        case FactorKind::Minus: return "minus";
        case FactorKind::Zero: return "zero";
    }
    return "?";
}

namespace {

mpq_class qpow(const mpq_class& u, unsigned k) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), u.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), u.get_den_mpz_t(), k);
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

// Product of a list by pairwise halving, so the big multiplications are balanced.
mpz_class product_tree(std::vector<mpz_class> v) {
    if (v.empty()) return 1;
    while (v.size() > 1) {
        std::size_t half = 0;
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) v[half++] = v[i] * v[i + 1];
        if (v.size() % 2) v[half++] = v.back();
        v.resize(half);
    }
    return v[0];
}

void require_prime(const Poly& f, const char* what) {
    if (f.is_constant() || !f.is_monic() || !is_irreducible(f))
        throw std::invalid_argument(std::string(what) + " must be monic irreducible");
}

struct PairChars {
    std::shared_ptr<QuadChar> plus, minus;
    explicit PairChars(const Poly& P)
        : plus(std::make_shared<QuadChar>(P, CharSign::Plus)), minus(std::make_shared<QuadChar>(P, CharSign::Minus)) {}
};

// 1 + a u^d - (1 + a) u^(2d) with a = chi_1 + chi_2 (the plus/minus kinds use chi_1 = chi_2)
mpq_class factor_from_chars(int c1, int c2, unsigned d, const mpq_class& u) {
    const mpq_class ud = qpow(u, d);
    const int a = c1 + c2;
    return 1 + a * ud - (1 + a) * ud * ud;
}

mpq_class kind_factor(FactorKind kind, const PairChars& ch, const Poly& Q, const mpq_class& u) {
    const unsigned d = static_cast<unsigned>(Q.deg());
    switch (kind) {
        case FactorKind::Plus: {
            const int c = ch.plus->value(Q);
            return factor_from_chars(c, c, d, u);
        }
        case FactorKind::Minus: {
            const int c = ch.minus->value(Q);
            return factor_from_chars(c, c, d, u);
        }
        case FactorKind::Zero: return factor_from_chars(ch.plus->value(Q), ch.minus->value(Q), d, u);
    }
    return 1;
}

}  // namespace

mpq_class LocalFactorSpec::linear_coefficient(const Poly& Q) const {
    mpq_class s = 0;
    for (const auto& t : character_part) {
        int v = QuadChar(t.D).value(Q);
        if (t.eps < 0 && Q.deg() % 2) v = -v;
        s += t.c * v;
    }
    return s;
}

mpq_class local_factor(FactorKind kind, const Poly& P, const Poly& Q, const mpq_class& u) {
    require_prime(P, "P");
    require_prime(Q, "Q");
    return kind_factor(kind, PairChars(P), Q, u);
}

LocalFactorSpec delta_spec(FactorKind kind, const Poly& P) {
    require_prime(P, "P");
    LocalFactorSpec s;
    s.field = P.field();
    switch (kind) {
        case FactorKind::Plus: s.character_part = {{2, 1, P}}; break;
        case FactorKind::Minus: s.character_part = {{2, -1, P}}; break;
        case FactorKind::Zero: s.character_part = {{1, 1, P}, {1, -1, P}}; break;
    }
    auto ch = std::make_shared<PairChars>(P);
    s.exact_factor = [kind, ch](const Poly& Q, const mpq_class& u) { return kind_factor(kind, *ch, Q, u); };
    s.eta = 1;
    return s;
}

LocalFactorSpec inverse_zeta2_spec(const FieldPtr& field) {
    LocalFactorSpec s;
    s.field = field;
    s.exact_factor = [](const Poly& Q, const mpq_class& u) -> mpq_class { return 1 - qpow(u, 2 * static_cast<unsigned>(Q.deg())); };
    s.eta = 1;
    return s;
}

LocalFactorSpec trivial_spec(const FieldPtr& field) {
    LocalFactorSpec s;
    s.field = field;
    s.exact_factor = [](const Poly&, const mpq_class&) { return mpq_class(1); };
    s.eta = 1;
    return s;
}

double remainder_ratio(const LocalFactorSpec& spec, const Poly& Q, const mpq_class& u) {
    const unsigned d = static_cast<unsigned>(Q.deg());
    const mpq_class rem = spec.exact_factor(Q, u) - 1 - spec.linear_coefficient(Q) * qpow(u, d);
    const double scale = std::pow(std::fabs(u.get_d()), (1 + spec.eta.get_d()) * d);
    return std::fabs(rem.get_d()) / scale;
}

bool in_convergence_disc(std::uint64_t q, const mpq_class& eta, const mpq_class& u) {
    const double a = std::fabs(u.get_d());
    const double r = std::min(std::pow(double(q), -1.0 / (1.0 + eta.get_d())), std::pow(double(q), -0.5));
    return a < r;
}

mpq_class partial_product(const LocalFactorSpec& spec, unsigned lo, unsigned hi, const mpq_class& u) {
    if (lo == 0) lo = 1;
    if (hi < lo) return 1;
    const auto table = PrimeTable::get(spec.field, hi);
    std::vector<mpz_class> nums, dens;
    for (unsigned d = lo; d <= hi; ++d)
        for (const Poly& Q : table->of_degree(d)) {
            const mpq_class f = spec.exact_factor(Q, u);
            nums.push_back(f.get_num());
            dens.push_back(f.get_den());
        }
    mpq_class r(product_tree(std::move(nums)), product_tree(std::move(dens)));
    r.canonicalize();
    return r;
}

TruncatedProduct truncated_product(const LocalFactorSpec& spec, unsigned M, const mpq_class& u) {
    if (M == 0) throw std::invalid_argument("truncation degree M must be at least 1");
    TruncatedProduct t;
    t.M = M;
    t.u = u;
    t.value = partial_product(spec, 1, M, u);
    t.outside_disc = !in_convergence_disc(spec.field->order(), spec.eta, u);
    return t;
}

double tail_bound(std::uint64_t q, const mpq_class& eta, unsigned M, double u) {
    const double a = std::fabs(u), qd = double(q);
    return std::pow(std::sqrt(qd) * a, M) / M + std::pow(qd * std::pow(a, 1 + eta.get_d()), M) / M;
}

mpq_class h_value(FactorKind kind, const Poly& P, const mpq_class& u, unsigned M) {
    require_prime(P, "P");
    const PairChars ch(P);
    LocalFactorSpec s;
    s.field = P.field();
    s.exact_factor = [&](const Poly& Q, const mpq_class& x) {
        const mpq_class ud = qpow(x, static_cast<unsigned>(Q.deg()));
        const int cp = ch.plus->value(Q), cm = ch.minus->value(Q);
        const mpq_class f = kind_factor(kind, ch, Q, x);
        switch (kind) {
            case FactorKind::Plus: return mpq_class(f * (1 - cp * ud) * (1 - cp * ud));
            case FactorKind::Minus: return mpq_class(f * (1 - cm * ud) * (1 - cm * ud));
            case FactorKind::Zero: break;
        }
        return mpq_class(f * (1 - cp * ud) * (1 - cm * ud));
    };
    return partial_product(s, 1, M, u);
}

mpq_class l_value(const Poly& P, bool minus, const mpq_class& u) {
    const QuadChar chi(P, minus ? CharSign::Minus : CharSign::Plus);
    const LPoly L = l_polynomial(chi);
    mpq_class s = 0;
    for (std::size_t j = L.coeffs.size(); j-- > 0;) s = s * u + L.coeffs[j];
    return s;
}

mpq_class assembled_product(FactorKind kind, const Poly& P, const mpq_class& u, unsigned M) {
    const mpq_class H = h_value(kind, P, u, M);
    switch (kind) {
        case FactorKind::Plus: {
            const mpq_class L = l_value(P, false, u);
            return L * L * H;
        }
        case FactorKind::Minus: {
            const mpq_class L = l_value(P, true, u);
            return L * L * H;
        }
        case FactorKind::Zero: break;
    }
    return l_value(P, false, u) * l_value(P, true, u) * H;
}

PrimeSumReport prime_sum(FactorKind kind, const FieldPtr& field, unsigned n, unsigned M, unsigned threads) {
    if (n == 0 || M == 0) throw std::invalid_argument("n and M must be at least 1");
    const std::uint64_t q = field->order();
    const auto table = PrimeTable::get(field, std::max(n, M));
    const auto& primes = table->of_degree(n);
    const mpq_class u(1, q);
    std::vector<mpq_class> values(primes.size());
    parallel_for(primes.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) values[i] = partial_product(delta_spec(kind, primes[i]), 1, M, u);
    });
    PrimeSumReport r;
    r.q = q;
    r.n = n;
    r.M = M;
    r.kind = kind;
    r.sum = 0;
    for (const auto& v : values) r.sum += v;
    r.reference = mpq_class(prime_count_exact(q, n)) / zeta_q_value(q, 2);
    const double qd = double(q);
    r.scale_truncation = std::pow(qd, double(n) - 2.0 * M) / n;
    r.scale_characters = std::pow(qd, n / 2.0) * std::pow(double(M), 3) / n;
    r.scale_tail = std::pow(qd, double(n)) / (n * double(M) * std::pow(qd, M / 2.0));
    r.scaled_gap = std::fabs(mpq_class(r.sum - r.reference).get_d()) * n / std::pow(qd, n / 2.0);
    return r;
}

}  // namespace ffstat
