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

#include "ffstat/numeric.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace ffstat {

namespace {

using QPoly = std::vector<mpq_class>;  // ascending

void trim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qmod(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size()) {
        const mpq_class f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

QPoly qdiv(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {};
    QPoly quo(a.size() - b.size() + 1);
    while (a.size() >= b.size()) {
        const mpq_class f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        quo[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return quo;
}

QPoly qgcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = qmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Roots of a square-free rational polynomial: companion eigenvalues polished
// by Newton in long double.
std::vector<cld> squarefree_roots(const QPoly& sf) {
    const std::size_t m = sf.size() - 1;
    if (m == 0) return {};
    std::vector<long double> a(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        const mpq_class t = sf[j] / sf[m];
        a[j] = static_cast<long double>(t.get_d());
        // refine the conversion with the exact remainder
        const mpq_class err = t - mpq_class(static_cast<double>(a[j]));
        a[j] += static_cast<long double>(err.get_d());
    }

    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 1; i < m; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < m; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m - 1)) = -static_cast<double>(a[i]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation failed");

    std::vector<cld> roots;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        cld z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
        for (int it = 0; it < 8; ++it) {
            cld p = a[m], dp = 0;
            for (std::size_t j = m; j-- > 0;) {
                dp = dp * z + p;
                p = p * z + a[j];
            }
            if (dp == cld(0)) break;
            const cld step = p / dp;
            z -= step;
            if (std::abs(step) <= 1e-19L * std::abs(z)) break;
        }
        roots.push_back(z);
    }
    return roots;
}

QPoly derivative(const QPoly& r) {
    QPoly d(r.empty() ? 0 : r.size() - 1);
    for (std::size_t j = 1; j < r.size(); ++j) d[j - 1] = r[j] * static_cast<unsigned long>(j);
    return d;
}

// z^k P(1/z), whose roots are the rho_j
QPoly reversed(const std::vector<mpz_class>& coeffs) {
    std::vector<mpz_class> c = coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty() || c[0] == 0) throw std::invalid_argument("reciprocal roots need a nonzero constant term");
    const std::size_t k = c.size() - 1;
    QPoly r(k + 1);
    for (std::size_t j = 0; j <= k; ++j) r[k - j] = c[j];
    return r;
}

}  // namespace

std::vector<cld> reciprocal_roots(const std::vector<mpz_class>& coeffs) {
    const QPoly r = reversed(coeffs);
    if (r.size() == 1) return {};
    return squarefree_roots(qdiv(r, qgcd(r, derivative(r))));
}

std::vector<cld> reciprocal_roots_with_multiplicity(const std::vector<mpz_class>& coeffs) {
    const QPoly r = reversed(coeffs);
    if (r.size() == 1) return {};
    // Yun: a_i collects the roots of multiplicity exactly i
    QPoly b = qgcd(r, derivative(r));
    QPoly c = qdiv(r, b);
    std::vector<cld> out;
    for (unsigned i = 1; c.size() > 1; ++i) {
        const QPoly y = qgcd(b, c);
        const QPoly a = qdiv(c, y);
        for (const cld& z : squarefree_roots(a))
            for (unsigned k = 0; k < i; ++k) out.push_back(z);
        c = y;
        b = qdiv(b, y);
    }
    return out;
}

double rh_deviation(const std::vector<cld>& roots, unsigned long q) {
    const long double s = std::sqrt(static_cast<long double>(q));
    long double worst = 0;
    for (const cld& z : roots) worst = std::max(worst, std::fabs(std::abs(z) - s) / s);
    return static_cast<double>(worst);
}

}  // namespace ffstat
