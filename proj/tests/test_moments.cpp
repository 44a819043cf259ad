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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ffstat/arith.hpp"
#include "ffstat/biquad.hpp"
#include "ffstat/enumerate.hpp"
#include "ffstat/extension.hpp"
#include "ffstat/moments.hpp"
#include "ffstat/poly_text.hpp"

using namespace ffstat;

namespace {

Poly P(const FieldPtr& F, const char* s) { return parse_poly(s, F); }

// N_{k1,k2}(d; P) straight from the definition over ordered monic triples
long nkk_oracle(const Poly& Pp, unsigned d, unsigned k1, unsigned k2) {
    const FieldPtr& F = Pp.field();
    long s = 0;
    for (unsigned d1 = 0; d1 <= d; ++d1)
        for (unsigned d2 = 0; d1 + d2 <= d; ++d2) {
            const unsigned d3 = d - d1 - d2;
            if ((d1 + d3) % 2 != k1 || (d2 + d3) % 2 != k2) continue;
            for (const Poly& f1 : enumerate(F, d1, PolyKind::Monic))
                for (const Poly& f2 : enumerate(F, d2, PolyKind::Monic))
                    for (const Poly& f3 : enumerate(F, d3, PolyKind::Monic)) {
                        if (mobius_squarefree(f1 * f2 * f3).mu == 0) continue;
                        const Poly f12 = f1 * f2;
                        s += f12.is_constant() ? 1 : legendre_symbol(f12, Pp);
                    }
        }
    return s;
}

}  // namespace

TEST_CASE("matrix integral table") {
    for (unsigned g = 0; g <= 5; ++g)
        for (unsigned n = 1; n <= 12; ++n) {
            const int eta = n % 2 == 0 ? 1 : 0;
            const int usp = n <= 2 * g ? -eta : 0;
            CHECK(matrix_integral_reference(MatrixGroup::USp, g, n) == usp);
            CHECK(matrix_integral_reference(MatrixGroup::USpCubed, g, n) == 3 * usp);
            CHECK(matrix_integral_reference(MatrixGroup::U, g, n) == 0);
        }
    CHECK(matrix_integral_reference(MatrixGroup::USp, 3, 4) == -1);
    CHECK(matrix_integral_reference(MatrixGroup::USp, 3, 8) == 0);
    CHECK_THROWS(matrix_integral_reference(MatrixGroup::USp, 3, 0));
}

TEST_CASE("sampling") {
    const auto a = sample_indices(1000, 50, 7), b = sample_indices(1000, 80, 7), c = sample_indices(1000, 50, 8);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
    CHECK(a != c);
    for (auto i : b) CHECK(i < 1000);
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK_THROWS(sample_indices(0, 1, 1));
}

TEST_CASE("family averages") {
    auto F = FiniteField::prime(3);
    for (unsigned n = 1; n <= 3; ++n) CHECK(average_trace(F, 0, n, Variant::Monic).avg_T == 0);
    CHECK_THROWS(average_trace(std::vector<CurveTriple>{}, 2));

    // exhaustive average against point counts done one curve at a time
    const auto fam = enumerate_family(F, 1, Variant::Monic);
    mpz_class s = 0;
    for (const auto& t : fam) s += curve_counts(t, 2).T[2];
    const auto r = average_trace(fam, 2);
    mpq_class expect(s, static_cast<unsigned long>(fam.size()));
    expect.canonicalize();
    CHECK(r.avg_T == expect);
    CHECK(r.reference == -3);
    CHECK(r.gap == doctest::Approx(r.avg_trace + 3));

    for (unsigned g = 1; g <= 2; ++g) {
        const auto full = enumerate_family(F, g, Variant::Full);
        const auto monic = enumerate_family(F, g, Variant::Monic);
        for (unsigned n : {1u, 3u}) CHECK(average_trace(full, n).avg_T == 0);
        for (unsigned n : {2u, 4u}) CHECK(average_trace(full, n).avg_T == average_trace(monic, n).avg_T);
    }

    // a sample mean sits within a few standard errors of the exact mean
    const auto fam2 = enumerate_family(F, 2, Variant::Monic);
    const auto ex = average_trace(fam2, 2);
    MomentOptions mo;
    mo.sample = true;
    mo.sample_size = 400;
    mo.seed = 11;
    const auto sm = average_trace(fam2, 2, mo);
    CHECK(sm.sampled);
    CHECK(sm.evaluated == 400);
    CHECK(sm.std_error > 0);
    CHECK(std::fabs(sm.avg_trace - ex.avg_trace) < 5 * sm.std_error);
    mo.threads = 3;
    CHECK(average_trace(fam2, 2, mo).avg_T == sm.avg_T);
}

TEST_CASE("even-n decomposition") {
    for (std::uint32_t q : {3u, 5u}) {
        auto F = FiniteField::prime(q);
        for (unsigned g = 1; g <= (q == 3 ? 2u : 1u); ++g) {
            const auto fam = enumerate_family(F, g, Variant::Monic);
            for (unsigned n : {2u, 4u}) {
                const auto r = error_decomposition(fam, n, 2);
                REQUIRE(r.decomposition);
                const auto& d = *r.decomposition;
                CHECK(d.identity_holds);
                CHECK(d.prime_form_matches);
                CHECK(d.roots_within_bound);
                CHECK(d.bilinear_term == d.bilinear_generating + d.bilinear_nongenerating + d.bilinear_infinity);

                // roots term by evaluating f1 f2 on the subfield directly
                const auto half = extension_field(F, n / 2);
                long R = 0;
                for (const auto& t : fam) {
                    const Poly f = t.f1 * t.f2;
                    for (std::uint32_t i = 0; i < half->size(); ++i) R += half->eval(f, half->element(i)) == half->zero();
                }
                mpz_class qh;
                mpz_ui_pow_ui(qh.get_mpz_t(), q, n / 2);
                mpq_class expect(3 * R, qh * static_cast<unsigned long>(fam.size()));
                expect.canonicalize();
                CHECK(d.roots_term == expect);

                // generating part through Euler's criterion on a few members
                if (q == 3 && g == 1 && n == 2) {
                    const auto ext = extension_field(F, n);
                    for (std::size_t m = 0; m < fam.size(); m += 13) {
                        const Poly f = fam[m].f1 * fam[m].f2;
                        long xs = 0, ps = 0;
                        for (std::uint32_t i = 0; i < ext->size(); ++i) {
                            const ExtElem x = ext->element(i);
                            if (ext->minimal_degree(x) == n) xs += quad_char_eval(f, P1Point::finite(x), *ext);
                        }
                        for (const Poly& Pp : enumerate(F, n, PolyKind::Prime)) ps += legendre_symbol(f, Pp);
                        CHECK(xs == long(n) * ps);
                    }
                }
            }
        }
    }
    auto F = FiniteField::prime(3);
    CHECK_THROWS(error_decomposition(enumerate_family(F, 1, Variant::Monic), 3));
    CHECK_THROWS(error_decomposition(enumerate_family(F, 1, Variant::Full), 2));
}

TEST_CASE("N_{k1,k2} sums") {
    auto F = FiniteField::prime(3);
    const Poly p = P(F, "X^2+1");
    const auto t0 = nkk_table(p, 0);
    CHECK(t0[0][0] == 1);
    CHECK(t0[0][1] == 0);
    CHECK(t0[1][0] == 0);
    CHECK(t0[1][1] == 0);
    CHECK(nkk_sum(p, 1, 1, 1) == 3);
    CHECK_THROWS(nkk_sum(p, 1, 2, 0));
    for (const Poly& pp : {P(F, "X"), p})
        for (unsigned d = 0; d <= 4; ++d) {
            const auto t = nkk_table(pp, d);
            for (unsigned a = 0; a < 2; ++a)
                for (unsigned b = 0; b < 2; ++b) CHECK(t[a][b] == nkk_oracle(pp, d, a, b));
        }
}

TEST_CASE("fixed-prime family sums") {
    auto F = FiniteField::prime(3);
    for (const Poly& pp : {P(F, "X"), P(F, "X^2+1")})
        for (unsigned g = 1; g <= 2; ++g) {
            const auto r = fixed_prime_report(F, g, pp, 6);
            CHECK(r.exact_sum == r.nkk_assembled);
            if (g % 2 == 0) {
                CHECK(r.correction == 0);
                CHECK(r.main_correction == 0);
            }
            // direct oracle for the left side
            long s = 0;
            for (const auto& t : enumerate_family(F, g, Variant::Monic)) {
                const Poly f = t.f1 * t.f2;
                s += f.is_constant() ? 1 : legendre_symbol(f, pp);
            }
            CHECK(r.exact_sum == s);
        }
}

TEST_CASE("C constants") {
    auto F = FiniteField::prime(3);
    const Poly p = P(F, "X^2+1");
    const auto c = c_constants(p, 8);
    for (unsigned d = 2; d <= 6; ++d) {
        CHECK(c.c_kk(d, 0, 1) == c.A_plus - c.A_minus);
        CHECK(c.c_kk(d, 1, 0) == c.A_plus - c.A_minus);
    }
    for (unsigned g = 1; g <= 4; ++g) {
        const mpq_class assembled =
            (3 * c.c_kk(g + 3, 0, 0) + c.c_kk(g + 2, 0, 1) + c.c_kk(g + 2, 1, 0) + c.c_kk(g + 2, 1, 1)) / 3;
        CHECK(assembled == c.c_genus(3, g));
    }
    const double predicted = mpq_class(c.c_kk(6, 0, 0) / 4 * 729).get_d();
    const double gap = std::fabs(nkk_sum(p, 6, 0, 0).get_d() - predicted);
    CHECK(gap / std::pow(3.0, 6 * 0.6) < 5.0);
}

TEST_CASE("double character sum") {
    auto F = FiniteField::prime(3);
    for (unsigned g = 0; g <= 2; ++g) {
        const unsigned d = g + 2;
        for (unsigned n = 1; n <= d; ++n) {
            const auto r = double_character_sum(F, d, n);
            long s = 0;
            for (const Poly& D : enumerate(F, d, PolyKind::SquarefreeMonic))
                for (const Poly& Pp : enumerate(F, n, PolyKind::Prime)) s += jacobi_symbol(Pp, D);
            CHECK(r.sum == s);
            CHECK(std::fabs(r.normalized) <= 2.0);
        }
    }
}

TEST_CASE("theorem experiment rows") {
    auto F = FiniteField::prime(3);
    ExperimentOptions opts;
    opts.work_budget = 50'000;
    opts.sample_size = 100;
    const auto rows = theorem_experiment(F, {1, 2}, 6, Variant::Full, opts);
    CHECK(rows.size() == 12);
    bool saw_sample = false;
    for (const auto& row : rows) {
        if (row.n % 2 == 1 && !row.report.sampled) CHECK(row.report.avg_T == 0);
        if (row.n > 2 * row.g) CHECK(row.report.reference == 0);
        saw_sample |= row.report.sampled;
    }
    CHECK(saw_sample);
}

TEST_CASE("one-level density") {
    const FejerKernel k{0.25};
    CHECK(k.fhat(0) == 1);
    CHECK(k.fhat(0.125) == doctest::Approx(0.5));
    CHECK(k.fhat(0.3) == 0);
    CHECK(k.f(0) == 0.25);
    CHECK(k.grid(3).size() == 2);

    // worked curve: P_C = 1 + 3u^2 has phases +-pi/2
    auto F = FiniteField::prime(3);
    const std::vector<mpz_class> pc{1, 0, 3};
    auto ph = eigenphases(pc);
    std::sort(ph.begin(), ph.end());
    REQUIRE(ph.size() == 2);
    CHECK(ph[0] == doctest::Approx(-std::numbers::pi / 2));
    CHECK(ph[1] == doctest::Approx(std::numbers::pi / 2));
    for (double alpha : {0.25, 1.0, 1.7}) {
        const FejerKernel kk{alpha};
        const auto grid = kk.grid(1);
        std::vector<double> tr(grid.size(), 0.0);
        // Tr(U^n) = 2 cos(n pi / 2)
        for (std::size_t n = 1; n < grid.size(); ++n) tr[n] = 2 * std::cos(n * std::numbers::pi / 2);
        CHECK(std::fabs(z_from_eigenphases(kk, ph, 1) - z_from_traces(grid, tr, 1)) < 1e-6);
    }
    // repeated roots keep their multiplicity: (1 + 3u^2)^2
    CHECK(eigenphases({1, 0, 6, 0, 9}).size() == 4);

    const auto zero_only = one_level_density(F, 2, {0.75}, Variant::Full);
    CHECK(zero_only.family_value == 0.75);
    CHECK(zero_only.reference_value == 0.75);

    const FejerKernel wide{1.0};
    const auto r = one_level_density(F, 1, wide.grid(1), Variant::Monic, &wide, 6);
    CHECK(r.curves_checked == 6);
    CHECK(r.max_eigen_trace_gap < 1e-6);
    // reference: f^(0) - (3/g) sum over even n < 2 alpha g of f^(n/2g)
    CHECK(r.reference_value == doctest::Approx(1.0 - 3.0 * wide.fhat(1.0)));
    const auto r3 = one_level_density(F, 3, wide.grid(3), Variant::Monic);
    CHECK(r3.reference_value == doctest::Approx(1.0 - (wide.fhat(2.0 / 6) + wide.fhat(4.0 / 6))));
    CHECK_THROWS(one_level_density(F, 0, {1.0}, Variant::Monic));
}

TEST_CASE("thread count does not change results") {
    auto F = FiniteField::prime(3);
    const auto fam = enumerate_family(F, 2, Variant::Monic);
    const auto a = error_decomposition(fam, 4, 1), b = error_decomposition(fam, 4, 3);
    CHECK(a.avg_T == b.avg_T);
    CHECK(a.decomposition->bilinear_term == b.decomposition->bilinear_term);
    CHECK(a.decomposition->roots_term == b.decomposition->roots_term);
}
