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

// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ffstat/arith.hpp"
#include "ffstat/biquad.hpp"
#include "ffstat/cli.hpp"
#include "ffstat/enumerate.hpp"
#include "ffstat/eulerprod.hpp"
#include "ffstat/lfunc.hpp"
#include "ffstat/moments.hpp"
#include "ffstat/poly_text.hpp"

using namespace ffstat;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome lfunction_suite() {
    std::ostringstream msg;
    long moduli = 0, failures = 0;
    double worst_rh = 0;
    for (std::uint32_t q : {3u, 5u}) {
        auto F = FiniteField::prime(q);
        const unsigned n_max = 8;
        PrimeCharacterSums batch(F, 6, n_max);
        for (unsigned k = 1; k <= 6; ++k) {
            for (const Poly& D : enumerate(F, k, PolyKind::SquarefreeMonic)) {
                for (CharSign s : {CharSign::Plus, CharSign::Minus}) {
                    QuadChar chi(D, s);
                    ++moduli;
                    bool ok = true;
                    LPoly L;
                    try {
                        L = complete_l(l_polynomial(chi), chi);
                    } catch (const InvariantViolation&) {
                        ++failures;
                        continue;
                    }
                    ok &= L.coeffs.size() == k - chi.lambda();
                    ok &= satisfies_functional_equation(L);
                    const auto fd = frobenius_traces(L, n_max, true);
                    worst_rh = std::max(worst_rh, *fd.rh_max_deviation);
                    ok &= *fd.rh_max_deviation < 1e-9;
                    const auto lam = batch.sums(chi);
                    for (unsigned n = 1; n <= n_max; ++n) {
                        const int eps = (s == CharSign::Minus && n % 2) ? -1 : 1;
                        ok &= eps * int(chi.lambda()) + lam[n] == -fd.traces[n];
                    }
                    failures += !ok;
                }
            }
        }
    }
    msg << moduli << " characters, " << failures << " failures, max RH deviation " << worst_rh;
    return {failures == 0, msg.str()};
}

// F_9 = F_3[i], i^2 = -1, as pairs (a, b) = a + b i.
struct F9 {
    int a = 0, b = 0;
    F9 operator+(F9 o) const { return {(a + o.a) % 3, (b + o.b) % 3}; }
    F9 operator*(F9 o) const { return {((a * o.a - b * o.b) % 3 + 3) % 3, (a * o.b + b * o.a) % 3}; }
    bool zero() const { return a == 0 && b == 0; }
};

int chi9(F9 x) {
    if (x.zero()) return 0;
    F9 r{1, 0};
    for (int k = 0; k < 4; ++k) r = r * x;  // (9-1)/2
    return r.a == 1 ? 1 : -1;
}

F9 eval9(const std::vector<int>& ascending, F9 x) {
    F9 r;
    for (std::size_t j = ascending.size(); j-- > 0;) r = r * x + F9{ascending[j], 0};
    return r;
}

Outcome worked_curve() {
    auto F = FiniteField::prime(3);
    const CurveTriple t{parse_poly("X^2+1", F), parse_poly("X^2+X+2", F), parse_poly("1", F), Variant::Monic, 1};
    const unsigned g = triple_genus(t.f1, t.f2, t.f3, Variant::Monic);
    const CurveData d = zeta_numerator(t, 2);
    const auto p = power_sums_from_coefficients(d.P_C, 2);
    const mpz_class n2_from_pc = 9 + 1 - p[2];

    // direct count over P^1(F_9); all three products have even degree and
    // leading coefficient 1, so infinity contributes 1 + 1 + 1 + 1
    const std::vector<int> f1 = {1, 0, 1}, f2 = {2, 1, 1}, f1f2 = {2, 1, 0, 1, 1};
    long n2 = 4;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const F9 x{a, b};
            n2 += 1 + chi9(eval9(f1, x)) + chi9(eval9(f2, x)) + chi9(eval9(f1f2, x));
        }
    const bool ok = g == 1 && d.N[1] == 4 && d.P_C == std::vector<mpz_class>{1, 0, 3} && d.T[2] == -6 &&
                    n2_from_pc == n2 && d.N[2] == n2;
    std::ostringstream m;
    m << "g=" << g << " N1=" << d.N[1] << " P_C=" << d.P_C[0] << "," << d.P_C[1] << "," << d.P_C[2] << " T2=" << d.T[2]
      << " N2(P_C)=" << n2_from_pc << " N2(direct)=" << n2;
    return {ok, m.str()};
}

Outcome family_counts() {
    auto F = FiniteField::prime(3);
    const auto monic = enumerate_family(F, 0, Variant::Monic);
    const auto full = enumerate_family(F, 0, Variant::Full);
    bool ok = monic.size() == 24 && full.size() == 96 && family_size(F, 0, Variant::Full) == 96;

    // every arrangement of {4,0,0} and {3,0,0} passes the length test and is excluded
    int seen = 0;
    for (const auto& p : degree_patterns(1)) {
        const unsigned zeros = (p.d1 == 0) + (p.d2 == 0) + (p.d3 == 0);
        const unsigned top = std::max({p.d1, p.d2, p.d3});
        if (zeros == 2 && (top == 4 || top == 3)) {
            ++seen;
            ok &= p.excluded && genus_length_L(p.d1, p.d2, p.d3) == 4;
        } else {
            ok &= !p.excluded;
        }
    }
    ok &= seen == 6;
    long leaked = 0;
    for (const auto& t : enumerate_family(F, 1, Variant::Monic))
        leaked += (t.f1.deg() == 0) + (t.f2.deg() == 0) + (t.f3.deg() == 0) >= 2;
    ok &= leaked == 0;
    std::ostringstream m;
    m << "monic " << monic.size() << ", full " << full.size() << ", excluded g=1 patterns " << seen
      << ", members with excluded pattern " << leaked;
    return {ok, m.str()};
}

Outcome odd_vanishing() {
    auto F = FiniteField::prime(3);
    bool ok = true;
    int cells = 0;
    for (unsigned g = 1; g <= 3; ++g) {
        const auto fam = enumerate_family(F, g, Variant::Full);
        for (unsigned n : {1u, 3u, 5u}) {
            const auto r = average_trace(fam, n);
            ok &= r.avg_T == 0 && r.evaluated == fam.size();
            ++cells;
        }
    }
    return {ok, std::to_string(cells) + " cells, all averages exactly 0"};
}

Outcome decomposition() {
    const std::uint64_t budget = 200'000'000;
    bool ok = true;
    int cells = 0, skipped = 0;
    double worst_roots = 0;
    for (std::uint32_t q : {3u, 5u}) {
        auto F = FiniteField::prime(q);
        for (unsigned g = 0; g <= 3; ++g) {
            const auto fam = enumerate_family(F, g, Variant::Monic);
            for (unsigned n : {2u, 4u}) {
                if (double(fam.size()) * std::pow(double(q), n) > double(budget)) {
                    ++skipped;
                    continue;
                }
                const auto r = error_decomposition(fam, n);
                const auto& d = *r.decomposition;
                mpz_class qn;
                mpz_ui_pow_ui(qn.get_mpz_t(), q, n / 2);
                mpq_class lhs = r.avg_T / qn;
                lhs.canonicalize();
                mpq_class rhs = -3 + d.roots_term - d.bilinear_term;
                rhs.canonicalize();
                const double bound = 3.0 * (g + 3) / std::pow(double(q), n / 2.0);
                ok &= lhs == rhs && d.roots_term.get_d() <= bound && d.generating_prime_form == d.bilinear_generating;
                worst_roots = std::max(worst_roots, d.roots_term.get_d() / bound);
                ++cells;
            }
        }
    }
    std::ostringstream m;
    m << cells << " cells exact, " << skipped << " over budget, max roots_term/bound " << worst_roots;
    return {ok && cells > 0, m.str()};
}

double ls_slope(const std::vector<double>& y, unsigned x0) {
    const double n = double(y.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double x = x0 + double(i);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome fixed_prime_consistency() {
    auto F = FiniteField::prime(3);
    const unsigned M = 10;
    bool exact = true, trend = true;
    std::ostringstream m;
    for (const char* text : {"X", "X^2+1"}) {
        const Poly P = parse_poly(text, F);
        for (unsigned g : {1u, 2u}) {
            const auto r = fixed_prime_report(F, g, P, M);
            exact &= r.exact_sum == r.nkk_assembled;
        }
        const CConstants cc = c_constants(P, M);
        std::vector<std::array<std::array<double, 2>, 2>> scaled;
        for (unsigned d = 4; d <= 8; ++d) {
            const auto N = nkk_table(P, d);
            std::array<std::array<double, 2>, 2> row{};
            for (unsigned k1 = 0; k1 < 2; ++k1)
                for (unsigned k2 = 0; k2 < 2; ++k2) {
                    const double pred = cc.c_kk(d, k1, k2).get_d() * std::pow(3.0, d) / 4;
                    row[k1][k2] = std::fabs(N[k1][k2].get_d() - pred) / std::pow(3.0, 0.6 * d);
                }
            scaled.push_back(row);
        }
        for (unsigned k1 = 0; k1 < 2; ++k1)
            for (unsigned k2 = 0; k2 < 2; ++k2) {
                std::vector<double> y;
                for (const auto& row : scaled) y.push_back(row[k1][k2]);
                const double s = ls_slope(y, 4);
                if (s > 0) {
                    trend = false;
                    m << "rising " << text << " (" << k1 << k2 << ") slope " << s << " [";
                    for (std::size_t i = 0; i < y.size(); ++i) m << (i ? " " : "") << y[i];
                    m << "]; ";
                }
            }
    }
    m << "decomposition " << (exact ? "exact" : "MISMATCH") << ", trend " << (trend ? "non-increasing" : "violated");
    return {exact && trend, m.str()};
}

Outcome prime_sum_envelope() {
    auto F = FiniteField::prime(3);
    bool ok = true;
    double worst = 0;
    bool n1_reference = false;
    for (unsigned n = 1; n <= 3; ++n) {
        const unsigned M = n + 6;
        for (FactorKind k : {FactorKind::Plus, FactorKind::Minus, FactorKind::Zero}) {
            const auto r = prime_sum(k, F, n, M);
            const mpq_class gap = abs(r.sum - r.reference);
            const double envelope = 1.0 * std::pow(3.0, n / 2.0) * M * M * M / n;
            ok &= gap.get_d() <= envelope;
            worst = std::max(worst, gap.get_d() / envelope);
            if (n == 1) n1_reference = r.reference == 2;
        }
    }
    std::ostringstream m;
    m << "9 cells, max |gap|/envelope " << worst << ", pi_3(1)/zeta_3(2) = 2: " << (n1_reference ? "yes" : "no");
    return {ok && n1_reference, m.str()};
}

Outcome matrix_table() {
    bool ok = true;
    int cells = 0;
    for (unsigned g = 0; g <= 5; ++g)
        for (unsigned n = 1; n <= 12; ++n) {
            const int eta = n % 2 == 0 ? 1 : 0;
            const int usp = n <= 2 * g ? -eta : 0;
            ok &= matrix_integral_reference(MatrixGroup::USp, g, n) == usp;
            ok &= matrix_integral_reference(MatrixGroup::USpCubed, g, n) == 3 * usp;
            ok &= matrix_integral_reference(MatrixGroup::U, g, n) == 0;
            cells += 3;
        }
    // spot values
    ok &= matrix_integral_reference(MatrixGroup::USp, 1, 2) == -1 && matrix_integral_reference(MatrixGroup::USp, 1, 4) == 0;
    ok &= matrix_integral_reference(MatrixGroup::USpCubed, 5, 10) == -3 &&
          matrix_integral_reference(MatrixGroup::USpCubed, 5, 11) == 0;
    return {ok, std::to_string(cells) + " cells"};
}

Outcome density_identity() {
    auto F = FiniteField::prime(3);
    const CurveTriple t{parse_poly("X^2+1", F), parse_poly("X^2+X+2", F), parse_poly("1", F), Variant::Monic, 1};
    const CurveData d = zeta_numerator(t, 8);
    const FejerKernel k{0.25};
    std::vector<double> traces(d.T.size(), 0.0);
    for (std::size_t n = 1; n < d.T.size(); ++n) traces[n] = d.T[n].get_d() / std::pow(3.0, n / 2.0);
    const double z_tr = z_from_traces(k.grid(1), traces, 1);
    const double z_ev = z_from_eigenphases(k, eigenphases(d.P_C), 1);
    const double gap = std::fabs(z_tr - z_ev);

    const double f0 = k.fhat(0);
    const auto rep = one_level_density(F, 1, {f0}, Variant::Monic);
    const auto rep3 = one_level_density(F, 2, {f0}, Variant::Full);
    const bool ok = gap < 1e-6 && rep.family_value == f0 && rep.reference_value == f0 && rep3.family_value == f0 &&
                    rep3.reference_value == f0;
    std::ostringstream m;
    m << "eigenphase " << z_ev << " vs trace " << z_tr << " (gap " << gap << "); zero-only family " << rep.family_value
      << ", reference " << rep.reference_value;
    return {ok, m.str()};
}

Outcome determinism() {
    auto run_capture = [](std::vector<std::string> args) {
        args.insert(args.begin(), "ffstat");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::main_entry(int(argv.size()), argv.data(), out, err);
        return std::make_pair(code, out.str());
    };
    const std::vector<std::vector<std::string>> runs = {
        {"moments", "--q", "3", "--genus", "3", "--n-max", "6", "--variant", "full"},
        {"moments", "--q", "5", "--genus", "2", "--n-max", "4", "--mode", "sample", "--sample-size", "2000", "--seed", "11"},
        {"moments", "--q", "3", "--genus", "2", "--n-max", "8", "--format", "json"},
    };
    bool ok = true;
    std::size_t bytes = 0;
    for (const auto& base : runs) {
        const auto ref = run_capture([&] {
            auto a = base;
            a.insert(a.end(), {"--threads", "1"});
            return a;
        }());
        ok &= ref.first == 0 && !ref.second.empty();
        bytes += ref.second.size();
        for (const char* k : {"2", "4", "7"}) {
            auto a = base;
            a.insert(a.end(), {"--threads", k});
            const auto other = run_capture(a);
            ok &= other.first == 0 && other.second == ref.second;
        }
        ok &= run_capture([&] {
                  auto a = base;
                  a.insert(a.end(), {"--threads", "1"});
                  return a;
              }()).second == ref.second;
    }
    return {ok, std::to_string(runs.size()) + " runs x threads {1,2,4,7}, " + std::to_string(bytes) + " bytes compared"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "L-function suite (q=3,5, deg D<=6, n<=8)", lfunction_suite},
        {2, "worked curve (X^2+1, X^2+X+2, 1) over F_3", worked_curve},
        {3, "family counts and excluded patterns", family_counts},
        {4, "odd-n averages vanish (full, q=3, g=1..3)", odd_vanishing},
        {5, "even-n decomposition (q=3,5, g<=3, n=2,4)", decomposition},
        {6, "fixed-prime sums and N_kk trend (q=3, M=10)", fixed_prime_consistency},
        {7, "prime sums of Euler products within envelope (q=3, n<=3)", prime_sum_envelope},
        {8, "matrix integral table (g<=5, n<=12)", matrix_table},
        {9, "one-level density identity (alpha=1/4)", density_identity},
        {10, "moments output independent of thread count", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %d. %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
