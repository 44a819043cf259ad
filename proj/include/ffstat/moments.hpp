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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffstat/biquad.hpp"
#include "ffstat/poly.hpp"

namespace ffstat {

enum class MatrixGroup { USp, USpCubed, U };

const char* group_name(MatrixGroup g);

/// Integral of Tr(U^n) over the group: -eta_n for USp(2g) when n <= 2g, three
/// times that for USp(2g)^3, 0 otherwise and always 0 for U(2g). Throws
/// std::invalid_argument for n = 0.
int matrix_integral_reference(MatrixGroup group, unsigned g, unsigned n);

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// `count` indices drawn uniformly with replacement from [0, population).
/// Draw i depends only on (seed, i), so any prefix or split of the draws is
/// reproducible.
std::vector<std::size_t> sample_indices(std::size_t population, std::uint64_t count, std::uint64_t seed);

struct MomentOptions {
    bool sample = false;
    std::uint64_t sample_size = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// Even-n pieces of the monic family average:
/// avg_T / q^(n/2) = -3 + roots_term - bilinear_term.
struct Decomposition {
    mpq_class roots_term;
    mpq_class bilinear_term;
    /// bilinear_term split by the kind of point: x of degree n over F_q,
    /// other x outside F_{q^(n/2)}, and the point at infinity.
    mpq_class bilinear_generating, bilinear_nongenerating, bilinear_infinity;
    /// The generating part recomputed as 3n q^(-n/2) / |F| times the sum over
    /// primes P of degree n of chi_P(f1 f2).
    mpq_class generating_prime_form;
    bool identity_holds = false;
    bool prime_form_matches = false;
    bool roots_within_bound = false;
    double roots_bound = 0;    // 3 (g+3) / q^(n/2)
    double nongen_bound = 0;   // 3 q^(-n/6)
};

struct MomentReport {
    std::uint32_t q = 0;
    unsigned g = 0, n = 0;
    Variant variant = Variant::Monic;
    bool sampled = false;
    mpz_class family_size;
    std::uint64_t evaluated = 0;  // members whose T_n entered the average
    mpq_class avg_T;              // average of T_n over the evaluated members
    double avg_trace = 0;         // avg_T / q^(n/2)
    double std_error = 0;         // sample mode only
    int reference = 0;            // USp(2g)^3 integral
    double gap = 0;               // avg_trace - reference
    std::optional<Decomposition> decomposition;
};

/// Average of T_n = q^(n/2) Tr(Theta_C^n) over `family` (all members of one
/// genus and variant). Exhaustive mode is exact; sample mode draws
/// opts.sample_size members and reports the standard error of the mean
/// trace. Throws std::invalid_argument on an empty family.
MomentReport average_trace(const std::vector<CurveTriple>& family, unsigned n, const MomentOptions& opts = {});

/// Convenience overload that enumerates the family.
MomentReport average_trace(const FieldPtr& field, unsigned g, unsigned n, Variant v, const MomentOptions& opts = {});

/// Even-n decomposition over the monic family, with T_n computed separately
/// through all three pair sums. Throws std::invalid_argument for odd n or a
/// non-monic family.
MomentReport error_decomposition(const std::vector<CurveTriple>& monic_family, unsigned n, unsigned threads = 1);

/// N_{k1,k2}(d; P) for all k1, k2: sums of mu^2(f1 f2 f3) chi_P(f1 f2) over
/// ordered monic triples of total degree d, split by the parities of
/// deg f1 f3 and deg f2 f3. Every square-free f of degree d is factored and
/// its primes are dealt to the three slots in all 3^omega ways.
std::array<std::array<mpz_class, 2>, 2> nkk_table(const Poly& P, unsigned d);
mpz_class nkk_sum(const Poly& P, unsigned d, unsigned k1, unsigned k2);

/// Building blocks at u = 1/q with H truncated at M.
struct CConstants {
    mpq_class L_plus, L_minus;          // L(1/q, chi_P^+/-)
    mpq_class H_plus, H_minus, H_zero;  // H_{P,*}(1/q)
    mpq_class A_plus, A_minus, A_zero;  // L^2 H products, and L+ L- H0
    unsigned M = 0;

    /// C_{k1,k2}(d; P).
    mpq_class c_kk(unsigned d, unsigned k1, unsigned k2) const;
    /// C(g; P).
    mpq_class c_genus(std::uint64_t q, unsigned g) const;
};

CConstants c_constants(const Poly& P, unsigned M);

struct FixedPrimeReport {
    Poly P;
    unsigned g = 0;
    mpz_class exact_sum = 0;   // sum over F_g of chi_P(f1 f2), by enumeration
    mpz_class nkk_assembled = 0;  // N00(g+3) + N01(g+2) + N10(g+2) + N11(g+2) - correction
    mpz_class correction = 0;  // odd g: sum over deg f in {g+2, g+3} of mu^2(f)(2 chi_P(f) + 1)
    mpq_class main_correction = 0;  // odd g: 2 sum mu^2 chi_P + (q+1)/q q^(g+3) / zeta_q(2)
    double predicted = 0;      // C(g;P)/4 q^(g+3) - main_correction
    CConstants constants{};
};

/// sum over the monic family F_g of chi_P(f1 f2), by enumeration.
mpz_class fixed_prime_family_sum(const FieldPtr& field, unsigned g, const Poly& P);

FixedPrimeReport fixed_prime_report(const FieldPtr& field, unsigned g, const Poly& P, unsigned M);

struct DoubleCharacterSum {
    mpz_class sum;      // sum over square-free D of degree d and primes P of degree n of chi_D(P)
    double normalized;  // n / q^(d + n/2) times the sum
};

DoubleCharacterSum double_character_sum(const FieldPtr& field, unsigned d, unsigned n);

struct ExperimentOptions {
    std::uint64_t work_budget = 200'000'000;  // members times q^n
    std::uint64_t sample_size = 2000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double c_knob = 5.0;
};

struct ExperimentRow {
    unsigned g = 0, n = 0;
    MomentReport report;
    /// 3 log_q(g) <= n <= 2g with n even.
    bool theorem_range = false;
    /// n < 2g - C log_q(g).
    bool prime_sum_range = false;
};

/// One row per (g, n), n = 1..n_max. Cells whose exhaustive cost exceeds the
/// budget are sampled.
std::vector<ExperimentRow> theorem_experiment(const FieldPtr& field, const std::vector<unsigned>& genera, unsigned n_max,
                                              Variant v, const ExperimentOptions& opts = {});

/// f^(x) = max(0, 1 - |x| / alpha) and its transform f(y) = alpha sinc^2(pi alpha y).
struct FejerKernel {
    double alpha = 0.25;
    double fhat(double x) const;
    double f(double y) const;
    /// f^(n / 2g) for 0 <= n < 2 alpha g.
    std::vector<double> grid(unsigned g) const;
};

/// f^(0) + (1/g) sum_{n>=1} f^(n/2g) Tr(U^n), with traces[n] = Tr(U^n)
/// (traces[0] ignored) and fhat_grid[n] = f^(n/2g).
double z_from_traces(const std::vector<double>& fhat_grid, const std::vector<double>& traces, unsigned g);

/// sum_j F(theta_j) with F(theta) = sum_m f(2g(theta/2pi - m)), summed
/// directly for |m| <= K and with the mean-value tail beyond.
double z_from_eigenphases(const FejerKernel& k, const std::vector<double>& phases, unsigned g, long K = 20000);

/// Eigenphases theta_j of a zeta numerator: arguments of rho_j / sqrt(q),
/// with multiplicity.
std::vector<double> eigenphases(const std::vector<mpz_class>& P_C);

struct DensityReport {
    unsigned g = 0;
    std::size_t cutoff = 0;   // number of grid points, n = 0..cutoff-1
    double family_value = 0;
    double reference_value = 0;
    std::uint64_t curves_checked = 0;
    double max_eigen_trace_gap = 0;
    bool alpha_warning = false;  // alpha > 1: more than 2g traces
};

/// Family and USp(2g)^3 sides of the averaged one-level density. The
/// eigenphase and trace computations of Z are compared on `check_curves`
/// members spread evenly through the family.
DensityReport one_level_density(const FieldPtr& field, unsigned g, const std::vector<double>& fhat_grid, Variant v,
                                const FejerKernel* kernel = nullptr, std::uint64_t check_curves = 4,
                                unsigned threads = 1);

}  // namespace ffstat
