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

#include "ffstat/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "ffstat/arith.hpp"
#include "ffstat/enumerate.hpp"
#include "ffstat/eulerprod.hpp"
#include "ffstat/extension.hpp"
#include "ffstat/lfunc.hpp"
#include "ffstat/numeric.hpp"
#include "ffstat/parallel.hpp"
#include "ffstat/primes.hpp"
#include "ffstat/residue.hpp"

namespace ffstat {

const char* group_name(MatrixGroup g) {
    switch (g) {
        case MatrixGroup::USp: return "USp";
        case MatrixGroup::USpCubed: return "USp_cubed";
        case MatrixGroup::U: return "U";
    }
    return "?";
}

int matrix_integral_reference(MatrixGroup group, unsigned g, unsigned n) {
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    if (group == MatrixGroup::U || n > 2 * g || n % 2) return 0;
    return group == MatrixGroup::USp ? -1 : -3;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::vector<std::size_t> sample_indices(std::size_t population, std::uint64_t count, std::uint64_t seed) {
    if (population == 0) throw std::invalid_argument("cannot sample from an empty population");
    const std::uint64_t N = population;
    // accept only below the largest multiple of N, so x % N is uniform
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % N + 1) % N;
    const std::uint64_t key = splitmix64(seed);
    std::vector<std::size_t> out(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            const std::uint64_t x = splitmix64(key ^ splitmix64((i << 8) + attempt));
            if (x <= limit) {
                out[i] = static_cast<std::size_t>(x % N);
                break;
            }
        }
    }
    return out;
}

namespace {

mpz_class zpow(std::uint64_t q, unsigned k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, k);
    return r;
}

std::uint64_t poly_key(const Poly& monic) { return (static_cast<std::uint64_t>(monic.deg()) << 48) | monic_index(monic); }

void require_family(const std::vector<CurveTriple>& family) {
    if (family.empty()) throw std::invalid_argument("the family is empty");
}

}  // namespace

MomentReport average_trace(const std::vector<CurveTriple>& family, unsigned n, const MomentOptions& opts) {
    require_family(family);
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    const FieldPtr& field = family[0].f1.field();
    const std::uint32_t q = field->order();
    MomentReport r;
    r.q = q;
    r.g = family[0].genus;
    r.n = n;
    r.variant = family[0].variant;
    r.sampled = opts.sample;
    r.family_size = static_cast<unsigned long>(family.size());

    std::vector<std::size_t> idx;
    if (opts.sample) {
        if (opts.sample_size == 0) throw std::invalid_argument("sample size must be positive");
        idx = sample_indices(family.size(), opts.sample_size, opts.seed);
    } else {
        idx.resize(family.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    }
    std::vector<CurveTriple> members;
    members.reserve(idx.size());
    for (std::size_t i : idx) members.push_back(family[i]);
    const TraceTable table(field, n, members);

    std::vector<long> T(members.size());
    parallel_for(members.size(), opts.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) T[i] = table.trace(members[i]);
    });
    mpz_class sum = 0;
    for (long t : T) sum += t;
    r.evaluated = members.size();
    r.avg_T = mpq_class(sum, static_cast<unsigned long>(members.size()));
    r.avg_T.canonicalize();
    const double scale = std::pow(double(q), n / 2.0);
    r.avg_trace = r.avg_T.get_d() / scale;
    if (opts.sample && members.size() > 1) {
        double var = 0;
        for (long t : T) {
            const double d = t / scale - r.avg_trace;
            var += d * d;
        }
        var /= double(members.size() - 1);
        r.std_error = std::sqrt(var / double(members.size()));
    }
    r.reference = matrix_integral_reference(MatrixGroup::USpCubed, r.g, n);
    r.gap = r.avg_trace - r.reference;
    return r;
}

MomentReport average_trace(const FieldPtr& field, unsigned g, unsigned n, Variant v, const MomentOptions& opts) {
    return average_trace(enumerate_family(field, g, v), n, opts);
}

MomentReport error_decomposition(const std::vector<CurveTriple>& family, unsigned n, unsigned threads) {
    require_family(family);
    if (n == 0 || n % 2) throw std::invalid_argument("the decomposition needs an even n >= 2");
    if (family[0].variant != Variant::Monic) throw std::invalid_argument("the decomposition runs over the monic family");
    const FieldPtr& field = family[0].f1.field();
    const std::uint32_t q = field->order();
    const unsigned g = family[0].genus, half = n / 2;

    MomentReport r = average_trace(family, n, MomentOptions{false, 0, 0, threads});

    // point classes of F_{q^n}: 0 in F_{q^(n/2)}, 1 generating, 2 other
    const auto ext = extension_field(field, n);
    std::vector<std::uint8_t> cls(ext->size());
    for (std::uint32_t i = 0; i < ext->size(); ++i) {
        const ExtElem x = ext->element(i);
        cls[i] = ext->in_subfield(x, half) ? 0 : ext->minimal_degree(x) == n ? 1 : 2;
    }
    const TraceTable table(field, n, family);

    // chi_P(f) for every degree-n prime P and every f1, f2 in the family
    const auto& primes = PrimeTable::get(field, n)->of_degree(n);
    std::vector<ResidueReducer> red;
    std::vector<std::shared_ptr<const std::vector<std::int8_t>>> leg;
    for (const Poly& P : primes) {
        red.emplace_back(P);
        leg.push_back(legendre_table(P));
    }
    std::unordered_map<std::uint64_t, std::vector<std::int8_t>> columns;
    for (const CurveTriple& t : family)
        for (const Poly* f : {&t.f1, &t.f2}) {
            const std::uint64_t k = poly_key(*f);
            if (columns.count(k)) continue;
            std::vector<std::int8_t> col(primes.size());
            for (std::size_t j = 0; j < primes.size(); ++j) col[j] = (*leg[j])[red[j].reduce(*f)];
            columns.emplace(k, std::move(col));
        }

    struct Counts {
        long roots = 0, gen = 0, nongen = 0, inf = 0, prime_form = 0;
    };
    std::vector<Counts> per(family.size());
    parallel_for(family.size(), threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t m = b; m < e; ++m) {
            const CurveTriple& t = family[m];
            const auto v1 = table.values(t.f1), v2 = table.values(t.f2);
            Counts c;
            for (std::size_t i = 0; i < v1.size(); ++i) {
                const int p = v1[i] * v2[i];
                switch (cls[i]) {
                    case 0: c.roots += p == 0; break;
                    case 1: c.gen += p; break;
                    default: c.nongen += p; break;
                }
            }
            c.inf = (t.f1.deg() + t.f2.deg()) % 2 == 0 ? 1 : 0;
            const auto& c1 = columns.at(poly_key(t.f1));
            const auto& c2 = columns.at(poly_key(t.f2));
            long s = 0;
            for (std::size_t j = 0; j < c1.size(); ++j) s += c1[j] * c2[j];
            c.prime_form = long(n) * s;
            per[m] = c;
        }
    });
    mpz_class R = 0, G = 0, NG = 0, I = 0, PF = 0;
    for (const Counts& c : per) {
        R += c.roots;
        G += c.gen;
        NG += c.nongen;
        I += c.inf;
        PF += c.prime_form;
    }
    const mpz_class qh = zpow(q, half);
    const mpz_class denom = qh * static_cast<unsigned long>(family.size());
    auto term = [&](const mpz_class& s) {
        mpq_class v(3 * s, denom);
        v.canonicalize();
        return v;
    };
    Decomposition d;
    d.roots_term = term(R);
    d.bilinear_generating = term(G);
    d.bilinear_nongenerating = term(NG);
    d.bilinear_infinity = term(I);
    d.bilinear_term = term(G + NG + I);
    d.generating_prime_form = term(PF);
    d.prime_form_matches = PF == G;
    d.identity_holds = r.avg_T / qh == -3 + d.roots_term - d.bilinear_term;
    d.roots_within_bound = R <= mpz_class(g + 3) * static_cast<unsigned long>(family.size());
    d.roots_bound = 3.0 * (g + 3) / std::pow(double(q), half);
    d.nongen_bound = 3.0 * std::pow(double(q), -double(n) / 6.0);
    r.decomposition = d;
    return r;
}

std::array<std::array<mpz_class, 2>, 2> nkk_table(const Poly& P, unsigned d) {
    const QuadChar chi(P);
    std::array<std::array<long, 2>, 2> acc{};
    for (const Poly& f : enumerate(P.field(), d, PolyKind::SquarefreeMonic)) {
        const auto primes = squarefree_prime_factors(f);
        std::vector<unsigned> deg;
        std::vector<int> val;
        for (const Poly& Q : primes) {
            deg.push_back(static_cast<unsigned>(Q.deg()));
            val.push_back(chi.value(Q));
        }
        // deal each prime to slot 1, 2 or 3; track deg f1, deg f2 and chi(f1 f2)
        auto deal = [&](auto&& self, std::size_t i, unsigned d1, unsigned d2, int c) -> void {
            if (c == 0) return;
            if (i == deg.size()) {
                const unsigned d3 = d - d1 - d2;
                acc[(d1 + d3) % 2][(d2 + d3) % 2] += c;
                return;
            }
            self(self, i + 1, d1 + deg[i], d2, c * val[i]);
            self(self, i + 1, d1, d2 + deg[i], c * val[i]);
            self(self, i + 1, d1, d2, c);
        };
        deal(deal, 0, 0, 0, 1);
    }
    std::array<std::array<mpz_class, 2>, 2> out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out[a][b] = acc[a][b];
    return out;
}

mpz_class nkk_sum(const Poly& P, unsigned d, unsigned k1, unsigned k2) {
    if (k1 > 1 || k2 > 1) throw std::invalid_argument("k1 and k2 are parities");
    return nkk_table(P, d)[k1][k2];
}

mpq_class CConstants::c_kk(unsigned d, unsigned k1, unsigned k2) const {
    const int s12 = (k1 + k2) % 2 ? -1 : 1;
    const int cross = (d % 2 ? -1 : 1) * ((k1 ? -1 : 1) + (k2 ? -1 : 1));
    return A_plus + s12 * A_minus + cross * A_zero;
}

mpq_class CConstants::c_genus(std::uint64_t q, unsigned g) const {
    const mpq_class qq(static_cast<unsigned long>(q));
    const int sg = g % 2 ? -1 : 1;
    return (qq + 3) / qq * A_plus + (qq - 1) / qq * A_minus - 2 * sg * (qq + 1) / qq * A_zero;
}

CConstants c_constants(const Poly& P, unsigned M) {
    const mpq_class u(1, P.F().order());
    CConstants c;
    c.M = M;
    c.L_plus = l_value(P, false, u);
    c.L_minus = l_value(P, true, u);
    c.H_plus = h_value(FactorKind::Plus, P, u, M);
    c.H_minus = h_value(FactorKind::Minus, P, u, M);
    c.H_zero = h_value(FactorKind::Zero, P, u, M);
    c.A_plus = c.L_plus * c.L_plus * c.H_plus;
    c.A_minus = c.L_minus * c.L_minus * c.H_minus;
    c.A_zero = c.L_plus * c.L_minus * c.H_zero;
    return c;
}

mpz_class fixed_prime_family_sum(const FieldPtr& field, unsigned g, const Poly& P) {
    const QuadChar chi(P);
    long s = 0;
    for (const CurveTriple& t : enumerate_family(field, g, Variant::Monic)) s += chi.value(t.f1) * chi.value(t.f2);
    return s;
}

FixedPrimeReport fixed_prime_report(const FieldPtr& field, unsigned g, const Poly& P, unsigned M) {
    FixedPrimeReport r{P};
    r.g = g;
    r.exact_sum = fixed_prime_family_sum(field, g, P);
    const auto top = nkk_table(P, g + 3), low = nkk_table(P, g + 2);
    r.correction = 0;
    r.main_correction = 0;
    const std::uint64_t q = field->order();
    if (g % 2) {
        const QuadChar chi(P);
        long chisum = 0, count = 0;
        for (unsigned d : {g + 2, g + 3})
            for (const Poly& f : enumerate(field, d, PolyKind::SquarefreeMonic)) {
                chisum += chi.value(f);
                ++count;
            }
        r.correction = 2 * chisum + count;
        const mpq_class qq(static_cast<unsigned long>(q));
        r.main_correction = 2 * chisum + (qq + 1) / qq * mpq_class(zpow(q, g + 3)) / zeta_q_value(q, 2);
    }
    r.nkk_assembled = top[0][0] + low[0][1] + low[1][0] + low[1][1] - r.correction;
    r.constants = c_constants(P, M);
    const mpq_class main = r.constants.c_genus(q, g) / 4 * mpq_class(zpow(q, g + 3));
    r.predicted = mpq_class(main - r.main_correction).get_d();
    return r;
}

DoubleCharacterSum double_character_sum(const FieldPtr& field, unsigned d, unsigned n) {
    const auto& primes = PrimeTable::get(field, n)->of_degree(n);
    long s = 0;
    for (const Poly& D : enumerate(field, d, PolyKind::SquarefreeMonic)) {
        if (D.is_constant()) {
            s += static_cast<long>(primes.size());
            continue;
        }
        const QuadChar chi(D);
        for (const Poly& P : primes) s += chi.value(P);
    }
    DoubleCharacterSum r;
    r.sum = s;
    const double q = field->order();
    r.normalized = n * double(s) / std::pow(q, d + n / 2.0);
    return r;
}

std::vector<ExperimentRow> theorem_experiment(const FieldPtr& field, const std::vector<unsigned>& genera, unsigned n_max,
                                              Variant v, const ExperimentOptions& opts) {
    std::vector<ExperimentRow> rows;
    const double q = field->order();
    for (unsigned g : genera) {
        const auto family = enumerate_family(field, g, v);
        for (unsigned n = 1; n <= n_max; ++n) {
            ExperimentRow row;
            row.g = g;
            row.n = n;
            const double cost = double(family.size()) * std::pow(q, n);
            MomentOptions mo;
            mo.threads = opts.threads;
            if (cost > double(opts.work_budget)) {
                mo.sample = true;
                mo.sample_size = opts.sample_size;
                mo.seed = opts.seed ^ (std::uint64_t(g) << 32) ^ n;
            }
            row.report = average_trace(family, n, mo);
            const double lg = g >= 1 ? std::log(double(g)) / std::log(q) : 0.0;
            row.theorem_range = g >= 1 && n % 2 == 0 && 3 * lg <= n && n <= 2 * g;
            row.prime_sum_range = g >= 1 && n < 2.0 * g - opts.c_knob * lg;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

double FejerKernel::fhat(double x) const { return std::max(0.0, 1.0 - std::fabs(x) / alpha); }

double FejerKernel::f(double y) const {
    const double z = std::numbers::pi * alpha * y;
    if (std::fabs(z) < 1e-12) return alpha;
    const double s = std::sin(z) / z;
    return alpha * s * s;
}

std::vector<double> FejerKernel::grid(unsigned g) const {
    std::vector<double> out;
    for (unsigned n = 0; double(n) < 2.0 * alpha * g; ++n) out.push_back(fhat(n / (2.0 * g)));
    if (out.empty()) out.push_back(fhat(0));
    return out;
}

double z_from_traces(const std::vector<double>& fhat_grid, const std::vector<double>& traces, unsigned g) {
    if (fhat_grid.empty()) throw std::invalid_argument("empty test-function grid");
    double s = 0;
    for (std::size_t n = 1; n < fhat_grid.size(); ++n) s += fhat_grid[n] * traces.at(n);
    return fhat_grid[0] + s / g;
}

namespace {

// sum_{m > K} 1 / (m - t)^2, from the asymptotic series of the trigamma function
double inverse_square_tail(long K, double t) {
    const double x = double(K) + 1.0 - t;
    return 1.0 / x + 1.0 / (2 * x * x) + 1.0 / (6 * x * x * x);
}

}  // namespace

double z_from_eigenphases(const FejerKernel& k, const std::vector<double>& phases, unsigned g, long K) {
    const double pi = std::numbers::pi;
    const double c = 2.0 * g * k.alpha;
    double z = 0;
    for (double theta : phases) {
        double t = theta / (2 * pi);
        t -= std::round(t);
        double s = 0;
        for (long m = -K; m <= K; ++m) s += k.f(2.0 * g * (t - double(m)));
        // beyond K the sin^2 factor averages to 1/2, unless c is an integer
        // and it is constant
        const double mean = std::fabs(c - std::round(c)) < 1e-12 ? std::pow(std::sin(pi * c * t), 2) : 0.5;
        const double amp = k.alpha / std::pow(pi * k.alpha * 2.0 * g, 2);
        s += amp * mean * (inverse_square_tail(K, t) + inverse_square_tail(K, -t));
        z += s;
    }
    return z;
}

std::vector<double> eigenphases(const std::vector<mpz_class>& P_C) {
    std::vector<double> out;
    for (const cld& rho : reciprocal_roots_with_multiplicity(P_C)) out.push_back(static_cast<double>(std::arg(rho)));
    return out;
}

DensityReport one_level_density(const FieldPtr& field, unsigned g, const std::vector<double>& fhat_grid, Variant v,
                                const FejerKernel* kernel, std::uint64_t check_curves, unsigned threads) {
    if (g == 0) throw std::invalid_argument("the density needs g >= 1");
    if (fhat_grid.empty()) throw std::invalid_argument("empty test-function grid");
    DensityReport r;
    r.g = g;
    r.cutoff = fhat_grid.size();
    r.alpha_warning = r.cutoff - 1 > 2 * g;
    const auto family = enumerate_family(field, g, v);
    require_family(family);

    double fam = 0, ref = 0;
    for (std::size_t n = 1; n < fhat_grid.size(); ++n) {
        const MomentReport m = average_trace(family, static_cast<unsigned>(n), MomentOptions{false, 0, 0, threads});
        fam += fhat_grid[n] * m.avg_trace;
        ref += fhat_grid[n] * matrix_integral_reference(MatrixGroup::USpCubed, g, static_cast<unsigned>(n));
    }
    r.family_value = fhat_grid[0] + fam / g;
    r.reference_value = fhat_grid[0] + ref / g;

    if (kernel && check_curves > 0) {
        const std::uint64_t count = std::min<std::uint64_t>(check_curves, family.size());
        const std::uint32_t q = field->order();
        for (std::uint64_t i = 0; i < count; ++i) {
            const CurveTriple& t = family[i * family.size() / count];
            const CurveData cd = zeta_numerator(t, static_cast<unsigned>(r.cutoff));
            std::vector<double> tr(r.cutoff, 0.0);
            for (std::size_t n = 1; n < r.cutoff; ++n) tr[n] = cd.T[n].get_d() / std::pow(double(q), n / 2.0);
            const double zt = z_from_traces(fhat_grid, tr, g);
            const double ze = z_from_eigenphases(*kernel, eigenphases(cd.P_C), g);
            r.max_eigen_trace_gap = std::max(r.max_eigen_trace_gap, std::fabs(zt - ze));
            ++r.curves_checked;
        }
    }
    return r;
}

}  // namespace ffstat
