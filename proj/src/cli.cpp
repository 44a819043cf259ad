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

#include "ffstat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "ffstat/arith.hpp"
#include "ffstat/cache.hpp"
#include "ffstat/errors.hpp"
#include "ffstat/field.hpp"
#include "ffstat/moments.hpp"
#include "ffstat/poly_text.hpp"
#include "ffstat/primes.hpp"

namespace ffstat::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Documented ranges; --help repeats them.
constexpr std::uint32_t kMaxQ = 4096;
constexpr unsigned kMaxGenus = 12;
constexpr unsigned kMaxNMax = 24;
constexpr unsigned kMaxN = 16;
constexpr unsigned kMaxM = 24;
constexpr unsigned kMaxDMax = 16;
constexpr unsigned kMaxPrimeDegree = 16;
constexpr double kMaxAlpha = 8.0;
constexpr unsigned kMaxThreads = 256;
constexpr std::uint64_t kMaxSample = 1'000'000'000;

bool odd_prime_power(std::uint32_t q) {
    if (q < 3 || q % 2 == 0) return false;
    std::uint32_t p = 3;
    while (p * p <= q && q % p) p += 2;
    if (q % p) p = q;
    while (q % p == 0) q /= p;
    return q == 1;
}

template <class T>
void check_range(const char* field, T v, T lo, T hi) {
    if (v < lo || v > hi) {
        std::ostringstream m;
        m << "must be between " << lo << " and " << hi << ", got " << v;
        throw ConfigError(field, m.str());
    }
}

Poly parse_field(const char* field, const std::string& text, const FieldPtr& F) {
    if (text.empty()) throw ConfigError(field, "a polynomial is required");
    try {
        return parse_poly(text, F);
    } catch (const PolyParseError& e) {
        throw ConfigError(field, e.what());
    }
}

std::string to_str(const mpz_class& z) { return z.get_str(); }

mpq_class canonical(mpq_class x) {
    x.canonicalize();
    return x;
}

// Exhaustive work: members times points of P^1(F_{q^n}).
double cost(const mpz_class& members, std::uint32_t q, unsigned n) { return members.get_d() * std::pow(double(q), n); }

void check_budget(const RunConfig& c, double work) {
    if (work > double(c.work_budget)) {
        std::ostringstream m;
        m << "exhaustive run needs about " << format_double(std::round(work)) << " trace evaluations, over the budget of "
          << c.work_budget << "; raise --work-budget or use --mode sample";
        throw ConfigError("work-budget", m.str());
    }
}

struct Context {
    const RunConfig& c;
    FieldPtr F;
    std::unique_ptr<DiskCache> cache;
    std::vector<std::string> warnings;

    std::vector<CurveTriple> family(unsigned g, Variant v) {
        return cache ? cache->family(F, g, v, warnings) : enumerate_family(F, g, v);
    }
};

Table lfunc_table(Context& cx) {
    const RunConfig& c = cx.c;
    const Poly D = parse_field("modulus", c.modulus, cx.F);
    if (D.is_constant()) throw ConfigError("modulus", "must be nonconstant");
    if (!is_squarefree(D.monic())) throw ConfigError("modulus", "must be square-free");
    const QuadChar chi(D, c.sign);
    const LPoly raw = l_polynomial(chi);
    const LPoly L = complete_l(raw, chi);
    if (!satisfies_functional_equation(L)) throw InvariantViolation("completed L-polynomial fails the functional equation");
    const FrobeniusData fd = frobenius_traces(L, c.n_max, c.check_rh);

    Table t;
    t.single = true;
    t.columns = {"q", "modulus", "sign", "raw_coeffs", "lambda", "delta", "lstar_coeffs", "traces_t", "rh_max_deviation"};
    Cell rh;
    if (fd.rh_max_deviation) rh = *fd.rh_max_deviation;
    t.rows.push_back({(long long)c.q, to_string(D), std::string(sign_name(c.sign)), raw.coeffs, (long long)L.lambda,
                      (long long)L.delta, L.coeffs, IntList(fd.traces.begin() + 1, fd.traces.end()), rh});
    return t;
}

Table family_table(Context& cx) {
    const RunConfig& c = cx.c;
    Table t;
    if (c.count) {
        const mpz_class size = cx.cache ? mpz_class(std::to_string(cx.family(c.genus, c.variant).size()))
                                         : family_size(cx.F, c.genus, c.variant);
        const mpz_class qg = [&] {
            mpz_class r;
            mpz_ui_pow_ui(r.get_mpz_t(), c.q, c.genus + 3);
            return r;
        }();
        t.single = true;
        t.columns = {"q", "g", "variant", "family_size", "size_ratio"};
        t.rows.push_back({(long long)c.q, (long long)c.genus, std::string(variant_name(c.variant)), size,
                          canonical(mpq_class(size, qg))});
        return t;
    }
    t.columns = {"q", "g", "variant", "index", "f1", "f2", "f3"};
    long long i = 0;
    for (const CurveTriple& m : cx.family(c.genus, c.variant))
        t.rows.push_back({(long long)c.q, (long long)c.genus, std::string(variant_name(c.variant)), i++,
                          to_string(m.f1), to_string(m.f2), to_string(m.f3)});
    return t;
}

Table curve_table(Context& cx) {
    const RunConfig& c = cx.c;
    const Poly f1 = parse_field("f1", c.f1, cx.F), f2 = parse_field("f2", c.f2, cx.F), f3 = parse_field("f3", c.f3, cx.F);
    unsigned g = 0;
    try {
        g = triple_genus(f1, f2, f3, c.variant);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("f1", std::string("triple rejected: ") + e.what());
    }
    const CurveData d = zeta_numerator(CurveTriple{f1, f2, f3, c.variant, g}, c.n_max);
    Table t;
    t.single = true;
    t.columns = {"q", "genus", "f1", "f2", "f3", "N", "T", "P_C"};
    t.rows.push_back({(long long)c.q, (long long)g, to_string(f1), to_string(f2), to_string(f3),
                      IntList(d.N.begin() + 1, d.N.begin() + 1 + c.n_max),
                      IntList(d.T.begin() + 1, d.T.begin() + 1 + c.n_max), d.P_C});
    return t;
}

Table moments_table(Context& cx) {
    const RunConfig& c = cx.c;
    const auto fam = cx.family(c.genus, c.variant);
    const mpz_class size(std::to_string(fam.size()));
    std::vector<CurveTriple> monic;
    if (c.mode == Mode::Exhaustive) {
        if (c.variant == Variant::Full) monic = cx.family(c.genus, Variant::Monic);
        const mpz_class msize(std::to_string(c.variant == Variant::Full ? monic.size() : 0));
        double work = 0;
        for (unsigned n = 1; n <= c.n_max; ++n) work += cost(size, c.q, n) + (n % 2 ? 0 : cost(msize, c.q, n));
        check_budget(c, work);
    }
    const std::vector<CurveTriple>& monic_fam = c.variant == Variant::Monic ? fam : monic;

    Table t;
    t.columns = {"q",   "g",         "n",          "family_size",   "avg_T_num",   "avg_T_den",  "avg_trace",
                 "reference", "gap", "roots_term", "bilinear_term", "roots_bound", "nongen_bound"};
    for (unsigned n = 1; n <= c.n_max; ++n) {
        MomentReport r;
        std::optional<Decomposition> dec;
        if (c.mode == Mode::Sample) {
            r = average_trace(fam, n, MomentOptions{true, c.sample_size, c.seed, c.threads});
        } else if (n % 2 == 0) {
            MomentReport m = error_decomposition(monic_fam, n, c.threads);
            dec = m.decomposition;
            r = c.variant == Variant::Monic ? std::move(m) : average_trace(fam, n, MomentOptions{false, 0, 0, c.threads});
        } else {
            r = average_trace(fam, n, MomentOptions{false, 0, 0, c.threads});
        }
        const mpq_class avg = canonical(r.avg_T);
        std::vector<Cell> row{(long long)c.q,
                              (long long)c.genus,
                              (long long)n,
                              size,
                              mpz_class(avg.get_num()),
                              mpz_class(avg.get_den()),
                              r.avg_trace,
                              (long long)r.reference,
                              r.gap};
        if (dec) {
            row.insert(row.end(), {canonical(dec->roots_term), canonical(dec->bilinear_term), dec->roots_bound,
                                   dec->nongen_bound});
        } else {
            row.insert(row.end(), 4, std::monostate{});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table density_table(Context& cx) {
    const RunConfig& c = cx.c;
    if (c.genus == 0) throw ConfigError("genus", "density needs genus >= 1");
    const FejerKernel k{c.alpha};
    const auto grid = k.grid(c.genus);
    double work = 0;
    const mpz_class size = family_size(cx.F, c.genus, c.variant);
    for (unsigned n = 1; n < grid.size(); ++n) work += cost(size, c.q, n);
    check_budget(c, work);
    const DensityReport r = one_level_density(cx.F, c.genus, grid, c.variant, &k, c.check_curves, c.threads);
    Table t;
    t.single = true;
    t.columns = {"q",          "g",           "variant",        "kernel",          "alpha",
                 "cutoff",     "family_value", "reference_value", "curves_checked", "max_eigen_trace_gap",
                 "alpha_warning"};
    t.rows.push_back({(long long)c.q, (long long)c.genus, std::string(variant_name(c.variant)), c.kernel, c.alpha,
                      (long long)r.cutoff, r.family_value, r.reference_value, (long long)r.curves_checked,
                      r.max_eigen_trace_gap, r.alpha_warning});
    if (r.alpha_warning) cx.warnings.push_back("alpha > 1 uses traces beyond n = 2g");
    return t;
}

Table lemma61_table(Context& cx) {
    const RunConfig& c = cx.c;
    const Poly P = parse_field("prime", c.prime, cx.F);
    if (!P.is_monic() || P.is_constant() || !is_irreducible(P)) throw ConfigError("prime", "must be monic irreducible");
    const CConstants cc = c_constants(P, c.M);
    Table t;
    t.columns = {"q", "prime", "d", "k1", "k2", "M", "N", "C", "predicted", "gap", "scaled_gap"};
    for (unsigned d = 0; d <= c.d_max; ++d) {
        const auto N = nkk_table(P, d);
        const double qd = std::pow(double(c.q), d);
        for (unsigned k1 = 0; k1 < 2; ++k1)
            for (unsigned k2 = 0; k2 < 2; ++k2) {
                const double C = cc.c_kk(d, k1, k2).get_d();
                const double predicted = C * qd / 4;
                const double gap = N[k1][k2].get_d() - predicted;
                t.rows.push_back({(long long)c.q, to_string(P), (long long)d, (long long)k1, (long long)k2,
                                  (long long)c.M, N[k1][k2], C, predicted, gap,
                                  std::fabs(gap) / std::pow(double(c.q), 0.6 * d)});
            }
    }
    return t;
}

Table eulersum_table(Context& cx) {
    const RunConfig& c = cx.c;
    const PrimeSumReport r = prime_sum(c.kind, cx.F, c.n, c.M, c.threads);
    const mpq_class s = canonical(r.sum), ref = canonical(r.reference);
    Table t;
    t.columns = {"q", "n", "M", "kind", "sum_num", "sum_den", "reference_num", "reference_den", "scaled_gap"};
    t.rows.push_back({(long long)c.q, (long long)c.n, (long long)c.M, std::string(kind_name(c.kind)),
                      mpz_class(s.get_num()), mpz_class(s.get_den()), mpz_class(ref.get_num()), mpz_class(ref.get_den()),
                      r.scaled_gap});
    return t;
}

Table primes_table(Context& cx) {
    const RunConfig& c = cx.c;
    std::vector<std::vector<Poly>> by_degree;
    if (cx.cache) {
        by_degree = cx.cache->primes(cx.F, c.max_degree, cx.warnings);
    } else {
        const auto table = PrimeTable::get(cx.F, c.max_degree);
        by_degree.resize(c.max_degree + 1);
        for (unsigned d = 1; d <= c.max_degree; ++d) by_degree[d] = table->of_degree(d);
    }
    Table t;
    t.columns = {"q", "degree", "prime"};
    for (unsigned d = 1; d <= c.max_degree; ++d)
        for (const Poly& P : by_degree[d]) t.rows.push_back({(long long)c.q, (long long)d, to_string(P)});
    return t;
}

std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) {
        if (ch == '"') o += '"';
        o += ch;
    }
    return o + "\"";
}

ojson json_int(const mpz_class& z) {
    if (z.fits_slong_p()) return ojson(z.get_si());
    return ojson(z.get_str());
}

ojson json_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> ojson {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<V, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else if constexpr (std::is_same_v<V, mpz_class>) {
                return json_int(v);
            } else if constexpr (std::is_same_v<V, mpq_class>) {
                return ojson{{"num", to_str(v.get_num())}, {"den", to_str(v.get_den())}};
            } else if constexpr (std::is_same_v<V, IntList>) {
                ojson a = ojson::array();
                for (const auto& z : v) a.push_back(json_int(z));
                return a;
            } else {
                return v;
            }
        },
        cell);
}

std::string csv_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<V, std::string>) {
                return csv_field(v);
            } else if constexpr (std::is_same_v<V, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<V, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<V, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<V, mpz_class>) {
                return v.get_str();
            } else if constexpr (std::is_same_v<V, mpq_class>) {
                return v.get_num().get_str() + "/" + v.get_den().get_str();
            } else {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i].get_str();
                return s;
            }
        },
        cell);
}

template <class T>
void parse_choice(const char* field, const std::string& text, const std::vector<std::pair<const char*, T>>& options,
                  T& out) {
    for (const auto& [name, value] : options)
        if (text == name) {
            out = value;
            return;
        }
    std::string allowed;
    for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
    throw ConfigError(field, "expected one of " + allowed + ", got '" + text + "'");
}

}  // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::Lfunc: return "lfunc";
        case Command::Family: return "family";
        case Command::Curve: return "curve";
        case Command::Moments: return "moments";
        case Command::Density: return "density";
        case Command::Lemma61: return "lemma61";
        case Command::Eulersum: return "eulersum";
        case Command::Primes: return "primes";
    }
    return "?";
}

void validate(const RunConfig& c) {
    if (!odd_prime_power(c.q) || c.q > kMaxQ)
        throw ConfigError("q", "must be an odd prime power between 3 and " + std::to_string(kMaxQ) + ", got " +
                                   std::to_string(c.q));
    check_range("genus", c.genus, 0u, kMaxGenus);
    check_range("n-max", c.n_max, 1u, kMaxNMax);
    check_range("n", c.n, 1u, kMaxN);
    check_range("M", c.M, 1u, kMaxM);
    check_range("d-max", c.d_max, 0u, kMaxDMax);
    check_range("max-degree", c.max_degree, 1u, kMaxPrimeDegree);
    if (!(c.alpha > 0 && c.alpha <= kMaxAlpha))
        throw ConfigError("alpha", "must be in (0, " + format_double(kMaxAlpha) + "], got " + format_double(c.alpha));
    check_range("threads", c.threads, 1u, kMaxThreads);
    check_range<std::uint64_t>("sample-size", c.sample_size, 1, kMaxSample);
    check_range<std::uint64_t>("check-curves", c.check_curves, 0, 1'000'000);
    if (c.work_budget == 0) throw ConfigError("work-budget", "must be positive");
    if (c.kernel != "fejer") throw ConfigError("kernel", "only 'fejer' is available, got '" + c.kernel + "'");
    if (c.command == Command::Density && c.genus == 0) throw ConfigError("genus", "density needs genus >= 1");
}

std::string resolve_cache_dir(const std::optional<std::string>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("FFSTAT_CACHE_DIR")) return env;
    return {};
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string render_csv(const Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
        s += '\n';
    }
    return s;
}

std::string render_json(const Table& t) {
    auto object = [&](const std::vector<Cell>& row) {
        ojson o = ojson::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = json_cell(row.at(i));
        return o;
    };
    ojson doc;
    if (t.single && t.rows.size() == 1) {
        doc = object(t.rows[0]);
    } else {
        doc = ojson::array();
        for (const auto& row : t.rows) doc.push_back(object(row));
    }
    return doc.dump(2) + "\n";
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        validate(c);
        Context cx{c, FiniteField::of_order(c.q), nullptr, {}};
        if (!c.cache_dir.empty()) cx.cache = std::make_unique<DiskCache>(c.cache_dir);
        Table t;
        switch (c.command) {
            case Command::Lfunc: t = lfunc_table(cx); break;
            case Command::Family: t = family_table(cx); break;
            case Command::Curve: t = curve_table(cx); break;
            case Command::Moments: t = moments_table(cx); break;
            case Command::Density: t = density_table(cx); break;
            case Command::Lemma61: t = lemma61_table(cx); break;
            case Command::Eulersum: t = eulersum_table(cx); break;
            case Command::Primes: t = primes_table(cx); break;
        }
        for (const auto& w : cx.warnings) err << "ffstat: warning: " << w << '\n';
        const std::string text = c.format == Format::Csv ? render_csv(t) : render_json(t);
        if (c.out.empty()) {
            out << text;
            out.flush();
        } else {
            std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
            if (!(f << text) || !f.flush()) throw ConfigError("out", "cannot write " + c.out);
        }
        return 0;
    } catch (const InvariantViolation& e) {
        err << "ffstat: invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        err << "ffstat: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "ffstat: " << command_name(c.command) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "ffstat: " << command_name(c.command) << ": " << e.what() << '\n';
        return 1;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    std::string format = "csv", variant = "monic", mode = "exhaustive", sign = "plus", kind = "plus";
    std::string cache_dir;

    CLI::App app{"ffstat: L-functions, biquadratic curve families and trace moments over F_q[X]", "ffstat"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer("Exit codes: 0 success, 1 configuration error, 2 internal invariant violation.\n"
               "Polynomials: ascending coefficients \"1,0,1\" or symbolic \"X^2+1\".\n"
               "FFSTAT_CACHE_DIR sets the cache directory unless --cache-dir is given.");
    app.add_option("--q", c.q, "field size, an odd prime power in [3, 4096]");
    app.add_option("--format", format, "csv or json");
    app.add_option("--out", c.out, "write output to this file instead of stdout");
    auto* cache_opt = app.add_option("--cache-dir", cache_dir, "directory for prime-table and family caches");
    app.add_option("--threads", c.threads, "worker threads in [1, 256]; output does not depend on it");
    app.add_option("--seed", c.seed, "sampling seed");
    app.add_option("--work-budget", c.work_budget, "cap on members x q^n for exhaustive runs");

    auto add_genus = [&](CLI::App* s) { s->add_option("--genus", c.genus, "genus in [0, 12]"); };
    auto add_variant = [&](CLI::App* s) { s->add_option("--variant", variant, "monic or full"); };

    auto* lfunc = app.add_subcommand("lfunc", "L-polynomial of chi_D, its completion and Frobenius traces");
    lfunc->add_option("--modulus", c.modulus, "square-free modulus D")->required();
    lfunc->add_option("--sign", sign, "plus or minus");
    lfunc->add_option("--n-max", c.n_max, "traces t_1..t_n-max, n-max in [1, 24]");
    lfunc->add_flag("--check-rh", c.check_rh, "compute reciprocal roots and their deviation from |rho| = sqrt(q)");
    lfunc->footer("Columns: q, modulus, sign, raw_coeffs, lambda, delta, lstar_coeffs, traces_t, rh_max_deviation.\n"
                  "Coefficient lists are ascending and semicolon-separated in CSV.");

    auto* family = app.add_subcommand("family", "members of the genus-g biquadratic family");
    add_genus(family);
    add_variant(family);
    family->add_flag("--count", c.count, "only the family size");
    family->footer("Columns: q, g, variant, index, f1, f2, f3.\n"
                   "With --count: q, g, variant, family_size, size_ratio (family_size / q^(g+3)).");

    auto* curve = app.add_subcommand("curve", "point counts and zeta numerator of one curve");
    curve->add_option("--f1", c.f1, "f1")->required();
    curve->add_option("--f2", c.f2, "f2 (default 1)");
    curve->add_option("--f3", c.f3, "f3, monic (default 1)");
    add_variant(curve);
    curve->add_option("--n-max", c.n_max, "counts N_1..N_n-max, n-max in [1, 24]");
    curve->footer("Columns: q, genus, f1, f2, f3, N, T, P_C (lists, semicolon-separated in CSV).");

    auto* moments = app.add_subcommand("moments", "family averages of T_n against the USp(2g)^3 integral");
    add_genus(moments);
    add_variant(moments);
    moments->add_option("--n-max", c.n_max, "n = 1..n-max, n-max in [1, 24]");
    moments->add_option("--mode", mode, "exhaustive or sample");
    moments->add_option("--sample-size", c.sample_size, "members drawn with replacement in sample mode");
    moments->footer("Columns: q, g, n, family_size, avg_T_num, avg_T_den, avg_trace, reference, gap, roots_term,\n"
                    "bilinear_term, roots_bound, nongen_bound. The last four are filled for even n in exhaustive mode.");

    auto* density = app.add_subcommand("density", "averaged one-level density for a Fejer test function");
    add_genus(density);
    add_variant(density);
    density->add_option("--alpha", c.alpha, "support of the test function's transform, in (0, 8]");
    density->add_option("--kernel", c.kernel, "fejer");
    density->add_option("--check-curves", c.check_curves, "members checked against their eigenphases");
    density->footer("Columns: q, g, variant, kernel, alpha, cutoff, family_value, reference_value, curves_checked,\n"
                    "max_eigen_trace_gap, alpha_warning.");

    auto* lemma = app.add_subcommand("lemma61", "fixed-prime sums N_{k1,k2}(d; P) against C_{k1,k2}(d; P) q^d / 4");
    lemma->add_option("--prime", c.prime, "monic irreducible P")->required();
    lemma->add_option("--d-max", c.d_max, "d = 0..d-max, d-max in [0, 16]");
    lemma->add_option("--M", c.M, "Euler product truncation in [1, 24]");
    lemma->footer("Columns: q, prime, d, k1, k2, M, N, C, predicted, gap, scaled_gap (|gap| / q^(0.6 d)).");

    auto* eulersum = app.add_subcommand("eulersum", "sum over primes of degree n of truncated Euler products");
    eulersum->add_option("--n", c.n, "prime degree in [1, 16]");
    eulersum->add_option("--M", c.M, "truncation in [1, 24]");
    eulersum->add_option("--kind", kind, "plus, minus or zero");
    eulersum->footer("Columns: q, n, M, kind, sum_num, sum_den, reference_num, reference_den, scaled_gap.");

    auto* primes = app.add_subcommand("primes", "monic primes by degree");
    primes->add_option("--max-degree", c.max_degree, "degrees 1..max-degree, at most 16");
    primes->footer("Columns: q, degree, prime.");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        if (auto nl = msg.find('\n'); nl != std::string::npos) msg.resize(nl);
        err << "ffstat: " << msg << '\n';
        return 1;
    }
    for (auto* sub : app.get_subcommands()) {
        // subcommand help is handled by CLI11 raising CallForHelp above
        const std::string name = sub->get_name();
        const std::pair<const char*, Command> all[] = {
            {"lfunc", Command::Lfunc},     {"family", Command::Family},     {"curve", Command::Curve},
            {"moments", Command::Moments}, {"density", Command::Density},   {"lemma61", Command::Lemma61},
            {"eulersum", Command::Eulersum}, {"primes", Command::Primes}};
        for (const auto& [n, cmd] : all)
            if (name == n) c.command = cmd;
    }
    try {
        parse_choice<Format>("format", format, {{"csv", Format::Csv}, {"json", Format::Json}}, c.format);
        parse_choice<Variant>("variant", variant, {{"monic", Variant::Monic}, {"full", Variant::Full}}, c.variant);
        parse_choice<Mode>("mode", mode, {{"exhaustive", Mode::Exhaustive}, {"sample", Mode::Sample}}, c.mode);
        parse_choice<CharSign>("sign", sign, {{"plus", CharSign::Plus}, {"minus", CharSign::Minus}}, c.sign);
        parse_choice<FactorKind>("kind", kind,
                                 {{"plus", FactorKind::Plus}, {"minus", FactorKind::Minus}, {"zero", FactorKind::Zero}},
                                 c.kind);
    } catch (const ConfigError& e) {
        err << "ffstat: " << e.what() << '\n';
        return 1;
    }
    c.cache_dir = resolve_cache_dir(cache_opt->count() ? std::optional<std::string>(cache_dir) : std::nullopt);
    return run(c, out, err);
}

}  // namespace ffstat::cli
