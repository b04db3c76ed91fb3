#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspkit/errors.hpp"
#include "qspkit/half_cholesky.hpp"
#include "qspkit/laurent.hpp"
#include "qspkit/nlft.hpp"
#include "qspkit/parallel.hpp"
#include "qspkit/riemann_hilbert.hpp"
#include "qspkit/weiss.hpp"

namespace qspkit {

// RNG contract: coefficients come from mt19937_64 through an explicit
// Box-Muller transform (one cosine/sine pair per complex coefficient), so the
// stream is reproducible across compilers and languages.  The identifier
// below is embedded in JSON output.
inline constexpr const char* kRngIdentifier = "mt19937_64+box-muller";

namespace detail {

struct GaussianSource {
    std::mt19937_64 gen;

    explicit GaussianSource(std::uint64_t seed) : gen(seed) {}

    double uniform() {  // [0, 1), 53-bit
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }

    cd next_complex() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        return cd(radius * std::cos(angle), radius * std::sin(angle));
    }
};

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Seeded degree-n target with both coefficient parts standard normal, rescaled
// so the 16x-oversampled sup-norm estimate equals exactly 1 - eta.
inline LaurentPolynomial random_target(int n, double eta, std::uint64_t seed) {
    if (n < 0) throw ValidationError("degree must be nonnegative");
    if (!(eta > 0.0) || !(eta < 1.0))
        throw ValidationError("eta must lie strictly between 0 and 1");
    detail::GaussianSource source(seed);
    std::vector<cd> coeffs(static_cast<std::size_t>(n) + 1);
    for (cd& c : coeffs) c = source.next_complex();
    LaurentPolynomial p{0, std::move(coeffs)};
    const double norm = sup_norm(p, 16);
    if (!(norm > 0.0)) throw Degenerate("random target collapsed to zero");
    return scaled(p, (1.0 - eta) / norm);
}

namespace detail {

inline void check_error_grid(std::size_t grid_n, const LaurentPolynomial& a,
                             const LaurentPolynomial& b) {
    if (!is_power_of_two(grid_n))
        throw ValidationError("error grid size must be a power of two");
    if (grid_n < a.span() || grid_n < b.span())
        throw ValidationError("error grid size must exceed the degree spans");
}

}  // namespace detail

// || |a|^2 + |b|^2 - 1 ||  as a root mean square over the evaluation grid.
inline double completion_error(const LaurentPolynomial& a,
                               const LaurentPolynomial& b, std::size_t grid_n) {
    detail::check_error_grid(grid_n, a, b);
    const std::vector<cd> sa = eval_on_grid(a, grid_n).samples;
    const std::vector<cd> sb = eval_on_grid(b, grid_n).samples;
    double acc = 0.0;
    for (std::size_t j = 0; j < grid_n; ++j) {
        const double defect = std::norm(sa[j]) + std::norm(sb[j]) - 1.0;
        acc += defect * defect;
    }
    return std::sqrt(acc / static_cast<double>(grid_n));
}

// Root-mean-square distance between (a, b) and the transform of F, with the
// two component defects summed inside the square root.
inline double forward_error(const LaurentPolynomial& a,
                            const LaurentPolynomial& b, const NlftSequence& f,
                            std::size_t grid_n) {
    const NlftPair pair = forward_nlft(f);
    detail::check_error_grid(grid_n, a, b);
    detail::check_error_grid(grid_n, pair.a, pair.b);
    const std::vector<cd> sa = eval_on_grid(a, grid_n).samples;
    const std::vector<cd> sb = eval_on_grid(b, grid_n).samples;
    const std::vector<cd> ra = eval_on_grid(pair.a, grid_n).samples;
    const std::vector<cd> rb = eval_on_grid(pair.b, grid_n).samples;
    double acc = 0.0;
    for (std::size_t j = 0; j < grid_n; ++j)
        acc += std::norm(ra[j] - sa[j]) + std::norm(rb[j] - sb[j]);
    return std::sqrt(acc / static_cast<double>(grid_n));
}

enum class BenchMethod { direct, half_cholesky, layer_strip };

inline const char* method_name(BenchMethod m) {
    switch (m) {
        case BenchMethod::direct: return "direct";
        case BenchMethod::half_cholesky: return "half_cholesky";
        case BenchMethod::layer_strip: return "layer_strip";
    }
    return "unknown";
}

inline BenchMethod method_from_name(const std::string& name) {
    if (name == "direct") return BenchMethod::direct;
    if (name == "half_cholesky" || name == "half-cholesky")
        return BenchMethod::half_cholesky;
    if (name == "layer_strip" || name == "layer-strip")
        return BenchMethod::layer_strip;
    throw ValidationError("unknown method: " + name);
}

struct BenchConfig {
    std::vector<int> degrees;
    double eta = 0.5;
    double eps = 1e-14;
    std::uint64_t seed = 17;
    std::vector<BenchMethod> methods;
    int repeats = 1;
};

struct BenchRecord {
    int degree = 0;
    BenchMethod method = BenchMethod::half_cholesky;
    int repeat = 0;
    double wall_time_seconds = 0.0;
    double completion_error = std::numeric_limits<double>::quiet_NaN();
    double forward_error = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";
};

namespace detail {

inline void check_bench_config(const BenchConfig& cfg) {
    for (std::size_t i = 0; i < cfg.degrees.size(); ++i) {
        if (cfg.degrees[i] <= 0)
            throw ValidationError("bench degrees must be positive");
        if (i > 0 && cfg.degrees[i] <= cfg.degrees[i - 1])
            throw ValidationError("bench degrees must be ascending");
    }
    if (!(cfg.eta > 0.0) || !(cfg.eta < 1.0))
        throw ValidationError("eta must lie strictly between 0 and 1");
    if (!(cfg.eps > 0.0)) throw ValidationError("eps must be positive");
    if (cfg.repeats < 1) throw ValidationError("repeats must be at least 1");
}

}  // namespace detail

// One record per degree x method x repeat, ordered that way regardless of the
// worker pool's completion order.  The target for a given (degree, repeat)
// slot is shared by all methods.  Timing covers completion plus inversion;
// generation and error evaluation are outside the clock.  Solver failures are
// captured in the status column instead of aborting the sweep.
inline std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
    detail::check_bench_config(cfg);
    if (cfg.methods.empty() || cfg.degrees.empty()) return {};
    const std::size_t per_degree =
        cfg.methods.size() * static_cast<std::size_t>(cfg.repeats);
    const std::size_t total = cfg.degrees.size() * per_degree;
    std::vector<BenchRecord> records(total);
    parallel_for(total, [&](std::size_t idx) {
        const std::size_t di = idx / per_degree;
        const std::size_t mi = (idx % per_degree) /
                               static_cast<std::size_t>(cfg.repeats);
        const int repeat = static_cast<int>(idx % static_cast<std::size_t>(cfg.repeats));
        BenchRecord& rec = records[idx];
        rec.degree = cfg.degrees[di];
        rec.method = cfg.methods[mi];
        rec.repeat = repeat;
        const std::uint64_t instance_seed = detail::mix64(
            detail::mix64(cfg.seed + static_cast<std::uint64_t>(rec.degree)) +
            static_cast<std::uint64_t>(repeat));
        const LaurentPolynomial b = random_target(rec.degree, cfg.eta, instance_seed);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const CompletionResult r = complete(b, cfg.eps);
            NlftSequence f;
            switch (rec.method) {
                case BenchMethod::direct:
                    f = inverse_nlft_direct(r.c_hat);
                    break;
                case BenchMethod::half_cholesky:
                    f = inverse_nlft_fast(r.c_hat);
                    break;
                case BenchMethod::layer_strip:
                    f = layer_strip(NlftPair{r.a, b});
                    break;
            }
            const auto t1 = std::chrono::steady_clock::now();
            rec.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
            const std::size_t grid = std::max<std::size_t>(
                8, next_power_of_two(4 * (static_cast<std::size_t>(rec.degree) + 1)));
            rec.completion_error = completion_error(r.a, b, grid);
            rec.forward_error = forward_error(r.a, b, f, grid);
            rec.status = "ok";
        } catch (const Error& e) {
            const auto t1 = std::chrono::steady_clock::now();
            rec.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
            rec.completion_error = std::numeric_limits<double>::quiet_NaN();
            rec.forward_error = std::numeric_limits<double>::quiet_NaN();
            rec.status = e.code();
        }
    });
    return records;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline void emit_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
    out << "degree,method,repeat,wall_time_s,completion_err,forward_err,status\n";
    for (const BenchRecord& r : records) {
        out << r.degree << ',' << method_name(r.method) << ',' << r.repeat << ','
            << format_double(r.wall_time_seconds) << ','
            << format_double(r.completion_error) << ','
            << format_double(r.forward_error) << ',' << r.status << '\n';
    }
}

inline void emit_json(const std::vector<BenchRecord>& records,
                      const BenchConfig& cfg, std::ostream& out) {
    nlohmann::json doc;
    doc["rng"] = kRngIdentifier;
    doc["seed"] = cfg.seed;
    doc["eta"] = cfg.eta;
    doc["eps"] = cfg.eps;
    doc["records"] = nlohmann::json::array();
    for (const BenchRecord& r : records) {
        doc["records"].push_back({{"degree", r.degree},
                                  {"method", method_name(r.method)},
                                  {"repeat", r.repeat},
                                  {"wall_time_s", r.wall_time_seconds},
                                  {"completion_err", r.completion_error},
                                  {"forward_err", r.forward_error},
                                  {"status", r.status}});
    }
    out << doc.dump(2) << '\n';
}

}  // namespace qspkit
