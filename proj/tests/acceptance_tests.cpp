// Release gate: every check below must print PASS for the build to count.
// Each criterion is independent; failures are reported, never thrown past.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qspkit/bench.hpp"
#include "qspkit/gqsp.hpp"
#include "qspkit/half_cholesky.hpp"
#include "qspkit/json_io.hpp"
#include "qspkit/laurent.hpp"
#include "qspkit/nlft.hpp"
#include "qspkit/riemann_hilbert.hpp"
#include "qspkit/weiss.hpp"

using namespace qspkit;

namespace {

constexpr double kCompletionTol = 1e-12;
constexpr double kForwardTol = 1e-10;
constexpr double kCrossSolverTol = 1e-10;
constexpr double kPipelineSecondsCap = 60.0;
constexpr double kScalingRatioCap = 5.0;
constexpr double kPropertyTol = 1e-12;
constexpr double kProtocolTol = 1e-12;
constexpr double kStructureTol = 1e-12;
constexpr double kRoundTripTol = 1e-12;
constexpr double kStripRoundTripTol = 1e-11;

int failures = 0;

void report(int index, const std::string& label, bool pass,
            const std::string& detail) {
    if (!pass) ++failures;
    std::printf("%s  criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
                label.c_str(), detail.c_str());
    std::fflush(stdout);
}

void guarded(int index, const std::string& label,
             const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [pass, detail] = body();
        report(index, label, pass, detail);
    } catch (const std::exception& e) {
        report(index, label, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return std::string(buf);
}

std::size_t error_grid(int degree) {
    return std::max<std::size_t>(
        8, next_power_of_two(4 * (static_cast<std::size_t>(degree) + 1)));
}

NlftSequence random_sequence(int len, std::uint64_t seed, int mode,
                             double scale = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    NlftSequence f;
    f.support_start = 0;
    f.values.resize(static_cast<std::size_t>(len));
    for (cd& v : f.values) {
        const double re = scale * u(gen);
        const double im = scale * u(gen);
        if (mode == 1)
            v = cd(0.0, im);  // X-constrained draw
        else if (mode == 2)
            v = cd(re, 0.0);  // Y-constrained draw
        else
            v = cd(re, im);
    }
    return f;
}

Su2Sample analytic_target(const NlftPair& pair, cd z, int n) {
    Su2Sample m = pair_sample(pair, z);
    const cd zn = zpow(z, n);
    m.a11 *= zn;
    m.a21 *= zn;
    return m;
}

Su2Sample laurent_target(const NlftPair& pair, cd z, int n) {
    Su2Sample m = pair_sample(pair, z * z);
    const cd zn = zpow(z, n);
    m.a11 *= zn;
    m.a21 *= zn;
    m.a12 /= zn;
    m.a22 /= zn;
    return m;
}

double pipeline_seconds(int degree, std::uint64_t seed) {
    const LaurentPolynomial b = random_target(degree, 0.5, seed);
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 2; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        const CompletionResult r = complete(b);
        const NlftSequence f = inverse_nlft_fast(r.c_hat);
        const auto t1 = std::chrono::steady_clock::now();
        volatile double sink = std::abs(f.values.back());
        (void)sink;
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void criterion_completion_accuracy() {
    guarded(1, "completion accuracy, degrees 5..500 at eta 0.5", [] {
        double worst = 0.0;
        for (const int d : {5, 10, 20, 50, 100, 200, 500}) {
            const LaurentPolynomial b =
                random_target(d, 0.5, 9000 + static_cast<std::uint64_t>(d));
            const CompletionResult r = complete(b);
            worst = std::max(worst, completion_error(r.a, b, error_grid(d)));
        }
        return std::make_pair(worst <= kCompletionTol,
                              "worst completion_error " + fmt(worst) +
                                  " vs " + fmt(kCompletionTol));
    });
}

void criterion_inverse_accuracy() {
    guarded(2, "half-Cholesky forward error, degrees 5..1000", [] {
        double worst = 0.0;
        for (const int d : {5, 10, 20, 50, 100, 200, 500, 1000}) {
            const LaurentPolynomial b =
                random_target(d, 0.5, 9500 + static_cast<std::uint64_t>(d));
            const CompletionResult r = complete(b);
            const NlftSequence f = inverse_nlft_fast(r.c_hat);
            worst = std::max(worst, forward_error(r.a, b, f, error_grid(d)));
        }
        return std::make_pair(worst <= kForwardTol,
                              "worst forward_error " + fmt(worst) + " vs " +
                                  fmt(kForwardTol));
    });
}

void criterion_cross_solver() {
    guarded(3, "fast vs direct solver on 20 instances up to degree 100", [] {
        std::mt19937_64 gen(333);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const int degree = 1 + static_cast<int>(gen() % 100);
            const double eta = (i % 2 == 0) ? 0.1 : 0.5;
            const LaurentPolynomial b = random_target(degree, eta, gen());
            const CompletionResult r = complete(b);
            const NlftSequence fast = inverse_nlft_fast(r.c_hat);
            const NlftSequence direct = inverse_nlft_direct(r.c_hat);
            for (std::size_t k = 0; k < fast.values.size(); ++k)
                worst = std::max(worst,
                                 std::abs(fast.values[k] - direct.values[k]));
        }
        return std::make_pair(worst <= kCrossSolverTol,
                              "worst coefficient gap " + fmt(worst) + " vs " +
                                  fmt(kCrossSolverTol));
    });
}

void criterion_performance() {
    guarded(4, "degree-1000 pipeline envelope and quadratic scaling", [] {
        const double t1000 = pipeline_seconds(1000, 77);
        const double t2000 = pipeline_seconds(2000, 78);
        const double ratio = t2000 / t1000;
        const bool pass = t1000 <= kPipelineSecondsCap && ratio <= kScalingRatioCap;
        return std::make_pair(pass, "t(1000) " + fmt(t1000) + " s vs " +
                                        fmt(kPipelineSecondsCap) +
                                        " s, t(2000)/t(1000) " + fmt(ratio) +
                                        " vs " + fmt(kScalingRatioCap));
    });
}

void criterion_properties() {
    guarded(5, "transform identities on 100 random sequences", [] {
        std::mt19937_64 gen(555);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const int len = 1 + static_cast<int>(gen() % 64);
            const NlftSequence f = random_sequence(len, gen(), 0);
            worst = std::max(worst, check_properties(f, gen()).max());
        }
        return std::make_pair(worst <= kPropertyTol,
                              "worst identity defect " + fmt(worst) + " vs " +
                                  fmt(kPropertyTol));
    });
}

void criterion_protocol_equivalence() {
    guarded(6, "phase protocol matches the transform in both pictures", [] {
        std::mt19937_64 gen(666);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const int len = 1 + static_cast<int>(gen() % 32);
            const NlftSequence f = random_sequence(len, gen(), 0);
            const GqspPhaseFactors ph = phases_from_sequence(f);
            const NlftPair pair = forward_nlft(f);
            const int n = len - 1;
            for (int j = 0; j < 16; ++j) {
                const cd z = std::polar(1.0, angle(gen));
                worst = std::max(
                    worst, max_abs_diff(evaluate_protocol(ph, z, Picture::Analytic),
                                        analytic_target(pair, z, n)));
                worst = std::max(
                    worst, max_abs_diff(evaluate_protocol(ph, z, Picture::Laurent),
                                        laurent_target(pair, z, n)));
            }
        }
        return std::make_pair(worst <= kProtocolTol,
                              "worst entry gap " + fmt(worst) + " vs " +
                                  fmt(kProtocolTol) + ", 50 sequences x 16 points");
    });
}

void criterion_subalgebras() {
    guarded(7, "constrained sequences collapse to the classical ansatz", [] {
        std::mt19937_64 gen(777);
        double worst_x = 0.0;
        for (int i = 0; i < 50; ++i) {
            const int len = 1 + static_cast<int>(gen() % 32);
            const GqspPhaseFactors ph =
                phases_from_sequence(random_sequence(len, gen(), 1));
            worst_x = std::max(worst_x, std::abs(ph.lambda));
            for (const double t : ph.theta) worst_x = std::max(worst_x, std::abs(t));
        }
        double worst_y = 0.0;
        for (int i = 0; i < 50; ++i) {
            const int len = 1 + static_cast<int>(gen() % 32);
            const GqspPhaseFactors ph =
                phases_from_sequence(random_sequence(len, gen(), 2));
            double psi = ph.lambda;
            for (std::size_t k = 0; k < ph.phi.size(); ++k) {
                const Su2Sample a_k = zrot(psi) * xrot(ph.phi[k]) * zrot(-psi);
                worst_y = std::max(worst_y, max_abs_diff(a_k, yrot(ph.phi[k])));
                psi += ph.theta[k];
            }
        }
        const bool pass = worst_x <= kStructureTol && worst_y <= kStructureTol;
        return std::make_pair(pass, "imaginary-draw phase residue " + fmt(worst_x) +
                                        ", Y-rotation gap " + fmt(worst_y) +
                                        " vs " + fmt(kStructureTol));
    });
}

void criterion_round_trips() {
    guarded(8, "sequence/phase round trips and layer stripping", [] {
        std::mt19937_64 gen(888);
        double worst_seq = 0.0;
        double worst_phase = 0.0;
        for (int i = 0; i < 30; ++i) {
            const int len = 1 + static_cast<int>(gen() % 64);
            const NlftSequence f = random_sequence(len, gen(), 0);
            const GqspPhaseFactors ph = phases_from_sequence(f);
            const NlftSequence back = sequence_from_phases(ph);
            for (std::size_t k = 0; k < f.values.size(); ++k)
                worst_seq = std::max(worst_seq,
                                     std::abs(back.values[k] - f.values[k]));
            const GqspPhaseFactors ph2 = phases_from_sequence(back);
            worst_phase = std::max(worst_phase, std::abs(ph2.lambda - ph.lambda));
            for (std::size_t k = 0; k < ph.phi.size(); ++k) {
                worst_phase = std::max(worst_phase,
                                       std::abs(ph2.phi[k] - ph.phi[k]));
                worst_phase = std::max(worst_phase,
                                       std::abs(ph2.theta[k] - ph.theta[k]));
            }
        }
        // stripping compounds the per-step normalization roundoff by roughly
        // prod sqrt(1 + |F_k|^2), so the tight tolerance is honest only for
        // moderate coefficients; the draw is pinned at half scale.
        double worst_strip = 0.0;
        for (int i = 0; i < 30; ++i) {
            const int len = 1 + static_cast<int>(gen() % 32);
            const NlftSequence f = random_sequence(len, gen(), 0, 0.5);
            const NlftSequence back = layer_strip(forward_nlft(f));
            for (std::size_t k = 0; k < f.values.size(); ++k)
                worst_strip = std::max(worst_strip,
                                       std::abs(back.values[k] - f.values[k]));
        }
        const bool pass = worst_seq <= kRoundTripTol &&
                          worst_phase <= kRoundTripTol &&
                          worst_strip <= kStripRoundTripTol;
        return std::make_pair(
            pass, "sequence gap " + fmt(worst_seq) + ", phase gap " +
                      fmt(worst_phase) + " vs " + fmt(kRoundTripTol) +
                      "; strip gap " + fmt(worst_strip) + " vs " +
                      fmt(kStripRoundTripTol));
    });
}

void criterion_determinism() {
    guarded(9, "bench error columns are reproducible per seed", [] {
        BenchConfig cfg;
        cfg.degrees = {5, 10};
        cfg.methods = {BenchMethod::half_cholesky, BenchMethod::direct};
        cfg.repeats = 2;
        cfg.seed = 20240817;
        const std::vector<BenchRecord> a = run_bench(cfg);
        const std::vector<BenchRecord> b = run_bench(cfg);
        if (a.size() != b.size())
            return std::make_pair(false, std::string("record counts differ"));
        std::ostringstream ca, cb;
        emit_csv(a, ca);
        emit_csv(b, cb);
        std::string la, lb;
        std::istringstream sa(ca.str()), sb(cb.str());
        bool same = true;
        std::size_t rows = 0;
        while (std::getline(sa, la) && std::getline(sb, lb)) {
            // blank out the timing column (4th field) before comparing
            const auto strip = [](const std::string& line) {
                std::string out;
                int field = 0;
                for (const char c : line) {
                    if (c == ',') ++field;
                    if (field != 3 || c == ',') out += c;
                }
                return out;
            };
            same = same && strip(la) == strip(lb);
            ++rows;
        }
        return std::make_pair(same && rows == a.size() + 1,
                              same ? std::to_string(a.size()) +
                                         " records bit-identical"
                                   : std::string("columns differ between runs"));
    });
}

}  // namespace

int main() {
    criterion_completion_accuracy();
    criterion_inverse_accuracy();
    criterion_cross_solver();
    criterion_performance();
    criterion_properties();
    criterion_protocol_equivalence();
    criterion_subalgebras();
    criterion_round_trips();
    criterion_determinism();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
