#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qspkit/half_cholesky.hpp"
#include "qspkit/laurent.hpp"
#include "qspkit/nlft.hpp"
#include "qspkit/riemann_hilbert.hpp"
#include "qspkit/weiss.hpp"

using namespace qspkit;

namespace {

LaurentPolynomial random_target(int degree, double eta, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<cd> coeffs(static_cast<std::size_t>(degree) + 1);
    for (cd& c : coeffs) c = cd(dist(gen), dist(gen));
    LaurentPolynomial p{0, std::move(coeffs)};
    return scaled(p, (1.0 - eta) / sup_norm(p, 16));
}

std::vector<cd> random_window(int degree, double scale, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<cd> c(static_cast<std::size_t>(degree) + 1);
    for (cd& x : c) x = scale * cd(dist(gen), dist(gen));
    return c;
}

double max_seq_distance(const NlftSequence& x, const NlftSequence& y) {
    REQUIRE(x.support_start == y.support_start);
    REQUIRE(x.values.size() == y.values.size());
    double m = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        m = std::max(m, std::abs(x.values[i] - y.values[i]));
    return m;
}

double time_inverse(const std::vector<cd>& c_hat, int reps) {
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < reps; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        const NlftSequence seq = inverse_nlft_fast(c_hat);
        const auto t1 = std::chrono::steady_clock::now();
        volatile double sink = std::abs(seq.values.back());
        (void)sink;
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

TEST_CASE("displacement generators mirror the window") {
    const std::vector<cd> c = {cd(0.1, 0.2), cd(-0.3, 0.0), cd(0.0, 0.5)};
    const DisplacementGenerator gen = DisplacementGenerator::from_c_hat(c);
    REQUIRE(gen.e0.size() == 3);
    REQUIRE(gen.p.size() == 3);
    CHECK(gen.e0[0] == cd(1.0, 0.0));
    CHECK(gen.e0[1] == cd(0.0, 0.0));
    CHECK(gen.e0[2] == cd(0.0, 0.0));
    CHECK(gen.p[0] == std::conj(c[2]));
    CHECK(gen.p[1] == std::conj(c[1]));
    CHECK(gen.p[2] == std::conj(c[0]));
}

TEST_CASE("trivial factorizations") {
    SECTION("zero window gives identity factors") {
        const std::vector<cd> c(4, cd(0.0, 0.0));
        const SchurFactors f = schur_ldl(DisplacementGenerator::from_c_hat(c));
        REQUIRE(f.size() == 4);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(f.d[j] == 1.0);
            for (std::size_t i = j; i < 4; ++i) {
                const cd expect = i == j ? cd(1.0, 0.0) : cd(0.0, 0.0);
                CHECK(f.l_entry(i, j) == expect);
            }
        }
    }

    SECTION("single coefficient") {
        const cd c(0.6, -0.2);
        const SchurFactors f = schur_ldl(DisplacementGenerator::from_c_hat({c}));
        REQUIRE(f.size() == 1);
        CHECK(f.l_entry(0, 0) == cd(1.0, 0.0));
        CHECK(f.d[0] == Catch::Approx(1.0 + std::norm(c)).margin(1e-15));

        const NlftSequence seq = inverse_nlft_fast({c});
        REQUIRE(seq.values.size() == 1);
        CHECK(std::abs(seq.values[0] - c) < 1e-15);
    }
}

TEST_CASE("degree-1 inversion matches the closed form") {
    const cd c0(0.3, -0.4);
    const cd c1(-0.2, 0.6);
    const NlftSequence seq = inverse_nlft_fast({c0, c1});
    REQUIRE(seq.values.size() == 2);
    CHECK(std::abs(seq.values[0] - c0 / (1.0 + std::norm(c1))) < 1e-15);
    CHECK(std::abs(seq.values[1] - c1) < 1e-15);
}

TEST_CASE("factors reproduce the dense normal matrix") {
    const std::vector<cd> c = random_window(8, 0.4, 17);
    const DisplacementGenerator gen = DisplacementGenerator::from_c_hat(c);
    const std::size_t m = gen.p.size();
    const auto dim = static_cast<Eigen::Index>(m);

    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col)
        for (Eigen::Index row = col; row < dim; ++row)
            B(row, col) = gen.p[static_cast<std::size_t>(row - col)];
    const Eigen::MatrixXcd K =
        Eigen::MatrixXcd::Identity(dim, dim) + B * B.adjoint();

    const SchurFactors f = schur_ldl(gen);
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col)
        for (Eigen::Index row = col; row < dim; ++row)
            L(row, col) = f.l_entry(static_cast<std::size_t>(row),
                                    static_cast<std::size_t>(col));
    Eigen::VectorXd d(dim);
    for (Eigen::Index j = 0; j < dim; ++j) d(j) = f.d[static_cast<std::size_t>(j)];

    const Eigen::MatrixXcd rebuilt = L * d.asDiagonal() * L.adjoint();
    const double rel = (rebuilt - K).cwiseAbs().maxCoeff() / K.cwiseAbs().maxCoeff();
    CHECK(rel < 1e-12);

    for (std::size_t j = 0; j < m; ++j) {
        CHECK(f.d[j] >= 1.0 - 1e-12);
        CHECK(f.l_entry(j, j) == cd(1.0, 0.0));
    }
}

TEST_CASE("zero window inverts to the zero sequence") {
    const std::vector<cd> c(6, cd(0.0, 0.0));
    const NlftSequence seq = inverse_nlft_fast(c);
    for (const cd& f : seq.values) CHECK(f == cd(0.0, 0.0));
}

TEST_CASE("fast and direct solvers agree on a synthetic window") {
    const std::vector<cd> c = random_window(50, 0.1, 29);
    const NlftSequence fast = inverse_nlft_fast(c);
    const NlftSequence direct = inverse_nlft_direct(c);
    CHECK(max_seq_distance(fast, direct) < 1e-10);
}

TEST_CASE("fast and direct solvers agree on completed targets") {
    const int degrees[] = {5, 20, 50, 100};
    const double etas[] = {0.1, 0.5};
    std::uint64_t seed = 1000;
    for (const int degree : degrees) {
        for (const double eta : etas) {
            const LaurentPolynomial b = random_target(degree, eta, ++seed);
            const CompletionResult r = complete(b);
            const NlftSequence fast = inverse_nlft_fast(r.c_hat);
            const NlftSequence direct = inverse_nlft_direct(r.c_hat);
            INFO("degree " << degree << " eta " << eta);
            CHECK(max_seq_distance(fast, direct) < 1e-10);
        }
    }
}

TEST_CASE("fast inversion reconstructs the target") {
    const LaurentPolynomial b = random_target(50, 0.5, 41);
    const CompletionResult r = complete(b);
    const NlftSequence seq = inverse_nlft_fast(r.c_hat);
    const NlftPair pair = forward_nlft(seq);
    CHECK(max_coeff_distance(pair.b, b) < 1e-10);
    CHECK(max_coeff_distance(pair.a, r.a) < 1e-10);
}

TEST_CASE("pivot breakdown is reported") {
    // Overflowing generator entries drive the pivot to infinity.
    const std::vector<cd> c = {cd(1e200, 0.0), cd(1e200, 0.0)};
    CHECK_THROWS_AS(inverse_nlft_fast(c), NonPositivePivot);
    CHECK_THROWS_AS(schur_ldl(DisplacementGenerator::from_c_hat(c)),
                    NonPositivePivot);
}

TEST_CASE("window validation rejects bad input") {
    CHECK_THROWS_AS(inverse_nlft_fast({}), ValidationError);
    CHECK_THROWS_AS(DisplacementGenerator::from_c_hat({}), ValidationError);
    const std::vector<cd> nan_window = {
        cd(std::numeric_limits<double>::quiet_NaN(), 0.0)};
    CHECK_THROWS_AS(inverse_nlft_fast(nan_window), ValidationError);
}

TEST_CASE("inversion cost scales quadratically", "[scaling]") {
    const std::vector<cd> c4000 = random_window(4000, 0.02, 53);
    std::vector<double> times;
    for (const int n : {500, 1000, 2000, 4000}) {
        const std::vector<cd> c(c4000.begin(),
                                c4000.begin() + static_cast<std::ptrdiff_t>(n) + 1);
        times.push_back(time_inverse(c, n <= 1000 ? 5 : 3));
    }
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        INFO("t(" << 500 * (1 << (i + 1)) << ") / t(" << 500 * (1 << i)
                  << ") = " << times[i + 1] / times[i]);
        CHECK(times[i + 1] <= 5.0 * times[i]);
    }
}
