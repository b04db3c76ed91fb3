#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qspkit/errors.hpp"
#include "qspkit/fft.hpp"
#include "qspkit/laurent.hpp"

namespace qspkit {

// Output of the completion: an outer a with support in [-n, 0], normalized so
// the exponent-0 coefficient is real and strictly positive, together with the
// Fourier coefficients c_hat[k] of b/a for k = 0 .. n.
struct CompletionResult {
    LaurentPolynomial a;
    std::vector<cd> c_hat;
    std::size_t grid_size = 0;
    double eta_used = 0.0;
    // max | |a(z_j)|^2 + |b(z_j)|^2 - 1 | over the final grid, a truncated.
    double residual = 0.0;
    // |arg| of the unit scalar that was needed to make a's constant term real
    // positive; stays near roundoff level unless something went wrong upstream.
    double phase_correction = 0.0;
};

// Smallest power of two >= (8n/eta) * log(576 n^2 / (eta^4 eps)), clamped
// below by 8.  This is the grid size at which the Fourier approximation of
// log sqrt(1 - |b|^2) is provably accurate enough; in practice it is
// conservative and the caller may converge on a smaller grid.
inline std::size_t choose_grid_size(int n, double eta, double eps) {
    if (n < 0)
        throw ValidationError("degree must be nonnegative");
    if (!(eta > 0.0 && eta < 1.0))
        throw ValidationError("eta must lie in (0, 1)");
    if (!(eps > 0.0))
        throw ValidationError("eps must be positive");
    if (n == 0) return 8;
    const double dn = static_cast<double>(n);
    const double bound = (8.0 * dn / eta) * std::log(576.0 * dn * dn / (eta * eta * eta * eta * eps));
    std::size_t grid = 8;
    while (static_cast<double>(grid) < bound) grid <<= 1;
    return grid;
}

// Boundary values of the analytic completion of a real function on the circle
// from its Fourier coefficients: the coefficient at exponent 0 passes through,
// coefficients at exponents -k (k >= 1) are doubled, positive exponents are
// dropped.  Input r_hat[j] is the coefficient at exponent j - N/2; the result
// out[j] is the coefficient at exponent j - N/2 for j = 0 .. N/2 (so the last
// entry sits at exponent 0).
inline std::vector<cd> schwarz_transform(const std::vector<cd>& r_hat, std::size_t n_grid) {
    if (r_hat.size() != n_grid)
        throw ValidationError("schwarz_transform expects a full length-N coefficient window");
    const std::size_t half = n_grid / 2;
    std::vector<cd> out(half + 1, cd(0.0));
    out[half] = r_hat[half];  // exponent 0
    for (std::size_t k = 1; k <= half; ++k)
        out[half - k] = 2.0 * r_hat[half - k];
    return out;
}

namespace detail {

inline int target_degree_checked(const LaurentPolynomial& b) {
    if (b.support_start < 0)
        throw ValidationError("target polynomial must be supported on exponents [0, n]");
    return b.support_end();
}

inline double admissibility_checked(const LaurentPolynomial& b, const std::optional<double>& eta) {
    const double est = sup_norm(b, 16);
    if (est > 1.0 - 1e-8)
        throw SupNormTooLarge("target sup norm estimate " + std::to_string(est) +
                              " leaves no completion margin");
    if (eta) {
        if (!(*eta > 0.0 && *eta < 1.0))
            throw ValidationError("eta must lie in (0, 1)");
        if (est > 1.0 - *eta + 1e-12)
            throw SupNormTooLarge("target sup norm estimate " + std::to_string(est) +
                                  " exceeds 1 - eta = " + std::to_string(1.0 - *eta));
        return *eta;
    }
    return std::min(1.0 - 1e-8, std::max(1e-8, 1.0 - est));
}

}  // namespace detail

// Single-grid completion at a fixed power-of-two grid size.  complete() below
// wraps this with the grid-size formula and doubling; this entry point exists
// so callers can compare results across grid sizes.
inline CompletionResult complete_on_grid(const LaurentPolynomial& b, std::size_t n_grid,
                                         std::optional<double> eta = {}) {
    const int n = detail::target_degree_checked(b);
    const double eta_used = detail::admissibility_checked(b, eta);
    if (!is_power_of_two(n_grid) || n_grid < 2 * (static_cast<std::size_t>(n) + 1))
        throw ValidationError("completion grid must be a power of two of at least twice the window");

    Radix2Fft plan(n_grid);
    const std::size_t half = n_grid / 2;

    std::vector<cd> b_samples(n_grid);
    scatter_into_bins(b, b_samples);
    plan.forward(b_samples);

    // R = log sqrt(1 - |b|^2), computed in a cancellation-free form.
    std::vector<cd> work(n_grid);
    for (std::size_t j = 0; j < n_grid; ++j) {
        const double m2 = std::norm(b_samples[j]);
        if (!(m2 < 1.0))
            throw SupNormTooLarge("target reaches modulus >= 1 on the completion grid");
        work[j] = cd(0.5 * std::log1p(-m2), 0.0);
    }
    plan.inverse(work);

    std::vector<cd> g_hat;
    {
        LaurentPolynomial r_hat = gather_window(work, -static_cast<int>(half), n_grid);
        g_hat = schwarz_transform(r_hat.coeffs, n_grid);
    }
    scatter_into_bins(LaurentPolynomial(-static_cast<int>(half), std::move(g_hat)), work);
    plan.forward(work);
    for (std::size_t j = 0; j < n_grid; ++j) work[j] = std::exp(work[j]);  // samples of a, pre-phase

    CompletionResult result;
    result.grid_size = n_grid;
    result.eta_used = eta_used;

    std::vector<cd> scratch = work;
    plan.inverse(scratch);
    // Phase normalization: divide everything by the unit scalar a0/|a0| taken
    // from the transform itself, as (x * conj(a0)) / |a0|, which leaves the
    // exponent-0 coefficient of a with an exactly zero imaginary part.
    const cd a0 = scratch[0];
    const double a0_abs = std::abs(a0);
    result.phase_correction = a0_abs > 0.0 ? std::abs(std::arg(a0)) : 0.0;

    result.a = gather_window(scratch, -n, static_cast<std::size_t>(n) + 1);
    if (a0_abs > 0.0)
        for (cd& x : result.a.coeffs) x = (x * std::conj(a0)) / a0_abs;

    for (std::size_t j = 0; j < n_grid; ++j) scratch[j] = b_samples[j] / work[j];
    plan.inverse(scratch);
    {
        LaurentPolynomial c = gather_window(scratch, 0, static_cast<std::size_t>(n) + 1);
        result.c_hat = std::move(c.coeffs);
        if (a0_abs > 0.0)
            for (cd& x : result.c_hat) x = (x * a0) / a0_abs;
    }

    scatter_into_bins(result.a, scratch);
    plan.forward(scratch);
    double res = 0.0;
    for (std::size_t j = 0; j < n_grid; ++j)
        res = std::max(res, std::abs(std::norm(scratch[j]) + std::norm(b_samples[j]) - 1.0));
    result.residual = std::isfinite(res) ? res : std::numeric_limits<double>::infinity();
    return result;
}

// Completion: finds the outer a with |a|^2 + |b|^2 = 1 on the circle and
// a's constant term real positive, plus the Fourier window of c = b/a.
// The grid starts at the formula-chosen size and doubles (up to 2^26) until
// the residual drops below 10*eps; a final residual above 100*eps raises
// NonConvergent.
inline CompletionResult complete(const LaurentPolynomial& b, double eps = 1e-14,
                                 std::optional<double> eta = {}) {
    if (!(eps > 0.0))
        throw ValidationError("eps must be positive");
    const int n = detail::target_degree_checked(b);
    const double eta_used = detail::admissibility_checked(b, eta);

    const std::size_t grid_cap = std::size_t(1) << 26;
    std::size_t n_grid = std::max(choose_grid_size(n, eta_used, eps),
                                  next_power_of_two(2 * (static_cast<std::size_t>(n) + 1)));
    CompletionResult result;
    for (;;) {
        result = complete_on_grid(b, n_grid, eta_used);
        if (result.residual <= 10.0 * eps || n_grid >= grid_cap) break;
        n_grid <<= 1;
    }
    if (result.residual > 100.0 * eps)
        throw NonConvergent("completion residual " + std::to_string(result.residual) +
                            " did not reach tolerance at grid size " +
                            std::to_string(result.grid_size));
    return result;
}

}  // namespace qspkit
