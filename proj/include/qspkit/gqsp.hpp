#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qspkit/errors.hpp"
#include "qspkit/laurent.hpp"
#include "qspkit/nlft.hpp"
#include "qspkit/su2.hpp"

namespace qspkit {

// Parameters of the degree-n protocol
//   e^{i lambda Z} e^{i phi_0 X} e^{i theta_0 Z} w e^{i phi_1 X} e^{i theta_1 Z} w ... e^{i phi_n X} e^{i theta_n Z}
// with signal operator w.  phi values live in [-pi/2, pi/2), theta values in
// [-pi, pi).  canonical means lambda + sum(theta) = 0 (within 1e-12), which
// pins the otherwise free global Z-phase split.
struct GqspPhaseFactors {
    double lambda = 0.0;
    std::vector<double> phi;
    std::vector<double> theta;
    int n = -1;
    bool canonical = false;
};

// The half-angles psi_k that conjugate each X-rotation into the processing
// operator A_k = e^{i psi_k Z} e^{i phi_k X} e^{-i psi_k Z}.
struct PhasePrefactors {
    std::vector<double> psi;
};

enum class Subalgebra { XConstrained, YConstrained, General };

enum class Picture { Analytic, Laurent };

// |Im F| at or below this (relative to max(1, |F|)) classifies F as real for
// the psi case split; the exact-arithmetic case table needs a threshold in
// floating point.
inline constexpr double kRealnessTol = 1e-12;

// psi_k = -arctan(Re F_k / Im F_k)/2 for genuinely complex F_k, -pi/4 for
// real nonzero F_k, 0 for F_k = 0.
inline PhasePrefactors prefactors(const NlftSequence& f) {
    PhasePrefactors out;
    out.psi.reserve(f.values.size());
    for (const cd& v : f.values) {
        if (v == cd(0.0)) {
            out.psi.push_back(0.0);
        } else if (std::abs(v.imag()) <= kRealnessTol * std::max(1.0, std::abs(v))) {
            out.psi.push_back(-std::numbers::pi / 4.0);
        } else {
            out.psi.push_back(-0.5 * std::atan(v.real() / v.imag()));
        }
    }
    return out;
}

// Phase factors of the protocol whose transform has F as its sequence:
// lambda = psi_0, theta_k = psi_{k+1} - psi_k, theta_n = -psi_n (canonical),
// phi_k = arctan(t_k) with t_k = -i e^{-2i psi_k} F_k real by construction.
inline GqspPhaseFactors phases_from_sequence(const NlftSequence& f) {
    if (f.empty())
        throw ValidationError("cannot derive phase factors from an empty sequence");
    if (f.support_start != 0)
        throw ValidationError("sequence support must start at 0; shift it first");

    const PhasePrefactors pre = prefactors(f);
    const std::size_t len = f.values.size();
    GqspPhaseFactors ph;
    ph.n = static_cast<int>(len) - 1;
    ph.lambda = pre.psi[0];
    ph.phi.resize(len);
    ph.theta.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
        const cd t = cd(0.0, -1.0) * std::polar(1.0, -2.0 * pre.psi[k]) * f.values[k];
        if (std::abs(t.imag()) > 1e-10 * (1.0 + std::abs(t)))
            throw NonRealTangent("tangent at index " + std::to_string(k) +
                                 " has imaginary part " + std::to_string(t.imag()));
        ph.phi[k] = std::atan(t.real());
        ph.theta[k] = k + 1 < len ? pre.psi[k + 1] - pre.psi[k] : -pre.psi[k];
    }
    ph.canonical = true;
    return ph;
}

// Inverse of phases_from_sequence: psi_0 = lambda, psi_{k+1} = psi_k + theta_k,
// F_k = i tan(phi_k) e^{2i psi_k}.  Requires the canonical condition, since
// the psi recursion is only valid when the trailing Z-rotation closes the
// telescope.
inline NlftSequence sequence_from_phases(const GqspPhaseFactors& ph) {
    const std::size_t len = ph.phi.size();
    if (len == 0 || ph.theta.size() != len || ph.n != static_cast<int>(len) - 1)
        throw ValidationError("phase factor lists must both have length n+1");
    double total = ph.lambda;
    for (double t : ph.theta) total += t;
    if (std::abs(total) > 1e-10)
        throw NotCanonical("lambda + sum(theta) = " + std::to_string(total) +
                           "; canonicalize before inverting");
    NlftSequence f;
    f.support_start = 0;
    f.values.resize(len);
    double psi = ph.lambda;
    for (std::size_t k = 0; k < len; ++k) {
        f.values[k] = cd(0.0, 1.0) * std::tan(ph.phi[k]) * std::polar(1.0, 2.0 * psi);
        psi += ph.theta[k];
    }
    return f;
}

struct NormalizedLeading {
    LaurentPolynomial p;
    double alpha = 0.0;
};

// Rotates P so its leading (highest-exponent) coefficient becomes real
// positive; the returned alpha is half the phase that was removed, ready to
// be folded into lambda and theta_n by the caller.  The companion polynomial
// is accepted for interface symmetry and rides along unchanged.
inline NormalizedLeading normalize_leading_phase(const LaurentPolynomial& p,
                                                 const LaurentPolynomial& /*q*/ = LaurentPolynomial::zero()) {
    const LaurentPolynomial t = trim_exact(p);
    if (t.is_zero())
        throw ValidationError("cannot normalize the leading phase of the zero polynomial");
    const double alpha = 0.5 * std::arg(t.coeffs.back());
    NormalizedLeading out;
    out.alpha = alpha;
    out.p = scaled(p, std::polar(1.0, -2.0 * alpha));
    return out;
}

inline double wrap_angle_pi(double t) {
    t = std::remainder(t, 2.0 * std::numbers::pi);  // lands in [-pi, pi]
    if (t >= std::numbers::pi) t -= 2.0 * std::numbers::pi;
    return t;
}

// Right-multiplies the protocol by iX, swapping the roles of the two
// polynomials it produces: if it produced (Q, P) it now produces (iP, iQ).
// Uses e^{i phi_n X} e^{i theta_n Z} iX = e^{i(phi_n + pi/2) X} e^{-i theta_n Z};
// when phi_n + pi/2 leaves [-pi/2, pi/2) the wrap by pi flips the rotation's
// sign, which is compensated by adding pi to theta_n.
inline GqspPhaseFactors switch_polynomials(const GqspPhaseFactors& ph) {
    if (ph.phi.empty() || ph.theta.size() != ph.phi.size())
        throw ValidationError("phase factor lists must both have length n+1");
    GqspPhaseFactors out = ph;
    double& phi_n = out.phi.back();
    double& theta_n = out.theta.back();
    theta_n = -theta_n;
    phi_n += std::numbers::pi / 2.0;
    if (phi_n >= std::numbers::pi / 2.0) {
        phi_n -= std::numbers::pi;
        theta_n = wrap_angle_pi(theta_n + std::numbers::pi);
    }
    double total = out.lambda;
    for (double t : out.theta) total += t;
    out.canonical = std::abs(total) <= 1e-12;
    return out;
}

inline Subalgebra detect_subalgebra(const NlftSequence& f, double tol) {
    double max_re = 0.0, max_im = 0.0, max_abs = 0.0;
    for (const cd& v : f.values) {
        max_re = std::max(max_re, std::abs(v.real()));
        max_im = std::max(max_im, std::abs(v.imag()));
        max_abs = std::max(max_abs, std::abs(v));
    }
    const double cut = tol * std::max(1.0, max_abs);
    if (max_re <= cut) return Subalgebra::XConstrained;
    if (max_im <= cut) return Subalgebra::YConstrained;
    return Subalgebra::General;
}

namespace detail {

inline LaurentPolynomial stretch_exponents(const LaurentPolynomial& p, int n) {
    if (p.is_zero()) return LaurentPolynomial::zero();
    std::vector<cd> c(2 * static_cast<std::size_t>(p.span()) + 1, cd(0.0));
    for (std::size_t j = 0; j < p.coeffs.size(); ++j) c[2 * j] = p.coeffs[j];
    return LaurentPolynomial(2 * p.support_start - n, std::move(c));
}

inline LaurentPolynomial compress_exponents(const LaurentPolynomial& p, int n) {
    if (p.is_zero()) return LaurentPolynomial::zero();
    std::vector<cd> c(static_cast<std::size_t>(n) + 1, cd(0.0));
    for (int e = p.support_start; e <= p.support_end(); ++e) {
        const cd v = p.coeff(e);
        if (v == cd(0.0)) continue;
        if (e < -n || e > n || (e + n) % 2 != 0)
            throw ValidationError("polynomial is not in the degree-" + std::to_string(n) +
                                  " definite-parity window");
        c[static_cast<std::size_t>((e + n) / 2)] = v;
    }
    return trim_exact(LaurentPolynomial(0, std::move(c)));
}

}  // namespace detail

// The substitution (P, Q) -> (z^{-n} P(z^2), z^{-n} Q(z^2)) taking a protocol
// with signal diag(z, 1) to the protocol with signal diag(z, 1/z); the phase
// factors carry over verbatim.  n is the protocol degree, read off as the
// larger support end of the two inputs.
inline std::pair<LaurentPolynomial, LaurentPolynomial> analytic_to_laurent(
    const LaurentPolynomial& p, const LaurentPolynomial& q) {
    if (p.support_start < 0 || q.support_start < 0)
        throw ValidationError("analytic-picture polynomials must be supported on [0, n]");
    const int n = std::max(p.support_end(), q.support_end());
    return {detail::stretch_exponents(p, n), detail::stretch_exponents(q, n)};
}

// Inverse of analytic_to_laurent on definite-parity inputs.
inline std::pair<LaurentPolynomial, LaurentPolynomial> laurent_to_analytic(
    const LaurentPolynomial& p, const LaurentPolynomial& q) {
    const int n = std::max(p.support_end(), q.support_end());
    if (n < 0)
        throw ValidationError("laurent-picture polynomials must reach a nonnegative top exponent");
    return {detail::compress_exponents(p, n), detail::compress_exponents(q, n)};
}

// Real Chebyshev combination sum_k p_k T_k(x) expressed on the circle through
// T_k = (z^k + z^{-k})/2.
inline LaurentPolynomial chebyshev_target_to_laurent(const std::vector<double>& p_cheb) {
    if (p_cheb.empty()) return LaurentPolynomial::zero();
    const int top = static_cast<int>(p_cheb.size()) - 1;
    std::vector<cd> c(2 * static_cast<std::size_t>(top) + 1, cd(0.0));
    c[static_cast<std::size_t>(top)] = cd(p_cheb[0]);
    for (int k = 1; k <= top; ++k) {
        c[static_cast<std::size_t>(top + k)] += cd(p_cheb[static_cast<std::size_t>(k)] / 2.0);
        c[static_cast<std::size_t>(top - k)] += cd(p_cheb[static_cast<std::size_t>(k)] / 2.0);
    }
    return trim_exact(LaurentPolynomial(-top, std::move(c)));
}

// Multiplies out the protocol at a point of the unit circle.  The analytic
// picture uses the signal operator diag(z, 1), the laurent picture
// diag(z, 1/z); both use the same phase factors.
inline Su2Sample evaluate_protocol(const GqspPhaseFactors& ph, cd z, Picture picture) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw ValidationError("protocol evaluation requires |z| = 1");
    const std::size_t len = ph.phi.size();
    if (len == 0 || ph.theta.size() != len)
        throw ValidationError("phase factor lists must both have length n+1");
    const Su2Sample signal = picture == Picture::Analytic
                                 ? Su2Sample{z, cd(0.0), cd(0.0), cd(1.0)}
                                 : Su2Sample{z, cd(0.0), cd(0.0), cd(1.0) / z};
    Su2Sample m = zrot(ph.lambda);
    for (std::size_t k = 0; k < len; ++k) {
        if (k > 0) m = m * signal;
        m = m * xrot(ph.phi[k]) * zrot(ph.theta[k]);
    }
    return m;
}

}  // namespace qspkit
