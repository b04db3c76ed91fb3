#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qspkit/errors.hpp"
#include "qspkit/laurent.hpp"
#include "qspkit/su2.hpp"

namespace qspkit {

// A compactly supported sequence F_k of complex values; values[j] sits at
// index support_start + j.
struct NlftSequence {
    int support_start = 0;
    std::vector<cd> values;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
};

// The transform of a sequence: a pair of Laurent polynomials with
// |a|^2 + |b|^2 = 1 on the circle, a supported on nonpositive exponents with
// a real positive constant term, and b's support tracking the sequence.
struct NlftPair {
    LaurentPolynomial a = LaurentPolynomial::constant(cd(1.0));
    LaurentPolynomial b = LaurentPolynomial::zero();
};

// The matrix completion of a pair at a point of the unit circle,
// [[a, b], [-b*, a*]]; uses p*(z) = conj(p(z)) valid for |z| = 1.
inline Su2Sample pair_sample(const NlftPair& pair, cd z) {
    const cd a = pair.a.evaluate(z);
    const cd b = pair.b.evaluate(z);
    return {a, b, -std::conj(b), std::conj(a)};
}

// Forward transform: ordered product over increasing k of
//   (1+|F_k|^2)^{-1/2} [[1, F_k z^k], [-conj(F_k) z^{-k}, 1]].
// Every factor has the [[p, q], [-q*, p*]] shape and that shape is closed
// under multiplication, so only the first row is carried.
inline NlftPair forward_nlft(const NlftSequence& f) {
    NlftPair g;
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        const int k = f.support_start + static_cast<int>(j);
        const cd fk = f.values[j];
        const double s = 1.0 / std::sqrt(1.0 + std::norm(fk));
        LaurentPolynomial a_next = g.a;
        if (!g.b.is_zero()) a_next = a_next - std::conj(fk) * shifted(g.b, -k);
        LaurentPolynomial b_next = fk * shifted(g.a, k);
        if (!g.b.is_zero()) b_next = b_next + g.b;
        g.a = scaled(a_next, cd(s));
        g.b = scaled(b_next, cd(s));
    }
    return g;
}

// Per-property maximum coefficient deviations between a transformed sequence's
// pair and the equivalent transform of the original pair.
struct NlftPropertyReport {
    double shift = 0.0;
    double composition = 0.0;
    double phase = 0.0;
    double reflection = 0.0;
    double conjugation = 0.0;

    double max() const {
        return std::max({shift, composition, phase, reflection, conjugation});
    }
};

namespace detail {

inline NlftPair pair_product(const NlftPair& l, const NlftPair& r) {
    NlftPair out;
    out.a = l.a * r.a - l.b * star(r.b);
    out.b = l.a * r.b + l.b * star(r.a);
    return out;
}

inline void check_c_window(const std::vector<cd>& c_hat) {
    if (c_hat.empty())
        throw ValidationError("c window must contain at least one coefficient");
    for (const cd& x : c_hat)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw ValidationError("c window contains a non-finite coefficient");
}

}  // namespace detail

// Exercises the algebraic identities of the transform on F itself:
//   shift:        G_m = F_{m-k}           -> (a, z^k b)
//   composition:  split at a random index -> product of the two pairs
//   phase:        G = c F, |c| = 1        -> (a, c b)
//   reflection:   G_m = F_{-m}            -> (a*(1/z), b(1/z))
//   conjugation:  G_m = conj(F_m)         -> (a*(1/z), b*(1/z))
// Each right-hand side is compared coefficientwise against forward_nlft of the
// transformed sequence.
inline NlftPropertyReport check_properties(const NlftSequence& f, std::uint64_t seed = 7) {
    std::mt19937_64 gen(seed);
    const NlftPair base = forward_nlft(f);
    NlftPropertyReport report;

    {
        const int k = 1 + static_cast<int>(gen() % 5);
        NlftSequence g = f;
        g.support_start += k;
        const NlftPair got = forward_nlft(g);
        report.shift = std::max(max_coeff_distance(got.a, base.a),
                                max_coeff_distance(got.b, shifted(base.b, k)));
    }

    if (f.size() >= 2) {
        const std::size_t split = 1 + gen() % (f.size() - 1);
        NlftSequence left{f.support_start,
                          std::vector<cd>(f.values.begin(),
                                          f.values.begin() + static_cast<std::ptrdiff_t>(split))};
        NlftSequence right{f.support_start + static_cast<int>(split),
                           std::vector<cd>(f.values.begin() + static_cast<std::ptrdiff_t>(split),
                                           f.values.end())};
        const NlftPair prod = detail::pair_product(forward_nlft(left), forward_nlft(right));
        report.composition = std::max(max_coeff_distance(prod.a, base.a),
                                      max_coeff_distance(prod.b, base.b));
    }

    {
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        const cd c = std::polar(1.0, angle(gen));
        NlftSequence g = f;
        for (cd& v : g.values) v *= c;
        const NlftPair got = forward_nlft(g);
        report.phase = std::max(max_coeff_distance(got.a, base.a),
                                max_coeff_distance(got.b, scaled(base.b, c)));
    }

    {
        NlftSequence g;
        g.support_start = -(f.support_start + static_cast<int>(f.size()) - 1);
        g.values.assign(f.values.rbegin(), f.values.rend());
        const NlftPair got = forward_nlft(g);
        report.reflection = std::max(max_coeff_distance(got.a, conj_coeffs(base.a)),
                                     max_coeff_distance(got.b, reflected(base.b)));
    }

    {
        NlftSequence g = f;
        for (cd& v : g.values) v = std::conj(v);
        const NlftPair got = forward_nlft(g);
        report.conjugation = std::max(max_coeff_distance(got.a, conj_coeffs(base.a)),
                                      max_coeff_distance(got.b, conj_coeffs(base.b)));
    }

    return report;
}

namespace detail {

struct WindowedPoly {
    LaurentPolynomial poly;
    double dropped = 0.0;
};

// Restricts p to exponents [lo, hi], reporting the largest discarded
// magnitude.  An empty window yields the zero polynomial.
inline WindowedPoly window_with_drift(const LaurentPolynomial& p, int lo, int hi) {
    WindowedPoly out;
    if (lo > hi) {
        double worst = 0.0;
        for (const cd& c : p.coeffs) worst = std::max(worst, std::abs(c));
        out.poly = LaurentPolynomial::zero();
        out.dropped = worst;
        return out;
    }
    std::vector<cd> kept(static_cast<std::size_t>(hi - lo + 1), cd(0.0));
    double worst = 0.0;
    for (int e = p.support_start; e <= p.support_end(); ++e) {
        const cd c = p.coeff(e);
        if (e < lo || e > hi)
            worst = std::max(worst, std::abs(c));
        else
            kept[static_cast<std::size_t>(e - lo)] = c;
    }
    out.poly = LaurentPolynomial(lo, std::move(kept));
    out.dropped = worst;
    return out;
}

}  // namespace detail

// Layer stripping: recovers F one entry at a time by multiplying the inverse
// of the leading factor and re-truncating to the support the remaining tail
// must occupy.  F_k is the ratio of b's exponent-k coefficient to a's
// exponent-0 coefficient (both are the lowest-order coefficients of their
// factors).  Known to lose accuracy when the pair is near-degenerate; the
// truncation drift is monitored and Degenerate is raised past 1e-6.
inline NlftSequence layer_strip(const NlftPair& pair) {
    if (pair.b.support_start != 0 && !pair.b.is_zero())
        throw ValidationError("layer stripping expects b's support to start at 0");
    if (pair.a.support_end() > 0)
        throw ValidationError("layer stripping expects a supported on nonpositive exponents");

    const int n = pair.b.support_end();
    LaurentPolynomial a = pair.a;
    LaurentPolynomial b = pair.b;
    NlftSequence f;
    f.support_start = 0;
    f.values.reserve(static_cast<std::size_t>(n) + 1);

    for (int k = 0; k <= n; ++k) {
        const cd a0 = a.coeff(0);
        const cd fk = b.coeff(k) / a0;
        if (!std::isfinite(fk.real()) || !std::isfinite(fk.imag()))
            throw Degenerate("leading coefficient of a vanished at step " + std::to_string(k));
        f.values.push_back(fk);

        const double s = 1.0 / std::sqrt(1.0 + std::norm(fk));
        LaurentPolynomial a_next = scaled(a + fk * shifted(star(b), k), cd(s));
        LaurentPolynomial b_next = scaled(b - fk * shifted(star(a), k), cd(s));

        detail::WindowedPoly wa = detail::window_with_drift(a_next, std::min(0, k + 1 - n), 0);
        detail::WindowedPoly wb = detail::window_with_drift(b_next, k + 1, n);
        const double drift = std::max(wa.dropped, wb.dropped);
        if (drift > 1e-6)
            throw Degenerate("normalization drift " + std::to_string(drift) +
                             " while peeling factor " + std::to_string(k));
        a = std::move(wa.poly);
        b = std::move(wb.poly);
    }
    return f;
}

}  // namespace qspkit
