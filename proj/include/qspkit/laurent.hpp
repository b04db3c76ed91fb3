#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qspkit/errors.hpp"
#include "qspkit/fft.hpp"

namespace qspkit {

// z^e for integer e, by repeated squaring.  For negative e the reciprocal is
// taken at the end, so z must be nonzero.
inline cd zpow(cd z, long long e) {
    if (e == 0) return cd(1.0);
    unsigned long long m = e < 0 ? 0ULL - static_cast<unsigned long long>(e)
                                 : static_cast<unsigned long long>(e);
    cd base = z, result(1.0);
    while (m) {
        if (m & 1ULL) result *= base;
        base *= base;
        m >>= 1ULL;
    }
    return e < 0 ? cd(1.0) / result : result;
}

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// A Laurent polynomial sum_j coeffs[j] * z^(support_start + j) with a dense
// coefficient window.  The zero polynomial is canonically stored as a single
// zero coefficient at exponent 0.
struct LaurentPolynomial {
    int support_start = 0;
    std::vector<cd> coeffs{cd(0.0)};

    LaurentPolynomial() = default;
    LaurentPolynomial(int start, std::vector<cd> c) : support_start(start), coeffs(std::move(c)) {
        if (coeffs.empty()) {
            support_start = 0;
            coeffs.assign(1, cd(0.0));
        }
    }

    static LaurentPolynomial zero() { return LaurentPolynomial(); }
    static LaurentPolynomial constant(cd c) { return LaurentPolynomial(0, {c}); }
    static LaurentPolynomial monomial(cd c, int exponent) { return LaurentPolynomial(exponent, {c}); }

    int span() const { return static_cast<int>(coeffs.size()) - 1; }
    int support_end() const { return support_start + span(); }

    cd coeff(int exponent) const {
        const int j = exponent - support_start;
        if (j < 0 || j >= static_cast<int>(coeffs.size())) return cd(0.0);
        return coeffs[static_cast<std::size_t>(j)];
    }

    bool is_zero() const {
        for (const cd& c : coeffs)
            if (c != cd(0.0)) return false;
        return true;
    }

    // Horner evaluation; z must be nonzero whenever support_start < 0.
    cd evaluate(cd z) const {
        cd acc = coeffs.back();
        for (std::size_t j = coeffs.size() - 1; j-- > 0;) acc = acc * z + coeffs[j];
        return acc * zpow(z, support_start);
    }
};

// Strips exact-zero coefficients from both ends of the window; collapses to
// the canonical zero polynomial if nothing remains.
inline LaurentPolynomial trim_exact(const LaurentPolynomial& p) {
    std::size_t lo = 0, hi = p.coeffs.size();
    while (lo < hi && p.coeffs[lo] == cd(0.0)) ++lo;
    while (hi > lo && p.coeffs[hi - 1] == cd(0.0)) --hi;
    if (lo == hi) return LaurentPolynomial::zero();
    return LaurentPolynomial(p.support_start + static_cast<int>(lo),
                             std::vector<cd>(p.coeffs.begin() + static_cast<std::ptrdiff_t>(lo),
                                             p.coeffs.begin() + static_cast<std::ptrdiff_t>(hi)));
}

// Drops boundary coefficients with magnitude <= tol (in both directions).
inline LaurentPolynomial trimmed(const LaurentPolynomial& p, double tol) {
    std::size_t lo = 0, hi = p.coeffs.size();
    while (lo < hi && std::abs(p.coeffs[lo]) <= tol) ++lo;
    while (hi > lo && std::abs(p.coeffs[hi - 1]) <= tol) --hi;
    if (lo == hi) return LaurentPolynomial::zero();
    return LaurentPolynomial(p.support_start + static_cast<int>(lo),
                             std::vector<cd>(p.coeffs.begin() + static_cast<std::ptrdiff_t>(lo),
                                             p.coeffs.begin() + static_cast<std::ptrdiff_t>(hi)));
}

inline LaurentPolynomial shifted(const LaurentPolynomial& p, int k) {
    LaurentPolynomial q = p;
    q.support_start += k;
    return q;
}

inline LaurentPolynomial scaled(const LaurentPolynomial& p, cd c) {
    LaurentPolynomial q = p;
    for (cd& x : q.coeffs) x *= c;
    return q;
}

// p*(z) = conj(p(1/conj(z))): reverse the window and conjugate.  On the unit
// circle p*(z) == conj(p(z)).
inline LaurentPolynomial star(const LaurentPolynomial& p) {
    LaurentPolynomial q;
    q.support_start = -p.support_end();
    q.coeffs.assign(p.coeffs.rbegin(), p.coeffs.rend());
    for (cd& x : q.coeffs) x = std::conj(x);
    return q;
}

// p(1/z): reverse the window without conjugating.
inline LaurentPolynomial reflected(const LaurentPolynomial& p) {
    LaurentPolynomial q;
    q.support_start = -p.support_end();
    q.coeffs.assign(p.coeffs.rbegin(), p.coeffs.rend());
    return q;
}

// Entrywise conjugation, exponents untouched.
inline LaurentPolynomial conj_coeffs(const LaurentPolynomial& p) {
    LaurentPolynomial q = p;
    for (cd& x : q.coeffs) x = std::conj(x);
    return q;
}

inline LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    const int lo = std::min(a.support_start, b.support_start);
    const int hi = std::max(a.support_end(), b.support_end());
    LaurentPolynomial r(lo, std::vector<cd>(static_cast<std::size_t>(hi - lo + 1), cd(0.0)));
    for (int e = lo; e <= hi; ++e)
        r.coeffs[static_cast<std::size_t>(e - lo)] = a.coeff(e) + b.coeff(e);
    return trim_exact(r);
}

inline LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a + scaled(b, cd(-1.0));
}

inline LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPolynomial::zero();
    LaurentPolynomial r(a.support_start + b.support_start,
                        std::vector<cd>(a.coeffs.size() + b.coeffs.size() - 1, cd(0.0)));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == cd(0.0)) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return trim_exact(r);
}

inline LaurentPolynomial operator*(cd c, const LaurentPolynomial& p) { return scaled(p, c); }

// Samples of a polynomial at the N-th roots of unity; samples[j] is the value
// at exp(2*pi*i*j/N).
struct UnitCircleGrid {
    std::size_t n = 0;
    std::vector<cd> samples;
};

// Scatters coefficients into an FFT buffer: exponent e lands in bin e mod N.
// The window must fit, i.e. the buffer size must be at least the number of
// stored coefficients.
inline void scatter_into_bins(const LaurentPolynomial& p, std::vector<cd>& bins) {
    const std::size_t n = bins.size();
    if (p.coeffs.size() > n)
        throw ValidationError("coefficient window exceeds grid size");
    std::fill(bins.begin(), bins.end(), cd(0.0));
    const long long n_ll = static_cast<long long>(n);
    long long bin = ((static_cast<long long>(p.support_start) % n_ll) + n_ll) % n_ll;
    for (const cd& c : p.coeffs) {
        bins[static_cast<std::size_t>(bin)] = c;
        bin = (bin + 1) % n_ll;
    }
}

// Gathers the coefficient window [start, start+len) out of an inverse-FFT
// buffer, reading bin (e mod N) for exponent e.
inline LaurentPolynomial gather_window(const std::vector<cd>& bins, int start, std::size_t len) {
    const std::size_t n = bins.size();
    if (len == 0 || len > n)
        throw ValidationError("requested window does not fit the grid");
    std::vector<cd> c(len);
    const long long n_ll = static_cast<long long>(n);
    long long bin = ((static_cast<long long>(start) % n_ll) + n_ll) % n_ll;
    for (std::size_t j = 0; j < len; ++j) {
        c[j] = bins[static_cast<std::size_t>(bin)];
        bin = (bin + 1) % n_ll;
    }
    return LaurentPolynomial(start, std::move(c));
}

inline UnitCircleGrid eval_on_grid(const LaurentPolynomial& p, std::size_t n) {
    if (n < p.coeffs.size())
        throw ValidationError("grid size " + std::to_string(n) + " does not resolve a window of " +
                              std::to_string(p.coeffs.size()) + " coefficients");
    Radix2Fft plan(n);
    UnitCircleGrid g;
    g.n = n;
    g.samples.resize(n);
    scatter_into_bins(p, g.samples);
    plan.forward(g.samples);
    return g;
}

inline LaurentPolynomial coeffs_from_grid(const UnitCircleGrid& grid, int support_start, std::size_t len) {
    if (grid.samples.size() != grid.n)
        throw ValidationError("grid sample count disagrees with its declared size");
    Radix2Fft plan(grid.n);
    std::vector<cd> bins = grid.samples;
    plan.inverse(bins);
    return gather_window(bins, support_start, len);
}

// Sup norm over the unit circle, approximated on an oversampled grid.
inline double sup_norm(const LaurentPolynomial& p, std::size_t oversample = 16) {
    if (oversample < 4)
        throw ValidationError("sup_norm oversampling factor must be at least 4");
    const std::size_t n = next_power_of_two(oversample * p.coeffs.size());
    UnitCircleGrid g = eval_on_grid(p, n);
    double m = 0.0;
    for (const cd& v : g.samples) m = std::max(m, std::abs(v));
    return m;
}

inline double max_coeff_distance(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    const int lo = std::min(a.support_start, b.support_start);
    const int hi = std::max(a.support_end(), b.support_end());
    double m = 0.0;
    for (int e = lo; e <= hi; ++e) m = std::max(m, std::abs(a.coeff(e) - b.coeff(e)));
    return m;
}

}  // namespace qspkit
