#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qspkit/errors.hpp"
#include "qspkit/nlft.hpp"

namespace qspkit {

// Rank-two generator of the displacement K - Z K Z^dagger for K = I + B B^dagger,
// where B is the lower-triangular Toeplitz matrix with first column p and Z is
// the down shift.  The two columns are the first unit vector and p itself,
// with p the reversed, conjugated c window: p_i = conj(c_{n-i}).
struct DisplacementGenerator {
    std::vector<cd> e0;
    std::vector<cd> p;

    static DisplacementGenerator from_c_hat(const std::vector<cd>& c_hat) {
        detail::check_c_window(c_hat);
        const std::size_t m = c_hat.size();
        DisplacementGenerator gen;
        gen.e0.assign(m, cd(0.0, 0.0));
        gen.e0[0] = cd(1.0, 0.0);
        gen.p.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            gen.p[i] = std::conj(c_hat[m - 1 - i]);
        return gen;
    }
};

namespace detail {

// Generalized Schur recursion on the generator pair (e_0, p).  Column j of the
// Cholesky-like factor is produced by a unitary rotation that zeroes h at the
// pivot; the surviving generator column is then shifted down one row.  The
// sink receives (j, d_j, rotated_g) where the unit-lower-triangular column is
// rotated_g[i] / sqrt(d_j) for i >= j.  Total work is O(m^2).
template <typename Sink>
void run_schur(const std::vector<cd>& p, Sink&& sink) {
    const std::size_t m = p.size();
    std::vector<cd> g(m, cd(0.0, 0.0));
    g[0] = cd(1.0, 0.0);
    std::vector<cd> h = p;
    std::vector<cd> gr(m, cd(0.0, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        const cd alpha = g[j];
        const cd beta = h[j];
        const double d = std::norm(alpha) + std::norm(beta);
        if (!(d > 0.0) || !std::isfinite(d))
            throw NonPositivePivot("pivot " + std::to_string(j) +
                                   " is not positive and finite");
        const double r = std::sqrt(d);
        const cd ac = std::conj(alpha);
        const cd bc = std::conj(beta);
        for (std::size_t i = j; i < m; ++i) {
            const cd gi = g[i];
            const cd hi = h[i];
            gr[i] = (ac * gi + bc * hi) / r;
            h[i] = (alpha * hi - beta * gi) / r;
        }
        sink(j, d, static_cast<const std::vector<cd>&>(gr));
        for (std::size_t i = m - 1; i > j; --i) g[i] = gr[i - 1];
    }
}

}  // namespace detail

// Unit-lower-triangular L stored by column (column j covers rows j..m-1, first
// entry exactly 1) and real diagonal d with L diag(d) L^dagger = I + B B^dagger.
struct SchurFactors {
    std::vector<std::vector<cd>> columns;
    std::vector<double> d;

    std::size_t size() const { return d.size(); }

    cd l_entry(std::size_t row, std::size_t col) const {
        if (row < col) return cd(0.0, 0.0);
        return columns[col][row - col];
    }
};

inline SchurFactors schur_ldl(const DisplacementGenerator& gen) {
    const std::size_t m = gen.p.size();
    SchurFactors out;
    out.columns.resize(m);
    out.d.resize(m);
    detail::run_schur(gen.p, [&](std::size_t j, double d,
                                 const std::vector<cd>& gr) {
        out.d[j] = d;
        const double r = std::sqrt(d);
        std::vector<cd>& column = out.columns[j];
        column.resize(m - j);
        column[0] = cd(1.0, 0.0);
        for (std::size_t i = j + 1; i < m; ++i) column[i - j] = gr[i] / r;
    });
    return out;
}

// Streams the factorization: columns are consumed by the forward substitution
// L x = p as they are produced, so no triangular factor is materialized.
inline NlftSequence inverse_nlft_fast(const std::vector<cd>& c_hat) {
    const DisplacementGenerator gen = DisplacementGenerator::from_c_hat(c_hat);
    const std::size_t m = gen.p.size();
    std::vector<cd> x = gen.p;
    detail::run_schur(gen.p, [&](std::size_t j, double d,
                                 const std::vector<cd>& gr) {
        const cd s = x[j] / std::sqrt(d);
        for (std::size_t i = j + 1; i < m; ++i) x[i] -= gr[i] * s;
    });
    NlftSequence seq;
    seq.support_start = 0;
    seq.values.resize(m);
    for (std::size_t k = 0; k < m; ++k)
        seq.values[k] = std::conj(x[m - 1 - k]);
    return seq;
}

}  // namespace qspkit
