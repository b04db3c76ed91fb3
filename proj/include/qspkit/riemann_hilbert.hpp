#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qspkit/errors.hpp"
#include "qspkit/nlft.hpp"
#include "qspkit/parallel.hpp"

namespace qspkit {

// Lower-triangular Toeplitz block for slice k of a degree-n c window:
// square of size m = n - k + 1 with first column (c_n, c_{n-1}, ..., c_k).
struct ToeplitzBlock {
    int k = 0;
    std::vector<cd> first_column;

    std::size_t size() const { return first_column.size(); }

    cd entry(std::size_t row, std::size_t col) const {
        if (col > row) return cd(0.0, 0.0);
        return first_column[row - col];
    }
};

inline ToeplitzBlock toeplitz_block(const std::vector<cd>& c_hat, int k) {
    detail::check_c_window(c_hat);
    const int n = static_cast<int>(c_hat.size()) - 1;
    if (k < 0 || k > n)
        throw ValidationError("slice index out of range");
    ToeplitzBlock block;
    block.k = k;
    block.first_column.reserve(static_cast<std::size_t>(n - k) + 1);
    for (int j = n; j >= k; --j)
        block.first_column.push_back(c_hat[static_cast<std::size_t>(j)]);
    return block;
}

// The 2m x 2m slice system
//
//   [ I      -T^T ] [ x_top    ]   [ 0 ]
//   [ conj(T)  I  ] [ x_bottom ] = [ e ]
//
// where e is the reversed first unit vector, so the only nonzero right-hand
// side entry is the last one.
struct SliceSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
};

inline SliceSystem build_system(const std::vector<cd>& c_hat, int k) {
    const ToeplitzBlock block = toeplitz_block(c_hat, k);
    const std::size_t m = block.size();
    const std::size_t dim = 2 * m;
    SliceSystem sys;
    sys.matrix = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
    for (std::size_t row = 0; row < m; ++row) {
        for (std::size_t col = 0; col <= row; ++col) {
            const cd t = block.entry(row, col);
            // upper right: -T transposed; lower left: entrywise conjugate.
            sys.matrix(static_cast<Eigen::Index>(col),
                       static_cast<Eigen::Index>(m + row)) = -t;
            sys.matrix(static_cast<Eigen::Index>(m + row),
                       static_cast<Eigen::Index>(col)) = std::conj(t);
        }
    }
    sys.rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    sys.rhs(static_cast<Eigen::Index>(dim - 1)) = cd(1.0, 0.0);
    return sys;
}

// One solved slice: the recovered coefficient F_k together with the constant
// terms b_{k,0} (first solution entry) and a_{k,0} (last solution entry) that
// produced it.  a0 is real and positive up to roundoff for admissible input.
struct SliceSolution {
    cd f;
    cd b0;
    cd a0;
};

inline SliceSolution solve_slice(const std::vector<cd>& c_hat, int k) {
    const SliceSystem sys = build_system(c_hat, k);
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);
    const Eigen::VectorXcd u_diag = lu.matrixLU().diagonal();
    double u_min = std::numeric_limits<double>::infinity();
    double u_max = 0.0;
    for (Eigen::Index i = 0; i < u_diag.size(); ++i) {
        const double mag = std::abs(u_diag(i));
        u_min = std::min(u_min, mag);
        u_max = std::max(u_max, mag);
    }
    if (!(u_min > 0.0) || u_max / u_min > 1e15)
        throw SingularSystem("slice " + std::to_string(k) +
                             ": pivot ratio exceeds 1e15");
    const Eigen::VectorXcd x = lu.solve(sys.rhs);
    SliceSolution out;
    out.b0 = x(0);
    out.a0 = x(x.size() - 1);
    out.f = out.b0 / out.a0;
    if (!std::isfinite(out.f.real()) || !std::isfinite(out.f.imag()))
        throw SingularSystem("slice " + std::to_string(k) +
                             ": non-finite solution");
    return out;
}

// Direct inversion: each slice is an independent dense solve, so the loop is
// distributed across workers.
inline NlftSequence inverse_nlft_direct(const std::vector<cd>& c_hat) {
    detail::check_c_window(c_hat);
    const std::size_t count = c_hat.size();
    NlftSequence seq;
    seq.support_start = 0;
    seq.values.resize(count);
    parallel_for(count, [&](std::size_t k) {
        seq.values[k] = solve_slice(c_hat, static_cast<int>(k)).f;
    });
    return seq;
}

}  // namespace qspkit
