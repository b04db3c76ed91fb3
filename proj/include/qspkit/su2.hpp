#pragma once

#include <cmath>
#include <complex>

#include "qspkit/laurent.hpp"

namespace qspkit {

// One 2x2 matrix value, nominally in SU(2).
struct Su2Sample {
    cd a11, a12, a21, a22;

    static Su2Sample identity() { return {cd(1.0), cd(0.0), cd(0.0), cd(1.0)}; }

    Su2Sample operator*(const Su2Sample& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }

    Su2Sample dagger() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }

    cd det() const { return a11 * a22 - a12 * a21; }

    // max-entry norm of M^dagger M - I
    double unitarity_error() const {
        const Su2Sample g = dagger() * (*this);
        double e = std::abs(g.a11 - cd(1.0));
        e = std::max(e, std::abs(g.a12));
        e = std::max(e, std::abs(g.a21));
        e = std::max(e, std::abs(g.a22 - cd(1.0)));
        return e;
    }
};

inline double max_abs_diff(const Su2Sample& x, const Su2Sample& y) {
    double e = std::abs(x.a11 - y.a11);
    e = std::max(e, std::abs(x.a12 - y.a12));
    e = std::max(e, std::abs(x.a21 - y.a21));
    e = std::max(e, std::abs(x.a22 - y.a22));
    return e;
}

// exp(i t Z) = diag(e^{it}, e^{-it})
inline Su2Sample zrot(double t) {
    return {std::polar(1.0, t), cd(0.0), cd(0.0), std::polar(1.0, -t)};
}

// exp(i t X)
inline Su2Sample xrot(double t) {
    const double c = std::cos(t), s = std::sin(t);
    return {cd(c), cd(0.0, s), cd(0.0, s), cd(c)};
}

// exp(i t Y)
inline Su2Sample yrot(double t) {
    const double c = std::cos(t), s = std::sin(t);
    return {cd(c), cd(s), cd(-s), cd(c)};
}

}  // namespace qspkit
