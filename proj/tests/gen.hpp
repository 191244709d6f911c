#pragma once

#include "spin7/sampling.hpp"

#include <algorithm>
#include <random>

namespace spin7::testgen {

using spin7::gaussian_rational;
using spin7::random_combination;
using spin7::random_primitive_11;
using spin7::small_rational;

// Random exact form of degree k with about `terms` nonzero coefficients.
inline Form random_form(std::mt19937_64& rng, int k, int terms = 6, bool real = true) {
    const auto& b = basis(k);
    std::uniform_int_distribution<size_t> pick(0, b.size() - 1);
    Form f(k);
    for (int t = 0; t < terms; ++t) {
        f.add_term(b[pick(rng)], real ? Scalar(small_rational(rng)) : gaussian_rational(rng));
    }
    return f;
}

inline Form standard_omega() {
    Form w(2);
    for (int j = 1; j <= 4; ++j) w += Form::dx({2 * j - 1, 2 * j});
    return w;
}

inline Form standard_theta() { return dz_word({1, 2, 3, 4}); }

// Rational orthogonal matrix from the Cayley transform of a random skew matrix.
inline Mat random_orthogonal(std::mt19937_64& rng) {
    Mat S(kDim, kDim);
    std::uniform_int_distribution<int> n(-2, 2);
    for (int i = 0; i < kDim; ++i) {
        for (int j = i + 1; j < kDim; ++j) {
            Scalar v = mpq_class(n(rng), 2);
            S(i, j) = v;
            S(j, i) = -v;
        }
    }
    const Mat I = Mat::identity(kDim);
    return (I - S) * inverse(I + S);
}

// Orthogonal complex structure conjugate to the standard one.
inline Mat random_complex_structure(std::mt19937_64& rng) {
    Mat Q = random_orthogonal(rng);
    return Q * standard_J() * Q.transpose();
}

}  // namespace spin7::testgen

namespace spin7::testgen {

// Random exact real primitive (1,1)-form for the standard structure.
}  // namespace spin7::testgen
