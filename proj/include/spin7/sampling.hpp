#pragma once

#include "spin7/form.hpp"

#include <random>

namespace spin7 {

// Seeded generators shared by the corpus, the CLI and the tests.

inline mpq_class small_rational(std::mt19937_64& rng, int num = 5, int den = 4) {
    std::uniform_int_distribution<int> n(-num, num), q(1, den);
    return mpq_class(n(rng), q(rng));
}

inline Scalar gaussian_rational(std::mt19937_64& rng) {
    return Scalar::gaussian(small_rational(rng), small_rational(rng));
}

// Real primitive (1,1)-form for the standard complex coordinates.
inline Form random_primitive_11(std::mt19937_64& rng, const Form& omega) {
    Form a(2);
    std::uniform_int_distribution<int> pick(1, 4);
    for (int t = 0; t < 3; ++t) {
        Form w = dz_word({pick(rng), -pick(rng)}) * gaussian_rational(rng);
        a += w + w.conj();
    }
    return Lefschetz(omega).primitive_2(a);
}

inline Form random_combination(std::mt19937_64& rng, const std::vector<Form>& gens, int num = 3) {
    Form a(gens.front().degree());
    for (const auto& g : gens) a += g * Scalar(small_rational(rng, num, 2));
    return a;
}

}  // namespace spin7
