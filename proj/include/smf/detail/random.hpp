#pragma once

// Internal seeded sampling helpers.  Raw mt19937_64 draws only: the standard
// pins that engine's output, so seeded results are identical everywhere
// (uniform_int_distribution would not be).

#include <cstdint>
#include <random>

#include "smf/grassmann.hpp"

namespace smf::detail {

inline std::int64_t draw_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(rng() % span);
}

inline Rational draw_rational(std::mt19937_64& rng, bool nonzero = false) {
    std::int64_t num = draw_int(rng, -6, 6);
    if (nonzero && num == 0) num = 1 + draw_int(rng, 0, 5);
    Rational q(num, draw_int(rng, 1, 4));
    q.canonicalize();
    return q;
}

inline GrassmannElement draw_odd_element(std::mt19937_64& rng, int num_generators) {
    GrassmannElement value(num_generators);
    if (num_generators < 1) return value;
    const int terms = static_cast<int>(draw_int(rng, 1, 2));
    for (int t = 0; t < terms; ++t) {
        const int i = static_cast<int>(draw_int(rng, 0, num_generators - 1));
        value = value +
                GrassmannElement::monomial(draw_rational(rng), {i}, num_generators);
    }
    return value;
}

inline GrassmannElement draw_even_soul(std::mt19937_64& rng, int num_generators) {
    GrassmannElement value(num_generators);
    if (num_generators < 2) return value;
    const int terms = static_cast<int>(draw_int(rng, 0, 2));
    for (int t = 0; t < terms; ++t) {
        int i = static_cast<int>(draw_int(rng, 0, num_generators - 1));
        int j = static_cast<int>(draw_int(rng, 0, num_generators - 1));
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        value = value + GrassmannElement::monomial(draw_rational(rng), {i, j},
                                                   num_generators);
    }
    return value;
}

}  // namespace smf::detail
