#ifndef DOWLING_TEST_UTIL_HPP
#define DOWLING_TEST_UTIL_HPP

#include <random>

#include "dowling/series.hpp"

namespace testutil
{

// Random sparse series with small integer-over-small-integer coefficients.
inline dowling::graded_series random_series(const dowling::group_ptr &G, int N, std::mt19937 &rng, int terms,
                                            bool constant_free, bool with_t = false)
{
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3), cls(0, G->num_classes() - 1), ipick(1, 3),
        tpick(-1, 2);
    dowling::graded_series s(G, N);
    if (!constant_free) {
        s.add_term(dowling::monomial{}, 0, 1);
    }
    for (int k = 0; k < terms; ++k) {
        std::vector<dowling::monomial_factor> fs;
        const int nf = 1 + static_cast<int>(rng() % 2);
        for (int f = 0; f < nf; ++f) {
            fs.push_back({{ipick(rng), cls(rng)}, 1 + static_cast<int>(rng() % 2)});
        }
        auto m = dowling::monomial::from_factors(fs);
        s.add_term(m, with_t ? tpick(rng) : 0, dowling::make_rational(num(rng), den(rng)));
    }
    return s;
}

} // namespace testutil

#endif
