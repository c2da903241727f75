#pragma once

#include "wittkit/series.hpp"

#include <cstdint>
#include <random>

// Seeded generators shared by the verify harness and the test suites.
namespace wittkit::gen {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// p/q with 0 < |p| <= num_bound, 1 <= q <= den_bound.
inline Scalar nonzero_rational(Rng& rng, long num_bound = 5, long den_bound = 3) {
    long p = uniform(rng, 1, num_bound);
    if (uniform(rng, 0, 1)) p = -p;
    return make_scalar(p, uniform(rng, 1, den_bound));
}

inline Scalar rational(Rng& rng, long num_bound = 5, long den_bound = 3) {
    return make_scalar(uniform(rng, -num_bound, num_bound), uniform(rng, 1, den_bound));
}

// Laurent polynomial with support in [lo, hi]; never zero.
inline LaurentSeries exact_laurent(Rng& rng, Exponent lo, Exponent hi, int max_terms = 4) {
    std::vector<Scalar> cs(static_cast<std::size_t>(hi - lo + 1));
    int terms = static_cast<int>(uniform(rng, 1, max_terms));
    for (int t = 0; t < terms; ++t) cs[static_cast<std::size_t>(uniform(rng, 0, hi - lo))] = nonzero_rational(rng);
    auto f = LaurentSeries::exact(lo, std::move(cs));
    if (f.is_zero()) f = LaurentSeries::monomial(nonzero_rational(rng), uniform(rng, lo, hi));
    return f;
}

// Truncated series with the given Weierstrass degree and precision, dense coefficients.
inline LaurentSeries truncated_series(Rng& rng, Exponent lead, Exponent prec) {
    std::vector<Scalar> cs(static_cast<std::size_t>(prec - lead));
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = i == 0 ? nonzero_rational(rng) : rational(rng);
    return LaurentSeries::truncated(lead, std::move(cs), prec);
}

}  // namespace wittkit::gen
