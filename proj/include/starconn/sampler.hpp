#pragma once

#include <cstdint>
#include <random>

#include "starconn/poly.hpp"
#include "starconn/weyl.hpp"

namespace starconn {

/// Seeded source of small random exact objects for property checks. Uses
/// plain modular reduction of mt19937_64 output so sequences are identical
/// across standard libraries.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    /// Uniform-ish integer in [lo, hi].
    long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    /// Nonzero rational p/q with |p| <= 3, q in {1, 2, 3}, optionally complex.
    Scalar scalar(bool complex = false);
    /// Random polynomial in variables [first, first+count) of degree <= maxdeg.
    SPoly poly(int first, int count, unsigned maxdeg, int nterms, bool complex = false);
    Monomial monomial(int first, int count, unsigned maxdeg);
    /// Random Weyl form with coefficients in x (dim variables), y-degree <=
    /// ydeg, h-power <= hmax and the given form degree (-1 for mixed).
    WeylForm weyl(int dim, unsigned xdeg, unsigned ydeg, unsigned hmax, int form_degree, int nterms);

private:
    std::mt19937_64 rng_;
};

}  // namespace starconn
