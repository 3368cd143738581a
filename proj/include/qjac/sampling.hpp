#pragma once

#include <cstdint>
#include <random>

#include "qjac/jacobi.hpp"
#include "qjac/qseries.hpp"

namespace qjac {

/// Deterministic across platforms: only the raw engine output is used, never
/// the implementation-defined standard distributions.
class SampleRng
{
  public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    long uniform(long lo, long hi);
    bool coin(unsigned percent_true);
    /// Small nonzero rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
    Rational nonzero_rational(long num_bound = 9, long den_bound = 5);

  private:
    std::mt19937_64 engine_;
};

/// Sparse series on the grid offset + Z_{>=0}/denom, below trunc, each slot
/// filled with probability percent.
PuiseuxSeries random_series(SampleRng &rng, std::int64_t denom, const Rational &offset,
                            const Rational &trunc, unsigned percent);

/// Components h_mu supported on the nonnegative exponents n - mu^2/4m,
/// certified below n_trunc - mu^2/4m; they assemble to a holomorphic odd form.
ThetaComponents random_theta_components(SampleRng &rng, int m, const Rational &n_trunc,
                                        unsigned percent = 35);

} // namespace qjac
