#include "qjac/sampling.hpp"

#include "qjac/errors.hpp"

namespace qjac {

long SampleRng::uniform(long lo, long hi)
{
    if (hi < lo)
        throw InvalidInput("empty sampling range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
}

bool SampleRng::coin(unsigned percent_true)
{
    return static_cast<unsigned>(engine_() % 100) < percent_true;
}

Rational SampleRng::nonzero_rational(long num_bound, long den_bound)
{
    long p = 0;
    while (p == 0)
        p = uniform(-num_bound, num_bound);
    const Rational r = ratio(p, uniform(1, den_bound));
    return r;
}

PuiseuxSeries random_series(SampleRng &rng, std::int64_t denom, const Rational &offset,
                            const Rational &trunc, unsigned percent)
{
    const std::int64_t lcd = lcm(denom, to_int64(offset.get_den()));
    SeriesBuilder out(lcd, trunc);
    const Rational step = ratio(1, denom);
    for (Rational e = offset; e < trunc; e += step)
        if (rng.coin(percent))
            out.add(e, rng.nonzero_rational());
    return std::move(out).build();
}

ThetaComponents random_theta_components(SampleRng &rng, int m, const Rational &n_trunc,
                                        unsigned percent)
{
    std::vector<PuiseuxSeries> h;
    for (long mu = 1; mu < m; ++mu) {
        const Rational shift = ratio(mu * mu, 4L * m);
        // Discriminants 4mn - mu^2 must be nonnegative, so exponents start at 0.
        const Rational start = Rational(ceil(shift)) - shift;
        auto s = random_series(rng, 1, start, n_trunc - shift, percent);
        h.push_back(s.refined(lcm(s.base_denom(), 4L * m)));
    }
    return ThetaComponents(m, std::move(h));
}

} // namespace qjac
