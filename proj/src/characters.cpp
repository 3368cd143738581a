#include "qjac/characters.hpp"

#include "qjac/errors.hpp"

namespace qjac {

GammaCharacter::GammaCharacter(long delta_power)
    : power_(static_cast<int>(((delta_power % 12) + 12) % 12))
{
}

namespace {

void require_index(int m)
{
    if (m < 2)
        throw InvalidInput("index m must be at least 2, got " + std::to_string(m));
}

} // namespace

std::vector<UnityExponent> rho_T_diag(int m)
{
    require_index(m);
    std::vector<UnityExponent> out;
    out.reserve(static_cast<std::size_t>(m - 1));
    for (long mu = 1; mu < m; ++mu)
        out.emplace_back(ratio(mu * mu, 4L * m));
    return out;
}

Rational theta_order_sum(int m)
{
    Rational sum = 0;
    for (long mu = 1; mu < m; ++mu)
        sum += ratio(mu * mu, 4L * m);
    return sum;
}

UnityExponent xi_of_T(int m)
{
    require_index(m);
    UnityExponent det;
    for (const auto &u : rho_T_diag(m))
        det = det * u;
    return det.pow(2);
}

GammaCharacter delta_power_of_xi(int m)
{
    require_index(m);
    const long lambda = static_cast<long>(m - 1) * (2L * m - 1);
    GammaCharacter chi(lambda);
    if (!(chi.at_T() == xi_of_T(m)))
        throw InvariantViolation("xi(T) disagrees with delta^" + std::to_string(lambda) +
                                 "(T) at m=" + std::to_string(m));
    return chi;
}

} // namespace qjac
