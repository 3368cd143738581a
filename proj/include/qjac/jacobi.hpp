#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qjac/qseries.hpp"
#include "qjac/theta.hpp"

namespace qjac {

enum class Holomorphy
{
    strict, // only 4mn >= r^2
    weak,   // n >= 0, any r; for generating test vectors
};

/// Fourier coefficients c(n, r) of an odd-weight Jacobi form, known for all
/// n < n_trunc. Construction validates the holomorphy condition, the odd
/// symmetry c(n,-r) = -c(n,r) and the dependence of c(n,r) on
/// (r mod 2m, 4mn - r^2) only.
class JacobiFormData
{
  public:
    using Key = std::pair<std::int64_t, std::int64_t>; // (n, r)
    using Table = std::map<Key, Rational>;

    /// Throws InvalidInput on bad parameters, InvariantViolation on a table
    /// that cannot come from a Jacobi form.
    static JacobiFormData create(int weight_k, int index_m, int level_N, Rational n_trunc,
                                 Table coeffs, Holomorphy holomorphy = Holomorphy::strict);

    int weight_k() const noexcept { return k_; }
    int index_m() const noexcept { return m_; }
    int level_N() const noexcept { return N_; }
    const Rational &n_trunc() const noexcept { return n_trunc_; }
    Holomorphy holomorphy() const noexcept { return holomorphy_; }
    const Table &coeffs() const noexcept { return coeffs_; }
    Rational coefficient(std::int64_t n, std::int64_t r) const;

  private:
    JacobiFormData() = default;

    int k_ = 1;
    int m_ = 1;
    int N_ = 1;
    Rational n_trunc_;
    Holomorphy holomorphy_ = Holomorphy::strict;
    Table coeffs_;
};

/// h_1, ..., h_{m-1}; the remaining components follow from h_{2m-mu} = -h_mu
/// and h_0 = h_m = 0.
struct ThetaComponents
{
    int index_m = 2;
    std::vector<PuiseuxSeries> components;

    ThetaComponents(int m, std::vector<PuiseuxSeries> h);
    const PuiseuxSeries &h(int mu) const { return components.at(static_cast<std::size_t>(mu - 1)); }
};

ThetaTwoVar to_two_var(const JacobiFormData &phi);
/// Reads a coefficient table off a two-variable series with integral
/// q-exponents; n_trunc is the series' q-truncation.
JacobiFormData jacobi_from_two_var(const ThetaTwoVar &phi, int weight_k, int index_m, int level_N,
                                   Holomorphy holomorphy = Holomorphy::strict);

/// h_mu = sum_n c(n, mu) q^(n - mu^2/4m) for mu = 1..m-1.
ThetaComponents theta_components(const JacobiFormData &phi);

/// sum_mu h_mu (theta_{m,mu} - theta_{m,-mu}) below q_trunc.
ThetaTwoVar from_theta_components(const ThetaComponents &h, const Rational &q_trunc);

/// Normalised Taylor coefficient of z^order: sum_r c(e, r) r^order / order!
/// (every 2 pi i stripped). Throws NotOdd unless phi is odd in zeta.
PuiseuxSeries taylor_coefficient(const ThetaTwoVar &phi, unsigned order);
/// taylor_coefficient(phi, 2 nu - 1).
PuiseuxSeries taylor_chi(const ThetaTwoVar &phi, unsigned nu);

/// 2 (4m)^(nu-1) / (2nu-1)!: taylor_chi of the assembled form equals this
/// constant times chi_star_via_theta.
Rational taylor_normalization(int m, unsigned nu);

/// sum_mu h_mu (q d/dq)^(nu-1) theta*_{m,mu}; nu in 1..m-1. Without q_trunc
/// the theta series are generated far enough that h limits the precision.
PuiseuxSeries chi_star_via_theta(const ThetaComponents &h, unsigned nu,
                                 std::optional<Rational> q_trunc = std::nullopt);

/// Normalised xi_nu = sum_{0<=mu<=nu/2} (-m)^mu (k+nu-mu-2)! / ((k+2nu-2)! mu!)
///                    (q d/dq)^mu chi_{nu-2mu},
/// with the overall constant A_{k,nu} taken as 1. Throws EvenIndex for even nu.
PuiseuxSeries xi_operator(const ThetaTwoVar &phi, int weight_k, int index_m, unsigned nu);

struct KernelEquivalence
{
    bool xi_all_zero = false;  // xi_{2nu-1} = 0 for nu <= j
    bool chi_all_zero = false; // chi_{2nu-1} = 0 for nu <= j
    bool consistent() const noexcept { return xi_all_zero == chi_all_zero; }
};

KernelEquivalence kernel_equivalence(const ThetaTwoVar &phi, int weight_k, int index_m, unsigned j);

// Coefficient file:
//   k=<odd> m=<int> N=<int> trunc=<rational>
//   <n> <r> <c_num>/<c_den>
JacobiFormData read_jacobi_text(const std::string &text, Holomorphy holomorphy = Holomorphy::strict);
std::string to_jacobi_text(const JacobiFormData &phi);

} // namespace qjac
