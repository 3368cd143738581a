#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "qjac/characters.hpp"
#include "qjac/qseries.hpp"

namespace qjac {

/// Index m >= 1 together with a residue mu modulo 2m, stored in [0, 2m).
class ThetaIndex
{
  public:
    ThetaIndex(int m, long mu);

    int m() const noexcept { return m_; }
    int mu() const noexcept { return mu_; }
    ThetaIndex negated() const { return ThetaIndex(m_, -static_cast<long>(mu_)); }

  private:
    int m_;
    int mu_;
};

/// Truncated series in q (rational exponents on the 1/D grid) and zeta
/// (integer exponents).
class ThetaTwoVar
{
  public:
    using Key = std::pair<std::int64_t, std::int64_t>; // (q key = e * D, zeta exponent r)

    ThetaTwoVar() = default;
    ThetaTwoVar(std::int64_t base_denom, Rational q_trunc);

    std::int64_t base_denom() const noexcept { return denom_; }
    const Rational &q_trunc() const noexcept { return trunc_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    const std::map<Key, Rational> &raw_terms() const noexcept { return terms_; }

    /// Adds c q^e zeta^r; dropped when e >= q_trunc.
    void add(const Rational &e, std::int64_t r, const Rational &c);
    Rational coefficient(const Rational &e, std::int64_t r) const;
    /// Smallest q-exponent present, or q_trunc when empty.
    Rational q_ord_bound() const;

    ThetaTwoVar refined(std::int64_t d) const;
    /// phi(tau, -z): zeta^r -> zeta^-r.
    ThetaTwoVar reflected() const;
    ThetaTwoVar scaled(const Rational &c) const;
    /// True when c(e, -r) = -c(e, r) for every term.
    bool is_odd() const;
    /// sum_r c(e, r) r^order for each q-exponent e, as a series in q.
    PuiseuxSeries zeta_moment(unsigned order) const;

    friend bool operator==(const ThetaTwoVar &a, const ThetaTwoVar &b);

  private:
    void prune();
    friend ThetaTwoVar add(const ThetaTwoVar &a, const ThetaTwoVar &b);
    friend ThetaTwoVar mul(const PuiseuxSeries &f, const ThetaTwoVar &t);

    std::int64_t denom_ = 1;
    Rational trunc_;
    std::map<Key, Rational> terms_;
};

ThetaTwoVar add(const ThetaTwoVar &a, const ThetaTwoVar &b);
ThetaTwoVar sub(const ThetaTwoVar &a, const ThetaTwoVar &b);
/// Product with a series in q alone.
ThetaTwoVar mul(const PuiseuxSeries &f, const ThetaTwoVar &t);

/// theta_{m,mu}(tau, z) = sum_{r = mu mod 2m} q^(r^2/4m) zeta^r below q_trunc.
ThetaTwoVar theta_two_var(const ThetaIndex &idx, const Rational &q_trunc);

/// theta*_{m,mu}(tau) = sum_{r = mu mod 2m} r q^(r^2/4m) below q_trunc.
PuiseuxSeries theta_star(const ThetaIndex &idx, const Rational &q_trunc);

/// The x in [0,1) with s(tau+1) = e(x) s(tau); throws NotAnEigenvector when
/// the exponents of s are not all congruent modulo 1 (or s is zero).
UnityExponent t_eigenvalue(const PuiseuxSeries &s);

} // namespace qjac
