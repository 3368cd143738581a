#include "qjac/theta.hpp"

#include <algorithm>

#include "qjac/errors.hpp"

namespace qjac {

ThetaIndex::ThetaIndex(int m, long mu) : m_(m)
{
    if (m < 1)
        throw InvalidInput("theta index m must be positive, got " + std::to_string(m));
    const long modulus = 2L * m;
    mu_ = static_cast<int>(((mu % modulus) + modulus) % modulus);
}

ThetaTwoVar::ThetaTwoVar(std::int64_t base_denom, Rational q_trunc)
    : denom_(base_denom), trunc_(std::move(q_trunc))
{
    if (denom_ <= 0)
        throw InvalidInput("base denominator must be positive");
}

void ThetaTwoVar::add(const Rational &e, std::int64_t r, const Rational &c)
{
    if (e >= trunc_ || c == 0)
        return;
    Rational scaled = e * denom_;
    if (scaled.get_den() != 1)
        throw InvalidInput("q-exponent " + to_string(e) + " not on the 1/" +
                           std::to_string(denom_) + " grid");
    auto [it, inserted] = terms_.try_emplace(Key{to_int64(scaled.get_num()), r}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rational ThetaTwoVar::coefficient(const Rational &e, std::int64_t r) const
{
    if (e >= trunc_)
        throw InvalidInput("coefficient requested at q^" + to_string(e) + ", not below truncation");
    Rational scaled = e * denom_;
    if (scaled.get_den() != 1)
        return 0;
    auto it = terms_.find(Key{to_int64(scaled.get_num()), r});
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational ThetaTwoVar::q_ord_bound() const
{
    if (terms_.empty())
        return trunc_;
    const Rational e = ratio(terms_.begin()->first.first, denom_);
    return e;
}

ThetaTwoVar ThetaTwoVar::refined(std::int64_t d) const
{
    if (d == denom_)
        return *this;
    if (d <= 0 || d % denom_ != 0)
        throw InvalidInput("cannot refine base denominator " + std::to_string(denom_) + " to " +
                           std::to_string(d));
    ThetaTwoVar out(d, trunc_);
    const std::int64_t f = d / denom_;
    for (const auto &[k, c] : terms_)
        out.terms_.emplace_hint(out.terms_.end(), Key{k.first * f, k.second}, c);
    return out;
}

ThetaTwoVar ThetaTwoVar::reflected() const
{
    ThetaTwoVar out(denom_, trunc_);
    for (const auto &[k, c] : terms_)
        out.terms_.emplace(Key{k.first, -k.second}, c);
    return out;
}

ThetaTwoVar ThetaTwoVar::scaled(const Rational &c) const
{
    ThetaTwoVar out(denom_, trunc_);
    if (c == 0)
        return out;
    out.terms_ = terms_;
    for (auto &[k, v] : out.terms_)
        v *= c;
    return out;
}

bool ThetaTwoVar::is_odd() const
{
    for (const auto &[k, c] : terms_) {
        auto it = terms_.find(Key{k.first, -k.second});
        if (it == terms_.end() || it->second != -c)
            return false;
    }
    return true;
}

PuiseuxSeries ThetaTwoVar::zeta_moment(unsigned order) const
{
    SeriesBuilder out(denom_, trunc_);
    Integer power;
    for (const auto &[k, c] : terms_) {
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(std::abs(k.second)), order);
        if (k.second < 0 && order % 2 == 1)
            power = -power;
        out.add_key(k.first, c * Rational(power));
    }
    return std::move(out).build();
}

void ThetaTwoVar::prune()
{
    std::erase_if(terms_, [](const auto &kv) { return kv.second == 0; });
}

bool operator==(const ThetaTwoVar &a, const ThetaTwoVar &b)
{
    if (a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size())
        return false;
    const std::int64_t d = lcm(a.denom_, b.denom_);
    return a.refined(d).terms_ == b.refined(d).terms_;
}

ThetaTwoVar add(const ThetaTwoVar &a, const ThetaTwoVar &b)
{
    const std::int64_t d = lcm(a.denom_, b.denom_);
    ThetaTwoVar out(d, std::min(a.trunc_, b.trunc_));
    const auto limit = to_int64(ceil(out.trunc_ * d));
    for (const auto *src : {&a, &b}) {
        const std::int64_t f = d / src->denom_;
        for (const auto &[k, c] : src->terms_) {
            const std::int64_t key = k.first * f;
            if (key >= limit)
                continue;
            auto [it, inserted] = out.terms_.try_emplace(ThetaTwoVar::Key{key, k.second}, c);
            if (!inserted)
                it->second += c;
        }
    }
    out.prune();
    return out;
}

ThetaTwoVar sub(const ThetaTwoVar &a, const ThetaTwoVar &b)
{
    return add(a, b.scaled(-1));
}

ThetaTwoVar mul(const PuiseuxSeries &f, const ThetaTwoVar &t)
{
    const std::int64_t d = lcm(f.base_denom(), t.denom_);
    const auto rf = f.refined(d);
    const auto rt = t.refined(d);
    ThetaTwoVar out(d, std::min<Rational>(f.trunc() + t.q_ord_bound(), t.trunc_ + f.ord_bound()));
    const auto limit = to_int64(ceil(out.trunc_ * d));
    Rational prod;
    for (const auto &[kf, cf] : rf.raw_terms()) {
        for (const auto &[kt, ct] : rt.terms_) {
            const std::int64_t key = kf + kt.first;
            if (key >= limit)
                continue;
            prod = cf * ct;
            auto [it, inserted] = out.terms_.try_emplace(ThetaTwoVar::Key{key, kt.second}, prod);
            if (!inserted)
                it->second += prod;
        }
    }
    out.prune();
    return out;
}

namespace {

// Calls fn(r) for every r = mu (mod 2m) with r^2 / 4m < trunc, in increasing r.
template <typename Fn>
void for_each_class_member(const ThetaIndex &idx, const Rational &trunc, Fn fn)
{
    if (trunc <= 0)
        return;
    const long modulus = 2L * idx.m();
    const Rational bound = trunc * (4L * idx.m()); // r^2 < bound
    Integer root;
    mpz_sqrt(root.get_mpz_t(), ceil(bound).get_mpz_t());
    const long top = to_int64(root) + 1;
    long r = -top;
    r += ((idx.mu() - r) % modulus + modulus) % modulus;
    for (; r <= top; r += modulus)
        if (Rational(r * r) < bound)
            fn(r);
}

} // namespace

ThetaTwoVar theta_two_var(const ThetaIndex &idx, const Rational &q_trunc)
{
    const long four_m = 4L * idx.m();
    ThetaTwoVar out(four_m, q_trunc);
    for_each_class_member(idx, q_trunc, [&](long r) { out.add(ratio(r * r, four_m), r, 1); });
    return out;
}

PuiseuxSeries theta_star(const ThetaIndex &idx, const Rational &q_trunc)
{
    const long four_m = 4L * idx.m();
    SeriesBuilder out(four_m, q_trunc);
    for_each_class_member(idx, q_trunc, [&](long r) { out.add_key(r * r, Rational(r)); });
    return std::move(out).build();
}

UnityExponent t_eigenvalue(const PuiseuxSeries &s)
{
    if (s.is_zero())
        throw NotAnEigenvector("series is zero below q^" + to_string(s.trunc()));
    const auto terms = s.terms();
    const Rational x = frac(terms.front().first);
    for (const auto &[e, c] : terms)
        if (frac(e) != x)
            throw NotAnEigenvector("exponents " + to_string(terms.front().first) + " and " +
                                   to_string(e) + " differ by a non-integer");
    return UnityExponent(x);
}

} // namespace qjac
