#include "qjac/jacobi.hpp"

#include <algorithm>
#include <sstream>

#include "qjac/errors.hpp"

namespace qjac {

namespace {

std::string at(std::int64_t n, std::int64_t r)
{
    return "(n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")";
}

// Visits every r' = r (mod 2m) whose partner n' = (disc + r'^2) / 4m lies in
// the known window 0 <= n' < n_trunc.
template <typename Fn>
void for_each_orbit_member(int m, std::int64_t r, std::int64_t disc, const Rational &n_trunc, Fn fn)
{
    const std::int64_t four_m = 4L * m;
    const std::int64_t modulus = 2L * m;
    // r'^2 < 4m n_trunc - disc bounds the window.
    const Rational bound = n_trunc * four_m - disc;
    if (bound <= 0)
        return;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), ceil(bound).get_mpz_t());
    const std::int64_t top = to_int64(root) + 1;
    std::int64_t rp = -top;
    rp += (((r - rp) % modulus) + modulus) % modulus;
    for (; rp <= top; rp += modulus) {
        const std::int64_t num = disc + rp * rp;
        if (num < 0 || Rational(rp * rp) >= bound)
            continue;
        fn(num / four_m, rp);
    }
}

} // namespace

JacobiFormData JacobiFormData::create(int weight_k, int index_m, int level_N, Rational n_trunc,
                                      Table coeffs, Holomorphy holomorphy)
{
    if (weight_k <= 0 || weight_k % 2 == 0)
        throw InvalidInput("weight must be an odd positive integer, got " + std::to_string(weight_k));
    if (index_m < 1)
        throw InvalidInput("index must be positive, got " + std::to_string(index_m));
    if (level_N < 1)
        throw InvalidInput("level must be positive, got " + std::to_string(level_N));

    JacobiFormData phi;
    phi.k_ = weight_k;
    phi.m_ = index_m;
    phi.N_ = level_N;
    phi.n_trunc_ = std::move(n_trunc);
    phi.holomorphy_ = holomorphy;
    std::erase_if(coeffs, [](const auto &kv) { return kv.second == 0; });
    phi.coeffs_ = std::move(coeffs);

    const std::int64_t four_m = 4L * index_m;
    for (const auto &[key, c] : phi.coeffs_) {
        const auto [n, r] = key;
        if (Rational(n) >= phi.n_trunc_)
            throw InvariantViolation("coefficient at " + at(n, r) + " lies beyond truncation " +
                                     to_string(phi.n_trunc_));
        if (n < 0)
            throw InvariantViolation("negative n at " + at(n, r));
        if (holomorphy == Holomorphy::strict && four_m * n < r * r)
            throw InvariantViolation("4mn < r^2 at " + at(n, r) + " for a holomorphic form");
        if (phi.coefficient(n, -r) != -c)
            throw InvariantViolation("c(n,-r) != -c(n,r) at " + at(n, r));
        const std::int64_t disc = four_m * n - r * r;
        for_each_orbit_member(index_m, r, disc, phi.n_trunc_, [&](std::int64_t np, std::int64_t rp) {
            if (phi.coefficient(np, rp) != c)
                throw InvariantViolation("c" + at(np, rp) + " != c" + at(n, r) +
                                         " although both share r mod 2m and 4mn - r^2");
        });
    }
    return phi;
}

Rational JacobiFormData::coefficient(std::int64_t n, std::int64_t r) const
{
    auto it = coeffs_.find(Key{n, r});
    return it == coeffs_.end() ? Rational(0) : it->second;
}

ThetaComponents::ThetaComponents(int m, std::vector<PuiseuxSeries> h)
    : index_m(m), components(std::move(h))
{
    if (m < 2)
        throw InvalidInput("theta components need index m >= 2");
    if (components.size() != static_cast<std::size_t>(m - 1))
        throw InvalidInput("expected " + std::to_string(m - 1) + " theta components, got " +
                           std::to_string(components.size()));
}

ThetaTwoVar to_two_var(const JacobiFormData &phi)
{
    ThetaTwoVar out(1, phi.n_trunc());
    for (const auto &[key, c] : phi.coeffs())
        out.add(Rational(key.first), key.second, c);
    return out;
}

JacobiFormData jacobi_from_two_var(const ThetaTwoVar &phi, int weight_k, int index_m, int level_N,
                                   Holomorphy holomorphy)
{
    JacobiFormData::Table table;
    const std::int64_t d = phi.base_denom();
    for (const auto &[key, c] : phi.raw_terms()) {
        if (key.first % d != 0)
            throw InvalidInput("q-exponent " + to_string(ratio(key.first, d)) +
                               " is not an integer");
        table.emplace(JacobiFormData::Key{key.first / d, key.second}, c);
    }
    return JacobiFormData::create(weight_k, index_m, level_N, phi.q_trunc(), std::move(table),
                                  holomorphy);
}

ThetaComponents theta_components(const JacobiFormData &phi)
{
    const int m = phi.index_m();
    if (m < 2)
        throw InvalidInput("index 1 has no odd theta components");
    const std::int64_t four_m = 4L * m;
    std::vector<SeriesBuilder> builders;
    for (long mu = 1; mu < m; ++mu)
        builders.emplace_back(four_m, phi.n_trunc() - ratio(mu * mu, four_m));
    for (const auto &[key, c] : phi.coeffs()) {
        const auto [n, r] = key;
        if (r >= 1 && r < m)
            builders[static_cast<std::size_t>(r - 1)].add_key(four_m * n - r * r, c);
    }
    std::vector<PuiseuxSeries> h;
    for (auto &b : builders)
        h.push_back(std::move(b).build());
    return ThetaComponents(m, std::move(h));
}

ThetaTwoVar from_theta_components(const ThetaComponents &h, const Rational &q_trunc)
{
    const int m = h.index_m;
    ThetaTwoVar out(4L * m, q_trunc);
    for (int mu = 1; mu < m; ++mu) {
        const ThetaIndex idx(m, mu);
        const auto odd_theta = sub(theta_two_var(idx, q_trunc), theta_two_var(idx.negated(), q_trunc));
        out = add(out, mul(h.h(mu), odd_theta));
    }
    return out;
}

PuiseuxSeries taylor_coefficient(const ThetaTwoVar &phi, unsigned order)
{
    // For finitely many r per exponent, the even part vanishes iff all its
    // even moments vanish, so termwise oddness is the moment condition.
    if (!phi.is_odd())
        throw NotOdd("two-variable series is not odd under zeta -> 1/zeta");
    return phi.zeta_moment(order).scaled(1 / factorial(order));
}

PuiseuxSeries taylor_chi(const ThetaTwoVar &phi, unsigned nu)
{
    if (nu == 0)
        throw InvalidInput("taylor_chi needs nu >= 1");
    return taylor_coefficient(phi, 2 * nu - 1);
}

Rational taylor_normalization(int m, unsigned nu)
{
    if (nu == 0)
        throw InvalidInput("normalisation needs nu >= 1");
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 4UL * static_cast<unsigned long>(m), nu - 1);
    return Rational(2 * p) / factorial(2 * nu - 1);
}

PuiseuxSeries chi_star_via_theta(const ThetaComponents &h, unsigned nu, std::optional<Rational> q_trunc)
{
    const int m = h.index_m;
    if (nu < 1 || nu > static_cast<unsigned>(m - 1))
        throw InvalidInput("chi_star_via_theta needs 1 <= nu <= m-1");
    std::optional<PuiseuxSeries> sum;
    for (int mu = 1; mu < m; ++mu) {
        const auto &hm = h.h(mu);
        const Rational lead = ratio(mu * mu, 4L * m);
        // The product is then certified up to trunc(h_mu) + mu^2/4m.
        const Rational t = q_trunc ? *q_trunc : hm.trunc() + lead - hm.ord_bound();
        PuiseuxSeries col = theta_star(ThetaIndex(m, mu), t);
        for (unsigned i = 1; i < nu; ++i)
            col = theta_op(col);
        auto term = mul(hm, col);
        sum = sum ? add(*sum, term) : term;
    }
    return *sum;
}

PuiseuxSeries xi_operator(const ThetaTwoVar &phi, int weight_k, int index_m, unsigned nu)
{
    if (nu % 2 == 0)
        throw EvenIndex("xi_nu is only defined here for odd nu, got " + std::to_string(nu));
    if (weight_k <= 0 || weight_k % 2 == 0)
        throw InvalidInput("weight must be an odd positive integer");
    const Rational denom = factorial(static_cast<unsigned>(weight_k) + 2 * nu - 2);
    std::optional<PuiseuxSeries> sum;
    Rational minus_m_pow = 1;
    for (unsigned mu = 0; 2 * mu <= nu; ++mu) {
        const Rational coeff = minus_m_pow * factorial(static_cast<unsigned>(weight_k) + nu - mu - 2) /
                               (denom * factorial(mu));
        PuiseuxSeries chi = taylor_coefficient(phi, nu - 2 * mu);
        for (unsigned i = 0; i < mu; ++i)
            chi = theta_op(chi);
        auto term = chi.scaled(coeff);
        sum = sum ? add(*sum, term) : term;
        minus_m_pow *= -index_m;
    }
    return *sum;
}

KernelEquivalence kernel_equivalence(const ThetaTwoVar &phi, int weight_k, int index_m, unsigned j)
{
    KernelEquivalence out{true, true};
    for (unsigned nu = 1; nu <= j; ++nu) {
        out.xi_all_zero = out.xi_all_zero && xi_operator(phi, weight_k, index_m, 2 * nu - 1).is_zero();
        out.chi_all_zero = out.chi_all_zero && taylor_chi(phi, nu).is_zero();
    }
    return out;
}

JacobiFormData read_jacobi_text(const std::string &text, Holomorphy holomorphy)
{
    std::istringstream in(text);
    std::string line;
    std::optional<int> k, m, N;
    std::optional<Rational> trunc;
    JacobiFormData::Table table;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string field;
            while (ls >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos)
                    throw ParseError("line " + std::to_string(lineno) + ": malformed header field '" +
                                     field + "'");
                const auto name = field.substr(0, eq);
                const auto value = field.substr(eq + 1);
                auto as_int = [&](const std::string &v) {
                    const Rational x = parse_rational(v);
                    if (x.get_den() != 1)
                        throw ParseError("header field " + name + " must be an integer");
                    return static_cast<int>(to_int64(x.get_num()));
                };
                if (name == "k")
                    k = as_int(value);
                else if (name == "m")
                    m = as_int(value);
                else if (name == "N")
                    N = as_int(value);
                else if (name == "trunc")
                    trunc = parse_rational(value);
                else
                    throw ParseError("unknown header field '" + name + "'");
            }
            if (!k || !m || !N || !trunc)
                throw ParseError("header must define k, m, N and trunc");
            have_header = true;
            continue;
        }
        std::int64_t n = 0, r = 0;
        std::string c, extra;
        if (!(ls >> n >> r >> c) || (ls >> extra))
            throw ParseError("line " + std::to_string(lineno) + ": expected '<n> <r> <c>'");
        auto [it, inserted] = table.emplace(JacobiFormData::Key{n, r}, parse_rational(c));
        if (!inserted)
            throw ParseError("line " + std::to_string(lineno) + ": duplicate entry " + at(n, r));
    }
    if (!have_header)
        throw ParseError("missing Jacobi coefficient header");
    return JacobiFormData::create(*k, *m, *N, *trunc, std::move(table), holomorphy);
}

std::string to_jacobi_text(const JacobiFormData &phi)
{
    std::ostringstream os;
    os << "k=" << phi.weight_k() << " m=" << phi.index_m() << " N=" << phi.level_N()
       << " trunc=" << to_string(phi.n_trunc()) << '\n';
    for (const auto &[key, c] : phi.coeffs())
        os << key.first << ' ' << key.second << ' ' << to_string(c) << '\n';
    return os.str();
}

} // namespace qjac
