#include "qjac/rational.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

#include "qjac/errors.hpp"

namespace qjac {

std::string to_string(const Rational &x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto s = trim(text);
    auto slash = s.find('/');
    auto num = slash == std::string_view::npos ? s : s.substr(0, slash);
    auto den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-')
        throw ParseError("not a rational: '" + std::string(text) + "'");
    Integer d = parse_integer(den);
    if (d == 0)
        throw ParseError("zero denominator: '" + std::string(text) + "'");
    const Rational r = ratio(parse_integer(num), d);
    return r;
}

Integer floor(const Rational &x)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational &x)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational frac(const Rational &x)
{
    return x - Rational(floor(x));
}

std::int64_t lcm(std::int64_t a, std::int64_t b)
{
    return std::lcm(a, b);
}

std::int64_t to_int64(const Integer &z)
{
    if (!z.fits_slong_p())
        throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

Rational factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational ratio(const Integer &p, const Integer &q)
{
    if (q == 0)
        throw InvalidInput("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

} // namespace qjac
