#include "qjac/qseries.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "qjac/errors.hpp"

namespace qjac {

namespace {

std::int64_t exponent_key(const Rational &e, std::int64_t denom)
{
    Rational scaled = e * denom;
    if (scaled.get_den() != 1)
        throw InvalidInput("exponent " + to_string(e) + " is not a multiple of 1/" +
                           std::to_string(denom));
    return to_int64(scaled.get_num());
}

std::int64_t limit_key(const Rational &trunc, std::int64_t denom)
{
    return to_int64(ceil(trunc * denom));
}

Rational key_exponent(std::int64_t key, std::int64_t denom)
{
    const Rational e = ratio(key, denom);
    return e;
}

} // namespace

PuiseuxSeries::PuiseuxSeries() = default;

PuiseuxSeries::PuiseuxSeries(std::int64_t base_denom, Rational trunc)
    : denom_(base_denom), trunc_(std::move(trunc))
{
    if (denom_ <= 0)
        throw InvalidInput("base denominator must be positive");
}

PuiseuxSeries PuiseuxSeries::zero(const Rational &trunc, std::int64_t base_denom)
{
    return PuiseuxSeries(base_denom, trunc);
}

PuiseuxSeries PuiseuxSeries::constant(const Rational &c, const Rational &trunc)
{
    SeriesBuilder b(1, trunc);
    b.add_key(0, c);
    return std::move(b).build();
}

PuiseuxSeries PuiseuxSeries::monomial(const Rational &c, const Rational &e, const Rational &trunc)
{
    Rational ec = e;
    ec.canonicalize();
    SeriesBuilder b(to_int64(ec.get_den()), trunc);
    b.add(ec, c);
    return std::move(b).build();
}

PuiseuxSeries PuiseuxSeries::from_terms(std::int64_t base_denom, const Rational &trunc,
                                        const std::vector<Term> &terms)
{
    SeriesBuilder b(base_denom, trunc);
    for (const auto &[e, c] : terms)
        b.add(e, c);
    return std::move(b).build();
}

Rational PuiseuxSeries::coefficient(const Rational &e) const
{
    if (e >= trunc_)
        throw InvalidInput("coefficient requested at " + to_string(e) +
                           ", not below truncation " + to_string(trunc_));
    Rational scaled = e * denom_;
    if (scaled.get_den() != 1)
        return 0;
    auto it = terms_.find(to_int64(scaled.get_num()));
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Rational> PuiseuxSeries::ord() const
{
    if (terms_.empty())
        return std::nullopt;
    return key_exponent(terms_.begin()->first, denom_);
}

Rational PuiseuxSeries::ord_bound() const
{
    return terms_.empty() ? trunc_ : key_exponent(terms_.begin()->first, denom_);
}

Rational PuiseuxSeries::leading_coefficient() const
{
    if (terms_.empty())
        throw InvalidInput("leading coefficient of a series that is zero below its truncation");
    return terms_.begin()->second;
}

std::vector<PuiseuxSeries::Term> PuiseuxSeries::terms() const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &[k, c] : terms_)
        out.emplace_back(key_exponent(k, denom_), c);
    return out;
}

PuiseuxSeries PuiseuxSeries::refined(std::int64_t d) const
{
    if (d == denom_)
        return *this;
    if (d <= 0 || d % denom_ != 0)
        throw InvalidInput("cannot refine base denominator " + std::to_string(denom_) + " to " +
                           std::to_string(d));
    const std::int64_t f = d / denom_;
    PuiseuxSeries out(d, trunc_);
    for (const auto &[k, c] : terms_)
        out.terms_.emplace_hint(out.terms_.end(), k * f, c);
    return out;
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational &t) const
{
    if (t >= trunc_)
        return *this;
    PuiseuxSeries out(denom_, t);
    const auto limit = out.key_limit();
    for (const auto &[k, c] : terms_) {
        if (k >= limit)
            break;
        out.terms_.emplace_hint(out.terms_.end(), k, c);
    }
    return out;
}

PuiseuxSeries PuiseuxSeries::scaled(const Rational &c) const
{
    if (c == 0)
        return PuiseuxSeries(denom_, trunc_);
    PuiseuxSeries out = *this;
    for (auto &[k, v] : out.terms_)
        v *= c;
    return out;
}

PuiseuxSeries PuiseuxSeries::shifted(const Rational &e) const
{
    Rational ec = e;
    ec.canonicalize();
    const std::int64_t d = lcm(denom_, to_int64(ec.get_den()));
    PuiseuxSeries base = refined(d);
    const std::int64_t shift = exponent_key(ec, d);
    PuiseuxSeries out(d, trunc_ + ec);
    for (const auto &[k, c] : base.terms_)
        out.terms_.emplace_hint(out.terms_.end(), k + shift, c);
    return out;
}

std::int64_t PuiseuxSeries::key_limit() const
{
    return limit_key(trunc_, denom_);
}

bool operator==(const PuiseuxSeries &a, const PuiseuxSeries &b)
{
    if (a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size())
        return false;
    const std::int64_t d = lcm(a.denom_, b.denom_);
    const auto ra = a.refined(d);
    const auto rb = b.refined(d);
    return ra.terms_ == rb.terms_;
}

SeriesBuilder::SeriesBuilder(std::int64_t base_denom, Rational trunc)
    : s_(base_denom, std::move(trunc)), limit_(s_.key_limit())
{
}

void SeriesBuilder::add_key(std::int64_t key, const Rational &c)
{
    if (key >= limit_ || c == 0)
        return;
    auto [it, inserted] = s_.terms_.try_emplace(key, c);
    if (!inserted)
        it->second += c;
}

void SeriesBuilder::add(const Rational &exponent, const Rational &c)
{
    add_key(exponent_key(exponent, s_.denom_), c);
}

PuiseuxSeries SeriesBuilder::build() &&
{
    std::erase_if(s_.terms_, [](const auto &kv) { return kv.second == 0; });
    return std::move(s_);
}

namespace {

template <typename Op>
PuiseuxSeries combine(const PuiseuxSeries &a, const PuiseuxSeries &b, Op op)
{
    const std::int64_t d = lcm(a.base_denom(), b.base_denom());
    const auto ra = a.refined(d);
    const auto rb = b.refined(d);
    SeriesBuilder out(d, std::min(a.trunc(), b.trunc()));
    for (const auto &[k, c] : ra.raw_terms())
        out.add_key(k, c);
    for (const auto &[k, c] : rb.raw_terms())
        out.add_key(k, op(c));
    return std::move(out).build();
}

} // namespace

PuiseuxSeries add(const PuiseuxSeries &a, const PuiseuxSeries &b)
{
    return combine(a, b, [](const Rational &c) { return c; });
}

PuiseuxSeries sub(const PuiseuxSeries &a, const PuiseuxSeries &b)
{
    return combine(a, b, [](const Rational &c) { return Rational(-c); });
}

PuiseuxSeries neg(const PuiseuxSeries &a)
{
    return a.scaled(-1);
}

PuiseuxSeries mul(const PuiseuxSeries &a, const PuiseuxSeries &b)
{
    const std::int64_t d = lcm(a.base_denom(), b.base_denom());
    const auto ra = a.refined(d);
    const auto rb = b.refined(d);
    // An empty series is O(q^trunc), so its trunc bounds its order from below.
    const Rational t = std::min<Rational>(a.trunc() + b.ord_bound(), b.trunc() + a.ord_bound());
    SeriesBuilder out(d, t);
    if (ra.is_zero() || rb.is_zero())
        return std::move(out).build();

    const auto limit = out.key_limit();
    const auto &tb = rb.raw_terms();
    const std::int64_t min_b = tb.begin()->first;
    Rational prod;
    for (const auto &[ka, ca] : ra.raw_terms()) {
        if (ka + min_b >= limit)
            break;
        for (const auto &[kb, cb] : tb) {
            const std::int64_t k = ka + kb;
            if (k >= limit)
                break;
            prod = ca * cb;
            out.add_key(k, prod);
        }
    }
    return std::move(out).build();
}

PuiseuxSeries div(const PuiseuxSeries &a, const PuiseuxSeries &b)
{
    if (b.is_zero())
        throw DivisorIndistinguishableFromZero("divisor has no nonzero term below q^" +
                                               to_string(b.trunc()));
    const std::int64_t d = lcm(a.base_denom(), b.base_denom());
    const auto ra = a.refined(d);
    const auto rb = b.refined(d);
    const Rational vb = *b.ord();
    // Error in a at q^Ta reaches the quotient at Ta - vb; error in b at q^Tb
    // reaches it at Tb + ord(a) - 2 vb.
    const Rational t = std::min<Rational>(a.trunc() - vb, b.trunc() + a.ord_bound() - 2 * vb);

    SeriesBuilder out(d, t);
    const auto limit = out.key_limit();
    const auto &tb = rb.raw_terms();
    const std::int64_t kvb = tb.begin()->first;
    const Rational lead = tb.begin()->second;

    std::map<std::int64_t, Rational> rem(ra.raw_terms().begin(), ra.raw_terms().end());
    Rational prod;
    while (!rem.empty()) {
        auto head = rem.begin();
        const std::int64_t kr = head->first - kvb;
        if (kr >= limit)
            break;
        const Rational c = head->second / lead;
        out.add_key(kr, c);
        rem.erase(head);
        for (auto it = std::next(tb.begin()); it != tb.end(); ++it) {
            const std::int64_t k = kr + it->first;
            if (k - kvb >= limit)
                break;
            prod = c * it->second;
            auto [pos, inserted] = rem.try_emplace(k, -prod);
            if (!inserted) {
                pos->second -= prod;
                if (pos->second == 0)
                    rem.erase(pos);
            }
        }
    }
    return std::move(out).build();
}

PuiseuxSeries pow(const PuiseuxSeries &a, unsigned n)
{
    if (n == 0)
        return PuiseuxSeries::constant(1, a.trunc() - a.ord_bound());
    PuiseuxSeries result;
    bool have = false;
    PuiseuxSeries base = a;
    while (n > 0) {
        if (n & 1u) {
            result = have ? mul(result, base) : base;
            have = true;
        }
        n >>= 1u;
        if (n > 0)
            base = mul(base, base);
    }
    return result;
}

PuiseuxSeries theta_op(const PuiseuxSeries &a)
{
    SeriesBuilder out(a.base_denom(), a.trunc());
    for (const auto &[k, c] : a.raw_terms())
        out.add_key(k, c * ratio(k, a.base_denom()));
    return std::move(out).build();
}

std::optional<Rational> ord_infty(const PuiseuxSeries &a)
{
    return a.ord();
}

std::optional<Rational> first_difference(const PuiseuxSeries &a, const PuiseuxSeries &b)
{
    const Rational t = std::min(a.trunc(), b.trunc());
    const auto diff = sub(a.truncated(t), b.truncated(t));
    return diff.ord();
}

bool agree(const PuiseuxSeries &a, const PuiseuxSeries &b)
{
    return !first_difference(a, b).has_value();
}

void write_text(std::ostream &os, const PuiseuxSeries &s)
{
    os << "D=" << s.base_denom() << " trunc=" << to_string(s.trunc()) << '\n';
    for (const auto &[e, c] : s.terms())
        os << to_string(c) << ' ' << to_string(e) << '\n';
}

std::string to_text(const PuiseuxSeries &s)
{
    std::ostringstream os;
    write_text(os, s);
    return os.str();
}

PuiseuxSeries from_text(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    std::optional<SeriesBuilder> builder;
    std::int64_t denom = 0;
    Rational trunc;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        std::string first, second, extra;
        ls >> first >> second;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing text");
        if (!builder) {
            if (first.rfind("D=", 0) != 0 || second.rfind("trunc=", 0) != 0)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected header 'D=<int> trunc=<rational>'");
            const Rational d = parse_rational(first.substr(2));
            if (d.get_den() != 1 || d <= 0)
                throw ParseError("base denominator must be a positive integer");
            denom = to_int64(d.get_num());
            trunc = parse_rational(second.substr(6));
            builder.emplace(denom, trunc);
            continue;
        }
        const Rational c = parse_rational(first);
        const Rational e = parse_rational(second);
        if (Rational(e * denom).get_den() != 1)
            throw ParseError("line " + std::to_string(lineno) + ": exponent " + to_string(e) +
                             " not on the 1/" + std::to_string(denom) + " grid");
        if (e >= trunc)
            throw ParseError("line " + std::to_string(lineno) + ": exponent " + to_string(e) +
                             " not below truncation");
        builder->add(e, c);
    }
    if (!builder)
        throw ParseError("missing series header");
    return std::move(*builder).build();
}

std::string to_display(const PuiseuxSeries &s, std::size_t max_terms)
{
    std::ostringstream os;
    std::size_t shown = 0;
    for (const auto &[e, c] : s.terms()) {
        if (shown == max_terms) {
            os << " + ...";
            break;
        }
        if (shown > 0)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        const Rational mag = abs(c);
        const bool unit = mag == 1;
        if (!unit || e == 0)
            os << mag.get_str();
        if (e != 0)
            os << (unit ? "" : "*") << "q^(" << e.get_str() << ")";
        ++shown;
    }
    if (shown == 0)
        os << "0";
    os << " + O(q^(" << s.trunc().get_str() << "))";
    return os.str();
}

} // namespace qjac
