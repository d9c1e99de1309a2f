#include "bt/rational.hpp"

#include "bt/errors.hpp"

#include <numeric>

namespace bt {

std::string to_string(const Q& q)
{
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Q parse_q(const std::string& text)
{
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Q(Z(text));
        Z num(text.substr(0, slash));
        Z den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        return Q(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const ParseError*>(&e)) throw;
        throw ParseError("bad rational '" + text + "'");
    }
}

bool is_integer(const Q& q) { return boost::multiprecision::denominator(q) == 1; }

Z floor_q(const Q& q)
{
    Z num = boost::multiprecision::numerator(q);
    Z den = boost::multiprecision::denominator(q);
    Z quot = num / den;
    if (num % den != 0 && num < 0) quot -= 1;
    return quot;
}

Z ceil_q(const Q& q) { return -floor_q(-q); }

std::int64_t common_denominator(const QVec& v)
{
    std::int64_t m = 1;
    for (const auto& q : v) {
        auto den = boost::multiprecision::denominator(q).convert_to<std::int64_t>();
        m = std::lcm(m, den);
    }
    return m;
}

Q sum(const QVec& v)
{
    Q s = 0;
    for (const auto& q : v) s += q;
    return s;
}

QVec proj0(const QVec& v)
{
    if (v.empty()) return v;
    Q mean = sum(v) / Q(static_cast<long>(v.size()));
    QVec out(v);
    for (auto& q : out) q -= mean;
    return out;
}

const Q& Val::value() const
{
    if (inf_) throw InvalidArgument("value() of +infinity");
    return q_;
}

Val Val::operator+(const Val& o) const
{
    if (inf_ || o.inf_) return Val();
    return Val(q_ + o.q_);
}

Val Val::operator-(const Q& c) const
{
    if (inf_) return Val();
    return Val(q_ - c);
}

bool Val::operator==(const Val& o) const
{
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return q_ == o.q_;
}

std::strong_ordering Val::operator<=>(const Val& o) const
{
    if (inf_ && o.inf_) return std::strong_ordering::equal;
    if (inf_) return std::strong_ordering::greater;
    if (o.inf_) return std::strong_ordering::less;
    if (q_ < o.q_) return std::strong_ordering::less;
    if (q_ > o.q_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Val::str() const { return inf_ ? "inf" : to_string(q_); }

Val vmin(const Val& a, const Val& b) { return a <= b ? a : b; }

}  // namespace bt
