#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bt {

using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;

using QVec = std::vector<Q>;

inline Q make_q(std::int64_t num, std::int64_t den = 1) { return Q(num, den); }

std::string to_string(const Q& q);
Q parse_q(const std::string& text);

bool is_integer(const Q& q);
Z floor_q(const Q& q);
Z ceil_q(const Q& q);

// lcm of the denominators of a vector, 1 for the empty vector
std::int64_t common_denominator(const QVec& v);

QVec proj0(const QVec& v);
Q sum(const QVec& v);

/// A value in Q together with +infinity; used for valuations.
class Val {
public:
    Val() : inf_(true) {}
    Val(const Q& q) : inf_(false), q_(q) {}  // NOLINT implicit on purpose
    static Val infinity() { return Val(); }

    bool is_inf() const { return inf_; }
    const Q& value() const;

    Val operator+(const Val& o) const;
    Val operator-(const Q& c) const;
    bool operator==(const Val& o) const;
    std::strong_ordering operator<=>(const Val& o) const;

    std::string str() const;

private:
    bool inf_;
    Q q_;
};

Val vmin(const Val& a, const Val& b);

}  // namespace bt
