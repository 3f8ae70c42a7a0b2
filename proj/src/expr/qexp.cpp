#include "liereduce/expr/qexp.hpp"

#include <limits>
#include <numeric>

#include "liereduce/expr/errors.hpp"

namespace liereduce {

namespace {

std::int64_t narrow(__int128 v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw ExponentOverflow("exponent does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

QExp make(__int128 n, __int128 d)
{
    if (d == 0)
        throw DivisionByZero("zero denominator in exponent");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    return QExp(narrow(n), narrow(d));
}

} // namespace

QExp::QExp(std::int64_t n, std::int64_t d)
{
    if (d == 0)
        throw DivisionByZero("zero denominator in exponent");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = n;
    den_ = d;
}

QExp QExp::from_mpq(const mpq_class& q)
{
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
        throw ExponentOverflow("exponent does not fit in 64 bits");
    return QExp(q.get_num().get_si(), q.get_den().get_si());
}

std::int64_t QExp::floor() const
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0)
        --q;
    return q;
}

mpq_class QExp::to_mpq() const
{
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    q.canonicalize();
    return q;
}

std::string QExp::str() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

QExp QExp::operator-() const { return make(-static_cast<__int128>(num_), den_); }

QExp operator+(const QExp& a, const QExp& b)
{
    if (a.den_ == 1 && b.den_ == 1)
        return make(static_cast<__int128>(a.num_) + b.num_, 1);
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
}

QExp operator-(const QExp& a, const QExp& b) { return a + (-b); }

QExp operator*(const QExp& a, const QExp& b)
{
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

QExp operator/(const QExp& a, const QExp& b)
{
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const QExp& a, const QExp& b)
{
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r)
        return std::strong_ordering::less;
    if (l > r)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::int64_t lcm_den(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

} // namespace liereduce
