#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace liereduce {

// Exact rational with machine-word parts. Used for monomial exponents.
class QExp {
public:
    constexpr QExp() = default;
    QExp(std::int64_t n, std::int64_t d = 1);

    static QExp from_mpq(const mpq_class& q);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    std::int64_t floor() const;
    QExp frac() const { return *this - QExp(floor()); }
    mpq_class to_mpq() const;
    std::string str() const;

    QExp operator-() const;
    friend QExp operator+(const QExp& a, const QExp& b);
    friend QExp operator-(const QExp& a, const QExp& b);
    friend QExp operator*(const QExp& a, const QExp& b);
    friend QExp operator/(const QExp& a, const QExp& b);
    QExp& operator+=(const QExp& o) { return *this = *this + o; }
    QExp& operator-=(const QExp& o) { return *this = *this - o; }

    friend bool operator==(const QExp& a, const QExp& b) = default;
    friend std::strong_ordering operator<=>(const QExp& a, const QExp& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::int64_t lcm_den(std::int64_t a, std::int64_t b);

} // namespace liereduce
