#include "exchlab/combinatorics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "exchlab/error.hpp"

namespace exchlab {

std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k)
{
    if (n > kExactBinomialLimit)
        throw InvalidArgument("binomial_exact: n = " + std::to_string(n) + " exceeds exact limit");
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    uint128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        c = c * (n - k + i) / i; // exact: c * (n-k+i) is divisible by i
    return static_cast<std::uint64_t>(c);
}

double binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0.0;
    if (n <= kExactBinomialLimit)
        return static_cast<double>(binomial_exact(n, k));
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    return std::exp(std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1));
}

double hypergeom_pmf(std::int64_t N, std::int64_t K, std::int64_t n, std::int64_t k)
{
    if (N < 0 || K < 0 || K > N || n < 0 || n > N)
        throw InvalidArgument("hypergeom_pmf: need 0 <= K <= N and 0 <= n <= N (N=" +
                              std::to_string(N) + ", K=" + std::to_string(K) +
                              ", n=" + std::to_string(n) + ")");
    if (k < 0 || k > K || n - k > N - K || k > n)
        return 0.0;
    const auto uN = static_cast<std::uint64_t>(N), uK = static_cast<std::uint64_t>(K);
    const auto un = static_cast<std::uint64_t>(n), uk = static_cast<std::uint64_t>(k);
    if (uN <= kExactBinomialLimit) {
        const uint128 top =
            static_cast<uint128>(binomial_exact(uK, uk)) * binomial_exact(uN - uK, un - uk);
        return static_cast<double>(top) / static_cast<double>(binomial_exact(uN, un));
    }
    const auto lc = [](double a, double b) {
        return std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1);
    };
    const double dN = static_cast<double>(N), dK = static_cast<double>(K);
    const double dn = static_cast<double>(n), dk = static_cast<double>(k);
    return std::exp(lc(dK, dk) + lc(dN - dK, dn - dk) - lc(dN, dn));
}

namespace {

int128 gcd128(int128 a, int128 b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        const int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int128 checked_mul(int128 a, int128 b)
{
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("Rational: 128-bit overflow");
    return r;
}

int128 checked_add(int128 a, int128 b)
{
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("Rational: 128-bit overflow");
    return r;
}

std::string int128_to_string(int128 v)
{
    if (v == 0)
        return "0";
    const bool neg = v < 0;
    uint128 u = neg ? static_cast<uint128>(-(v + 1)) + 1 : static_cast<uint128>(v);
    std::string s;
    while (u > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    return neg ? "-" + s : s;
}

} // namespace

Rational::Rational(int128 num, int128 den)
{
    if (den == 0)
        throw InvalidArgument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const int128 g = gcd128(num, den);
    num_ = g ? num / g : 0;
    den_ = g ? den / g : 1;
}

double Rational::to_double() const noexcept
{
    return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::to_string() const
{
    return den_ == 1 ? int128_to_string(num_) : int128_to_string(num_) + "/" + int128_to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b)
{
    const int128 g = gcd128(a.den_, b.den_);
    const int128 da = a.den_ / g;
    return Rational(checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, da)),
                    checked_mul(da, b.den_));
}

Rational operator-(const Rational& a, const Rational& b)
{
    return a + Rational(-b.num_, b.den_);
}

Rational operator*(const Rational& a, const Rational& b)
{
    const int128 g1 = gcd128(a.num_, b.den_) ? gcd128(a.num_, b.den_) : 1;
    const int128 g2 = gcd128(b.num_, a.den_) ? gcd128(b.num_, a.den_) : 1;
    return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational abs(const Rational& a)
{
    return a.num_ < 0 ? Rational(-a.num_, a.den_) : a;
}

bool operator<(const Rational& a, const Rational& b)
{
    return (a - b).num_ < 0;
}

} // namespace exchlab
