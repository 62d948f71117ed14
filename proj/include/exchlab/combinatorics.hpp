#pragma once

#include <cstdint>
#include <string>

namespace exchlab {

__extension__ typedef __int128 int128;
__extension__ typedef unsigned __int128 uint128;

/// Largest N for which binomial coefficients are computed in exact integers.
inline constexpr std::uint64_t kExactBinomialLimit = 60;

/// C(n, k) exactly; n <= kExactBinomialLimit. Zero when k > n.
std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k);

/// C(n, k) as a double; exact integers up to the limit, log-gamma beyond.
double binomial(std::uint64_t n, std::uint64_t k);

/// C(K,k) C(N-K,n-k) / C(N,n); zero outside the feasible range of k.
/// Requires 0 <= K <= N and 0 <= n <= N.
double hypergeom_pmf(std::int64_t N, std::int64_t K, std::int64_t n, std::int64_t k);

/// Exact reduced fraction over 128-bit integers. Arithmetic throws
/// std::overflow_error rather than wrapping.
class Rational {
public:
    Rational() = default;
    Rational(int128 num, int128 den = 1);

    int128 num() const noexcept { return num_; }
    int128 den() const noexcept { return den_; }
    double to_double() const noexcept;
    std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational abs(const Rational& a);
    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

private:
    int128 num_ = 0;
    int128 den_ = 1;
};

} // namespace exchlab
