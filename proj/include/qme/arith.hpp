#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer arithmetic over Q and its completions: factorization,
 *        Kronecker symbols, and Hilbert symbols.
 *
 * Everything here is deterministic and exact.  Primality uses a fixed
 * Miller-Rabin witness set that is correct for all inputs below 2^64, and
 * factorization falls back to Pollard rho (Brent variant) with a fixed
 * parameter schedule, so repeated runs always produce identical results.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qme/padic.hpp"

namespace qme::arith {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Deterministic Miller-Rabin, correct for all n < 2^64.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline bool is_prime(std::int64_t n) { return n >= 2 && is_prime(static_cast<std::uint64_t>(n)); }

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
    // Brent's cycle detection; the increment c walks a fixed schedule so the
    // whole factorization is deterministic.
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = mulmod(y, y, n);
            y = (y + c) % n;
            ++lam;
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// A complete factorization of a positive integer into sorted (prime, exponent) pairs.
struct PrimeFactorization {
    std::int64_t value = 1;
    std::vector<std::pair<std::int64_t, int>> factors;  // primes ascending

    bool divisible_by(std::int64_t p) const {
        for (const auto& [q, e] : factors)
            if (q == p) return true;
        return false;
    }
    bool is_squarefree() const {
        for (const auto& [q, e] : factors)
            if (e > 1) return false;
        return true;
    }
};

inline PrimeFactorization factorize(std::int64_t n) {
    if (n <= 0) throw std::domain_error("factorize: input must be a positive integer");
    PrimeFactorization result;
    result.value = n;
    std::uint64_t m = static_cast<std::uint64_t>(n);

    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    // 2,3,5-wheel trial division up to 10^6, then Pollard rho on what remains.
    static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    int w = 0;
    for (std::uint64_t p = 7; p <= 1000000 && p * p <= m; p += wheel[w], w = (w + 1) & 7) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    if (m > 1) detail::factor_into(m, primes);
    std::sort(primes.begin(), primes.end());
    for (std::uint64_t p : primes) {
        if (!result.factors.empty() && result.factors.back().first == static_cast<std::int64_t>(p))
            ++result.factors.back().second;
        else
            result.factors.emplace_back(static_cast<std::int64_t>(p), 1);
    }
    return result;
}

inline bool is_squarefree(std::int64_t n) {
    if (n == 0) return false;
    return factorize(n < 0 ? -n : n).is_squarefree();
}

/// Kronecker symbol (a|n), the full extension of the Jacobi symbol.
inline int kronecker(std::int64_t a, std::int64_t n) {
    if (a == 0 && n >= -1 && n <= 1)
        throw std::domain_error("kronecker: (0|n) with |n| <= 1 is not defined here");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos > 0) {
        if ((a & 1) == 0) return 0;
        std::int64_t am = a & 7;
        if ((twos & 1) && (am == 3 || am == 5)) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::int64_t nm = n & 7;
            if (nm == 3 || nm == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

/// A place of Q: the real place or a finite prime.
class RationalPlace {
public:
    static RationalPlace infinite() { return RationalPlace(false, 0); }
    static RationalPlace finite(std::int64_t p) {
        if (!is_prime(p)) throw std::domain_error("RationalPlace: finite place requires a prime");
        return RationalPlace(true, p);
    }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }
    std::int64_t prime() const {
        if (!finite_) throw std::domain_error("RationalPlace: the infinite place has no prime");
        return prime_;
    }

    // Canonical order: the infinite place first, then finite primes ascending.
    friend bool operator==(const RationalPlace&, const RationalPlace&) = default;
    friend auto operator<=>(const RationalPlace& x, const RationalPlace& y) {
        return std::pair(x.finite_, x.prime_) <=> std::pair(y.finite_, y.prime_);
    }

private:
    RationalPlace(bool finite, std::int64_t p) : finite_(finite), prime_(p) {}
    bool finite_;
    std::int64_t prime_;
};

inline int valuation(std::int64_t n, std::int64_t p) {
    if (n == 0) throw std::domain_error("valuation: undefined at 0");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

namespace detail {
/// Runtime toggle for the p = 2 shadow check; defaults to on in debug builds.
inline bool& hilbert_shadow_check() {
#ifdef NDEBUG
    static bool enabled = false;
#else
    static bool enabled = true;
#endif
    return enabled;
}
}  // namespace detail

/**
 * Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution
 * over the completion of Q at v.
 *
 * At the real place the symbol is -1 exactly when a and b are both negative.
 * At an odd prime the valuation/unit decomposition formula applies; at p = 2
 * the epsilon/omega formula on units mod 8 applies.  The p = 2 branch is the
 * classic bug farm, so it is shadow-checked against the exhaustive p-adic
 * search when the shadow toggle is on.
 */
inline int hilbert_symbol(std::int64_t a, std::int64_t b, const RationalPlace& v) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: arguments must be nonzero");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;

    const std::int64_t p = v.prime();
    int alpha = 0;
    std::int64_t u = a;
    while (u % p == 0) {
        u /= p;
        ++alpha;
    }
    int beta = 0;
    std::int64_t w = b;
    while (w % p == 0) {
        w /= p;
        ++beta;
    }

    int sign = 1;
    if (p == 2) {
        auto eps = [](std::int64_t t) { return (t & 3) == 3 ? 1 : 0; };    // (t-1)/2 mod 2
        auto omega = [](std::int64_t t) {                                  // (t^2-1)/8 mod 2
            std::int64_t r = t & 7;
            return (r == 3 || r == 5) ? 1 : 0;
        };
        int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
        sign = (e & 1) ? -1 : 1;

        if (detail::hilbert_shadow_check() && alpha <= 5 && beta <= 5) {
            static thread_local padic::SolubilityOracle oracle(2);
            if (oracle.symbol(a, b) != sign)
                throw std::logic_error("hilbert_symbol: p = 2 formula disagrees with exhaustive search");
        }
    } else {
        if ((alpha & 1) && (beta & 1) && (p & 3) == 3) sign = -sign;
        if (beta & 1) sign *= kronecker(u, p);
        if (alpha & 1) sign *= kronecker(w, p);
    }
    return sign;
}

}  // namespace qme::arith
