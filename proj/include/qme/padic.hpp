#pragma once

/**
 * @file padic.hpp
 * @brief Brute-force p-adic solubility of z^2 = a x^2 + b y^2.
 *
 * This is the reference oracle for the Hilbert symbol: it decides solubility
 * by exhaustive search over residues, with no quadratic reciprocity anywhere.
 * z^2 = a x^2 + b y^2 has a nontrivial solution over Q_p if and only if it has
 * a primitive solution (not all coordinates divisible by p) modulo p^k with
 * k = 3 + 2*max(v_p(a), v_p(b)); that precision is enough for a primitive
 * residue solution to lift (Newton iteration on the unit coordinate needs
 * v(f) > 2*v(f'), and v(f') <= v(2) + max(v_p(a), v_p(b))).
 *
 * A primitive solution has x or y a unit: if x and y were both divisible by p
 * then z^2 = a x^2 + b y^2 would force p | z as well.  Scaling by the inverse
 * of that unit coordinate pins it to 1, so the search space is
 *   (1, y, z) with y arbitrary, and (x, 1, z) with p | x,
 * and z only enters through "is a x^2 + b y^2 a square mod p^k", answered by a
 * precomputed table of squares.
 *
 * Insolubility is detected early: a primitive solution mod p^m reduces to a
 * primitive solution mod p^(m-1), so the first precision with no solution
 * settles the answer as -1.
 */

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qme::padic {

class SolubilityOracle {
public:
    /// @param p a prime; @param max_modulus refuses searches beyond this size.
    explicit SolubilityOracle(std::int64_t p, std::int64_t max_modulus = std::int64_t{1} << 31)
        : p_(p), max_modulus_(max_modulus) {
        if (p < 2) throw std::domain_error("SolubilityOracle: p must be a prime");
        pow_.push_back(1);
    }

    std::int64_t prime() const { return p_; }

    /// The Hilbert symbol (a,b)_p by exhaustive search: +1 soluble, -1 not.
    int symbol(std::int64_t a, std::int64_t b) {
        if (a == 0 || b == 0) throw std::domain_error("SolubilityOracle: arguments must be nonzero");
        int k = 3 + 2 * std::max(valuation(a), valuation(b));
        for (int m = 1; m <= k; ++m) {
            if (!primitive_solution_exists(a, b, m)) return -1;
        }
        return 1;
    }

    /// Is there a primitive solution of z^2 = a x^2 + b y^2 modulo p^m?
    bool primitive_solution_exists(std::int64_t a, std::int64_t b, int m) {
        const std::int64_t M = modulus(m);
        const std::uint64_t am = reduce(a, M);
        const std::uint64_t bm = reduce(b, M);
        const std::vector<std::uint64_t>& sq = squares_table(m);
        const std::uint64_t Mu = static_cast<std::uint64_t>(M);

        auto is_square = [&sq](std::uint64_t t) {
            return (sq[t >> 6] >> (t & 63)) & 1u;
        };

        // x = 1, y sweeping all residues (y and M - y give the same value).
        for (std::uint64_t y = 0; y <= Mu / 2; ++y) {
            std::uint64_t t = (am + mul(bm, mul(y, y, Mu), Mu)) % Mu;
            if (is_square(t)) return true;
        }
        // y = 1, x sweeping multiples of p.
        for (std::uint64_t x = 0; x <= Mu / 2; x += static_cast<std::uint64_t>(p_)) {
            std::uint64_t t = (bm + mul(am, mul(x, x, Mu), Mu)) % Mu;
            if (is_square(t)) return true;
        }
        return false;
    }

private:
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    }

    int valuation(std::int64_t n) const {
        int v = 0;
        while (n % p_ == 0) {
            n /= p_;
            ++v;
        }
        return v;
    }

    static std::uint64_t reduce(std::int64_t a, std::int64_t M) {
        std::int64_t r = a % M;
        if (r < 0) r += M;
        return static_cast<std::uint64_t>(r);
    }

    std::int64_t modulus(int m) {
        while (static_cast<int>(pow_.size()) <= m) {
            std::int64_t next = pow_.back();
            if (next > max_modulus_ / p_)
                throw std::domain_error("SolubilityOracle: modulus exceeds the configured bound");
            pow_.push_back(next * p_);
        }
        return pow_[m];
    }

    const std::vector<std::uint64_t>& squares_table(int m) {
        if (static_cast<int>(squares_.size()) <= m) squares_.resize(m + 1);
        std::vector<std::uint64_t>& table = squares_[m];
        if (table.empty()) {
            const std::uint64_t M = static_cast<std::uint64_t>(modulus(m));
            table.assign((M + 63) / 64, 0);
            std::uint64_t sq = 0;  // z^2 mod M, maintained incrementally
            for (std::uint64_t z = 0; z <= M / 2; ++z) {
                table[sq >> 6] |= std::uint64_t{1} << (sq & 63);
                sq += 2 * z + 1;              // (z+1)^2 - z^2
                while (sq >= M) sq -= M;      // the step is at most M + 1
            }
        }
        return table;
    }

    std::int64_t p_;
    std::int64_t max_modulus_;
    std::vector<std::int64_t> pow_;
    std::vector<std::vector<std::uint64_t>> squares_;
};

}  // namespace qme::padic
