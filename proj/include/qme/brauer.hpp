#pragma once

/**
 * @file brauer.hpp
 * @brief Central simple algebra classes over Q and over quadratic fields,
 *        represented by (center, degree, local invariants in Q/Z).
 *
 * Nothing here touches structure constants: a class is exactly the data that
 * classifies a central simple algebra over a number field, so isomorphism
 * testing is equality of normalized data, and the index is the lcm of the
 * invariant denominators (Albert-Brauer-Hasse-Noether; this is the one
 * load-bearing theorem imported from outside, valid over Q and quadratic
 * fields).  Reciprocity - invariants summing to 0 in Q/Z - is enforced at
 * construction, so ill-formed classes cannot exist.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qme/arith.hpp"
#include "qme/quadfields.hpp"

namespace qme {

/// Configuration outside the supported fragment (e.g. two quadratic centers
/// in an embedding test, where linear disjointness is not guaranteed).
struct unsupported_configuration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace brauer {

using quadfields::FieldDesc;
using quadfields::SplittingType;

/// An element of Q/Z: a reduced fraction num/den with 0 <= num < den.
class InvariantValue {
public:
    InvariantValue() = default;  // zero

    static InvariantValue make(std::int64_t num, std::int64_t den) {
        if (den <= 0) throw std::domain_error("InvariantValue: denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        const std::int64_t g = std::gcd(num, den);
        return InvariantValue(num / g, den / g);
    }
    static InvariantValue half() { return InvariantValue(1, 2); }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    InvariantValue negated() const { return make(den_ - num_, den_); }

    /// k * value in Q/Z.
    InvariantValue scaled(std::int64_t k) const {
        return make(static_cast<std::int64_t>((static_cast<__int128>(num_) * k) % den_), den_);
    }

    friend InvariantValue operator+(const InvariantValue& x, const InvariantValue& y) {
        const std::int64_t den = std::lcm(x.den_, y.den_);
        return make(x.num_ * (den / x.den_) + y.num_ * (den / y.den_), den);
    }

    friend bool operator==(const InvariantValue&, const InvariantValue&) = default;
    friend auto operator<=>(const InvariantValue&, const InvariantValue&) = default;

private:
    InvariantValue(std::int64_t num, std::int64_t den) : num_(num), den_(den) {}
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

enum class Slot { only, first, second };

/**
 * A place of the center: a place of Q together with, when the base field is
 * quadratic and the rational place splits, which of the two places above it
 * is meant.  Non-split places carry slot `only`.
 */
class AlgebraPlace {
public:
    AlgebraPlace(FieldDesc base, arith::RationalPlace under, Slot slot)
        : base_(base), under_(under), slot_(slot) {
        if (base_.is_rationals()) {
            if (slot_ != Slot::only)
                throw std::domain_error("AlgebraPlace: places of Q carry slot `only`");
        } else {
            const bool split = quadfields::splitting(base_, under_) == SplittingType::split;
            if (split && slot_ == Slot::only)
                throw std::domain_error("AlgebraPlace: a split place needs slot `first` or `second`");
            if (!split && slot_ != Slot::only)
                throw std::domain_error("AlgebraPlace: slots exist only over split places");
        }
    }

    static AlgebraPlace rational(arith::RationalPlace v) {
        return AlgebraPlace(FieldDesc::rationals(), v, Slot::only);
    }
    static AlgebraPlace rational_prime(std::int64_t p) {
        return rational(arith::RationalPlace::finite(p));
    }

    const FieldDesc& base() const { return base_; }
    const arith::RationalPlace& under() const { return under_; }
    Slot slot() const { return slot_; }

    /// Real place of the base field (where invariants are restricted to {0, 1/2}).
    bool is_real() const {
        return under_.is_infinite() && (base_.is_rationals() || base_.is_real_quadratic());
    }
    /// Complex place (invariant group trivial).
    bool is_complex() const { return under_.is_infinite() && base_.is_imaginary(); }

    friend bool operator==(const AlgebraPlace&, const AlgebraPlace&) = default;
    friend auto operator<=>(const AlgebraPlace& x, const AlgebraPlace& y) {
        return std::tuple(x.base_, x.under_, x.slot_) <=> std::tuple(y.base_, y.under_, y.slot_);
    }

private:
    FieldDesc base_;
    arith::RationalPlace under_;
    Slot slot_;
};

/**
 * The class of a central simple algebra: center, degree, and the map
 * place -> invariant (absent = 0).  Immutable once constructed; construction
 * validates reciprocity, that every denominator divides the degree, and the
 * archimedean constraints (real places carry 0 or 1/2, complex places 0).
 */
class CentralSimpleClass {
public:
    CentralSimpleClass(FieldDesc center, std::int64_t degree,
                       std::vector<std::pair<AlgebraPlace, InvariantValue>> invariants)
        : center_(center), degree_(degree), invariants_(std::move(invariants)) {
        if (degree_ < 1) throw std::invalid_argument("CentralSimpleClass: degree must be positive");

        std::erase_if(invariants_, [](const auto& e) { return e.second.is_zero(); });
        std::sort(invariants_.begin(), invariants_.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t i = 0; i + 1 < invariants_.size(); ++i) {
            if (invariants_[i].first == invariants_[i + 1].first)
                throw std::invalid_argument("CentralSimpleClass: duplicate place");
        }

        InvariantValue sum;
        for (const auto& [place, inv] : invariants_) {
            if (place.base() != center_)
                throw std::invalid_argument("CentralSimpleClass: place does not lie on the center");
            if (degree_ % inv.denominator() != 0)
                throw std::invalid_argument("CentralSimpleClass: invariant denominator does not divide the degree");
            if (place.is_real() && inv != InvariantValue::half())
                throw std::invalid_argument("CentralSimpleClass: a real place carries 0 or 1/2");
            if (place.is_complex())
                throw std::invalid_argument("CentralSimpleClass: a complex place carries no invariant");
            sum = sum + inv;
        }
        if (!sum.is_zero())
            throw std::invalid_argument("CentralSimpleClass: invariants must sum to 0 in Q/Z (reciprocity)");
    }

    const FieldDesc& center() const { return center_; }
    std::int64_t degree() const { return degree_; }
    const std::vector<std::pair<AlgebraPlace, InvariantValue>>& invariants() const { return invariants_; }

    InvariantValue invariant_at(const AlgebraPlace& place) const {
        for (const auto& [q, inv] : invariants_)
            if (q == place) return inv;
        return InvariantValue();
    }

    /// lcm of invariant denominators: the degree of the division part.
    std::int64_t index() const {
        std::int64_t idx = 1;
        for (const auto& [place, inv] : invariants_) idx = std::lcm(idx, inv.denominator());
        return idx;
    }
    /// Matrix size over the division part; capacity * index = degree.
    std::int64_t capacity() const { return degree_ / index(); }

    bool is_trivial() const { return invariants_.empty(); }
    bool is_division() const { return index() == degree_; }

    friend bool operator==(const CentralSimpleClass&, const CentralSimpleClass&) = default;

private:
    FieldDesc center_;
    std::int64_t degree_;
    std::vector<std::pair<AlgebraPlace, InvariantValue>> invariants_;
};

/// The trivial class of given degree (Mat_degree of the center).
inline CentralSimpleClass trivial_class(FieldDesc center, std::int64_t degree = 1) {
    return CentralSimpleClass(center, degree, {});
}

/// Canonical textual key of a place: "inf", "13", "13.1", "13.2", "inf.1", ...
/// Shared by the JSON and CSV encodings.
inline std::string place_key(const AlgebraPlace& place) {
    std::string key = place.under().is_infinite() ? "inf" : std::to_string(place.under().prime());
    if (place.slot() == Slot::first) key += ".1";
    if (place.slot() == Slot::second) key += ".2";
    return key;
}

/**
 * The quaternion algebra (a,b) over Q as a class: invariant 1/2 exactly at
 * the places where the Hilbert symbol is -1.
 */
inline CentralSimpleClass quaternion_from_symbol(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) throw std::domain_error("quaternion_from_symbol: arguments must be nonzero");
    std::vector<std::int64_t> primes{2};
    for (std::int64_t t : {a < 0 ? -a : a, b < 0 ? -b : b}) {
        for (const auto& [p, e] : arith::factorize(t).factors) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<std::pair<AlgebraPlace, InvariantValue>> invs;
    if (arith::hilbert_symbol(a, b, arith::RationalPlace::infinite()) == -1)
        invs.emplace_back(AlgebraPlace::rational(arith::RationalPlace::infinite()), InvariantValue::half());
    for (std::int64_t p : primes) {
        if (arith::hilbert_symbol(a, b, arith::RationalPlace::finite(p)) == -1)
            invs.emplace_back(AlgebraPlace::rational_prime(p), InvariantValue::half());
    }
    return CentralSimpleClass(FieldDesc::rationals(), 2, std::move(invs));
}

enum class QuaternionKind { indefinite, definite_at_infinity };

/**
 * The quaternion algebra over Q with the given squarefree discriminant:
 * invariant 1/2 at each prime of S, plus at infinity in the definite case.
 * Reciprocity forces the ramified-place count to be even, hence the parity
 * preconditions on the number of prime factors of S.
 */
inline CentralSimpleClass quaternion_from_discriminant(std::int64_t S, QuaternionKind kind) {
    if (S <= 1) throw std::domain_error("quaternion_from_discriminant: S must exceed 1");
    const arith::PrimeFactorization f = arith::factorize(S);
    if (!f.is_squarefree()) throw std::domain_error("quaternion_from_discriminant: S must be squarefree");
    const bool odd_count = f.factors.size() % 2 == 1;
    if (kind == QuaternionKind::indefinite && odd_count)
        throw std::domain_error(
            "quaternion_from_discriminant: an indefinite quaternion algebra has an even number of "
            "ramified primes (reciprocity: invariants sum to 0 in Q/Z)");
    if (kind == QuaternionKind::definite_at_infinity && !odd_count)
        throw std::domain_error(
            "quaternion_from_discriminant: ramification at infinity needs an odd number of ramified "
            "primes (reciprocity: invariants sum to 0 in Q/Z)");

    std::vector<std::pair<AlgebraPlace, InvariantValue>> invs;
    if (kind == QuaternionKind::definite_at_infinity)
        invs.emplace_back(AlgebraPlace::rational(arith::RationalPlace::infinite()), InvariantValue::half());
    for (const auto& [p, e] : f.factors)
        invs.emplace_back(AlgebraPlace::rational_prime(p), InvariantValue::half());
    return CentralSimpleClass(FieldDesc::rationals(), 2, std::move(invs));
}

/// D_{p,infinity}: ramified exactly at p and the real place.
inline CentralSimpleClass definite_quaternion_at(std::int64_t p) {
    return quaternion_from_discriminant(p, QuaternionKind::definite_at_infinity);
}

/// D_{inf1,inf2}: the quaternion algebra over a real quadratic field ramified
/// exactly at its two real places.
inline CentralSimpleClass totally_definite_quaternion(const FieldDesc& K) {
    if (!K.is_real_quadratic())
        throw std::domain_error("totally_definite_quaternion: K must be real quadratic");
    const arith::RationalPlace inf = arith::RationalPlace::infinite();
    return CentralSimpleClass(K, 2,
                              {{AlgebraPlace(K, inf, Slot::first), InvariantValue::half()},
                               {AlgebraPlace(K, inf, Slot::second), InvariantValue::half()}});
}

/// The quaternion algebra over an imaginary quadratic K ramified exactly at
/// the two places over a prime that splits in K.
inline CentralSimpleClass quaternion_over_split_prime(const FieldDesc& K, std::int64_t p) {
    if (!K.is_quadratic()) throw std::domain_error("quaternion_over_split_prime: K must be quadratic");
    const arith::RationalPlace v = arith::RationalPlace::finite(p);
    if (quadfields::splitting(K, v) != SplittingType::split)
        throw std::domain_error("quaternion_over_split_prime: p must split in K");
    return CentralSimpleClass(K, 2,
                              {{AlgebraPlace(K, v, Slot::first), InvariantValue::half()},
                               {AlgebraPlace(K, v, Slot::second), InvariantValue::half()}});
}

/// Tensor product of classes over the same center: invariants add place-wise.
inline CentralSimpleClass tensor(const CentralSimpleClass& A, const CentralSimpleClass& B) {
    if (A.center() != B.center()) throw std::domain_error("tensor: centers must agree");
    std::vector<std::pair<AlgebraPlace, InvariantValue>> invs = A.invariants();
    for (const auto& [place, inv] : B.invariants()) {
        bool found = false;
        for (auto& [q, sum] : invs) {
            if (q == place) {
                sum = sum + inv;
                found = true;
                break;
            }
        }
        if (!found) invs.emplace_back(place, inv);
    }
    return CentralSimpleClass(A.center(), A.degree() * B.degree(), std::move(invs));
}

/// Opposite algebra: invariants negate, degree unchanged.
inline CentralSimpleClass opposite(const CentralSimpleClass& A) {
    std::vector<std::pair<AlgebraPlace, InvariantValue>> invs;
    for (const auto& [place, inv] : A.invariants()) invs.emplace_back(place, inv.negated());
    return CentralSimpleClass(A.center(), A.degree(), std::move(invs));
}

/**
 * Base change A tensor_Q K for quadratic K: a split rational place hands its
 * invariant to both places above; a non-split place multiplies it by the
 * local degree 2.  The invariant at the complex place of an imaginary K is
 * 2 * inv_infinity(A) = 0 automatically, so it never appears.
 */
inline CentralSimpleClass base_change(const CentralSimpleClass& A, const FieldDesc& K) {
    if (!A.center().is_rationals()) throw std::domain_error("base_change: A must be central over Q");
    if (!K.is_quadratic()) throw std::domain_error("base_change: K must be quadratic");
    std::vector<std::pair<AlgebraPlace, InvariantValue>> invs;
    for (const auto& [place, inv] : A.invariants()) {
        const arith::RationalPlace v = place.under();
        if (quadfields::splitting(K, v) == SplittingType::split) {
            invs.emplace_back(AlgebraPlace(K, v, Slot::first), inv);
            invs.emplace_back(AlgebraPlace(K, v, Slot::second), inv);
        } else {
            const InvariantValue doubled = inv.scaled(2);
            if (!doubled.is_zero()) invs.emplace_back(AlgebraPlace(K, v, Slot::only), doubled);
        }
    }
    return CentralSimpleClass(K, A.degree(), std::move(invs));
}

/**
 * Does the quadratic field K split the rational quaternion algebra D?
 * Direct criterion: every finite ramified prime of D is non-split in K, and
 * K is imaginary if the real place is ramified.  (Equivalent to
 * base_change(D, K) being trivial; the test suite checks all routes agree.)
 */
inline bool splits(const FieldDesc& K, const CentralSimpleClass& D) {
    if (!K.is_quadratic()) throw std::domain_error("splits: K must be quadratic");
    if (!D.center().is_rationals() || D.degree() != 2)
        throw std::domain_error("splits: D must be a quaternion class over Q");
    for (const auto& [place, inv] : D.invariants()) {
        if (place.under().is_infinite()) {
            if (!K.is_imaginary()) return false;
        } else if (quadfields::splitting(K, place.under()) == SplittingType::split) {
            return false;
        }
    }
    return true;
}

/**
 * Embedding test: does B embed into E = Mat_n(delta) as algebras over Q?
 *
 * With Z the center of delta and K the center of B, at least one of which
 * must be Q (then L = Z tensor K is automatically a field), the criterion is
 *   [B:Q] divides n * c,
 * where c is the capacity of delta tensor_Q opposite(B) as a class over L.
 * Two quadratic centers are rejected: linear disjointness is not guaranteed
 * there and the criterion does not apply.
 */
inline bool embeds(const CentralSimpleClass& B, const CentralSimpleClass& delta, std::int64_t n) {
    if (n < 1) throw std::domain_error("embeds: n must be positive");
    const FieldDesc& Z = delta.center();
    const FieldDesc& K = B.center();
    if (Z.is_quadratic() && K.is_quadratic())
        throw unsupported_configuration(
            "embeds: both centers quadratic; linear disjointness over Q is not guaranteed");

    CentralSimpleClass Bo = opposite(B);
    CentralSimpleClass over_L = [&] {
        if (Z.is_rationals() && K.is_rationals()) return tensor(delta, Bo);
        if (Z.is_quadratic()) return tensor(delta, base_change(Bo, Z));
        return tensor(base_change(delta, K), Bo);
    }();

    const std::int64_t c = over_L.capacity();
    const std::int64_t B_over_Q = B.degree() * B.degree() * K.degree();
    return (n * c) % B_over_Q == 0;
}

}  // namespace brauer
}  // namespace qme
