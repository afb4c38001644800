#pragma once

/**
 * @file quadfields.hpp
 * @brief Descriptors for Q and quadratic fields Q(sqrt(d)), prime splitting,
 *        and the quadratic cyclotomic fields Q(zeta_n).
 *
 * A field is identified with its squarefree d, so field equality is equality
 * of d; in particular Q(zeta_3) = Q(zeta_6) = Q(sqrt(-3)) holds definitionally.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "qme/arith.hpp"

namespace qme::quadfields {

/// Q or a quadratic field Q(sqrt(d)) with d squarefree, d not in {0, 1}.
class FieldDesc {
public:
    static FieldDesc rationals() { return FieldDesc(true, 0); }
    static FieldDesc quadratic(std::int64_t d) {
        if (d == 0 || d == 1) throw std::domain_error("FieldDesc: d must not be 0 or 1");
        if (!arith::is_squarefree(d)) throw std::domain_error("FieldDesc: d must be squarefree");
        return FieldDesc(false, d);
    }

    bool is_rationals() const { return rationals_; }
    bool is_quadratic() const { return !rationals_; }
    int degree() const { return rationals_ ? 1 : 2; }

    std::int64_t d() const {
        require_quadratic();
        return d_;
    }

    /// Field discriminant: d if d = 1 mod 4, else 4d.
    std::int64_t discriminant() const {
        require_quadratic();
        return ((d_ % 4 + 4) % 4 == 1) ? d_ : 4 * d_;
    }

    bool is_imaginary() const { return !rationals_ && d_ < 0; }
    bool is_real_quadratic() const { return !rationals_ && d_ > 0; }

    friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
    friend auto operator<=>(const FieldDesc&, const FieldDesc&) = default;

private:
    FieldDesc(bool rationals, std::int64_t d) : rationals_(rationals), d_(d) {}
    void require_quadratic() const {
        if (rationals_) throw std::domain_error("FieldDesc: operation requires a quadratic field");
    }
    bool rationals_;
    std::int64_t d_;
};

enum class SplittingType { split, inert, ramified };

/**
 * Splitting behaviour of a place of Q in the quadratic field K.
 *
 * A finite prime is ramified iff it divides the field discriminant, and
 * otherwise splits iff the discriminant is a square modulo it.  At the
 * infinite place a real field has two real places (split) and an imaginary
 * field one complex place, reported as inert: either way the local degree
 * below is 2.
 */
inline SplittingType splitting(const FieldDesc& K, const arith::RationalPlace& v) {
    if (!K.is_quadratic()) throw std::domain_error("splitting: K must be quadratic");
    if (v.is_infinite()) return K.d() > 0 ? SplittingType::split : SplittingType::inert;
    const std::int64_t disc = K.discriminant();
    const std::int64_t ell = v.prime();
    if (disc % ell == 0) return SplittingType::ramified;
    return arith::kronecker(disc, ell) == 1 ? SplittingType::split : SplittingType::inert;
}

inline SplittingType splitting(const FieldDesc& K, std::int64_t ell) {
    return splitting(K, arith::RationalPlace::finite(ell));
}

/// Local degree [K_w : Q_v] at any place above v (1 for split, else 2).
inline int local_degree(const FieldDesc& K, const arith::RationalPlace& v) {
    return splitting(K, v) == SplittingType::split ? 1 : 2;
}

/// The quadratic cyclotomic fields: Q(zeta_n) for n = 3, 4, 6.
inline FieldDesc cyclotomic_quadratic(int n) {
    switch (n) {
        case 3:
        case 6:
            return FieldDesc::quadratic(-3);
        case 4:
            return FieldDesc::quadratic(-1);
        default:
            throw std::domain_error("cyclotomic_quadratic: Q(zeta_n) is quadratic only for n = 3, 4, 6");
    }
}

/**
 * The field Q(sqrt(p^a) * zeta_n) for odd a, when it is quadratic.
 *
 * Since a is odd the field equals Q(sqrt(p) * zeta_n).  It is quadratic for
 * n = 1, 2 (the real field Q(sqrt(p))), for n = 4 (Q(sqrt(-p)), as
 * sqrt(p)*i squares to -p), and in the two coincidences sqrt(2)*zeta_8 = 1+i
 * and sqrt(3)*zeta_12 = (3+sqrt(-3))/2.  Every other combination generates a
 * degree-4 field and yields nullopt; those fields are never constructed.
 */
inline std::optional<FieldDesc> minimal_field_of_sqrtp_zeta(std::int64_t p, int a, int n) {
    if (!arith::is_prime(p)) throw std::domain_error("minimal_field_of_sqrtp_zeta: p must be prime");
    if (a <= 0 || a % 2 == 0)
        throw std::domain_error("minimal_field_of_sqrtp_zeta: a must be odd and positive");
    switch (n) {
        case 1:
        case 2:
            return FieldDesc::quadratic(p);
        case 4:
            return FieldDesc::quadratic(-p);
        case 8:
            if (p == 2) return FieldDesc::quadratic(-1);
            return std::nullopt;
        case 12:
            if (p == 3) return FieldDesc::quadratic(-3);
            return std::nullopt;
        case 3:
        case 6:
            return std::nullopt;
        default:
            throw std::domain_error("minimal_field_of_sqrtp_zeta: n must be one of 1,2,3,4,6,8,12");
    }
}

}  // namespace qme::quadfields
