#pragma once

/**
 * @file rm.hpp
 * @brief Classifier for endomorphism algebras of abelian varieties with real
 *        multiplication by a totally real field F: the Albert Type I-IV
 *        shapes Mat_n(Delta) and their realizability conditions.
 *
 * Native field support stops at degree 2; larger F enter only through
 * explicit local-degree tables, because the Type II-IV conditions consume
 * nothing but local degrees.  Subfield lattices are declared, not computed.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qme/brauer.hpp"

namespace qme::rm {

using brauer::CentralSimpleClass;
using quadfields::FieldDesc;
using quadfields::SplittingType;

/// A division algebra violating the positive-involution condition: its
/// invariants at conjugate places fail to cancel.  Distinct from a plain
/// "not realizable" verdict.
struct no_positive_involution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExplicitData;

/**
 * A totally real field: Q, a real quadratic field, or an explicit table
 * (degree, local degrees at the primes of interest, declared subfields).
 */
class TotallyRealField {
public:
    enum class Kind { rationals, real_quadratic, explicit_table };

    static TotallyRealField rationals() { return TotallyRealField(Kind::rationals, 0, nullptr); }
    static TotallyRealField real_quadratic(std::int64_t d) {
        if (d <= 1) throw std::domain_error("TotallyRealField: real quadratic needs d > 1");
        if (!arith::is_squarefree(d)) throw std::domain_error("TotallyRealField: d must be squarefree");
        return TotallyRealField(Kind::real_quadratic, d, nullptr);
    }
    static TotallyRealField explicit_table(ExplicitData data);

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::rationals; }
    bool is_real_quadratic() const { return kind_ == Kind::real_quadratic; }

    std::int64_t quad_d() const {
        if (kind_ != Kind::real_quadratic)
            throw std::domain_error("TotallyRealField: not a real quadratic field");
        return d_;
    }
    const ExplicitData& table() const {
        if (!data_) throw std::domain_error("TotallyRealField: no explicit table");
        return *data_;
    }

    std::int64_t degree() const;

    /// Local degrees [F_w : Q_ell] over the prime ell, one per place w.
    std::vector<int> local_degrees(std::int64_t ell) const;

    /// The declared subfield lattice ({Q} for Q, {Q, F} for quadratic F).
    std::vector<TotallyRealField> subfields() const;

    bool has_subfield_sqrt(std::int64_t p) const;

    std::string name() const {
        switch (kind_) {
            case Kind::rationals:
                return "Q";
            case Kind::real_quadratic:
                return "Q(sqrt(" + std::to_string(d_) + "))";
            default:
                return "F[deg " + std::to_string(degree()) + "]";
        }
    }

    /// Same declared field (explicit tables compare by identity of content).
    bool same_field(const TotallyRealField& other) const;

private:
    TotallyRealField(Kind kind, std::int64_t d, std::shared_ptr<const ExplicitData> data)
        : kind_(kind), d_(d), data_(std::move(data)) {}
    Kind kind_;
    std::int64_t d_;
    std::shared_ptr<const ExplicitData> data_;
};

/// A declared subfield, optionally with relative local degrees
/// [F_w : K0_v] keyed by the canonical place key of K0 ("13", "13.1", ...).
struct SubfieldEntry {
    TotallyRealField field;
    std::map<std::string, std::vector<int>> relative_local;
};

struct ExplicitData {
    std::int64_t degree = 0;
    std::map<std::int64_t, std::vector<int>> local;  // prime -> [F_w:Q_ell] per place
    std::vector<SubfieldEntry> subfields;
};

inline TotallyRealField TotallyRealField::explicit_table(ExplicitData data) {
    if (data.degree < 1) throw std::domain_error("TotallyRealField: degree must be positive");
    for (const auto& [p, degs] : data.local) {
        if (!arith::is_prime(p))
            throw std::domain_error("TotallyRealField: local table keys must be primes");
        if (degs.empty()) throw std::domain_error("TotallyRealField: empty local degree list");
        std::int64_t sum = 0;
        for (int d : degs) {
            if (d < 1) throw std::domain_error("TotallyRealField: local degrees must be positive");
            sum += d;
        }
        if (sum != data.degree)
            throw std::domain_error("TotallyRealField: local degrees at " + std::to_string(p) +
                                    " sum to " + std::to_string(sum) + ", expected " +
                                    std::to_string(data.degree));
    }
    for (const SubfieldEntry& entry : data.subfields) {
        if (data.degree % entry.field.degree() != 0)
            throw std::domain_error("TotallyRealField: subfield degree must divide the field degree");
    }
    return TotallyRealField(Kind::explicit_table, 0,
                            std::make_shared<const ExplicitData>(std::move(data)));
}

inline std::int64_t TotallyRealField::degree() const {
    switch (kind_) {
        case Kind::rationals:
            return 1;
        case Kind::real_quadratic:
            return 2;
        default:
            return data_->degree;
    }
}

inline std::vector<int> TotallyRealField::local_degrees(std::int64_t ell) const {
    switch (kind_) {
        case Kind::rationals:
            return {1};
        case Kind::real_quadratic:
            return quadfields::splitting(FieldDesc::quadratic(d_), ell) == SplittingType::split
                       ? std::vector<int>{1, 1}
                       : std::vector<int>{2};
        default: {
            auto it = data_->local.find(ell);
            if (it == data_->local.end())
                throw unsupported_configuration("TotallyRealField: no local data for prime " +
                                                std::to_string(ell));
            return it->second;
        }
    }
}

inline std::vector<TotallyRealField> TotallyRealField::subfields() const {
    switch (kind_) {
        case Kind::rationals:
            return {rationals()};
        case Kind::real_quadratic:
            return {rationals(), *this};
        default: {
            std::vector<TotallyRealField> out;
            for (const SubfieldEntry& entry : data_->subfields) out.push_back(entry.field);
            return out;
        }
    }
}

inline bool TotallyRealField::has_subfield_sqrt(std::int64_t p) const {
    for (const TotallyRealField& sub : subfields())
        if (sub.is_real_quadratic() && sub.quad_d() == p) return true;
    return false;
}

inline bool TotallyRealField::same_field(const TotallyRealField& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::real_quadratic) return d_ == other.d_;
    if (kind_ == Kind::explicit_table) return data_ == other.data_;
    return true;
}

enum class AlbertType { I, II, III, IV };

/// The division part of a shape: the subfield itself (Type I), a concrete
/// class, or one of the named Type III families.
struct DeltaDesc {
    enum class Kind { field_k0, dpinf, dinf1inf2, dpinf_tensor_k0_family, algebra };
    Kind kind;
    std::optional<CentralSimpleClass> csc;  // concrete class, when representable
    std::int64_t p = 0;                     // for the D_{p,infty}-derived kinds

    static DeltaDesc field_k0() { return {Kind::field_k0, std::nullopt, 0}; }
    static DeltaDesc dpinf(std::int64_t p) {
        return {Kind::dpinf, brauer::definite_quaternion_at(p), p};
    }
    static DeltaDesc dinf1inf2(std::int64_t p) {
        return {Kind::dinf1inf2, brauer::totally_definite_quaternion(FieldDesc::quadratic(p)), p};
    }
    static DeltaDesc dpinf_tensor_k0_family(std::int64_t p) {
        return {Kind::dpinf_tensor_k0_family, std::nullopt, p};
    }
    static DeltaDesc algebra(CentralSimpleClass csc) {
        return {Kind::algebra, std::move(csc), 0};
    }
};

struct RmShape {
    AlbertType type;
    TotallyRealField k0;
    std::int64_t n;
    DeltaDesc delta;
    bool conditional_on_H = false;
    std::string note;
};

/// Type I: Mat_n(K0) for each declared subfield K0 of F, with n [K0:Q] = g.
inline std::vector<RmShape> type1_shapes(const TotallyRealField& F) {
    std::vector<RmShape> shapes;
    for (const TotallyRealField& K0 : F.subfields()) {
        shapes.push_back(RmShape{AlbertType::I, K0, F.degree() / K0.degree(), DeltaDesc::field_k0(),
                                 false, ""});
    }
    return shapes;
}

namespace detail {

inline void require_quaternion_over(const CentralSimpleClass& delta, const TotallyRealField& K0) {
    if (delta.degree() != 2)
        throw std::domain_error("type2_check: Delta must be a quaternion algebra");
    const bool center_ok = K0.is_rationals() ? delta.center().is_rationals()
                                             : (delta.center().is_real_quadratic() &&
                                                K0.is_real_quadratic() &&
                                                delta.center().d() == K0.quad_d());
    if (!center_ok) throw std::domain_error("type2_check: Delta must be central over K0");
    for (const auto& [place, inv] : delta.invariants()) {
        if (place.under().is_infinite())
            throw std::domain_error("type2_check: Delta must be totally indefinite");
    }
}

}  // namespace detail

/**
 * Type II: is Mat_n(Delta) realizable, for Delta a totally indefinite
 * quaternion algebra over the subfield K0?  Requires 2 n [K0:Q] = g and F to
 * split Delta, i.e. every local degree [F_w : K0_v] even at every finite
 * ramified place v of Delta.
 *
 * K0 = Q is supported natively.  A quadratic K0 needs relative local degrees
 * declared on the matching subfield entry of an explicit F.
 */
inline bool type2_check(const TotallyRealField& F, const TotallyRealField& K0,
                        const CentralSimpleClass& delta, std::int64_t n) {
    if (n < 1) throw std::domain_error("type2_check: n must be positive");
    detail::require_quaternion_over(delta, K0);

    // A quadratic K0 is usable only with relative degrees declared on F.
    const std::map<std::string, std::vector<int>>* relative = nullptr;
    if (!K0.is_rationals()) {
        if (F.kind() == TotallyRealField::Kind::explicit_table) {
            for (const SubfieldEntry& entry : F.table().subfields) {
                if (entry.field.same_field(K0) && !entry.relative_local.empty())
                    relative = &entry.relative_local;
            }
        }
        if (!relative)
            throw unsupported_configuration(
                "type2_check: a quadratic K0 requires explicit relative local degrees on F");
    }

    if (2 * n * K0.degree() != F.degree()) return false;

    for (const auto& [place, inv] : delta.invariants()) {
        if (relative) {
            auto it = relative->find(brauer::place_key(place));
            if (it == relative->end())
                throw unsupported_configuration("type2_check: no relative local data at place " +
                                                brauer::place_key(place));
            for (int deg : it->second)
                if (deg % 2 != 0) return false;
        } else {
            for (int deg : F.local_degrees(place.under().prime()))
                if (deg % 2 != 0) return false;
        }
    }
    return true;
}

/**
 * Type III shapes at the prime p (base field of characteristic p, A
 * supersingular).  Under hypothesis (H) the list is sharp: Mat_g(D_{p,infty})
 * with K0 = Q, and Mat_{g/2}(D_{inf1,inf2}) with K0 = Q(sqrt(p)) when that
 * field sits inside F; both occur over finite fields unconditionally.
 * Without (H) the general family D_{p,infty} tensor K0 is reported for every
 * declared subfield, flagged conditional.
 */
inline std::vector<RmShape> type3_shapes(const TotallyRealField& F, std::int64_t p, bool assume_H) {
    if (!arith::is_prime(p)) throw std::domain_error("type3_shapes: p must be prime");
    const std::string note = "characteristic " + std::to_string(p) + ", supersingular";
    std::vector<RmShape> shapes;
    if (assume_H) {
        shapes.push_back(RmShape{AlbertType::III, TotallyRealField::rationals(), F.degree(),
                                 DeltaDesc::dpinf(p), false, note});
        if (F.has_subfield_sqrt(p) && F.degree() % 2 == 0) {
            shapes.push_back(RmShape{AlbertType::III, TotallyRealField::real_quadratic(p),
                                     F.degree() / 2, DeltaDesc::dinf1inf2(p), false, note});
        }
    } else {
        for (const TotallyRealField& K0 : F.subfields()) {
            shapes.push_back(RmShape{AlbertType::III, K0, F.degree() / K0.degree(),
                                     DeltaDesc::dpinf_tensor_k0_family(p), true, note});
        }
    }
    return shapes;
}

/**
 * Type IV: is Mat_n(Delta) realizable for Delta of degree m over an imaginary
 * quadratic CM field K (so K0 = Q)?
 *
 * Delta must first admit a positive involution: invariants at conjugate
 * places cancel and sigma-fixed places carry 0; a violation throws
 * no_positive_involution rather than returning false.  Realizability then
 * needs g = n m and, at every finite ramified place v of Delta over the
 * rational prime ell, every local degree [F_w : Q_ell] to kill inv_v(Delta)
 * in Q/Z.
 */
inline bool type4_check(const TotallyRealField& F, const TotallyRealField& K0, const FieldDesc& K,
                        const CentralSimpleClass& delta, std::int64_t m, std::int64_t n) {
    if (!K0.is_rationals())
        throw unsupported_configuration("type4_check: only K0 = Q is supported");
    if (!K.is_imaginary()) throw std::domain_error("type4_check: K must be imaginary quadratic");
    if (delta.center() != K) throw std::domain_error("type4_check: Delta must be central over K");
    if (delta.degree() != m) throw std::domain_error("type4_check: m must equal deg(Delta)");
    if (n < 1) throw std::domain_error("type4_check: n must be positive");

    // Involution condition: sigma swaps the two places over a split prime and
    // fixes every other place.
    for (const auto& [place, inv] : delta.invariants()) {
        const arith::RationalPlace under = place.under();
        if (quadfields::splitting(K, under) != SplittingType::split)
            throw no_positive_involution(
                "Delta admits no positive involution: nonzero invariant at the sigma-fixed place " +
                brauer::place_key(place));
        const brauer::Slot other =
            place.slot() == brauer::Slot::first ? brauer::Slot::second : brauer::Slot::first;
        const brauer::InvariantValue partner =
            delta.invariant_at(brauer::AlgebraPlace(K, under, other));
        if (!(inv + partner).is_zero())
            throw no_positive_involution(
                "Delta admits no positive involution: invariants at the places over " +
                std::to_string(under.prime()) + " do not cancel");
    }

    if (F.degree() != n * m) return false;

    for (const auto& [place, inv] : delta.invariants()) {
        for (int deg : F.local_degrees(place.under().prime()))
            if (!inv.scaled(deg).is_zero()) return false;
    }
    return true;
}

}  // namespace qme::rm
