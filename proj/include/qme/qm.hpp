#pragma once

/**
 * @file qm.hpp
 * @brief Classifier for the endomorphism algebras of abelian surfaces with
 *        quaternion multiplication by an indefinite rational quaternion
 *        division algebra D.
 *
 * The menu has a fixed shape.  Non-simple surfaces give Mat_2(K) for any
 * imaginary quadratic K splitting D (never Mat_2(Q)), and Mat_2(D_{p,infty})
 * for every prime p, the latter occurring exactly for supersingular C over a
 * base field containing F_{p^2}.  Simple surfaces give D itself, or - only in
 * positive characteristic, with the surface supersingular - D tensor Q(zeta_n)
 * for n in {3, 4, 6}, subject to a congruence condition on the discriminant.
 *
 * Entries derived over finite fields are unconditional; completeness over
 * arbitrary base fields additionally rests on the descent hypothesis (H),
 * which classify() records as a note rather than silently assuming.
 */

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qme/brauer.hpp"

namespace qme::qm {

using brauer::CentralSimpleClass;
using quadfields::FieldDesc;
using quadfields::SplittingType;

/// An indefinite rational quaternion division algebra with its discriminant.
struct QmDatum {
    CentralSimpleClass algebra;
    arith::PrimeFactorization discriminant;
};

inline QmDatum make_qm_datum(const CentralSimpleClass& D) {
    if (!D.center().is_rationals() || D.degree() != 2)
        throw std::domain_error("QmDatum: D must be a quaternion class over Q");
    if (D.index() != 2) throw std::domain_error("QmDatum: D must be a division algebra");
    std::int64_t S = 1;
    arith::PrimeFactorization fact;
    for (const auto& [place, inv] : D.invariants()) {
        if (place.under().is_infinite())
            throw std::domain_error("QmDatum: D must be indefinite (unramified at infinity)");
        S *= place.under().prime();
        fact.factors.emplace_back(place.under().prime(), 1);
    }
    if (fact.factors.size() < 2 || fact.factors.size() % 2 != 0)
        throw std::domain_error("QmDatum: an indefinite division quaternion algebra is ramified at an even number >= 2 of primes");
    fact.value = S;
    return QmDatum{D, fact};
}

inline QmDatum qm_datum_from_discriminant(std::int64_t S) {
    return make_qm_datum(brauer::quaternion_from_discriminant(S, brauer::QuaternionKind::indefinite));
}

enum class Provenance { finite_field_unconditional, arbitrary_field_under_H };

/// One simple supersingular menu entry: E = D tensor K with its labels.
struct SupersingularEntry {
    std::vector<int> n_values;  // cyclotomic labels; {3,6} collapse to one algebra
    FieldDesc field;
    std::int64_t p;
    CentralSimpleClass algebra;
    Provenance provenance = Provenance::finite_field_unconditional;

    friend bool operator==(const SupersingularEntry&, const SupersingularEntry&) = default;
};

/**
 * Condition (*): p splits in K and every other prime dividing the
 * discriminant is non-split in K (its completion stays a field).
 */
inline bool condition_star(const QmDatum& datum, std::int64_t p, const FieldDesc& K) {
    if (!K.is_imaginary()) throw std::domain_error("condition_star: K must be imaginary quadratic");
    if (!datum.discriminant.divisible_by(p))
        throw std::domain_error("condition_star: p must divide the discriminant");
    if (quadfields::splitting(K, p) != SplittingType::split) return false;
    for (const auto& [ell, e] : datum.discriminant.factors) {
        if (ell == p) continue;
        if (quadfields::splitting(K, ell) == SplittingType::split) return false;
    }
    return true;
}

/**
 * The imaginary quadratic splitting fields of D with |disc| <= field_bound,
 * listed by d.  This is the Mat_2(K) part of the non-simple menu; the
 * Mat_2(D_{p,infty}) family needs no enumeration (it exists for every p) and
 * Mat_2(Q) never occurs.
 */
inline std::vector<std::int64_t> nonsimple_menu(const QmDatum& datum, std::int64_t field_bound) {
    if (field_bound < 0) throw std::domain_error("nonsimple_menu: field_bound must be nonnegative");
    std::vector<std::int64_t> fields;
    for (std::int64_t d = -1; -d <= field_bound; --d) {
        if (!arith::is_squarefree(d)) continue;
        const FieldDesc K = FieldDesc::quadratic(d);
        if (-K.discriminant() > field_bound) continue;
        if (brauer::splits(K, datum.algebra)) fields.push_back(d);
    }
    std::sort(fields.begin(), fields.end(), [](std::int64_t x, std::int64_t y) {
        return -FieldDesc::quadratic(x).discriminant() < -FieldDesc::quadratic(y).discriminant();
    });
    return fields;
}

/**
 * The simple supersingular menu: for each n in {3, 4, 6}, the entry
 * (n, Q(zeta_n), p, D tensor Q(zeta_n)) is present iff exactly one prime
 * p | S satisfies p = 1 mod n and every other prime ell | S satisfies
 * ell | n or ell = -1 mod n.  n = 3 and n = 6 name the same field, so their
 * entries are deduplicated into one algebra carrying both labels.
 */
inline std::vector<SupersingularEntry> supersingular_menu(const QmDatum& datum) {
    std::vector<SupersingularEntry> entries;
    for (int n : {3, 4, 6}) {
        std::vector<std::int64_t> ones;
        for (const auto& [p, e] : datum.discriminant.factors)
            if (p % n == 1) ones.push_back(p);
        if (ones.size() != 1) continue;
        const std::int64_t p = ones.front();
        bool admissible = true;
        for (const auto& [ell, e] : datum.discriminant.factors) {
            if (ell == p) continue;
            if (n % ell != 0 && (ell + 1) % n != 0) {
                admissible = false;
                break;
            }
        }
        if (!admissible) continue;
        const FieldDesc K = quadfields::cyclotomic_quadratic(n);
        CentralSimpleClass E = brauer::base_change(datum.algebra, K);
        bool merged = false;
        for (SupersingularEntry& entry : entries) {
            if (entry.algebra == E) {
                entry.n_values.push_back(n);
                merged = true;
                break;
            }
        }
        if (!merged)
            entries.push_back(SupersingularEntry{{n}, K, p, std::move(E), Provenance::finite_field_unconditional});
    }
    std::sort(entries.begin(), entries.end(), [](const SupersingularEntry& x, const SupersingularEntry& y) {
        return x.n_values.front() < y.n_values.front();
    });
    return entries;
}

/// The complete menu of Theorem-1.1 shape.
struct ClassificationReport {
    std::int64_t discriminant = 0;
    std::int64_t field_bound = 0;
    CentralSimpleClass d_algebra;               // the always-present simple entry E = D
    std::vector<std::int64_t> splitting_fields; // Mat_2(K) examples, by d
    std::vector<SupersingularEntry> supersingular;
    // Imaginary quadratic K satisfying (*) beyond the cyclotomic list; such
    // algebras can occur only if hypothesis (H) fails.  Filled on request.
    std::vector<SupersingularEntry> star_admissible;
    bool star_admissible_requested = false;
};

inline ClassificationReport classify(const QmDatum& datum, std::int64_t field_bound = 1000,
                                     bool include_star_admissible = false) {
    ClassificationReport report{datum.discriminant.value,
                                field_bound,
                                datum.algebra,
                                nonsimple_menu(datum, field_bound),
                                supersingular_menu(datum),
                                {},
                                include_star_admissible};
    if (include_star_admissible) {
        for (std::int64_t d = -1; -d <= field_bound; --d) {
            if (!arith::is_squarefree(d)) continue;
            const FieldDesc K = FieldDesc::quadratic(d);
            if (-K.discriminant() > field_bound) continue;
            for (const auto& [p, e] : datum.discriminant.factors) {
                if (!condition_star(datum, p, K)) continue;
                CentralSimpleClass E = brauer::base_change(datum.algebra, K);
                const bool listed = std::any_of(
                    report.supersingular.begin(), report.supersingular.end(),
                    [&](const SupersingularEntry& entry) { return entry.algebra == E; });
                if (!listed)
                    report.star_admissible.push_back(
                        SupersingularEntry{{}, K, p, std::move(E), Provenance::arbitrary_field_under_H});
            }
        }
    }
    return report;
}

}  // namespace qme::qm
