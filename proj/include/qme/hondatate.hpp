#pragma once

/**
 * @file hondatate.hpp
 * @brief Independent oracle: enumerate supersingular Weil numbers, compute
 *        centers and endomorphism-algebra invariants, and rebuild the simple
 *        supersingular menu from first principles.
 *
 * A supersingular Weil q-number has the normal form pi = sqrt(q) * zeta_n
 * with q = p^a, which this module enumerates directly as triples (p, a, n).
 * The invariants of End^0(A_pi) come from the standard Honda-Tate recipe,
 * here restricted to quadratic centers: at a place v | p of K = Q(pi),
 *   inv_v = (v(pi)/v(q)) * [K_v : Q_p]  in Q/Z,
 * and v(pi)/v(q) = 1/2 for every supersingular pi.  That recipe is imported
 * from the classical theory (Honda, Tate) as an external fact; on the range
 * enumerated here it reduces to "1/2 at each place over a split p, trivial
 * otherwise", and the Honda-Tate dimension formula
 *   2 dim(A_pi) = index(E) * [K : Q]
 * separates surfaces (split p, dim 2) from elliptic curves (dim 1).
 *
 * Nothing in this module consults the congruence conditions used by
 * qm::supersingular_menu, so agreement of the two menus is a genuine
 * cross-check; only condition (*) itself is shared, as specified.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qme/qm.hpp"

namespace qme::hondatate {

using brauer::CentralSimpleClass;
using quadfields::FieldDesc;
using quadfields::SplittingType;

/// pi = sqrt(p^a) * zeta_n.
struct SupersingularWeilNumber {
    std::int64_t p;
    int a;
    int n;
};

/// The field Q(pi): Q itself, a quadratic field, or something bigger.
struct CenterResult {
    enum class Kind { degree1, quadratic, too_large };
    Kind kind;
    std::optional<FieldDesc> field;  // set iff kind == quadratic

    static CenterResult degree1() { return {Kind::degree1, std::nullopt}; }
    static CenterResult quadratic(FieldDesc K) { return {Kind::quadratic, K}; }
    static CenterResult too_large() { return {Kind::too_large, std::nullopt}; }

    bool is_quadratic_imaginary() const {
        return kind == Kind::quadratic && field->is_imaginary();
    }
};

/**
 * The center Q(pi).  For even a the root of unity carries the whole field:
 * Q(pi) = Q(zeta_n).  For odd a the field is Q(sqrt(p) * zeta_n), quadratic
 * only in the cases resolved by quadfields::minimal_field_of_sqrtp_zeta.
 */
inline CenterResult center_of(const SupersingularWeilNumber& pi) {
    if (!arith::is_prime(pi.p)) throw std::domain_error("center_of: p must be prime");
    if (pi.a < 1 || pi.n < 1) throw std::domain_error("center_of: a and n must be positive");
    if (pi.a % 2 == 0) {
        switch (pi.n) {
            case 1:
            case 2:
                return CenterResult::degree1();
            case 3:
            case 4:
            case 6:
                return CenterResult::quadratic(quadfields::cyclotomic_quadratic(pi.n));
            default:
                return CenterResult::too_large();
        }
    }
    switch (pi.n) {
        case 1:
        case 2:
        case 3:
        case 4:
        case 6:
        case 8:
        case 12: {
            std::optional<FieldDesc> K = quadfields::minimal_field_of_sqrtp_zeta(pi.p, pi.a, pi.n);
            return K ? CenterResult::quadratic(*K) : CenterResult::too_large();
        }
        default:
            return CenterResult::too_large();
    }
}

/**
 * The class of End^0(A_pi) over its quadratic imaginary center: the division
 * quaternion with invariant 1/2 at both places over a split p, or the trivial
 * class of index 1 when p is inert or ramified (the local degree 2 doubles
 * 1/2 away).
 */
inline CentralSimpleClass endo_invariants(const SupersingularWeilNumber& pi) {
    const CenterResult center = center_of(pi);
    if (!center.is_quadratic_imaginary())
        throw std::domain_error("endo_invariants: the center must be imaginary quadratic");
    const FieldDesc K = *center.field;
    if (quadfields::splitting(K, pi.p) == SplittingType::split) {
        const arith::RationalPlace v = arith::RationalPlace::finite(pi.p);
        return CentralSimpleClass(
            K, 2,
            {{brauer::AlgebraPlace(K, v, brauer::Slot::first), brauer::InvariantValue::half()},
             {brauer::AlgebraPlace(K, v, brauer::Slot::second), brauer::InvariantValue::half()}});
    }
    return brauer::trivial_class(K, 1);
}

/// One enumerated isogeny class, with everything the admission filter saw.
struct EnumerationRow {
    SupersingularWeilNumber pi;
    CenterResult center;
    std::optional<CentralSimpleClass> endo;  // present iff center imaginary quadratic
    std::optional<int> dim;                  // present for degree-1 and imaginary quadratic centers
    bool admitted = false;
};

/**
 * Enumerate (p | S, a <= a_max, n <= n_max) and admit exactly the rows whose
 * isogeny class is a simple supersingular QM surface for D: imaginary
 * quadratic center, division endomorphism algebra of index 2, dimension 2,
 * condition (*), and class equality End^0 = D tensor K.
 */
inline std::vector<EnumerationRow> enumerate(const qm::QmDatum& datum, int a_max, int n_max) {
    std::vector<EnumerationRow> rows;
    for (const auto& [p, e] : datum.discriminant.factors) {
        for (int a = 1; a <= a_max; ++a) {
            for (int n = 1; n <= n_max; ++n) {
                EnumerationRow row;
                row.pi = SupersingularWeilNumber{p, a, n};
                row.center = center_of(row.pi);
                if (row.center.kind == CenterResult::Kind::degree1) {
                    row.dim = 1;  // supersingular elliptic curve, End^0 = D_{p,infty}
                } else if (row.center.is_quadratic_imaginary()) {
                    row.endo = endo_invariants(row.pi);
                    row.dim = static_cast<int>(row.endo->index() * row.center.field->degree()) / 2;
                    row.admitted = row.endo->index() == 2 && *row.dim == 2 &&
                                   qm::condition_star(datum, p, *row.center.field) &&
                                   *row.endo == brauer::base_change(datum.algebra, *row.center.field);
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

/**
 * The menu of Theorem-2.10 shape rebuilt by enumeration, deduplicated by
 * algebra and canonically sorted, for cross-validation against
 * qm::supersingular_menu.  Stable in a_max once a_max >= 2.
 */
inline std::vector<qm::SupersingularEntry> oracle_menu(const qm::QmDatum& datum, int a_max = 2,
                                                       int n_max = 60) {
    if (a_max < 2) throw std::domain_error("oracle_menu: a_max must be at least 2");
    if (n_max < 6) throw std::domain_error("oracle_menu: n_max must be at least 6");
    std::vector<qm::SupersingularEntry> entries;
    for (const EnumerationRow& row : enumerate(datum, a_max, n_max)) {
        if (!row.admitted) continue;
        bool merged = false;
        for (qm::SupersingularEntry& entry : entries) {
            if (entry.algebra == *row.endo) {
                if (std::find(entry.n_values.begin(), entry.n_values.end(), row.pi.n) ==
                    entry.n_values.end())
                    entry.n_values.push_back(row.pi.n);
                merged = true;
                break;
            }
        }
        if (!merged)
            entries.push_back(qm::SupersingularEntry{{row.pi.n},
                                                     *row.center.field,
                                                     row.pi.p,
                                                     *row.endo,
                                                     qm::Provenance::finite_field_unconditional});
    }
    for (qm::SupersingularEntry& entry : entries)
        std::sort(entry.n_values.begin(), entry.n_values.end());
    std::sort(entries.begin(), entries.end(),
              [](const qm::SupersingularEntry& x, const qm::SupersingularEntry& y) {
                  return x.n_values.front() < y.n_values.front();
              });
    return entries;
}

/// CSV dump of the full enumeration, one row per Weil number, for inspection.
inline void write_enumeration_csv(std::ostream& out, const std::vector<EnumerationRow>& rows) {
    out << "p,a,n,center,endo,index,dim,admitted\n";
    for (const EnumerationRow& row : rows) {
        out << row.pi.p << ',' << row.pi.a << ',' << row.pi.n << ',';
        switch (row.center.kind) {
            case CenterResult::Kind::degree1:
                out << "Q";
                break;
            case CenterResult::Kind::quadratic:
                out << "sqrt(" << row.center.field->d() << ")";
                break;
            case CenterResult::Kind::too_large:
                out << "toolarge";
                break;
        }
        out << ',';
        if (row.endo) {
            bool first = true;
            for (const auto& [place, inv] : row.endo->invariants()) {
                if (!first) out << ';';
                first = false;
                out << brauer::place_key(place) << ':' << inv.numerator() << '/' << inv.denominator();
            }
            if (row.endo->is_trivial()) out << "trivial";
            out << ',' << row.endo->index();
        } else {
            out << "-,-";
        }
        out << ',';
        if (row.dim)
            out << *row.dim;
        else
            out << '-';
        out << ',' << (row.admitted ? 1 : 0) << '\n';
    }
}

}  // namespace qme::hondatate
