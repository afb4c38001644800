#pragma once

/**
 * @file serialize.hpp
 * @brief Canonical JSON and human-readable text for classes, reports, menus,
 *        and RM shapes, plus ingestion of explicit field-spec documents.
 *
 * JSON is canonical: object keys are sorted (nlohmann's default map), arrays
 * follow the library's canonical place/entry order, and every number is an
 * exact integer.  Serializing, parsing, and serializing again is
 * byte-identical.
 */

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qme/hondatate.hpp"
#include "qme/qm.hpp"
#include "qme/rm.hpp"

namespace qme::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Central simple classes
// ---------------------------------------------------------------------------

inline json csc_to_json(const brauer::CentralSimpleClass& A) {
    json inv = json::array();
    for (const auto& [place, value] : A.invariants())
        inv.push_back(json::array({brauer::place_key(place), value.numerator(), value.denominator()}));
    json j;
    j["center"] = A.center().is_rationals() ? json("Q") : json(A.center().d());
    j["degree"] = A.degree();
    j["inv"] = std::move(inv);
    return j;
}

inline brauer::AlgebraPlace place_from_key(const quadfields::FieldDesc& center, const std::string& key) {
    std::string stem = key;
    brauer::Slot slot = brauer::Slot::only;
    if (stem.size() > 2 && stem.substr(stem.size() - 2) == ".1") {
        slot = brauer::Slot::first;
        stem = stem.substr(0, stem.size() - 2);
    } else if (stem.size() > 2 && stem.substr(stem.size() - 2) == ".2") {
        slot = brauer::Slot::second;
        stem = stem.substr(0, stem.size() - 2);
    }
    arith::RationalPlace under = arith::RationalPlace::infinite();
    if (stem != "inf") {
        std::int64_t p = 0;
        try {
            std::size_t pos = 0;
            p = std::stoll(stem, &pos);
            if (pos != stem.size()) throw std::invalid_argument(stem);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("place key: malformed place '" + key + "'");
        }
        under = arith::RationalPlace::finite(p);
    }
    return brauer::AlgebraPlace(center, under, slot);
}

inline brauer::CentralSimpleClass csc_from_json(const json& j) {
    if (!j.is_object() || !j.contains("center") || !j.contains("degree") || !j.contains("inv"))
        throw std::invalid_argument("algebra: expected an object with center, degree, inv");
    quadfields::FieldDesc center = quadfields::FieldDesc::rationals();
    if (j["center"].is_string()) {
        if (j["center"] != "Q") throw std::invalid_argument("algebra: center must be \"Q\" or an integer d");
    } else if (j["center"].is_number_integer()) {
        center = quadfields::FieldDesc::quadratic(j["center"].get<std::int64_t>());
    } else {
        throw std::invalid_argument("algebra: center must be \"Q\" or an integer d");
    }
    if (!j["degree"].is_number_integer()) throw std::invalid_argument("algebra: degree must be an integer");
    std::vector<std::pair<brauer::AlgebraPlace, brauer::InvariantValue>> invs;
    for (const json& entry : j["inv"]) {
        if (!entry.is_array() || entry.size() != 3)
            throw std::invalid_argument("algebra: inv entries are [place, num, den] triples");
        invs.emplace_back(place_from_key(center, entry[0].get<std::string>()),
                          brauer::InvariantValue::make(entry[1].get<std::int64_t>(),
                                                       entry[2].get<std::int64_t>()));
    }
    return brauer::CentralSimpleClass(center, j["degree"].get<std::int64_t>(), std::move(invs));
}

inline std::string field_name(const quadfields::FieldDesc& K) {
    return K.is_rationals() ? "Q" : "Q(sqrt(" + std::to_string(K.d()) + "))";
}

inline std::string csc_to_text(const brauer::CentralSimpleClass& A) {
    std::ostringstream out;
    out << "center " << field_name(A.center()) << ", degree " << A.degree() << ", inv {";
    bool first = true;
    for (const auto& [place, value] : A.invariants()) {
        if (!first) out << ", ";
        first = false;
        out << brauer::place_key(place) << ": " << value.numerator() << "/" << value.denominator();
    }
    out << "}";
    return out.str();
}

// ---------------------------------------------------------------------------
// QM classification reports and oracle menus
// ---------------------------------------------------------------------------

inline std::string provenance_label(qm::Provenance p) {
    return p == qm::Provenance::finite_field_unconditional ? "finite-field-unconditional"
                                                           : "arbitrary-field-under-H";
}

inline json entry_to_json(const qm::SupersingularEntry& entry) {
    json j;
    j["algebra"] = csc_to_json(entry.algebra);
    j["field_d"] = entry.field.d();
    j["n"] = entry.n_values;
    j["p"] = entry.p;
    j["provenance"] = provenance_label(entry.provenance);
    return j;
}

inline std::string entry_labels(const qm::SupersingularEntry& entry) {
    std::ostringstream out;
    out << "n in {";
    for (std::size_t i = 0; i < entry.n_values.size(); ++i) {
        if (i) out << ",";
        out << entry.n_values[i];
    }
    out << "}";
    return out.str();
}

inline std::string discriminant_product(const arith::PrimeFactorization& f) {
    std::ostringstream out;
    out << f.value << " = ";
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (i) out << " * ";
        out << f.factors[i].first;
    }
    return out.str();
}

inline json report_to_json(const qm::ClassificationReport& report) {
    json nonsimple;
    nonsimple["mat2_imaginary_quadratic"] = {
        {"criterion", "every imaginary quadratic K splitting D"},
        {"fields_d", report.splitting_fields},
    };
    nonsimple["mat2_dpinf"] = {
        {"primes", "all"},
        {"occurs_iff", "C supersingular and the base field contains F_{p^2}"},
    };
    json simple;
    simple["d_itself"] = csc_to_json(report.d_algebra);
    simple["supersingular"] = json::array();
    for (const qm::SupersingularEntry& entry : report.supersingular)
        simple["supersingular"].push_back(entry_to_json(entry));
    if (report.star_admissible_requested) {
        simple["star_admissible"] = json::array();
        for (const qm::SupersingularEntry& entry : report.star_admissible)
            simple["star_admissible"].push_back(entry_to_json(entry));
    }
    json j;
    j["discriminant"] = report.discriminant;
    j["field_bound"] = report.field_bound;
    j["nonsimple"] = std::move(nonsimple);
    j["simple"] = std::move(simple);
    j["notes"] = json::array({"supersingular entries are unconditional over finite fields",
                              "completeness over arbitrary base fields is conditional on hypothesis (H)"});
    return j;
}

inline std::string report_to_text(const qm::ClassificationReport& report,
                                  const arith::PrimeFactorization& S) {
    std::ostringstream out;
    out << "QM endomorphism algebras for D of discriminant " << discriminant_product(S) << "\n";
    out << "non-simple (A isogenous to C^2):\n";
    out << "  Mat_2(K) for every imaginary quadratic K splitting D; within |disc K| <= "
        << report.field_bound << ":\n    ";
    if (report.splitting_fields.empty()) {
        out << "(none)";
    } else {
        out << "d = ";
        for (std::size_t i = 0; i < report.splitting_fields.size(); ++i) {
            if (i) out << ", ";
            out << report.splitting_fields[i];
        }
    }
    out << "\n";
    out << "  Mat_2(D_{p,inf}) for every prime p; occurs iff C is supersingular and the base field "
           "contains F_{p^2}\n";
    out << "simple:\n";
    out << "  E = D (occurs for a generic complex QM surface)\n";
    out << "  supersingular over finite fields (unconditional):\n";
    if (report.supersingular.empty()) out << "    (none)\n";
    for (const qm::SupersingularEntry& entry : report.supersingular) {
        out << "    " << entry_labels(entry) << ": p = " << entry.p << ", K = "
            << field_name(entry.field) << ", E = D (x) " << field_name(entry.field) << "  ["
            << csc_to_text(entry.algebra) << "]\n";
    }
    if (report.star_admissible_requested) {
        out << "  (*)-admissible fields beyond the list above (occur only if (H) fails):\n";
        if (report.star_admissible.empty()) out << "    (none)\n";
        for (const qm::SupersingularEntry& entry : report.star_admissible) {
            out << "    p = " << entry.p << ", K = " << field_name(entry.field) << ", E = D (x) "
                << field_name(entry.field) << "  [conditional on (H)]\n";
        }
    }
    out << "note: completeness over arbitrary base fields is conditional on hypothesis (H)\n";
    return out.str();
}

inline json oracle_result_to_json(const qm::QmDatum& datum, int a_max, int n_max,
                                  const std::vector<qm::SupersingularEntry>& classifier,
                                  const std::vector<qm::SupersingularEntry>& oracle, bool agree) {
    json j;
    j["discriminant"] = datum.discriminant.value;
    j["a_max"] = a_max;
    j["n_max"] = n_max;
    j["classifier_menu"] = json::array();
    for (const auto& entry : classifier) j["classifier_menu"].push_back(entry_to_json(entry));
    j["oracle_menu"] = json::array();
    for (const auto& entry : oracle) j["oracle_menu"].push_back(entry_to_json(entry));
    j["agree"] = agree;
    return j;
}

inline std::string oracle_result_to_text(const qm::QmDatum& datum, int a_max, int n_max,
                                         const std::vector<qm::SupersingularEntry>& classifier,
                                         const std::vector<qm::SupersingularEntry>& oracle,
                                         bool agree) {
    std::ostringstream out;
    out << "discriminant " << discriminant_product(datum.discriminant) << "; a_max = " << a_max
        << ", n_max = " << n_max << "\n";
    auto menu = [&](const char* title, const std::vector<qm::SupersingularEntry>& entries) {
        out << title << ":\n";
        if (entries.empty()) out << "  (empty)\n";
        for (const qm::SupersingularEntry& entry : entries) {
            out << "  " << entry_labels(entry) << ": p = " << entry.p << ", K = "
                << field_name(entry.field) << ", E = D (x) " << field_name(entry.field) << "\n";
        }
    };
    menu("classifier menu", classifier);
    menu("oracle menu", oracle);
    out << (agree ? "AGREE" : "DISAGREE") << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Hilbert symbol tables
// ---------------------------------------------------------------------------

struct HilbertTable {
    std::int64_t a;
    std::int64_t b;
    std::vector<std::pair<std::string, int>> symbols;  // place key -> +-1
    std::vector<std::string> ramified;
    std::int64_t discriminant;  // product of finite ramified primes
    bool definite;              // ramified at infinity
};

inline HilbertTable hilbert_table(std::int64_t a, std::int64_t b) {
    const brauer::CentralSimpleClass D = brauer::quaternion_from_symbol(a, b);
    HilbertTable table{a, b, {}, {}, 1, false};
    table.symbols.emplace_back("inf", arith::hilbert_symbol(a, b, arith::RationalPlace::infinite()));
    std::vector<std::int64_t> primes{2};
    for (std::int64_t t : {a < 0 ? -a : a, b < 0 ? -b : b})
        for (const auto& [p, e] : arith::factorize(t).factors) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (std::int64_t p : primes)
        table.symbols.emplace_back(std::to_string(p),
                                   arith::hilbert_symbol(a, b, arith::RationalPlace::finite(p)));
    for (const auto& [place, inv] : D.invariants()) {
        table.ramified.push_back(brauer::place_key(place));
        if (place.under().is_infinite())
            table.definite = true;
        else
            table.discriminant *= place.under().prime();
    }
    return table;
}

inline json hilbert_table_to_json(const HilbertTable& table) {
    json j;
    j["a"] = table.a;
    j["b"] = table.b;
    j["symbols"] = json::array();
    for (const auto& [place, s] : table.symbols) j["symbols"].push_back(json::array({place, s}));
    j["ramified"] = table.ramified;
    j["discriminant"] = table.discriminant;
    j["definite"] = table.definite;
    return j;
}

inline std::string hilbert_table_to_text(const HilbertTable& table) {
    std::ostringstream out;
    out << "hilbert symbols for (a, b) = (" << table.a << ", " << table.b << ")\n";
    for (const auto& [place, s] : table.symbols)
        out << "  place " << place << ": " << (s > 0 ? "+1" : "-1") << "\n";
    out << "ramified places: ";
    if (table.ramified.empty()) out << "(none)";
    for (std::size_t i = 0; i < table.ramified.size(); ++i) {
        if (i) out << ", ";
        out << table.ramified[i];
    }
    out << "\n";
    out << "quaternion discriminant: " << table.discriminant
        << (table.definite ? " (definite at infinity)" : " (indefinite)") << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// RM shapes
// ---------------------------------------------------------------------------

inline json field_to_json(const rm::TotallyRealField& F) {
    switch (F.kind()) {
        case rm::TotallyRealField::Kind::rationals:
            return json("Q");
        case rm::TotallyRealField::Kind::real_quadratic:
            return json(F.quad_d());
        default:
            return json({{"degree", F.degree()}});
    }
}

inline std::string delta_to_text(const rm::DeltaDesc& delta) {
    switch (delta.kind) {
        case rm::DeltaDesc::Kind::field_k0:
            return "K0";
        case rm::DeltaDesc::Kind::dpinf:
            return "D_{" + std::to_string(delta.p) + ",inf}";
        case rm::DeltaDesc::Kind::dinf1inf2:
            return "D_{inf1,inf2}";
        case rm::DeltaDesc::Kind::dpinf_tensor_k0_family:
            return "D_{" + std::to_string(delta.p) + ",inf} (x) K0";
        default:
            return csc_to_text(*delta.csc);
    }
}

inline json shape_to_json(const rm::RmShape& shape) {
    static const char* type_names[] = {"I", "II", "III", "IV"};
    json delta;
    switch (shape.delta.kind) {
        case rm::DeltaDesc::Kind::field_k0:
            delta["kind"] = "field_k0";
            break;
        case rm::DeltaDesc::Kind::dpinf:
            delta["kind"] = "dpinf";
            delta["p"] = shape.delta.p;
            break;
        case rm::DeltaDesc::Kind::dinf1inf2:
            delta["kind"] = "dinf1inf2";
            delta["p"] = shape.delta.p;
            break;
        case rm::DeltaDesc::Kind::dpinf_tensor_k0_family:
            delta["kind"] = "dpinf_tensor_k0";
            delta["p"] = shape.delta.p;
            break;
        case rm::DeltaDesc::Kind::algebra:
            delta["kind"] = "algebra";
            break;
    }
    if (shape.delta.csc) delta["algebra"] = csc_to_json(*shape.delta.csc);
    json j;
    j["type"] = type_names[static_cast<int>(shape.type)];
    j["k0"] = field_to_json(shape.k0);
    j["n"] = shape.n;
    j["delta"] = std::move(delta);
    j["conditional_on_H"] = shape.conditional_on_H;
    j["note"] = shape.note;
    return j;
}

inline std::string shape_to_text(const rm::RmShape& shape) {
    std::ostringstream out;
    out << "Mat_" << shape.n << "(" << delta_to_text(shape.delta) << "), K0 = " << shape.k0.name();
    std::vector<std::string> tags;
    if (shape.conditional_on_H) tags.push_back("conditional on (H)");
    if (!shape.note.empty()) tags.push_back(shape.note);
    if (!tags.empty()) {
        out << " [";
        for (std::size_t i = 0; i < tags.size(); ++i) {
            if (i) out << "; ";
            out << tags[i];
        }
        out << "]";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Explicit field-spec documents
// ---------------------------------------------------------------------------

inline rm::TotallyRealField parse_field_spec(const json& j);

inline rm::SubfieldEntry parse_subfield_entry(const json& j) {
    rm::SubfieldEntry entry{rm::TotallyRealField::rationals(), {}};
    if (j.is_object() && j.contains("field")) {
        entry.field = parse_field_spec(j["field"]);
        if (j.contains("relative_local")) {
            if (!j["relative_local"].is_object())
                throw std::invalid_argument("field spec: relative_local must map place keys to degree lists");
            for (const auto& [key, degs] : j["relative_local"].items()) {
                if (!degs.is_array() || degs.empty())
                    throw std::invalid_argument("field spec: relative_local." + key +
                                                " must be a nonempty array of degrees");
                entry.relative_local[key] = degs.get<std::vector<int>>();
            }
        }
    } else {
        entry.field = parse_field_spec(j);
    }
    return entry;
}

inline rm::TotallyRealField parse_field_spec(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "q" || s == "Q") return rm::TotallyRealField::rationals();
        if (s.rfind("sqrt", 0) == 0) {
            std::int64_t d = 0;
            try {
                d = std::stoll(s.substr(4));
            } catch (const std::logic_error&) {
                throw std::invalid_argument("field spec: malformed field name '" + s + "'");
            }
            return rm::TotallyRealField::real_quadratic(d);
        }
        throw std::invalid_argument("field spec: unknown field name '" + s +
                                    "' (expected \"q\" or \"sqrt<d>\")");
    }
    if (!j.is_object()) throw std::invalid_argument("field spec: expected a string or an object");
    if (!j.contains("degree") || !j["degree"].is_number_integer())
        throw std::invalid_argument("field spec: missing integer \"degree\"");
    rm::ExplicitData data;
    data.degree = j["degree"].get<std::int64_t>();
    if (j.contains("local")) {
        if (!j["local"].is_object())
            throw std::invalid_argument("field spec: \"local\" must map primes to degree lists");
        for (const auto& [key, degs] : j["local"].items()) {
            std::int64_t p = 0;
            try {
                std::size_t pos = 0;
                p = std::stoll(key, &pos);
                if (pos != key.size()) throw std::invalid_argument(key);
            } catch (const std::logic_error&) {
                throw std::invalid_argument("field spec: local key '" + key + "' is not a prime");
            }
            if (!degs.is_array() || degs.empty())
                throw std::invalid_argument("field spec: local." + key +
                                            " must be a nonempty array of local degrees");
            data.local[p] = degs.get<std::vector<int>>();
        }
    }
    if (j.contains("subfields")) {
        if (!j["subfields"].is_array())
            throw std::invalid_argument("field spec: \"subfields\" must be an array");
        for (const json& sub : j["subfields"]) data.subfields.push_back(parse_subfield_entry(sub));
    }
    try {
        return rm::TotallyRealField::explicit_table(std::move(data));
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("field spec: ") + e.what());
    }
}

}  // namespace qme::io
