// Command-line surface over the classifiers: QM classification by
// discriminant, the Honda-Tate cross-check, Hilbert symbol tables, and the
// RM Type I-IV queries.  Exit codes: 0 success (or oracle agreement),
// 1 oracle disagreement, 2 invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qme/serialize.hpp"

namespace {

using qme::io::json;

int run_classify_qm(std::int64_t disc, std::int64_t field_bound, bool star, bool as_json) {
    const qme::qm::QmDatum datum = qme::qm::qm_datum_from_discriminant(disc);
    const qme::qm::ClassificationReport report = qme::qm::classify(datum, field_bound, star);
    if (as_json)
        std::cout << qme::io::report_to_json(report).dump() << "\n";
    else
        std::cout << qme::io::report_to_text(report, datum.discriminant);
    return 0;
}

int run_oracle(std::int64_t disc, int a_max, int n_max, const std::string& csv_path, bool as_json) {
    const qme::qm::QmDatum datum = qme::qm::qm_datum_from_discriminant(disc);
    const auto classifier = qme::qm::supersingular_menu(datum);
    const auto oracle = qme::hondatate::oracle_menu(datum, a_max, n_max);
    const bool agree = classifier == oracle;
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) {
            std::cerr << "error: cannot open " << csv_path << " for writing\n";
            return 2;
        }
        qme::hondatate::write_enumeration_csv(csv, qme::hondatate::enumerate(datum, a_max, n_max));
    }
    if (as_json)
        std::cout << qme::io::oracle_result_to_json(datum, a_max, n_max, classifier, oracle, agree).dump()
                  << "\n";
    else
        std::cout << qme::io::oracle_result_to_text(datum, a_max, n_max, classifier, oracle, agree);
    return agree ? 0 : 1;
}

int run_hilbert(std::int64_t a, std::int64_t b, bool as_json) {
    const qme::io::HilbertTable table = qme::io::hilbert_table(a, b);
    if (as_json)
        std::cout << qme::io::hilbert_table_to_json(table).dump() << "\n";
    else
        std::cout << qme::io::hilbert_table_to_text(table);
    return 0;
}

qme::rm::TotallyRealField load_field(const std::string& field, const std::string& field_file) {
    if (!field_file.empty()) {
        std::ifstream in(field_file);
        if (!in) throw std::invalid_argument("cannot open field spec file '" + field_file + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("field spec: " + std::string(e.what()));
        }
        return qme::io::parse_field_spec(j);
    }
    return qme::io::parse_field_spec(json(field));
}

void print_shapes(const std::string& header, const std::vector<qme::rm::RmShape>& shapes,
                  bool as_json) {
    if (as_json) {
        json j;
        j["shapes"] = json::array();
        for (const auto& shape : shapes) j["shapes"].push_back(qme::io::shape_to_json(shape));
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << header << "\n";
    for (const auto& shape : shapes) std::cout << "  " << qme::io::shape_to_text(shape) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"endomorphism-algebra classification for QM abelian surfaces and RM abelian varieties"};
    app.require_subcommand(1);

    // classify-qm
    std::int64_t cq_disc = 0;
    std::int64_t cq_bound = 1000;
    bool cq_star = false;
    bool cq_json = false;
    CLI::App* classify = app.add_subcommand(
        "classify-qm", "menu of endomorphism algebras for the QM surface of a discriminant");
    classify->add_option("discriminant", cq_disc, "squarefree product of an even number of primes")
        ->required();
    classify->add_option("--field-bound", cq_bound, "list splitting fields with |disc| up to this bound");
    classify->add_flag("--star-admissible", cq_star, "also list (*)-admissible fields (conditional)");
    classify->add_flag("--json", cq_json, "canonical JSON output");

    // oracle
    std::int64_t or_disc = 0;
    int or_a_max = 2;
    int or_n_max = -1;
    std::string or_csv;
    bool or_json = false;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "cross-check the supersingular menu against the Weil-number enumeration");
    oracle->add_option("discriminant", or_disc)->required();
    oracle->add_option("--a-max", or_a_max, "enumerate q = p^a up to this a (default 2)");
    oracle->add_option("--n-max", or_n_max, "enumerate zeta_n up to this n (default 60)");
    oracle->add_option("--csv", or_csv, "dump the full enumeration as CSV to this path");
    oracle->add_flag("--json", or_json);

    // hilbert
    std::int64_t hi_a = 0, hi_b = 0;
    bool hi_json = false;
    CLI::App* hilbert = app.add_subcommand("hilbert", "Hilbert symbols of (a,b) at all relevant places");
    hilbert->add_option("a", hi_a)->required();
    hilbert->add_option("b", hi_b)->required();
    hilbert->add_flag("--json", hi_json);

    // rm
    std::string rm_field, rm_field_file, rm_k0 = "q", rm_delta_file;
    bool rm_t1 = false, rm_t2 = false, rm_t3 = false, rm_t4 = false;
    bool rm_assume_h = false, rm_json = false;
    std::int64_t rm_p = 0, rm_delta_disc = 0, rm_n = 1, rm_cm_d = 0, rm_ram = 0;
    CLI::App* rmcmd = app.add_subcommand("rm", "Albert Type I-IV shapes for RM abelian varieties");
    rmcmd->add_option("--field", rm_field, "totally real field: q or sqrt<d>");
    rmcmd->add_option("--field-file", rm_field_file, "explicit field spec (JSON document)");
    rmcmd->add_flag("--type1", rm_t1);
    rmcmd->add_flag("--type2", rm_t2);
    rmcmd->add_flag("--type3", rm_t3);
    rmcmd->add_flag("--type4", rm_t4);
    rmcmd->add_option("--p", rm_p, "characteristic (type 3)");
    rmcmd->add_flag("--assume-h", rm_assume_h, "assume hypothesis (H) for the sharp type-3 list");
    rmcmd->add_option("--k0", rm_k0, "subfield K0: q or sqrt<d> (type 2)");
    rmcmd->add_option("--delta-disc", rm_delta_disc, "indefinite quaternion Delta over Q by discriminant (type 2)");
    rmcmd->add_option("--delta-file", rm_delta_file, "Delta as a JSON algebra (type 2/4)");
    rmcmd->add_option("--n", rm_n, "matrix size n");
    rmcmd->add_option("--cm-d", rm_cm_d, "imaginary quadratic center K = Q(sqrt(d)) (type 4)");
    rmcmd->add_option("--ram", rm_ram, "type-4 quaternion Delta ramified at the places over this split prime");
    rmcmd->add_flag("--json", rm_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*classify) return run_classify_qm(cq_disc, cq_bound, cq_star, cq_json);

        if (*oracle) {
            if (or_n_max < 0) {
                or_n_max = 60;
                if (const char* env = std::getenv("QME_ORACLE_NMAX")) {
                    std::size_t pos = 0;
                    or_n_max = std::stoi(env, &pos);
                    if (pos != std::string(env).size())
                        throw std::invalid_argument("QME_ORACLE_NMAX must be an integer");
                }
            }
            return run_oracle(or_disc, or_a_max, or_n_max, or_csv, or_json);
        }

        if (*hilbert) return run_hilbert(hi_a, hi_b, hi_json);

        if (*rmcmd) {
            if (rm_t1 + rm_t2 + rm_t3 + rm_t4 != 1)
                throw std::invalid_argument("rm: choose exactly one of --type1 --type2 --type3 --type4");
            if (rm_field.empty() == rm_field_file.empty())
                throw std::invalid_argument("rm: give exactly one of --field or --field-file");
            const qme::rm::TotallyRealField F = load_field(rm_field, rm_field_file);

            if (rm_t1) {
                print_shapes("Type I shapes for F = " + F.name() + " (g = " + std::to_string(F.degree()) + "):",
                             qme::rm::type1_shapes(F), rm_json);
                return 0;
            }
            if (rm_t3) {
                if (rm_p == 0) throw std::invalid_argument("rm: --type3 requires --p");
                const auto shapes = qme::rm::type3_shapes(F, rm_p, rm_assume_h);
                print_shapes("Type III shapes for F = " + F.name() + ", p = " + std::to_string(rm_p) +
                                 (rm_assume_h ? ", assuming (H):" : ", without (H):"),
                             shapes, rm_json);
                return 0;
            }
            if (rm_t2) {
                const qme::rm::TotallyRealField K0 = qme::io::parse_field_spec(json(rm_k0));
                std::optional<qme::brauer::CentralSimpleClass> delta;
                std::string delta_desc;
                if (!rm_delta_file.empty()) {
                    std::ifstream in(rm_delta_file);
                    if (!in) throw std::invalid_argument("cannot open '" + rm_delta_file + "'");
                    delta = qme::io::csc_from_json(json::parse(in));
                    delta_desc = "Delta [" + qme::io::csc_to_text(*delta) + "]";
                } else if (rm_delta_disc != 0) {
                    delta = qme::brauer::quaternion_from_discriminant(
                        rm_delta_disc, qme::brauer::QuaternionKind::indefinite);
                    delta_desc = "Delta of discriminant " + std::to_string(rm_delta_disc) + " over Q";
                } else {
                    throw std::invalid_argument("rm: --type2 requires --delta-disc or --delta-file");
                }
                const bool ok = qme::rm::type2_check(F, K0, *delta, rm_n);
                if (rm_json) {
                    std::cout << json{{"realizable", ok}, {"type", "II"}}.dump() << "\n";
                } else {
                    std::cout << "Type II for F = " << F.name() << ", " << delta_desc << ", n = "
                              << rm_n << ": " << (ok ? "realizable" : "not realizable") << "\n";
                }
                return 0;
            }
            // type 4
            std::optional<qme::brauer::CentralSimpleClass> delta;
            if (!rm_delta_file.empty()) {
                std::ifstream in(rm_delta_file);
                if (!in) throw std::invalid_argument("cannot open '" + rm_delta_file + "'");
                delta = qme::io::csc_from_json(json::parse(in));
            } else if (rm_cm_d != 0 && rm_ram != 0) {
                delta = qme::brauer::quaternion_over_split_prime(
                    qme::quadfields::FieldDesc::quadratic(rm_cm_d), rm_ram);
            } else {
                throw std::invalid_argument("rm: --type4 requires --delta-file or --cm-d with --ram");
            }
            const qme::quadfields::FieldDesc K = delta->center();
            if (!K.is_imaginary())
                throw std::invalid_argument("rm: the type-4 center must be imaginary quadratic");
            try {
                const bool ok = qme::rm::type4_check(F, qme::rm::TotallyRealField::rationals(), K,
                                                     *delta, delta->degree(), rm_n);
                if (rm_json) {
                    std::cout << json{{"realizable", ok}, {"type", "IV"}}.dump() << "\n";
                } else {
                    std::cout << "Type IV for F = " << F.name() << ", Delta ["
                              << qme::io::csc_to_text(*delta) << "], n = " << rm_n << ": "
                              << (ok ? "realizable" : "not realizable") << "\n";
                }
            } catch (const qme::rm::no_positive_involution& e) {
                if (rm_json)
                    std::cout << json{{"realizable", false}, {"type", "IV"},
                                      {"reason", "no positive involution"}}
                                     .dump()
                              << "\n";
                else
                    std::cout << "Type IV for F = " << F.name() << ": " << e.what() << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
