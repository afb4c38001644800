// End-to-end checks of the installed CLI: exit codes, output stability, and
// the JSON surface, by spawning the real binary.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = std::string(QME_CLI_PATH) + ".test_out";
    const std::string command =
        std::string(QME_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(command.c_str());
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::remove(out_path.c_str());
    return RunResult{WEXITSTATUS(status), buffer.str()};
}

}  // namespace

TEST_CASE("classify-qm exit codes") {
    CHECK(run_cli("classify-qm 26").exit_code == 0);
    CHECK(run_cli("classify-qm 12").exit_code == 2);   // not squarefree
    CHECK(run_cli("classify-qm 30").exit_code == 2);   // odd number of primes
    CHECK(run_cli("classify-qm 7").exit_code == 2);
    CHECK(run_cli("classify-qm -- -6").exit_code == 2);
    CHECK(run_cli("classify-qm 0").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("classify-qm JSON carries the worked D26 menu") {
    const RunResult r = run_cli("classify-qm 26 --json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.output);
    REQUIRE(j["simple"]["supersingular"].size() == 2);
    CHECK(j["simple"]["supersingular"][0]["n"] == nlohmann::json::array({3, 6}));
    CHECK(j["simple"]["supersingular"][0]["field_d"] == -3);
    CHECK(j["simple"]["supersingular"][0]["p"] == 13);
    CHECK(j["simple"]["supersingular"][1]["n"] == nlohmann::json::array({4}));
    CHECK(j["simple"]["supersingular"][1]["field_d"] == -1);
    CHECK(j["simple"]["d_itself"]["degree"] == 2);
    CHECK(j["discriminant"] == 26);
}

TEST_CASE("oracle agreement drives the exit code") {
    const RunResult r26 = run_cli("oracle 26");
    CHECK(r26.exit_code == 0);
    CHECK(r26.output.find("AGREE") != std::string::npos);

    const RunResult r6 = run_cli("oracle 6");
    CHECK(r6.exit_code == 0);
    CHECK(r6.output.find("(empty)") != std::string::npos);

    CHECK(run_cli("oracle 10").exit_code == 0);
    CHECK(run_cli("oracle 12").exit_code == 2);
}

TEST_CASE("oracle respects QME_ORACLE_NMAX") {
    const RunResult r = run_cli("oracle 26 --json");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.output)["n_max"] == 60);

    const std::string out_path = std::string(QME_CLI_PATH) + ".env_out";
    const std::string command = std::string("QME_ORACLE_NMAX=24 ") + QME_CLI_PATH +
                                " oracle 26 --json > " + out_path + " 2>/dev/null";
    REQUIRE(std::system(command.c_str()) == 0);
    std::ifstream in(out_path);
    nlohmann::json j;
    in >> j;
    std::remove(out_path.c_str());
    CHECK(j["n_max"] == 24);
    CHECK(j["agree"] == true);
}

TEST_CASE("oracle writes the enumeration CSV on request") {
    const std::string csv_path = std::string(QME_CLI_PATH) + ".enum.csv";
    const RunResult r = run_cli("oracle 10 --csv " + csv_path);
    REQUIRE(r.exit_code == 0);
    std::ifstream in(csv_path);
    REQUIRE(in);
    std::string header;
    std::getline(in, header);
    CHECK(header == "p,a,n,center,endo,index,dim,admitted");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 2 * 2 * 60);  // two primes, a <= 2, n <= 60
    std::remove(csv_path.c_str());
}

TEST_CASE("hilbert subcommand") {
    const RunResult r = run_cli("hilbert -- -1 -1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("place inf: -1") != std::string::npos);
    CHECK(r.output.find("place 2: -1") != std::string::npos);
    CHECK(r.output.find("discriminant: 2 (definite at infinity)") != std::string::npos);

    CHECK(run_cli("hilbert 1 7").output.find("ramified places: (none)") != std::string::npos);
    CHECK(run_cli("hilbert -- -1 3").output.find("discriminant: 6 (indefinite)") != std::string::npos);
    CHECK(run_cli("hilbert 0 1").exit_code == 2);
}

TEST_CASE("rm subcommand surfaces") {
    const RunResult t3 = run_cli("rm --field sqrt5 --type3 --p 5 --assume-h");
    REQUIRE(t3.exit_code == 0);
    CHECK(t3.output.find("Mat_2(D_{5,inf}), K0 = Q") != std::string::npos);
    CHECK(t3.output.find("Mat_1(D_{inf1,inf2}), K0 = Q(sqrt(5))") != std::string::npos);

    const RunResult t2 = run_cli("rm --field sqrt5 --type2 --delta-disc 6 --n 1");
    REQUIRE(t2.exit_code == 0);
    CHECK(t2.output.find(": realizable") != std::string::npos);

    const RunResult t2n = run_cli("rm --field sqrt7 --type2 --delta-disc 6 --n 1");
    REQUIRE(t2n.exit_code == 0);
    CHECK(t2n.output.find(": not realizable") != std::string::npos);

    const RunResult t1 = run_cli("rm --field q --type1");
    REQUIRE(t1.exit_code == 0);
    CHECK(t1.output.find("Mat_1(K0), K0 = Q") != std::string::npos);

    const RunResult t4 = run_cli("rm --field sqrt2 --type4 --cm-d=-3 --ram 13 --n 1");
    REQUIRE(t4.exit_code == 0);
    CHECK(t4.output.find(": realizable") != std::string::npos);

    const RunResult t4n = run_cli("rm --field sqrt3 --type4 --cm-d=-3 --ram 13 --n 1");
    REQUIRE(t4n.exit_code == 0);
    CHECK(t4n.output.find(": not realizable") != std::string::npos);

    CHECK(run_cli("rm --field sqrt5 --type3").exit_code == 2);            // missing --p
    CHECK(run_cli("rm --field sqrt5 --type1 --type2").exit_code == 2);    // two types
    CHECK(run_cli("rm --type1").exit_code == 2);                          // no field
    CHECK(run_cli("rm --field nope --type1").exit_code == 2);
}

TEST_CASE("rm explicit field spec from a file") {
    const std::string spec_path = std::string(QME_CLI_PATH) + ".field.json";
    {
        std::ofstream spec(spec_path);
        spec << R"({"degree":4,"local":{"2":[2,2],"3":[4]},"subfields":["q","sqrt5"]})";
    }
    const RunResult t2 = run_cli("rm --field-file " + spec_path + " --type2 --delta-disc 6 --n 2");
    REQUIRE(t2.exit_code == 0);
    CHECK(t2.output.find(": realizable") != std::string::npos);

    const RunResult t1 = run_cli("rm --field-file " + spec_path + " --type1");
    REQUIRE(t1.exit_code == 0);
    CHECK(t1.output.find("Mat_4(K0), K0 = Q") != std::string::npos);
    CHECK(t1.output.find("Mat_2(K0), K0 = Q(sqrt(5))") != std::string::npos);

    {
        std::ofstream spec(spec_path);
        spec << R"({"degree":4,"local":{"2":[2,1]}})";
    }
    CHECK(run_cli("rm --field-file " + spec_path + " --type1").exit_code == 2);
    std::remove(spec_path.c_str());
}

TEST_CASE("golden CLI transcripts") {
    auto read_golden = [](const std::string& name) {
        std::ifstream in(std::string(QME_GOLDEN_DIR) + "/" + name, std::ios::binary);
        REQUIRE(in);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    };
    CHECK(run_cli("classify-qm 26 --field-bound 50").output == read_golden("classify_qm_26.txt"));
    CHECK(run_cli("classify-qm 26 --field-bound 50 --json").output == read_golden("classify_qm_26.json"));
    CHECK(run_cli("classify-qm 6 --field-bound 50").output == read_golden("classify_qm_6.txt"));
    CHECK(run_cli("classify-qm 6 --field-bound 50 --json").output == read_golden("classify_qm_6.json"));
    CHECK(run_cli("oracle 10").output == read_golden("oracle_10.txt"));
    CHECK(run_cli("oracle 26 --json").output == read_golden("oracle_26.json"));
    CHECK(run_cli("hilbert -- -1 -1").output == read_golden("hilbert_-1_-1.txt"));
    CHECK(run_cli("rm --field sqrt5 --type3 --p 5 --assume-h").output == read_golden("rm_type3_sqrt5.txt"));
}
