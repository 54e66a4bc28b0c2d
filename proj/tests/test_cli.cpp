#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(UPACKET_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r{-1, {}};
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), static_cast<int>(buf.size()), p))
        r.out += buf.data();
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kExample =
    std::string(UPACKET_DATA_DIR) + "/example_three_components.json";
const std::string kTables =
    std::string(UPACKET_DATA_DIR) + "/appendix_tables.txt";

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "/tmp/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

} // namespace

TEST_CASE("packet command on the shipped example") {
    const auto r = run_cli("packet " + kExample);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("4 member(s)") != std::string::npos);

    // Byte-determinism.
    const auto r2 = run_cli("packet " + kExample);
    CHECK(r2.out == r.out);

    const auto rv = run_cli("packet --verify " + kExample);
    CHECK(rv.exit_code == 0);

    const auto rj = run_cli("packet --json " + kExample);
    CHECK(rj.exit_code == 0);
    CHECK(rj.out.find("\"base_change\"") != std::string::npos);
}

TEST_CASE("single-component packet") {
    const auto path = write_temp(
        "upacket_single.json",
        R"({"q0": 3, "components": [{"n": 1, "level": 1, "beta_log": 2,
            "tame": 0, "omega": 1}]})");
    const auto r = run_cli("packet " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1 member(s)") != std::string::npos);
}

TEST_CASE("malformed wild coefficient names the invariant") {
    const auto path = write_temp(
        "upacket_bad_beta.json",
        R"({"q0": 3, "components": [{"n": 1, "level": 1, "beta_log": 1,
            "tame": 0, "omega": 1}]})");
    const auto r = run_cli("packet " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("skew stratum condition") != std::string::npos);
}

TEST_CASE("filtration tables") {
    const auto r = run_cli("filtration " + kExample +
                           " --lattice Lambda --group H1 --even-ids 1,2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Lambda H1 d=1") != std::string::npos);

    const auto bad = run_cli("filtration " + kExample +
                             " --lattice Nope --group H1");
    CHECK(bad.exit_code == 2);

    const auto d0 = write_temp(
        "upacket_depth0.json",
        R"({"q0": 3, "components": [{"n": 1, "level": 0, "tame": 1,
            "omega": 1}]})");
    const auto r0 = run_cli("filtration " + d0 + " --lattice Lambda --group H1");
    CHECK(r0.exit_code == 2);
}

TEST_CASE("amend and hecke commands") {
    const auto ra = run_cli("amend " + kExample + " --even-ids 1,2 --oracle");
    CHECK(ra.exit_code == 0);
    CHECK(ra.out.find("nu_y=") != std::string::npos);

    const auto rh = run_cli("hecke " + kExample + " --i0 2");
    CHECK(rh.exit_code == 0);
    CHECK(rh.out.find("3/2") != std::string::npos);

    // A matching linear-side component selects the reducible branch.
    const auto rm = run_cli(
        "hecke " + kExample + " --i0 2 --gl "
        "'{\"n\": 3, \"level\": 1, \"beta_log\": 14, \"tame\": 0, \"omega\": 1}'");
    CHECK(rm.exit_code == 0);
    CHECK(rm.out.find("match test: true") != std::string::npos);
    CHECK(rm.out.find("r_y=9/2") != std::string::npos);

    const auto re = run_cli("embeddings " + kExample);
    CHECK(re.exit_code == 0);
    CHECK(re.out.find("4 embedding class(es)") != std::string::npos);
}

TEST_CASE("verification presets") {
    const auto ra = run_cli("verify --grid appendix --tables " + kTables);
    CHECK(ra.exit_code == 0);
    CHECK(ra.out.find("appendix 36/36") != std::string::npos);

    const auto rf = run_cli("verify --grid appendix --tables " + kTables +
                            " --inject-fault");
    CHECK(rf.exit_code == 0); // the fault only affects the amending grid

    const auto rs = run_cli("verify --grid small --jobs 4 --tables " + kTables +
                            " --report /tmp/upacket_report.txt");
    CHECK(rs.exit_code == 0);
    std::ifstream rep("/tmp/upacket_report.txt");
    std::string line;
    REQUIRE(std::getline(rep, line));
    // `q0 nvec d partition i0 w formula oracle agree`
    CHECK(line.substr(0, 2) == "3 ");
    CHECK(line.find(" y ") != std::string::npos);

    const auto rbad = run_cli("verify --grid small --jobs 4 --tables " + kTables +
                              " --inject-fault");
    CHECK(rbad.exit_code == 1);
}
