// Acceptance gate: runs every criterion end to end and prints one verdict
// line per criterion. Criteria 1-9 run in process; criterion 10 exercises
// the CLI contract by spawning the binary against pristine and corrupted
// fixture sets.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "emtor/selftest.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + EMTOR_CLI_PATH + "\" " + args +
                            " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

void overwrite(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

emtor::CriterionResult criterion_cli_contract() {
    emtor::CriterionResult res{10, "CLI contract", true, ""};
    const auto fail = [&](const std::string& what) {
        res.pass = false;
        res.detail = what;
        return res;
    };

    const fs::path src = EMTOR_DATA_DIR;
    const fs::path tmp = fs::temp_directory_path() / "emtor_acceptance_data";

    const auto fresh_copy = [&]() {
        fs::remove_all(tmp);
        fs::copy(src, tmp);
    };

    fresh_copy();
    if (run_cli("selftest --data " + tmp.string()) != 0)
        return fail("selftest on pristine fixtures did not exit 0");

    // structurally broken fixture -> validation failure (exit 2)
    fresh_copy();
    overwrite(tmp / "pp2.json", "{ this is not json");
    int code = run_cli("selftest --data " + tmp.string());
    if (code != 2) return fail("malformed fan fixture: expected exit 2, got " +
                               std::to_string(code));

    // invalid fan data -> validation failure (exit 2)
    fresh_copy();
    overwrite(tmp / "pp1.json",
              "{\"rank\": 1, \"rays\": [[2], [-1]], "
              "\"max_cones\": [[0], [1]]}");
    code = run_cli("selftest --data " + tmp.string());
    if (code != 2) return fail("non-primitive ray: expected exit 2, got " +
                               std::to_string(code));

    // valid but wrong fixture data -> consistency failure (exit 3)
    fresh_copy();
    overwrite(tmp / "p2_orbits.json",
              "{\"orbits\": ["
              "{\"label\": \"open\", \"codim\": 0, "
              "\"stabilizer\": \"torus:0\"},"
              "{\"label\": \"line\", \"codim\": 1, "
              "\"stabilizer\": \"torus:2\"}]}");
    code = run_cli("selftest --data " + tmp.string());
    if (code != 2 && code != 3)
        return fail("wrong orbit data: expected exit 2 or 3, got " +
                    std::to_string(code));

    // usage errors exit 1
    if (run_cli("definitely-not-a-command") != 1)
        return fail("unknown subcommand should exit 1");

    fs::remove_all(tmp);
    res.detail = "pristine fixtures pass; each corruption flips the exit "
                 "code as contracted";
    return res;
}

} // namespace

int main() {
    emtor::SelftestReport report =
        emtor::run_selftest(20260823u, EMTOR_DATA_DIR);
    report.add(criterion_cli_contract());

    bool all = true;
    for (const emtor::CriterionResult& r : report.results) {
        std::cout << "criterion " << r.id << " [" << r.name
                  << "]: " << (r.pass ? "pass" : "FAIL") << " — " << r.detail
                  << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "acceptance: all criteria pass"
                      : "acceptance: FAILURES present")
              << "\n";
    return all ? 0 : 1;
}
