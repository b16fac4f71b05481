// End-to-end CLI checks: exit-code contract, payload structure, byte-level
// determinism and golden-file regression. The binary path and the golden
// directory come in as compile definitions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QOSC_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("eval --help").exit_code == 0);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("eval").exit_code == 2);                    // missing required flags
    CHECK(run_cli("nonsense --q 0.5").exit_code == 2);        // unknown subcommand
    CHECK(run_cli("eval --expr bogus --q 0.5").exit_code == 2);
}

TEST_CASE("eval bracket") {
    const RunResult r = run_cli("eval --expr bracket --q 0.5 --n 2");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(1.5));
    CHECK(j["command"] == "eval");
}

TEST_CASE("eval factorial and the infinite pochhammer product") {
    const RunResult f = run_cli("eval --expr factorial --q 0.5 --lambda 0 --n 3");
    CHECK(f.exit_code == 0);
    CHECK(nlohmann::json::parse(f.out)["value"].get<double>() == doctest::Approx(2.625));

    const RunResult p = run_cli("eval --expr pochhammer --q 0.5 --x 0.5 --n -1");
    CHECK(p.exit_code == 0);
    const auto j = nlohmann::json::parse(p.out);
    CHECK(j["value"]["re"].get<double>() ==
          doctest::Approx(0.28878809508660242).epsilon(1e-13));
}

TEST_CASE("eval e_q at the origin") {
    const RunResult r = run_cli("eval --expr eq --q 0.5 --x 0");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"]["re"].get<double>() == 1.0);
    CHECK(j["diagnostics"]["convergence"]["kind"] == "finite_radius");
}

TEST_CASE("domain violations produce a structured record and exit 2") {
    const RunResult r = run_cli("eval --expr exp_lambda --q 0.5 --lambda -0.5 --x 1");
    CHECK(r.exit_code == 2);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["error"]["code"] == "divergence");
    const std::string msg = j["error"]["message"].get<std::string>();
    CHECK(msg.find("zero radius") != std::string::npos);
}

TEST_CASE("spectrum two-state closed form") {
    const RunResult r = run_cli("spectrum --q 0.5 --lambda 0 --dim 2");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["spectrum"].size() == 2);
    CHECK(j["spectrum"][0]["node"].get<double>() == doctest::Approx(-1.0));
    CHECK(j["spectrum"][1]["node"].get<double>() == doctest::Approx(1.0));
    CHECK(j["spectrum"][0]["weight"].get<double>() == doctest::Approx(0.5));
    CHECK(j["spectrum"][1]["weight"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("hermite odd values vanish at the origin") {
    const RunResult r = run_cli("hermite --q 0.5 --x 0 --nmax 4");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["values"][1]["H"].get<double>() == 0.0);
    CHECK(j["values"][3]["H"].get<double>() == 0.0);
    CHECK(j["values"][0]["H"].get<double>() == 1.0);
}

TEST_CASE("moments table stays on target") {
    const RunResult r = run_cli("moments --q 0.5 --nmax 8");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const auto& row : j["moments"])
        CHECK(row["rel_err"].get<double>() <= 1e-10);
    // non-zero lambda is outside the verified identity
    CHECK(run_cli("moments --q 0.5 --lambda 1 --nmax 4").exit_code == 2);
}

TEST_CASE("coherent payload carries tail mass and residual") {
    const RunResult r = run_cli("coherent --q 0.5 --zre 0.8 --dim 24");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["eigen_residual"].get<double>() <= 1e-12);
    CHECK(j["coefficients"].size() == 24);
    CHECK(j["coefficients"][0]["re"].get<double>() == 1.0);
}

TEST_CASE("rep reports window, elements and residuals") {
    const RunResult r = run_cli("rep --family hgamma --q 0.5 --gamma 3 --nmin -6 --nmax 6");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["window"]["n_min"].get<long>() == -6);
    CHECK(j["commutation_residual"]["value"].get<double>() <= 1e-12);
    CHECK(j["central_element_interior"]["min"].get<double>() ==
          doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(j["central_element_interior"]["max"].get<double>() ==
          doctest::Approx(-3.0).epsilon(1e-10));
}

TEST_CASE("rep --matrices embeds the dense generators") {
    const RunResult r = run_cli("rep --family h0 --q 0.5 --dim 4 --matrices");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["matrices"]["a"][0][1].get<double>() == doctest::Approx(1.0));
    CHECK(j["matrices"]["a_dagger"][1][0].get<double>() == doctest::Approx(1.0));
    CHECK(j["matrices"]["N"][2][2].get<double>() == 2.0);
    CHECK(j["matrices"]["a"][1][0].get<double>() == 0.0);
}

TEST_CASE("verify exit codes: 0 on pass, bad domain handled") {
    CHECK(run_cli("verify --suite measure --q 0.5").exit_code == 0);
    CHECK(run_cli("verify --suite algebra --q 0.5 --lambda 0.5 --dim 16").exit_code == 0);
    CHECK(run_cli("verify --suite states --q 0.5 --gamma 3 --dim 24").exit_code == 0);
    // q outside the unit interval skips gated checks but still succeeds
    const RunResult r = run_cli("verify --suite all --q 1.5 --dim 12");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    bool saw_skip = false;
    for (const auto& c : j["checks"])
        if (c["skipped"].get<bool>()) {
            saw_skip = true;
            CHECK(c["note"].get<std::string>().find("0 < q < 1") != std::string::npos);
        }
    CHECK(saw_skip);
    // invalid parameters are a usage error
    CHECK(run_cli("verify --suite all --q -1").exit_code == 2);
}

TEST_CASE("byte-identical output for identical flags") {
    const std::string cmd = "spectrum --q 0.5 --lambda 0.5 --dim 24";
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const std::string vcmd = "verify --suite exponentials --q 0.7";
    CHECK(run_cli(vcmd).out == run_cli(vcmd).out);
}

TEST_CASE("json round trip: parse(emit(x)) reproduces the payload") {
    for (const std::string cmd :
         {"hermite --q 0.5 --x 0.75 --nmax 12", "spectrum --q 0.5 --dim 8",
          "coherent --q 0.5 --zre 0.7 --dim 8", "moments --q 0.5 --nmax 4",
          "rep --family h0 --q 0.5 --dim 6", "verify --suite measure --q 0.5",
          "eval --expr eq --q 0.5 --x 1.2"}) {
        const RunResult r = run_cli(cmd);
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        const auto j2 = nlohmann::json::parse(j.dump());
        CHECK(j == j2);
    }
}

TEST_CASE("csv output uses decimal points and 17 significant digits") {
    const RunResult r = run_cli("eval --expr bracket --q 0.3 --n 7 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("expr,q,lambda,n") != std::string::npos);
    // 1/0.3 style values force long mantissas; no comma decimal separators
    CHECK(r.out.find("1.4282590000000002") != std::string::npos);
    CHECK(r.out.find("0.29999999999999999") != std::string::npos);
}

TEST_CASE("QOSC_DEFAULT_EPS loosens series until identities fail with exit 1") {
    // an absurd tail tolerance truncates every series after a couple of
    // terms; the residuals blow past their tolerances and verify reports it
    const std::string cmd = std::string("QOSC_DEFAULT_EPS=0.01 ") + QOSC_CLI_PATH +
                            " verify --suite exponentials --q 0.5 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 1);
    const auto j = nlohmann::json::parse(out);
    CHECK_FALSE(j["all_passed"].get<bool>());
}

TEST_CASE("--out writes the payload to a file") {
    const std::string path = "/tmp/qosc_cli_out_test.json";
    std::remove(path.c_str());
    const RunResult r = run_cli("eval --expr bracket --q 0.5 --n 2 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    const auto j = nlohmann::json::parse(read_file(path));
    CHECK(j["value"].get<double>() == doctest::Approx(1.5));
    std::remove(path.c_str());

    // unwritable destination is a reported failure, not silence
    const RunResult bad =
        run_cli("eval --expr bracket --q 0.5 --n 2 --out /nonexistent-dir/x.json");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("golden files") {
    const std::string dir = QOSC_GOLDEN_DIR;
    const struct {
        const char* file;
        const char* args;
    } cases[] = {
        {"spectrum_q05_dim2.json", "spectrum --q 0.5 --lambda 0 --dim 2"},
        {"eval_bracket_q05_n2.json", "eval --expr bracket --q 0.5 --n 2"},
        {"hermite_q05_x0_nmax4.csv", "hermite --q 0.5 --x 0 --nmax 4 --format csv"},
    };
    for (const auto& c : cases) {
        const std::string want = read_file(dir + "/" + c.file);
        REQUIRE_MESSAGE(!want.empty(), "missing golden file ", c.file);
        const RunResult r = run_cli(c.args);
        CHECK(r.exit_code == 0);
        CHECK_MESSAGE(r.out == want, "golden mismatch for ", c.file);
    }
}
