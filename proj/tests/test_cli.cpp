#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QTOEPLITZ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kGoldenHeader = "q,T22,T23_stated,T23_proof,T32,T31,AuxA,AuxB";
const std::string kGoldenRow =
    "0.5000000,0.4716553,0.6965986,1.3061224,0.6965986,2.3061224,0.2666667,2.6122449";

}  // namespace

TEST_CASE("bounds: golden CSV at q = 0.5") {
    const auto r = run_cli("bounds --q-min 0.5 --q-max 0.5 --steps 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == kGoldenHeader + "\n" + kGoldenRow + "\n");
}

TEST_CASE("bounds: multi-step CSV endpoints and row count") {
    const auto r = run_cli("bounds --q-min 0.1 --q-max 0.9 --steps 9 --format csv");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == kGoldenHeader);
    int rows = 0;
    std::string first, last;
    while (std::getline(is, line)) {
        if (rows == 0) first = line;
        last = line;
        ++rows;
    }
    CHECK(rows == 9);
    CHECK(first.substr(0, 9) == "0.1000000");
    CHECK(last.substr(0, 9) == "0.9000000");
}

TEST_CASE("bounds: JSON output carries both T23 columns") {
    const auto r = run_cli("bounds --q-min 0.5 --q-max 0.5 --steps 1 --format json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0].at("q").get<double>() == 0.5);
    CHECK(j[0].at("T23_stated").get<double>() == doctest::Approx(4.0 / 5.7421875));
    CHECK(j[0].at("T23_proof").get<double>() == doctest::Approx(4.0 / 3.0625));
    CHECK(j[0].at("T31").get<double>() == doctest::Approx(1.0 + 4.0 / 3.0625));
}

TEST_CASE("bounds: --out writes the same bytes to a file") {
    const std::string path = "/tmp/qtoeplitz_test_bounds.csv";
    const auto r = run_cli("bounds --q-min 0.5 --q-max 0.5 --steps 1 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == kGoldenHeader + "\n" + kGoldenRow + "\n");
    std::remove(path.c_str());
}

TEST_CASE("bounds: usage errors exit 2") {
    CHECK(run_cli("bounds --q-min 0 --q-max 0.5").exit_code == 2);
    CHECK(run_cli("bounds --q-min 0.6 --q-max 0.5").exit_code == 2);
    CHECK(run_cli("bounds --q-min 0.5 --q-max 1.0").exit_code == 2);
    CHECK(run_cli("bounds --q-min 0.2 --q-max 0.5 --steps 0").exit_code == 2);
    CHECK(run_cli("bounds --q-max 0.5").exit_code == 2);
    CHECK(run_cli("bounds --q-min 0.2 --q-max 0.5 --format yaml").exit_code == 2);
}

TEST_CASE("verify: sharp theorem exits 0 with a SHARP verdict") {
    const auto r = run_cli("verify --theorem t31 --q 0.5 --grid 12 --refine 200");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("theorem") == "T31");
    CHECK(j.at("verdict") == "SHARP");
    CHECK(j.at("max_found").get<double>() == doctest::Approx(1.0 + 4.0 / 3.0625).epsilon(1e-7));
    CHECK(j.contains("generated_at"));
    CHECK(j.at("config").at("grid").get<int>() == 12);
}

TEST_CASE("verify: violated theorem exits 3") {
    const auto r = run_cli("verify --theorem t22 --q 0.5 --grid 16 --refine 200");
    CHECK(r.exit_code == 3);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("verdict") == "VIOLATED");
    CHECK(j.at("max_found").get<double>() > j.at("closed_bound").get<double>());
}

TEST_CASE("verify: deterministic modulo the timestamp") {
    const std::string args = "verify --theorem t23 --q 0.7 --grid 10 --refine 100 --threads 2";
    auto a = nlohmann::json::parse(run_cli(args).out);
    auto b = nlohmann::json::parse(run_cli(args).out);
    a.erase("generated_at");
    b.erase("generated_at");
    CHECK(a == b);
}

TEST_CASE("verify: mix mode reports a mix argmax") {
    // Mixes reach complex first coefficients, where the T31 bound is
    // exceeded; the run therefore exits 3.
    const auto r =
        run_cli("verify --theorem t31 --q 0.5 --grid 16 --refine 200 --mode mix --seed 3");
    CHECK(r.exit_code == 3);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("argmax").at("mode") == "mix");
    CHECK(j.at("max_found").get<double>() >= 1.0 + 4.0 / 3.0625);
}

TEST_CASE("verify: usage errors exit 2") {
    CHECK(run_cli("verify --theorem t99 --q 0.5").exit_code == 2);
    CHECK(run_cli("verify --theorem t22 --q 1.5 --grid 12").exit_code == 2);
    CHECK(run_cli("verify --theorem t22").exit_code == 2);
    CHECK(run_cli("verify --theorem t22 --q 0.5 --grid 4").exit_code == 2);
    CHECK(run_cli("verify --theorem t22 --q 0.5 --mode other").exit_code == 2);
}

TEST_CASE("extremal: known witnesses exit 0, T32 exits 4") {
    const auto r = run_cli("extremal --theorem t22 --q 0.5");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("theorem") == "T22");
    CHECK(j.at("value").get<double>() ==
          doctest::Approx(4.0 / 2.25 - 4.0 / 3.0625).epsilon(1e-12));
    REQUIRE(j.at("a").size() == 3);
    // Single atom at angle 0: a_n = 2/[n]_q.
    CHECK(j.at("a")[0][0].get<double>() == doctest::Approx(4.0 / 3.0));
    CHECK(j.at("a")[1][0].get<double>() == doctest::Approx(8.0 / 7.0));
    CHECK(j.at("mix").at("atoms").size() == 1);

    CHECK(run_cli("extremal --theorem t32 --q 0.5").exit_code == 4);
    CHECK(run_cli("extremal --theorem nope --q 0.5").exit_code == 2);
}

TEST_CASE("qlimit: five rows approaching the classical limit") {
    const auto r = run_cli("qlimit --theorem t31 --eps 0.01");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    int data_rows = 0;
    double last_dev = 1.0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'k') continue;
        std::istringstream ls(line);
        int k;
        double qv, bv, dev;
        ls >> k >> qv >> bv >> dev;
        CHECK(dev < last_dev);
        last_dev = dev;
        ++data_rows;
    }
    CHECK(data_rows == 5);

    const auto t23 = run_cli("qlimit --theorem t23 --eps 0.01");
    CHECK(t23.exit_code == 0);
    CHECK(t23.out.find("proof") != std::string::npos);

    CHECK(run_cli("qlimit --theorem t31 --eps 0.5").exit_code == 2);
    CHECK(run_cli("qlimit --theorem t31 --eps 0").exit_code == 2);
}

TEST_CASE("top-level usage") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    const auto v = run_cli("--version");
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("0.1.0") != std::string::npos);
}
