#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "potalg/cli.hpp"
#include "potalg/errors.hpp"

using namespace potalg::cli;
using potalg::Family;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "potalg");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::size_t column(const Result& r, const std::string& name) {
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        if (r.columns[i].name == name) return i;
    FAIL("no column " << name);
    return 0;
}

double real_at(const Result& r, std::size_t row, const std::string& name) {
    return std::get<double>(r.rows[row][column(r, name)]);
}

RunConfig config(Command c, Family f = Family::GPT) {
    RunConfig cfg;
    cfg.command = c;
    cfg.params.family = f;
    if (f == Family::ScarfII) {
        cfg.params.B = 2.0;
        cfg.params.k = 2.5;
    }
    const bool dense = c == Command::Spectrum || c == Command::Sweep;
    cfg.grid = potalg::default_grid(f, dense ? 1000 : 200);
    return cfg;
}

}  // namespace

TEST_CASE("potential: gpt example table") {
    const Run r = invoke({"potential", "--family", "gpt", "--B", "5", "--k", "3.5", "--m", "1", "--x-min", "0.05",
                          "--x-max", "10", "--n", "200", "--format", "csv"});
    CHECK(r.code == kExitPass);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 203);
    CHECK(ls[0].rfind("# potalg ", 0) == 0);
    CHECK(ls[2] ==
          "x,re_v_conventional,im_v_conventional,re_v_rational,im_v_rational,re_v_total,im_v_total,re_v_casimir,"
          "im_v_casimir,gap");
    for (std::size_t i = 3; i < ls.size(); ++i) {
        const double gap = std::stod(ls[i].substr(ls[i].rfind(',') + 1));
        CHECK(gap <= 1e-9);
    }
}

TEST_CASE("potential: m = 0 has no rational part") {
    RunConfig cfg = config(Command::Potential);
    cfg.params.m = 0;
    const Result r = run_potential(cfg);
    const std::size_t c = column(r, "v_rational");
    for (const auto& row : r.rows) CHECK(std::get<std::complex<double>>(row[c]) == std::complex<double>(0.0));
}

TEST_CASE("potential: ScarfII rows are PT symmetric") {
    RunConfig cfg = config(Command::Potential, Family::ScarfII);
    cfg.grid = {-5.0, 5.0, 201};
    cfg.grid_explicit = true;
    const Result r = run_potential(cfg);
    REQUIRE(r.rows.size() == 201);
    const std::size_t c = column(r, "v_total");
    bool imag = false;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto v = std::get<std::complex<double>>(r.rows[i][c]);
        const auto w = std::get<std::complex<double>>(r.rows[r.rows.size() - 1 - i][c]);
        CHECK(std::abs(w - std::conj(v)) < 1e-12 * std::max(1.0, std::abs(v)));
        imag = imag || v.imag() != 0.0;
    }
    CHECK(imag);
}

TEST_CASE("spectrum: flagship GPT run") {
    const Result r = run_spectrum(config(Command::Spectrum));
    CHECK(r.exit_code == kExitPass);
    REQUIRE(r.rows.size() == 3);
    const double expected[] = {0.0, 5.0, 8.0};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::get<std::string>(r.rows[i][0]) == "ladder");
        CHECK(real_at(r, i, "e_closed") == expected[i]);
        CHECK(real_at(r, i, "abs_delta") <= 1e-4);
    }
}

TEST_CASE("spectrum: ScarfII ladder is real") {
    const Result r = run_spectrum(config(Command::Spectrum, Family::ScarfII));
    CHECK(r.exit_code == kExitPass);
    std::vector<double> ladder;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(real_at(r, i, "abs_im") <= 1e-6);
        if (std::get<std::string>(r.rows[i][0]) == "ladder") {
            ladder.push_back(real_at(r, i, "e_closed"));
            CHECK(real_at(r, i, "abs_delta") <= 1e-4);
        }
    }
    CHECK(ladder == std::vector<double>{0.0, 3.0});
    // The default domain fails the tail criterion and is widened.
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("invalid parameters exit 2 without output") {
    const Run r = invoke({"spectrum", "--B", "3"});
    CHECK(r.code == kExitUsage);
    CHECK(r.out.empty());
    CHECK(r.err.find("B > k+1/2") != std::string::npos);
    CHECK_THROWS_AS(run_spectrum([] {
                        RunConfig c = config(Command::Spectrum);
                        c.params.B = 3.0;
                        return c;
                    }()),
                    potalg::ParameterError);
    CHECK(invoke({"frobnicate"}).code == kExitUsage);
    CHECK(invoke({"potential", "--family", "morse"}).code == kExitUsage);
    CHECK(invoke({"potential", "--format", "xml"}).code == kExitUsage);
}

TEST_CASE("verify-algebra") {
    RunConfig cfg = config(Command::VerifyAlgebra);
    cfg.params.m = 2;
    Result r = run_verify_algebra(cfg);
    CHECK(r.exit_code == kExitPass);
    REQUIRE(r.rows.size() == 4);
    for (const auto& row : r.rows) CHECK(std::get<std::string>(row[column(r, "pass")]) == "true");

    cfg.fault = "tanh2x";
    r = run_verify_algebra(cfg);
    CHECK(r.exit_code == kExitToleranceFailure);
    CHECK(std::get<std::string>(r.rows[0][0]) == "rest1_F");
    CHECK(std::get<std::string>(r.rows[0][column(r, "pass")]) == "false");
    CHECK(real_at(r, 0, "value") >= 0.5);
    CHECK(real_at(r, 0, "location") == doctest::Approx(0.01));

    cfg.fault.reset();
    cfg.params.m = 0;
    cfg.params.family = Family::ScarfII;
    cfg.params.B = 2.0;
    cfg.params.k = 2.5;
    r = run_verify_algebra(cfg);
    CHECK(std::get<std::string>(r.rows[2][0]) == "rest2");
    CHECK(real_at(r, 2, "value") == 0.0);
}

TEST_CASE("verify-susy") {
    RunConfig cfg = config(Command::VerifySusy);
    cfg.params.B = 6.0;
    const Result r = run_verify_susy(cfg);
    CHECK(r.exit_code == kExitPass);
    CHECK(std::get<std::string>(r.rows[1][0]) == "si_remainder");
    CHECK(real_at(r, 1, "value") == doctest::Approx(7.0));
    CHECK(invoke({"verify-susy"}).code == kExitUsage);  // k + 1 is inadmissible for B = 5
    CHECK(invoke({"verify-susy", "--a", "2"}).code == kExitPass);
}

TEST_CASE("sweep over m is isospectral") {
    RunConfig cfg = config(Command::Sweep);
    cfg.m_range = parse_range("0:2:1");
    const Result r = run_sweep(cfg);
    CHECK(r.exit_code == kExitPass);
    REQUIRE(r.rows.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(std::get<std::int64_t>(r.rows[i][column(r, "m")]) == static_cast<std::int64_t>(i / 3));
        CHECK(std::get<std::int64_t>(r.rows[i][column(r, "n")]) == static_cast<std::int64_t>(i % 3));
        CHECK(real_at(r, i, "iso_deviation") <= 5e-5);
    }
}

TEST_CASE("sweep: invalid tuple becomes an error record") {
    RunConfig cfg = config(Command::Sweep);
    cfg.B_range = parse_range("4:5:1");
    const Result r = run_sweep(cfg);
    REQUIRE(r.rows.size() == 4);
    CHECK(std::get<std::string>(r.rows[0][column(r, "status")]) == "error");
    CHECK(std::get<std::string>(r.rows[0][column(r, "message")]).find("B > k+1/2") != std::string::npos);
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::get<std::string>(r.rows[i][column(r, "status")]) == "ok");
}

TEST_CASE("sweep: empty range and size cap") {
    const Run empty = invoke({"sweep", "--k-range", "5:4:1"});
    CHECK(empty.code == kExitPass);
    CHECK(lines(empty.out).size() == 3);

    const Run big = invoke({"sweep", "--B-range", "5:104:1", "--k-range", "1:101:1", "--m-range", "0:1:1"});
    CHECK(big.code == kExitUsage);
    CHECK(big.err.find("20200") != std::string::npos);
}

TEST_CASE("ranges") {
    CHECK(parse_range("0:2:1").values() == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(parse_range("1:2:0.5").values() == std::vector<double>{1.0, 1.5, 2.0});
    CHECK(parse_range("3").values() == std::vector<double>{3.0});
    CHECK(parse_range("0.1:0.3:0.1").values().size() == 3);
    CHECK(parse_range("2:1:1").values().empty());
    CHECK_THROWS_AS(parse_range("a:b"), potalg::UsageError);
    CHECK_THROWS_AS(parse_range("0:1:0"), potalg::UsageError);
    CHECK_THROWS_AS(parse_range("1:2:3:4"), potalg::UsageError);
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789})
        CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(7.0) == "7");
}

TEST_CASE("json output") {
    const Run r = invoke({"potential", "--family", "scarf2", "--n", "20", "--format", "json"});
    REQUIRE(r.code == kExitPass);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["config"]["family"] == "scarf2");
    REQUIRE(doc["rows"].size() == 20);
    const auto& v = doc["rows"][0]["v_total"];
    CHECK(v["re"].is_string());
    CHECK(v["im"].is_string());
    CHECK(doc["rows"][0]["x"] == "-15");
}

TEST_CASE("output is deterministic and honours the environment default") {
    const Run a = invoke({"verify-algebra", "--m", "1"});
    const Run b = invoke({"verify-algebra", "--m", "1"});
    CHECK(a.out == b.out);

    ::setenv("POTALG_DEFAULT_FORMAT", "json", 1);
    const Run j = invoke({"verify-algebra"});
    const Run c = invoke({"verify-algebra", "--format", "csv"});
    ::setenv("POTALG_DEFAULT_FORMAT", "yaml", 1);
    const Run bad = invoke({"verify-algebra"});
    ::unsetenv("POTALG_DEFAULT_FORMAT");
    CHECK(j.out.front() == '{');
    CHECK(c.out.front() == '#');
    CHECK(bad.code == kExitUsage);
}

TEST_CASE("file output is written in place") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "potalg_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path target = dir / "pot.csv";
    const Run r = invoke({"potential", "--n", "32", "--out", target.string()});
    CHECK(r.code == kExitPass);
    CHECK(r.out.empty());
    std::ifstream f(target);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(lines(ss.str()).size() == 35);
    CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 1);

    const Run missing = invoke({"potential", "--out", (dir / "no" / "such" / "dir.csv").string()});
    CHECK(missing.code == kExitUsage);
    CHECK(missing.err.find("no/such") != std::string::npos);
    fs::remove_all(dir);
}

#ifdef POTALG_EXE
TEST_CASE("executable exit statuses") {
    const std::string exe = POTALG_EXE;
    auto status = [](const std::string& cmd) {
        const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status(exe + " verify-algebra") == 0);
    CHECK(status(exe + " verify-algebra --inject-fault tanh2x") == 1);
    CHECK(status(exe + " spectrum --B 3") == 2);
    CHECK(status(exe + " --help") == 0);
}
#endif
