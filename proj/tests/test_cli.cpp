#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <poincare/cli.hpp>

using namespace poincare;
namespace fs = std::filesystem;

namespace
{

cli::RunConfig config(const std::string &command, const std::string &poly, std::size_t atoms = 20000)
{
    cli::RunConfig c;
    c.command = command;
    c.poly = poly;
    c.atoms = atoms;
    c.seed = 11;
    return c;
}

int run_tool(const std::string &args)
{
    const std::string cmd = std::string(POINCARE_LAB) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string &name)
{
    const auto p = fs::temp_directory_path() / ("poincare_cli_" + name);
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("coefficient parsing")
{
    auto c = cli::parse_poly("4,-3");
    REQUIRE(c.size() == 3);
    CHECK(c[0] == 0);
    CHECK(c[1] == -3);
    CHECK(c[2] == 4);
    c = cli::parse_poly(" 1 , 1/20 ");
    CHECK(c[1] == Rational(1, 20));
    CHECK_THROWS_AS(cli::parse_poly("1"), ConfigError);
    CHECK_THROWS_AS(cli::parse_poly("1,x"), ConfigError);
    CHECK_THROWS_AS(cli::parse_poly("0,1"), ConfigError);
    CHECK_THROWS_AS(cli::parse_poly("1,,2"), ConfigError);
    CHECK_THROWS_AS(cli::parse_poly("1,2,"), ConfigError);
    CHECK_THROWS_AS(cli::run(config("frobnicate", "1,4")), ConfigError);
    auto bad = config("series", "1,4");
    bad.order = 2;
    CHECK_THROWS_AS(cli::run(bad), ConfigError);
}

TEST_CASE("analyze normalizes 4z^2-3z to z^2+5z")
{
    const auto r = cli::run(config("analyze", "4,-3"));
    CHECK(r.exit_code == 0);
    const auto &j = r.report;
    CHECK(j["system"]["normalized"] == cli::json::array({"0", "5", "1"}));
    const auto &au = j["stages"]["analyze"]["result"]["multiplier_audit"];
    CHECK(au["any_violation"] == false);
    CHECK(au["any_equality"] == false);
    for (const auto &e : au["entries"]) {
        CHECK(e["verdict"] == "pass");
    }
}

TEST_CASE("analyze flags the Chebyshev equality cases")
{
    const auto r = cli::run(config("analyze", "1,4"));
    const auto &res = r.report["stages"]["analyze"]["result"];
    CHECK(res["exceptional"] == "chebyshev-conjugate");
    int eq = 0;
    for (const auto &e : res["multiplier_audit"]["entries"]) {
        CHECK(e["verdict"] == "equality");
        CHECK(e["chebyshev_flag"] == true);
        ++eq;
    }
    CHECK(eq == 2);
}

TEST_CASE("zeros on a circle Julia set is not applicable, exit 0")
{
    const auto r = cli::run(config("zeros", "1,2"));
    CHECK(r.exit_code == 0);
    CHECK(r.report["stages"]["zeros"]["status"] == "not-applicable");
    CHECK(r.report["warnings"].size() == 1);
    CHECK(r.files.count("zeros.csv") == 0);
}

TEST_CASE("all for z^2+4z includes zeta(1) = 1/24")
{
    const auto r = cli::run(config("all", "1,4"));
    CHECK(r.exit_code == 0);
    const auto &z = r.report["stages"]["zeta"]["result"]["values"][0];
    CHECK(z["s"]["re"] == 1.0);
    CHECK(std::abs(z["value"]["re"].get<double>() - 1.0 / 24) < 1e-6);
    for (const char *f : {"measure.csv", "profile_F.csv", "zeros.csv", "counting.csv"}) {
        CHECK(r.files.count(f) == 1);
    }
    CHECK(r.files.at("zeros.csv").rfind("x_re,x_im\n", 0) == 0);
    CHECK(r.files.at("counting.csv").rfind("x,N_f\n", 0) == 0);
    CHECK(r.files.at("profile_F.csv").rfind("u,re_F,im_F\n", 0) == 0);
}

TEST_CASE("fourier for z^2+5z has both routes")
{
    const auto r = cli::run(config("fourier", "1,5"));
    CHECK(r.exit_code == 0);
    const auto &res = r.report["stages"]["fourier"]["result"];
    CHECK(res["fft"].size() == 7);
    CHECK(res["residue"].size() == 7);
    CHECK(res["constancy"]["verdict"] == "non-constant");
    for (const auto &a : res["agreement"]) {
        CHECK(a["within_3x"] == true);
    }
}

TEST_CASE("a failing stage gives exit 1")
{
    // z^3+z^2+z: the positive ray of f stays bounded
    const auto r = cli::run(config("fourier", "1,1,1"));
    CHECK(r.exit_code == 1);
    CHECK(r.report["stages"]["fourier"]["status"] == "failed");
    CHECK(r.report["status"] == "failed");
}

TEST_CASE("tool exit codes and outputs")
{
    const auto dir = scratch("exit");
    CHECK(run_tool("analyze --poly 1,4 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "report.json"));
    const auto bad = scratch("bad");
    CHECK(run_tool("analyze --poly 1,q --out " + bad.string()) == 2);
    CHECK(!fs::exists(bad));
    CHECK(run_tool("analyze") == 2);
    CHECK(run_tool("bogus --poly 1,4 --out " + bad.string()) == 2);
    CHECK(!fs::exists(bad));
    CHECK(run_tool("fourier --poly 1,1,1 --out " + dir.string()) == 1);
    CHECK(run_tool("zeros --poly 1,2 --out " + dir.string()) == 0);
    CHECK(run_tool("analyze --poly 1,4 --fixed-point -3 --out " + dir.string()) == 2);
}

TEST_CASE("identical config and seed give byte-identical outputs")
{
    const auto a = scratch("det_a"), b = scratch("det_b");
    const std::string args = "all --poly 1,5 --atoms 30000 --seed 5 --out ";
    REQUIRE(run_tool(args + a.string()) == 0);
    REQUIRE(run_tool(args + b.string()) == 0);
    for (const char *f : {"report.json", "measure.csv", "profile_F.csv", "zeros.csv", "counting.csv"}) {
        INFO(f);
        CHECK(slurp(a / f) == slurp(b / f));
        CHECK(!slurp(a / f).empty());
    }
    const auto c = scratch("det_c");
    REQUIRE(run_tool("all --poly 1,5 --atoms 30000 --seed 6 --out " + c.string()) == 0);
    CHECK(slurp(a / "measure.csv") != slurp(c / "measure.csv"));
}

TEST_CASE("reports validate against the schema")
{
    const auto dir = scratch("schema");
    fs::create_directories(dir);
    std::vector<fs::path> reports;
    for (const auto &[cmd, poly] : std::vector<std::pair<std::string, std::string>>{
             {"all", "1,4"}, {"zeros", "1,2"}, {"fourier", "1,1,1"}, {"analyze", "4,-3"}, {"eval", "1,5/2"}}) {
        const auto out = dir / (cmd + "_" + std::to_string(reports.size()));
        run_tool(cmd + " --poly " + poly + " --atoms 5000 --out " + out.string());
        reports.push_back(out / "report.json");
    }
    std::string cmd = "python3 -c \"import json,sys,jsonschema; s=json.load(open(sys.argv[1])); "
                      "[jsonschema.validate(json.load(open(f)), s) for f in sys.argv[2:]]\" " +
                      std::string(POINCARE_SCHEMA);
    for (const auto &r : reports) {
        REQUIRE(fs::exists(r));
        cmd += " " + r.string();
    }
    const int st = std::system(cmd.c_str());
    CHECK(WIFEXITED(st));
    CHECK(WEXITSTATUS(st) == 0);
}
