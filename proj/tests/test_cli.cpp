#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qjac/cli.hpp"
#include "qjac/errors.hpp"
#include "qjac/qseries.hpp"

using namespace qjac;
using namespace qjac::cli;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run_config(const RunConfig &c)
{
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string &name)
{
    auto p = std::filesystem::temp_directory_path() / ("qjac_cli_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("range parsing")
{
    CHECK(parse_range("2..5") == std::vector<long>{2, 3, 4, 5});
    CHECK(parse_range("7") == std::vector<long>{7});
    CHECK(parse_range("1,3..5") == std::vector<long>{1, 3, 4, 5});
    CHECK_THROWS_AS(parse_range("5..2"), InvalidInput);
    CHECK_THROWS_AS(parse_range(""), InvalidInput);
    CHECK_THROWS_AS(parse_range("1,,2"), InvalidInput);
    CHECK_THROWS(parse_range("a..b"));
    CHECK(parse_command("sweep") == Command::sweep);
    CHECK_THROWS_AS(parse_command("nope"), InvalidInput);
    CHECK_THROWS_AS(parse_format("xml"), InvalidInput);
}

TEST_CASE("normalize fills defaults and rejects bad configs")
{
    RunConfig c;
    c.command = Command::verify_wronskian;
    const auto n = normalize(c);
    CHECK(n.m_values == std::vector<long>{2, 3, 4, 5, 6, 7, 8});
    CHECK(*n.q_trunc == 40);

    c.q_trunc = Rational(0);
    CHECK_THROWS_AS(normalize(c), InvalidInput);
    c.q_trunc = Rational(-1);
    CHECK_THROWS_AS(normalize(c), InvalidInput);

    RunConfig k;
    k.command = Command::classify;
    CHECK_THROWS_AS(normalize(k), InvalidInput);
}

TEST_CASE("verify-wronskian report")
{
    RunConfig c;
    c.command = Command::verify_wronskian;
    c.m_values = {2, 3, 4};
    c.q_trunc = Rational(12);
    const auto r = run_config(c);
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["status"] == "PASS");
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["c2"] == "1/1");
    CHECK(j["rows"][1]["ord_W"] == "5/12");
    CHECK(j["rows"][1]["leading_coeff"] == "1/2");
}

TEST_CASE("output is identical across runs and job counts")
{
    for (auto cmd : {Command::verify_wronskian, Command::verify_orders, Command::verify_identities}) {
        RunConfig c;
        c.command = cmd;
        c.m_values = {3, 4, 5};
        c.q_trunc = Rational(8);
        c.samples = 3;
        const auto a = run_config(c);
        const auto b = run_config(c);
        c.jobs = 4;
        const auto p = run_config(c);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out == p.out);
    }
}

TEST_CASE("classify example")
{
    RunConfig c;
    c.command = Command::classify;
    c.k_values = {3};
    c.m_values = {5};
    c.N_values = {1};
    const auto r = run_config(c);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"][0]["part_i"] == false);
    CHECK(j["rows"][0]["part_ii"] == true);
    CHECK(j["rows"][0]["part_iii"] == true);
}

TEST_CASE("discrepancy flags do not change the exit status")
{
    RunConfig c;
    c.command = Command::classify;
    c.k_values = {3};
    c.m_values = {6};
    c.N_values = {1};
    const auto r = run_config(c);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"][0]["discrepancy_flags"].size() == 1);

    RunConfig s;
    s.command = Command::sweep;
    s.k_values = {3, 5};
    const auto sw = run_config(s);
    CHECK(sw.code == 0);
    const auto js = nlohmann::json::parse(sw.out);
    REQUIRE(js["discrepancies"].size() == 1);
    CHECK(js["discrepancies"][0]["m"] == 6);
}

TEST_CASE("invalid input gives a failure record and a nonzero exit")
{
    RunConfig c;
    c.command = Command::classify;
    c.k_values = {4};
    c.m_values = {9};
    c.N_values = {1};
    const auto r = run_config(c);
    CHECK(r.code == 2);
    const auto j = nlohmann::json::parse(r.err);
    CHECK(j["status"] == "FAIL");
    CHECK(j["invariant"] == "InvalidInput");
    CHECK(j.contains("m"));
    CHECK(j.contains("exponent"));

    RunConfig w;
    w.command = Command::verify_wronskian;
    w.m_values = {1};
    CHECK(run_config(w).code == 2);
}

TEST_CASE("too small a truncation is a verification failure")
{
    RunConfig c;
    c.command = Command::verify_orders;
    c.m_values = {6};
    c.q_trunc = Rational(1);
    const auto r = run_config(c);
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.err);
    CHECK(j["status"] == "FAIL");
    CHECK(j["m"] == 6);
    CHECK(!j["invariant"].get<std::string>().empty());
    const auto rep = nlohmann::json::parse(r.out);
    CHECK(rep["status"] == "FAIL");
}

TEST_CASE("csv and text renderings")
{
    RunConfig c;
    c.command = Command::verify_characters;
    c.m_values = {2, 3};
    c.format = Format::csv;
    const auto r = run_config(c);
    CHECK(r.code == 0);
    CHECK(r.out.find("m,mu,exponent,t_eigenvalue,pass\n2,1,1/8,1/8,true\n") != std::string::npos);
    CHECK(r.out.find("m,xi,delta_power,closed_form,faulhaber,pass\n2,1/4,3,true,true,true\n") !=
          std::string::npos);

    c.format = Format::text;
    const auto t = run_config(c);
    CHECK(t.out.find("status: PASS") != std::string::npos);
}

TEST_CASE("reports go to --output, the environment directory, and series dumps")
{
    const auto dir = scratch("out");
    RunConfig c;
    c.command = Command::verify_wronskian;
    c.m_values = {2, 3};
    c.q_trunc = Rational(6);
    c.output = (dir / "report.json").string();
    c.dump_series = (dir / "series").string();
    const auto r = run_config(c);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::exists(dir / "report.json"));
    std::ifstream f(dir / "series" / "wronskian_m3.txt");
    std::stringstream buf;
    buf << f.rdbuf();
    const auto s = from_text(buf.str());
    CHECK(*s.ord() == ratio(5, 12));
    CHECK(s.leading_coefficient() == ratio(1, 2));

    const auto env_dir = scratch("env");
    setenv(output_dir_env, env_dir.string().c_str(), 1);
    RunConfig e;
    e.command = Command::verify_characters;
    e.m_values = {2};
    e.format = Format::csv;
    const auto re = run_config(e);
    unsetenv(output_dir_env);
    CHECK(re.code == 0);
    CHECK(re.out.empty());
    CHECK(std::filesystem::exists(env_dir / "verify-characters.csv"));
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(env_dir);
}

TEST_CASE("verify-identities ingests a coefficient file")
{
    const auto dir = scratch("jac");
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "phi.txt");
        f << "k=3 m=2 N=1 trunc=3\n1 1 1\n1 -1 -1\n2 -3 1\n2 3 -1\n";
    }
    RunConfig c;
    c.command = Command::verify_identities;
    c.m_values = {3};
    c.q_trunc = Rational(6);
    c.samples = 2;
    c.jacobi_file = (dir / "phi.txt").string();
    const auto r = run_config(c);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["jacobi_file"]["roundtrip"] == true);
    CHECK(j["jacobi_file"]["theta_components"][0] == "q^(7/8) + O(q^(23/8))");

    c.jacobi_file = (dir / "missing.txt").string();
    CHECK(run_config(c).code == 2);
    std::filesystem::remove_all(dir);
}
