#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(std::string const& args)
{
    std::string cmd = std::string(NFKIT_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json run_json(std::string const& args)
{
    Run r = run("--json " + args);
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("exit codes")
{
    CHECK(run("field x^2-235").code == 0);
    CHECK(run("field x^2-4").code == 1);  // reducible
    CHECK(run("field 'x^2+*'").code == 2);  // parse error
    CHECK(run("bogus").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("splitting x^4-2 --cap 6").code == 3);
    CHECK(run("nib-check x^4-x^3+x^2-x+1 a/2").code == 1);
    CHECK(run("unit x^2+3").code == 1);
    CHECK(run("convergence /nonexistent/file --checkpoints 10").code == 1);
    CHECK(run("--help").code == 0);
}

TEST_CASE("field level commands")
{
    auto f = run_json("field x^2-235");
    CHECK(f["degree"] == 2);
    CHECK(f["disc"] == "940");
    CHECK(f["h"] == 6);
    CHECK(f["divisors"] == nlohmann::json::array({6}));

    auto p = run_json("factor-prime x^2-235 7");
    CHECK(p["primes"].size() == 2);

    auto a = run_json("aut x^4-2");
    CHECK(a["group"] == "C2");
    CHECK(a["images"][1] == "-a");

    auto s = run_json("splitting x^4-2");
    CHECK(s["degree"] == 8);
    CHECK(s["group"] == "D4");

    CHECK(run_json("nb-check x^4+4x^2+2 '-2a^3+10a^2-2a'")["normal_basis"] == true);
    CHECK(run_json("nb-check x^4+4x^2+2 a")["normal_basis"] == false);
    auto r1 = run_json("--seed 4 nb-check x^4+4x^2+2");
    auto r2 = run_json("--seed 4 nb-check x^4+4x^2+2");
    CHECK(r1["element"] == r2["element"]);

    auto t = run_json("tame x^4+4x^2+2");
    CHECK(t["tame"] == false);
    CHECK(t["witnesses"] == nlohmann::json::parse(R"([["2",4]])"));

    CHECK(run_json("verify-h1 x^4-10x^2+1")["status"] == "confirmed");
    CHECK(run_json("verify-h1 x^2-235")["status"] == "refuted");
    CHECK(run_json("classgroup x^2-235")["group"] == "Z/6");
    CHECK(run_json("unit x^2-3")["unit"] == "a+2");
}

TEST_CASE("experiment commands")
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("nfkit-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string recs = (dir / "r.jsonl").string();

    auto s = run_json("--workers 2 sweep --X 5000 --out " + recs);
    CHECK(s["computed"] == s["records"]);
    auto again = run_json("sweep --X 5000 --out " + recs + " --resume");
    CHECK(again["computed"] == 0);

    auto t = run_json("tally " + recs);
    CHECK(t["p"] == "5");
    CHECK(run("tally " + recs + " --p 3").code == 0);

    Run c = run("convergence " + recs + " --checkpoints 1000,5000");
    CHECK(c.code == 0);
    CHECK(c.out.rfind("X,n_fields,observed_div5,predicted_1_minus_w5\n", 0) == 0);
    CHECK(run("convergence " + recs + " --checkpoints 9000").code == 1);

    Run l = run("plot-data lattice x^2+3 --box 1");
    CHECK(l.code == 0);
    CHECK(l.out.rfind("x,y\n", 0) == 0);
    auto lj = run_json("plot-data lattice x^2+3 --box 1");
    CHECK(std::abs(lj["area"].get<double>() - 0.8660254037844386) < 1e-12);
    CHECK(run("plot-data units 12 --box 3").code == 0);
    CHECK(run("plot-data logunits 12").code == 0);
    CHECK(run("plot-data logunits -3").code == 1);
    fs::remove_all(dir);
}
