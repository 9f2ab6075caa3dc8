#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nfkit/errors.hpp"
#include "nfkit/experiment.hpp"
#include "nfkit/geometry.hpp"
#include "nfkit/quadfield.hpp"

using namespace nfkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("nfkit-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(std::string const& name) const { return (path / name).string(); }
};

std::string slurp(std::string const& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(std::string const& p, std::string const& s)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << s;
}

SweepSummary sweep(std::string const& path, std::int64_t X, unsigned workers, bool resume = false,
                   std::size_t block = 64)
{
    SweepOptions o;
    o.X = X;
    o.workers = workers;
    o.path = path;
    o.resume = resume;
    o.block_size = block;
    return run_sweep(o);
}

std::string error_of(std::function<void()> f)
{
    try {
        f();
    } catch (std::exception const& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("records of a small sweep")
{
    TempDir tmp;
    auto s = sweep(tmp.file("a.jsonl"), 40, 2, false, 1024);
    CHECK(s.total == 12);
    CHECK(s.computed == 12);
    auto f = read_sweep(tmp.file("a.jsonl"));
    CHECK(f.X == 40);
    CHECK(f.complete);
    std::vector<std::int64_t> Ds;
    for (auto const& r : f.records) Ds.push_back(r.D);
    CHECK(Ds == std::vector<std::int64_t>{5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40});
    std::string text = slurp(tmp.file("a.jsonl"));
    CHECK(text.substr(0, text.find('\n')) == R"({"schema":"nfkit-sweep/1","X":40})");
    CHECK(text.find(R"({"D":40,"h":2,"divisors":[2],"sylow5":[]})") != std::string::npos);
    CHECK_THROWS_AS(sweep(tmp.file("b.jsonl"), 4, 1), DomainError);
}

TEST_CASE("records agree with the ideal class count")
{
    for (auto D : fundamental_discriminants(1, 300, 1)) {
        CAPTURE(D);
        SweepRecord r = sweep_record(D);
        CHECK(r.h == Integer(static_cast<unsigned long>(ideal_class_count(quadratic_field(D)))));
        CHECK(parse_sweep_record(sweep_record_line(r)) == r);
    }
    // 5 | h first happens for D = 401 (h = 5)
    SweepRecord r = sweep_record(401);
    CHECK(r.h == 5);
    CHECK(r.sylow5 == std::vector<Integer>{5});
}

TEST_CASE("record validation")
{
    CHECK_NOTHROW(parse_sweep_record(R"({"D":229,"h":3,"divisors":[3],"sylow5":[]})"));
    CHECK_THROWS_AS(parse_sweep_record(R"({"D":229,"h":4,"divisors":[3],"sylow5":[]})"), DomainError);
    CHECK_THROWS_AS(parse_sweep_record(R"({"D":229,"h":10,"divisors":[10],"sylow5":[]})"), DomainError);
    CHECK_THROWS_AS(parse_sweep_record(R"({"D":229,"h":6,"divisors":[3,2],"sylow5":[]})"), DomainError);
    CHECK_THROWS_AS(parse_sweep_record(R"({"D":229,"h":3})"), DomainError);
    CHECK_THROWS_AS(parse_sweep_record("{\"D\":229,"), DomainError);
}

TEST_CASE("output does not depend on the worker count")
{
    TempDir tmp;
    sweep(tmp.file("w1.jsonl"), 3000, 1, false, 16);
    sweep(tmp.file("w2.jsonl"), 3000, 2, false, 16);
    sweep(tmp.file("w8.jsonl"), 3000, 8, false, 16);
    sweep(tmp.file("wb.jsonl"), 3000, 3, false, 1024);
    std::string ref = slurp(tmp.file("w1.jsonl"));
    CHECK(ref == slurp(tmp.file("w2.jsonl")));
    CHECK(ref == slurp(tmp.file("w8.jsonl")));
    CHECK(ref == slurp(tmp.file("wb.jsonl")));
}

TEST_CASE("resume")
{
    TempDir tmp;
    std::string path = tmp.file("r.jsonl");
    sweep(path, 2000, 2);
    std::string full = slurp(path);

    auto s = sweep(path, 2000, 2, true);
    CHECK(s.computed == 0);
    CHECK(s.reused == s.total);
    CHECK(slurp(path) == full);

    // cut after the header plus 100 records
    std::size_t pos = 0;
    for (int i = 0; i < 101; ++i) pos = full.find('\n', pos) + 1;
    spit(path, full.substr(0, pos));
    s = sweep(path, 2000, 3, true);
    CHECK(s.reused == 100);
    CHECK(s.computed == s.total - 100);
    CHECK(slurp(path) == full);

    // resume without a file starts over
    fs::remove(path);
    sweep(path, 2000, 1, true);
    CHECK(slurp(path) == full);

    // a torn last line names its line number
    spit(path, full.substr(0, pos + 10));
    CHECK(error_of([&] { sweep(path, 2000, 1, true); }).find("line 102") != std::string::npos);

    // a corrupt record in the middle
    std::string bad = full;
    std::size_t l5 = 0;
    for (int i = 0; i < 4; ++i) l5 = bad.find('\n', l5) + 1;
    bad.replace(bad.find("\"h\":", l5), 5, "\"h\":9");
    spit(path, bad);
    std::string msg = error_of([&] { sweep(path, 2000, 1, true); });
    CHECK(msg.find("line 5") != std::string::npos);
    CHECK_THROWS_AS(read_sweep(path), DomainError);

    // header for another X
    spit(path, full);
    CHECK(error_of([&] { sweep(path, 3000, 1, true); }).find("X = 2000") != std::string::npos);
    spit(path, "{\"schema\":\"other\",\"X\":2000}\n");
    CHECK(error_of([&] { sweep(path, 2000, 1, true); }).find("line 1") != std::string::npos);
}

TEST_CASE("failing blocks are retried once")
{
    TempDir tmp;
    sweep(tmp.file("ref.jsonl"), 2000, 1);
    SweepOptions o;
    o.X = 2000;
    o.workers = 4;
    o.path = tmp.file("retry.jsonl");
    o.block_size = 64;
    o.before_block = [](std::size_t b, int attempt) {
        if (b % 3 == 1 && attempt == 0) throw std::runtime_error("injected");
    };
    auto s = run_sweep(o);
    CHECK(s.retried_blocks == 3);  // 608 discriminants -> blocks 0..9
    CHECK(slurp(o.path) == slurp(tmp.file("ref.jsonl")));

    o.before_block = [](std::size_t b, int) {
        if (b == 2) throw std::runtime_error("injected");
    };
    CHECK(error_of([&] { run_sweep(o); }).find("block 2 failed twice") != std::string::npos);
}

TEST_CASE("tally")
{
    TempDir tmp;
    sweep(tmp.file("t.jsonl"), 20000, 2, false, 1024);
    SweepFile f = read_sweep(tmp.file("t.jsonl"));
    for (int p : {5, 3, 2}) {
        TallyReport r = tally(f, p);
        CAPTURE(p);
        std::size_t total = 0;
        Rational sum = 0;
        for (auto const& c : r.classes) {
            total += c.count;
            sum += c.observed;
            CHECK(c.observed >= 0);
            CHECK(c.observed <= 1);
            CHECK(c.predicted.lo <= c.predicted.hi);
        }
        CHECK(total == r.n_fields);
        CHECK(sum == 1);
        CHECK(r.classes[0].group.is_trivial());
        CHECK(r.observed_divisible == 1 - r.classes[0].observed);
    }
    TallyReport r5 = tally(f, 5);
    CHECK(r5.n_fields == f.records.size());
    CHECK(std::abs(to_long_double(r5.classes[0].predicted.midpoint()) - 0.950416) < 1e-6);
    CHECK(std::abs(to_long_double(r5.classes[1].predicted.midpoint()) - 0.047521) < 1e-6);
    CHECK(r5.classes[1].group.divisors == std::vector<Integer>{5});
    CHECK(r5.predicted_divisible.width() < Rational(1, 10000000000));
    CHECK(std::abs(to_long_double(r5.predicted_divisible.midpoint()) - 0.049584) < 1e-6);

    auto j = tally_json(r5);
    CHECK(j["n_fields"] == r5.n_fields);
    CHECK(j["classes"][0]["observed"]["den"] == r5.classes[0].observed.get_den().get_str());
    CHECK(tally_table(r5).find("p | h") != std::string::npos);

    CHECK_THROWS_AS(tally(f, 4), DomainError);
    CHECK_THROWS_AS(tally(SweepFile{}, 5), DomainError);
}

TEST_CASE("convergence")
{
    TempDir tmp;
    sweep(tmp.file("c.jsonl"), 10000, 2, false, 1024);
    SweepFile f = read_sweep(tmp.file("c.jsonl"));
    auto rows = convergence(f, {1000, 10000});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].n_fields == f.records.size());
    CHECK(rows[0].n_fields == fundamental_discriminants(1, 1000, 1).size());
    CHECK(rows[0].predicted == rows[1].predicted);
    std::size_t div = 0;
    for (auto const& r : f.records) div += r.h % 5 == 0;
    CHECK(rows[1].observed == Rational(static_cast<unsigned long>(div)) / Rational(static_cast<unsigned long>(f.records.size())));
    std::string csv = convergence_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) == "X,n_fields,observed_div5,predicted_1_minus_w5");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(convergence(f, {5000}).size() == 1);
    CHECK_THROWS_AS(convergence(f, {20000}), DomainError);
    CHECK_THROWS_AS(convergence(f, {0}), DomainError);
}

TEST_CASE("field reports")
{
    auto a = field_report(parse_poly("x^2-235"));
    CHECK(a["degree"] == 2);
    CHECK(a["signature"] == nlohmann::ordered_json::array({2, 0}));
    CHECK(a["disc"] == "940");
    CHECK(a["h"] == 6);
    CHECK(a["divisors"] == nlohmann::ordered_json::array({6}));
    CHECK(a["unit_norm"] == 1);

    Field K = NumberField::create(parse_poly("x^2+3"));
    auto b = field_report(parse_poly("x^2+3"));
    CHECK(b["disc"] == "-3");
    CHECK(b["h"] == 1);
    std::string half = ((K->one() + K->gen()) * Rational(1, 2)).to_string();
    bool found = false;
    for (auto const& w : b["integral_basis"]) found = found || w == half;
    CHECK(found);
    CHECK_FALSE(b.contains("fundamental_unit"));

    auto c = field_report(parse_poly("x^3-2"));
    CHECK(c["signature"] == nlohmann::ordered_json::array({1, 1}));
    CHECK_FALSE(c.contains("h"));

    auto u = field_report(parse_poly("x^2-3"));
    CHECK(u["fundamental_unit"] == "a+2");
    CHECK(u["unit_norm"] == 1);

    CHECK_THROWS_AS(field_report(parse_poly("x^2-4")), DomainError);
}

TEST_CASE("plot data")
{
    std::string lat = lattice_csv(parse_poly("x^2+3"), 2);
    CHECK(lat.substr(0, 4) == "x,y\n");
    CHECK(lat.find("\n0,0\n") != std::string::npos);
    std::string hyp = unit_hyperbola_csv(12, 8);
    CHECK(hyp.substr(0, hyp.find('\n')) == "a,b,in_order,on_curve");
    CHECK(hyp.find("\n2,1,1,1\n") != std::string::npos);
    std::string lg = log_units_csv(12, 2);
    CHECK(lg.substr(0, lg.find('\n')) == "k,sign,x,y");
    CHECK(std::count(lg.begin(), lg.end(), '\n') == 11);
}
