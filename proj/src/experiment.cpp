#include "nfkit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "nfkit/errors.hpp"
#include "nfkit/geometry.hpp"
#include "nfkit/quadfield.hpp"

namespace nfkit {

using nlohmann::ordered_json;

namespace {

std::vector<Integer> p_part_divisors(std::vector<Integer> const& divisors, Integer const& p)
{
    return sylow_subgroup(FinAbGroup{divisors, 0}, p).divisors;
}

ordered_json integers_json(std::vector<Integer> const& v)
{
    ordered_json a = ordered_json::array();
    for (auto const& x : v) {
        if (!x.fits_slong_p()) throw LimitError("integer too large for the records file");
        a.push_back(x.get_si());
    }
    return a;
}

std::vector<Integer> integers_from_json(ordered_json const& a)
{
    if (!a.is_array()) throw DomainError("expected an array of integers");
    std::vector<Integer> v;
    for (auto const& x : a) {
        if (!x.is_number_integer()) throw DomainError("expected an integer");
        v.push_back(Integer(static_cast<long>(x.get<std::int64_t>())));
    }
    return v;
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double approx(Rational const& q) { return static_cast<double>(to_long_double(q)); }

std::int64_t parse_header(std::string const& line)
{
    ordered_json h;
    try {
        h = ordered_json::parse(line);
    } catch (nlohmann::json::exception const&) {
        throw DomainError("corrupt checkpoint at line 1: header is not JSON");
    }
    if (!h.is_object() || !h.contains("schema") || h["schema"] != sweep_schema || !h.contains("X") ||
        !h["X"].is_number_integer())
        throw DomainError("corrupt checkpoint at line 1: expected a " + std::string(sweep_schema) + " header");
    return h["X"].get<std::int64_t>();
}

struct Checkpoint {
    std::int64_t X = 0;
    std::vector<SweepRecord> records;
};

// Reads the header and records, checking each record against the expected
// discriminant sequence.
Checkpoint load_checkpoint(std::string const& path, std::vector<std::int64_t> const* expected)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (content.empty()) throw DomainError("empty records file " + path);
    Checkpoint c;
    std::size_t pos = 0, lineno = 0;
    while (pos < content.size()) {
        std::size_t nl = content.find('\n', pos);
        ++lineno;
        if (nl == std::string::npos) throw DomainError("corrupt checkpoint at line " + std::to_string(lineno) + ": truncated line");
        std::string line = content.substr(pos, nl - pos);
        pos = nl + 1;
        if (lineno == 1) {
            c.X = parse_header(line);
            continue;
        }
        SweepRecord r;
        try {
            r = parse_sweep_record(line);
        } catch (Error const& e) {
            throw DomainError("corrupt checkpoint at line " + std::to_string(lineno) + ": " + e.what());
        }
        std::size_t i = c.records.size();
        bool ok = expected ? i < expected->size() && (*expected)[i] == r.D
                           : r.D >= 1 && r.D <= c.X && is_fundamental_discriminant(r.D) &&
                                 (c.records.empty() || c.records.back().D < r.D);
        if (!ok)
            throw DomainError("corrupt checkpoint at line " + std::to_string(lineno) + ": unexpected discriminant " +
                              std::to_string(r.D));
        c.records.push_back(std::move(r));
    }
    return c;
}

}  // namespace

SweepRecord sweep_record(std::int64_t D)
{
    WideClassGroup W(D);
    SweepRecord r;
    r.D = D;
    r.divisors = W.group().divisors;
    r.h = W.group().order();
    r.sylow5 = p_part_divisors(r.divisors, 5);
    return r;
}

std::string sweep_record_line(SweepRecord const& r)
{
    ordered_json j;
    j["D"] = r.D;
    if (!r.h.fits_slong_p()) throw LimitError("class number too large for the records file");
    j["h"] = r.h.get_si();
    j["divisors"] = integers_json(r.divisors);
    j["sylow5"] = integers_json(r.sylow5);
    return j.dump();
}

std::string sweep_header_line(std::int64_t X)
{
    ordered_json j;
    j["schema"] = sweep_schema;
    j["X"] = X;
    return j.dump();
}

SweepRecord parse_sweep_record(std::string const& line)
{
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (nlohmann::json::exception const&) {
        throw DomainError("record is not JSON");
    }
    if (!j.is_object() || !j.contains("D") || !j.contains("h") || !j.contains("divisors") || !j.contains("sylow5"))
        throw DomainError("record lacks a field");
    if (!j["D"].is_number_integer() || !j["h"].is_number_integer()) throw DomainError("D and h must be integers");
    SweepRecord r;
    r.D = j["D"].get<std::int64_t>();
    r.h = Integer(static_cast<long>(j["h"].get<std::int64_t>()));
    r.divisors = integers_from_json(j["divisors"]);
    r.sylow5 = integers_from_json(j["sylow5"]);
    Integer prod = 1;
    for (std::size_t i = 0; i < r.divisors.size(); ++i) {
        if (r.divisors[i] < 2 || (i > 0 && r.divisors[i] % r.divisors[i - 1] != 0))
            throw DomainError("divisors do not form a divisibility chain");
        prod *= r.divisors[i];
    }
    if (prod != r.h) throw DomainError("h differs from the product of the divisors");
    if (p_part_divisors(r.divisors, 5) != r.sylow5) throw DomainError("sylow5 does not match the divisors");
    return r;
}

SweepSummary run_sweep(SweepOptions const& opt)
{
    if (opt.X < 5) throw DomainError("sweep needs X >= 5");
    if (opt.workers < 1) throw DomainError("sweep needs at least one worker");
    if (opt.block_size < 1) throw DomainError("block size must be positive");
    std::vector<std::int64_t> discs = fundamental_discriminants(1, opt.X, 1);
    SweepSummary summary;
    summary.total = discs.size();

    std::size_t start = 0;
    bool append = false;
    if (opt.resume && std::filesystem::exists(opt.path)) {
        Checkpoint c = load_checkpoint(opt.path, nullptr);
        if (c.X != opt.X)
            throw DomainError("checkpoint header has X = " + std::to_string(c.X) + ", expected " + std::to_string(opt.X));
        c = load_checkpoint(opt.path, &discs);
        start = c.records.size();
        append = true;
    }
    summary.reused = start;

    std::ofstream out(opt.path, append ? std::ios::binary | std::ios::app : std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + opt.path);
    if (!append) out << sweep_header_line(opt.X) << '\n' << std::flush;

    std::size_t remaining = discs.size() - start;
    std::size_t nblocks = (remaining + opt.block_size - 1) / opt.block_size;
    std::vector<std::optional<std::string>> done(nblocks);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::optional<std::string> failure;
    std::size_t retried = 0;

    auto compute_block = [&](std::size_t b, int attempt) {
        if (opt.before_block) opt.before_block(b, attempt);
        std::string text;
        std::size_t lo = start + b * opt.block_size, hi = std::min(discs.size(), lo + opt.block_size);
        for (std::size_t i = lo; i < hi; ++i) text += sweep_record_line(sweep_record(discs[i])) + '\n';
        return text;
    };
    auto worker = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks || stop) return;
            std::optional<std::string> text;
            std::string err;
            for (int attempt = 0; attempt < 2 && !text; ++attempt) {
                try {
                    text = compute_block(b, attempt);
                } catch (std::exception const& e) {
                    err = e.what();
                    if (attempt == 0) {
                        std::lock_guard<std::mutex> lock(mu);
                        ++retried;
                    }
                }
            }
            std::lock_guard<std::mutex> lock(mu);
            if (text)
                done[b] = std::move(text);
            else if (!failure) {
                failure = "block " + std::to_string(b) + " failed twice: " + err;
                stop = true;
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(opt.workers, std::max<std::size_t>(nblocks, 1)));
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::size_t b = 0; b < nblocks; ++b) {
        std::string text;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return done[b].has_value() || failure.has_value(); });
            if (!done[b]) break;
            text = std::move(*done[b]);
            done[b].reset();
        }
        out << text << std::flush;
        if (!out) {
            std::lock_guard<std::mutex> lock(mu);
            failure = "write to " + opt.path + " failed";
            stop = true;
            break;
        }
    }
    for (auto& t : pool) t.join();
    if (failure) throw Error("sweep aborted: " + *failure);
    summary.computed = remaining;
    summary.retried_blocks = retried;
    return summary;
}

SweepFile read_sweep(std::string const& path)
{
    Checkpoint c = load_checkpoint(path, nullptr);
    SweepFile f;
    f.X = c.X;
    f.records = std::move(c.records);
    f.complete = f.records.size() == fundamental_discriminants(1, f.X, 1).size();
    return f;
}

TallyReport tally(SweepFile const& data, Integer const& p, unsigned terms)
{
    if (data.records.empty()) throw DomainError("no records to tally");
    if (!is_prime(p)) throw DomainError("tally needs a prime p");
    TallyReport r;
    r.X = data.X;
    r.p = p;
    r.terms = terms;
    r.n_fields = data.records.size();
    std::map<std::vector<Integer>, std::size_t> counts;
    std::size_t divisible = 0;
    for (auto const& rec : data.records) {
        ++counts[p == 5 ? rec.sylow5 : p_part_divisors(rec.divisors, p)];
        if (rec.h % p == 0) ++divisible;
    }
    Rational n(static_cast<unsigned long>(r.n_fields));
    for (auto const& [divs, count] : counts) {
        TallyClass c;
        c.group = FinAbGroup{divs, 0};
        c.count = count;
        c.observed = Rational(static_cast<unsigned long>(count)) / n;
        c.predicted = cohen_lenstra_mass(c.group, p, terms);
        r.classes.push_back(std::move(c));
    }
    std::sort(r.classes.begin(), r.classes.end(), [](TallyClass const& a, TallyClass const& b) {
        Integer oa = a.group.order(), ob = b.group.order();
        return oa != ob ? oa < ob : a.group.divisors < b.group.divisors;
    });
    r.observed_divisible = Rational(static_cast<unsigned long>(divisible)) / n;
    auto w = cohen_lenstra_wp(p, terms);
    r.predicted_divisible = {1 - w.hi, 1 - w.lo};
    return r;
}

ordered_json rational_json(Rational const& q)
{
    ordered_json j;
    j["num"] = q.get_num().get_str();
    j["den"] = q.get_den().get_str();
    j["approx"] = approx(q);
    return j;
}

namespace {

ordered_json interval_json(RationalInterval const& iv)
{
    ordered_json j;
    j["lo"] = rational_json(iv.lo);
    j["hi"] = rational_json(iv.hi);
    return j;
}

}  // namespace

ordered_json tally_json(TallyReport const& r)
{
    ordered_json j;
    j["X"] = r.X;
    j["n_fields"] = r.n_fields;
    j["p"] = r.p.get_str();
    j["terms"] = r.terms;
    ordered_json classes = ordered_json::array();
    for (auto const& c : r.classes) {
        ordered_json e;
        e["group"] = c.group.to_string();
        e["divisors"] = integers_json(c.group.divisors);
        e["count"] = c.count;
        e["observed"] = rational_json(c.observed);
        e["predicted"] = interval_json(c.predicted);
        classes.push_back(std::move(e));
    }
    j["classes"] = std::move(classes);
    j["observed_divisible"] = rational_json(r.observed_divisible);
    j["predicted_divisible"] = interval_json(r.predicted_divisible);
    return j;
}

std::string tally_table(TallyReport const& r)
{
    std::ostringstream os;
    char buf[160];
    os << "X = " << r.X << ", fields = " << r.n_fields << ", p = " << r.p << "\n";
    std::snprintf(buf, sizeof buf, "%-20s %10s %12s %12s\n", "Sylow subgroup", "count", "observed", "predicted");
    os << buf;
    for (auto const& c : r.classes) {
        std::snprintf(buf, sizeof buf, "%-20s %10zu %12.6f %12.6f\n", c.group.to_string().c_str(), c.count,
                      approx(c.observed), approx(c.predicted.midpoint()));
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "%-20s %10s %12.6f %12.6f\n", ("p | h (p = " + r.p.get_str() + ")").c_str(), "",
                  approx(r.observed_divisible), approx(r.predicted_divisible.midpoint()));
    os << buf;
    return os.str();
}

std::vector<ConvergenceRow> convergence(SweepFile const& data, std::vector<std::int64_t> const& checkpoints)
{
    std::int64_t covered = data.complete ? data.X : (data.records.empty() ? 0 : data.records.back().D);
    auto w = cohen_lenstra_wp(5, 40);
    Rational predicted = 1 - w.midpoint();
    std::vector<ConvergenceRow> rows;
    for (auto X : checkpoints) {
        if (X < 1) throw DomainError("checkpoints must be positive");
        if (X > covered)
            throw DomainError("checkpoint " + std::to_string(X) + " is beyond the data (covered up to " +
                              std::to_string(covered) + ")");
        std::size_t n = 0, divisible = 0;
        for (auto const& rec : data.records) {
            if (rec.D > X) break;
            ++n;
            if (!rec.sylow5.empty()) ++divisible;
        }
        ConvergenceRow row;
        row.X = X;
        row.n_fields = n;
        row.observed = n ? Rational(static_cast<unsigned long>(divisible)) / Rational(static_cast<unsigned long>(n))
                         : Rational(0);
        row.predicted = predicted;
        rows.push_back(row);
    }
    return rows;
}

std::string convergence_csv(std::vector<ConvergenceRow> const& rows)
{
    std::string s = "X,n_fields,observed_div5,predicted_1_minus_w5\n";
    for (auto const& r : rows)
        s += std::to_string(r.X) + "," + std::to_string(r.n_fields) + "," + format_double(approx(r.observed)) + "," +
             format_double(approx(r.predicted)) + "\n";
    return s;
}

ordered_json field_report(RatPoly const& f)
{
    Field K = NumberField::create(f);
    Order O = maximal_order(K);
    ordered_json j;
    j["polynomial"] = to_string(f);
    j["degree"] = K->degree();
    j["signature"] = {K->signature().first, K->signature().second};
    ordered_json basis = ordered_json::array();
    for (auto const& w : O.basis()) basis.push_back(w.to_string());
    j["integral_basis"] = std::move(basis);
    j["disc"] = O.discriminant().get_str();
    j["index"] = O.index().get_str();
    if (K->degree() == 2) {
        if (!O.discriminant().fits_slong_p()) throw LimitError("discriminant too large for the class group backend");
        std::int64_t D = O.discriminant().get_si();
        WideClassGroup W(D);
        j["h"] = W.group().order().get_si();
        j["divisors"] = integers_json(W.group().divisors);
        j["class_group"] = W.group().to_string();
        if (D > 0) {
            QuadUnit u = fundamental_unit(D);
            FieldElem eps = (K->from_rational(Rational(u.pell_x())) + sqrt_disc(O) * Rational(u.pell_y())) *
                            Rational(1, 2);
            j["fundamental_unit"] = eps.to_string();
            j["unit_norm"] = u.norm;
        }
    }
    return j;
}

std::string lattice_csv(RatPoly const& f, Rational const& box)
{
    Order O = maximal_order(NumberField::create(f));
    std::string s = "x,y\n";
    for (auto const& p : plot_lattice_points(O, box))
        s += format_double(static_cast<double>(p.x)) + "," + format_double(static_cast<double>(p.y)) + "\n";
    return s;
}

std::string unit_hyperbola_csv(std::int64_t D, Rational const& box)
{
    std::string s = "a,b,in_order,on_curve\n";
    for (auto const& p : plot_unit_hyperbola_points(D, box))
        s += p.a.get_str() + "," + p.b.get_str() + "," + (p.in_order ? "1" : "0") + "," + (p.on_curve ? "1" : "0") +
             "\n";
    return s;
}

std::string log_units_csv(std::int64_t D, long count)
{
    std::string s = "k,sign,x,y\n";
    for (auto const& p : plot_log_units(D, count))
        s += std::to_string(p.k) + "," + std::to_string(p.sign) + "," + format_double(static_cast<double>(p.x)) + "," +
             format_double(static_cast<double>(p.y)) + "\n";
    return s;
}

}  // namespace nfkit
