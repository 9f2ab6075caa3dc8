#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfkit/abgrp.hpp"
#include "nfkit/poly.hpp"

namespace nfkit {

/// Class group data of the real quadratic field of discriminant D.
struct SweepRecord {
    std::int64_t D = 0;
    Integer h = 1;
    std::vector<Integer> divisors;  // elementary divisors of Cl
    std::vector<Integer> sylow5;  // elementary divisors of the 5-Sylow subgroup

    bool operator==(SweepRecord const& o) const = default;
};

inline constexpr char const* sweep_schema = "nfkit-sweep/1";

SweepRecord sweep_record(std::int64_t D);
/// One compact JSON object, no trailing newline.
std::string sweep_record_line(SweepRecord const& r);
std::string sweep_header_line(std::int64_t X);
/// DomainError unless h = prod divisors and sylow5 matches the divisors.
SweepRecord parse_sweep_record(std::string const& line);

struct SweepOptions {
    std::int64_t X = 0;
    unsigned workers = 1;
    std::string path;
    bool resume = false;
    std::size_t block_size = 1024;
    /// Called before each block attempt (block index, attempt 0 or 1); a
    /// throw counts as a failed attempt. Used to exercise the retry path.
    std::function<void(std::size_t, int)> before_block;
};

struct SweepSummary {
    std::size_t total = 0;  // fundamental discriminants in [1, X]
    std::size_t reused = 0;  // records kept from the checkpoint
    std::size_t computed = 0;
    std::size_t retried_blocks = 0;
};

/// Writes the header and one record per positive fundamental discriminant
/// D <= X in ascending order. With resume, a valid prefix already in the file
/// is kept; a header for another X or a corrupt line is a DomainError naming
/// the line. A block failing twice aborts the sweep with an Error.
SweepSummary run_sweep(SweepOptions const& opt);

struct SweepFile {
    std::int64_t X = 0;
    std::vector<SweepRecord> records;
    bool complete = false;  // every fundamental D <= X is present
};

/// Validates the header, every record, and the ascending discriminant sequence.
SweepFile read_sweep(std::string const& path);

struct TallyClass {
    FinAbGroup group;  // Sylow p-subgroup
    std::size_t count = 0;
    Rational observed;
    RationalInterval predicted;  // w_p / (|A| |Aut A|)
};

struct TallyReport {
    std::int64_t X = 0;
    std::size_t n_fields = 0;
    Integer p = 5;
    unsigned terms = 40;
    std::vector<TallyClass> classes;  // by group order, then divisors
    Rational observed_divisible;  // proportion with p | h
    RationalInterval predicted_divisible;  // 1 - w_p
};

/// DomainError for an empty record set or a non-prime p.
TallyReport tally(SweepFile const& data, Integer const& p = 5, unsigned terms = 40);
nlohmann::ordered_json tally_json(TallyReport const& r);
std::string tally_table(TallyReport const& r);

struct ConvergenceRow {
    std::int64_t X = 0;
    std::size_t n_fields = 0;
    Rational observed;  // proportion with 5 | h among D <= X
    Rational predicted;  // midpoint of the 1 - w_5 enclosure
};

/// DomainError for a checkpoint beyond the data or below 1.
std::vector<ConvergenceRow> convergence(SweepFile const& data, std::vector<std::int64_t> const& checkpoints);
/// Columns X, n_fields, observed_div5, predicted_1_minus_w5.
std::string convergence_csv(std::vector<ConvergenceRow> const& rows);

/// Exact rational as {"num", "den", "approx"}.
nlohmann::ordered_json rational_json(Rational const& q);

/// Degree, signature, integral basis and discriminant; class group and
/// fundamental unit for quadratic fields.
nlohmann::ordered_json field_report(RatPoly const& f);

/// Plot data as CSV with a header row.
std::string lattice_csv(RatPoly const& f, Rational const& box);  // x,y
std::string unit_hyperbola_csv(std::int64_t D, Rational const& box);  // a,b,in_order,on_curve
std::string log_units_csv(std::int64_t D, long count);  // k,sign,x,y

}  // namespace nfkit
