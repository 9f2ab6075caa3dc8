#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfkit/errors.hpp"
#include "nfkit/experiment.hpp"
#include "nfkit/galois.hpp"
#include "nfkit/geometry.hpp"
#include "nfkit/quadfield.hpp"

using namespace nfkit;
using nlohmann::ordered_json;

namespace {

struct Globals {
    bool json = false;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

Field parse_field(std::string const& text) { return NumberField::create(parse_poly(text)); }

ordered_json elems_json(std::vector<FieldElem> const& v)
{
    ordered_json a = ordered_json::array();
    for (auto const& x : v) a.push_back(x.to_string());
    return a;
}

ordered_json prime_json(PrimeIdeal const& P)
{
    ordered_json j;
    j["p"] = P.p.get_str();
    j["e"] = P.e;
    j["f"] = P.f;
    j["generators"] = {P.p.get_str(), P.gen2.to_string()};
    return j;
}

ordered_json ideal_json(Ideal const& I)
{
    ordered_json j;
    j["norm"] = I.norm().get_str();
    j["basis"] = elems_json(I.basis());
    return j;
}

std::int64_t quadratic_disc(Field const& K)
{
    if (K->degree() != 2) throw DomainError("the field is not quadratic");
    Integer D = maximal_order(K).discriminant();
    if (!D.fits_slong_p()) throw LimitError("discriminant too large");
    return D.get_si();
}

ordered_json aut_json(AutGroup const& G)
{
    ordered_json j;
    j["order"] = G.order();
    j["group"] = G.id.to_string();
    j["normal"] = G.is_normal();
    ordered_json imgs = ordered_json::array();
    for (auto const& s : G.elements) imgs.push_back(s.gen_image.to_string());
    j["images"] = std::move(imgs);
    j["table"] = G.table;
    return j;
}

void print_human(std::ostream& os, ordered_json const& j, std::string const& indent = "")
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto const& v = it.value();
        if (v.is_object()) {
            os << indent << it.key() << ":\n";
            print_human(os, v, indent + "  ");
        } else if (v.is_array() && !v.empty() && v[0].is_object()) {
            os << indent << it.key() << ":\n";
            for (auto const& e : v) {
                os << indent << "  -\n";
                print_human(os, e, indent + "    ");
            }
        } else {
            os << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

void emit(Globals const& g, ordered_json const& j)
{
    if (g.json)
        std::cout << j.dump(2) << "\n";
    else
        print_human(std::cout, j);
}

std::vector<std::int64_t> parse_checkpoints(std::string const& text)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    std::size_t pos = 0;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (std::logic_error const&) {
            throw ParseError("bad checkpoint '" + item + "'", pos);
        }
        pos += item.size() + 1;
    }
    if (out.empty()) throw ParseError("no checkpoints", 0);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"nfkit: number fields, class groups and Galois modules"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "JSON output");
    app.add_option("--seed", g.seed, "seed for random choices");
    app.add_option("--workers", g.workers, "worker threads for sweep")->check(CLI::PositiveNumber);

    std::string poly, elem, path, prime, checkpoints, kind, arg;
    std::vector<std::string> gens;
    int cap = 24;
    std::int64_t X = 0;
    long p = 5, count = 5;
    bool resume = false;
    std::string box = "5";

    auto* field = app.add_subcommand("field", "field invariants");
    field->add_option("poly", poly)->required();
    auto* order = app.add_subcommand("order", "maximal order");
    order->add_option("poly", poly)->required();
    auto* fprime = app.add_subcommand("factor-prime", "decompose a rational prime");
    fprime->add_option("poly", poly)->required();
    fprime->add_option("p", prime)->required();
    auto* fideal = app.add_subcommand("factor-ideal", "factor the ideal generated by elements");
    fideal->add_option("poly", poly)->required();
    fideal->add_option("gens", gens)->required();
    auto* cg = app.add_subcommand("classgroup", "class group of a quadratic field");
    cg->add_option("poly", poly)->required();
    auto* unit = app.add_subcommand("unit", "fundamental unit of a real quadratic field");
    unit->add_option("poly", poly)->required();
    auto* aut = app.add_subcommand("aut", "automorphism group");
    aut->add_option("poly", poly)->required();
    auto* split = app.add_subcommand("splitting", "splitting field");
    split->add_option("poly", poly)->required();
    split->add_option("--cap", cap, "degree cap")->check(CLI::PositiveNumber);
    auto* nb = app.add_subcommand("nb-check", "normal basis generator test; samples one when no element is given");
    nb->add_option("poly", poly)->required();
    nb->add_option("elem", elem);
    auto* nib = app.add_subcommand("nib-check", "integral normal basis generator test");
    nib->add_option("poly", poly)->required();
    nib->add_option("elem", elem)->required();
    auto* tame = app.add_subcommand("tame", "tame ramification test");
    tame->add_option("poly", poly)->required();
    auto* h1 = app.add_subcommand("verify-h1", "certify class number one via the Minkowski bound");
    h1->add_option("poly", poly)->required();
    auto* sweep = app.add_subcommand("sweep", "class groups of real quadratic fields with D <= X");
    sweep->add_option("--X", X, "discriminant bound")->required();
    sweep->add_option("--out", path, "records file (JSON Lines)")->required();
    sweep->add_flag("--resume", resume, "keep records already in the file");
    auto* tal = app.add_subcommand("tally", "Sylow p-subgroup statistics of a records file");
    tal->add_option("records", path)->required();
    tal->add_option("--p", p, "prime");
    auto* conv = app.add_subcommand("convergence", "divisibility proportion at checkpoints (CSV)");
    conv->add_option("records", path)->required();
    conv->add_option("--checkpoints", checkpoints, "comma-separated bounds")->required();
    auto* plot = app.add_subcommand("plot-data", "plot data as CSV: lattice <poly>, units <D>, logunits <D>");
    plot->add_option("kind", kind)->required()->check(CLI::IsMember({"lattice", "units", "logunits"}));
    plot->add_option("arg", arg)->required();
    plot->add_option("--box", box, "coordinate bound (lattice, units)");
    plot->add_option("--count", count, "largest |k| (logunits)");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (field->parsed()) {
            emit(g, field_report(parse_poly(poly)));
        } else if (order->parsed()) {
            Order O = maximal_order(parse_field(poly));
            ordered_json j;
            j["basis"] = elems_json(O.basis());
            j["disc"] = O.discriminant().get_str();
            j["index"] = O.index().get_str();
            emit(g, j);
        } else if (fprime->parsed()) {
            Integer q;
            if (q.set_str(prime, 10) != 0) throw ParseError("bad prime '" + prime + "'", 0);
            if (!is_prime(q)) throw DomainError(prime + " is not prime");
            Field K = parse_field(poly);
            ordered_json primes = ordered_json::array();
            for (auto const& P : prime_decomposition(maximal_order(K), q)) primes.push_back(prime_json(P));
            ordered_json j;
            j["p"] = q.get_str();
            j["primes"] = std::move(primes);
            emit(g, j);
        } else if (fideal->parsed()) {
            Field K = parse_field(poly);
            Order O = maximal_order(K);
            std::vector<FieldElem> elems;
            for (auto const& s : gens) elems.push_back(K->parse(s));
            Ideal I = ideal_from_gens(O, elems);
            ordered_json factors = ordered_json::array();
            for (auto const& [P, e] : factor_ideal(I)) {
                ordered_json f = prime_json(P);
                f["exponent"] = e;
                factors.push_back(std::move(f));
            }
            ordered_json j;
            j["ideal"] = ideal_json(I);
            j["factors"] = std::move(factors);
            emit(g, j);
        } else if (cg->parsed()) {
            Field K = parse_field(poly);
            std::int64_t D = quadratic_disc(K);
            Order O = maximal_order(K);
            WideClassGroup W(D);
            ordered_json j;
            j["disc"] = D;
            j["h"] = W.group().order().get_si();
            j["group"] = W.group().to_string();
            ordered_json divs = ordered_json::array();
            for (auto const& d : W.group().divisors) divs.push_back(d.get_si());
            j["divisors"] = std::move(divs);
            ordered_json gi = ordered_json::array();
            for (std::size_t i = 0; i < W.group().divisors.size(); ++i) gi.push_back(ideal_json(W.generator_ideal(O, i)));
            j["generators"] = std::move(gi);
            if (D > 0) j["narrow_h"] = W.narrow_class_number();
            emit(g, j);
        } else if (unit->parsed()) {
            Field K = parse_field(poly);
            std::int64_t D = quadratic_disc(K);
            if (D < 0) throw DomainError("imaginary quadratic fields have no fundamental unit");
            QuadUnit u = fundamental_unit(D);
            FieldElem eps = (K->from_rational(Rational(u.pell_x())) + sqrt_disc(maximal_order(K)) * Rational(u.pell_y())) *
                            Rational(1, 2);
            ordered_json j;
            j["disc"] = D;
            j["unit"] = eps.to_string();
            j["norm"] = u.norm;
            auto le = log_embedding(eps);
            j["log_embedding"] = le.values;
            j["log_error"] = static_cast<double>(le.error);
            emit(g, j);
        } else if (aut->parsed()) {
            emit(g, aut_json(automorphism_group(parse_field(poly))));
        } else if (split->parsed()) {
            Field S = splitting_field(parse_poly(poly), cap);
            ordered_json j;
            j["degree"] = S->degree();
            j["polynomial"] = to_string(S->polynomial());
            AutGroup G = automorphism_group(S);
            j["group"] = G.id.to_string();
            j["group_order"] = G.order();
            emit(g, j);
        } else if (nb->parsed()) {
            Field K = parse_field(poly);
            ordered_json j;
            if (elem.empty()) {
                FieldElem b = random_normal_basis_generator(K, g.seed);
                j["element"] = b.to_string();
                j["normal_basis"] = true;
                j["seed"] = g.seed;
            } else {
                FieldElem b = K->parse(elem);
                j["element"] = b.to_string();
                j["normal_basis"] = normal_basis_check(b);
            }
            emit(g, j);
        } else if (nib->parsed()) {
            Field K = parse_field(poly);
            FieldElem b = K->parse(elem);
            ordered_json j;
            j["element"] = b.to_string();
            j["integral_normal_basis"] = integral_normal_basis_check(b);
            emit(g, j);
        } else if (tame->parsed()) {
            auto t = is_tamely_ramified(parse_field(poly));
            ordered_json j;
            j["tame"] = t.tame;
            ordered_json w = ordered_json::array();
            for (auto const& [q, e] : t.witnesses) w.push_back({q.get_str(), e});
            j["witnesses"] = std::move(w);
            emit(g, j);
        } else if (h1->parsed()) {
            auto r = verify_class_number_one(parse_field(poly));
            ordered_json j;
            j["status"] = r.status == ClassNumberOneStatus::confirmed ? "confirmed"
                          : r.status == ClassNumberOneStatus::refuted ? "refuted"
                                                                      : "inconclusive";
            j["minkowski_bound"] = rational_json(r.bound);
            ordered_json gs = ordered_json::array();
            for (auto const& [P, gen] : r.generators) {
                ordered_json e = prime_json(P);
                e["generator"] = gen.to_string();
                gs.push_back(std::move(e));
            }
            j["primes"] = std::move(gs);
            if (r.witness) j["witness"] = prime_json(*r.witness);
            emit(g, j);
        } else if (sweep->parsed()) {
            SweepOptions o;
            o.X = X;
            o.workers = g.workers;
            o.path = path;
            o.resume = resume;
            auto s = run_sweep(o);
            ordered_json j;
            j["X"] = X;
            j["records"] = s.total;
            j["reused"] = s.reused;
            j["computed"] = s.computed;
            j["retried_blocks"] = s.retried_blocks;
            emit(g, j);
        } else if (tal->parsed()) {
            TallyReport r = tally(read_sweep(path), Integer(p));
            if (g.json)
                std::cout << tally_json(r).dump(2) << "\n";
            else
                std::cout << tally_table(r);
        } else if (conv->parsed()) {
            auto rows = convergence(read_sweep(path), parse_checkpoints(checkpoints));
            if (g.json) {
                ordered_json a = ordered_json::array();
                for (auto const& r : rows) {
                    ordered_json e;
                    e["X"] = r.X;
                    e["n_fields"] = r.n_fields;
                    e["observed_div5"] = rational_json(r.observed);
                    e["predicted_1_minus_w5"] = rational_json(r.predicted);
                    a.push_back(std::move(e));
                }
                std::cout << a.dump(2) << "\n";
            } else {
                std::cout << convergence_csv(rows);
            }
        } else if (plot->parsed()) {
            Rational b = rational_from_string(box);
            if (kind == "lattice") {
                Field K = parse_field(arg);
                if (g.json) {
                    ordered_json j;
                    j["area"] = static_cast<double>(fundamental_domain_area(maximal_order(K)));
                    ordered_json pts = ordered_json::array();
                    for (auto const& pt : plot_lattice_points(maximal_order(K), b))
                        pts.push_back({static_cast<double>(pt.x), static_cast<double>(pt.y)});
                    j["points"] = std::move(pts);
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << lattice_csv(parse_poly(arg), b);
                }
            } else {
                std::int64_t D = 0;
                try {
                    D = std::stoll(arg);
                } catch (std::logic_error const&) {
                    throw ParseError("expected a discriminant, got '" + arg + "'", 0);
                }
                std::cout << (kind == "units" ? unit_hyperbola_csv(D, b) : log_units_csv(D, count));
            }
        }
    } catch (ParseError const& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (DomainError const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (LimitError const& e) {
        std::cerr << "limit: " << e.what() << "\n";
        return 3;
    } catch (std::exception const& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
