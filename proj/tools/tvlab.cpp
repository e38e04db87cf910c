#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvlab/tvlab.hpp"

using namespace tvlab;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kFailure = 2;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

Point parse_point(const std::string& s)
{
    Point p;
    for (const auto& t : split(s, ',')) p.push_back(parse_rational(t));
    if (p.empty()) throw InputError("empty point '" + s + "'");
    return p;
}

// "12;21" or "1,2;2,1": one injection per family, 1-based values.
std::vector<Injection> parse_injections(const std::string& s)
{
    std::vector<Injection> out;
    for (const auto& part : split(s, ';')) {
        Injection rho;
        const auto items = part.find(',') != std::string::npos ? split(part, ',') : [&] {
            std::vector<std::string> cs;
            for (char c : part) cs.emplace_back(1, c);
            return cs;
        }();
        for (const auto& it : items) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(it, &used);
            } catch (const std::exception&) {
                throw InputError("bad injection entry '" + it + "'");
            }
            if (used != it.size() || v < 1) throw InputError("bad injection entry '" + it + "'");
            rho.push_back(v - 1);
        }
        out.push_back(std::move(rho));
    }
    return out;
}

const Family& family_at(const ColorSystem& S, std::size_t i)
{
    if (i >= S.m()) throw InputError("family index " + std::to_string(i) + " out of range (m = " + std::to_string(S.m()) + ")");
    return S.families[i];
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json morse_json(const CellPoset& C, const MorseReport& r)
{
    json crit = json::array();
    for (std::size_t i = 0; i < r.critical.size(); ++i)
        crit.push_back({{"cell", C.cells[r.critical[i]].str()}, {"dimension", r.critical_dims[i]}});
    return {{"acyclic", r.acyclic},
            {"critical", std::move(crit)},
            {"euler_critical", r.euler_critical},
            {"euler_total", r.euler_total},
            {"euler_balanced", r.euler_balanced()}};
}

json homology_json(const HomologyReport& h)
{
    json tors = json::array();
    for (const auto& t : h.torsion) {
        json a = json::array();
        for (const auto& z : t) a.push_back(z.str());
        tors.push_back(std::move(a));
    }
    return {{"betti", h.betti_trimmed()}, {"torsion", std::move(tors)}, {"simplex_counts", h.simplex_counts},
            {"euler_characteristic", h.euler_characteristic()}};
}

struct ExperimentArgs
{
    std::string file;
    std::size_t d = 2, m = 2, n = 3;
    int k = 2;
    std::uint64_t seed = 1;
    int trials = 1;
    std::string scheme = "all";
};

int run_experiment(const ExperimentArgs& a, bool conjecture)
{
    if (conjecture && is_prime_power(a.k)) throw InputError("experiment conjecture needs k that is not a prime power");
    std::vector<std::pair<std::string, ColorSystem>> instances;
    if (!a.file.empty()) {
        instances.emplace_back("file", load_instance(a.file));
    } else {
        if (a.trials < 1) throw InputError("--trials must be positive");
        std::vector<std::string> schemes;
        if (a.scheme == "all")
            schemes = generator_schemes();
        else
            schemes = {a.scheme};
        for (const auto& sc : schemes)
            for (int t = 0; t < a.trials; ++t)
                instances.emplace_back(sc, generate_random_colorful_system(a.d, a.m, a.k, a.n, a.seed + static_cast<std::uint64_t>(t), sc));
    }

    std::map<std::string, int> tally;
    json trials = json::array();
    bool violation = false;
    for (std::size_t t = 0; t < instances.size(); ++t) {
        auto rep = theorem1_experiment(instances[t].second, a.k);
        ++tally[to_string(rep.verdict)];
        if (rep.verdict == Verdict::TheoremViolation) violation = true;
        json row = to_json(rep);
        row["trial"] = t;
        row["scheme"] = instances[t].first;
        if (instances.size() > 1) row.erase("families");
        trials.push_back(std::move(row));
    }
    json summary = json::object();
    for (const auto& [v, c] : tally) summary[v] = c;
    emit({{"experiment", conjecture ? "conjecture" : "theorem1"}, {"summary", summary}, {"trials", std::move(trials)}});
    return violation ? kFailure : kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification workbench for colorful Tverberg interpolation"};
    app.require_subcommand(1);
    int exit_code = kOk;

    // tverberg
    auto* tv = app.add_subcommand("tverberg", "Tverberg partitions of one family");
    tv->require_subcommand(1);
    std::string file;
    std::size_t family = 0;
    int k = 2;
    std::string partition;

    auto* tv_search = tv->add_subcommand("search", "first Tverberg k-partition in restricted-growth order");
    tv_search->add_option("--file", file, "instance JSON")->required();
    tv_search->add_option("--family", family, "family index (0-based)");
    tv_search->add_option("--k", k, "number of parts")->required();
    tv_search->callback([&] {
        auto S = load_instance(file);
        auto w = find_tverberg(family_at(S, family), k);
        if (!w) {
            std::cout << "none\n";
            return;
        }
        if (!verify_witness(family_at(S, family), *w)) throw InternalError("witness failed re-verification");
        emit(to_json(*w));
    });

    auto* tv_check = tv->add_subcommand("check", "test one partition, e.g. --partition 13|2");
    tv_check->add_option("--file", file, "instance JSON")->required();
    tv_check->add_option("--family", family, "family index (0-based)");
    tv_check->add_option("--partition", partition, "blocks of [n] separated by '|'")->required();
    tv_check->callback([&] {
        auto S = load_instance(file);
        const auto& F = family_at(S, family);
        auto w = is_tverberg(F, parse_partition(partition, F.size()));
        if (!w) {
            std::cout << "none\n";
            return;
        }
        emit(to_json(*w));
    });

    // colorful
    auto* col = app.add_subcommand("colorful", "colorful intersection property");
    col->require_subcommand(1);
    auto* col_check = col->add_subcommand("check", "first m-tuple with empty intersection, if any");
    col_check->add_option("--file", file, "instance JSON")->required();
    col_check->callback([&] {
        auto S = load_instance(file);
        auto v = check_colorful_intersection(S);
        json tuple = nullptr;
        if (v) {
            tuple = json::array();
            for (auto s : *v) tuple.push_back(s + 1);
        }
        emit({{"colorful_property", !v}, {"violation", tuple}});
    });

    // experiment
    auto* ex = app.add_subcommand("experiment", "interpolation experiments");
    ex->require_subcommand(1);
    ExperimentArgs ea;
    for (const char* name : {"theorem1", "conjecture"}) {
        const bool conj = std::string(name) == "conjecture";
        auto* sub = ex->add_subcommand(name, conj ? "same run for k not a prime power" : "theorem on a file or on seeded random instances");
        sub->add_option("--file", ea.file, "instance JSON (otherwise random instances)");
        sub->add_option("--d", ea.d, "dimension");
        sub->add_option("--m", ea.m, "number of families");
        sub->add_option("--k", ea.k, "number of parts")->required();
        sub->add_option("--n", ea.n, "sets per family");
        sub->add_option("--seed", ea.seed, "first seed; trial t uses seed + t");
        sub->add_option("--trials", ea.trials, "instances per scheme");
        sub->add_option("--scheme", ea.scheme, "axis-slabs, shifted-boxes, random-points-fattened or all");
        sub->callback([&, conj] { exit_code = run_experiment(ea, conj); });
    }
    long long bd = 2, bm = 2, bk = 2, bn = 3;
    auto* ex_bound = ex->add_subcommand("bound", "size bound against the join connectivity inequality");
    ex_bound->add_option("--d", bd)->required();
    ex_bound->add_option("--m", bm)->required();
    ex_bound->add_option("--k", bk)->required();
    ex_bound->add_option("--n", bn)->required();
    ex_bound->callback([&] {
        auto r = join_bound_check(bd, bm, bk, bn);
        emit({{"size_bound", to_string(r.size_bound)},
              {"size_hypothesis", r.size_hypothesis},
              {"join_connectivity", r.join_connectivity},
              {"target", r.target},
              {"join_inequality", r.join_inequality},
              {"equivalent", r.equivalent}});
        if (!r.equivalent) exit_code = kFailure;
    });

    // construct
    auto* con = app.add_subcommand("construct", "instance builders");
    con->require_subcommand(1);
    std::size_t cd = 2, cm = 2, cn = 3;
    int ck = 2;
    std::uint64_t cseed = 1;
    std::string out, base, scheme = "axis-slabs";
    auto* con_ext = con->add_subcommand("extremal", "tight instance with no Tverberg partition in any family");
    con_ext->add_option("--d", cd)->required();
    con_ext->add_option("--m", cm)->required();
    con_ext->add_option("--k", ck)->required();
    con_ext->add_option("--seed", cseed, "seed for the random base set");
    con_ext->add_option("--base", base, "base points in R^(d/m), e.g. \"0;1\" or \"0,0;1,0;0,1\"");
    con_ext->add_option("--out", out, "write the instance here instead of stdout");
    con_ext->callback([&] {
        std::optional<std::vector<Point>> pts;
        if (!base.empty()) {
            pts.emplace();
            for (const auto& p : split(base, ';')) pts->push_back(parse_point(p));
        }
        auto S = build_extremal(cd, cm, ck, pts, cseed);
        if (out.empty())
            emit(to_json(S));
        else
            save_instance(S, out);
    });
    auto* con_rand = con->add_subcommand("random", "seeded random colorful system");
    con_rand->add_option("--d", cd)->required();
    con_rand->add_option("--m", cm)->required();
    con_rand->add_option("--k", ck);
    con_rand->add_option("--n", cn)->required();
    con_rand->add_option("--seed", cseed);
    con_rand->add_option("--scheme", scheme);
    con_rand->add_option("--out", out);
    con_rand->callback([&] {
        auto S = generate_random_colorful_system(cd, cm, ck, cn, cseed, scheme);
        if (out.empty())
            emit(to_json(S));
        else
            save_instance(S, out);
    });

    // transversal
    auto* tr = app.add_subcommand("transversal", "flat transversals from Tverberg partitions");
    tr->require_subcommand(1);
    auto* tr_ext = tr->add_subcommand("extract", "affine flat of dimension <= n-k meeting every set");
    tr_ext->add_option("--file", file)->required();
    tr_ext->add_option("--family", family);
    tr_ext->add_option("--k", k)->required();
    tr_ext->callback([&] {
        auto S = load_instance(file);
        const auto& F = family_at(S, family);
        auto w = find_tverberg(F, k);
        if (!w) {
            std::cout << "none\n";
            return;
        }
        emit({{"witness", to_json(*w)}, {"flat", to_json(extract_flat_transversal(F, *w))}});
    });

    // sarkaria
    auto* sk = app.add_subcommand("sarkaria", "lifted formulation");
    sk->require_subcommand(1);
    std::string x;
    int part = 1;
    auto* sk_lift = sk->add_subcommand("lift", "(x, 1) tensor v_i");
    sk_lift->add_option("--x", x, "point, comma separated")->required();
    sk_lift->add_option("--i", part, "part index (1-based)")->required();
    sk_lift->add_option("--k", k)->required();
    sk_lift->callback([&] { emit(to_json(lift(parse_point(x), part - 1, k))); });

    auto* sk_cert = sk->add_subcommand("certify", "0 in the lifted hull for one partition");
    sk_cert->add_option("--file", file)->required();
    sk_cert->add_option("--family", family);
    sk_cert->add_option("--partition", partition)->required();
    sk_cert->callback([&] {
        auto S = load_instance(file);
        const auto& F = family_at(S, family);
        auto P = parse_partition(partition, F.size());
        auto lambda = sarkaria_zero_in_hull(F, P);
        const bool tverberg = is_tverberg(F, P).has_value();
        emit({{"zero_in_hull", lambda.has_value()},
              {"coefficients", lambda ? to_json(*lambda) : json("none")},
              {"is_tverberg", tverberg}});
        if (tverberg != lambda.has_value()) exit_code = kFailure;
    });

    auto* sk_sep = sk->add_subcommand("separators", "equivariant separating functionals");
    sk_sep->add_option("--file", file)->required();
    sk_sep->add_option("--family", family);
    sk_sep->add_option("--k", k)->required();
    sk_sep->callback([&] {
        auto S = load_instance(file);
        auto A = equivariant_separators(family_at(S, family), k);
        json fs = json::array();
        for (const auto& [phi, a] : A.functionals) fs.push_back({{"phi", phi.str()}, {"a", to_json(a)}});
        json reps = json::array();
        for (const auto& r : A.representatives) reps.push_back(r.str());
        emit({{"orbits", A.representatives.size()}, {"representatives", reps}, {"functionals", fs}});
    });

    std::string injections;
    auto* sk_avoid = sk->add_subcommand("avoid-b", "a join facet's image misses B");
    sk_avoid->add_option("--file", file)->required();
    sk_avoid->add_option("--k", k)->required();
    sk_avoid->add_option("--injections", injections, "one per family, 1-based, e.g. \"12;21\"")->required();
    sk_avoid->callback([&] {
        auto S = load_instance(file);
        std::vector<SeparatorAssignment> assignments;
        for (const auto& F : S.families) assignments.push_back(equivariant_separators(F, k));
        auto r = facet_avoids_B(S, parse_injections(injections), assignments);
        json pts = json::array();
        for (const auto& p : r.colorful_points) pts.push_back(to_json(p));
        json margins = json::array();
        for (const auto& e : r.margins)
            margins.push_back({{"family", e.family}, {"phi", e.phi.str()}, {"j", e.part + 1}, {"margin", to_string(e.margin)}});
        emit({{"colorful_points", pts}, {"margins", margins}, {"all_positive", r.all_positive}, {"image_meets_B", r.image_meets_B}});
        if (!r.all_positive || r.image_meets_B) exit_code = kFailure;
    });

    std::size_t dd = 1, dk = 2;
    auto* sk_dims = sk->add_subcommand("dims", "dimensions of Y, B and Y ∩ B^⊥");
    sk_dims->add_option("--d", dd)->required();
    sk_dims->add_option("--k", dk)->required();
    sk_dims->callback([&] {
        auto s = subspace_dims(dd, dk);
        emit({{"ambient", s.ambient}, {"dim_Y", s.dim_Y}, {"dim_B", s.dim_B}, {"dim_Y_perp_B", s.dim_Y_perp_B},
              {"dim_Y_perp_B_by_constraints", s.dim_Y_perp_B_by_constraints}});
        if (s.dim_Y_perp_B != s.dim_Y_perp_B_by_constraints || s.dim_Y_perp_B != dd * (dk - 1)) exit_code = kFailure;
    });

    // complex
    auto* cx = app.add_subcommand("complex", "the complexes K_{n,k} and C_{n,k}");
    cx->require_subcommand(1);
    int n = 3;
    std::string which = "C";
    auto* cx_build = cx->add_subcommand("build", "counts for K_{n,k} or C_{n,k}");
    cx_build->add_option("--n", n)->required();
    cx_build->add_option("--k", k)->required();
    cx_build->add_option("--which", which, "K or C")->check(CLI::IsMember({"K", "C"}));
    cx_build->callback([&] {
        if (which == "K") {
            auto K = build_Knk(n, k);
            std::vector<std::size_t> by_size;
            for (const auto& f : K.faces) {
                if (by_size.size() < f.size()) by_size.resize(f.size(), 0);
                ++by_size[f.size() - 1];
            }
            emit({{"complex", "K"}, {"n", n}, {"k", k}, {"vertices", K.vertices.size()},
                  {"facets", facets_Knk(n, k).size()}, {"faces_by_size", by_size}});
        } else {
            auto C = build_Cnk(n, k);
            emit({{"complex", "C"}, {"n", n}, {"k", k}, {"elements", C.cells.size()},
                  {"cells_by_dimension_from_-1", C.census()}, {"covers", C.poset.edge_count()}});
        }
    });

    auto* cx_hom = cx->add_subcommand("homology", "integral homology");
    cx_hom->add_option("--n", n)->required();
    cx_hom->add_option("--k", k)->required();
    cx_hom->add_option("--which", which, "K or C")->check(CLI::IsMember({"K", "C"}));
    cx_hom->callback([&] {
        auto h = which == "K" ? homology(simplicial_complex_of(build_Knk(n, k))) : homology(order_complex(build_Cnk(n, k)));
        json j = homology_json(h);
        j["complex"] = which;
        j["reduced_acyclic_through_n_minus_k_minus_1"] = h.reduced_acyclic_through(n - k - 1);
        emit(j);
    });

    auto* cx_q = cx->add_subcommand("quillen", "the face-to-cell map and its fibers");
    cx_q->add_option("--n", n)->required();
    cx_q->add_option("--k", k)->required();
    cx_q->callback([&] {
        auto r = quillen_map_and_fibers(n, k);
        emit({{"faces", r.faces}, {"cells", r.cells}, {"covers_checked", r.covers_checked},
              {"order_reversing", r.order_reversing}, {"surjective", r.surjective},
              {"fibers_checked", r.fibers_checked}, {"fibers_are_simplices", r.fibers_are_simplices},
              {"setwise_fixed_faces", r.setwise_fixed_faces}, {"violations", r.violations}});
        if (!r.ok()) exit_code = kFailure;
    });

    auto* cx_morse = cx->add_subcommand("morse", "recursive acyclic matching on C_{n,k}");
    cx_morse->add_option("--n", n)->required();
    cx_morse->add_option("--k", k)->required();
    cx_morse->callback([&] {
        auto r = lemma8_matching(n, k);
        json j = morse_json(r.complex, r.report);
        j["pairs"] = r.matching.pairs.size();
        j["critical_dims_ok"] = r.critical_dims_ok;
        emit(j);
        if (!r.report.acyclic || !r.critical_dims_ok || !r.report.euler_balanced()) exit_code = kFailure;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const SizeCapExceeded& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kInputError;
    } catch (const InternalError& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return kFailure;
    }
    return exit_code;
}
