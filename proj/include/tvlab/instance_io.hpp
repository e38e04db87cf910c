#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvlab/error.hpp"
#include "tvlab/geometry.hpp"
#include "tvlab/rational.hpp"
#include "tvlab/tverberg.hpp"

namespace tvlab {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const Vector& v)
{
    json a = json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

inline json to_json(const std::vector<Vector>& vs)
{
    json a = json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
}

inline json to_json(const ColorSystem& S)
{
    json fams = json::array();
    for (const auto& F : S.families) {
        json sets = json::array();
        for (const auto& C : F.sets) sets.push_back(to_json(C.vertices()));
        fams.push_back({{"label", F.label}, {"sets", std::move(sets)}});
    }
    return {{"dimension", S.dimension}, {"families", std::move(fams)}};
}

inline Rational rational_from_json(const json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw InputError("coordinate must be a rational string \"p/q\" or an integer");
}

inline Vector vector_from_json(const json& j)
{
    if (!j.is_array()) throw InputError("expected an array of coordinates");
    Vector v;
    for (const auto& c : j) v.push_back(rational_from_json(c));
    return v;
}

inline ColorSystem color_system_from_json(const json& j)
{
    if (!j.is_object()) throw InputError("instance must be a JSON object");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer() || j["dimension"].get<long long>() < 1)
        throw InputError("instance needs a positive integer \"dimension\"");
    if (!j.contains("families") || !j["families"].is_array())
        throw InputError("instance needs a \"families\" array");
    const auto d = static_cast<std::size_t>(j["dimension"].get<long long>());
    std::vector<Family> fams;
    for (const auto& f : j["families"]) {
        if (!f.is_object() || !f.contains("sets") || !f["sets"].is_array())
            throw InputError("each family needs a \"sets\" array");
        std::string label = f.contains("label") && f["label"].is_string() ? f["label"].get<std::string>()
                                                                           : "F" + std::to_string(fams.size() + 1);
        std::vector<VPolytope> sets;
        for (const auto& s : f["sets"]) {
            if (!s.is_array()) throw InputError("each set must be an array of points");
            std::vector<Point> pts;
            for (const auto& p : s) {
                pts.push_back(vector_from_json(p));
                if (pts.back().size() != d) throw InputError("point dimension differs from \"dimension\"");
            }
            sets.emplace_back(std::move(pts));
        }
        fams.emplace_back(std::move(label), std::move(sets));
    }
    return ColorSystem(d, std::move(fams));
}

inline json parse_json_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

inline ColorSystem load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return color_system_from_json(parse_json_text(ss.str()));
}

inline void save_instance(const ColorSystem& S, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << to_json(S).dump(2) << '\n';
}

inline json to_json(const KPartition& P)
{
    json blocks = json::array();
    for (const auto& b : P.blocks()) {
        json a = json::array();
        for (auto e : b) a.push_back(e + 1);
        blocks.push_back(std::move(a));
    }
    return {{"notation", P.notation()}, {"blocks", std::move(blocks)}};
}

inline json to_json(const TverbergWitness& w)
{
    return {{"partition", to_json(w.partition)}, {"point", to_json(w.point)}, {"coefficients", to_json(w.coefficients)}};
}

inline json to_json(const AffineFlat& f)
{
    return {{"dimension", f.dimension()}, {"base", to_json(f.base)}, {"directions", to_json(f.directions)}};
}

inline json to_json(const RationalMatrix& a)
{
    json rows = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(to_json(a.row(r)));
    return rows;
}

inline json to_json(const Theorem1Report& r)
{
    json fams = json::array();
    for (std::size_t i = 0; i < r.family_results.size(); ++i) {
        const auto& w = r.family_results[i];
        fams.push_back({{"family", i}, {"witness", w ? to_json(*w) : json("none")}});
    }
    json viol = nullptr;
    if (r.colorful_violation) {
        viol = json::array();
        for (auto s : *r.colorful_violation) viol.push_back(s + 1);
    }
    return {{"d", r.d},
            {"m", r.m},
            {"n", r.n},
            {"k", r.k},
            {"colorful_property", !r.colorful_violation},
            {"colorful_violation", viol},
            {"size_bound", to_string(r.size_bound)},
            {"size_hypothesis", r.size_hypothesis},
            {"dimension_hypothesis", r.dimension_hypothesis},
            {"k_prime_power", r.k_prime_power},
            {"families", std::move(fams)},
            {"verdict", to_string(r.verdict)}};
}

}  // namespace tvlab
