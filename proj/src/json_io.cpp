#include "wpvol/json_io.hpp"

#include <stdexcept>

#include "wpvol/n_recursion.hpp"

namespace wpvol {

using nlohmann::json;

json mpoly_to_json(const MPoly& p) {
    json terms = json::array();
    for (const auto& [mono, c] : p.terms) {
        json exps = json::object();
        for (const auto& [sid, e] : mono) exps[symbol_name(symbol_from_id(sid))] = e;
        terms.push_back(json{{"exponents", exps}, {"coeff", rat_to_string(c)}});
    }
    return terms;
}

MPoly mpoly_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("mpoly json: expected array of terms");
    MPoly out;
    for (const auto& term : j) {
        Monomial mono;
        for (const auto& [name, e] : term.at("exponents").items()) {
            auto s = symbol_from_name(name);
            if (!s) throw std::invalid_argument("mpoly json: unknown symbol " + name);
            mono.emplace_back(s->id(), e.get<uint32_t>());
        }
        out.add_term(std::move(mono), rat_from_string(term.at("coeff").get<std::string>()));
    }
    return out;
}

json volume_poly_to_json(const VolumePoly& v) {
    return json{{"g", v.g}, {"n", v.n}, {"basis", basis_name(v.basis)},
                {"terms", mpoly_to_json(v.poly)}};
}

VolumePoly volume_poly_from_json(const json& j) {
    VolumePoly v;
    v.g = j.at("g").get<int>();
    v.n = j.at("n").get<int>();
    std::string b = j.at("basis").get<std::string>();
    if (b == "beta")
        v.basis = Basis::Beta;
    else if (b == "moments")
        v.basis = Basis::Moments;
    else if (b == "wp")
        v.basis = Basis::WP;
    else
        throw std::invalid_argument("volume json: unknown basis " + b);
    v.poly = mpoly_from_json(j.at("terms"));
    return v;
}

json correlator_to_json(const CorrelatorLaurent& w) {
    json terms = json::array();
    for (const auto& [ks, c] : w.terms)
        terms.push_back(json{{"k", ks}, {"coeff", mpoly_to_json(c)}});
    return json{{"g", w.g}, {"n", w.n}, {"terms", terms}};
}

CorrelatorLaurent correlator_from_json(const json& j) {
    CorrelatorLaurent w;
    w.g = j.at("g").get<int>();
    w.n = j.at("n").get<int>();
    for (const auto& term : j.at("terms"))
        w.terms.emplace(term.at("k").get<std::vector<int>>(),
                        mpoly_from_json(term.at("coeff")));
    return w;
}

json intersection_table_to_json() {
    json out = json::array();
    for (const auto& [g, d, value] : intersection_table_entries())
        out.push_back(json{{"g", g}, {"d", d}, {"value", rat_to_string(value)}});
    return out;
}

namespace {

double number_at(const json& j, const std::string& pointer, const std::string& key) {
    if (!j.contains(key) || j.at(key).is_null())
        throw WeightParseError(pointer + "/" + key, "missing number");
    if (!j.at(key).is_number())
        throw WeightParseError(pointer + "/" + key, "expected a number");
    return j.at(key).get<double>();
}

}  // namespace

Weight weight_from_json(const json& j) {
    if (!j.is_object()) throw WeightParseError("", "weight file must be a JSON object");
    Weight w;
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) throw WeightParseError("/atoms", "expected an array");
        int idx = 0;
        for (const auto& aj : j.at("atoms")) {
            std::string ptr = "/atoms/" + std::to_string(idx++);
            if (!aj.is_object()) throw WeightParseError(ptr, "expected an object");
            Atom a;
            std::string kind = aj.value("kind", std::string());
            if (kind == "geodesic") {
                a.kind = AtomKind::Geodesic;
                a.length = number_at(aj, ptr, "length");
                if (!(a.length > 0))
                    throw WeightParseError(ptr + "/length", "geodesic length must be > 0");
            } else if (kind == "cone") {
                a.kind = AtomKind::Cone;
                a.angle = number_at(aj, ptr, "angle");
                if (!(a.angle > 0) || !(a.angle < 3.14159265358979323846))
                    throw WeightParseError(ptr + "/angle",
                                           "cone angle must lie in (0, pi) (sharp defect)");
            } else if (kind == "cusp") {
                a.kind = AtomKind::Cusp;
            } else {
                throw WeightParseError(ptr + "/kind",
                                       "kind must be geodesic, cone, or cusp");
            }
            a.weight = number_at(aj, ptr, "weight");
            w.atoms.push_back(a);
        }
    }
    if (j.contains("fzzt") && !j.at("fzzt").is_null()) {
        const auto& f = j.at("fzzt");
        if (!f.is_object()) throw WeightParseError("/fzzt", "expected an object or null");
        FzztBrane brane;
        brane.s0 = number_at(f, "/fzzt", "s0");
        brane.z = number_at(f, "/fzzt", "z");
        if (!(brane.z > 0)) throw WeightParseError("/fzzt/z", "z must be > 0");
        w.fzzt = brane;
    }
    if (j.contains("mode")) {
        const auto& m = j.at("mode");
        if (m.is_string() && m.get<std::string>() == "numeric") {
            w.formal = false;
        } else if (m.is_object() && m.contains("formal")) {
            if (!m.at("formal").is_number_integer() || m.at("formal").get<int>() < 0)
                throw WeightParseError("/mode/formal", "expected a non-negative order");
            w.formal = true;
            w.formal_order = m.at("formal").get<int>();
            if (w.fzzt) throw WeightParseError("/fzzt", "formal mode supports atoms only");
        } else {
            throw WeightParseError("/mode", "expected \"numeric\" or {\"formal\": N}");
        }
    }
    return w;
}

json weight_to_json(const Weight& w) {
    json atoms = json::array();
    for (const auto& a : w.atoms) {
        json aj;
        switch (a.kind) {
            case AtomKind::Geodesic:
                aj = json{{"kind", "geodesic"}, {"length", a.length}, {"angle", nullptr}};
                break;
            case AtomKind::Cone:
                aj = json{{"kind", "cone"}, {"length", nullptr}, {"angle", a.angle}};
                break;
            case AtomKind::Cusp:
                aj = json{{"kind", "cusp"}, {"length", nullptr}, {"angle", nullptr}};
                break;
        }
        aj["weight"] = a.weight;
        atoms.push_back(aj);
    }
    json out{{"atoms", atoms}};
    out["fzzt"] = w.fzzt ? json{{"s0", w.fzzt->s0}, {"z", w.fzzt->z}} : json(nullptr);
    out["mode"] = w.formal ? json{{"formal", w.formal_order}} : json("numeric");
    return out;
}

}  // namespace wpvol
