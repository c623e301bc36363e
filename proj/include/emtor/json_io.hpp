#ifndef EMTOR_JSON_IO_HPP
#define EMTOR_JSON_IO_HPP

// JSON (de)serialization for all public value types. Rationals are written
// as exact strings ("3/4"); all schemas round-trip bit-for-bit.

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/graded.hpp"
#include "emtor/groups.hpp"
#include "emtor/linalg.hpp"
#include "emtor/spectral.hpp"
#include "emtor/strata.hpp"
#include "emtor/tor.hpp"
#include "emtor/toric.hpp"

namespace emtor {

using nlohmann::json;

inline json rat_to_json(const Rat& r) { return r.str(); }

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string())
        throw ValidationError("rational must be a string like \"3/4\"");
    try {
        return Rat(j.get<std::string>());
    } catch (const std::exception&) {
        throw ValidationError("cannot parse rational '" +
                              j.get<std::string>() + "'");
    }
}

inline json matrix_to_json(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(rat_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline RatMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
        throw ValidationError("matrix JSON needs rows/cols/entries");
    RatMatrix m(j.at("rows").get<std::size_t>(),
                j.at("cols").get<std::size_t>());
    const json& rows = j.at("entries");
    if (rows.size() != m.rows())
        throw ValidationError("matrix JSON: wrong number of rows");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (rows[i].size() != m.cols())
            throw ValidationError("matrix JSON: wrong row length");
        for (std::size_t c = 0; c < m.cols(); ++c)
            m(i, c) = rat_from_json(rows[i][c]);
    }
    return m;
}

// {"ring": {"generator_degrees": [...]}, "truncation": D,
//  "dims": {"0": d0, ...}, "actions": [[matrix per degree], ...]}
inline json module_to_json(const GradedModule& m) {
    json dims = json::object();
    for (int k = 0; k <= m.truncation; ++k)
        if (m.dim(k) > 0) dims[std::to_string(k)] = m.dim(k);
    json actions = json::array();
    for (const auto& family : m.actions) {
        json fam = json::array();
        for (const auto& a : family) fam.push_back(matrix_to_json(a));
        actions.push_back(std::move(fam));
    }
    return json{{"ring", {{"generator_degrees", m.ring.generator_degrees}}},
                {"truncation", m.truncation},
                {"dims", std::move(dims)},
                {"actions", std::move(actions)}};
}

inline GradedModule module_from_json(const json& j) {
    GradedModule m;
    try {
        m.ring.generator_degrees =
            j.at("ring").at("generator_degrees").get<std::vector<int>>();
        m.truncation = j.at("truncation").get<int>();
        if (m.truncation < 0)
            throw ValidationError("module truncation must be >= 0");
        m.dims.assign(static_cast<std::size_t>(m.truncation) + 1, 0);
        for (const auto& [key, val] : j.at("dims").items()) {
            const int k = std::stoi(key);
            if (k < 0 || k > m.truncation)
                throw ValidationError("module dims: degree out of range");
            m.dims[static_cast<std::size_t>(k)] = val.get<long>();
        }
        for (const json& fam : j.at("actions")) {
            m.actions.emplace_back();
            for (const json& a : fam)
                m.actions.back().push_back(matrix_from_json(a));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("module JSON malformed: ") +
                              e.what());
    } catch (const std::invalid_argument&) {
        throw ValidationError("module JSON: non-integer degree key");
    }
    const ModuleValidationReport rep = validate_module(m);
    if (!rep.ok) throw ValidationError("module invalid: " + rep.message);
    return m;
}

// {"trusted_q": B, "entries": [{"p":..,"q":..,"dim":..}, ...]}
inline json tor_to_json(const BigradedTor& t) {
    json entries = json::array();
    for (const auto& [key, d] : t.dims)
        if (d != 0)
            entries.push_back(
                json{{"p", key.first}, {"q", key.second}, {"dim", d}});
    return json{{"trusted_q", t.trusted_q}, {"entries", std::move(entries)}};
}

inline BigradedTor tor_from_json(const json& j) {
    BigradedTor t;
    try {
        t.trusted_q = j.at("trusted_q").get<int>();
        for (const json& e : j.at("entries"))
            t.set(e.at("p").get<int>(), e.at("q").get<int>(),
                  e.at("dim").get<long>());
    } catch (const json::exception& e) {
        throw ValidationError(std::string("Tor JSON malformed: ") + e.what());
    }
    return t;
}

// {"entries": [{"n":..,"weight":..,"dim":..}, ...]}
inline json weighted_to_json(const WeightedGradedVectorSpace& w) {
    json entries = json::array();
    for (const auto& [key, d] : w.dims)
        if (d != 0)
            entries.push_back(
                json{{"n", key.first}, {"weight", key.second}, {"dim", d}});
    return json{{"entries", std::move(entries)}};
}

inline WeightedGradedVectorSpace weighted_from_json(const json& j) {
    WeightedGradedVectorSpace w;
    try {
        for (const json& e : j.at("entries"))
            w.set(e.at("n").get<int>(), e.at("weight").get<int>(),
                  e.at("dim").get<long>());
    } catch (const json::exception& e) {
        throw ValidationError(std::string("weighted-space JSON malformed: ") +
                              e.what());
    }
    return w;
}

// {"r": r, "entries": [{"p":..,"q":..,"dim":..}], "differentials_nonzero": c}
// using the second-quadrant translation p = p_max - s, q = n + p
inline json page_to_json(const Page& page, int p_max) {
    json entries = json::array();
    for (const auto& [key, d] : em_page_dims(page, p_max))
        entries.push_back(
            json{{"p", key.first}, {"q", key.second}, {"dim", d}});
    return json{{"r", page.r},
                {"entries", std::move(entries)},
                {"differentials_nonzero", page.nonzero_differentials()}};
}

// {"rank": n, "rays": [[...], ...], "max_cones": [[ray indices], ...]}
inline json fan_to_json(const Fan& f) {
    return json{{"rank", f.ambient_rank},
                {"rays", f.rays},
                {"max_cones", f.max_cones}};
}

inline Fan fan_from_json(const json& j) {
    Fan f;
    try {
        f.ambient_rank = j.at("rank").get<int>();
        f.rays = j.at("rays").get<std::vector<std::vector<long>>>();
        f.max_cones = j.at("max_cones").get<std::vector<std::vector<int>>>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("fan JSON malformed: ") + e.what());
    }
    validate_fan(f);
    return f;
}

// {"orbits": [{"label":.., "codim":.., "stabilizer": <group spec string
//   or weighted-space object>}, ...]}; group-spec stabilizers are expanded
// as classifying-space series up to the given degree
inline OrbitStratification stratification_from_json(const json& j,
                                                    int up_to) {
    OrbitStratification s;
    try {
        for (const json& o : j.at("orbits")) {
            Orbit orbit;
            orbit.label = o.at("label").get<std::string>();
            orbit.codim = o.at("codim").get<int>();
            const json& stab = o.at("stabilizer");
            if (stab.is_string())
                orbit.stabilizer_series = classifying_space_series(
                    catalog_lookup(stab.get<std::string>()), up_to);
            else
                orbit.stabilizer_series = weighted_from_json(stab);
            s.orbits.push_back(std::move(orbit));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("stratification JSON malformed: ") +
                              e.what());
    }
    validate_stratification(s);
    return s;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("cannot parse '" + path + "': " + e.what());
    }
}

} // namespace emtor

#endif
