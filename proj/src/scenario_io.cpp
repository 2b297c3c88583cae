#include "driftbench/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "driftbench/errors.hpp"

namespace driftbench {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ScenarioParseError(where.empty() ? what : where + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

long as_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long>();
}

Eigen::VectorXd as_vector(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = as_number(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

std::vector<PlaneRotation> as_rotations(const json& j, const std::string& where) {
    if (j.is_number()) {
        const double deg = j.get<double>();
        if (deg == 0.0) return {};
        return {PlaneRotation{0, 1, deg}};
    }
    if (!j.is_array()) fail(where, "expected a number or a list of [axis_a, axis_b, degrees]");
    std::vector<PlaneRotation> out;
    for (size_t i = 0; i < j.size(); ++i) {
        const auto& entry = j[i];
        const std::string ew = where + "[" + std::to_string(i) + "]";
        if (!entry.is_array() || entry.size() != 3) fail(ew, "expected [axis_a, axis_b, degrees]");
        out.push_back(PlaneRotation{static_cast<int>(as_integer(entry[0], ew)),
                                    static_cast<int>(as_integer(entry[1], ew)),
                                    as_number(entry[2], ew)});
    }
    return out;
}

TransformPhase phase_from_json(const json& j, const std::string& where) {
    TransformPhase ph;
    ph.duration = as_integer(require(j, "duration", where), where + ".duration");
    if (j.contains("rmoveto")) ph.translation = as_vector(j.at("rmoveto"), where + ".rmoveto");
    if (j.contains("rotate_deg")) ph.rotation = as_rotations(j.at("rotate_deg"), where + ".rotate_deg");
    if (j.contains("scale")) ph.scale = as_number(j.at("scale"), where + ".scale");
    if (j.contains("wchangeto")) ph.weight_target = as_number(j.at("wchangeto"), where + ".wchangeto");
    if (j.contains("orbit")) {
        const auto& o = j.at("orbit");
        const std::string ow = where + ".orbit";
        OrbitSpec orbit;
        orbit.pivot = as_vector(require(o, "pivot", ow), ow + ".pivot");
        orbit.angle_deg = as_number(require(o, "angle_deg", ow), ow + ".angle_deg");
        ph.orbit = std::move(orbit);
    }
    return ph;
}

json phase_to_json(const TransformPhase& ph) {
    json j;
    j["duration"] = ph.duration;
    if (ph.translation.size() > 0) {
        j["rmoveto"] = std::vector<double>(ph.translation.begin(), ph.translation.end());
    }
    if (!ph.rotation.empty()) {
        json rots = json::array();
        for (const auto& r : ph.rotation) rots.push_back({r.axis_a, r.axis_b, r.angle_deg});
        j["rotate_deg"] = std::move(rots);
    }
    if (ph.scale != 1.0) j["scale"] = ph.scale;
    if (ph.weight_target) j["wchangeto"] = *ph.weight_target;
    if (ph.orbit) {
        j["orbit"] = {{"pivot", std::vector<double>(ph.orbit->pivot.begin(), ph.orbit->pivot.end())},
                      {"angle_deg", ph.orbit->angle_deg}};
    }
    return j;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) fail("", "top-level value must be an object");
    const std::string name = [&] {
        const auto& n = require(j, "name", "");
        if (!n.is_string()) fail("name", "expected a string");
        return n.get<std::string>();
    }();
    const int dimension = static_cast<int>(as_integer(require(j, "dimension", ""), "dimension"));
    const long length = as_integer(require(j, "length", ""), "length");

    const auto& jclasses = require(j, "classes", "");
    if (!jclasses.is_array() || jclasses.empty()) fail("classes", "expected a non-empty array");
    std::vector<ClassSpec> classes;
    for (size_t ci = 0; ci < jclasses.size(); ++ci) {
        const auto& jc = jclasses[ci];
        const std::string cw = "classes[" + std::to_string(ci) + "]";
        ClassSpec cls;
        const auto& cname = require(jc, "name", cw);
        if (!cname.is_string()) fail(cw + ".name", "expected a string");
        cls.name = cname.get<std::string>();
        cls.class_weight = as_number(require(jc, "weight", cw), cw + ".weight");
        const auto& jcomps = require(jc, "components", cw);
        if (!jcomps.is_array() || jcomps.empty()) fail(cw + ".components", "expected a non-empty array");
        for (size_t ki = 0; ki < jcomps.size(); ++ki) {
            const auto& jk = jcomps[ki];
            const std::string kw = cw + ".components[" + std::to_string(ki) + "]";
            const long start = as_integer(require(jk, "start", kw), kw + ".start");
            const double weight = as_number(require(jk, "weight", kw), kw + ".weight");
            Eigen::VectorXd center = as_vector(require(jk, "center", kw), kw + ".center");
            Eigen::VectorXd stddev = as_vector(require(jk, "stddev", kw), kw + ".stddev");
            std::vector<PlaneRotation> rotation;
            if (jk.contains("rotation_deg")) {
                rotation = as_rotations(jk.at("rotation_deg"), kw + ".rotation_deg");
            }
            std::vector<TransformPhase> phases;
            if (jk.contains("phases")) {
                const auto& jphases = jk.at("phases");
                if (!jphases.is_array()) fail(kw + ".phases", "expected an array");
                for (size_t pi = 0; pi < jphases.size(); ++pi) {
                    phases.push_back(phase_from_json(
                        jphases[pi], kw + ".phases[" + std::to_string(pi) + "]"));
                }
            }
            try {
                cls.components.emplace_back(start, weight, std::move(center),
                                            std::move(stddev), std::move(rotation),
                                            std::move(phases));
            } catch (const std::invalid_argument& e) {
                fail(kw, e.what());
            }
        }
        classes.push_back(std::move(cls));
    }
    try {
        return Scenario(name, dimension, length, std::move(classes));
    } catch (const std::invalid_argument& e) {
        fail("", e.what());
    } catch (const DegenerateScenarioError& e) {
        fail("", e.what());
    }
}

json scenario_to_json(const Scenario& scenario) {
    json j;
    j["name"] = scenario.name();
    j["dimension"] = scenario.dimension();
    j["length"] = scenario.length();
    json jclasses = json::array();
    for (const auto& cls : scenario.classes()) {
        json jc;
        jc["name"] = cls.name;
        jc["weight"] = cls.class_weight;
        json jcomps = json::array();
        for (const auto& comp : cls.components) {
            json jk;
            jk["start"] = comp.start_index();
            jk["weight"] = comp.base_weight();
            jk["center"] = std::vector<double>(comp.base_center().begin(), comp.base_center().end());
            jk["stddev"] = std::vector<double>(comp.base_stddev().begin(), comp.base_stddev().end());
            if (!comp.base_rotation().empty()) {
                json rots = json::array();
                for (const auto& r : comp.base_rotation()) {
                    rots.push_back({r.axis_a, r.axis_b, r.angle_deg});
                }
                jk["rotation_deg"] = std::move(rots);
            }
            if (!comp.phases().empty()) {
                json jphases = json::array();
                for (const auto& ph : comp.phases()) jphases.push_back(phase_to_json(ph));
                jk["phases"] = std::move(jphases);
            }
            jcomps.push_back(std::move(jk));
        }
        jc["components"] = std::move(jcomps);
        jclasses.push_back(std::move(jc));
    }
    j["classes"] = std::move(jclasses);
    return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("cannot open scenario file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ScenarioParseError("'" + path.string() + "': " + e.what());
    }
    try {
        return scenario_from_json(j);
    } catch (const ScenarioParseError& e) {
        throw ScenarioParseError("'" + path.string() + "': " + e.what());
    }
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioParseError("cannot write scenario file '" + path.string() + "'");
    out << scenario_to_json(scenario).dump(2) << "\n";
}

}  // namespace driftbench
