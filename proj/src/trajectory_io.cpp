#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "painleve/error.hpp"
#include "painleve/solver.hpp"

namespace painleve::solver {

using nlohmann::json;

namespace {

// Non-finite values (samples taken exactly on a pole) become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double from_num(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string to_json(const Trajectory& t) {
    json j;
    j["equation"] = equations::to_string(t.equation);
    json params = json::object();
    for (const auto& [k, v] : t.params.entries()) params[equations::to_string(k)] = v;
    j["params"] = params;
    json samples = json::array();
    for (const auto& s : t.samples) samples.push_back({num(s.z), num(s.w), num(s.dw)});
    j["samples"] = samples;
    json poles = json::array();
    for (const auto& p : t.poles)
        poles.push_back({{"z0", p.z0}, {"order", p.order}, {"leading", p.leading}, {"bracket", p.bracket}});
    j["poles"] = poles;
    j["control"] = {{"rel_tol", t.control.rel_tol},
                    {"abs_tol", t.control.abs_tol},
                    {"max_step", t.control.max_step},
                    {"pole_threshold", t.control.pole_threshold}};
    if (!t.stop_reason.empty()) j["stop_reason"] = t.stop_reason;
    // nlohmann prints doubles with max_digits10, so the text round-trips exactly
    return j.dump(1);
}

Trajectory trajectory_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("trajectory JSON: ") + e.what());
    }
    Trajectory t;
    try {
        t.equation = equations::equation_from_string(j.at("equation").get<std::string>());
        for (const auto& [k, v] : j.at("params").items()) t.params.set(equations::param_from_string(k), v.get<double>());
        for (const auto& s : j.at("samples")) {
            if (s.size() != 3) throw ParameterError("trajectory JSON: each sample must be [z, w, dw]");
            t.samples.push_back({from_num(s[0]), from_num(s[1]), from_num(s[2])});
        }
        if (j.contains("poles")) {
            for (const auto& p : j["poles"]) {
                PoleRecord r;
                r.z0 = p.at("z0").get<double>();
                r.order = p.at("order").get<int>();
                r.leading = p.at("leading").get<double>();
                r.bracket = p.value("bracket", 0.0);
                t.poles.push_back(r);
            }
        }
        if (j.contains("control")) {
            const auto& c = j["control"];
            t.control.rel_tol = c.value("rel_tol", t.control.rel_tol);
            t.control.abs_tol = c.value("abs_tol", t.control.abs_tol);
            t.control.max_step = c.value("max_step", t.control.max_step);
            t.control.pole_threshold = c.value("pole_threshold", t.control.pole_threshold);
        }
        t.stop_reason = j.value("stop_reason", std::string());
    } catch (const json::exception& e) {
        throw ParameterError(std::string("trajectory JSON: ") + e.what());
    }
    return t;
}

std::string to_csv(const Trajectory& t) {
    std::ostringstream os;
    os << "z,w,dw\n";
    for (const auto& s : t.samples) os << fmt17(s.z) << ',' << fmt17(s.w) << ',' << fmt17(s.dw) << '\n';
    return os.str();
}

}  // namespace painleve::solver
