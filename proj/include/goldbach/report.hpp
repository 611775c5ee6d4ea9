#pragma once

// JSON and CSV serialization for scan reports, verdicts, and witnesses.
// Rationals are serialized as "num/den" strings and big integers as decimal
// strings, so every emitted value is exact. wall_ms stays out of the JSON:
// emitted reports are byte-identical for identical configs.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "goldbach/bigint.hpp"
#include "goldbach/scanner.hpp"

namespace goldbach {

using Json = nlohmann::json;

inline Json json_of(const UbhVerdict& v) {
    return Json{{"n", v.n},
                {"p", v.p},
                {"status", to_string(v.status)},
                {"worst_x", v.worst_x.str()},
                {"lhs", v.lhs.str()},
                {"rhs_num", v.rhs_num.str()},
                {"rhs_den", v.rhs_den.str()},
                {"margin", v.margin.str()}};
}

inline UbhVerdict verdict_from_json(const Json& j) {
    UbhVerdict v;
    v.n = j.at("n").get<uint64_t>();
    v.p = j.at("p").get<uint64_t>();
    v.status = parse_ubh_status(j.at("status").get<std::string>());
    v.worst_x = Rat::parse(j.at("worst_x").get<std::string>());
    v.lhs = Int(j.at("lhs").get<std::string>());
    v.rhs_num = Int(j.at("rhs_num").get<std::string>());
    v.rhs_den = Int(j.at("rhs_den").get<std::string>());
    v.margin = Rat::parse(j.at("margin").get<std::string>());
    return v;
}

inline Json json_of(const WitnessRecord& w) {
    Json j{{"found", w.found},
           {"n_param", w.n_param},
           {"n", w.n},
           {"p_small", w.p_small},
           {"p_large", w.p_large}};
    if (w.m_param != 0) j["m_param"] = w.m_param;
    return j;
}

inline Json json_of(const ScanReport& r) {
    Json per_n = Json::array();
    for (const NSummary& s : r.per_n) {
        per_n.push_back(Json{{"n", s.n},
                             {"status", to_string(s.status)},
                             {"worst_margin", s.worst_margin.str()},
                             {"resumed", s.resumed}});
    }
    Json violations = Json::array();
    for (const UbhVerdict& v : r.violations) violations.push_back(json_of(v));
    return Json{{"kind", "ubh_scan"},
                {"config",
                 Json{{"from", r.config.from},
                      {"to", r.config.to},
                      {"theta", r.config.theta},
                      {"checkpoint", r.config.checkpoint_path},
                      {"checkpoint_stride", r.config.checkpoint_stride}}},
                {"counts",
                 Json{{"checked", r.checked},
                      {"holds", r.holds},
                      {"violated", r.violated},
                      {"vacuous", r.vacuous},
                      {"resumed", r.resumed}}},
                {"cells_sieved", r.cells_sieved},
                {"per_n", per_n},
                {"violations", violations}};
}

inline ScanReport scan_report_from_json(const Json& j) {
    ScanReport r;
    const Json& c = j.at("config");
    r.config.from = c.at("from").get<uint64_t>();
    r.config.to = c.at("to").get<uint64_t>();
    r.config.theta = c.at("theta").get<bool>();
    r.config.checkpoint_path = c.at("checkpoint").get<std::string>();
    r.config.checkpoint_stride = c.at("checkpoint_stride").get<uint64_t>();
    const Json& k = j.at("counts");
    r.checked = k.at("checked").get<uint64_t>();
    r.holds = k.at("holds").get<uint64_t>();
    r.violated = k.at("violated").get<uint64_t>();
    r.vacuous = k.at("vacuous").get<uint64_t>();
    r.resumed = k.at("resumed").get<uint64_t>();
    r.cells_sieved = j.at("cells_sieved").get<uint64_t>();
    for (const Json& s : j.at("per_n")) {
        r.per_n.push_back(NSummary{s.at("n").get<uint64_t>(),
                                   parse_ubh_status(s.at("status").get<std::string>()),
                                   Rat::parse(s.at("worst_margin").get<std::string>()),
                                   s.at("resumed").get<bool>()});
    }
    for (const Json& v : j.at("violations")) r.violations.push_back(verdict_from_json(v));
    return r;
}

inline std::string csv_of(const std::vector<UbhVerdict>& verdicts) {
    std::string out = "N,p,status,worst_x,lhs,rhs_num,rhs_den,margin\n";
    for (const UbhVerdict& v : verdicts) {
        out += std::to_string(v.n);
        out += ',';
        out += std::to_string(v.p);
        out += ',';
        out += to_string(v.status);
        out += ',';
        out += v.worst_x.str();
        out += ',';
        out += v.lhs.str();
        out += ',';
        out += v.rhs_num.str();
        out += ',';
        out += v.rhs_den.str();
        out += ',';
        out += v.margin.str();
        out += '\n';
    }
    return out;
}

}  // namespace goldbach
