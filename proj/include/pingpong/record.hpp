// Result records: the versioned JSON documents the CLI writes.  Records
// embed the resolved configuration, never contain volatile data (timings,
// worker counts), and serialize with sorted keys, so identical config+seed
// gives byte-identical bytes.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "pingpong/boundary.hpp"
#include "pingpong/certify.hpp"
#include "pingpong/isometry.hpp"
#include "pingpong/model.hpp"
#include "pingpong/partner.hpp"

namespace pingpong {

constexpr int kRecordVersion = 1;

inline nlohmann::json dist_json(const Dist& d) { return d.str(); }

inline nlohmann::json end_json(const Model& m, const EndPoint& e) {
    nlohmann::json j;
    j["prefix"] = m.print(GroupElement{m.id(), e.prefix});
    j["period"] = m.print(GroupElement{m.id(), e.period});
    return j;
}

inline nlohmann::json site_json(const Model& m, const Site& s) {
    nlohmann::json j;
    switch (s.tag) {
        case Site::Tag::Vertex:
            j["vertex"] = m.print(GroupElement{m.id(), s.word});
            break;
        case Site::Tag::Coset:
            j["coset_of_factor"] = s.factor;
            j["representative"] = m.print(GroupElement{m.id(), s.word});
            break;
        case Site::Tag::Central:
            j["central"] = m.print(GroupElement{m.id(), s.word});
            break;
        case Site::Tag::Plane:
            j["re"] = s.z.real();
            j["im"] = s.z.imag();
            break;
    }
    return j;
}

inline nlohmann::json cylinder_json(const Model& m, const Cylinder& c) {
    nlohmann::json j;
    j["depth"] = c.depth;
    j["vertex"] = site_json(m, c.vertex);
    return j;
}

inline nlohmann::json report_json(const Model& m, const IsometryReport& r) {
    nlohmann::json j;
    j["element"] = m.print(r.element);
    j["class"] = r.cls == IsometryClass::Loxodromic ? "loxodromic" : "elliptic";
    j["translation_length"] = dist_json(r.translation_length);
    j["approximate"] = r.approximate;
    if (r.ends) {
        j["attracting_end"] = end_json(m, r.ends->first);
        j["repelling_end"] = end_json(m, r.ends->second);
    }
    nlohmann::json axis = nlohmann::json::array();
    for (const Site& s : r.axis_sample) axis.push_back(site_json(m, s));
    j["axis_sample"] = axis;
    return j;
}

inline nlohmann::json certificate_json(const Model& m, const FreenessCertificate& c) {
    nlohmann::json j;
    j["gamma_n"] = m.print(c.gammaN);
    nlohmann::json gens = nlohmann::json::array();
    for (const GroupElement& g : c.subgroup) gens.push_back(m.print(g));
    j["subgroup"] = gens;
    j["syllable_bound"] = c.syllable_bound;
    j["exponent_bound"] = c.exponent_bound;
    j["words_checked"] = c.words_checked;
    j["status"] = c.status == CertStatus::Pass ? "pass" : "fail";
    if (c.witness) j["witness"] = c.witness_text;
    j["oracles"] = c.oracles;
    return j;
}

inline nlohmann::json partner_json(const Model& m, const PartnerResult& p) {
    nlohmann::json j;
    j["gamma"] = m.print(p.gamma);
    j["power_N"] = p.power_N;
    j["Delta"] = dist_json(p.Delta);
    j["C"] = dist_json(p.C);
    j["translation_length"] = dist_json(p.gamma_length);
    j["region_radius"] = p.region_radius;
    j["closure_depth"] = p.depth;
    nlohmann::json per = nlohmann::json::array();
    for (const SubgroupEvidence& ev : p.per_subgroup) {
        nlohmann::json e;
        nlohmann::json gens = nlohmann::json::array();
        for (const GroupElement& g : ev.generators) gens.push_back(m.print(g));
        e["generators"] = gens;
        e["D_observed"] = dist_json(ev.D_observed);
        e["Dprime_observed"] = dist_json(ev.Dprime_observed);
        e["plus_outside_closure"] = ev.plus_outside_closure;
        e["minus_outside_closure"] = ev.minus_outside_closure;
        e["closure_cylinders"] = ev.closure_cylinders;
        e["pair_preservation_checked"] = ev.pair_preservation_checked;
        per.push_back(e);
    }
    j["per_subgroup"] = per;
    return j;
}

inline nlohmann::json proximality_json(const Model& m, const ProximalityTrace& t) {
    nlohmann::json j;
    j["target"] = cylinder_json(m, t.target);
    j["low_mass_center"] = end_json(m, t.low_mass_center);
    j["low_mass_depth"] = t.low_mass_depth;
    nlohmann::json steps = nlohmann::json::array();
    for (const ProximalityStep& s : t.steps) {
        nlohmann::json e;
        e["element"] = m.print(s.element);
        e["mass1"] = s.mass1.str();
        e["mass2"] = s.mass2.str();
        steps.push_back(e);
    }
    j["steps"] = steps;
    return j;
}

inline nlohmann::json result_record(const std::string& subcommand, const nlohmann::json& resolved,
                                    const nlohmann::json& result, const std::string& status) {
    nlohmann::json j;
    j["record_version"] = kRecordVersion;
    j["tool"] = "pingpong";
    j["subcommand"] = subcommand;
    j["status"] = status;
    j["config"] = resolved;
    j["result"] = result;
    return j;
}

inline void write_record(const std::string& path, const nlohmann::json& record) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write record to " + path);
    out << record.dump(2) << "\n";
}

}  // namespace pingpong
