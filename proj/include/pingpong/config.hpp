// Run configuration: JSON files describing the model, the inputs, and every
// bound a run may use.  All bounds are resolved here (defaults applied) so
// the output record can embed the exact configuration that produced it.

#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pingpong/errors.hpp"
#include "pingpong/model.hpp"
#include "pingpong/partner.hpp"
#include "pingpong/rational.hpp"

namespace pingpong {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file: " + path, 0);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("config parse error: ") + e.what(), e.byte);
    }
}

inline Model model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw parse_error("model description needs a \"kind\"", 0);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "free_group") {
        return Model::free_group(j.value("rank", 2));
    }
    if (kind == "free_product") {
        std::vector<long long> orders = j.at("orders").get<std::vector<long long>>();
        return Model::free_product(orders);
    }
    if (kind == "half_plane") {
        std::vector<std::array<double, 4>> gens;
        for (const auto& g : j.at("generators")) {
            auto rows = g.get<std::vector<std::vector<double>>>();
            if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
                throw parse_error("half-plane generators must be 2x2 matrices", 0);
            gens.push_back({rows[0][0], rows[0][1], rows[1][0], rows[1][1]});
        }
        return Model::half_plane(gens);
    }
    throw parse_error("unknown model kind: " + kind, 0);
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

struct Bounds {
    long long region_radius = 6;
    long long depth = 3;
    long long syllable_bound = 8;
    long long exponent_bound = 3;
    long long exponent_budget = 10;
    long long candidate_length = 6;
    long long random_candidates = 64;
    long long element_budget = 64;
    long long word_length_cap = 6;
    unsigned long long enumeration_cap = 10000000ULL;
    std::size_t closure_cap = 64;
    Rational tolerance = Rational(1, 100);

    static Bounds from_json(const json& cfg) {
        Bounds b;
        if (!cfg.contains("bounds")) return b;
        const json& j = cfg.at("bounds");
        auto geti = [&](const char* k, long long def) {
            long long v = j.value(k, def);
            if (v < 1) throw parse_error(std::string("bound must be positive: ") + k, 0);
            return v;
        };
        b.region_radius = geti("region_radius", b.region_radius);
        b.depth = geti("depth", b.depth);
        b.syllable_bound = geti("syllable_bound", b.syllable_bound);
        b.exponent_bound = geti("exponent_bound", b.exponent_bound);
        b.exponent_budget = geti("exponent_budget", b.exponent_budget);
        b.candidate_length = geti("candidate_length", b.candidate_length);
        b.random_candidates = geti("random_candidates", b.random_candidates);
        b.element_budget = geti("element_budget", b.element_budget);
        b.word_length_cap = geti("word_length_cap", b.word_length_cap);
        b.enumeration_cap = j.value("enumeration_cap", b.enumeration_cap);
        b.closure_cap = j.value("closure_cap", b.closure_cap);
        if (j.contains("tolerance")) b.tolerance = rational_from_json(j.at("tolerance"));
        return b;
    }

    json to_json() const {
        json j;
        j["region_radius"] = region_radius;
        j["depth"] = depth;
        j["syllable_bound"] = syllable_bound;
        j["exponent_bound"] = exponent_bound;
        j["exponent_budget"] = exponent_budget;
        j["candidate_length"] = candidate_length;
        j["random_candidates"] = random_candidates;
        j["element_budget"] = element_budget;
        j["word_length_cap"] = word_length_cap;
        j["enumeration_cap"] = enumeration_cap;
        j["closure_cap"] = closure_cap;
        j["tolerance"] = tolerance.str();
        return j;
    }

    PipelineParams pipeline_params(std::uint64_t seed) const {
        PipelineParams p;
        p.region_radius = region_radius;
        p.depth = depth;
        p.syllable_bound = syllable_bound;
        p.exponent_bound = exponent_bound;
        p.enumeration_cap = enumeration_cap;
        p.closure_cap = closure_cap;
        p.budget.candidate_length = candidate_length;
        p.budget.random_candidates = random_candidates;
        p.budget.exponent_budget = exponent_budget;
        p.budget.seed = seed;
        return p;
    }
};

struct RunConfig {
    json raw;
    Model model;
    Bounds bounds;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::optional<std::string> output;

    static RunConfig load(const std::string& path) {
        json j = load_json_file(path);
        return from_json(j);
    }

    static RunConfig from_json(const json& j) {
        if (!j.is_object()) throw parse_error("config must be a JSON object", 0);
        if (!j.contains("model")) throw parse_error("config needs a \"model\"", 0);
        RunConfig cfg{j, model_from_json(j.at("model")), Bounds::from_json(j), 0, false, {}};
        if (j.contains("seed")) {
            cfg.seed = j.at("seed").get<std::uint64_t>();
            cfg.has_seed = true;
        }
        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
        return cfg;
    }

    void require_seed() const {
        if (!has_seed)
            throw parse_error("a seed is mandatory for randomized searches", 0);
    }

    std::vector<std::vector<GroupElement>> subgroups() const {
        std::vector<std::vector<GroupElement>> out;
        if (!raw.contains("subgroups")) return out;
        for (const auto& list : raw.at("subgroups")) {
            std::vector<GroupElement> gens;
            for (const auto& w : list) gens.push_back(model.parse(w.get<std::string>()));
            out.push_back(std::move(gens));
        }
        return out;
    }

    std::vector<GroupElement> elements(const char* key) const {
        std::vector<GroupElement> out;
        if (!raw.contains(key)) return out;
        for (const auto& w : raw.at(key)) out.push_back(model.parse(w.get<std::string>()));
        return out;
    }

    GroupElement element(const char* key) const {
        if (!raw.contains(key))
            throw parse_error(std::string("config needs \"") + key + "\"", 0);
        return model.parse(raw.at(key).get<std::string>());
    }

    // The fully resolved configuration embedded into every output record.
    json resolved() const {
        json j;
        j["model"] = raw.at("model");
        j["bounds"] = bounds.to_json();
        if (has_seed) j["seed"] = seed;
        for (const char* key : {"subgroups", "elements", "element", "gamma_n", "subgroup", "u",
                                "gs", "N", "m", "zeta", "measures", "target", "epsilon",
                                "min_distance"})
            if (raw.contains(key)) j[key] = raw.at(key);
        return j;
    }
};

}  // namespace pingpong
