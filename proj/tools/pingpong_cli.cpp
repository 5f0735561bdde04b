// Batch front end: parses a JSON run configuration, executes one
// subcommand, and writes a versioned result record.
//
// Exit codes: 0 pass, 1 fail (with witness in the record), 2 refusal
// (budget or enumeration cap), 64 config parse error, 65 capability or
// precondition violation, 70 internal oracle disagreement.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pingpong/config.hpp"
#include "pingpong/pingpong.hpp"
#include "pingpong/record.hpp"

using namespace pingpong;

namespace {

struct Output {
    std::optional<std::string> path;

    void emit(const nlohmann::json& record) const {
        if (path)
            write_record(*path, record);
        else
            std::cout << record.dump(2) << "\n";
    }
};

int run_classify(const RunConfig& cfg, const Output& out) {
    GroupElement g = cfg.element("element");
    IsometryReport report = classify(cfg.model, g);
    out.emit(result_record("classify", cfg.resolved(), report_json(cfg.model, report), "pass"));
    return 0;
}

int run_find_partner(const RunConfig& cfg, const Output& out) {
    cfg.require_seed();
    PipelineParams params = cfg.bounds.pipeline_params(cfg.seed);
    PipelineResult res;
    if (cfg.raw.contains("subgroups"))
        res = pnaive_pipeline(cfg.model, cfg.subgroups(), params);
    else
        res = pnaive_for_elements(cfg.model, cfg.elements("elements"), params);
    nlohmann::json result;
    result["partner"] = partner_json(cfg.model, res.partner);
    result["gamma_N"] = cfg.model.print(res.gamma_N);
    nlohmann::json certs = nlohmann::json::array();
    for (const FreenessCertificate& c : res.certificates)
        certs.push_back(certificate_json(cfg.model, c));
    result["certificates"] = certs;
    out.emit(result_record("find-partner", cfg.resolved(), result, "pass"));
    return 0;
}

int run_certify_free(const RunConfig& cfg, const Output& out) {
    GroupElement gammaN = cfg.element("gamma_n");
    std::vector<GroupElement> gens = cfg.elements("subgroup");
    FreenessCertificate cert =
        freeness_certificate(cfg.model, gammaN, gens, cfg.bounds.syllable_bound,
                             cfg.bounds.exponent_bound, cfg.bounds.enumeration_cap,
                             cfg.bounds.closure_cap);
    bool pass = cert.status == CertStatus::Pass;
    out.emit(result_record("certify-free", cfg.resolved(), certificate_json(cfg.model, cert),
                           pass ? "pass" : "fail"));
    return pass ? 0 : 1;
}

int run_check_star(const RunConfig& cfg, const Output& out) {
    std::vector<GroupElement> M = cfg.elements("elements");
    long long arity = cfg.raw.value("m", 2);
    long long N = cfg.raw.value("N", 1);
    GroupElement u = cfg.raw.contains("u") && cfg.raw.at("u").get<std::string>() != "auto"
                         ? cfg.element("u")
                         : select_star_witness(cfg.model, M, cfg.bounds.candidate_length);
    StarReport report =
        star_property_check(cfg.model, M, arity, u, N, cfg.bounds.enumeration_cap);
    nlohmann::json result;
    result["u"] = cfg.model.print(u);
    result["N"] = N;
    result["m"] = arity;
    result["a"] = cfg.model.print(report.a);
    result["b"] = cfg.model.print(report.b);
    result["c"] = cfg.model.print(report.c);
    result["products_checked"] = report.products_checked;
    result["pass"] = report.pass;
    if (report.witness) {
        nlohmann::json w;
        nlohmann::json gs = nlohmann::json::array(), xs = nlohmann::json::array();
        for (const GroupElement& g : report.witness->gs) gs.push_back(cfg.model.print(g));
        for (const GroupElement& x : report.witness->xs) xs.push_back(cfg.model.print(x));
        w["gs"] = gs;
        w["xs"] = xs;
        result["witness"] = w;
    }
    out.emit(result_record("check-star", cfg.resolved(), result, report.pass ? "pass" : "fail"));
    return report.pass ? 0 : 1;
}

int run_check_noloops(const RunConfig& cfg, const Output& out) {
    GroupElement u = cfg.element("u");
    std::vector<GroupElement> gs = cfg.elements("gs");
    long long N = cfg.raw.value("N", 1);
    NoloopsReport report = noloops_check(cfg.model, u, gs, N, cfg.bounds.exponent_bound,
                                         cfg.bounds.enumeration_cap);
    nlohmann::json result;
    result["u"] = cfg.model.print(u);
    result["N"] = N;
    result["exp_bound"] = cfg.bounds.exponent_bound;
    result["words_checked"] = report.words_checked;
    result["pass"] = report.pass;
    if (!report.pass) result["witness_exponents"] = report.witness;
    out.emit(
        result_record("check-noloops", cfg.resolved(), result, report.pass ? "pass" : "fail"));
    return report.pass ? 0 : 1;
}

EndPoint end_from_json(const Model& m, const nlohmann::json& j) {
    Word prefix = m.parse(j.value("prefix", std::string("1"))).word;
    Word period = m.parse(j.at("period").get<std::string>()).word;
    return make_end(m, prefix, period);
}

int run_boundary_demo(const RunConfig& cfg, const Output& out) {
    cfg.require_seed();
    const Model& m = cfg.model;
    EndPoint zeta = end_from_json(m, cfg.raw.at("zeta"));
    std::vector<EndMeasure> measures;
    for (const auto& mj : cfg.raw.at("measures")) {
        std::vector<std::pair<EndPoint, Rational>> atoms;
        for (const auto& aj : mj.at("atoms"))
            atoms.emplace_back(end_from_json(m, aj), rational_from_json(aj.at("weight")));
        measures.push_back(make_measure(m, std::move(atoms)));
    }
    if (measures.size() != 2) throw parse_error("boundary-demo needs exactly two measures", 0);
    SearchBudget budget;
    budget.exponent_budget = cfg.bounds.exponent_budget;
    budget.candidate_length = cfg.bounds.candidate_length;
    budget.seed = cfg.seed;
    ProximalityTrace trace = proximality_run(m, measures[0], measures[1], zeta, cfg.bounds.depth,
                                             cfg.bounds.tolerance, budget);
    MinimalityReport minimality =
        minimality_check(m, zeta, std::min<long long>(2, cfg.bounds.depth),
                         cfg.bounds.element_budget);
    nlohmann::json result;
    result["proximality"] = proximality_json(m, trace);
    nlohmann::json minj;
    minj["pass"] = minimality.pass;
    minj["witnesses"] = minimality.witnesses.size();
    result["minimality"] = minj;
    nlohmann::json tf = nlohmann::json::array();
    for (const GroupElement& g : m.enumerate_elements(2)) {
        if (g.is_identity()) continue;
        TopFreeReport r = topological_freeness_check(m, g, cfg.bounds.depth);
        nlohmann::json e;
        e["element"] = m.print(g);
        e["pass"] = r.pass;
        tf.push_back(e);
    }
    result["topological_freeness"] = tf;
    bool pass = minimality.pass;
    for (const auto& e : tf) pass = pass && e.at("pass").get<bool>();
    out.emit(result_record("boundary-demo", cfg.resolved(), result, pass ? "pass" : "fail"));
    return pass ? 0 : 1;
}

int run_probe(const RunConfig& cfg, const Output& out) {
    Dist eps = Dist::exact(rational_from_json(cfg.raw.value("epsilon", nlohmann::json(0))));
    Dist M = Dist::exact(rational_from_json(cfg.raw.value("min_distance", nlohmann::json(2))));
    long long count = acylindricity_probe(cfg.model, eps, M, cfg.bounds.region_radius,
                                          cfg.bounds.word_length_cap);
    nlohmann::json result;
    result["epsilon"] = eps.str();
    result["min_distance"] = M.str();
    result["region_radius"] = cfg.bounds.region_radius;
    result["word_length_cap"] = cfg.bounds.word_length_cap;
    result["max_common_quasi_fixers"] = count;
    out.emit(result_record("probe-acylindricity", cfg.resolved(), result, "pass"));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ping-pong partners on trees: search and certification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::optional<std::uint64_t> seed_override;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--output", output_path, "record output path (overrides config)");
        sub->add_option("--seed", seed_override, "seed override");
    };
    for (const char* name :
         {"classify", "find-partner", "certify-free", "check-star", "check-noloops",
          "boundary-demo", "probe-acylindricity"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);
    std::string sub = app.get_subcommands().front()->get_name();

    try {
        RunConfig cfg = RunConfig::load(config_path);
        if (seed_override) {
            cfg.seed = *seed_override;
            cfg.has_seed = true;
            cfg.raw["seed"] = *seed_override;
        }
        Output out;
        if (!output_path.empty())
            out.path = output_path;
        else if (cfg.output)
            out.path = *cfg.output;

        if (sub == "classify") return run_classify(cfg, out);
        if (sub == "find-partner") return run_find_partner(cfg, out);
        if (sub == "certify-free") return run_certify_free(cfg, out);
        if (sub == "check-star") return run_check_star(cfg, out);
        if (sub == "check-noloops") return run_check_noloops(cfg, out);
        if (sub == "boundary-demo") return run_boundary_demo(cfg, out);
        if (sub == "probe-acylindricity") return run_probe(cfg, out);
        std::cerr << "unknown subcommand\n";
        return 64;
    } catch (const parse_error& e) {
        std::cerr << "parse error at byte " << e.where << ": " << e.what() << "\n";
        return 64;
    } catch (const enumeration_cap_error& e) {
        std::cerr << "refused: " << e.what() << " (estimated " << e.estimated_count << " words)\n";
        return 2;
    } catch (const budget_exhausted_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const subgroup_cap_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const needs_ellipticization_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const oracle_mismatch_error& e) {
        std::cerr << "oracle disagreement (internal bug): " << e.what() << "\n";
        return 70;
    } catch (const capability_error& e) {
        std::cerr << "capability violation: " << e.what() << "\n";
        return 65;
    } catch (const domain_violation& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return 65;
    } catch (const model_mismatch_error& e) {
        std::cerr << "model mismatch: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
}
