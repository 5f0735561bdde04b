// Partner construction: loxodromics with prescribed fixed-end locations,
// the escape search over quasi-fixed-point sets, selection of the power N,
// and the full pipeline that ends in independently verified freeness
// certificates.
//
// Existential quantifiers ("for sufficiently large n and k") become bounded
// lexicographic searches whose every output is re-verified, so a returned
// element is unconditionally correct; running out of budget is a typed
// failure the caller can retry with a bigger budget.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pingpong/certify.hpp"
#include "pingpong/endpoint.hpp"
#include "pingpong/errors.hpp"
#include "pingpong/isometry.hpp"
#include "pingpong/model.hpp"
#include "pingpong/space.hpp"

namespace pingpong {

struct needs_ellipticization_error : error {
    explicit needs_ellipticization_error(const std::string& what) : error(what) {}
};

struct SubgroupEvidence {
    std::vector<GroupElement> generators;
    Dist D_observed = Dist::exact(0);
    Dist Dprime_observed = Dist::exact(0);
    bool plus_outside_closure = false;
    bool minus_outside_closure = false;
    std::size_t closure_cylinders = 0;
    bool pair_preservation_checked = false;
};

struct PartnerResult {
    GroupElement gamma;
    long long power_N = 1;
    Dist Delta = Dist::exact(0);
    Dist C = Dist::exact(0);
    Dist gamma_length = Dist::exact(0);
    long long region_radius = 0;
    long long depth = 0;
    std::vector<SubgroupEvidence> per_subgroup;
};

struct SearchBudget {
    long long candidate_length = 6;   // shortlex enumeration cap
    long long random_candidates = 64; // seeded extras past the enumeration
    long long exponent_budget = 10;   // n, k search range
    std::uint64_t seed = 1;
};

// ---- location of the axis -----------------------------------------------------

// Smallest (n, k) lexicographically such that g1^n g2^k is loxodromic with
// attracting end in V and repelling end in U; search-then-verify.
inline GroupElement loa_construct(const Model& m, const GroupElement& g1, const GroupElement& g2,
                                  const Cylinder& U, const Cylinder& V, long long max_exp) {
    if (!is_loxodromic(m, g1) || !is_loxodromic(m, g2))
        throw domain_violation("both inputs must be loxodromic");
    auto e1 = fixed_ends(m, g1);
    auto e2 = fixed_ends(m, g2);
    if (e1.first == e2.first || e1.first == e2.second || e1.second == e2.first ||
        e1.second == e2.second)
        throw domain_violation("fixed-end pairs are not disjoint");
    if (!end_in_cylinder(m, e1.first, V))
        throw domain_violation("g1+ does not lie in the target cylinder V");
    if (!end_in_cylinder(m, e2.second, U))
        throw domain_violation("g2- does not lie in the target cylinder U");
    for (long long n = 1; n <= max_exp; ++n) {
        GroupElement g1n = m.power(g1, n);
        for (long long k = 1; k <= max_exp; ++k) {
            GroupElement cand = m.mul(g1n, m.power(g2, k));
            if (!is_loxodromic(m, cand)) continue;
            auto ends = fixed_ends(m, cand);
            if (end_in_cylinder(m, ends.first, V) && end_in_cylinder(m, ends.second, U))
                return cand;
        }
    }
    throw budget_exhausted_error("no verified product within the exponent budget");
}

// ---- escape search --------------------------------------------------------------

namespace detail {

struct EscapeContext {
    std::vector<std::vector<GroupElement>> closures;  // full subgroup elements
    std::vector<FixSet> fixes;
};

inline bool ends_outside_closures(const Model& m, const GroupElement& g,
                                  const EscapeContext& ctx, std::size_t upto) {
    auto ends = fixed_ends(m, g);
    for (std::size_t i = 0; i < upto; ++i)
        if (end_in_closure(m, ends.first, ctx.fixes[i]) ||
            end_in_closure(m, ends.second, ctx.fixes[i]))
            return false;
    return true;
}

inline bool no_pair_preserved(const Model& m, const GroupElement& g, const EscapeContext& ctx) {
    auto ends = fixed_ends(m, g);
    for (const auto& closure : ctx.closures)
        for (const GroupElement& h : closure) {
            if (h.is_identity()) continue;
            EndPoint hp = act_on_end(m, h, ends.first);
            EndPoint hm = act_on_end(m, h, ends.second);
            bool preserved = (hp == ends.first && hm == ends.second) ||
                             (hp == ends.second && hm == ends.first);
            if (preserved) return false;
        }
    return true;
}

}  // namespace detail

// Loxodromic gamma with (a) both fixed ends off every discretized closure
// of Fix_{50 delta}(H_i) and (b) no nontrivial element of any H_i preserving
// {gamma+, gamma-}.  Follows the iterated-product chain; when the first
// candidate already satisfies (a), the conjugate construction
// (g^n h^-1 g^n h)^n g^-n is applied.
inline GroupElement escape_search(const Model& m,
                                  const std::vector<std::vector<GroupElement>>& subgroups,
                                  long long region_radius, long long depth,
                                  const SearchBudget& budget, std::size_t closure_cap = 64) {
    if (!m.is_tree()) throw capability_error("escape search requires a tree model");
    Dist fifty_delta = 50 * m.delta();

    detail::EscapeContext ctx;
    std::vector<Site> ball = m.ball(m.basepoint(), region_radius);
    bool any_nontrivial = false;
    for (const auto& gens : subgroups) {
        std::vector<GroupElement> closure = subgroup_closure(m, gens, closure_cap);
        for (const GroupElement& h : closure)
            if (is_loxodromic(m, h))
                throw domain_violation("subgroup is not elliptic: " + m.print(h));
        if (closure.size() <= 1) continue;  // trivial subgroup: both constraints vacuous
        any_nontrivial = true;
        FixSet fs = fix_set(m, gens, fifty_delta, region_radius, depth, closure_cap);
        if (fs.sites.size() == ball.size())
            throw domain_violation("Fix_50delta(H) covers the whole ball");
        ctx.closures.push_back(std::move(closure));
        ctx.fixes.push_back(std::move(fs));
    }

    // deterministic candidate stream: shortlex enumeration, then seeded randoms
    std::vector<GroupElement> candidates;
    for (const GroupElement& g : m.enumerate_elements(budget.candidate_length))
        if (!g.is_identity() && is_loxodromic(m, g)) candidates.push_back(g);
    for (long long i = 0; i < budget.random_candidates; ++i) {
        GroupElement g = m.random_element(2 + (i % 5), budget.seed + 1000 + i);
        if (!g.is_identity() && is_loxodromic(m, g)) candidates.push_back(g);
    }
    if (candidates.empty()) throw budget_exhausted_error("no loxodromic candidate found");

    auto verify = [&](const GroupElement& g) {
        return detail::ends_outside_closures(m, g, ctx, ctx.fixes.size()) &&
               detail::no_pair_preserved(m, g, ctx);
    };

    const GroupElement g1 = candidates.front();
    if (!any_nontrivial) return g1;  // vacuous constraints

    GroupElement chained = g1;
    bool have_chained = false;
    if (!detail::ends_outside_closures(m, g1, ctx, ctx.fixes.size())) {
        // iterated products g_next^n . current^n clearing one closure at a time
        GroupElement current = g1;
        for (std::size_t i = 0; i < ctx.fixes.size(); ++i) {
            if (detail::ends_outside_closures(m, current, ctx, i + 1)) continue;
            std::optional<GroupElement> gnext;
            for (const GroupElement& g : candidates) {
                auto ends = fixed_ends(m, g);
                if (!end_in_closure(m, ends.first, ctx.fixes[i]) &&
                    !end_in_closure(m, ends.second, ctx.fixes[i])) {
                    gnext = g;
                    break;
                }
            }
            if (!gnext) throw budget_exhausted_error("no candidate clears the closure");
            bool advanced = false;
            for (long long n = 1; n <= budget.exponent_budget && !advanced; ++n) {
                GroupElement cand = m.mul(m.power(*gnext, n), m.power(current, n));
                if (!is_loxodromic(m, cand)) continue;
                if (detail::ends_outside_closures(m, cand, ctx, i + 1)) {
                    current = cand;
                    advanced = true;
                }
            }
            if (!advanced)
                throw budget_exhausted_error("iterated product failed within the exponent budget");
        }
        chained = current;
        have_chained = true;
        if (verify(chained)) return chained;
    }

    // early termination: the candidate already clears every closure, so use
    // the conjugate construction (g^n h^-1 g^n h)^n g^-n with h chosen so
    // that the conjugate axis has a disjoint fixed pair
    const GroupElement base = have_chained ? chained : g1;
    auto base_ends = fixed_ends(m, base);
    for (const GroupElement& h : m.enumerate_elements(budget.candidate_length)) {
        if (h.is_identity()) continue;
        GroupElement conj = m.conjugate(base, m.inverse(h));  // h^-1 g h
        auto ce = fixed_ends(m, conj);
        if (ce.first == base_ends.first || ce.first == base_ends.second ||
            ce.second == base_ends.first || ce.second == base_ends.second)
            continue;
        for (long long n = 1; n <= budget.exponent_budget; ++n) {
            GroupElement gn = m.power(base, n);
            GroupElement inner = m.mul(m.mul(m.mul(gn, m.inverse(h)), gn), h);
            GroupElement cand = m.mul(m.power(inner, n), m.inverse(gn));
            if (!is_loxodromic(m, cand)) continue;
            if (verify(cand)) return cand;
        }
    }

    // fall back to plainly verified stream candidates
    for (const GroupElement& g : candidates)
        if (verify(g)) return g;
    throw budget_exhausted_error("escape search exhausted its candidate budget");
}

// ---- power selection -------------------------------------------------------------

inline PartnerResult pingpong_power(const Model& m, const GroupElement& gamma,
                                    const std::vector<std::vector<GroupElement>>& subgroups,
                                    long long region_radius, long long depth = 3,
                                    std::size_t closure_cap = 64) {
    if (!m.is_tree()) throw capability_error("power selection requires a tree model");
    PartnerResult out;
    out.gamma = gamma;
    out.region_radius = region_radius;
    out.depth = depth;
    out.gamma_length = translation_length(m, gamma);
    if (!(out.gamma_length > Dist::exact(0)))
        throw domain_violation("partner candidate must be loxodromic");

    Dist thousand_delta = 1000 * m.delta();
    auto [K1, K2] = m.local_global_constants();
    Dist K2sq = Dist::exact(K2.rational() * K2.rational());
    auto ends = fixed_ends(m, gamma);

    Dist D = Dist::exact(0);
    Dist Dp = observed_projection_diameter(m, gamma, region_radius);
    for (const auto& gens : subgroups) {
        SubgroupEvidence ev;
        ev.generators = gens;
        ev.Dprime_observed = Dp;
        std::vector<GroupElement> closure = subgroup_closure(m, gens, closure_cap);
        if (closure.size() <= 1) {
            // trivial subgroup: the free product is automatic, nothing to bound
            ev.plus_outside_closure = true;
            ev.minus_outside_closure = true;
            ev.pair_preservation_checked = true;
            out.per_subgroup.push_back(std::move(ev));
            continue;
        }
        ev.D_observed = observed_fix_axis_diameter(m, gamma, gens, region_radius, depth);
        FixSet fs = fix_set(m, gens, 50 * m.delta(), region_radius, depth, closure_cap);
        ev.plus_outside_closure = !end_in_closure(m, ends.first, fs);
        ev.minus_outside_closure = !end_in_closure(m, ends.second, fs);
        ev.closure_cylinders = fs.boundary_closure.size();
        for (const GroupElement& h : closure) {
            if (h.is_identity()) continue;
            EndPoint hp = act_on_end(m, h, ends.first);
            EndPoint hm = act_on_end(m, h, ends.second);
            bool preserved = (hp == ends.first && hm == ends.second) ||
                             (hp == ends.second && hm == ends.first);
            if (preserved)
                throw domain_violation("a subgroup element preserves the fixed pair");
        }
        ev.pair_preservation_checked = true;
        D = std::max(D, ev.D_observed, [](const Dist& a, const Dist& b) { return a < b; });
        out.per_subgroup.push_back(std::move(ev));
    }

    auto dmax = [](const Dist& a, const Dist& b) { return a < b ? b : a; };
    out.Delta = dmax(dmax(dmax(D, Dp), dmax(thousand_delta, K1)), K2sq);
    out.C = 10 * out.Delta + thousand_delta;
    Rational needed = out.C.rational() / out.gamma_length.rational();
    out.power_N = std::max<long long>(1, needed.ceil());
    return out;
}

// ---- the full pipeline -------------------------------------------------------------

struct PipelineParams {
    long long region_radius = 6;
    long long depth = 3;
    long long syllable_bound = 8;
    long long exponent_bound = 3;
    unsigned long long enumeration_cap = 10000000ULL;
    std::size_t closure_cap = 64;
    SearchBudget budget;
};

struct PipelineResult {
    PartnerResult partner;
    GroupElement gamma_N;
    std::vector<FreenessCertificate> certificates;
};

inline PipelineResult pnaive_pipeline(const Model& m,
                                      const std::vector<std::vector<GroupElement>>& subgroups,
                                      const PipelineParams& params) {
    if (!m.certificate_capable())
        throw capability_error("the pipeline requires a certificate-capable model");

    // probe of the finite-normal-subgroup hypothesis: no nontrivial finite
    // subgroup encountered may quasi-fix the whole ball
    std::vector<Site> ball = m.ball(m.basepoint(), params.region_radius);
    Dist fifty_delta = 50 * m.delta();
    for (const auto& gens : subgroups)
        for (const GroupElement& h : subgroup_closure(m, gens, params.closure_cap)) {
            if (h.is_identity() || is_loxodromic(m, h)) continue;
            FixSet fs = fix_set(m, {h}, fifty_delta, params.region_radius, params.depth,
                                params.closure_cap);
            if (fs.sites.size() == ball.size())
                throw domain_violation(
                    "finite-normal-subgroup probe: Fix covers the ball for " + m.print(h));
        }

    PipelineResult out;
    GroupElement gamma = escape_search(m, subgroups, params.region_radius, params.depth,
                                       params.budget, params.closure_cap);
    out.partner = pingpong_power(m, gamma, subgroups, params.region_radius, params.depth,
                                 params.closure_cap);
    out.gamma_N = m.power(gamma, out.partner.power_N);
    for (const auto& gens : subgroups) {
        FreenessCertificate cert =
            freeness_certificate(m, out.gamma_N, gens, params.syllable_bound,
                                 params.exponent_bound, params.enumeration_cap,
                                 params.closure_cap);
        if (cert.status != CertStatus::Pass)
            throw error("certificate failed for a pipeline partner (bug): witness " +
                        cert.witness_text);
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

// Element-list entry point: finite-order elements are wrapped as cyclic
// subgroups; loxodromic inputs would need the cone-off construction, which
// desk models do not provide.
inline PipelineResult pnaive_for_elements(const Model& m,
                                          const std::vector<GroupElement>& elements,
                                          const PipelineParams& params) {
    std::vector<std::vector<GroupElement>> subgroups;
    for (const GroupElement& h : elements) {
        if (h.is_identity()) throw domain_violation("input elements must be nontrivial");
        if (is_loxodromic(m, h))
            throw needs_ellipticization_error(
                "input " + m.print(h) + " is loxodromic; making it elliptic is out of scope");
        subgroups.push_back({h});
    }
    return pnaive_pipeline(m, subgroups, params);
}

}  // namespace pingpong
