// Classification of isometries: exact translation lengths, quasi-axes,
// fixed ends, quasi-fixed-point sets of finite subgroups, and the
// acylindricity probe.
//
// Translation length is computed by the geodesic-scan method (minimum
// displacement over the vertices of [x0, g x0], which is exact on trees);
// the displacement formula d(x, g^2 x) - d(x, g x) and the cyclic-core
// length serve as independent cross-check oracles in the tests.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "pingpong/endpoint.hpp"
#include "pingpong/errors.hpp"
#include "pingpong/model.hpp"
#include "pingpong/space.hpp"

namespace pingpong {

enum class IsometryClass { Elliptic, Loxodromic };

struct IsometryReport {
    GroupElement element;
    IsometryClass cls = IsometryClass::Elliptic;
    Dist translation_length = Dist::exact(0);
    Dist axis_slack = Dist::exact(0);  // the r of the sampled quasi-axis
    std::vector<Site> axis_sample;
    std::optional<std::pair<EndPoint, EndPoint>> ends;  // (attracting, repelling)
    bool approximate = false;
};

// g = conjugator . core . conjugator^-1 with the core cyclically reduced.
struct CyclicForm {
    GroupElement conjugator;
    GroupElement core;
};

inline CyclicForm cyclic_reduce(const Model& m, const GroupElement& g) {
    GroupElement p = m.identity();
    GroupElement c = g;
    auto reducible = [&m](const Word& w) {
        if (w.size() < 2) return false;
        if (w.front().gen != w.back().gen) return false;
        if (m.kind() == ModelKind::FreeProduct) return true;
        return (w.front().exp > 0) != (w.back().exp > 0);
    };
    while (reducible(c.word)) {
        GroupElement x{m.id(), Word{c.word.front()}};
        p = m.mul(p, x);
        c = m.mul(m.mul(m.inverse(x), c), x);
    }
    return CyclicForm{p, c};
}

inline Dist translation_length(const Model& m, const GroupElement& g) {
    if (!m.is_tree()) {
        // demo path: crude orbit estimate, flagged approximate
        Site x = m.basepoint();
        const int n = 32;
        double dn = distance(m, x, m.act(m.power(g, n), x)).to_double();
        return Dist::approximate(dn / n);
    }
    Site x0 = m.basepoint();
    Site gx0 = m.act(g, x0);
    long long best = tree_distance(m, x0, gx0);
    for (const Site& v : geodesic(m, x0, gx0).sites) {
        long long d = tree_distance(m, v, m.act(g, v));
        best = std::min(best, d);
    }
    return Dist::exact(best);
}

// Step-length of the cyclically reduced core; for two-factor Bass-Serre
// trees the core's syllable count, doubled when the tree has central
// vertices.  Used as an independent oracle and for end extraction.
inline long long core_translation_length(const Model& m, const GroupElement& g) {
    CyclicForm cf = cyclic_reduce(m, g);
    switch (m.kind()) {
        case ModelKind::FreeGroup:
            return word_step_length(cf.core.word, m.orders());
        case ModelKind::FreeProduct: {
            if (cf.core.word.size() <= 1) return 0;
            long long syl = static_cast<long long>(cf.core.word.size());
            return m.num_generators() == 2 ? syl : 2 * syl;
        }
        default:
            throw capability_error("core length requires a tree model");
    }
}

inline bool is_loxodromic(const Model& m, const GroupElement& g) {
    if (!m.is_tree()) throw capability_error("exact classification requires a tree model");
    return translation_length(m, g) > Dist::exact(0);
}

// Attracting and repelling fixed ends of a loxodromic tree isometry.
inline std::pair<EndPoint, EndPoint> fixed_ends(const Model& m, const GroupElement& g) {
    if (!m.is_tree()) throw capability_error("fixed ends require a tree model");
    CyclicForm cf = cyclic_reduce(m, g);
    bool lox = m.kind() == ModelKind::FreeGroup ? !cf.core.word.empty() : cf.core.word.size() >= 2;
    if (!lox) throw domain_violation("fixed ends require a loxodromic element");
    // (epsilon, core) is always a valid encoding; translating by the
    // conjugator resolves any splice cancellation exactly
    EndPoint plus = act_on_end(m, cf.conjugator, make_end(m, {}, cf.core.word));
    EndPoint minus = act_on_end(m, cf.conjugator, make_end(m, {}, m.inverse(cf.core).word));
    return {plus, minus};
}

inline IsometryReport classify(const Model& m, const GroupElement& g) {
    IsometryReport r;
    r.element = g;
    if (!m.is_tree()) {
        r.approximate = true;
        r.translation_length = translation_length(m, g);
        r.cls = r.translation_length.to_double() > 0.25 ? IsometryClass::Loxodromic
                                                        : IsometryClass::Elliptic;
        return r;
    }
    r.translation_length = translation_length(m, g);
    if (r.translation_length > Dist::exact(0)) {
        r.cls = IsometryClass::Loxodromic;
        auto [plus, minus] = fixed_ends(m, g);
        r.ends = std::make_pair(plus, minus);
        // a few verified axis vertices around the minimal-displacement point
        Site x0 = m.basepoint();
        Site witness = x0;
        for (const Site& v : geodesic(m, x0, m.act(g, x0)).sites)
            if (Dist::exact(tree_distance(m, v, m.act(g, v))) == r.translation_length) {
                witness = v;
                break;
            }
        for (long long n = -2; n <= 2; ++n)
            r.axis_sample.push_back(m.act(m.power(g, n), witness));
    } else {
        r.cls = IsometryClass::Elliptic;
    }
    return r;
}

// All sites of the ball with displacement <= translation_length + r.
inline std::vector<Site> quasi_axis(const Model& m, const GroupElement& g, const Dist& r,
                                    long long region_radius) {
    if (!m.is_tree()) throw capability_error("quasi-axis scan requires a tree model");
    Dist len = translation_length(m, g);
    if (!(len > Dist::exact(0))) throw domain_violation("quasi-axis requires a loxodromic element");
    Dist bound = len + r;
    std::vector<Site> out;
    for (const Site& x : m.ball(m.basepoint(), region_radius))
        if (distance(m, x, m.act(g, x)) <= bound) out.push_back(x);
    return out;
}

struct FixSet {
    std::vector<GroupElement> subgroup_generators;
    Dist K = Dist::exact(0);
    long long region_radius = 0;
    long long closure_depth = 0;
    std::vector<Site> sites;
    std::vector<Cylinder> boundary_closure;
};

// Fix_K(H) within the ball: sites moved at most K by every element of the
// subgroup generated by H (enumerated exhaustively; capped).  The boundary
// closure is discretized as the depth-d cylinders whose entire visible
// subtree stays inside the fix set.
inline FixSet fix_set(const Model& m, const std::vector<GroupElement>& gens, const Dist& K,
                      long long region_radius, long long closure_depth = 3,
                      std::size_t closure_cap = 64) {
    if (!m.is_tree()) throw capability_error("fix sets require a tree model");
    FixSet out;
    out.subgroup_generators = gens;
    out.K = K;
    out.region_radius = region_radius;
    out.closure_depth = closure_depth;
    std::vector<GroupElement> closure = subgroup_closure(m, gens, closure_cap);
    std::vector<Site> ball = m.ball(m.basepoint(), region_radius);
    std::vector<bool> in_fix(ball.size(), false);
    for (std::size_t i = 0; i < ball.size(); ++i) {
        bool ok = true;
        for (const GroupElement& h : closure)
            if (!(distance(m, ball[i], m.act(h, ball[i])) <= K)) { ok = false; break; }
        in_fix[i] = ok;
        if (ok) out.sites.push_back(ball[i]);
    }
    // closure cylinders: every ball site in the subtree past the cylinder
    // vertex must belong to the fix set
    for (const Cylinder& c : all_cylinders(m, m.basepoint(), closure_depth)) {
        bool all_in = true;
        bool any = false;
        for (std::size_t i = 0; i < ball.size() && all_in; ++i) {
            long long dv = tree_distance(m, m.basepoint(), ball[i]);
            if (dv < closure_depth) continue;
            if (tree_distance(m, m.basepoint(), c.vertex) +
                    tree_distance(m, c.vertex, ball[i]) != dv)
                continue;  // not in the subtree past the cylinder vertex
            any = true;
            all_in = in_fix[i];
        }
        if (any && all_in) out.boundary_closure.push_back(c);
    }
    return out;
}

inline bool end_in_closure(const Model& m, const EndPoint& e, const FixSet& fs) {
    for (const Cylinder& c : fs.boundary_closure)
        if (end_in_cylinder(m, e, c)) return true;
    return false;
}

inline Dist site_set_diameter(const Model& m, const std::vector<Site>& sites) {
    Dist best = Dist::exact(0);
    for (std::size_t i = 0; i < sites.size(); ++i)
        for (std::size_t j = i + 1; j < sites.size(); ++j)
            best = std::max(best, distance(m, sites[i], sites[j]),
                            [](const Dist& a, const Dist& b) { return a < b; });
    return best;
}

// diam(A_{10 delta}(gamma) intersect Fix_{50 delta}(H)) within the ball.
// The ball radius is recorded by the caller: the value is observed, not a
// global bound.
inline Dist observed_fix_axis_diameter(const Model& m, const GroupElement& gamma,
                                       const std::vector<GroupElement>& subgroup_gens,
                                       long long region_radius, long long closure_depth = 3) {
    Dist ten_delta = 10 * m.delta();
    Dist fifty_delta = 50 * m.delta();
    std::vector<Site> axis = quasi_axis(m, gamma, ten_delta, region_radius);
    FixSet fs = fix_set(m, subgroup_gens, fifty_delta, region_radius, closure_depth);
    std::vector<Site> meet;
    for (const Site& a : axis)
        for (const Site& f : fs.sites)
            if (a == f) { meet.push_back(a); break; }
    return site_set_diameter(m, meet);
}

// Max diameter of the closest-point projection of a sampled conjugate
// quasi-axis (with a distinct fixed pair) onto the quasi-axis of gamma,
// within the ball.
inline Dist observed_projection_diameter(const Model& m, const GroupElement& gamma,
                                         long long region_radius, long long conjugator_length = 2) {
    Dist ten_delta = 10 * m.delta();
    std::vector<Site> axis = quasi_axis(m, gamma, ten_delta, region_radius);
    auto pair_of = fixed_ends(m, gamma);
    Dist best = Dist::exact(0);
    for (const GroupElement& h : m.enumerate_elements(conjugator_length)) {
        if (h.is_identity()) continue;
        GroupElement conj = m.conjugate(gamma, h);
        auto cp = fixed_ends(m, conj);
        bool same_pair = (cp.first == pair_of.first && cp.second == pair_of.second) ||
                         (cp.first == pair_of.second && cp.second == pair_of.first);
        if (same_pair) continue;
        std::vector<Site> caxis = quasi_axis(m, conj, ten_delta, region_radius);
        std::vector<Site> projection;
        for (const Site& y : caxis) {
            const Site* closest = nullptr;
            Dist dbest = Dist::infinity();
            for (const Site& x : axis) {
                Dist d = distance(m, y, x);
                if (d < dbest) { dbest = d; closest = &x; }
            }
            if (closest) projection.push_back(*closest);
        }
        best = std::max(best, site_set_diameter(m, projection),
                        [](const Dist& a, const Dist& b) { return a < b; });
    }
    return best;
}

// Max over site pairs at distance >= M of the number of short elements
// moving both by at most epsilon.  A lower bound for the acylindricity
// constant; diagnostic only.
inline long long acylindricity_probe(const Model& m, const Dist& epsilon, const Dist& M,
                                     long long region_radius, long long word_length_cap) {
    if (!m.is_tree()) throw capability_error("the probe requires a tree model");
    if (M > Dist::exact(2 * region_radius))
        throw domain_violation("M must be at most the ball diameter");
    std::vector<Site> ball = m.ball(m.basepoint(), region_radius);
    std::vector<GroupElement> elts = m.enumerate_elements(word_length_cap);
    // per element: which ball sites it moves by <= epsilon
    std::vector<std::vector<bool>> small(elts.size(), std::vector<bool>(ball.size(), false));
    for (std::size_t e = 0; e < elts.size(); ++e)
        for (std::size_t i = 0; i < ball.size(); ++i)
            small[e][i] = distance(m, ball[i], m.act(elts[e], ball[i])) <= epsilon;
    long long best = 0;
    for (std::size_t i = 0; i < ball.size(); ++i)
        for (std::size_t j = i; j < ball.size(); ++j) {
            if (!(distance(m, ball[i], ball[j]) >= M)) continue;
            long long count = 0;
            for (std::size_t e = 0; e < elts.size(); ++e)
                if (small[e][i] && small[e][j]) ++count;
            best = std::max(best, count);
        }
    return best;
}

}  // namespace pingpong
