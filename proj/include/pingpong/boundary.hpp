// Boundary experiments at cylinder resolution: pushing finite-support
// measures on the tree ends, strong-proximality sequences, minimality and
// topological freeness.  Everything is exact: weights are rationals and
// ends are eventually periodic, so "mass in a cylinder" is a finite sum.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "pingpong/endpoint.hpp"
#include "pingpong/errors.hpp"
#include "pingpong/isometry.hpp"
#include "pingpong/model.hpp"
#include "pingpong/partner.hpp"
#include "pingpong/space.hpp"

namespace pingpong {

struct EndMeasure {
    std::vector<std::pair<EndPoint, Rational>> atoms;  // canonical, distinct, weights > 0
};

inline EndMeasure make_measure(const Model& m, std::vector<std::pair<EndPoint, Rational>> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return endpoint_less(a.first, b.first); });
    EndMeasure mu;
    Rational total(0);
    for (auto& [e, w] : atoms) {
        if (e.model_id != m.id()) throw model_mismatch_error("atom from a different model");
        if (!(w > Rational(0))) throw domain_violation("atom weights must be positive");
        total = total + w;
        if (!mu.atoms.empty() && mu.atoms.back().first == e)
            mu.atoms.back().second = mu.atoms.back().second + w;
        else
            mu.atoms.emplace_back(e, w);
    }
    if (total != Rational(1)) throw domain_violation("atom weights must sum to 1");
    return mu;
}

inline Rational total_mass(const EndMeasure& mu) {
    Rational t(0);
    for (const auto& [e, w] : mu.atoms) t = t + w;
    return t;
}

inline EndMeasure push_measure(const Model& m, const GroupElement& g, const EndMeasure& mu) {
    std::vector<std::pair<EndPoint, Rational>> atoms;
    for (const auto& [e, w] : mu.atoms) atoms.emplace_back(act_on_end(m, g, e), w);
    return make_measure(m, std::move(atoms));
}

inline Rational mass_in_cylinder(const Model& m, const EndMeasure& mu, const Cylinder& c) {
    Rational t(0);
    for (const auto& [e, w] : mu.atoms)
        if (end_in_cylinder(m, e, c)) t = t + w;
    return t;
}

// A small deterministic family of eventually periodic ends: prefixes up to
// the given step length, short valid periods.
inline std::vector<EndPoint> candidate_ends(const Model& m, long long prefix_len) {
    std::vector<Word> periods;
    if (m.kind() == ModelKind::FreeGroup) {
        for (int gen = 0; gen < m.num_generators(); ++gen)
            for (long long e : {1LL, -1LL}) periods.push_back(Word{Syllable{gen, e}});
    } else {
        for (int f1 = 0; f1 < m.num_generators(); ++f1)
            for (int f2 = 0; f2 < m.num_generators(); ++f2) {
                if (f1 == f2) continue;
                for (long long e1 = 1; e1 < m.orders()[f1]; ++e1)
                    for (long long e2 = 1; e2 < m.orders()[f2]; ++e2)
                        periods.push_back(Word{Syllable{f1, e1}, Syllable{f2, e2}});
            }
    }
    std::vector<EndPoint> out;
    for (const GroupElement& u : m.enumerate_elements(prefix_len))
        for (const Word& q : periods) {
            try {
                out.push_back(make_end(m, u.word, q));
            } catch (const domain_violation&) {
                // invalid splice; skip
            }
        }
    std::sort(out.begin(), out.end(), endpoint_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- strong proximality -----------------------------------------------------------

struct ProximalityStep {
    GroupElement element;
    Rational mass1;
    Rational mass2;
};

struct ProximalityTrace {
    std::vector<ProximalityStep> steps;
    Cylinder target;
    EndPoint low_mass_center;  // the xi_0 of the construction
    long long low_mass_depth = 0;
};

// Drives both measures toward the Dirac mass at zeta: picks an atom-free
// cylinder U around some xi_0 with (zeta . xi_0)_{x0} <= 5 delta, builds a
// loxodromic with repelling end in U and attracting end in the target
// cylinder of zeta, and applies increasing powers until at least 1 - tol of
// both masses sits in the target.  Every step is re-verified by pushing the
// original measures.
inline ProximalityTrace proximality_run(const Model& m, const EndMeasure& mu1,
                                        const EndMeasure& mu2, const EndPoint& zeta,
                                        long long depth, const Rational& tol,
                                        const SearchBudget& budget) {
    if (!m.is_tree()) throw capability_error("proximality runs require a tree model");
    ProximalityTrace trace;
    trace.target = cylinder_of_end(m, zeta, depth);

    Rational goal = Rational(1) - tol;
    if (mass_in_cylinder(m, mu1, trace.target) >= goal &&
        mass_in_cylinder(m, mu2, trace.target) >= goal)
        return trace;  // already concentrated

    // choose xi_0: diverges from zeta at the basepoint, and some cylinder
    // around it is atom-free
    std::optional<EndPoint> xi0;
    long long low_depth = 0;
    Site zeta1 = end_ray_site(m, zeta, 1);
    for (const EndPoint& cand : candidate_ends(m, 2)) {
        if (end_ray_site(m, cand, 1) == zeta1) continue;  // gromov product > 0 at the base
        for (long long d = 1; d <= depth + 4 && !xi0; ++d) {
            Cylinder u = cylinder_of_end(m, cand, d);
            bool atom_free = true;
            for (const auto& [e, w] : mu1.atoms)
                if (end_in_cylinder(m, e, u)) { atom_free = false; break; }
            for (const auto& [e, w] : mu2.atoms)
                if (atom_free && end_in_cylinder(m, e, u)) atom_free = false;
            if (atom_free) { xi0 = cand; low_depth = d; }
        }
        if (xi0) break;
    }
    if (!xi0)
        throw domain_violation("no low-mass neighborhood available around any candidate end");
    trace.low_mass_center = *xi0;
    trace.low_mass_depth = low_depth;
    Cylinder U = cylinder_of_end(m, *xi0, low_depth);

    // loxodromics with repelling end in U / attracting end in the target:
    // conjugate a short loxodromic by ray prefixes, then verify
    auto conjugated_into = [&](const Cylinder& cyl, bool attracting) -> GroupElement {
        for (long long ray_len = cyl.depth; ray_len <= cyl.depth + 4; ++ray_len) {
            const EndPoint& center = attracting ? zeta : *xi0;
            auto steps = end_steps(m, center, static_cast<std::size_t>(ray_len));
            GroupElement w = m.element(Word(steps.begin(), steps.end()));
            for (const GroupElement& g0 : m.enumerate_elements(3)) {
                if (g0.is_identity() || !is_loxodromic(m, g0)) continue;
                GroupElement cand = m.conjugate(g0, w);
                auto ends = fixed_ends(m, cand);
                if (attracting ? end_in_cylinder(m, ends.first, cyl)
                               : end_in_cylinder(m, ends.second, cyl))
                    return cand;
            }
        }
        throw budget_exhausted_error("no conjugate loxodromic lands in the cylinder");
    };
    GroupElement gamma_rep = conjugated_into(U, false);
    GroupElement gamma_att = conjugated_into(trace.target, true);

    GroupElement phi;
    auto e_att = fixed_ends(m, gamma_att);
    auto e_rep = fixed_ends(m, gamma_rep);
    bool disjoint = e_att.first != e_rep.first && e_att.first != e_rep.second &&
                    e_att.second != e_rep.first && e_att.second != e_rep.second;
    if (disjoint && end_in_cylinder(m, e_att.first, trace.target) &&
        end_in_cylinder(m, e_rep.second, U)) {
        phi = loa_construct(m, gamma_att, gamma_rep, U, trace.target, budget.exponent_budget);
    } else {
        phi = gamma_att;  // degenerate overlap: the attracting conjugate alone
    }

    for (long long M = 1; M <= budget.exponent_budget * 2; ++M) {
        GroupElement t = m.power(phi, M);
        ProximalityStep step;
        step.element = t;
        step.mass1 = mass_in_cylinder(m, push_measure(m, t, mu1), trace.target);
        step.mass2 = mass_in_cylinder(m, push_measure(m, t, mu2), trace.target);
        trace.steps.push_back(step);
        if (step.mass1 >= goal && step.mass2 >= goal) return trace;
    }
    throw budget_exhausted_error("proximality run did not reach the target mass in budget");
}

// ---- minimality --------------------------------------------------------------------

struct MinimalityReport {
    bool pass = true;
    std::vector<std::pair<Cylinder, GroupElement>> witnesses;
    std::vector<Cylinder> uncovered;
};

// For every depth-d cylinder, exhibit g with g.xi inside it.
inline MinimalityReport minimality_check(const Model& m, const EndPoint& xi, long long depth,
                                         long long budget) {
    if (!m.is_tree()) throw capability_error("minimality check requires a tree model");
    MinimalityReport report;
    std::vector<GroupElement> stream = m.enumerate_elements(depth + 2);
    for (const Cylinder& c : all_cylinders(m, m.basepoint(), depth)) {
        bool found = false;
        long long tried = 0;
        // constructive first: steer the ray by cylinder-vertex words against
        // prefixes of xi
        GroupElement vrep{m.id(), c.vertex.word};
        for (long long j = 0; j <= depth + 2 && !found && tried < budget; ++j) {
            auto steps = end_steps(m, xi, static_cast<std::size_t>(j));
            GroupElement u = m.element(Word(steps.begin(), steps.end()));
            GroupElement g = m.mul(vrep, m.inverse(u));
            ++tried;
            if (end_in_cylinder(m, act_on_end(m, g, xi), c)) {
                report.witnesses.emplace_back(c, g);
                found = true;
            }
        }
        for (std::size_t i = 0; i < stream.size() && !found && tried < budget; ++i, ++tried) {
            if (end_in_cylinder(m, act_on_end(m, stream[i], xi), c)) {
                report.witnesses.emplace_back(c, stream[i]);
                found = true;
            }
        }
        if (!found) {
            report.pass = false;
            report.uncovered.push_back(c);
        }
    }
    return report;
}

// ---- topological freeness ------------------------------------------------------------

struct TopFreeReport {
    bool pass = true;
    IsometryClass cls = IsometryClass::Elliptic;
    std::size_t cylinders_checked = 0;
    std::size_t witness_ends = 0;
    std::vector<Cylinder> offending;
};

// Loxodromic g: verifies that no sampled end outside the two cylinders of
// g+ and g- is fixed (the fixed set is the pair).  Finite-order g: verifies
// every depth-d cylinder contains a moved end (empty interior at resolution
// d).
inline TopFreeReport topological_freeness_check(const Model& m, const GroupElement& g,
                                                long long depth) {
    if (!m.is_tree()) throw capability_error("topological freeness requires a tree model");
    if (g.is_identity()) throw domain_violation("the element must be nontrivial");
    TopFreeReport report;
    std::vector<EndPoint> ends = candidate_ends(m, depth + 1);
    bool lox = is_loxodromic(m, g);
    report.cls = lox ? IsometryClass::Loxodromic : IsometryClass::Elliptic;
    std::vector<Cylinder> cyls = all_cylinders(m, m.basepoint(), depth);
    report.cylinders_checked = cyls.size();
    if (lox) {
        auto fixed = fixed_ends(m, g);
        if (act_on_end(m, g, fixed.first) != fixed.first ||
            act_on_end(m, g, fixed.second) != fixed.second)
            throw error("fixed-end computation failed re-verification");
        Cylinder cp = cylinder_of_end(m, fixed.first, depth);
        Cylinder cm = cylinder_of_end(m, fixed.second, depth);
        for (const Cylinder& c : cyls) {
            if (c == cp || c == cm) continue;
            for (const EndPoint& e : ends) {
                if (!end_in_cylinder(m, e, c)) continue;
                ++report.witness_ends;
                if (act_on_end(m, g, e) == e) {
                    report.pass = false;
                    report.offending.push_back(c);
                    break;
                }
            }
        }
    } else {
        for (const Cylinder& c : cyls) {
            bool moved = false;
            for (const EndPoint& e : ends) {
                if (!end_in_cylinder(m, e, c)) continue;
                ++report.witness_ends;
                if (act_on_end(m, g, e) != e) { moved = true; break; }
            }
            if (!moved) {
                report.pass = false;
                report.offending.push_back(c);
            }
        }
    }
    return report;
}

}  // namespace pingpong
