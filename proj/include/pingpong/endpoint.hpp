// Ends of the tree models, encoded as eventually periodic rays.
//
// An EndPoint stores (prefix, period): the boundary point reached by the
// reduced infinite word prefix.period.period...  Validity requires that no
// cancellation or syllable merge happens at the splice points, so the
// infinite word really is the geodesic ray from the basepoint.  Canonical
// form: primitive period, then the shortest prefix (shrinking the prefix
// rotates the period, which pins the rotation).  Two EndPoints denote the
// same end exactly when their canonical forms coincide.
//
// All the step-level logic lives here; anything metric (which tree vertex a
// ray passes through) is in space.hpp.

#pragma once

#include <string>
#include <vector>

#include "pingpong/errors.hpp"
#include "pingpong/model.hpp"
#include "pingpong/word.hpp"

namespace pingpong {

struct EndPoint {
    ModelId model_id = 0;
    Word prefix;  // canonical
    Word period;  // canonical, nonempty

    friend bool operator==(const EndPoint& a, const EndPoint& b) {
        return a.model_id == b.model_id && a.prefix == b.prefix && a.period == b.period;
    }
    friend bool operator!=(const EndPoint& a, const EndPoint& b) { return !(a == b); }
};

inline bool endpoint_less(const EndPoint& a, const EndPoint& b) {
    if (a.prefix.size() != b.prefix.size()) return a.prefix.size() < b.prefix.size();
    if (word_lex_less(a.prefix, b.prefix)) return true;
    if (word_lex_less(b.prefix, a.prefix)) return false;
    if (a.period.size() != b.period.size()) return a.period.size() < b.period.size();
    return word_lex_less(a.period, b.period);
}

namespace detail {

inline bool steps_cancel(const Model& m, const Syllable& a, const Syllable& b) {
    if (a.gen != b.gen) return false;
    if (m.kind() == ModelKind::FreeProduct) return mod_exp(a.exp + b.exp, m.orders()[a.gen]) == 0;
    return a.exp + b.exp == 0;
}

// Whether step b may follow step a in a reduced infinite word.
inline bool splice_ok(const Model& m, const Syllable& a, const Syllable& b) {
    if (m.kind() == ModelKind::FreeProduct) return a.gen != b.gen;
    return !steps_cancel(m, a, b);
}

}  // namespace detail

// Canonicalize an (already valid) encoding.  Works at step level.
inline EndPoint canonical_end(const Model& m, Word prefix, Word period) {
    auto psteps = word_steps(prefix, m.orders());
    auto qsteps = word_steps(period, m.orders());
    // primitive period: smallest proper divisor length that tiles it
    for (std::size_t len = 1; len < qsteps.size(); ++len) {
        if (qsteps.size() % len != 0) continue;
        bool tiles = true;
        for (std::size_t i = len; i < qsteps.size() && tiles; ++i)
            tiles = qsteps[i] == qsteps[i % len];
        if (tiles) { qsteps.resize(len); break; }
    }
    // shortest prefix: cancel common tail against the rotating period
    while (!psteps.empty() && psteps.back() == qsteps.back()) {
        psteps.pop_back();
        qsteps.insert(qsteps.begin(), qsteps.back());
        qsteps.pop_back();
    }
    EndPoint e;
    e.model_id = m.id();
    e.prefix = word_from_steps(psteps, m.orders());
    e.period = word_from_steps(qsteps, m.orders());
    return e;
}

// Validates splices and returns the canonical form.
inline EndPoint make_end(const Model& m, const Word& prefix_raw, const Word& period_raw) {
    if (!m.is_tree()) throw capability_error("ends exist only for tree models");
    Word prefix = reduce_word(prefix_raw, m.orders());
    Word period = reduce_word(period_raw, m.orders());
    if (period.empty()) throw domain_violation("end period must be nonempty");
    auto ps = word_steps(prefix, m.orders());
    auto qs = word_steps(period, m.orders());
    if (!detail::splice_ok(m, qs.back(), qs.front()))
        throw domain_violation("end period cancels against itself at the splice");
    if (!ps.empty() && !detail::splice_ok(m, ps.back(), qs.front()))
        throw domain_violation("end prefix cancels against the period at the splice");
    return canonical_end(m, prefix, period);
}

// First n steps of the infinite word.
inline std::vector<Syllable> end_steps(const Model& m, const EndPoint& e, std::size_t n) {
    auto ps = word_steps(e.prefix, m.orders());
    auto qs = word_steps(e.period, m.orders());
    std::vector<Syllable> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(i < ps.size() ? ps[i] : qs[(i - ps.size()) % qs.size()]);
    return out;
}

// The boundary action: g . (p q^infinity) resolved exactly by consuming
// however much of the periodic stream the multiplication cancels into.
inline EndPoint act_on_end(const Model& m, const GroupElement& g, const EndPoint& e) {
    if (g.model_id != m.id() || e.model_id != m.id())
        throw model_mismatch_error("element/end from a different model");
    Word head = mul_words(g.word, e.prefix, m.orders());
    auto hsteps = word_steps(head, m.orders());
    auto qsteps = word_steps(e.period, m.orders());
    std::size_t consumed = 0;
    auto next = [&]() -> const Syllable& { return qsteps[consumed % qsteps.size()]; };
    if (m.kind() == ModelKind::FreeProduct) {
        while (!hsteps.empty() && hsteps.back().gen == next().gen) {
            long long order = m.orders()[next().gen];
            long long merged = mod_exp(hsteps.back().exp + next().exp, order);
            int gen = next().gen;
            hsteps.pop_back();
            ++consumed;
            if (merged != 0) { hsteps.push_back(Syllable{gen, merged}); break; }
        }
    } else {
        while (!hsteps.empty() && detail::steps_cancel(m, hsteps.back(), next())) {
            hsteps.pop_back();
            ++consumed;
        }
    }
    // rotate the period to where the stream now starts
    std::size_t rot = consumed % qsteps.size();
    std::vector<Syllable> rotated(qsteps.begin() + rot, qsteps.end());
    rotated.insert(rotated.end(), qsteps.begin(), qsteps.begin() + rot);
    return canonical_end(m, word_from_steps(hsteps, m.orders()), word_from_steps(rotated, m.orders()));
}

inline std::string print_end(const Model& m, const EndPoint& e) {
    std::string out;
    out += e.prefix.empty() ? "" : m.print(GroupElement{m.id(), e.prefix});
    out += "(" + m.print(GroupElement{m.id(), e.period}) + ")^inf";
    return out;
}

// A depth-d cylinder: the set of ends whose ray from `base` passes through
// `vertex` (which sits at distance `depth` from base).
struct Cylinder {
    Site base;
    long long depth = 0;
    Site vertex;

    friend bool operator==(const Cylinder& a, const Cylinder& b) {
        return a.base == b.base && a.depth == b.depth && a.vertex == b.vertex;
    }
    friend bool operator!=(const Cylinder& a, const Cylinder& b) { return !(a == b); }
};

inline bool cylinder_less(const Cylinder& a, const Cylinder& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    if (site_less(a.base, b.base) || site_less(b.base, a.base)) return site_less(a.base, b.base);
    return site_less(a.vertex, b.vertex);
}

}  // namespace pingpong
