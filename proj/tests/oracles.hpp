// Test-only oracles, independent of the library's closed-form paths.
//
// The BFS oracle rebuilds tree adjacency from first principles (coset
// intersection by raw enumeration for Bass-Serre trees, single-letter
// extension for Cayley trees) and measures distances by search, never by
// formula.  Displacement oracles recompute translation lengths two more
// ways.  Anything these confirm gets frozen into the unit tests.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "pingpong/isometry.hpp"
#include "pingpong/model.hpp"
#include "pingpong/space.hpp"

namespace oracle {

using namespace pingpong;

struct SiteLess {
    bool operator()(const Site& a, const Site& b) const { return site_less(a, b); }
};

// All raw elements of the coset represented by a site (free products only;
// used for the independent adjacency test below).
inline std::vector<Word> coset_elements(const Model& m, const Site& s) {
    std::vector<Word> out;
    if (s.tag == Site::Tag::Central) return {s.word};
    for (long long e = 0; e < m.orders()[s.factor]; ++e) {
        Word w = s.word;
        if (e != 0) push_reduced(w, Syllable{s.factor, e}, m.orders());
        out.push_back(w);
    }
    return out;
}

// Adjacency from the definition: two cosets are adjacent when they share an
// element (two-factor case) or when a central vertex lies in a coset.
inline bool adjacent_by_definition(const Model& m, const Site& a, const Site& b) {
    if (m.kind() == ModelKind::FreeGroup) {
        long long d = word_step_length(
            mul_words(inverse_word(a.word, m.orders()), b.word, m.orders()), m.orders());
        return d == 1;
    }
    if (a == b) return false;
    auto ea = coset_elements(m, a);
    auto eb = coset_elements(m, b);
    bool a_coset = a.tag == Site::Tag::Coset, b_coset = b.tag == Site::Tag::Coset;
    if (m.num_generators() == 2) {
        if (!a_coset || !b_coset || a.factor == b.factor) return false;
    } else {
        if (a_coset == b_coset) return false;  // star tree: coset <-> central only
    }
    for (const Word& x : ea)
        for (const Word& y : eb)
            if (x == y) return true;
    return false;
}

// BFS distance using only adjacent_by_definition over the library's site
// enumeration; -1 when not connected within the ball.
inline long long bfs_distance(const Model& m, const Site& from, const Site& to,
                              long long radius) {
    std::vector<Site> verts = m.ball(m.basepoint(), radius);
    bool seen_from = false, seen_to = false;
    for (const Site& v : verts) {
        seen_from = seen_from || v == from;
        seen_to = seen_to || v == to;
    }
    if (!seen_from || !seen_to) return -1;
    std::map<Site, long long, SiteLess> dist;
    std::deque<Site> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        Site cur = queue.front();
        queue.pop_front();
        if (cur == to) return dist[cur];
        for (const Site& next : verts) {
            if (dist.count(next)) continue;
            if (adjacent_by_definition(m, cur, next)) {
                dist[next] = dist[cur] + 1;
                queue.push_back(next);
            }
        }
    }
    return -1;
}

// Exhaustive min displacement over a ball.
inline long long min_displacement_in_ball(const Model& m, const GroupElement& g,
                                          long long radius) {
    long long best = -1;
    for (const Site& x : m.ball(m.basepoint(), radius)) {
        long long d = tree_distance(m, x, m.act(g, x));
        if (best < 0 || d < best) best = d;
    }
    return best;
}

// The displacement formula d(x, g^2 x) - d(x, g x).
inline long long displacement_formula(const Model& m, const GroupElement& g) {
    Site x = m.basepoint();
    return tree_distance(m, x, m.act(m.power(g, 2), x)) - tree_distance(m, x, m.act(g, x));
}

// First n steps of an end's infinite word, as a plain vector.
inline std::vector<Syllable> stream_of(const Model& m, const EndPoint& e, std::size_t n) {
    return end_steps(m, e, n);
}

// Distance from a site to the geodesic between two others, by scanning the
// geodesic's vertices.
inline long long distance_to_geodesic(const Model& m, const Site& z, const Site& x,
                                      const Site& y) {
    long long best = -1;
    for (const Site& v : geodesic(m, x, y).sites) {
        long long d = tree_distance(m, z, v);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

}  // namespace oracle
