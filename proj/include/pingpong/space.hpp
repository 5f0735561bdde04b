// Metric-space operations over all models: distances, geodesics, Gromov
// products, four-point hyperbolicity estimation, shadows, and the exact
// point-on-segment arithmetic used by the certification paths.
//
// Tree models are exact (integer vertex distances, closed-form from normal
// forms; no searches).  The half-plane model produces flagged approximate
// values only.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "pingpong/endpoint.hpp"
#include "pingpong/errors.hpp"
#include "pingpong/model.hpp"
#include "pingpong/rational.hpp"
#include "pingpong/word.hpp"

namespace pingpong {

using GromovValue = Dist;

namespace detail {

// Distance in the bipartite two-factor Bass-Serre tree between the base
// coset of `xfac` and the coset (w, yfac), w canonical.
inline long long bipartite_dist(const Word& w, int xfac, int yfac) {
    if (w.empty() && xfac == yfac) return 0;
    long long m = static_cast<long long>(w.size());
    long long lead = (!w.empty() && w.front().gen == xfac) ? 1 : 0;
    return 1 + m - lead;
}

}  // namespace detail

inline Dist distance(const Model& m, const Site& x, const Site& y) {
    if (x.model_id != m.id() || y.model_id != m.id())
        throw model_mismatch_error("sites from a different model");
    switch (m.kind()) {
        case ModelKind::FreeGroup: {
            Word u = mul_words(inverse_word(x.word, m.orders()), y.word, m.orders());
            return Dist::exact(word_step_length(u, m.orders()));
        }
        case ModelKind::FreeProduct: {
            Word u = mul_words(inverse_word(x.word, m.orders()), y.word, m.orders());
            const bool star = m.num_generators() > 2;
            if (!star) {
                if (!u.empty() && u.back().gen == y.factor) u.pop_back();
                return Dist::exact(detail::bipartite_dist(u, x.factor, y.factor));
            }
            const bool xc = x.tag == Site::Tag::Central;
            const bool yc = y.tag == Site::Tag::Central;
            if (xc && yc) return Dist::exact(2 * static_cast<long long>(u.size()));
            if (xc) {  // central -> coset
                if (!u.empty() && u.back().gen == y.factor) u.pop_back();
                return Dist::exact(1 + 2 * static_cast<long long>(u.size()));
            }
            if (yc) {  // coset -> central
                long long lead = (!u.empty() && u.front().gen == x.factor) ? 1 : 0;
                return Dist::exact(1 + 2 * (static_cast<long long>(u.size()) - lead));
            }
            if (!u.empty() && u.back().gen == y.factor) u.pop_back();
            if (u.empty() && x.factor == y.factor) return Dist::exact(0);
            long long lead = (!u.empty() && u.front().gen == x.factor) ? 1 : 0;
            return Dist::exact(2 + 2 * (static_cast<long long>(u.size()) - lead));
        }
        case ModelKind::HalfPlane: {
            double dx = x.z.real() - y.z.real();
            double dy = x.z.imag() - y.z.imag();
            double c = 1.0 + (dx * dx + dy * dy) / (2.0 * x.z.imag() * y.z.imag());
            return Dist::approximate(std::acosh(std::max(1.0, c)));
        }
    }
    throw error("unreachable");
}

inline long long tree_distance(const Model& m, const Site& x, const Site& y) {
    Dist d = distance(m, x, y);
    if (!d.is_exact() || !d.rational().is_integer())
        throw capability_error("integer distance requires a tree model");
    return d.rational().num();
}

// (x . y)_z = (d(x,z} + d(y,z) - d(x,y)) / 2
inline GromovValue gromov_product(const Model& m, const Site& x, const Site& y, const Site& z) {
    Dist xz = distance(m, x, z), yz = distance(m, y, z), xy = distance(m, x, y);
    if (xz.is_approximate() || yz.is_approximate() || xy.is_approximate())
        return Dist::approximate((xz.to_double() + yz.to_double() - xy.to_double()) / 2.0);
    Rational v = (xz.rational() + yz.rational() - xy.rational()) * Rational(1, 2);
    return Dist::exact(v);
}

struct Geodesic {
    std::vector<Site> sites;
    bool approximate = false;
};

inline Geodesic geodesic(const Model& m, const Site& x, const Site& y) {
    if (x.model_id != m.id() || y.model_id != m.id())
        throw model_mismatch_error("sites from a different model");
    Geodesic out;
    switch (m.kind()) {
        case ModelKind::FreeGroup: {
            auto xs = word_steps(x.word, m.orders());
            auto ys = word_steps(y.word, m.orders());
            std::size_t common = 0;
            while (common < xs.size() && common < ys.size() && xs[common] == ys[common]) ++common;
            auto site_of = [&](std::vector<Syllable> steps) {
                Site s; s.model_id = m.id(); s.tag = Site::Tag::Vertex;
                s.word = word_from_steps(steps, m.orders());
                return s;
            };
            for (std::size_t k = xs.size(); k + 1 > common + 1; --k)
                out.sites.push_back(site_of({xs.begin(), xs.begin() + k}));
            out.sites.push_back(site_of({xs.begin(), xs.begin() + common}));
            for (std::size_t k = common + 1; k <= ys.size(); ++k)
                out.sites.push_back(site_of({ys.begin(), ys.begin() + k}));
            return out;
        }
        case ModelKind::FreeProduct: {
            // Translate x to the base, build the structural path, translate back.
            GroupElement xrep{m.id(), x.word};
            GroupElement xinv = m.inverse(xrep);
            Site y0 = m.act(xinv, y);
            const Word& u = y0.word;
            const bool star = m.num_generators() > 2;
            std::vector<Site> path;
            auto coset = [&](const Word& w, int f) { return m.coset_site(GroupElement{m.id(), w}, f); };
            if (!star) {
                int i = x.factor, j = y0.factor;
                path.push_back(coset({}, i));
                if (!(u.empty() && i == j)) {
                    std::size_t mlen = u.size();
                    if (!u.empty() && u.front().gen != i) path.push_back(coset({}, u.front().gen));
                    if (u.empty()) {
                        path.push_back(coset({}, j));
                    } else {
                        for (std::size_t r = 1; r <= mlen; ++r) {
                            Word pref(u.begin(), u.begin() + r);
                            int g = r < mlen ? u[r].gen : j;
                            path.push_back(coset(pref, g));
                        }
                    }
                }
            } else {
                auto central = [&](const Word& w) { return m.central_site(GroupElement{m.id(), w}); };
                const bool xc = x.tag == Site::Tag::Central;
                const bool yc = y0.tag == Site::Tag::Central;
                // element checkpoints: prefixes of u
                std::vector<Word> prefixes;
                for (std::size_t r = 0; r <= u.size(); ++r) prefixes.emplace_back(u.begin(), u.begin() + r);
                std::size_t first = 0;
                if (!xc) {
                    path.push_back(coset({}, x.factor));
                    // skip the central identity checkpoint when the first
                    // syllable already lies in x's factor
                    if (!u.empty() && u.front().gen == x.factor) first = 1;
                }
                for (std::size_t r = first; r < prefixes.size(); ++r) {
                    path.push_back(central(prefixes[r]));
                    if (r + 1 < prefixes.size()) path.push_back(coset(prefixes[r], u[r].gen));
                }
                if (!yc) {
                    Site last = coset(u, y0.factor);
                    if (path.empty() || path.back() != last) path.push_back(last);
                }
                // degenerate: same vertex
                if (path.size() >= 2 && path.front() == path.back() &&
                    tree_distance(m, x, y) == 0)
                    path = {path.front()};
            }
            for (Site& s : path) out.sites.push_back(m.act(xrep, s));
            // drop an accidental duplicate at the joints
            for (std::size_t i = 1; i < out.sites.size();) {
                if (out.sites[i] == out.sites[i - 1]) out.sites.erase(out.sites.begin() + i);
                else ++i;
            }
            return out;
        }
        case ModelKind::HalfPlane: {
            out.approximate = true;
            const int kSamples = 16;
            std::complex<double> a = x.z, b = y.z;
            for (int i = 0; i <= kSamples; ++i) {
                double t = static_cast<double>(i) / kSamples;
                Site s; s.model_id = m.id(); s.tag = Site::Tag::Plane;
                if (std::abs(a.real() - b.real()) < 1e-12) {
                    s.z = {a.real(), a.imag() * std::pow(b.imag() / a.imag(), t)};
                } else {
                    double c = (std::norm(a) - std::norm(b)) / (2.0 * (a.real() - b.real()));
                    double r = std::abs(a - std::complex<double>(c, 0.0));
                    double ta = std::atan2(a.imag(), a.real() - c);
                    double tb = std::atan2(b.imag(), b.real() - c);
                    double th = ta + t * (tb - ta);
                    s.z = {c + r * std::cos(th), r * std::sin(th)};
                }
                out.sites.push_back(s);
            }
            return out;
        }
    }
    throw error("unreachable");
}

// Four-point condition defect over quadruples in the ball of the given
// radius around the basepoint.  Exhaustive when the quadruple count fits in
// sample_count, else a seeded deterministic sample.  Lower bound for the
// true delta; exact 0 on trees when exhaustive.
inline Dist delta_estimate(const Model& m, long long sample_radius, long long sample_count) {
    if (sample_radius < 1) throw domain_violation("sample_radius must be >= 1");
    if (m.is_tree()) {
        std::vector<Site> pts = m.ball(m.basepoint(), sample_radius);
        std::size_t n = pts.size();
        std::vector<long long> d(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                d[i * n + j] = d[j * n + i] = tree_distance(m, pts[i], pts[j]);
        long long worst2 = 0;  // track 2*defect to stay integral
        auto consider = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
            long long s1 = d[a * n + b] + d[c * n + e];
            long long s2 = d[a * n + c] + d[b * n + e];
            long long s3 = d[a * n + e] + d[b * n + c];
            long long hi = std::max({s1, s2, s3});
            long long mid = std::max(std::min(s1, s2), std::min(std::max(s1, s2), s3));
            worst2 = std::max(worst2, hi - mid);
        };
        unsigned long long quadruples =
            n < 4 ? 0ULL
                  : (unsigned long long)n * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4;
        if (sample_count < 0 || quadruples <= static_cast<unsigned long long>(sample_count)) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    for (std::size_t c = b + 1; c < n; ++c)
                        for (std::size_t e = c + 1; e < n; ++e) consider(a, b, c, e);
        } else {
            std::mt19937_64 rng(0x5eedULL);
            for (long long k = 0; k < sample_count; ++k)
                consider(rng() % n, rng() % n, rng() % n, rng() % n);
        }
        return Dist::exact(Rational(worst2, 2));
    }
    // half-plane: sample points in a hyperbolic disk around i
    std::mt19937_64 rng(0x5eedULL);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) / 9007199254740992.0; };
    std::vector<Site> pts;
    for (long long i = 0; i < std::max<long long>(8, sample_count / 8); ++i) {
        double r = static_cast<double>(sample_radius) * std::sqrt(unit());
        double th = 2.0 * 3.14159265358979323846 * unit();
        // point at hyperbolic distance r from i in direction th
        double er = std::exp(r);
        std::complex<double> p(std::cos(th) * (er - 1.0 / er) / 2.0,
                               1.0 + std::sin(th) * (er - 1.0 / er) / 2.0);
        if (p.imag() <= 0.05) continue;
        Site s; s.model_id = m.id(); s.tag = Site::Tag::Plane; s.z = p;
        pts.push_back(s);
    }
    double worst = 0;
    for (long long k = 0; k < sample_count && pts.size() >= 4; ++k) {
        std::size_t a = rng() % pts.size(), b = rng() % pts.size(), c = rng() % pts.size(),
                    e = rng() % pts.size();
        double s1 = distance(m, pts[a], pts[b]).to_double() + distance(m, pts[c], pts[e]).to_double();
        double s2 = distance(m, pts[a], pts[c]).to_double() + distance(m, pts[b], pts[e]).to_double();
        double s3 = distance(m, pts[a], pts[e]).to_double() + distance(m, pts[b], pts[c]).to_double();
        double hi = std::max({s1, s2, s3});
        double mid = std::max(std::min(s1, s2), std::min(std::max(s1, s2), s3));
        worst = std::max(worst, (hi - mid) / 2.0);
    }
    return Dist::approximate(worst);
}

// ---- rays, cylinders, shadows ---------------------------------------------

// The vertex at the given depth on the geodesic ray [base, xi).
inline Site end_ray_site(const Model& m, const EndPoint& e, long long depth, const Site& base) {
    if (!m.is_tree()) throw capability_error("rays require a tree model");
    long long slack = tree_distance(m, base, m.basepoint()) + depth + 8;
    auto steps = end_steps(m, e, static_cast<std::size_t>(slack));
    GroupElement far = m.element(Word(steps.begin(), steps.end()));
    Site target = m.act(far, m.basepoint());
    Geodesic g = geodesic(m, base, target);
    if (depth >= static_cast<long long>(g.sites.size()))
        throw domain_violation("ray shorter than requested depth");
    return g.sites[static_cast<std::size_t>(depth)];
}

inline Site end_ray_site(const Model& m, const EndPoint& e, long long depth) {
    return end_ray_site(m, e, depth, m.basepoint());
}

inline Cylinder cylinder_of_end(const Model& m, const EndPoint& e, long long depth,
                                const Site& base) {
    return Cylinder{base, depth, end_ray_site(m, e, depth, base)};
}

inline Cylinder cylinder_of_end(const Model& m, const EndPoint& e, long long depth) {
    return cylinder_of_end(m, e, depth, m.basepoint());
}

inline bool end_in_cylinder(const Model& m, const EndPoint& e, const Cylinder& c) {
    return end_ray_site(m, e, c.depth, c.base) == c.vertex;
}

// All depth-d cylinders around `base` (one per vertex at distance exactly d).
inline std::vector<Cylinder> all_cylinders(const Model& m, const Site& base, long long depth) {
    std::vector<Cylinder> out;
    for (const Site& v : m.ball(base, depth))
        if (tree_distance(m, base, v) == depth) out.push_back(Cylinder{base, depth, v});
    return out;
}

// Shadow of a finite set of sites: the depth-d cylinders of ends xi whose
// ray [x0, xi) passes within 5*delta of the set; on trees (delta = 0) these
// are exactly the cylinders whose subtree meets the set.
inline std::vector<Cylinder> shadow(const Model& m, const std::vector<Site>& set, const Site& x0,
                                    long long depth) {
    if (!m.is_tree()) throw capability_error("shadows are only supported on tree models");
    std::set<std::size_t> chosen;
    std::vector<Cylinder> cyls = all_cylinders(m, x0, depth);
    auto index_of = [&](const Site& v) {
        for (std::size_t i = 0; i < cyls.size(); ++i)
            if (cyls[i].vertex == v) return i;
        return cyls.size();
    };
    for (const Site& s : set) {
        long long d0 = tree_distance(m, x0, s);
        if (d0 >= depth) {
            Geodesic g = geodesic(m, x0, s);
            chosen.insert(index_of(g.sites[static_cast<std::size_t>(depth)]));
        } else {
            for (std::size_t i = 0; i < cyls.size(); ++i) {
                // s on [x0, v] <=> distances add up
                if (d0 + tree_distance(m, s, cyls[i].vertex) == depth) chosen.insert(i);
            }
        }
    }
    std::vector<Cylinder> out;
    for (std::size_t i : chosen)
        if (i < cyls.size()) out.push_back(cyls[i]);
    return out;
}

// ---- exact points on segments ----------------------------------------------
//
// For the path checks we need midpoints of geodesics, which on a tree can sit
// on an edge.  A SegPoint is the point of [a, b] at (rational) distance t
// from a; distances between such points reduce to vertex distances.

struct SegPoint {
    Site a;
    Site b;
    Rational t;  // 0 <= t <= d(a, b)
};

inline SegPoint seg_midpoint(const Model& m, const Site& a, const Site& b) {
    Rational len(tree_distance(m, a, b));
    return SegPoint{a, b, len * Rational(1, 2)};
}

inline Rational seg_point_to_site(const Model& m, const SegPoint& p, const Site& z) {
    Rational L(tree_distance(m, p.a, p.b));
    Rational da(tree_distance(m, z, p.a));
    Rational db(tree_distance(m, z, p.b));
    Rational s = (da + L - db) * Rational(1, 2);       // projection parameter of z on [a,b]
    Rational h = (da + db - L) * Rational(1, 2);       // distance from z to the segment
    Rational off = s - p.t;
    if (off < Rational(0)) off = -off;
    return h + off;
}

inline Rational seg_point_distance(const Model& m, const SegPoint& p, const SegPoint& q) {
    Rational L(tree_distance(m, q.a, q.b));
    Rational da = seg_point_to_site(m, p, q.a);
    Rational db = seg_point_to_site(m, p, q.b);
    Rational s = (da + L - db) * Rational(1, 2);
    Rational h = (da + db - L) * Rational(1, 2);
    Rational off = s - q.t;
    if (off < Rational(0)) off = -off;
    return h + off;
}

}  // namespace pingpong
