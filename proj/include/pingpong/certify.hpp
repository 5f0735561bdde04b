// Independent brute-force verification.
//
// The freeness certificate enumerates every alternating normal form of
// H * <t> (t standing for the candidate partner power) within the stated
// syllable and exponent bounds and evaluates each one in G, by normal form
// and, where the model supports it, by exact matrices.  A Pass means the
// enumeration was exhaustive; anything larger than the cap is refused
// rather than truncated.  Enumeration and evaluation are partitioned across
// workers; the aggregate equals the sequential result (Fail wins, minimal
// witness in the documented order: syllable count, then total exponent
// magnitude, then lexicographic).

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pingpong/errors.hpp"
#include "pingpong/isometry.hpp"
#include "pingpong/model.hpp"
#include "pingpong/parallel.hpp"
#include "pingpong/space.hpp"

namespace pingpong {

// ---- alternating words of H * <t> -------------------------------------------

struct AltPart {
    bool is_power = false;  // true: t^l, false: an element of H \ {1}
    GroupElement h;         // valid when !is_power
    std::size_t h_index = 0;
    long long l = 0;        // valid when is_power
};

using AlternatingWord = std::vector<AltPart>;

inline std::string print_alternating(const Model& m, const GroupElement& gammaN,
                                     const AlternatingWord& w) {
    std::string out;
    for (const AltPart& p : w) {
        if (!out.empty()) out += ".";
        if (p.is_power)
            out += "(" + m.print(gammaN) + ")^" + std::to_string(p.l);
        else
            out += m.print(p.h);
    }
    return out.empty() ? "1" : out;
}

inline GroupElement eval_alternating(const Model& m, const GroupElement& gammaN,
                                     const AlternatingWord& w) {
    GroupElement acc = m.identity();
    for (const AltPart& p : w)
        acc = m.mul(acc, p.is_power ? m.power(gammaN, p.l) : p.h);
    return acc;
}

namespace detail {

inline long long alt_total_exponent(const AlternatingWord& w) {
    long long t = 0;
    for (const AltPart& p : w)
        if (p.is_power) t += p.l < 0 ? -p.l : p.l;
    return t;
}

inline bool alt_lex_less(const AlternatingWord& a, const AlternatingWord& b) {
    auto key = [](const AltPart& p) {
        long long mag = p.l < 0 ? -p.l : p.l;
        return std::tuple<int, long long, long long, long long>(
            p.is_power ? 1 : 0, p.is_power ? mag : (long long)p.h_index,
            p.is_power ? (p.l < 0 ? 1 : 0) : 0, 0);
    };
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](const AltPart& x, const AltPart& y) {
                                            return key(x) < key(y);
                                        });
}

// The documented witness order.
inline bool alt_order_less(const AlternatingWord& a, const AlternatingWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    long long ea = alt_total_exponent(a), eb = alt_total_exponent(b);
    if (ea != eb) return ea < eb;
    return alt_lex_less(a, b);
}

}  // namespace detail

// Every alternating word with the given bounds, sorted in witness order.
// `nontrivial` are the nonidentity elements of H.
inline std::vector<AlternatingWord> enumerate_alternating(
    const std::vector<GroupElement>& nontrivial, long long syllable_bound,
    long long exponent_bound) {
    std::vector<AlternatingWord> out;
    std::vector<AltPart> powers;
    for (long long mag = 1; mag <= exponent_bound; ++mag)
        for (long long sgn : {1LL, -1LL}) {
            AltPart p; p.is_power = true; p.l = sgn * mag;
            powers.push_back(p);
        }
    std::vector<AltPart> helts;
    for (std::size_t i = 0; i < nontrivial.size(); ++i) {
        AltPart p; p.is_power = false; p.h = nontrivial[i]; p.h_index = i;
        helts.push_back(p);
    }
    AlternatingWord cur;
    auto rec = [&](auto&& self, bool next_is_power) -> void {
        if (!cur.empty()) out.push_back(cur);
        if (static_cast<long long>(cur.size()) >= syllable_bound) return;
        const auto& pool = next_is_power ? powers : helts;
        for (const AltPart& p : pool) {
            cur.push_back(p);
            self(self, !next_is_power);
            cur.pop_back();
        }
    };
    rec(rec, true);
    rec(rec, false);
    std::sort(out.begin(), out.end(), detail::alt_order_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const AlternatingWord& a, const AlternatingWord& b) {
                              return !detail::alt_order_less(a, b) && !detail::alt_order_less(b, a);
                          }),
              out.end());
    return out;
}

inline unsigned long long count_alternating(std::size_t nontrivial, long long syllable_bound,
                                            long long exponent_bound) {
    // alternating sequences of length c starting with either kind
    long double total = 0;
    long double nh = static_cast<long double>(nontrivial);
    long double nt = 2.0L * static_cast<long double>(exponent_bound);
    for (long long c = 1; c <= syllable_bound; ++c)
        for (int start = 0; start < 2; ++start) {
            long double prod = 1;
            for (long long i = 0; i < c; ++i) {
                bool is_power = (start == 0) == (i % 2 == 0);
                prod *= is_power ? nt : nh;
            }
            total += prod;
            if (total > 1e18L) return 1ULL << 62;
        }
    return static_cast<unsigned long long>(total);
}

// ---- freeness certificates ---------------------------------------------------

enum class CertStatus { Pass, Fail };

struct FreenessCertificate {
    GroupElement gammaN;
    std::vector<GroupElement> subgroup;  // generators as supplied
    long long syllable_bound = 0;
    long long exponent_bound = 0;
    unsigned long long words_checked = 0;
    CertStatus status = CertStatus::Pass;
    std::optional<AlternatingWord> witness;
    std::string witness_text;
    std::vector<std::string> oracles;  // evaluation channels used
};

inline FreenessCertificate freeness_certificate(const Model& m, const GroupElement& gammaN,
                                                const std::vector<GroupElement>& subgroup_gens,
                                                long long syllable_bound, long long exponent_bound,
                                                unsigned long long enumeration_cap = 10000000ULL,
                                                std::size_t closure_cap = 64) {
    if (!m.certificate_capable())
        throw capability_error("freeness certificates require an exact tree model");
    if (syllable_bound < 1 || exponent_bound < 1)
        throw domain_violation("certificate bounds must be positive");
    FreenessCertificate cert;
    cert.gammaN = gammaN;
    cert.subgroup = subgroup_gens;
    cert.syllable_bound = syllable_bound;
    cert.exponent_bound = exponent_bound;
    cert.oracles = {"normal_form"};
    if (m.has_matrix_eval()) cert.oracles.push_back("exact_matrix");

    std::vector<GroupElement> closure = subgroup_closure(m, subgroup_gens, closure_cap);
    std::vector<GroupElement> nontrivial;
    for (const GroupElement& h : closure)
        if (!h.is_identity()) nontrivial.push_back(h);

    unsigned long long estimate =
        count_alternating(nontrivial.size(), syllable_bound, exponent_bound);
    if (estimate > enumeration_cap)
        throw enumeration_cap_error("certificate enumeration exceeds the configured cap", estimate);

    std::vector<AlternatingWord> words =
        enumerate_alternating(nontrivial, syllable_bound, exponent_bound);

    const bool with_matrix = m.has_matrix_eval();
    Mat2 mt = with_matrix ? m.matrix_eval(gammaN) : Mat2::identity();

    struct Chunk {
        std::size_t first_fail = SIZE_MAX;
        bool mismatch = false;
        std::string mismatch_what;
    };
    auto eval_chunk = [&](std::size_t b, std::size_t e) {
        Chunk c;
        for (std::size_t i = b; i < e; ++i) {
            GroupElement v = eval_alternating(m, gammaN, words[i]);
            bool nf_trivial = v.is_identity();
            if (with_matrix) {
                Mat2 acc = Mat2::identity();
                for (const AltPart& p : words[i])
                    acc = acc * (p.is_power ? mat2_power(mt, p.l) : m.matrix_eval_word(p.h.word));
                bool mat_trivial = acc.is_projective_identity();
                if (mat_trivial != nf_trivial) {
                    c.mismatch = true;
                    c.mismatch_what = "normal form and matrix oracle disagree on word " +
                                      print_alternating(m, gammaN, words[i]);
                    return c;
                }
            }
            if (nf_trivial) { c.first_fail = i; return c; }
        }
        return c;
    };
    Chunk agg = parallel_index_reduce<Chunk>(
        words.size(), Chunk{}, eval_chunk, [](Chunk a, Chunk b) {
            if (a.mismatch) return a;
            if (b.mismatch) return b;
            a.first_fail = std::min(a.first_fail, b.first_fail);
            return a;
        });
    if (agg.mismatch) throw oracle_mismatch_error(agg.mismatch_what);
    cert.words_checked = words.size();
    if (agg.first_fail != SIZE_MAX) {
        cert.status = CertStatus::Fail;
        cert.witness = words[agg.first_fail];
        cert.witness_text = print_alternating(m, gammaN, *cert.witness);
    }
    return cert;
}

// ---- quasigeodesic path check ------------------------------------------------

struct PathProductCheck {
    std::size_t odd_index = 0;
    Rational gromov_value;
    Rational bound;
    bool holds = false;
};

struct PathCheckReport {
    Rational endpoint_distance;
    Rational total_segment_length;
    bool exact_geodesic = false;  // endpoint distance equals the summed segments
    std::vector<PathProductCheck> products;
    Rational delta_used;
};

// Builds the broken path of the ping-pong argument through the points
// x_i and the midpoints of the odd segments, then reports the Gromov
// products at the odd corners against the bound |p_i|/2 - 2*Delta + 100*delta
// and, at delta = 0, whether the midpoint concatenation is an exact geodesic.
inline PathCheckReport path_quasigeodesic_check(const Model& m, const GroupElement& gammaN,
                                                const std::vector<GroupElement>& subgroup_gens,
                                                const AlternatingWord& word, const Site& base,
                                                std::optional<Dist> Delta_in = std::nullopt) {
    if (!m.is_tree()) throw capability_error("path check requires a tree model");
    (void)subgroup_gens;
    // The argument only depends on the conjugacy class, so cyclically reduce
    // the alternating form first: afterwards it is g_1 t^{l_1} ... g_k t^{l_k}
    // with every g_i nontrivial and every l_j nonzero (or a single part).
    AlternatingWord cyc = word;
    auto merge_ends = [&]() {
        while (cyc.size() >= 2 && cyc.front().is_power == cyc.back().is_power) {
            AltPart first = cyc.front(), last = cyc.back();
            cyc.erase(cyc.begin());
            cyc.pop_back();
            AltPart merged;
            if (first.is_power) {
                merged.is_power = true;
                merged.l = last.l + first.l;
                if (merged.l != 0) cyc.insert(cyc.begin(), merged);
            } else {
                merged.is_power = false;
                merged.h = m.mul(last.h, first.h);
                if (!merged.h.is_identity()) cyc.insert(cyc.begin(), merged);
            }
        }
        // rotate a trailing subgroup part to the front (conjugation)
        if (cyc.size() >= 2 && !cyc.back().is_power && cyc.front().is_power) {
            AltPart last = cyc.back();
            cyc.pop_back();
            cyc.insert(cyc.begin(), last);
        }
    };
    merge_ends();
    std::vector<std::pair<GroupElement, long long>> pairs;
    for (const AltPart& p : cyc) {
        if (!p.is_power) {
            pairs.emplace_back(p.h, 0);
        } else {
            if (pairs.empty() || pairs.back().second != 0)
                pairs.emplace_back(m.identity(), p.l);
            else
                pairs.back().second = p.l;
        }
    }
    if (pairs.empty()) throw domain_violation("path check needs a nonempty word");

    Dist Delta = Delta_in ? *Delta_in
                          : std::max({Dist::exact(1), 1000 * m.delta(),
                                      m.local_global_constants().first},
                                     [](const Dist& a, const Dist& b) { return a < b; });
    Rational delta = m.delta().rational();
    Rational DeltaR = Delta.rational();

    // points x_0 .. x_{2k}
    std::vector<Site> xs{base};
    GroupElement pref = m.identity();
    for (const auto& [g, l] : pairs) {
        pref = m.mul(pref, g);
        xs.push_back(m.act(pref, base));
        pref = m.mul(pref, m.power(gammaN, l));
        xs.push_back(m.act(pref, base));
    }

    PathCheckReport report;
    report.delta_used = DeltaR;

    // Gromov products (x_{i+1} . x_{i-2})_{x_i} for odd i >= 3
    for (std::size_t i = 3; i + 1 < xs.size(); i += 2) {
        PathProductCheck c;
        c.odd_index = i;
        c.gromov_value = gromov_product(m, xs[i + 1], xs[i - 2], xs[i]).rational();
        Rational seg(tree_distance(m, xs[i], xs[i + 1]));
        c.bound = seg * Rational(1, 2) - Rational(2) * DeltaR + Rational(100) * delta;
        c.holds = c.gromov_value <= c.bound;
        report.products.push_back(c);
    }

    // midpoint concatenation: m_{-1} = x_0, midpoints of odd segments, m_{2k+1} = h x_0
    std::vector<SegPoint> mids;
    mids.push_back(SegPoint{xs.front(), xs.front(), Rational(0)});
    for (std::size_t i = 1; i + 1 < xs.size(); i += 2)
        mids.push_back(seg_midpoint(m, xs[i], xs[i + 1]));
    mids.push_back(SegPoint{xs.back(), xs.back(), Rational(0)});

    Rational total(0);
    for (std::size_t i = 0; i + 1 < mids.size(); ++i)
        total = total + seg_point_distance(m, mids[i], mids[i + 1]);
    report.total_segment_length = total;
    report.endpoint_distance = Rational(tree_distance(m, xs.front(), xs.back()));
    report.exact_geodesic = report.endpoint_distance == total;
    return report;
}

// ---- elementary closure E(u) -------------------------------------------------

struct ElementaryClosure {
    GroupElement root;
    bool axis_reversing = false;  // some element conjugates u to u^-1
    EndPoint plus, minus;
};

// E(u) for a loxodromic u: generated by the primitive root of u, together
// with an axis-reversing element when one exists.  Membership is decided by
// the pair {u+, u-}: v is in E(u) exactly when v preserves it.
inline ElementaryClosure elementary_closure(const Model& m, const GroupElement& u) {
    if (!m.is_tree())
        throw capability_error("elementary closure is only computed for tree models");
    if (!is_loxodromic(m, u)) throw domain_violation("elementary closure requires a loxodromic");
    CyclicForm cf = cyclic_reduce(m, u);
    auto steps = word_steps(cf.core.word, m.orders());
    std::size_t n = steps.size();
    std::size_t root_len = n;
    for (std::size_t len = 1; len < n; ++len) {
        if (n % len != 0) continue;
        bool tiles = true;
        for (std::size_t i = len; i < n && tiles; ++i) tiles = steps[i] == steps[i % len];
        if (tiles) { root_len = len; break; }
    }
    GroupElement core_root =
        m.element(word_from_steps({steps.begin(), steps.begin() + root_len}, m.orders()));
    ElementaryClosure ec;
    ec.root = m.mul(m.mul(cf.conjugator, core_root), m.inverse(cf.conjugator));
    auto ends = fixed_ends(m, u);
    ec.plus = ends.first;
    ec.minus = ends.second;
    // u conjugate to u^-1 <=> the cyclic step word of u^-1 is a rotation of u's
    auto inv_steps = word_steps(m.inverse(cf.core).word, m.orders());
    if (inv_steps.size() == n) {
        for (std::size_t r = 0; r < n && !ec.axis_reversing; ++r) {
            bool match = true;
            for (std::size_t i = 0; i < n && match; ++i) match = inv_steps[i] == steps[(i + r) % n];
            ec.axis_reversing = match;
        }
    }
    return ec;
}

inline bool in_elementary_closure(const Model& m, const ElementaryClosure& ec,
                                  const GroupElement& v) {
    EndPoint vp = act_on_end(m, v, ec.plus);
    EndPoint vm = act_on_end(m, v, ec.minus);
    return (vp == ec.plus && vm == ec.minus) || (vp == ec.minus && vm == ec.plus);
}

// ---- property (*) ------------------------------------------------------------

struct StarWitness {
    std::vector<GroupElement> gs;
    std::vector<GroupElement> xs;
};

struct StarReport {
    bool pass = true;
    unsigned long long products_checked = 0;
    std::optional<StarWitness> witness;
    GroupElement a, b, c;
};

// Core check with an explicit triple (a, b, c): every product
// (x_1^-1 g_1 x_1) ... (x_m^-1 g_m x_m) with g_i in M, x_i in {a,b,c} and
// x_i != x_{i+1} must be nontrivial.
inline StarReport star_property_check_triple(const Model& m, const std::vector<GroupElement>& M,
                                             long long arity, const GroupElement& a,
                                             const GroupElement& b, const GroupElement& c,
                                             unsigned long long cap = 10000000ULL) {
    if (!m.certificate_capable()) throw capability_error("(*) check requires an exact model");
    if (arity < 1) throw domain_violation("arity must be >= 1");
    for (const GroupElement& g : M)
        if (g.is_identity()) throw domain_violation("elements of M must be nontrivial");
    if (a == b || b == c || a == c) throw domain_violation("the triple must be distinct");
    StarReport report;
    report.a = a; report.b = b; report.c = c;
    if (M.empty()) return report;  // vacuous
    long double est = std::pow((long double)M.size(), (long double)arity) * 3.0L *
                      std::pow(2.0L, (long double)(arity - 1));
    if (est > (long double)cap)
        throw enumeration_cap_error("(*) enumeration exceeds the configured cap",
                                    (unsigned long long)est);
    std::vector<GroupElement> triple{a, b, c};
    std::vector<GroupElement> conj(3 * M.size());  // x^-1 g x precomputed
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t g = 0; g < M.size(); ++g)
            conj[x * M.size() + g] = m.mul(m.mul(m.inverse(triple[x]), M[g]), triple[x]);
    std::vector<std::size_t> gi(arity), xi(arity);
    unsigned long long checked = 0;
    std::optional<StarWitness> found;
    auto rec = [&](auto&& self, long long pos, const GroupElement& acc) -> bool {
        if (pos == arity) {
            ++checked;
            if (acc.is_identity()) {
                StarWitness w;
                for (long long i = 0; i < arity; ++i) {
                    w.gs.push_back(M[gi[i]]);
                    w.xs.push_back(triple[xi[i]]);
                }
                found = w;
                return true;
            }
            return false;
        }
        for (std::size_t x = 0; x < 3; ++x) {
            if (pos > 0 && x == xi[pos - 1]) continue;
            xi[pos] = x;
            for (std::size_t g = 0; g < M.size(); ++g) {
                gi[pos] = g;
                if (self(self, pos + 1, m.mul(acc, conj[x * M.size() + g]))) return true;
            }
        }
        return false;
    };
    rec(rec, 0, m.identity());
    report.products_checked = checked;
    if (found) { report.pass = false; report.witness = found; }
    return report;
}

// The paper's witness choice a = u^N, b = u^2N, c = u^3N.
inline StarReport star_property_check(const Model& m, const std::vector<GroupElement>& M,
                                      long long arity, const GroupElement& u, long long N,
                                      unsigned long long cap = 10000000ULL) {
    if (!is_loxodromic(m, u)) throw domain_violation("(*) requires a loxodromic u");
    if (N < 1) throw domain_violation("N must be >= 1");
    return star_property_check_triple(m, M, arity, m.power(u, N), m.power(u, 2 * N),
                                      m.power(u, 3 * N), cap);
}

// Smallest loxodromic u (shortlex) with E(u) disjoint from M; in a free
// model this makes <u, g> = <u> * <g> for every g in M.
inline GroupElement select_star_witness(const Model& m, const std::vector<GroupElement>& M,
                                        long long length_cap = 6) {
    for (const GroupElement& u : m.enumerate_elements(length_cap)) {
        if (u.is_identity() || !is_loxodromic(m, u)) continue;
        ElementaryClosure ec = elementary_closure(m, u);
        bool clean = true;
        for (const GroupElement& g : M)
            if (in_elementary_closure(m, ec, g)) { clean = false; break; }
        if (clean) return u;
    }
    throw budget_exhausted_error("no loxodromic avoiding E(u) against M within the length cap");
}

// ---- loops of powers ----------------------------------------------------------

struct NoloopsReport {
    bool pass = true;
    unsigned long long words_checked = 0;
    std::vector<long long> witness;  // exponent tuple on failure
};

// Checks u^{n_0} g_1 u^{n_1} ... g_k u^{n_k} != 1 for every tuple with
// N <= |n_i| <= exp_bound.  Witness is minimal by (total magnitude, lex).
inline NoloopsReport noloops_check(const Model& m, const GroupElement& u,
                                   const std::vector<GroupElement>& gs, long long N,
                                   long long exp_bound, unsigned long long cap = 10000000ULL) {
    if (!m.certificate_capable()) throw capability_error("noloops requires an exact model");
    if (N < 1 || exp_bound < N) throw domain_violation("need 1 <= N <= exp_bound");
    ElementaryClosure ec = elementary_closure(m, u);
    for (const GroupElement& g : gs)
        if (in_elementary_closure(m, ec, g))
            throw domain_violation("a handle element lies in E(u)");
    long long k = static_cast<long long>(gs.size());
    long long per = 2 * (exp_bound - N + 1);
    long double est = std::pow((long double)per, (long double)(k + 1));
    if (est > (long double)cap)
        throw enumeration_cap_error("noloops enumeration exceeds the configured cap",
                                    (unsigned long long)est);
    std::vector<long long> mags;  // candidate exponents in witness order
    std::vector<long long> exps;
    for (long long v = N; v <= exp_bound; ++v) { exps.push_back(v); exps.push_back(-v); }
    std::vector<std::vector<long long>> tuples;
    std::vector<long long> cur(k + 1);
    auto rec = [&](auto&& self, long long pos) -> void {
        if (pos == k + 1) { tuples.push_back(cur); return; }
        for (long long e : exps) { cur[pos] = e; self(self, pos + 1); }
    };
    rec(rec, 0);
    std::sort(tuples.begin(), tuples.end(),
              [](const std::vector<long long>& x, const std::vector<long long>& y) {
                  long long sx = 0, sy = 0;
                  for (long long v : x) sx += v < 0 ? -v : v;
                  for (long long v : y) sy += v < 0 ? -v : v;
                  if (sx != sy) return sx < sy;
                  return x < y;
              });
    NoloopsReport report;
    const bool with_matrix = m.has_matrix_eval();
    Mat2 mu = with_matrix ? m.matrix_eval(u) : Mat2::identity();
    for (const auto& tpl : tuples) {
        GroupElement w = m.power(u, tpl[0]);
        Mat2 wm = with_matrix ? mat2_power(mu, tpl[0]) : Mat2::identity();
        for (long long i = 0; i < k; ++i) {
            w = m.mul(m.mul(w, gs[i]), m.power(u, tpl[i + 1]));
            if (with_matrix)
                wm = wm * m.matrix_eval_word(gs[i].word) * mat2_power(mu, tpl[i + 1]);
        }
        ++report.words_checked;
        bool nf_trivial = w.is_identity();
        if (with_matrix && wm.is_projective_identity() != nf_trivial)
            throw oracle_mismatch_error("noloops oracles disagree");
        if (nf_trivial) {
            report.pass = false;
            report.witness = tpl;
            return report;
        }
    }
    return report;
}

// ---- relative metric ----------------------------------------------------------

// d-hat inside a factor subgroup H of a free product: BFS over the relative
// Cayley graph (edge labels: all nontrivial factor elements) with the edges
// of the H-subgraph removed, explored to the given depth.
inline Dist rel_metric(const Model& m, int factor, const GroupElement& h1, const GroupElement& h2,
                       long long ball) {
    if (m.kind() != ModelKind::FreeProduct)
        throw capability_error("relative metric requires a free product model");
    if (factor < 0 || factor >= m.num_generators()) throw domain_violation("no such factor");
    auto in_factor = [&](const GroupElement& g) {
        return g.word.empty() || (g.word.size() == 1 && g.word[0].gen == factor);
    };
    if (!in_factor(h1) || !in_factor(h2))
        throw domain_violation("relative metric arguments must lie in the factor");
    if (h1 == h2) return Dist::exact(0);

    struct WordLess {
        bool operator()(const Word& a, const Word& b) const {
            if (a.size() != b.size()) return a.size() < b.size();
            return word_lex_less(a, b);
        }
    };
    std::vector<GroupElement> labels;
    for (int f = 0; f < m.num_generators(); ++f)
        for (long long e = 1; e < m.orders()[f]; ++e)
            labels.push_back(m.element(Word{Syllable{f, e}}));
    std::map<Word, long long, WordLess> dist;
    std::vector<GroupElement> frontier{h1};
    dist[h1.word] = 0;
    for (long long depth = 1; depth <= ball; ++depth) {
        std::vector<GroupElement> next;
        for (const GroupElement& g : frontier) {
            for (const GroupElement& lab : labels) {
                // skip edges of the H-subgraph: both endpoints in H via an
                // H-label
                bool h_label = lab.word.size() == 1 && lab.word[0].gen == factor;
                GroupElement to = m.mul(g, lab);
                if (h_label && in_factor(g) && in_factor(to)) continue;
                if (dist.count(to.word)) continue;
                dist[to.word] = depth;
                if (to == h2) return Dist::exact(depth);
                next.push_back(to);
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return Dist::infinity();
}

}  // namespace pingpong
