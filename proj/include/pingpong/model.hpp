// Concrete group actions.
//
//   FreeGroup(r)      : F_r acting on its Cayley tree (regular action,
//                       sites are reduced words).
//   FreeProduct(p...) : Z/p1 * ... * Z/pk acting on its Bass-Serre tree.
//                       For two factors this is the bipartite tree on the
//                       cosets of the factors; for three or more factors
//                       the tree additionally has one "central" vertex per
//                       group element (the star-of-groups picture).  Cosets
//                       are encoded by the canonical representative: the
//                       normal form with its trailing syllable stripped
//                       when that syllable lies in the coset's factor.
//   HalfPlane(mats)   : floating upper half-plane demo model.  Carries an
//                       "approximate" flag on every metric result and is
//                       excluded from certificate-producing paths.
//
// The Z/2 * Z/3 free product additionally evaluates words as exact 2x2
// integer matrices (s -> [[0,-1],[1,0]], t -> [[0,-1],[1,-1]]), giving an
// independent word-problem oracle.

#pragma once

#include <array>
#include <cctype>
#include <complex>
#include <cstdint>
#include <cstring>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pingpong/errors.hpp"
#include "pingpong/matrix2.hpp"
#include "pingpong/rational.hpp"
#include "pingpong/word.hpp"

namespace pingpong {

enum class ModelKind { FreeGroup, FreeProduct, HalfPlane };

using ModelId = std::uint64_t;

struct GroupElement {
    ModelId model_id = 0;
    Word word;  // normal form

    bool is_identity() const { return word.empty(); }
    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.model_id == b.model_id && a.word == b.word;
    }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
};

struct Site {
    enum class Tag { Vertex, Coset, Central, Plane };

    ModelId model_id = 0;
    Tag tag = Tag::Vertex;
    Word word;                       // locator (empty at the basepoint)
    int factor = -1;                 // Coset only: which factor's coset
    std::complex<double> z{0, 1};    // Plane only

    friend bool operator==(const Site& a, const Site& b) {
        if (a.model_id != b.model_id || a.tag != b.tag) return false;
        if (a.tag == Tag::Plane) return a.z == b.z;
        return a.factor == b.factor && a.word == b.word;
    }
    friend bool operator!=(const Site& a, const Site& b) { return !(a == b); }
};

// Deterministic total order on tree sites (factor, then word shortlex-free order).
inline bool site_less(const Site& a, const Site& b) {
    if (a.factor != b.factor) return a.factor < b.factor;
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return word_lex_less(a.word, b.word);
}

class Model {
public:
    static Model free_group(int rank) {
        if (rank < 1 || rank > 8) throw domain_violation("free group rank must be in [1,8]");
        Model m;
        m.kind_ = ModelKind::FreeGroup;
        m.orders_.assign(rank, 0);
        m.finish_init();
        return m;
    }

    static Model free_product(std::vector<long long> orders) {
        if (orders.size() < 2 || orders.size() > 8)
            throw domain_violation("free product needs 2..8 factors");
        for (long long p : orders)
            if (p < 2) throw domain_violation("factor orders must be >= 2");
        Model m;
        m.kind_ = ModelKind::FreeProduct;
        m.orders_ = std::move(orders);
        if (m.orders_ == std::vector<long long>{2, 3}) {
            m.images_ = {Mat2{{0, -1, 1, 0}}, Mat2{{0, -1, 1, -1}}};
            m.has_matrix_ = true;
        }
        m.finish_init();
        return m;
    }

    static Model half_plane(std::vector<std::array<double, 4>> generators) {
        if (generators.empty()) throw domain_violation("half-plane model needs generators");
        Model m;
        m.kind_ = ModelKind::HalfPlane;
        m.orders_.assign(generators.size(), 0);
        m.plane_gens_ = std::move(generators);
        for (const auto& g : m.plane_gens_)
            if (g[0] * g[3] - g[1] * g[2] <= 0)
                throw domain_violation("half-plane generators must have positive determinant");
        m.finish_init();
        return m;
    }

    ModelKind kind() const { return kind_; }
    ModelId id() const { return id_; }
    int num_generators() const { return static_cast<int>(orders_.size()); }
    const std::vector<long long>& orders() const { return orders_; }
    bool is_tree() const { return kind_ != ModelKind::HalfPlane; }
    bool certificate_capable() const { return is_tree(); }
    bool has_matrix_eval() const { return has_matrix_; }

    Dist delta() const {
        // Trees are 0-hyperbolic; the half-plane constant is a conservative
        // documented value (see README, model notes).
        return is_tree() ? Dist::exact(0) : Dist::approximate(1.0);
    }

    // K1, K2: local (1,10*delta)-quasigeodesics of length > K1 are K2-global
    // quasigeodesics.  Local geodesics in trees are geodesics, so (1,1).
    std::pair<Dist, Dist> local_global_constants() const {
        if (is_tree()) return {Dist::exact(1), Dist::exact(1)};
        return {Dist::approximate(100.0), Dist::approximate(4.0)};
    }

    // ---- element algebra ------------------------------------------------

    GroupElement identity() const { return GroupElement{id_, {}}; }

    GroupElement element(const Word& raw) const {
        return GroupElement{id_, reduce_word(raw, orders_)};
    }

    GroupElement mul(const GroupElement& a, const GroupElement& b) const {
        check(a); check(b);
        return GroupElement{id_, mul_words(a.word, b.word, orders_)};
    }

    GroupElement inverse(const GroupElement& a) const {
        check(a);
        return GroupElement{id_, inverse_word(a.word, orders_)};
    }

    GroupElement power(const GroupElement& a, long long n) const {
        check(a);
        GroupElement base = n < 0 ? inverse(a) : a;
        long long e = n < 0 ? -n : n;
        GroupElement acc = identity();
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    GroupElement conjugate(const GroupElement& g, const GroupElement& by) const {
        return mul(mul(by, g), inverse(by));
    }

    long long length(const GroupElement& g) const {
        check(g);
        return word_step_length(g.word, orders_);
    }

    bool shortlex_less(const GroupElement& a, const GroupElement& b) const {
        return word_shortlex_less(a.word, b.word, orders_);
    }

    // ---- matrix oracle ---------------------------------------------------

    Mat2 matrix_eval(const GroupElement& g) const {
        check(g);
        return matrix_eval_word(g.word);
    }

    // Raw words welcome: the point of the second oracle is to bypass the
    // normal-form machinery entirely.
    Mat2 matrix_eval_word(const Word& raw) const {
        if (!has_matrix_) throw capability_error("model has no exact matrix evaluation");
        Mat2 acc = Mat2::identity();
        for (const Syllable& s : raw) {
            if (s.gen < 0 || s.gen >= num_generators())
                throw domain_violation("letter outside the model's alphabet");
            acc = acc * mat2_power(images_[s.gen], s.exp);
        }
        return acc.canonical_sign();
    }

    // ---- text ------------------------------------------------------------

    char letter(int gen) const {
        static const char* free_letters = "abcdefgh";
        static const char* product_letters = "stuvwxyz";
        return kind_ == ModelKind::FreeProduct ? product_letters[gen] : free_letters[gen];
    }

    int gen_of_letter(char c, bool& inverse) const {
        char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        inverse = std::isupper(static_cast<unsigned char>(c)) != 0;
        for (int i = 0; i < num_generators(); ++i)
            if (letter(i) == lc) return i;
        return -1;
    }

    std::string print(const GroupElement& g) const {
        check(g);
        if (g.word.empty()) return "1";
        std::string out;
        for (const Syllable& s : g.word) {
            out += letter(s.gen);
            if (s.exp != 1) out += "^" + std::to_string(s.exp);
        }
        return out;
    }

    // Grammar: optional "1", else a sequence of letters each with an optional
    // ^exponent; uppercase letter = inverse; whitespace and '*' are ignored.
    GroupElement parse(const std::string& text) const {
        Word raw;
        std::size_t i = 0;
        auto skip = [&] { while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == '*')) ++i; };
        skip();
        if (i < text.size() && text[i] == '1' ) {
            ++i; skip();
            if (i != text.size()) throw parse_error("unexpected input after identity", i);
            return identity();
        }
        while (i < text.size()) {
            bool inv = false;
            int gen = gen_of_letter(text[i], inv);
            if (gen < 0) throw parse_error(std::string("unknown letter '") + text[i] + "'", i);
            ++i;
            long long e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                bool neg = false;
                if (i < text.size() && (text[i] == '-' || text[i] == '+')) { neg = text[i] == '-'; ++i; }
                if (i >= text.size() || !std::isdigit((unsigned char)text[i]))
                    throw parse_error("expected exponent digits after '^'", i);
                e = 0;
                while (i < text.size() && std::isdigit((unsigned char)text[i])) {
                    e = e * 10 + (text[i] - '0');
                    if (e > 1000000) throw parse_error("exponent too large", i);
                    ++i;
                }
                if (neg) e = -e;
            }
            if (inv) e = -e;
            if (e != 0) raw.push_back(Syllable{gen, e});
            skip();
        }
        return element(raw);
    }

    // ---- search primitives -------------------------------------------------

    // Deterministic given the seed; normal-form step length is exactly `len`.
    GroupElement random_element(long long len, std::uint64_t seed) const {
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        auto pick = [&rng](std::uint64_t n) { return static_cast<long long>(rng() % n); };
        Word w;
        int prev = -1;
        for (long long i = 0; i < len; ++i) {
            if (kind_ == ModelKind::FreeProduct) {
                int gen = static_cast<int>(pick(num_generators() - (prev >= 0 ? 1 : 0)));
                if (prev >= 0 && gen >= prev) ++gen;
                long long e = 1 + pick(static_cast<std::uint64_t>(orders_[gen] - 1));
                w.push_back(Syllable{gen, e});
                prev = gen;
            } else {
                // pick a letter that does not cancel the previous one
                while (true) {
                    int gen = static_cast<int>(pick(num_generators()));
                    long long e = pick(2) == 0 ? 1 : -1;
                    if (!w.empty() && w.back().gen == gen && w.back().exp * e < 0) continue;
                    push_reduced(w, Syllable{gen, e}, orders_);
                    break;
                }
            }
        }
        return GroupElement{id_, w};
    }

    // All normal forms of step length <= max_len, in shortlex order.
    std::vector<GroupElement> enumerate_elements(long long max_len) const {
        std::vector<GroupElement> out;
        out.push_back(identity());
        std::vector<Word> frontier{Word{}};
        for (long long l = 1; l <= max_len; ++l) {
            std::vector<Word> next;
            for (const Word& w : frontier) {
                for (const Syllable& s : extension_steps(w)) {
                    Word v = w;
                    push_reduced(v, s, orders_);
                    next.push_back(std::move(v));
                }
            }
            for (const Word& w : next) out.push_back(GroupElement{id_, w});
            frontier = std::move(next);
        }
        return out;
    }

    // ---- the action ----------------------------------------------------------

    Site basepoint() const {
        Site s;
        s.model_id = id_;
        switch (kind_) {
            case ModelKind::FreeGroup: s.tag = Site::Tag::Vertex; break;
            case ModelKind::FreeProduct: s.tag = Site::Tag::Coset; s.factor = 0; break;
            case ModelKind::HalfPlane: s.tag = Site::Tag::Plane; s.z = {0.0, 1.0}; break;
        }
        return s;
    }

    Site coset_site(const GroupElement& rep, int factor) const {
        check(rep);
        if (kind_ != ModelKind::FreeProduct) throw capability_error("cosets only exist in free products");
        Site s;
        s.model_id = id_;
        s.tag = Site::Tag::Coset;
        s.factor = factor;
        s.word = strip_factor(rep.word, factor);
        return s;
    }

    Site central_site(const GroupElement& rep) const {
        check(rep);
        if (kind_ != ModelKind::FreeProduct || num_generators() == 2)
            throw capability_error("central vertices only exist for >= 3 factors");
        Site s;
        s.model_id = id_;
        s.tag = Site::Tag::Central;
        s.word = rep.word;
        return s;
    }

    Site act(const GroupElement& g, const Site& x) const {
        check(g);
        check(x);
        Site out = x;
        switch (x.tag) {
            case Site::Tag::Vertex:
                out.word = mul_words(g.word, x.word, orders_);
                break;
            case Site::Tag::Coset:
                out.word = strip_factor(mul_words(g.word, x.word, orders_), x.factor);
                break;
            case Site::Tag::Central:
                out.word = mul_words(g.word, x.word, orders_);
                break;
            case Site::Tag::Plane: {
                auto m = plane_matrix(g.word);
                out.z = mobius(m, x.z);
                break;
            }
        }
        return out;
    }

    // Group element whose site this is (Vertex/Central sites are regular orbits).
    GroupElement site_rep(const Site& x) const {
        check(x);
        return GroupElement{id_, x.word};
    }

    std::vector<Site> neighbors(const Site& x) const {
        check(x);
        std::vector<Site> out;
        switch (x.tag) {
            case Site::Tag::Vertex:
                for (int gen = 0; gen < num_generators(); ++gen)
                    for (long long e : {1LL, -1LL}) {
                        Site n = x;
                        n.word = mul_words(x.word, Word{Syllable{gen, e}}, orders_);
                        out.push_back(std::move(n));
                    }
                break;
            case Site::Tag::Coset: {
                if (num_generators() == 2) {
                    int other = 1 - x.factor;
                    for (long long e = 0; e < orders_[x.factor]; ++e) {
                        Word rep = x.word;
                        if (e != 0) push_reduced(rep, Syllable{x.factor, e}, orders_);
                        Site n;
                        n.model_id = id_;
                        n.tag = Site::Tag::Coset;
                        n.factor = other;
                        n.word = strip_factor(rep, other);
                        out.push_back(std::move(n));
                    }
                } else {
                    for (long long e = 0; e < orders_[x.factor]; ++e) {
                        Word rep = x.word;
                        if (e != 0) push_reduced(rep, Syllable{x.factor, e}, orders_);
                        Site n;
                        n.model_id = id_;
                        n.tag = Site::Tag::Central;
                        n.word = std::move(rep);
                        out.push_back(std::move(n));
                    }
                }
                break;
            }
            case Site::Tag::Central:
                for (int f = 0; f < num_generators(); ++f) {
                    Site n;
                    n.model_id = id_;
                    n.tag = Site::Tag::Coset;
                    n.factor = f;
                    n.word = strip_factor(x.word, f);
                    out.push_back(std::move(n));
                }
                break;
            case Site::Tag::Plane:
                throw capability_error("the half-plane model has no site graph");
        }
        return out;
    }

    // Closed ball around `center`, BFS order (so nondecreasing distance),
    // deterministic.
    std::vector<Site> ball(const Site& center, long long radius) const {
        check(center);
        if (!is_tree()) throw capability_error("balls are only enumerable in tree models");
        std::vector<Site> out{center};
        std::map<std::pair<int, Word>, bool, BallKeyLess> seen(BallKeyLess{});
        seen[{site_key(center), center.word}] = true;
        std::size_t head = 0;
        long long ring = 0;
        std::size_t ring_end = out.size();
        while (ring < radius) {
            std::size_t next_end = out.size();
            for (; head < ring_end; ++head) {
                for (Site& n : neighbors(out[head])) {
                    auto key = std::make_pair(site_key(n), n.word);
                    if (seen.emplace(key, true).second) out.push_back(std::move(n));
                }
            }
            ++ring;
            ring_end = out.size();
            if (ring_end == next_end) break;  // exhausted (finite component)
        }
        return out;
    }

private:
    struct BallKeyLess {
        bool operator()(const std::pair<int, Word>& a, const std::pair<int, Word>& b) const {
            if (a.first != b.first) return a.first < b.first;
            if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
            return word_lex_less(a.second, b.second);
        }
    };

    static int site_key(const Site& s) {
        switch (s.tag) {
            case Site::Tag::Vertex: return -1;
            case Site::Tag::Central: return -2;
            case Site::Tag::Coset: return s.factor;
            default: return -3;
        }
    }

    void check(const GroupElement& g) const {
        if (g.model_id != id_) throw model_mismatch_error("element belongs to a different model");
    }
    void check(const Site& s) const {
        if (s.model_id != id_) throw model_mismatch_error("site belongs to a different model");
    }

    Word strip_factor(Word w, int factor) const {
        if (!w.empty() && w.back().gen == factor) w.pop_back();
        return w;
    }

    // Extension steps that keep a word in normal form (used by enumeration;
    // candidates in deterministic syllable order).
    std::vector<Syllable> extension_steps(const Word& w) const {
        std::vector<Syllable> out;
        for (int gen = 0; gen < num_generators(); ++gen) {
            if (orders_[gen] == 0) {
                if (!(w.size() && w.back().gen == gen && w.back().exp < 0))
                    out.push_back(Syllable{gen, 1});
                if (!(w.size() && w.back().gen == gen && w.back().exp > 0))
                    out.push_back(Syllable{gen, -1});
            } else {
                if (w.size() && w.back().gen == gen) continue;
                for (long long e = 1; e < orders_[gen]; ++e) out.push_back(Syllable{gen, e});
            }
        }
        return out;
    }

    std::array<double, 4> plane_matrix(const Word& w) const {
        std::array<double, 4> acc{1, 0, 0, 1};
        auto mul = [](const std::array<double, 4>& x, const std::array<double, 4>& y) {
            return std::array<double, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                         x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
        };
        for (const Syllable& s : w) {
            std::array<double, 4> m = plane_gens_[s.gen];
            if (s.exp < 0) {
                double det = m[0] * m[3] - m[1] * m[2];
                m = {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
            }
            long long n = s.exp < 0 ? -s.exp : s.exp;
            for (long long i = 0; i < n; ++i) acc = mul(acc, m);
        }
        return acc;
    }

    static std::complex<double> mobius(const std::array<double, 4>& m, std::complex<double> z) {
        return (m[0] * z + m[1]) / (m[2] * z + m[3]);
    }

    void finish_init() {
        // id = stable hash of the defining data, so equal models agree
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ULL;
        };
        mix(static_cast<std::uint64_t>(kind_));
        for (long long p : orders_) mix(static_cast<std::uint64_t>(p + 7));
        for (const auto& g : plane_gens_)
            for (double v : g) { std::uint64_t bits; std::memcpy(&bits, &v, 8); mix(bits); }
        id_ = h;
    }

    ModelKind kind_ = ModelKind::FreeGroup;
    std::vector<long long> orders_;
    std::vector<Mat2> images_;
    bool has_matrix_ = false;
    std::vector<std::array<double, 4>> plane_gens_;
    ModelId id_ = 0;
};

// Enumerate the subgroup generated by `gens` by closing under products.
// Aborts with subgroup_cap_error beyond `cap` elements (the subgroup is not
// elliptic at desk scale).  Result is sorted shortlex and starts with the
// identity.
inline std::vector<GroupElement> subgroup_closure(const Model& model,
                                                  const std::vector<GroupElement>& gens,
                                                  std::size_t cap = 64) {
    struct WordLess {
        const Model* m;
        bool operator()(const GroupElement& a, const GroupElement& b) const {
            return m->shortlex_less(a, b);
        }
    };
    std::map<GroupElement, bool, WordLess> seen(WordLess{&model});
    std::deque<GroupElement> queue;
    auto add = [&](const GroupElement& g) {
        if (seen.emplace(g, true).second) queue.push_back(g);
    };
    add(model.identity());
    for (const GroupElement& g : gens) {
        add(g);
        add(model.inverse(g));
    }
    while (!queue.empty()) {
        GroupElement g = queue.front();
        queue.pop_front();
        for (const GroupElement& h : gens) {
            add(model.mul(g, h));
            add(model.mul(g, model.inverse(h)));
            if (seen.size() > cap)
                throw subgroup_cap_error("subgroup closure exceeded cap (not elliptic / too large)");
        }
    }
    std::vector<GroupElement> out;
    out.reserve(seen.size());
    for (const auto& [g, _] : seen) out.push_back(g);
    return out;
}

}  // namespace pingpong
