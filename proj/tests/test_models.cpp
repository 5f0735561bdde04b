#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "oracles.hpp"
#include "pingpong/endpoint.hpp"
#include "pingpong/space.hpp"

using namespace pingpong;

TEST_CASE("regular action on the Cayley tree") {
    Model f2 = Model::free_group(2);
    Site v0 = f2.basepoint();
    REQUIRE(f2.act(f2.parse("ab"), v0).word == f2.parse("ab").word);
    REQUIRE(f2.act(f2.identity(), v0) == v0);
}

TEST_CASE("Bass-Serre stabilizers: s fixes the base vertex, t fixes its own") {
    Model psl = Model::free_product({2, 3});
    Site v0 = psl.basepoint();  // the coset of <s>
    REQUIRE(psl.act(psl.parse("s"), v0) == v0);
    Site vt = psl.coset_site(psl.identity(), 1);
    REQUIRE(psl.act(psl.parse("t"), vt) == vt);
    REQUIRE(psl.act(psl.parse("t"), v0) != v0);
    REQUIRE(psl.act(psl.parse("s"), vt) != vt);
}

TEST_CASE("the action is a homomorphism by isometries, exhaustively") {
    Model psl = Model::free_product({2, 3});
    auto elts = psl.enumerate_elements(4);
    auto ball = psl.ball(psl.basepoint(), 4);
    for (const auto& g : elts)
        for (const auto& h : elts) {
            GroupElement gh = psl.mul(g, h);
            for (const Site& x : ball)
                REQUIRE(psl.act(gh, x) == psl.act(g, psl.act(h, x)));
        }
    // isometry over a sample
    for (const auto& g : elts)
        for (const Site& x : ball)
            REQUIRE(tree_distance(psl, psl.act(g, x), psl.act(g, ball[0])) ==
                    tree_distance(psl, x, ball[0]));
}

TEST_CASE("the action is a homomorphism on the free group, sampled ball") {
    Model f2 = Model::free_group(2);
    auto elts = f2.enumerate_elements(3);
    auto ball = f2.ball(f2.basepoint(), 3);
    for (const auto& g : elts)
        for (const auto& h : elts) {
            GroupElement gh = f2.mul(g, h);
            for (std::size_t i = 0; i < ball.size(); i += 7)
                REQUIRE(f2.act(gh, ball[i]) == f2.act(g, f2.act(h, ball[i])));
        }
}

TEST_CASE("word problem: normal form and exact matrices agree on every short raw word") {
    Model psl = Model::free_product({2, 3});
    // raw words over {s, s^-1, t, t^-1}, length <= 10, explored incrementally
    const Word letters = {Syllable{0, 1}, Syllable{0, -1}, Syllable{1, 1}, Syllable{1, -1}};
    std::vector<Mat2> images;
    for (const Syllable& l : letters) images.push_back(psl.matrix_eval_word(Word{l}));
    long long agreements = 0;
    auto rec = [&](auto&& self, const Word& nf, const Mat2& mat, int depth) -> void {
        bool nf_trivial = nf.empty();
        bool mat_trivial = mat.is_projective_identity();
        REQUIRE(nf_trivial == mat_trivial);
        ++agreements;
        if (depth == 10) return;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            Word next = nf;
            push_reduced(next, letters[i], psl.orders());
            self(self, next, mat * images[i], depth + 1);
        }
    };
    rec(rec, {}, Mat2::identity(), 0);
    REQUIRE(agreements == 1 + 4 + 16 + 64 + 256 + 1024 + 4096 + 16384 + 65536 + 262144 + 1048576);
}

TEST_CASE("balls have the expected sizes") {
    Model f2 = Model::free_group(2);
    REQUIRE(f2.ball(f2.basepoint(), 0).size() == 1);
    REQUIRE(f2.ball(f2.basepoint(), 1).size() == 5);
    REQUIRE(f2.ball(f2.basepoint(), 2).size() == 17);
    Model psl = Model::free_product({2, 3});
    // base vertex has degree |<s>| = 2; t-cosets have degree 3
    REQUIRE(psl.ball(psl.basepoint(), 1).size() == 3);
    REQUIRE(psl.ball(psl.basepoint(), 2).size() == 7);
}

TEST_CASE("endpoint canonicalization identifies equal rays (exhaustive small window)") {
    Model f2 = Model::free_group(2);
    std::map<std::string, EndPoint> canon_by_stream;
    auto stream_key = [&](const EndPoint& e) {
        std::string key;
        for (const Syllable& s : end_steps(f2, e, 24))
            key += std::to_string(s.gen) + (s.exp > 0 ? "+" : "-") + ";";
        return key;
    };
    long long encodings = 0;
    for (const GroupElement& p : f2.enumerate_elements(4))
        for (const GroupElement& q : f2.enumerate_elements(3)) {
            if (q.is_identity()) continue;
            EndPoint e;
            try {
                e = make_end(f2, p.word, q.word);
            } catch (const domain_violation&) {
                continue;
            }
            ++encodings;
            // the canonical form denotes the same ray
            REQUIRE(stream_key(e) == stream_key(make_end(f2, e.prefix, e.period)));
            auto [it, fresh] = canon_by_stream.emplace(stream_key(e), e);
            if (!fresh) REQUIRE(it->second == e);
        }
    REQUIRE(encodings > 1000);
    // distinct canonical forms denote distinct rays
    std::map<std::string, EndPoint> seen;
    for (const auto& [k, e] : canon_by_stream) {
        auto [it, fresh] = seen.emplace(k, e);
        REQUIRE(fresh);
    }
}

TEST_CASE("endpoint action: prefix translation and deep cancellation") {
    Model f2 = Model::free_group(2);
    EndPoint bbb = make_end(f2, {}, f2.parse("b").word);
    EndPoint moved = act_on_end(f2, f2.parse("a"), bbb);
    REQUIRE(moved == make_end(f2, f2.parse("a").word, f2.parse("b").word));
    // acting by the inverse prefix eats into the period
    EndPoint back = act_on_end(f2, f2.parse("b^-3"), bbb);
    REQUIRE(back == bbb);
    // group action property on ends
    for (const char* gw : {"a", "ab", "b^-1a"})
        for (const char* hw : {"b", "a^-1", "ba"}) {
            GroupElement g = f2.parse(gw), h = f2.parse(hw);
            EndPoint lhs = act_on_end(f2, f2.mul(g, h), bbb);
            EndPoint rhs = act_on_end(f2, g, act_on_end(f2, h, bbb));
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("free product endpoint action merges syllables at the splice") {
    Model psl = Model::free_product({2, 3});
    EndPoint stst = make_end(psl, {}, psl.parse("st").word);
    // s . (st)^inf = (ts)^inf
    REQUIRE(act_on_end(psl, psl.parse("s"), stst) == make_end(psl, {}, psl.parse("ts").word));
    // t . (st)^inf = t(st)^inf canonicalizes to the rotated ray
    EndPoint t_moved = act_on_end(psl, psl.parse("t"), stst);
    REQUIRE(t_moved == make_end(psl, {}, psl.parse("ts").word));
    // t^2 . (st)^inf keeps its prefix
    EndPoint t2_moved = act_on_end(psl, psl.parse("t^2"), stst);
    REQUIRE(t2_moved == make_end(psl, psl.parse("t^2").word, psl.parse("st").word));
}

TEST_CASE("invalid end encodings are rejected") {
    Model f2 = Model::free_group(2);
    REQUIRE_THROWS_AS(make_end(f2, {}, Word{}), domain_violation);
    REQUIRE_THROWS_AS(make_end(f2, {}, f2.parse("aba^-1").word), domain_violation);
    REQUIRE_THROWS_AS(make_end(f2, f2.parse("a").word, f2.parse("a^-1b").word), domain_violation);
    Model psl = Model::free_product({2, 3});
    REQUIRE_THROWS_AS(make_end(psl, {}, psl.parse("sts").word), domain_violation);
}

TEST_CASE("subgroup closure: sizes and the cap") {
    Model psl = Model::free_product({2, 3});
    REQUIRE(subgroup_closure(psl, {psl.parse("s")}).size() == 2);
    REQUIRE(subgroup_closure(psl, {psl.parse("t")}).size() == 3);
    REQUIRE(subgroup_closure(psl, {}).size() == 1);
    REQUIRE_THROWS_AS(subgroup_closure(psl, {psl.parse("st")}, 64), subgroup_cap_error);
    Model f2 = Model::free_group(2);
    REQUIRE_THROWS_AS(subgroup_closure(f2, {f2.parse("a")}, 32), subgroup_cap_error);
}
