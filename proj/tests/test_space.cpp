#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pingpong/space.hpp"

using namespace pingpong;

namespace {
Site vertex_of(const Model& m, const char* w) { return m.act(m.parse(w), m.basepoint()); }
}  // namespace

TEST_CASE("distances match the BFS oracle on the Cayley tree of F2") {
    Model f2 = Model::free_group(2);
    Site v0 = f2.basepoint();
    // expected value derived by BFS over the tree
    REQUIRE(oracle::bfs_distance(f2, v0, vertex_of(f2, "ab"), 4) == 2);
    REQUIRE(tree_distance(f2, v0, vertex_of(f2, "ab")) == 2);
    REQUIRE(tree_distance(f2, v0, v0) == 0);
    for (const Site& x : f2.ball(v0, 3))
        for (const Site& y : f2.ball(v0, 2))
            REQUIRE(tree_distance(f2, x, y) == oracle::bfs_distance(f2, x, y, 5));
}

TEST_CASE("distances match the BFS oracle on the Bass-Serre tree of Z/2 * Z/3") {
    Model psl = Model::free_product({2, 3});
    Site v0 = psl.basepoint();
    Site target = psl.act(psl.parse("st"), v0);
    REQUIRE(oracle::bfs_distance(psl, v0, target, 5) == 2);
    REQUIRE(tree_distance(psl, v0, target) == 2);
    for (const Site& x : psl.ball(v0, 4))
        for (const Site& y : psl.ball(v0, 4))
            REQUIRE(tree_distance(psl, x, y) == oracle::bfs_distance(psl, x, y, 9));
}

TEST_CASE("distances match the BFS oracle on a three-factor star tree") {
    Model m = Model::free_product({2, 2, 3});
    Site v0 = m.basepoint();
    for (const Site& x : m.ball(v0, 3))
        for (const Site& y : m.ball(v0, 3))
            REQUIRE(tree_distance(m, x, y) == oracle::bfs_distance(m, x, y, 7));
}

TEST_CASE("geodesics: endpoints, unit steps, length") {
    Model f2 = Model::free_group(2);
    Site v0 = f2.basepoint();
    Geodesic g = geodesic(f2, v0, vertex_of(f2, "ab"));
    REQUIRE(g.sites.size() == 3);
    REQUIRE(g.sites.front() == v0);
    REQUIRE(g.sites[1] == vertex_of(f2, "a"));
    REQUIRE(g.sites.back() == vertex_of(f2, "ab"));
    REQUIRE_FALSE(g.approximate);

    REQUIRE(geodesic(f2, v0, v0).sites.size() == 1);

    Model psl = Model::free_product({2, 3});
    Geodesic h = geodesic(psl, psl.basepoint(), psl.act(psl.parse("st"), psl.basepoint()));
    REQUIRE(h.sites.size() == 3);

    for (const Model& m : {f2, psl}) {
        for (const Site& x : m.ball(m.basepoint(), 3))
            for (const Site& y : m.ball(m.basepoint(), 3)) {
                Geodesic path = geodesic(m, x, y);
                REQUIRE(path.sites.front() == x);
                REQUIRE(path.sites.back() == y);
                long long d = tree_distance(m, x, y);
                REQUIRE(static_cast<long long>(path.sites.size()) == d + 1);
                for (std::size_t i = 1; i < path.sites.size(); ++i)
                    REQUIRE(tree_distance(m, path.sites[i - 1], path.sites[i]) == 1);
            }
    }
}

TEST_CASE("gromov products") {
    Model f2 = Model::free_group(2);
    Site v0 = f2.basepoint();
    Site a = vertex_of(f2, "a"), b = vertex_of(f2, "b"), ab = vertex_of(f2, "ab");
    REQUIRE(gromov_product(f2, a, b, v0) == Dist::exact(0));
    REQUIRE(gromov_product(f2, ab, a, v0) == Dist::exact(1));
    REQUIRE(gromov_product(f2, a, b, a) == Dist::exact(0));
    // symmetry in the first two arguments
    REQUIRE(gromov_product(f2, b, ab, a) == gromov_product(f2, ab, b, a));
}

TEST_CASE("in trees the gromov product is the distance to the geodesic") {
    Model psl = Model::free_product({2, 3});
    auto ball = psl.ball(psl.basepoint(), 5);
    for (const Site& x : ball)
        for (const Site& y : ball)
            for (const Site& z : ball) {
                Dist gp = gromov_product(psl, x, y, z);
                REQUIRE(gp == Dist::exact(oracle::distance_to_geodesic(psl, z, x, y)));
            }
    Model f2 = Model::free_group(2);
    auto fball = f2.ball(f2.basepoint(), 3);
    for (const Site& x : fball)
        for (const Site& y : fball)
            for (const Site& z : fball)
                REQUIRE(gromov_product(f2, x, y, z) ==
                        Dist::exact(oracle::distance_to_geodesic(f2, z, x, y)));
    Model f1 = Model::free_group(1);
    auto lball = f1.ball(f1.basepoint(), 5);
    for (const Site& x : lball)
        for (const Site& y : lball)
            for (const Site& z : lball)
                REQUIRE(gromov_product(f1, x, y, z) ==
                        Dist::exact(oracle::distance_to_geodesic(f1, z, x, y)));
}

TEST_CASE("triangle inequality and symmetry over sampled triples") {
    Model f2 = Model::free_group(2);
    auto ball = f2.ball(f2.basepoint(), 3);
    for (const Site& x : ball)
        for (const Site& y : ball) {
            REQUIRE(distance(f2, x, y) == distance(f2, y, x));
            for (const Site& z : ball) {
                Dist lhs = distance(f2, x, z);
                REQUIRE(lhs <= distance(f2, x, y) + distance(f2, y, z));
            }
        }
}

TEST_CASE("exhaustive four-point estimates vanish on trees") {
    REQUIRE(delta_estimate(Model::free_group(2), 4, -1) == Dist::exact(0));
    REQUIRE(delta_estimate(Model::free_product({2, 3}), 5, -1) == Dist::exact(0));
    REQUIRE(delta_estimate(Model::free_group(1), 5, -1) == Dist::exact(0));
    REQUIRE(delta_estimate(Model::free_product({2, 2, 3}), 4, -1) == Dist::exact(0));
}

TEST_CASE("half-plane four-point estimate is positive, flagged, bounded") {
    Model hp = Model::half_plane({std::array<double,4>{1, 1, 0, 1}, std::array<double,4>{0, -1, 1, 0}});
    Dist d = delta_estimate(hp, 2, 1000);
    REQUIRE(d.is_approximate());
    REQUIRE(d.to_double() > 0.0);
    REQUIRE(d.to_double() <= 2.0);
}

TEST_CASE("half-plane distances are approximate and symmetric") {
    Model hp = Model::half_plane({std::array<double,4>{1, 1, 0, 1}, std::array<double,4>{0, -1, 1, 0}});
    Site i = hp.basepoint();
    Site moved = hp.act(hp.parse("a"), i);
    Dist d = distance(hp, i, moved);
    REQUIRE(d.is_approximate());
    REQUIRE(d.to_double() > 0.0);
    REQUIRE(std::abs(distance(hp, moved, i).to_double() - d.to_double()) < 1e-12);
    REQUIRE(distance(hp, i, i).to_double() == 0.0);
    // the action is isometric
    Site x = hp.act(hp.parse("b"), i);
    Site gx = hp.act(hp.parse("ab"), i);
    Site gi = hp.act(hp.parse("a"), i);
    REQUIRE(std::abs(distance(hp, gi, gx).to_double() - distance(hp, i, x).to_double()) < 1e-9);
}

TEST_CASE("shadows at delta = 0 are the cylinders meeting the set") {
    Model f2 = Model::free_group(2);
    Site v0 = f2.basepoint();

    auto c1 = shadow(f2, {vertex_of(f2, "a")}, v0, 1);
    REQUIRE(c1.size() == 1);
    REQUIRE(c1[0].vertex == vertex_of(f2, "a"));

    auto all = shadow(f2, {v0}, v0, 2);
    REQUIRE(all.size() == all_cylinders(f2, v0, 2).size());

    auto c2 = shadow(f2, {vertex_of(f2, "ab")}, v0, 2);
    REQUIRE(c2.size() == 1);
    REQUIRE(c2[0].vertex == vertex_of(f2, "ab"));

    Model hp = Model::half_plane({std::array<double,4>{1, 1, 0, 1}});
    REQUIRE_THROWS_AS(shadow(hp, {hp.basepoint()}, hp.basepoint(), 1), capability_error);
}

TEST_CASE("segment points: exact midpoint distances") {
    Model f2 = Model::free_group(2);
    Site v0 = f2.basepoint();
    Site a2 = vertex_of(f2, "aa");
    SegPoint mid = seg_midpoint(f2, v0, a2);
    REQUIRE(seg_point_to_site(f2, mid, v0) == Rational(1));
    REQUIRE(seg_point_to_site(f2, mid, a2) == Rational(1));
    // midpoint of an odd segment sits on an edge
    SegPoint mid3 = seg_midpoint(f2, v0, vertex_of(f2, "aba"));
    REQUIRE(seg_point_to_site(f2, mid3, v0) == Rational(3, 2));
    SegPoint midb = seg_midpoint(f2, vertex_of(f2, "b"), vertex_of(f2, "ba"));
    // distance between two edge points, through the tripod at the basepoint
    Rational d = seg_point_distance(f2, mid3, midb);
    REQUIRE(d == Rational(3, 2) + Rational(3, 2));
}

TEST_CASE("model mismatch is rejected") {
    Model f2 = Model::free_group(2);
    Model psl = Model::free_product({2, 3});
    REQUIRE_THROWS_AS(distance(f2, f2.basepoint(), psl.basepoint()), model_mismatch_error);
    REQUIRE_THROWS_AS(f2.act(psl.parse("s"), f2.basepoint()), model_mismatch_error);
}
