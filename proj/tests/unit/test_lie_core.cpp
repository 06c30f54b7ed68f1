#include "weylbott/root_datum.hpp"

#include <doctest.h>

#include <random>

using namespace weylbott;

namespace {

Weight fw(const RootDatum& d, std::vector<long> a) { return d.from_fundamental_long(a); }

// independent singularity oracle: a weight is singular iff it is orthogonal
// to some root
bool on_some_wall(const RootDatum& d, const Weight& w) {
    for (const auto& alpha : d.positive_roots())
        if (dot(w, alpha) == 0) return true;
    return false;
}

} // namespace

TEST_CASE("root data satisfy the defining invariants") {
    struct Row {
        char type;
        int rank;
        std::size_t positives;
    };
    for (Row row : {Row{'F', 4, 24}, Row{'B', 4, 16}, Row{'D', 4, 12}, Row{'C', 3, 9},
                    Row{'A', 1, 1}, Row{'A', 2, 3}, Row{'B', 2, 4}, Row{'G', 2, 6}}) {
        const RootDatum& d = RootDatum::get(row.type, row.rank);
        CAPTURE(d.name());
        CHECK(d.positive_roots().size() == row.positives);

        // coroot pairing of fundamental weights is the identity matrix
        for (int i = 0; i < d.rank(); ++i)
            for (int j = 0; j < d.rank(); ++j)
                CHECK(coroot_pairing(d.fundamental_weights()[std::size_t(i)],
                                     d.simple_roots()[std::size_t(j)]) == (i == j ? 1 : 0));

        // rho both as the fundamental sum and half the positive sum
        Weight s = Weight::zero(d.ambient_dim());
        for (const auto& w : d.fundamental_weights()) s += w;
        CHECK(s == d.rho());
        Weight h = Weight::zero(d.ambient_dim());
        for (const auto& r : d.positive_roots()) h += r;
        h *= Rat(1, 2);
        CHECK(h == d.rho());

        for (int i = 0; i < d.rank(); ++i)
            for (int j = 0; j < d.rank(); ++j) {
                if (i == j)
                    CHECK(d.cartan_matrix()[std::size_t(i)][std::size_t(j)] == 2);
                else
                    CHECK(d.cartan_matrix()[std::size_t(i)][std::size_t(j)] <= 0);
            }
    }
}

TEST_CASE("the F4 realization matches the Bourbaki tables") {
    const RootDatum& f4 = RootDatum::get('F', 4);
    CHECK(f4.rho() == Weight({Rat(11, 2), Rat(5, 2), Rat(3, 2), Rat(1, 2)}));
    CHECK(f4.fundamental_weights()[0] == Weight({Rat(1), Rat(1), Rat(0), Rat(0)}));
    CHECK(f4.fundamental_weights()[3] == Weight({Rat(1), Rat(0), Rat(0), Rat(0)}));

    // 48 roots: 8 of type +-e_i, 24 of type +-e_i +- e_j, 16 half-sums
    long single = 0, pairs = 0, halves = 0;
    auto roots = f4.orbit(f4.positive_roots().back(), f4.all_walls());
    for (const auto& r : f4.positive_roots()) {
        long nonzero = 0;
        bool half = false;
        for (std::size_t i = 0; i < 4; ++i) {
            if (r[i] != 0) ++nonzero;
            if (denominator(r[i]) == 2) half = true;
        }
        if (half)
            ++halves;
        else if (nonzero == 1)
            ++single;
        else
            ++pairs;
    }
    CHECK(single == 4);
    CHECK(pairs == 12);
    CHECK(halves == 8);

    CHECK(RootDatum::get('A', 1).positive_roots().size() == 1);
    CHECK(RootDatum::get('A', 1).rho() == RootDatum::get('A', 1).fundamental_weights()[0]);

    CHECK_THROWS_AS(RootDatum::get('E', 8), std::invalid_argument);
    CHECK_THROWS_AS(RootDatum::get('H', 3), std::invalid_argument);
}

TEST_CASE("dominantization walks to the dominant chamber") {
    const RootDatum& f4 = RootDatum::get('F', 4);

    SUBCASE("the shifted weight of the tangent extension lands on rho") {
        Weight lam = fw(f4, {-2, 1, 0, 0}) + f4.rho();
        CHECK(lam == Weight({Rat(11, 2), Rat(3, 2), Rat(5, 2), Rat(1, 2)}));
        Dominantization d = f4.dominantize(lam);
        CHECK(d.dominant == f4.rho());
        CHECK(d.length == 1);
        CHECK_FALSE(d.singular);
    }

    SUBCASE("dominant input returns itself with length 0") {
        Dominantization d = f4.dominantize(f4.rho());
        CHECK(d.dominant == f4.rho());
        CHECK(d.length == 0);
        CHECK_FALSE(d.singular);
    }

    SUBCASE("marked coordinate -1 forces singularity") {
        Weight lam = fw(f4, {-1, 0, 0, 1}) + f4.rho();
        Dominantization d = f4.dominantize(lam);
        CHECK(d.singular);
        CHECK(on_some_wall(f4, lam)); // direct wall-equation oracle agrees
    }

    SUBCASE("orbit independence and reflection parity") {
        std::mt19937_64 rng(2718);
        Weight lam = fw(f4, {3, 1, 0, 2});
        for (int trial = 0; trial < 40; ++trial) {
            Weight moved = lam;
            RatMatrix prod = RatMatrix::identity(4);
            for (int step = 0; step < 12; ++step) {
                int i = int(rng() % 4);
                const Weight& alpha = f4.simple_roots()[std::size_t(i)];
                moved = reflect(moved, alpha);
                prod = reflection_matrix(alpha, 4) * prod;
            }
            RatMatrix acc;
            Dominantization d = f4.dominantize_tracked(moved, f4.all_walls(), &acc);
            CHECK(d.dominant == lam);
            Rat det = acc.det();
            CHECK(det == (d.length % 2 == 0 ? 1 : -1));
        }
    }

    SUBCASE("singularity agrees with the wall equations across the scan box") {
        // the twist families scanned for acyclicity, here against the
        // orthogonality oracle
        const std::vector<std::vector<long>> families = {
            {0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 2, 0, 0}, {0, 0, 2, 0},
            {0, 0, 0, 2}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 0, 2}, {0, 0, 0, 3}};
        for (const auto& fam : families)
            for (long t = -12; t <= 4; ++t) {
                std::vector<long> a = fam;
                a[0] = t;
                Weight shifted = fw(f4, a) + f4.rho();
                CHECK(f4.dominantize(shifted).singular == on_some_wall(f4, shifted));
            }
    }
}

TEST_CASE("Weyl group orders and the orbit-enumeration oracle") {
    CHECK(RootDatum::get('F', 4).weyl_order() == 1152);
    CHECK(RootDatum::get('B', 4).weyl_order() == 384);
    CHECK(RootDatum::get('D', 4).weyl_order() == 192);
    CHECK(RootDatum::get('C', 3).weyl_order() == 48);

    // exhaustive orbit of a regular weight realizes the full group
    const RootDatum& f4 = RootDatum::get('F', 4);
    CHECK(Int(f4.orbit(f4.rho(), f4.all_walls()).size()) == f4.weyl_order());
    const RootDatum& b4 = RootDatum::get('B', 4);
    CHECK(Int(b4.orbit(b4.rho(), b4.all_walls()).size()) == b4.weyl_order());

    const ParabolicDatum& f4p1 = ParabolicDatum::get('F', 4, 1);
    CHECK(f4p1.levi_semisimple_type() == "C3");
    CHECK(f4p1.levi_weyl_order() == 48);
    CHECK(f4p1.levi_positive_roots().size() == 9);
    CHECK(RootDatum::get('F', 4).weyl_order() / f4p1.levi_weyl_order() == 24);

    const ParabolicDatum& b4p2 = ParabolicDatum::get('B', 4, 2);
    CHECK(b4p2.levi_semisimple_type() == "A1xB2");
    CHECK(b4p2.levi_weyl_order() == 16);
    CHECK(RootDatum::get('B', 4).weyl_order() / b4p2.levi_weyl_order() == 24);

    const ParabolicDatum& d4p2 = ParabolicDatum::get('D', 4, 2);
    CHECK(d4p2.levi_semisimple_type() == "A1xA1xA1");
    CHECK(d4p2.dim_gp() == 9);
}

TEST_CASE("longest Levi element acts by the closed form") {
    const ParabolicDatum& p = ParabolicDatum::get('F', 4, 1);
    std::mt19937_64 rng(31415);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rat> c;
        for (int i = 0; i < 4; ++i) c.emplace_back(long(rng() % 19) - 9, 1 + long(rng() % 3));
        Weight lam{c};
        Weight img = p.longest_levi_image(lam);
        CHECK(img == Weight({c[1], c[0], -c[2], -c[3]}));
        CHECK(p.longest_levi_image(img) == lam); // involution
    }
    CHECK(p.longest_levi_image(Weight::zero(4)).is_zero());

    // full group: w0 = -1 in type F4
    const RootDatum& f4 = RootDatum::get('F', 4);
    Weight lam = fw(f4, {2, -1, 3, 5});
    CHECK(f4.w0_matrix().apply(lam) == -lam);
}

TEST_CASE("nilradical weights carry the marked-node grading") {
    const ParabolicDatum& p = ParabolicDatum::get('F', 4, 1);
    CHECK(p.nilradical().size() == 15);
    CHECK(p.dim_gp() == 15);
    CHECK(p.fano_index() == 8);

    const RootDatum& f4 = RootDatum::get('F', 4);
    std::set<Weight> ldom;
    long deg2 = 0;
    for (const auto& e : p.nilradical()) {
        if (e.l_dominant) ldom.insert(e.weight);
        if (e.degree == 2) ++deg2;
        CHECK((e.degree == 1 || e.degree == 2));
    }
    CHECK(deg2 == 1);
    CHECK(ldom == std::set<Weight>{fw(f4, {-2, 1, 0, 0}), fw(f4, {-1, 0, 0, 1}),
                                   fw(f4, {-1, 0, 0, 0})});

    const ParabolicDatum& a1 = ParabolicDatum::get('A', 1, 1);
    REQUIRE(a1.nilradical().size() == 1);
    CHECK(a1.nilradical()[0].weight == -RootDatum::get('A', 1).simple_roots()[0]);
}

TEST_CASE("lattice membership and coordinate round trips") {
    const RootDatum& a2 = RootDatum::get('A', 2);
    Weight w = fw(a2, {1, 2});
    CHECK(a2.is_lattice_weight(w));
    auto coords = a2.fundamental_coords(w);
    CHECK(coords == std::vector<Rat>{Rat(1), Rat(2)});
    CHECK(a2.from_fundamental(coords) == w);

    Weight half = w;
    half *= Rat(1, 2);
    CHECK_FALSE(a2.is_lattice_weight(half));

    const RootDatum& f4 = RootDatum::get('F', 4);
    CHECK(f4.is_lattice_weight(f4.rho()));
    CHECK(f4.scale() >= 2);
    CHECK(f4.from_scaled(f4.to_scaled(f4.rho())) == f4.rho());
}
