#include "weylbott/bundle.hpp"

#include <doctest.h>

#include <random>

using namespace weylbott;

namespace {

const ParabolicDatum& P() { return ParabolicDatum::get('F', 4, 1); }

IrreducibleBundle U(std::vector<long> nonk, long t = 0) {
    return IrreducibleBundle::from_coords(P(), nonk, t);
}

BundleSum sum(const std::string& text) { return parse_bundle_sum(P(), text); }

} // namespace

TEST_CASE("ranks, twists and duals") {
    CHECK(rank_bundle(U({0, 0, 1})) == 6);
    CHECK(rank_bundle(U({0, 1, 0})) == 14);
    CHECK(rank_bundle(U({1, 0, 0})) == 14);
    CHECK(rank_bundle(U({0, 0, 2})) == 21);
    // twist invariance
    for (long t : {-3L, 0L, 5L}) CHECK(rank_bundle(U({0, 0, 2}, t)) == 21);

    CHECK(dual_bundle(U({0, 0, 1})) == U({0, 0, 1}, -1));
    CHECK(dual_bundle(U({0, 0, 0}, 3)) == U({0, 0, 0}, -3));
    for (long a2 = 0; a2 <= 2; ++a2)
        for (long a3 = 0; a3 <= 2; ++a3)
            for (long a4 = 0; a4 <= 2; ++a4) {
                IrreducibleBundle b = U({a2, a3, a4});
                IrreducibleBundle d = dual_bundle(b);
                CHECK(d == b.twisted(-3 * a2 - 2 * a3 - a4));
                CHECK(dual_bundle(d) == b);
                CHECK(rank_bundle(d) == rank_bundle(b));
            }

    CHECK_THROWS_AS(IrreducibleBundle::from_coords(P(), {-1, 0, 0}, 0), std::invalid_argument);
}

TEST_CASE("central charges") {
    const auto& p = P();
    auto charge = [&](std::vector<long> a) {
        return p.central_charge(p.ambient().from_fundamental_long(a));
    };
    CHECK(charge({0, 1, 0, 0}) == Rat(3, 2));
    CHECK(charge({0, 0, 1, 0}) == 1);
    CHECK(charge({0, 0, 0, 1}) == Rat(1, 2));
    CHECK(charge({1, 0, 0, 0}) == 1);

    // r_{omega_k} = 1 for any marked node
    for (auto [type, rank, node] : std::initializer_list<std::tuple<char, int, int>>{
             {'B', 4, 2}, {'D', 4, 2}, {'C', 3, 1}}) {
        const auto& q = ParabolicDatum::get(type, rank, node);
        CHECK(q.central_charge(q.omega_k()) == 1);
    }
}

TEST_CASE("the printed tensor table holds along both routes") {
    CHECK(tensor_bundles(U({0, 0, 1}), U({0, 0, 1})) == sum("U[0,0,2] + U[0,1,0] + O(1)"));
    CHECK(tensor_bundles(U({0, 0, 1}), U({0, 1, 0})) ==
          sum("U[0,1,1] + U[1,0,0] + U[0,0,1](1)"));
    CHECK(tensor_bundles(U({0, 0, 1}), U({1, 0, 0})) == sum("U[1,0,1] + U[0,1,0](1)"));
    CHECK(tensor_bundles(U({1, 0, 0}), U({0, 1, 0})) ==
          sum("U[1,1,0] + U[0,1,1](1) + U[0,0,1](2)"));
    CHECK(tensor_bundles(U({1, 0, 0}), U({1, 0, 0})) ==
          sum("U[2,0,0] + U[0,2,0](1) + U[0,0,2](2) + O(3)"));
    CHECK(tensor_bundles(U({0, 0, 2}), U({0, 0, 1})) ==
          sum("U[0,0,3] + U[0,1,1] + U[0,0,1](1)"));
    CHECK(tensor_bundles(U({0, 0, 2}), U({0, 1, 0})) ==
          sum("U[0,1,2] + U[1,0,1] + U[0,0,2](1) + U[0,1,0](1)"));
    CHECK(tensor_bundles(U({0, 0, 2}), U({1, 0, 0})) ==
          sum("U[1,0,2] + U[0,1,1](1) + U[1,0,0](1)"));
    CHECK(tensor_bundles(U({0, 0, 1}, -1), U({0, 0, 1}, -1)) ==
          sum("O(-1) + U[0,1,0](-2) + U[0,0,2](-2)"));
}

TEST_CASE("exterior and symmetric powers of the small bundles") {
    CHECK(exterior_bundle(U({0, 0, 1}), 2) == sum("U[0,1,0] + O(1)"));
    CHECK(exterior_bundle(U({0, 0, 1}), 3) == sum("U[1,0,0] + U[0,0,1](1)"));
    CHECK(exterior_bundle(U({0, 0, 1}), 6) == sum("O(3)"));
    CHECK(symmetric_bundle(U({0, 0, 1}), 4) == sum("U[0,0,4]"));
    CHECK(exterior_bundle(U({0, 1, 0}), 2) == sum("U[1,0,1] + U[0,0,2](1)"));
    CHECK(exterior_bundle(U({0, 1, 0}), 3) ==
          sum("U[2,0,0] + U[0,1,2](1) + U[1,0,1](1) + U[0,0,2](2)"));
    CHECK_THROWS_AS(exterior_bundle(U({0, 0, 1}), 7), std::invalid_argument);

    for (long k = 0; k <= 6; ++k)
        CHECK(exterior_bundle(U({0, 0, 1}), k).rank() == binomial(6, k));
}

TEST_CASE("route agreement, twist equivariance, charge conservation") {
    std::mt19937_64 rng(777);
    const auto& p = P();
    for (int trial = 0; trial < 20; ++trial) {
        auto rand_bundle = [&] {
            return U({long(rng() % 3), long(rng() % 3), long(rng() % 3)},
                     long(rng() % 5) - 2);
        };
        IrreducibleBundle a = rand_bundle(), b = rand_bundle();
        BundleSum klimyk = tensor_bundles(a, b, TensorRoute::Klimyk);
        BundleSum central = tensor_bundles(a, b, TensorRoute::CentralCharge);
        CHECK(klimyk == central);

        // rank multiplicativity
        CHECK(klimyk.rank() == rank_bundle(a) * rank_bundle(b));

        // twist equivariance
        CHECK(tensor_bundles(a.twisted(2), b.twisted(-1), TensorRoute::Klimyk) ==
              klimyk.twisted(1));

        // central-charge conservation term by term
        Rat want = p.central_charge(a.highest_weight()) + p.central_charge(b.highest_weight());
        for (const auto& [term, m] : klimyk.terms())
            CHECK(p.central_charge(term.highest_weight()) == want);
    }
}

TEST_CASE("bundle grammar round trips") {
    for (const std::string text :
         {"O", "O(-3)", "U[0,0,1]", "U[2,0,1](-4)", "U[0,1,0](2)"}) {
        IrreducibleBundle b = parse_bundle(P(), text);
        CHECK(b.str() == text);
    }
    BundleSum s = sum("3*U[0,1,0](-2) + O(1) + U[0,0,2]");
    CHECK(parse_bundle_sum(P(), s.str()) == s);
    CHECK(s.rank() == 3 * 14 + 1 + 21);

    CHECK_THROWS_AS(parse_bundle(P(), "U[0,0]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bundle(P(), "Q[0,0,0]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bundle(P(), "O(1) extra"), std::invalid_argument);
}

TEST_CASE("bundle calculus on another parabolic") {
    const auto& d4p2 = ParabolicDatum::get('D', 4, 2);
    auto rk = [&](std::vector<long> nonk) {
        return rank_bundle(IrreducibleBundle::from_coords(d4p2, nonk, 0));
    };
    CHECK(rk({1, 0, 0}) == 2);
    CHECK(rk({0, 1, 0}) == 2);
    CHECK(rk({0, 0, 1}) == 2);
    CHECK(rk({1, 1, 0}) == 4);
    CHECK(rk({2, 0, 0}) == 3);
}
