#include <numeric>
#include <random>

#include "doctest.h"

#include "pbkc/code.hpp"
#include "pbkc/error.hpp"

using namespace pbkc;

namespace {

Grid rand_grid(std::mt19937& rng, int k, int m) {
    Grid g(k, m);
    for (auto& v : g.cells) v = static_cast<Symbol>(rng());
    return g;
}

} // namespace

TEST_CASE("facade accessors agree with the underlying specs") {
    CodeSpec a = c1_spec(11, 6, 4, 2);
    CHECK(code_variant(a) == 1);
    CHECK(code_n(a) == 11);
    CHECK(code_k(a) == 6);
    CHECK(code_r(a) == 5);
    CHECK(code_m(a) == 4);
    CHECK(code_L(a) == 2);
    CHECK(code_base(a).n() == 11);

    CodeSpec b = c2_spec(12, 8, 4, 2);
    CHECK(code_variant(b) == 2);
    CHECK(code_m(b) == 16);
    CHECK(code_r(b) == 4);
}

TEST_CASE("generator columns reproduce unit encodes") {
    for (CodeSpec spec : {CodeSpec(c1_spec(11, 6, 4, 2)), CodeSpec(c2_spec(10, 6, 3, 2))}) {
        const int n = code_n(spec), k = code_k(spec), m = code_m(spec);
        Mat gen = build_generator(spec);
        REQUIRE(gen.nr == n * m);
        REQUIRE(gen.nc == k * m);
        std::mt19937 rng(5);
        Grid data = rand_grid(rng, k, m);
        Grid stripe = code_encode(spec, data);
        std::vector<Symbol> flat(static_cast<size_t>(k) * m);
        for (int col = 0; col < m; ++col)
            for (int row = 0; row < k; ++row)
                flat[static_cast<size_t>(col) * k + row] = data.at(row, col);
        std::vector<Symbol> out = mat_vec(gen, flat);
        for (int node = 0; node < n; ++node)
            for (int col = 0; col < m; ++col)
                CHECK(out[static_cast<size_t>(node) * m + col] == stripe.at(node, col));
    }
}

TEST_CASE("decode recovers data from arbitrary k-subsets") {
    std::mt19937 rng(11);
    for (CodeSpec spec : {CodeSpec(c1_spec(11, 6, 4, 2)), CodeSpec(c2_spec(12, 8, 4, 2))}) {
        const int n = code_n(spec), k = code_k(spec), m = code_m(spec);
        Grid data = rand_grid(rng, k, m);
        Grid stripe = code_encode(spec, data);
        std::vector<int> all(static_cast<size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<int> nodes;
            std::sample(all.begin(), all.end(), std::back_inserter(nodes), static_cast<size_t>(k), rng);
            std::shuffle(nodes.begin(), nodes.end(), rng); // order must not matter
            DecodeSolver solver(spec, nodes);
            CHECK(solver.decode(stripe) == data);
            std::vector<std::vector<Symbol>> rows;
            for (int node : nodes) {
                std::vector<Symbol> row(static_cast<size_t>(m));
                for (int c = 0; c < m; ++c) row[static_cast<size_t>(c)] = stripe.at(node, c);
                rows.push_back(std::move(row));
            }
            CHECK(code_decode(spec, nodes, rows) == data);
        }
    }
}

TEST_CASE("decode solver validates its node list") {
    CodeSpec spec = c1_spec(11, 6, 4, 2);
    CHECK_THROWS_AS(DecodeSolver(spec, std::vector<int>{0, 1, 2, 3, 4}), Error);       // too few
    CHECK_THROWS_AS(DecodeSolver(spec, std::vector<int>{0, 1, 2, 3, 4, 4}), Error);    // duplicate
    CHECK_THROWS_AS(DecodeSolver(spec, std::vector<int>{0, 1, 2, 3, 4, 11}), Error);   // range
}

TEST_CASE("mds verification passes the reference instances") {
    MdsReport a = verify_mds(c1_spec(11, 6, 4, 2));
    CHECK(a.ok);
    CHECK(a.exhaustive);
    CHECK(a.total == 462);
    CHECK(a.checked == 462);

    MdsReport b = verify_mds(c2_spec(12, 8, 4, 2));
    CHECK(b.ok);
    CHECK(b.exhaustive);
    CHECK(b.total == 495);
    CHECK(b.checked == 495);
}

TEST_CASE("mds verification samples when the subset count is too large") {
    MdsReport rep = verify_mds(c1_spec(24, 18, 4, 2), /*max_exhaustive=*/1000, /*samples=*/50, /*seed=*/3);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.checked == 50);
    CHECK(rep.total == 134596); // C(24,18)
    CHECK(rep.ok);
}

TEST_CASE("repair bandwidth summary matches per-node plans") {
    CodeSpec spec = c2_spec(12, 8, 4, 2);
    std::vector<int> bw = repair_bandwidths(spec);
    REQUIRE(bw.size() == 12);
    for (int node = 0; node < 12; ++node)
        CHECK(bw[static_cast<size_t>(node)] == code_plan_repair(spec, node, false).bandwidth());
}
