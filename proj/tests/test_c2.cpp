#include <random>
#include <set>

#include "doctest.h"

#include "pbkc/c2.hpp"
#include "pbkc/error.hpp"

using namespace pbkc;

namespace {

Grid rand_grid(std::mt19937& rng, int k, int m) {
    Grid g(k, m);
    for (auto& v : g.cells) v = static_cast<Symbol>(rng());
    return g;
}

// Full encode oracle from spec metadata: shifted base parities, slot sums
// added onto slot positions, then the pairwise mix.
Grid oracle_encode(const C2Spec& spec, const Grid& data) {
    const int n = spec.n(), k = spec.k(), m = spec.m(), r = spec.r();
    Grid pre(n, m);
    for (int col = 0; col < m; ++col) {
        std::vector<Symbol> column = data.column(col, k);
        for (int row = 0; row < k; ++row) pre.at(row, col) = column[static_cast<size_t>(row)];
        for (int x = 0; x < r; ++x)
            pre.at(k + x, col) = spec.base().parity_symbol(spec.shift_index(x, col % r), column);
    }
    for (const PiggybackSlot& slot : spec.slots()) {
        Symbol sum = 0;
        for (Cell t : slot.terms) sum = gf::add(sum, data.at(t));
        pre.at(slot.pos) = gf::add(pre.at(slot.pos), sum);
    }
    Grid out = pre;
    for (const TransformPair& pr : spec.pairs()) {
        Symbol a = pre.at(pr.high), b = pre.at(pr.low);
        out.at(pr.high) = gf::add(a, b);
        out.at(pr.low) = gf::add(gf::mul(spec.theta(), a), b);
    }
    return out;
}

} // namespace

TEST_CASE("golden layout of the (12,8) instance with four column groups") {
    C2Spec spec = c2_spec(12, 8, 4, 2);
    const int k = 8, r = 4;
    REQUIRE(spec.m() == 16);
    CHECK(spec.subsets() == std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}});

    // Slot positions: subset 1 feeds the last group (columns 12..15), subset 2
    // the one before (columns 8..11); within a group the j-th slot sits at
    // parity row ceil(j/3) skipping the diagonal.
    struct Pos {
        int x, c; // 1-based row-in-parities, column-in-group
    };
    std::vector<Pos> pos_by_j = {{1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 3}, {2, 4},
                                 {3, 1}, {3, 2}, {3, 4}, {4, 1}, {4, 2}, {4, 3}};
    REQUIRE(spec.slots().size() == 24);
    for (const PiggybackSlot& slot : spec.slots()) {
        REQUIRE(slot.slot >= 1);
        REQUIRE(slot.slot <= 12);
        Pos p = pos_by_j[static_cast<size_t>(slot.slot - 1)];
        int group0 = slot.subset == 1 ? 3 : 2;
        CHECK(slot.pos == Cell{k + p.x - 1, group0 * r + p.c - 1});
        CHECK(spec.slot_at(slot.pos) >= 0);
    }

    // Subset-1 terms: the j-th slot sums global column j-1 of nodes 0..3.
    // Subset-2 terms follow the dealt order over the 4x8 leading block.
    for (const PiggybackSlot& slot : spec.slots()) {
        int j = slot.slot;
        std::vector<Cell> want;
        if (slot.subset == 1) {
            for (int node = 0; node < 4; ++node) want.push_back({node, j - 1});
        } else if (j <= 4) {
            want = {{4, j - 1}, {5, j + 3}, {7, j - 1}};
        } else if (j <= 8) {
            want = {{4, j - 1}, {6, j - 5}, {7, j - 1}};
        } else {
            want = {{5, j - 9}, {6, j - 5}};
        }
        CHECK(slot.terms == want);
    }
}

TEST_CASE("shift table places each parity function one row down per column") {
    C2Spec spec = c2_spec(12, 8, 4, 2);
    // Diagonals keep the first parity; the first parity row of in-group
    // columns 3 and 4 holds the third and second functions.
    CHECK(spec.shift_index(0, 0) == 0);
    CHECK(spec.shift_index(2, 2) == 0);
    CHECK(spec.shift_index(0, 2) == 2);
    CHECK(spec.shift_index(0, 3) == 1);
    CHECK(spec.shift_index(3, 0) == 3);
    for (int x = 0; x < 4; ++x) {
        std::set<int> seen;
        for (int i = 0; i < 4; ++i) seen.insert(spec.shift_index(x, i));
        CHECK(seen.size() == 4); // each row holds all functions across a group
    }
}

TEST_CASE("pair table mirrors off-diagonal parity cells within each group") {
    C2Spec spec = c2_spec(12, 8, 4, 2);
    const int k = 8, r = 4, s = 4;
    CHECK(spec.pairs().size() == static_cast<size_t>(s * r * (r - 1) / 2));
    std::set<Cell> covered;
    for (const TransformPair& pr : spec.pairs()) {
        CHECK(pr.x < pr.i);
        CHECK(pr.high == Cell{k + pr.x - 1, (pr.group - 1) * r + pr.i - 1});
        CHECK(pr.low == Cell{k + pr.i - 1, (pr.group - 1) * r + pr.x - 1});
        CHECK(covered.insert(pr.high).second);
        CHECK(covered.insert(pr.low).second);
    }
    // Every off-diagonal parity cell is covered; diagonals are not.
    for (int x = 0; x < r; ++x)
        for (int col = 0; col < spec.m(); ++col) {
            Cell c{k + x, col};
            bool diagonal = x == col % r;
            CHECK(covered.count(c) == (diagonal ? 0u : 1u));
            CHECK((spec.pair_at(c) >= 0) == !diagonal);
        }
}

TEST_CASE("encode matches the stage oracle") {
    std::mt19937 rng(31);
    for (auto [n, k, s, L] : {std::tuple{12, 8, 4, 2}, std::tuple{10, 6, 3, 2}, std::tuple{16, 12, 4, 2}}) {
        C2Spec spec = c2_spec(n, k, s, L);
        Grid data = rand_grid(rng, k, spec.m());
        CHECK(c2_encode(spec, data) == oracle_encode(spec, data));
    }
}

TEST_CASE("hand-computed cells of the (12,8) instance") {
    C2Spec spec = c2_spec(12, 8, 4, 2);
    std::mt19937 rng(37);
    Grid data = rand_grid(rng, 8, 16);
    Grid stripe = c2_encode(spec, data);

    // Group 1 (columns 0..3) has no piggyback slots, so its cells are pure
    // shifted parities mixed pairwise. Diagonal cells carry the plain sum
    // function f_1 unmixed.
    CHECK(stripe.at(8, 0) == spec.base().parity_symbol(0, data.column(0, 8)));
    CHECK(stripe.at(9, 1) == spec.base().parity_symbol(0, data.column(1, 8)));
    // The (x=1, i=2) pair of group 1: A = f_4 of column 1, B = f_2 of column 0.
    Symbol A = spec.base().parity_symbol(3, data.column(1, 8));
    Symbol B = spec.base().parity_symbol(1, data.column(0, 8));
    CHECK(stripe.at(8, 1) == gf::add(A, B));
    CHECK(stripe.at(9, 0) == gf::add(gf::mul(spec.theta(), A), B));
}

TEST_CASE("slot membership is an exact cover of the leading-group data cells") {
    for (auto [n, k, s, L] : {std::tuple{12, 8, 4, 2}, std::tuple{10, 6, 3, 2}}) {
        C2Spec spec = c2_spec(n, k, s, L);
        const int r = spec.r();
        std::set<Cell> seen;
        for (size_t si = 0; si < spec.slots().size(); ++si) {
            const PiggybackSlot& slot = spec.slots()[si];
            for (Cell t : slot.terms) {
                CHECK(seen.insert(t).second);
                CHECK(spec.slot_of_term(t) == static_cast<int>(si));
            }
        }
        for (int node = 0; node < k; ++node) {
            int i1 = spec.subset_of(node) + 1;
            for (int col = 0; col < spec.m(); ++col) {
                bool expect = col < (s - i1) * r;
                CHECK(seen.count({node, col}) == (expect ? 1u : 0u));
            }
        }
    }
}

TEST_CASE("repair plans rebuild every node") {
    std::mt19937 rng(41);
    for (auto [n, k, s, L] : {std::tuple{12, 8, 4, 2}, std::tuple{10, 6, 3, 2}}) {
        C2Spec spec = c2_spec(n, k, s, L);
        Grid data = rand_grid(rng, k, spec.m());
        Grid stripe = c2_encode(spec, data);
        for (int node = 0; node < n; ++node) {
            RepairPlan plan = c2_plan_repair(spec, node);
            validate_plan(plan);
            auto rebuilt = execute(spec.base(), plan, stripe);
            for (int c = 0; c < spec.m(); ++c) CHECK(rebuilt[static_cast<size_t>(c)] == stripe.at(node, c));
            RepairPlan lite = c2_plan_repair(spec, node, /*full=*/false);
            CHECK(lite.reads == plan.reads);
        }
    }
}

TEST_CASE("documented repair bandwidths of the (12,8) instance") {
    C2Spec spec = c2_spec(12, 8, 4, 2);
    std::vector<int> want = {80, 80, 80, 80, 90, 86, 86, 90, 64, 64, 64, 64};
    std::vector<int> got;
    for (int node = 0; node < 12; ++node)
        got.push_back(c2_plan_repair(spec, node, false).bandwidth());
    CHECK(got == want);
}

TEST_CASE("parameter validation rejects out-of-family shapes") {
    auto code_of = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::ProgramFault;
    };
    CHECK(code_of([] { c2_spec(12, 8, 5, 2); }) == Errc::Param);          // s > r
    CHECK(code_of([] { c2_spec(12, 8, 1, 1); }) == Errc::Param);          // s < 2
    CHECK(code_of([] { c2_spec(12, 8, 4, 4); }) == Errc::Param);          // L >= s
    CHECK(code_of([] { c2_spec(12, 8, 4, 0); }) == Errc::Param);          // L < 1
    CHECK(code_of([] { c2_spec(12, 8, 4, 2, 0); }) == Errc::Param);       // theta 0
    CHECK(code_of([] { c2_spec(12, 8, 4, 2, 1); }) == Errc::Param);       // theta 1
    CHECK(code_of([] { c2_spec(5, 1, 3, 2); }) == Errc::Param);           // L > k
    CHECK(code_of([] { c2_spec(300, 296, 4, 2); }) == Errc::Param);       // field size
}
