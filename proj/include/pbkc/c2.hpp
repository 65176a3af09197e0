#pragma once

#include <vector>

#include "pbkc/base_mds.hpp"
#include "pbkc/grid.hpp"
#include "pbkc/repair_plan.hpp"

namespace pbkc {

struct C2Params {
    int n = 0, k = 0, s = 0, L = 0;
    Symbol theta = 0x02;
    int r() const { return n - k; }
    int m() const { return s * r(); }
};

// One piggyback slot: an off-diagonal parity cell of a trailing column group
// plus the ordered data cells summed into it.
struct PiggybackSlot {
    int subset = 0, slot = 0; // 1-based (i, j), j in 1..r(r-1)
    Cell pos{};
    std::vector<Cell> terms;
};

// Pairwise coupling of two mirrored parity cells within one column group:
// stored(high) = A + B, stored(low) = theta*A + B for pre-transform values
// A at `high` (parity row x, column-in-group i, x < i) and B at `low`.
struct TransformPair {
    int group = 0;   // 1-based
    int x = 0, i = 0; // 1-based, x < i
    Cell high{}, low{};
};

// Second family: sub-packetization m = s*r, organized as s column groups of
// r base codewords each. Parities are cyclically shifted within each column
// (the diagonal keeps f_1), data nodes are split into L subsets whose leading
// group PS feed r(r-1) piggyback slots per trailing group, and mirrored
// off-diagonal parity cells are pairwise mixed with a fixed theta.
class C2Spec {
  public:
    const C2Params& params() const { return p_; }
    int n() const { return p_.n; }
    int k() const { return p_.k; }
    int s() const { return p_.s; }
    int L() const { return p_.L; }
    int r() const { return p_.r(); }
    int m() const { return p_.m(); }
    Symbol theta() const { return p_.theta; }
    const BaseCode& base() const { return base_; }

    // Data-node subsets in index order, 0-based node ids.
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }
    int subset_of(int node) const { return subset_of_[static_cast<size_t>(node)]; } // data nodes only
    const std::vector<PiggybackSlot>& slots() const { return slots_; }
    const std::vector<TransformPair>& pairs() const { return pairs_; }

    // Which parity function sits (pre-piggyback) at parity row x0, column
    // index-in-group i0: 0-based result ((x0 - i0) mod r).
    int shift_index(int x0, int i0) const { return ((x0 - i0) % r() + r()) % r(); }

    // Slot whose position is this parity cell, -1 if none (piggyback-free
    // groups and diagonals). Also: slot summing over a given data cell.
    int slot_at(Cell pos) const { return slot_at_[cell_index(pos)]; }
    int slot_of_term(Cell c) const { return term_of_[cell_index(c)]; }
    // Transform pair owning this off-diagonal parity cell, -1 on diagonals.
    int pair_at(Cell c) const { return pair_at_[cell_index(c)]; }

  private:
    friend C2Spec c2_spec(const C2Params&);
    size_t cell_index(Cell c) const { return static_cast<size_t>(c.row) * m() + c.col; }

    C2Params p_;
    BaseCode base_;
    std::vector<std::vector<int>> subsets_;
    std::vector<int> subset_of_;
    std::vector<PiggybackSlot> slots_;
    std::vector<TransformPair> pairs_;
    std::vector<int> slot_at_, term_of_, pair_at_;
};

// Validates parameters (2 <= s <= r, 1 <= L < s, L <= k, theta outside
// {0,1}, n <= 256) and precomputes slots and pairs.
C2Spec c2_spec(const C2Params& p);
inline C2Spec c2_spec(int n, int k, int s, int L, Symbol theta = 0x02) {
    return c2_spec(C2Params{n, k, s, L, theta});
}

// Systematic encode of a k x m data grid into the n x m stripe.
Grid c2_encode(const C2Spec& spec, const Grid& data);

// Single-node repair plan; `full` false keeps only the read set.
RepairPlan c2_plan_repair(const C2Spec& spec, int node, bool full = true);

} // namespace pbkc
