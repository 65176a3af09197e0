#pragma once

#include <vector>

#include "pbkc/base_mds.hpp"
#include "pbkc/grid.hpp"
#include "pbkc/repair_plan.hpp"

namespace pbkc {

struct C1Params {
    int n = 0, k = 0, m = 0, L = 0;
    int r() const { return n - k; }
};

// One piggyback function g(alpha, beta): the ordered cells it sums over and
// the parity cell the sum is added to.
struct Piggyback {
    int alpha = 0, beta = 0; // 1-based construction indices
    Cell target{};
    std::vector<Cell> terms;
};

// First family: n x m array code with 2 <= m <= n-k columns per node. Nodes
// are split into L subsets; the leading columns of each subset's nodes are
// protect symbols, dealt round-robin (stride r-1) into (r-1)*L piggyback
// functions that land on parity cells of the trailing L columns. Parity cells
// of the leading m-L columns join the last subset's functions through the
// anti-diagonal rule.
class C1Spec {
  public:
    const C1Params& params() const { return p_; }
    int n() const { return p_.n; }
    int k() const { return p_.k; }
    int m() const { return p_.m; }
    int L() const { return p_.L; }
    int r() const { return p_.r(); }
    const BaseCode& base() const { return base_; }

    // Node subsets in index order, 0-based node ids.
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }
    int subset_of(int node) const { return subset_of_[static_cast<size_t>(node)]; }
    int pos_in_subset(int node) const { return pos_in_subset_[static_cast<size_t>(node)]; }

    const std::vector<Piggyback>& piggybacks() const { return piggybacks_; }
    const Piggyback& piggyback(int alpha, int beta) const; // 1-based lookup

    // Index into piggybacks() of the function summing over this cell,
    // or -1 when the cell is not a protect symbol.
    int piggyback_of(Cell c) const { return term_of_[cell_index(c)]; }

    bool is_protect_symbol(Cell c) const { return piggyback_of(c) >= 0; }

  private:
    friend C1Spec c1_spec(const C1Params&);
    size_t cell_index(Cell c) const { return static_cast<size_t>(c.row) * p_.m + c.col; }

    C1Params p_;
    BaseCode base_;
    std::vector<std::vector<int>> subsets_;
    std::vector<int> subset_of_, pos_in_subset_;
    std::vector<Piggyback> piggybacks_;
    std::vector<int> term_of_;
};

// Validates parameters and precomputes the layout. Throws Errc::Param on
// violations (r >= 4, 2 <= m <= r, 1 <= L < m, floor(n/L) >= r, n <= 256,
// and the m == r with L == 1 corner that would place a piggyback function in
// the same parity row as one of its own terms).
C1Spec c1_spec(const C1Params& p);
inline C1Spec c1_spec(int n, int k, int m, int L) { return c1_spec(C1Params{n, k, m, L}); }

// Systematic encode of a k x m data grid into the n x m stripe.
Grid c1_encode(const C1Spec& spec, const Grid& data);

// Single-node repair plan; `full` false skips program emission and keeps
// only the read set (bandwidth accounting).
RepairPlan c1_plan_repair(const C1Spec& spec, int node, bool full = true);

} // namespace pbkc
