#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pbkc/base_mds.hpp"
#include "pbkc/grid.hpp"

namespace pbkc {

// Operand of a recovery step: either a stripe cell that the plan reads, or an
// intermediate value produced by an earlier step.
struct Src {
    enum class Kind { CellRef, Temp };
    Kind kind = Kind::CellRef;
    Cell cell{};
    int temp = -1;

    static Src of(Cell c) { return Src{Kind::CellRef, c, -1}; }
    static Src of_temp(int t) { return Src{Kind::Temp, {}, t}; }
    bool operator==(const Src&) const = default;
};

// Recovers the k data symbols of one column from k independent codeword rows
// of the base code. Produces temps out_base .. out_base+k-1, holding data
// rows 0..k-1 of that column.
struct DecodeColumnStep {
    int col = 0;
    std::vector<std::pair<int, Src>> inputs; // (base codeword row, value)
    int out_base = 0;
    int out_count = 0;
};

// out = sum of coeff * operand over GF(2^8).
struct LinCombStep {
    std::vector<std::pair<Symbol, Src>> terms;
    int out = 0;
};

// Inverts the pairwise transform: given stored values h = A + B and
// l = theta*A + B, produces A (out_a) and B (out_b).
struct PairSolveStep {
    Src high, low;
    Symbol theta = 0;
    int out_a = 0, out_b = 0;
};

using Step = std::variant<DecodeColumnStep, LinCombStep, PairSolveStep>;

// Single-node repair recipe: which cells to fetch and how to combine them.
// Plans are plain data; bandwidth is by definition the read-set size.
struct RepairPlan {
    int n = 0, m = 0, k = 0;
    int failed = 0;            // 0-based node index
    std::vector<Cell> reads;   // sorted, duplicate-free, never in row `failed`
    std::vector<Step> program; // empty when built for bandwidth accounting only
    std::vector<Src> outputs;  // m entries: the failed node's row
    int temps = 0;

    int bandwidth() const { return static_cast<int>(reads.size()); }
    bool has_program() const { return !program.empty() || m == 0; }
};

// Structural checks: reads stay inside the stripe and off the failed row,
// the program references exactly the read set, temps are defined before use,
// and outputs are well-formed. Throws Errc::ProgramFault.
void validate_plan(const RepairPlan& plan);

// Pulls cell values on demand; nullopt means the cell is unavailable.
using CellProvider = std::function<std::optional<Symbol>(Cell)>;

// Runs the recovery program and returns the failed node's m symbols.
// Touches exactly plan.reads (Errc::ProgramFault otherwise) and throws
// Errc::MissingCell when the provider cannot supply a planned cell.
std::vector<Symbol> execute(const BaseCode& base, const RepairPlan& plan, const CellProvider& fetch);
std::vector<Symbol> execute(const BaseCode& base, const RepairPlan& plan, const Grid& stripe);

// Human-readable listing with 1-based node/column coordinates.
std::string plan_text(const RepairPlan& plan);

// Incrementally assembles a plan. With `full` false only the read set is
// tracked (cheap bandwidth accounting for parameter sweeps); the emitted
// program is dropped but control flow in callers is identical either way.
class PlanBuilder {
  public:
    PlanBuilder(int n, int m, int k, int failed, bool full);

    bool full() const { return full_; }
    Src read(Cell c);
    std::vector<Src> decode_column(int col, const std::vector<std::pair<int, Cell>>& inputs);
    Src lincomb(std::vector<std::pair<Symbol, Src>> terms);
    std::pair<Src, Src> pair_solve(Cell high, Cell low, Symbol theta);
    void set_output(int col, Src value);

    RepairPlan finish();

  private:
    int new_temp() { return plan_.temps++; }

    RepairPlan plan_;
    std::vector<char> seen_;        // read-set membership, indexed row * m + col
    std::vector<char> outputs_set_; // which output columns have been assigned
    bool full_ = true;
};

} // namespace pbkc
