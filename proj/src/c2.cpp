#include "pbkc/c2.hpp"

#include <algorithm>
#include <map>

#include "pbkc/error.hpp"
#include "pbkc/gf256.hpp"

namespace pbkc {

namespace {

// First count%L subsets take the extra node; index order.
std::vector<std::vector<int>> partition_nodes(int count, int L) {
    std::vector<std::vector<int>> out(static_cast<size_t>(L));
    int base = count / L, extra = count % L, next = 0;
    for (int i = 0; i < L; ++i) {
        int size = base + (i < extra ? 1 : 0);
        for (int j = 0; j < size; ++j) out[static_cast<size_t>(i)].push_back(next++);
    }
    return out;
}

} // namespace

C2Spec c2_spec(const C2Params& p) {
    require(p.n <= 256, Errc::Param, "more nodes than field symbols");
    require(p.k >= 1, Errc::Param, "need at least one data node");
    const int r = p.r();
    require(r >= 2, Errc::Param, "need at least two parities");
    require(p.s >= 2 && p.s <= r, Errc::Param, "group count must be in [2, r]");
    require(p.L >= 1 && p.L < p.s, Errc::Param, "subset count must be in [1, s)");
    require(p.L <= p.k, Errc::Param, "more subsets than data nodes");
    require(p.theta != 0 && p.theta != 1, Errc::Param, "mixing scalar must be outside {0,1}");

    C2Spec spec;
    spec.p_ = p;
    spec.base_ = make_base_code(p.n, p.k);
    spec.subsets_ = partition_nodes(p.k, p.L);
    spec.subset_of_.assign(static_cast<size_t>(p.k), -1);
    for (int i = 0; i < p.L; ++i)
        for (int node : spec.subsets_[static_cast<size_t>(i)]) spec.subset_of_[static_cast<size_t>(node)] = i;

    const int m = p.m(), s = p.s;
    const size_t ncells = static_cast<size_t>(p.n) * m;
    spec.slot_at_.assign(ncells, -1);
    spec.term_of_.assign(ncells, -1);
    spec.pair_at_.assign(ncells, -1);

    // Subset i protects its leading (s-i)*r symbols via slots placed in
    // column group s-i+1. Slot j sits at parity row x = ceil(j/(r-1)) and
    // column c (the j-th off-diagonal position in row-major order); its terms
    // are the protected symbols whose running index is j mod r(r-1).
    for (int i = 1; i <= p.L; ++i) {
        const auto& nodes = spec.subsets_[static_cast<size_t>(i - 1)];
        const int dcols = (s - i) * r;
        const long last = static_cast<long>(nodes.size()) * dcols;
        const int group = s - i + 1;
        for (int j = 1; j <= r * (r - 1); ++j) {
            int x = (j - 1) / (r - 1) + 1;
            int o = j - (x - 1) * (r - 1);
            int c = o < x ? o : o + 1;
            PiggybackSlot slot;
            slot.subset = i;
            slot.slot = j;
            slot.pos = Cell{p.k + x - 1, (group - 1) * r + c - 1};
            for (long idx = j; idx <= last; idx += static_cast<long>(r) * (r - 1)) {
                int node = nodes[static_cast<size_t>((idx - 1) / dcols)];
                int col = static_cast<int>((idx - 1) % dcols);
                slot.terms.push_back(Cell{node, col});
            }
            int id = static_cast<int>(spec.slots_.size());
            require(spec.slot_at_[spec.cell_index(slot.pos)] < 0, Errc::Param, "slot position clash");
            spec.slot_at_[spec.cell_index(slot.pos)] = id;
            for (Cell t : slot.terms) {
                require(spec.term_of_[spec.cell_index(t)] < 0, Errc::Param, "protect symbol covered twice");
                spec.term_of_[spec.cell_index(t)] = id;
            }
            spec.slots_.push_back(std::move(slot));
        }
    }

    for (int g = 1; g <= s; ++g)
        for (int x = 1; x <= r; ++x)
            for (int i = x + 1; i <= r; ++i) {
                TransformPair pair;
                pair.group = g;
                pair.x = x;
                pair.i = i;
                pair.high = Cell{p.k + x - 1, (g - 1) * r + i - 1};
                pair.low = Cell{p.k + i - 1, (g - 1) * r + x - 1};
                int id = static_cast<int>(spec.pairs_.size());
                spec.pair_at_[spec.cell_index(pair.high)] = id;
                spec.pair_at_[spec.cell_index(pair.low)] = id;
                spec.pairs_.push_back(pair);
            }
    return spec;
}

Grid c2_encode(const C2Spec& spec, const Grid& data) {
    const int n = spec.n(), k = spec.k(), m = spec.m(), r = spec.r();
    require(data.rows == k && data.cols == m, Errc::Shape, "data grid must be k x m");
    Grid out(n, m);
    for (int row = 0; row < k; ++row)
        for (int col = 0; col < m; ++col) out.at(row, col) = data.at(row, col);

    // Base parities, cyclically shifted within each column so the diagonal of
    // every group carries the first parity function.
    for (int col = 0; col < m; ++col) {
        std::vector<Symbol> column = data.column(col, k);
        for (int x = 0; x < r; ++x)
            out.at(k + x, col) = spec.base().parity_symbol(spec.shift_index(x, col % r), column);
    }

    // Piggybacks: data terms are final values already.
    for (const PiggybackSlot& slot : spec.slots()) {
        Symbol g = 0;
        for (Cell t : slot.terms) g = gf::add(g, out.at(t));
        out.at(slot.pos) = gf::add(out.at(slot.pos), g);
    }

    // Pairwise mixing of mirrored off-diagonal parity cells.
    for (const TransformPair& pair : spec.pairs()) {
        Symbol a = out.at(pair.high), b = out.at(pair.low);
        out.at(pair.high) = gf::add(a, b);
        out.at(pair.low) = gf::add(gf::mul(spec.theta(), a), b);
    }
    return out;
}

namespace {

// Memoized per-column base-parity recomputations from decoded data temps.
class RawParity {
  public:
    RawParity(const C2Spec& spec, PlanBuilder& b) : spec_(spec), b_(b) {}

    // Requires column `col` decoded into `cols[col]` (k temps).
    Src at(int px, int col, const std::vector<std::vector<Src>>& cols) {
        auto key = std::make_pair(px, col);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::vector<std::pair<Symbol, Src>> terms;
        for (int q = 0; q < spec_.k(); ++q) {
            Symbol c = spec_.base().coeff(px, q);
            if (c != 0) terms.emplace_back(c, cols[static_cast<size_t>(col)][static_cast<size_t>(q)]);
        }
        Src src = b_.lincomb(terms);
        memo_.emplace(key, src);
        return src;
    }

  private:
    const C2Spec& spec_;
    PlanBuilder& b_;
    std::map<std::pair<int, int>, Src> memo_;
};

RepairPlan plan_repair_data(const C2Spec& spec, int node, bool full) {
    const int k = spec.k(), m = spec.m(), r = spec.r(), s = spec.s();
    const int u = spec.subset_of(node) + 1; // 1-based subset
    PlanBuilder b(spec.n(), m, k, node, full);

    // Decode the trailing u*r columns from the other k-1 data rows plus the
    // group diagonal, which holds the first parity function untouched.
    std::vector<std::vector<Src>> cols(static_cast<size_t>(m));
    for (int col = (s - u) * r; col < m; ++col) {
        std::vector<std::pair<int, Cell>> inputs;
        for (int row = 0; row < k; ++row)
            if (row != node) inputs.emplace_back(row, Cell{row, col});
        inputs.emplace_back(k, Cell{k + col % r, col});
        cols[static_cast<size_t>(col)] = b.decode_column(col, inputs);
        b.set_output(col, cols[static_cast<size_t>(col)][static_cast<size_t>(node)]);
    }

    RawParity raw(spec, b);
    std::map<int, std::pair<Src, Src>> solved_pairs; // pair id -> (pre-high, pre-low)
    for (int col = 0; col < (s - u) * r; ++col) {
        const Cell own{node, col};
        const PiggybackSlot& slot = spec.slots()[static_cast<size_t>(spec.slot_of_term(own))];
        int pid = spec.pair_at(slot.pos);
        auto it = solved_pairs.find(pid);
        if (it == solved_pairs.end()) {
            const TransformPair& pair = spec.pairs()[static_cast<size_t>(pid)];
            auto [a, bsrc] = b.pair_solve(pair.high, pair.low, spec.theta());
            it = solved_pairs.emplace(pid, std::make_pair(a, bsrc)).first;
        }
        const TransformPair& pair = spec.pairs()[static_cast<size_t>(pid)];
        Src pre = slot.pos == pair.high ? it->second.first : it->second.second;

        // pre = shifted base parity + slot sum; peel everything but our term.
        std::vector<std::pair<Symbol, Src>> terms;
        terms.emplace_back(1, pre);
        terms.emplace_back(1, raw.at(spec.shift_index(slot.pos.row - k, slot.pos.col % r), slot.pos.col, cols));
        for (Cell t : slot.terms)
            if (!(t == own)) terms.emplace_back(1, b.read(t));
        b.set_output(col, b.lincomb(std::move(terms)));
    }
    return b.finish();
}

RepairPlan plan_repair_parity(const C2Spec& spec, int node, bool full) {
    const int k = spec.k(), m = spec.m(), r = spec.r(), s = spec.s();
    const int x = node - k; // 0-based parity row
    const Symbol th = spec.theta(), inv_th = gf::inv(th);
    PlanBuilder b(spec.n(), m, k, node, full);

    // Decode this row's column class from all data rows; the diagonal cells
    // of those columns are the row's own losses, so reads stay off-row.
    std::vector<std::vector<Src>> cols(static_cast<size_t>(m));
    RawParity raw(spec, b);
    for (int g = 0; g < s; ++g) {
        int col = g * r + x;
        std::vector<std::pair<int, Cell>> inputs;
        for (int row = 0; row < k; ++row) inputs.emplace_back(row, Cell{row, col});
        cols[static_cast<size_t>(col)] = b.decode_column(col, inputs);
        b.set_output(col, raw.at(0, col, cols));
    }

    // Mirrored cells: each surviving partner in our column class combines its
    // own pre-mix value with ours; recover ours, then re-mix for the output.
    for (int g = 0; g < s; ++g) {
        int col = g * r + x;
        for (int i = 0; i < r; ++i) {
            if (i == x) continue;
            Cell partner{k + i, col};
            Src partner_src = b.read(partner);

            Src fprime = raw.at(spec.shift_index(i, x), col, cols);
            int sid = spec.slot_at(partner);
            if (sid >= 0 && !spec.slots()[static_cast<size_t>(sid)].terms.empty()) {
                std::vector<std::pair<Symbol, Src>> gsum;
                for (Cell t : spec.slots()[static_cast<size_t>(sid)].terms) gsum.emplace_back(1, b.read(t));
                Src gsrc = b.lincomb(std::move(gsum));
                fprime = b.lincomb({{1, fprime}, {1, gsrc}});
            }

            Src ours; // our pre-mix value at (node, g*r + i)
            if (i < x) // partner stored pre(partner) + pre(ours)
                ours = b.lincomb({{1, partner_src}, {1, fprime}});
            else // partner stored theta*pre(ours) + pre(partner)
                ours = b.lincomb({{inv_th, partner_src}, {inv_th, fprime}});

            int out_col = g * r + i;
            if (x < i) // our cell stored pre(ours) + pre(partner)
                b.set_output(out_col, b.lincomb({{1, ours}, {1, fprime}}));
            else // our cell stored theta*pre(partner) + pre(ours)
                b.set_output(out_col, b.lincomb({{th, fprime}, {1, ours}}));
        }
    }
    return b.finish();
}

} // namespace

RepairPlan c2_plan_repair(const C2Spec& spec, int node, bool full) {
    require(node >= 0 && node < spec.n(), Errc::Param, "node out of range");
    if (node < spec.k()) return plan_repair_data(spec, node, full);
    return plan_repair_parity(spec, node, full);
}

} // namespace pbkc
