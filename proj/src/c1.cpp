#include "pbkc/c1.hpp"

#include <string>

#include "pbkc/error.hpp"

namespace pbkc {

namespace {

// First n%L subsets get the extra node; subsets list node ids in index order.
std::vector<std::vector<int>> partition_nodes(int count, int L) {
    std::vector<std::vector<int>> subsets(static_cast<size_t>(L));
    int q = count / L, extra = count % L, next = 0;
    for (int i = 0; i < L; ++i) {
        int size = q + (i < extra ? 1 : 0);
        subsets[static_cast<size_t>(i)].reserve(static_cast<size_t>(size));
        for (int j = 0; j < size; ++j) subsets[static_cast<size_t>(i)].push_back(next++);
    }
    return subsets;
}

} // namespace

const Piggyback& C1Spec::piggyback(int alpha, int beta) const {
    // Functions are generated beta-major, alpha ascending.
    size_t idx = static_cast<size_t>(beta - 1) * (r() - 1) + (alpha - 1);
    return piggybacks_[idx];
}

C1Spec c1_spec(const C1Params& p) {
    int n = p.n, k = p.k, m = p.m, L = p.L;
    int r = n - k;
    require(n <= 256, Errc::Param, "c1: n exceeds field size");
    require(k >= 1, Errc::Param, "c1: k must be positive");
    require(r >= 4, Errc::Param, "c1: needs n - k >= 4");
    require(m >= 2 && m <= r, Errc::Param, "c1: needs 2 <= m <= n - k");
    require(L >= 1 && L < m, Errc::Param, "c1: needs 1 <= L < m");
    require(n / L >= r, Errc::Param, "c1: needs floor(n/L) >= n - k");
    // With m == r and L == 1 the anti-diagonal rule maps the parity cells
    // f_x(a_{r-1}) into the function targeted at their own row, which breaks
    // parity repair; such specs are rejected.
    require(!(m == r && L == 1), Errc::Param, "c1: m == n - k requires L >= 2");

    C1Spec spec;
    spec.p_ = p;
    spec.base_ = make_base_code(n, k);
    spec.subsets_ = partition_nodes(n, L);
    spec.subset_of_.assign(static_cast<size_t>(n), 0);
    spec.pos_in_subset_.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < L; ++i)
        for (size_t pos = 0; pos < spec.subsets_[static_cast<size_t>(i)].size(); ++pos) {
            int node = spec.subsets_[static_cast<size_t>(i)][pos];
            spec.subset_of_[static_cast<size_t>(node)] = i;
            spec.pos_in_subset_[static_cast<size_t>(node)] = static_cast<int>(pos);
        }

    // Protect symbol with 1-based linear index `idx` within subset `beta`
    // (also 1-based): node position (idx-1)/w, column (idx-1)%w, w = m-beta.
    auto ps_cell = [&](int beta, long idx) {
        int w = m - beta;
        long q = (idx - 1) / w, col = (idx - 1) % w;
        return Cell{spec.subsets_[static_cast<size_t>(beta - 1)][static_cast<size_t>(q)], static_cast<int>(col)};
    };

    spec.term_of_.assign(static_cast<size_t>(n) * m, -1);
    auto add_term = [&](Piggyback& pb, Cell c) {
        size_t ci = static_cast<size_t>(c.row) * m + c.col;
        require(spec.term_of_[ci] < 0, Errc::Param, "c1: internal: protect symbol covered twice");
        spec.term_of_[ci] = static_cast<int>(spec.piggybacks_.size());
        pb.terms.push_back(c);
    };

    int last = L;
    long data_ps_last = static_cast<long>(spec.subsets_[static_cast<size_t>(last - 1)].size() - r) * (m - last);
    int delta = ((m - last) * r) % (r - 1);
    for (int beta = 1; beta <= L; ++beta) {
        long p_beta = static_cast<long>(spec.subsets_[static_cast<size_t>(beta - 1)].size()) * (m - beta);
        for (int alpha = 1; alpha <= r - 1; ++alpha) {
            Piggyback pb;
            pb.alpha = alpha;
            pb.beta = beta;
            pb.target = Cell{k + alpha, m - beta};
            if (beta < last) {
                for (long idx = alpha; idx <= p_beta; idx += r - 1) add_term(pb, ps_cell(beta, idx));
            } else {
                // Data-node protect symbols of the last subset continue the
                // round-robin after the r*(m-L) parity cells, hence the
                // offset; non-positive indices fall away.
                for (long idx = alpha - delta; idx <= data_ps_last; idx += r - 1)
                    if (idx >= 1) add_term(pb, ps_cell(last, idx));
                for (int x = 1; x <= r; ++x)
                    for (int y = 1; y <= m - last; ++y) {
                        int a = (x + y <= r) ? x + y - 1 : x + y - r;
                        if (a == alpha) add_term(pb, Cell{k + x - 1, y - 1});
                    }
            }
            spec.piggybacks_.push_back(std::move(pb));
        }
    }
    return spec;
}

Grid c1_encode(const C1Spec& spec, const Grid& data) {
    int n = spec.n(), k = spec.k(), m = spec.m();
    require(data.rows == k && data.cols == m, Errc::Shape, "c1: data grid must be k x m");
    Grid stripe(n, m);
    for (int c = 0; c < m; ++c) {
        auto col = data.column(c, k);
        for (int row = 0; row < k; ++row) stripe.at(row, c) = col[static_cast<size_t>(row)];
        auto parity = spec.base().encode_column(col);
        for (int x = 0; x < spec.r(); ++x) stripe.at(k + x, c) = parity[static_cast<size_t>(x)];
    }
    // Terms are never piggyback targets, so current values are final values.
    for (const Piggyback& pb : spec.piggybacks()) {
        Symbol g = 0;
        for (Cell t : pb.terms) g = gf::add(g, stripe.at(t));
        stripe.at(pb.target) = gf::add(stripe.at(pb.target), g);
    }
    return stripe;
}

namespace {

// Data columns of one column instance, decoded from the k-1 surviving data
// rows plus the first parity row (which never carries a piggyback).
std::vector<Src> decode_without(PlanBuilder& b, const C1Spec& spec, int col, int skip_node) {
    std::vector<std::pair<int, Cell>> inputs;
    inputs.reserve(static_cast<size_t>(spec.k()));
    for (int row = 0; row < spec.k(); ++row)
        if (row != skip_node) inputs.emplace_back(row, Cell{row, col});
    inputs.emplace_back(spec.k(), Cell{spec.k(), col});
    return b.decode_column(col, inputs);
}

std::vector<Src> decode_from_data(PlanBuilder& b, const C1Spec& spec, int col) {
    std::vector<std::pair<int, Cell>> inputs;
    inputs.reserve(static_cast<size_t>(spec.k()));
    for (int row = 0; row < spec.k(); ++row) inputs.emplace_back(row, Cell{row, col});
    return b.decode_column(col, inputs);
}

// coeff-weighted sum f_{x+1}(column) over decoded data temps, as lincomb terms.
void append_parity_terms(std::vector<std::pair<Symbol, Src>>& terms, const C1Spec& spec, int x,
                         const std::vector<Src>& col_data) {
    for (int row = 0; row < spec.k(); ++row) {
        Symbol c = spec.base().coeff(x, row);
        if (c) terms.emplace_back(c, col_data[static_cast<size_t>(row)]);
    }
}

RepairPlan plan_repair_data(const C1Spec& spec, int node, bool full) {
    int k = spec.k(), m = spec.m();
    int i = spec.subset_of(node) + 1; // 1-based subset index
    PlanBuilder b(spec.n(), m, k, node, full);

    // Trailing i columns: decode around the failed row.
    std::vector<std::vector<Src>> col_data(static_cast<size_t>(m));
    for (int col = m - i; col < m; ++col) {
        col_data[static_cast<size_t>(col)] = decode_without(b, spec, col, node);
        b.set_output(col, col_data[static_cast<size_t>(col)][static_cast<size_t>(node)]);
    }

    // Leading m-i columns are protect symbols: peel each one out of its
    // piggyback function.
    for (int col = 0; col < m - i; ++col) {
        const Piggyback& pb = spec.piggybacks()[static_cast<size_t>(spec.piggyback_of(Cell{node, col}))];
        std::vector<std::pair<Symbol, Src>> terms;
        terms.emplace_back(1, b.read(pb.target));
        // Remove the base parity share of the target cell.
        append_parity_terms(terms, spec, pb.alpha, col_data[static_cast<size_t>(pb.target.col)]);
        for (Cell t : pb.terms)
            if (!(t == Cell{node, col})) terms.emplace_back(1, b.read(t));
        b.set_output(col, b.lincomb(std::move(terms)));
    }
    return b.finish();
}

RepairPlan plan_repair_parity(const C1Spec& spec, int node, bool full) {
    int k = spec.k(), m = spec.m(), r = spec.r(), L = spec.L();
    int x = node - k + 1; // 1-based parity index
    PlanBuilder b(spec.n(), m, k, node, full);

    // All data of the trailing L columns.
    std::vector<std::vector<Src>> col_data(static_cast<size_t>(m));
    for (int col = m - L; col < m; ++col) col_data[static_cast<size_t>(col)] = decode_from_data(b, spec, col);

    std::vector<std::vector<Src>> raw(static_cast<size_t>(m), std::vector<Src>(static_cast<size_t>(r)));
    std::vector<std::vector<char>> have_raw(static_cast<size_t>(m), std::vector<char>(static_cast<size_t>(r), 0));
    auto raw_parity = [&](int px, int col) { // px 0-based, col decoded
        if (!have_raw[static_cast<size_t>(col)][static_cast<size_t>(px)]) {
            std::vector<std::pair<Symbol, Src>> terms;
            append_parity_terms(terms, spec, px, col_data[static_cast<size_t>(col)]);
            raw[static_cast<size_t>(col)][static_cast<size_t>(px)] = b.lincomb(std::move(terms));
            have_raw[static_cast<size_t>(col)][static_cast<size_t>(px)] = 1;
        }
        return raw[static_cast<size_t>(col)][static_cast<size_t>(px)];
    };

    // Erased raw parities of the leading m-L columns, one per piggyback
    // function through the anti-diagonal rule.
    for (int y = 1; y <= m - L; ++y) {
        int alpha = (x + y <= r) ? x + y - 1 : x + y - r;
        const Piggyback& pb = spec.piggyback(alpha, L);
        std::vector<std::pair<Symbol, Src>> terms;
        terms.emplace_back(1, b.read(pb.target));
        terms.emplace_back(1, raw_parity(alpha, pb.target.col));
        Cell own{node, y - 1};
        for (Cell t : pb.terms)
            if (!(t == own)) terms.emplace_back(1, b.read(t));
        b.set_output(y - 1, b.lincomb(std::move(terms)));
    }

    // Trailing L cells of the failed row: base parity plus the row's own
    // piggyback function, reassembled term by term.
    for (int beta = 1; beta <= L; ++beta) {
        int col = m - beta;
        if (x == 1) {
            b.set_output(col, raw_parity(0, col));
            continue;
        }
        const Piggyback& pb = spec.piggyback(x - 1, beta);
        std::vector<std::pair<Symbol, Src>> terms;
        terms.emplace_back(1, raw_parity(x - 1, col));
        for (Cell t : pb.terms) {
            if (t.row < k && t.col >= m - L)
                terms.emplace_back(1, col_data[static_cast<size_t>(t.col)][static_cast<size_t>(t.row)]);
            else
                terms.emplace_back(1, b.read(t));
        }
        b.set_output(col, b.lincomb(std::move(terms)));
    }
    return b.finish();
}

} // namespace

RepairPlan c1_plan_repair(const C1Spec& spec, int node, bool full) {
    require(node >= 0 && node < spec.n(), Errc::Param, "c1: node out of range");
    return node < spec.k() ? plan_repair_data(spec, node, full) : plan_repair_parity(spec, node, full);
}

} // namespace pbkc
