#include "pbkc/base_mds.hpp"

#include "pbkc/error.hpp"

namespace pbkc {

std::vector<Symbol> BaseCode::stacked_row(int row) const {
    require(row >= 0 && row < n_, Errc::Param, "base: row out of range");
    std::vector<Symbol> out(static_cast<size_t>(k_), 0);
    if (row < k_) {
        out[static_cast<size_t>(row)] = 1;
    } else {
        for (int c = 0; c < k_; ++c) out[static_cast<size_t>(c)] = parity_.at(row - k_, c);
    }
    return out;
}

std::vector<Symbol> BaseCode::encode_column(const std::vector<Symbol>& data) const {
    require(static_cast<int>(data.size()) == k_, Errc::LengthMismatch, "base: data size != k");
    return mat_vec(parity_, data);
}

Symbol BaseCode::parity_symbol(int x, const std::vector<Symbol>& data) const {
    require(x >= 0 && x < r(), Errc::Param, "base: parity index out of range");
    require(static_cast<int>(data.size()) == k_, Errc::LengthMismatch, "base: data size != k");
    Symbol acc = 0;
    for (int c = 0; c < k_; ++c)
        if (data[static_cast<size_t>(c)])
            acc = gf::add(acc, gf::mul(parity_.at(x, c), data[static_cast<size_t>(c)]));
    return acc;
}

std::vector<Symbol> BaseCode::decode_any_k(const std::vector<std::pair<int, Symbol>>& cells) const {
    require(static_cast<int>(cells.size()) == k_, Errc::LengthMismatch, "base: need exactly k rows");
    std::vector<bool> seen(static_cast<size_t>(n_), false);
    Mat sys(k_, k_);
    std::vector<Symbol> rhs(static_cast<size_t>(k_));
    for (int i = 0; i < k_; ++i) {
        int row = cells[static_cast<size_t>(i)].first;
        require(row >= 0 && row < n_, Errc::Param, "base: row out of range");
        require(!seen[static_cast<size_t>(row)], Errc::DuplicateRow, "base: duplicate row");
        seen[static_cast<size_t>(row)] = true;
        auto coeffs = stacked_row(row);
        for (int c = 0; c < k_; ++c) sys.at(i, c) = coeffs[static_cast<size_t>(c)];
        rhs[static_cast<size_t>(i)] = cells[static_cast<size_t>(i)].second;
    }
    // Any k distinct rows of [I; P] are independent for a Cauchy P.
    return Lu(std::move(sys)).solve(rhs);
}

BaseCode make_base_code(int n, int k) {
    require(k >= 1, Errc::Param, "base: k must be positive");
    require(n > k, Errc::Param, "base: need n > k");
    require(n <= 256, Errc::Param, "base: n exceeds field size");
    int r = n - k;
    Mat parity(r, k);
    for (int x = 0; x < r; ++x)
        for (int i = 0; i < k; ++i)
            parity.at(x, i) = gf::inv(static_cast<Symbol>(x ^ (r + i)));
    return BaseCode(n, k, std::move(parity));
}

} // namespace pbkc
