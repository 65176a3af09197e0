#pragma once

#include <utility>
#include <vector>

#include "pbkc/gfmat.hpp"

namespace pbkc {

// Systematic (n, k) MDS code over GF(2^8). A codeword is the k data symbols
// followed by r = n-k parity symbols; the parity matrix is Cauchy-built from
// fixed evaluation points, so every square submatrix of the stacked
// [I_k; P] matrix is invertible. Requires n <= 256.
class BaseCode {
  public:
    BaseCode() = default;
    BaseCode(int n, int k, Mat parity)
        : n_(n), k_(k), parity_(std::move(parity)) {}

    int n() const { return n_; }
    int k() const { return k_; }
    int r() const { return n_ - k_; }

    // Parity coefficient of f_{x+1} applied to data symbol `col`
    // (both 0-based, x in [0, r)).
    Symbol coeff(int x, int col) const { return parity_.at(x, col); }

    // Row `row` (0-based, in [0, n)) of the stacked [I_k; P] matrix.
    std::vector<Symbol> stacked_row(int row) const;

    // All r parity symbols of one data column.
    std::vector<Symbol> encode_column(const std::vector<Symbol>& data) const;

    // Single parity symbol f_{x+1}(data), x 0-based.
    Symbol parity_symbol(int x, const std::vector<Symbol>& data) const;

    // Recovers the k data symbols from any k distinct codeword rows, given as
    // (row index 0-based, value) pairs. Throws DuplicateRow on repeats.
    std::vector<Symbol> decode_any_k(const std::vector<std::pair<int, Symbol>>& cells) const;

  private:
    int n_ = 0, k_ = 0;
    Mat parity_; // r x k
};

// Builds the Cauchy parity matrix: P(x, i) = 1 / (x + (r + i)) over GF(2^8)
// with x in [0, r) and i in [0, k), all evaluation points distinct.
BaseCode make_base_code(int n, int k);

} // namespace pbkc
