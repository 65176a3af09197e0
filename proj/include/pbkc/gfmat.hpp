#pragma once

#include <cstdint>
#include <vector>

#include "pbkc/gf256.hpp"

namespace pbkc {

// Dense row-major matrix over GF(2^8). Sized for code-parameter work
// (hundreds of rows), not for bulk data.
struct Mat {
    int nr = 0, nc = 0;
    std::vector<Symbol> a;

    Mat() = default;
    Mat(int rows, int cols) : nr(rows), nc(cols), a(static_cast<size_t>(rows) * cols, 0) {}

    Symbol& at(int r, int c) { return a[static_cast<size_t>(r) * nc + c]; }
    Symbol at(int r, int c) const { return a[static_cast<size_t>(r) * nc + c]; }
    Symbol* row(int r) { return a.data() + static_cast<size_t>(r) * nc; }
    const Symbol* row(int r) const { return a.data() + static_cast<size_t>(r) * nc; }

    static Mat identity(int n);
};

// y = M x
std::vector<Symbol> mat_vec(const Mat& m, const std::vector<Symbol>& x);

// Rank via Gaussian elimination on a copy.
int rank(Mat m);

// LU decomposition with partial pivoting of a square matrix, prepared once
// and reused across many right-hand sides.
class Lu {
  public:
    // Throws Errc::Singular if the matrix is not invertible.
    explicit Lu(Mat m);

    // Attempts factorization; `ok()` reports invertibility instead of throwing.
    struct lenient_t {};
    Lu(Mat m, lenient_t);

    bool ok() const { return ok_; }
    int dim() const { return lu_.nr; }

    // Solves M x = b; b.size() must equal dim().
    std::vector<Symbol> solve(const std::vector<Symbol>& b) const;

  private:
    void factor();

    Mat lu_;
    std::vector<int> perm_;
    bool ok_ = false;
};

} // namespace pbkc
