#include "pbkc/gfmat.hpp"

#include <numeric>
#include <utility>

#include "pbkc/error.hpp"

namespace pbkc {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Symbol> mat_vec(const Mat& m, const std::vector<Symbol>& x) {
    require(static_cast<int>(x.size()) == m.nc, Errc::Shape, "mat_vec: size mismatch");
    std::vector<Symbol> y(static_cast<size_t>(m.nr), 0);
    for (int r = 0; r < m.nr; ++r) {
        Symbol acc = 0;
        const Symbol* row = m.row(r);
        for (int c = 0; c < m.nc; ++c)
            if (row[c] && x[static_cast<size_t>(c)])
                acc = gf::add(acc, gf::mul(row[c], x[static_cast<size_t>(c)]));
        y[static_cast<size_t>(r)] = acc;
    }
    return y;
}

namespace {

// Eliminates below-pivot entries in place; returns the achieved rank.
int eliminate(Mat& m, std::vector<int>* perm) {
    int rank = 0;
    for (int col = 0; col < m.nc && rank < m.nr; ++col) {
        int piv = -1;
        for (int r = rank; r < m.nr; ++r)
            if (m.at(r, col)) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int c = 0; c < m.nc; ++c) std::swap(m.at(piv, c), m.at(rank, c));
            if (perm) std::swap((*perm)[static_cast<size_t>(piv)], (*perm)[static_cast<size_t>(rank)]);
        }
        Symbol pinv = gf::inv(m.at(rank, col));
        for (int r = rank + 1; r < m.nr; ++r) {
            Symbol f = m.at(r, col);
            if (!f) continue;
            Symbol factor = gf::mul(f, pinv);
            m.at(r, col) = factor; // store the L multiplier in place
            Symbol* dst = m.row(r);
            const Symbol* src = m.row(rank);
            for (int c = col + 1; c < m.nc; ++c)
                if (src[c]) dst[c] = gf::add(dst[c], gf::mul(factor, src[c]));
        }
        ++rank;
    }
    return rank;
}

} // namespace

int rank(Mat m) {
    // Multipliers left in the lower triangle do not affect the pivot count.
    return eliminate(m, nullptr);
}

Lu::Lu(Mat m) : lu_(std::move(m)) {
    factor();
    require(ok_, Errc::Singular, "lu: singular matrix");
}

Lu::Lu(Mat m, lenient_t) : lu_(std::move(m)) { factor(); }

void Lu::factor() {
    require(lu_.nr == lu_.nc, Errc::Shape, "lu: matrix not square");
    perm_.resize(static_cast<size_t>(lu_.nr));
    std::iota(perm_.begin(), perm_.end(), 0);
    ok_ = eliminate(lu_, &perm_) == lu_.nr;
}

std::vector<Symbol> Lu::solve(const std::vector<Symbol>& b) const {
    require(ok_, Errc::Singular, "lu: solve on singular factorization");
    int n = lu_.nr;
    require(static_cast<int>(b.size()) == n, Errc::Shape, "lu: rhs size mismatch");
    std::vector<Symbol> y(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        Symbol acc = b[static_cast<size_t>(perm_[static_cast<size_t>(r)])];
        const Symbol* row = lu_.row(r);
        for (int c = 0; c < r; ++c)
            if (row[c] && y[static_cast<size_t>(c)]) acc = gf::add(acc, gf::mul(row[c], y[static_cast<size_t>(c)]));
        y[static_cast<size_t>(r)] = acc;
    }
    std::vector<Symbol> x(static_cast<size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        Symbol acc = y[static_cast<size_t>(r)];
        const Symbol* row = lu_.row(r);
        for (int c = r + 1; c < n; ++c)
            if (row[c] && x[static_cast<size_t>(c)]) acc = gf::add(acc, gf::mul(row[c], x[static_cast<size_t>(c)]));
        x[static_cast<size_t>(r)] = gf::div(acc, row[r]);
    }
    return x;
}

} // namespace pbkc
