#include <random>

#include "doctest.h"

#include "pbkc/error.hpp"
#include "pbkc/gfmat.hpp"

using namespace pbkc;

namespace {

// Independent rank: Gauss-Jordan written directly against the field ops.
int oracle_rank(Mat m) {
    int rk = 0;
    for (int c = 0; c < m.nc && rk < m.nr; ++c) {
        int pivot = -1;
        for (int r = rk; r < m.nr; ++r)
            if (m.at(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int cc = 0; cc < m.nc; ++cc) std::swap(m.at(rk, cc), m.at(pivot, cc));
        Symbol d = gf::inv(m.at(rk, c));
        for (int cc = 0; cc < m.nc; ++cc) m.at(rk, cc) = gf::mul(m.at(rk, cc), d);
        for (int r = 0; r < m.nr; ++r) {
            if (r == rk || m.at(r, c) == 0) continue;
            Symbol f = m.at(r, c);
            for (int cc = 0; cc < m.nc; ++cc)
                m.at(r, cc) = gf::add(m.at(r, cc), gf::mul(f, m.at(rk, cc)));
        }
        ++rk;
    }
    return rk;
}

Mat random_mat(std::mt19937& rng, int nr, int nc) {
    Mat m(nr, nc);
    for (auto& v : m.a) v = static_cast<Symbol>(rng());
    return m;
}

} // namespace

TEST_CASE("identity basics and mat_vec") {
    Mat id = Mat::identity(4);
    std::vector<Symbol> x = {3, 9, 0x80, 0xFE};
    CHECK(mat_vec(id, x) == x);

    Mat m(2, 3);
    m.at(0, 0) = 1;
    m.at(0, 2) = 2;
    m.at(1, 1) = 3;
    std::vector<Symbol> y = mat_vec(m, {5, 6, 7});
    CHECK(y[0] == gf::add(5, gf::mul(2, 7)));
    CHECK(y[1] == gf::mul(3, 6));
}

TEST_CASE("rank matches an independent elimination on random matrices") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        int nr = 1 + static_cast<int>(rng() % 8);
        int nc = 1 + static_cast<int>(rng() % 8);
        Mat m = random_mat(rng, nr, nc);
        CHECK(rank(m) == oracle_rank(m));
    }
    // Planted rank deficiency: duplicate a row.
    Mat m = random_mat(rng, 5, 5);
    for (int c = 0; c < 5; ++c) m.at(4, c) = m.at(2, c);
    CHECK(rank(m) == oracle_rank(m));
    CHECK(rank(m) < 5);
    CHECK(rank(Mat(3, 3)) == 0);
    CHECK(rank(Mat::identity(6)) == 6);
}

TEST_CASE("lu solves random invertible systems") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng() % 10);
        Mat m = random_mat(rng, n, n);
        if (rank(m) < n) continue;
        Lu lu(m);
        CHECK(lu.ok());
        CHECK(lu.dim() == n);
        std::vector<Symbol> x(static_cast<size_t>(n));
        for (auto& v : x) v = static_cast<Symbol>(rng());
        std::vector<Symbol> b = mat_vec(m, x);
        CHECK(lu.solve(b) == x);
    }
}

TEST_CASE("singular matrices are rejected") {
    Mat z(3, 3);
    CHECK_THROWS_AS(Lu{z}, Error);
    Lu lenient(z, Lu::lenient_t{});
    CHECK_FALSE(lenient.ok());

    Mat m = Mat::identity(3);
    m.at(2, 2) = 0;
    try {
        Lu lu(m);
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Singular);
    }
}

TEST_CASE("solve validates the right-hand side length") {
    Lu lu(Mat::identity(3));
    CHECK_THROWS_AS(lu.solve(std::vector<Symbol>{1, 2}), Error);
}
