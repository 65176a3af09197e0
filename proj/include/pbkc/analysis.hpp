#pragma once

#include <string>
#include <vector>

#include "pbkc/code.hpp"

namespace pbkc {

// Exact fraction over int64, always normalized: gcd(|num|, den) = 1, den > 0.
struct Rational {
    long long num = 0, den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend Rational operator/(Rational a, Rational b);
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Rational a, Rational b);
};

struct GammaBounds {
    Rational min, max;
};

// Closed-form bounds on the average repair ratio over all nodes of the first
// family; requires L | n.
GammaBounds c1_gamma_bounds(int n, int k, int m, int L);

// Closed-form bounds on the average repair ratio of the data nodes of the
// second family; requires L | k.
GammaBounds c2_gamma_sys_bounds(int n, int k, int s, int L);

// Exact average repair ratio of the parity nodes of the second family;
// requires L | k.
Rational c2_gamma_parity(int n, int k, int s, int L);

struct OptimalL {
    double real = 0;  // unconstrained minimizer of the lower bound
    int chosen = 0;   // feasible integer neighbor with the smaller bound
};

// Minimizer sqrt((6m^2-6m+1)/(3r-1)) of the first family's lower bound and
// the integer pick: the feasible floor/ceil neighbor with the smaller bound
// value, ties to the smaller L.
OptimalL c1_optimal_L(int m, int r, int n);
// Same selection for the second family with s in place of m (L capped by k).
OptimalL c2_optimal_L(int s, int r, int k);

// Measured ratios from repair plans: totals divided by n*k*m (all), k*k*m
// (data nodes), r*k*m (parity nodes).
struct MeasuredGammas {
    long total = 0, data_total = 0, parity_total = 0;
    Rational all, sys, parity;
};
MeasuredGammas measure_gammas(const CodeSpec& spec);

// One parameter point of a bandwidth sweep. For variant 1 `m` is the column
// count; for variant 2 it is ignored and s*r is used.
struct SweepParams {
    int variant = 1;
    int n = 0, k = 0, m = 0, L = 0, s = 0;
    Symbol theta = 0x02;
};

struct SweepRow {
    SweepParams params;
    int r = 0, m = 0; // resolved column count
    bool ok = false;
    std::string error;
    MeasuredGammas measured;
    bool has_bounds = false;
    GammaBounds bounds;
    bool has_parity_formula = false;
    Rational parity_formula;
};

// Measures every parameter point; construction failures are captured per row
// and the sweep continues.
std::vector<SweepRow> sweep(const std::vector<SweepParams>& params);

// CSV with the fixed header; 6-decimal floats, LF endings, blank fields where
// a formula does not apply. Rows that failed to construct are omitted.
std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace pbkc
