#include "pbkc/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "pbkc/error.hpp"

namespace pbkc {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    require(den != 0, Errc::Param, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
Rational operator/(Rational a, Rational b) {
    require(b.num != 0, Errc::Param, "division by zero");
    return {a.num * b.den, a.den * b.num};
}
bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }

namespace {

// Lower bound of the all-node average ratio for the first family; pure
// expression, no divisibility requirement (selection helper).
Rational c1_min_expr(int n, int k, int m, int L) {
    int r = n - k;
    Rational a(L + 1, 2LL * m);
    Rational poly = Rational(1LL * m * m - 1LL * m * (L + 1)) + Rational(1LL * (L + 1) * (2 * L + 1), 6);
    Rational b = (Rational(k + r) * poly) / Rational(1LL * L * m * k * (r - 1));
    Rational c(m - L, 1LL * k * m);
    return a + b + c;
}

Rational c1_gap_expr(int n, int k, int m, int L) {
    int r = n - k;
    return {1LL * L * (r - 1) * (r - 1), 4LL * (k + r) * m * k};
}

// Lower bound of the data-node average ratio for the second family.
Rational c2_sys_min_expr(int k, int r, int s, int L) {
    Rational a(L + 1, 2LL * s);
    Rational poly = Rational(1LL * s * s - 1LL * s * (L + 1)) + Rational(1LL * (L + 1) * (2 * L + 1), 6);
    Rational b = poly / Rational(1LL * L * s * (r - 1));
    Rational c(1LL * (r - 1) * (L - 3), 2LL * k * s * r);
    return a + b + c;
}

Rational c2_sys_gap_expr(int k, int r, int s, int L) { return {1LL * L * (r - 1), 4LL * s * k * k}; }

} // namespace

GammaBounds c1_gamma_bounds(int n, int k, int m, int L) {
    int r = n - k;
    require(k >= 1 && r >= 4 && m >= 2 && m <= r && L >= 1 && L < m, Errc::Param, "parameters out of range");
    require(n % L == 0, Errc::Param, "subset count must divide node count");
    GammaBounds gb;
    gb.min = c1_min_expr(n, k, m, L);
    gb.max = gb.min + c1_gap_expr(n, k, m, L);
    return gb;
}

GammaBounds c2_gamma_sys_bounds(int n, int k, int s, int L) {
    int r = n - k;
    require(k >= 1 && r >= 2 && s >= 2 && s <= r && L >= 1 && L < s, Errc::Param, "parameters out of range");
    require(k % L == 0, Errc::Param, "subset count must divide data node count");
    GammaBounds gb;
    gb.min = c2_sys_min_expr(k, r, s, L);
    gb.max = gb.min + c2_sys_gap_expr(k, r, s, L);
    return gb;
}

Rational c2_gamma_parity(int n, int k, int s, int L) {
    int r = n - k;
    require(k >= 1 && r >= 2 && s >= 2 && s <= r && L >= 1 && L < s, Errc::Param, "parameters out of range");
    require(k % L == 0, Errc::Param, "subset count must divide data node count");
    return Rational(2, r) + Rational(1, k) - Rational(1, 1LL * k * r) - Rational(L + 1, 2LL * s * r);
}

namespace {

OptimalL pick_optimal(double real, int lo, int hi, const std::function<Rational(int)>& score) {
    require(lo <= hi, Errc::Param, "no feasible subset count");
    auto clamp = [&](int v) { return v < lo ? lo : (v > hi ? hi : v); };
    int a = clamp(static_cast<int>(std::floor(real)));
    int b = clamp(static_cast<int>(std::ceil(real)));
    OptimalL out;
    out.real = real;
    if (a == b) {
        out.chosen = a;
    } else {
        Rational sa = score(a), sb = score(b);
        out.chosen = (sb < sa) ? b : a; // ties fall to the smaller L
    }
    return out;
}

} // namespace

OptimalL c1_optimal_L(int m, int r, int n) {
    require(r >= 4 && m >= 2 && m <= r, Errc::Param, "parameters out of range");
    int k = n - r;
    require(k >= 1, Errc::Param, "node count too small");
    double real = std::sqrt((6.0 * m * m - 6.0 * m + 1.0) / (3.0 * r - 1.0));
    int lo = (m == r) ? 2 : 1;           // L = 1 with m = r has no valid layout
    int hi = std::min(m - 1, n / r);     // floor(n/L) >= r
    return pick_optimal(real, lo, hi, [&](int L) { return c1_min_expr(n, k, m, L); });
}

OptimalL c2_optimal_L(int s, int r, int k) {
    require(r >= 2 && s >= 2 && s <= r && k >= 1, Errc::Param, "parameters out of range");
    double real = std::sqrt((6.0 * s * s - 6.0 * s + 1.0) / (3.0 * r - 1.0));
    int lo = 1, hi = std::min(s - 1, k);
    return pick_optimal(real, lo, hi, [&](int L) { return c2_sys_min_expr(k, r, s, L); });
}

MeasuredGammas measure_gammas(const CodeSpec& spec) {
    const int n = code_n(spec), k = code_k(spec), r = code_r(spec), m = code_m(spec);
    std::vector<int> bw = repair_bandwidths(spec);
    MeasuredGammas g;
    for (int node = 0; node < n; ++node) {
        g.total += bw[static_cast<size_t>(node)];
        (node < k ? g.data_total : g.parity_total) += bw[static_cast<size_t>(node)];
    }
    g.all = Rational(g.total, 1LL * n * k * m);
    g.sys = Rational(g.data_total, 1LL * k * k * m);
    g.parity = Rational(g.parity_total, 1LL * r * k * m);
    return g;
}

std::vector<SweepRow> sweep(const std::vector<SweepParams>& params) {
    std::vector<SweepRow> rows;
    rows.reserve(params.size());
    for (const SweepParams& p : params) {
        SweepRow row;
        row.params = p;
        row.r = p.n - p.k;
        try {
            if (p.variant == 1) {
                C1Spec spec = c1_spec(p.n, p.k, p.m, p.L);
                row.m = p.m;
                CodeSpec cs = spec;
                row.measured = measure_gammas(cs);
                if (p.n % p.L == 0) {
                    row.bounds = c1_gamma_bounds(p.n, p.k, p.m, p.L);
                    row.has_bounds = true;
                }
            } else {
                C2Spec spec = c2_spec(p.n, p.k, p.s, p.L, p.theta);
                row.m = spec.m();
                CodeSpec cs = spec;
                row.measured = measure_gammas(cs);
                if (p.k % p.L == 0) {
                    row.bounds = c2_gamma_sys_bounds(p.n, p.k, p.s, p.L);
                    row.has_bounds = true;
                    row.parity_formula = c2_gamma_parity(p.n, p.k, p.s, p.L);
                    row.has_parity_formula = true;
                }
            }
            row.ok = true;
        } catch (const Error& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string f6(Rational v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v.value());
    return buf;
}

} // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "variant,n,k,r,m,L,gamma_all,gamma_sys,gamma_parity,gamma_min,gamma_max,lemma7\n";
    for (const SweepRow& row : rows) {
        if (!row.ok) continue;
        os << row.params.variant << ',' << row.params.n << ',' << row.params.k << ',' << row.r << ','
           << row.m << ',' << row.params.L << ',' << f6(row.measured.all) << ',' << f6(row.measured.sys)
           << ',' << f6(row.measured.parity) << ',';
        if (row.has_bounds) os << f6(row.bounds.min) << ',' << f6(row.bounds.max);
        else os << ',';
        os << ',';
        if (row.has_parity_formula) os << f6(row.parity_formula);
        os << '\n';
    }
    return os.str();
}

} // namespace pbkc
