#include "pbkc/code.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "pbkc/error.hpp"

namespace pbkc {

int code_variant(const CodeSpec& spec) { return std::holds_alternative<C1Spec>(spec) ? 1 : 2; }
int code_n(const CodeSpec& spec) {
    return std::visit([](const auto& s) { return s.n(); }, spec);
}
int code_k(const CodeSpec& spec) {
    return std::visit([](const auto& s) { return s.k(); }, spec);
}
int code_r(const CodeSpec& spec) {
    return std::visit([](const auto& s) { return s.r(); }, spec);
}
int code_m(const CodeSpec& spec) {
    return std::visit([](const auto& s) { return s.m(); }, spec);
}
int code_L(const CodeSpec& spec) {
    return std::visit([](const auto& s) { return s.L(); }, spec);
}
const BaseCode& code_base(const CodeSpec& spec) {
    return std::visit([](const auto& s) -> const BaseCode& { return s.base(); }, spec);
}

Grid code_encode(const CodeSpec& spec, const Grid& data) {
    if (const auto* c1 = std::get_if<C1Spec>(&spec)) return c1_encode(*c1, data);
    return c2_encode(std::get<C2Spec>(spec), data);
}

RepairPlan code_plan_repair(const CodeSpec& spec, int node, bool full) {
    if (const auto* c1 = std::get_if<C1Spec>(&spec)) return c1_plan_repair(*c1, node, full);
    return c2_plan_repair(std::get<C2Spec>(spec), node, full);
}

Mat build_generator(const CodeSpec& spec) {
    const int n = code_n(spec), k = code_k(spec), m = code_m(spec);
    Mat gen(n * m, k * m);
    Grid unit(k, m);
    for (int q = 0; q < k * m; ++q) {
        unit.at(q % k, q / k) = 1;
        Grid stripe = code_encode(spec, unit);
        unit.at(q % k, q / k) = 0;
        for (int node = 0; node < n; ++node)
            for (int col = 0; col < m; ++col) gen.at(node * m + col, q) = stripe.at(node, col);
    }
    return gen;
}

namespace {

Lu make_subset_lu(const Mat& gen, int n, int k, int m, const std::vector<int>& nodes) {
    require(static_cast<int>(nodes.size()) == k, Errc::Param, "decode needs exactly k nodes");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int node : nodes) {
        require(node >= 0 && node < n, Errc::Param, "decode node out of range");
        require(!seen[static_cast<size_t>(node)], Errc::DuplicateRow, "decode node repeated");
        seen[static_cast<size_t>(node)] = 1;
    }
    Mat a(k * m, k * m);
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < m; ++c)
            std::copy_n(gen.row(nodes[static_cast<size_t>(i)] * m + c), k * m, a.row(i * m + c));
    return Lu(std::move(a));
}

} // namespace

DecodeSolver::DecodeSolver(const Mat& generator, int n, int k, int m, std::vector<int> nodes)
    : k_(k), m_(m), nodes_(std::move(nodes)), lu_(make_subset_lu(generator, n, k, m, nodes_)) {}

DecodeSolver::DecodeSolver(const CodeSpec& spec, std::vector<int> nodes)
    : DecodeSolver(build_generator(spec), code_n(spec), code_k(spec), code_m(spec), std::move(nodes)) {}

Grid DecodeSolver::decode(const std::vector<std::vector<Symbol>>& rows) const {
    require(static_cast<int>(rows.size()) == k_, Errc::Shape, "decode needs k node rows");
    std::vector<Symbol> b(static_cast<size_t>(k_) * m_);
    for (int i = 0; i < k_; ++i) {
        require(static_cast<int>(rows[static_cast<size_t>(i)].size()) == m_, Errc::Shape,
                "node row must hold m symbols");
        for (int c = 0; c < m_; ++c) b[static_cast<size_t>(i) * m_ + c] = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
    }
    std::vector<Symbol> x = lu_.solve(b);
    Grid data(k_, m_);
    for (int q = 0; q < k_ * m_; ++q) data.at(q % k_, q / k_) = x[static_cast<size_t>(q)];
    return data;
}

Grid DecodeSolver::decode(const Grid& stripe) const {
    std::vector<std::vector<Symbol>> rows;
    rows.reserve(nodes_.size());
    for (int node : nodes_) {
        std::vector<Symbol> row(static_cast<size_t>(m_));
        for (int c = 0; c < m_; ++c) row[static_cast<size_t>(c)] = stripe.at(node, c);
        rows.push_back(std::move(row));
    }
    return decode(rows);
}

Grid code_decode(const CodeSpec& spec, const std::vector<int>& nodes,
                 const std::vector<std::vector<Symbol>>& rows) {
    return DecodeSolver(spec, nodes).decode(rows);
}

namespace {

// C(n, k), saturating at `cap` + 1. Each intermediate product of i
// consecutive integers is divisible by i!, so the division is exact.
long long count_subsets_capped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned long long c = 1;
    for (int i = 1; i <= k; ++i) {
        unsigned long long num = static_cast<unsigned long long>(n - k + i);
        if (c > (~0ULL) / num) return cap + 1;
        c = c * num / static_cast<unsigned long long>(i);
        if (c > static_cast<unsigned long long>(cap)) return cap + 1;
    }
    return static_cast<long long>(c);
}

bool subset_decodes(const Mat& gen, int k, int m, const std::vector<int>& nodes) {
    Mat a(k * m, k * m);
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < m; ++c)
            std::copy_n(gen.row(nodes[static_cast<size_t>(i)] * m + c), k * m, a.row(i * m + c));
    return rank(std::move(a)) == k * m;
}

} // namespace

MdsReport verify_mds(const CodeSpec& spec, long long max_exhaustive, int samples, unsigned seed) {
    const int n = code_n(spec), k = code_k(spec), m = code_m(spec);
    Mat gen = build_generator(spec);
    MdsReport report;
    report.total = count_subsets_capped(n, k, (1LL << 62));
    report.exhaustive = report.total <= max_exhaustive;

    if (report.exhaustive) {
        std::vector<int> sub(static_cast<size_t>(k));
        std::iota(sub.begin(), sub.end(), 0);
        while (true) {
            ++report.checked;
            if (!subset_decodes(gen, k, m, sub)) {
                report.ok = false;
                report.witness = sub;
                return report;
            }
            // next k-combination of [0, n)
            int i = k - 1;
            while (i >= 0 && sub[static_cast<size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++sub[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j) sub[static_cast<size_t>(j)] = sub[static_cast<size_t>(j - 1)] + 1;
        }
        return report;
    }

    std::mt19937 rng(seed);
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (int trial = 0; trial < samples; ++trial) {
        std::vector<int> sub;
        sub.reserve(static_cast<size_t>(k));
        std::sample(all.begin(), all.end(), std::back_inserter(sub), k, rng);
        ++report.checked;
        if (!subset_decodes(gen, k, m, sub)) {
            report.ok = false;
            report.witness = sub;
            return report;
        }
    }
    return report;
}

std::vector<int> repair_bandwidths(const CodeSpec& spec) {
    const int n = code_n(spec);
    std::vector<int> out(static_cast<size_t>(n));
    for (int node = 0; node < n; ++node)
        out[static_cast<size_t>(node)] = code_plan_repair(spec, node, /*full=*/false).bandwidth();
    return out;
}

} // namespace pbkc
