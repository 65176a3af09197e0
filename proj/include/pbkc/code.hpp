#pragma once

#include <variant>
#include <vector>

#include "pbkc/c1.hpp"
#include "pbkc/c2.hpp"

namespace pbkc {

// Either code family behind one interface.
using CodeSpec = std::variant<C1Spec, C2Spec>;

int code_variant(const CodeSpec& spec); // 1 or 2
int code_n(const CodeSpec& spec);
int code_k(const CodeSpec& spec);
int code_r(const CodeSpec& spec);
int code_m(const CodeSpec& spec);
int code_L(const CodeSpec& spec);
const BaseCode& code_base(const CodeSpec& spec);

Grid code_encode(const CodeSpec& spec, const Grid& data);
RepairPlan code_plan_repair(const CodeSpec& spec, int node, bool full = true);

// Generator of the composed linear map from the k*m data symbols (column-major:
// index col*k + row) to the n*m stripe cells (node-major: index node*m + col).
Mat build_generator(const CodeSpec& spec);

// Decode context for one k-node subset: factorizes the km x km restriction of
// the generator once and reuses it across stripes. Throws Errc::Singular if
// the subset cannot decode (which a correct spec never produces).
class DecodeSolver {
  public:
    DecodeSolver(const CodeSpec& spec, std::vector<int> nodes);
    DecodeSolver(const Mat& generator, int n, int k, int m, std::vector<int> nodes);

    const std::vector<int>& nodes() const { return nodes_; }

    // rows[i] holds the m stored symbols of nodes()[i]; returns the k x m data.
    Grid decode(const std::vector<std::vector<Symbol>>& rows) const;
    Grid decode(const Grid& stripe) const;

  private:
    int k_ = 0, m_ = 0;
    std::vector<int> nodes_;
    Lu lu_;
};

Grid code_decode(const CodeSpec& spec, const std::vector<int>& nodes,
                 const std::vector<std::vector<Symbol>>& rows);

struct MdsReport {
    bool ok = true;
    bool exhaustive = false;
    long long total = 0;   // k-subsets of n nodes
    long long checked = 0;
    std::vector<int> witness; // non-decodable subset when !ok
};

// Rank-checks the decode system of k-node subsets: all of them when their
// count is at most max_exhaustive, otherwise `samples` seeded random subsets.
MdsReport verify_mds(const CodeSpec& spec, long long max_exhaustive = 100000, int samples = 10000,
                     unsigned seed = 1);

// Read-set size of every node's repair plan, index = node.
std::vector<int> repair_bandwidths(const CodeSpec& spec);

} // namespace pbkc
