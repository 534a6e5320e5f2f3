#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "grasslab/gflinalg.hpp"
#include "grasslab/numeric.hpp"

namespace grasslab::grassmann {

using gflinalg::FieldSpec;
using gflinalg::LinearMap;
using gflinalg::Subspace;

/// Parameters of J_q(n, k) plus the canonical ordered index of all
/// 1-dimensional subspaces. Immutable and shareable after construction.
class GraphContext {
  public:
    GraphContext(long q, int n, int k, long enum_budget = 20000);

    const FieldSpec& spec() const { return *spec_; }
    long q() const { return spec_->q(); }
    int n() const { return n_; }
    int k() const { return k_; }
    long enum_budget() const { return enum_budget_; }

    const std::vector<Subspace>& p1() const { return p1_; }
    /// Index of a line in the canonical P_1 order; throws if not a line.
    int p1_index(const Subspace& line) const;

    /// All vertices of J_q(n, k) in canonical order. Declines (budget_error)
    /// when the vertex count exceeds the enumeration budget.
    std::vector<Subspace> all_vertices() const;

  private:
    const FieldSpec* spec_;
    int n_, k_;
    long enum_budget_;
    std::vector<Subspace> p1_;
};

/// Path-length distance, computed as k - dim(x cap y).
int distance(const GraphContext& ctx, const Subspace& x, const Subspace& y);

/// All q[k][n-k] neighbors of x, canonical order, built as
/// (hyperplane of x) + (line outside x) without global enumeration.
std::vector<Subspace> local_neighbors(const GraphContext& ctx, const Subspace& x);

struct BruteIntersection {
    long b, c, a;
};

/// Count neighbors of x at distance i+1 / i-1 / i from y, by exhaustive
/// local enumeration (the oracle for the closed forms).
BruteIntersection brute_intersection_numbers(const GraphContext& ctx, const Subspace& x,
                                             const Subspace& y);

/// Deterministic-for-seed pair at distance exactly i (1 < i < k). Seed 0 is
/// the coordinate fixture x = <e_1..e_k>, y = <e_1..e_{k-i}, e_{k+1}..e_{k+i}>.
std::pair<Subspace, Subspace> choose_pair(const GraphContext& ctx, int i, std::uint64_t seed);

}  // namespace grasslab::grassmann
