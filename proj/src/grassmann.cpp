#include "grasslab/grassmann.hpp"

#include <algorithm>
#include <stdexcept>

#include "grasslab/errors.hpp"
#include "grasslab/qalg.hpp"

namespace grasslab::grassmann {

using gflinalg::FieldElem;

GraphContext::GraphContext(long q, int n, int k, long enum_budget)
    : spec_(&FieldSpec::get(q)), n_(n), k_(k), enum_budget_(enum_budget) {
    if (!(k >= 3 && n > 2 * k))
        throw std::domain_error("GraphContext: need n > 2k >= 6");
    if (enum_budget < 1) throw std::domain_error("GraphContext: budget must be positive");
    p1_ = gflinalg::all_subspaces(*spec_, n_, 1);
    Int expect = qalg::bracket(n_, q);
    if (Int(static_cast<long>(p1_.size())) != expect)
        throw internal_error("GraphContext: |P_1| != [n]");
}

int GraphContext::p1_index(const Subspace& line) const {
    if (line.dim() != 1 || line.ambient() != n_ || &line.spec() != spec_)
        throw std::domain_error("p1_index: not a line of this context");
    auto it = std::lower_bound(p1_.begin(), p1_.end(), line, gflinalg::less);
    if (it == p1_.end() || !(*it == line)) throw internal_error("p1_index: line not found");
    return static_cast<int>(it - p1_.begin());
}

std::vector<Subspace> GraphContext::all_vertices() const {
    Int count = qalg::gauss_binom(n_, k_, q());
    if (count > enum_budget_)
        throw budget_error("all_vertices: vertex count " + count.get_str() +
                           " exceeds enumeration budget " + std::to_string(enum_budget_));
    return gflinalg::all_subspaces(*spec_, n_, k_);
}

int distance(const GraphContext& ctx, const Subspace& x, const Subspace& y) {
    if (x.dim() != ctx.k() || y.dim() != ctx.k())
        throw std::domain_error("distance: arguments must be vertices (dim k)");
    // dim(x+y) = rank of stacked bases; dim(x cap y) = 2k - that.
    return gflinalg::stacked_rank(x, y) - ctx.k();
}

std::vector<Subspace> local_neighbors(const GraphContext& ctx, const Subspace& x) {
    if (x.dim() != ctx.k()) throw std::domain_error("local_neighbors: dim(x) != k");
    const FieldSpec& f = ctx.spec();
    const long q = ctx.q();
    const int n = ctx.n(), k = ctx.k();

    // Hyperplanes of x: kernels of the [k] normalized functionals on x.
    std::vector<Subspace> hyperplanes;
    std::vector<FieldElem> c(k, 0);
    for (int j0 = 0; j0 < k; ++j0) {
        long tail = 1;
        for (int j = j0 + 1; j < k; ++j) tail *= q;
        for (long t = 0; t < tail; ++t) {
            std::fill(c.begin(), c.end(), 0);
            c[j0] = 1;
            long v = t;
            for (int j = k - 1; j > j0; --j) {
                c[j] = static_cast<FieldElem>(v % q);
                v /= q;
            }
            // Kernel basis of alpha -> sum c_j alpha_j: e_j - c_j e_{j0}, j != j0.
            std::vector<std::vector<FieldElem>> rows;
            rows.reserve(k - 1);
            for (int j = 0; j < k; ++j) {
                if (j == j0) continue;
                std::vector<FieldElem> w(n, 0);
                for (int col = 0; col < n; ++col) {
                    FieldElem a = x.entry(j, col);
                    FieldElem b = f.mul(c[j], x.entry(j0, col));
                    w[col] = f.sub(a, b);
                }
                rows.push_back(std::move(w));
            }
            hyperplanes.push_back(gflinalg::rref(f, n, rows));
        }
    }

    // Neighbors with x cap z = h correspond to the lines of V/h other than
    // x/h; one canonical representative each (supported on the non-pivot
    // columns of h), so every neighbor is produced exactly once.
    std::vector<Subspace> out;
    std::vector<std::vector<FieldElem>> zrows(k, std::vector<FieldElem>(n));
    for (const Subspace& h : hyperplanes) {
        std::vector<int> freecols;
        {
            std::vector<bool> is_piv(n, false);
            for (int p : h.pivots()) is_piv[p] = true;
            for (int col = 0; col < n; ++col)
                if (!is_piv[col]) freecols.push_back(col);
        }
        const int m = static_cast<int>(freecols.size());  // n - k + 1
        std::vector<FieldElem> cq(m, 0);
        for (int j0 = 0; j0 < m; ++j0) {
            long tail = 1;
            for (int j = j0 + 1; j < m; ++j) tail *= q;
            for (long t = 0; t < tail; ++t) {
                std::fill(cq.begin(), cq.end(), 0);
                cq[j0] = 1;
                long v = t;
                for (int j = m - 1; j > j0; --j) {
                    cq[j] = static_cast<FieldElem>(v % q);
                    v /= q;
                }
                std::vector<FieldElem> w(n, 0);
                for (int j = 0; j < m; ++j) w[freecols[j]] = cq[j];
                if (x.contains_vector(w)) continue;  // that line of V/h is x/h
                for (int r = 0; r < k - 1; ++r)
                    for (int col = 0; col < n; ++col) zrows[r][col] = h.entry(r, col);
                zrows[k - 1] = w;
                out.push_back(gflinalg::rref(f, n, zrows));
            }
        }
    }
    std::sort(out.begin(), out.end(), gflinalg::less);

    Int expect = qalg::valency(qalg::Params(q, n, k));
    if (Int(static_cast<long>(out.size())) != expect)
        throw internal_error("local_neighbors: count != q[k][n-k]");
    return out;
}

BruteIntersection brute_intersection_numbers(const GraphContext& ctx, const Subspace& x,
                                             const Subspace& y) {
    const int i = distance(ctx, x, y);
    BruteIntersection out{0, 0, 0};
    for (const Subspace& z : local_neighbors(ctx, x)) {
        int d = distance(ctx, z, y);
        if (d == i + 1)
            ++out.b;
        else if (d == i - 1)
            ++out.c;
        else if (d == i)
            ++out.a;
        else
            throw internal_error("brute_intersection_numbers: neighbor at distance " +
                                 std::to_string(d) + " from y with d(x,y)=" + std::to_string(i));
    }
    return out;
}

std::pair<Subspace, Subspace> choose_pair(const GraphContext& ctx, int i, std::uint64_t seed) {
    if (!(1 < i && i < ctx.k()))
        throw std::domain_error("choose_pair: need 1 < i < k");
    const int k = ctx.k();
    std::vector<int> xi(k), yi;
    for (int j = 0; j < k; ++j) xi[j] = j;
    for (int j = 0; j < k - i; ++j) yi.push_back(j);
    for (int j = 0; j < i; ++j) yi.push_back(k + j);
    Subspace x = gflinalg::coordinate_subspace(ctx.spec(), ctx.n(), xi);
    Subspace y = gflinalg::coordinate_subspace(ctx.spec(), ctx.n(), yi);
    if (seed != 0) {
        LinearMap sigma = gflinalg::random_invertible(ctx.spec(), ctx.n(), seed);
        x = gflinalg::apply_map(sigma, x);
        y = gflinalg::apply_map(sigma, y);
    }
    if (distance(ctx, x, y) != i) throw internal_error("choose_pair: distance postcondition");
    return {x, y};
}

}  // namespace grasslab::grassmann
