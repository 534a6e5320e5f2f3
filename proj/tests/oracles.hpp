// Test-only oracles, deliberately independent of the library code paths they
// are used to check. Everything here is small, slow, and obvious.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <vector>

namespace oracles {

/// Number of 1-dimensional subspaces of GF(q)^m, by enumerating the nonzero
/// vectors and dividing by the q-1 scalars per line.
inline long count_lines_by_enumeration(long q, int m) {
    long total = 1;
    for (int j = 0; j < m; ++j) total *= q;
    long nonzero = 0;
    for (long v = 0; v < total; ++v)
        if (v != 0) ++nonzero;
    return nonzero / (q - 1);
}

/// Row-reduce a tiny GF(2) matrix given as column-bitmask rows; returns the
/// canonical sorted pivot-form rows (empty rows dropped).
inline std::vector<std::uint32_t> rref_bits(std::vector<std::uint32_t> rows, int n) {
    std::size_t r = 0;
    for (int col = 0; col < n && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !((rows[piv] >> col) & 1u)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != r && ((rows[j] >> col) & 1u)) rows[j] ^= rows[r];
        ++r;
    }
    rows.resize(r);
    return rows;
}

/// Count the distinct l-dimensional subspaces of GF(2)^n by canonicalizing
/// every full-rank l x n bit matrix.
inline long count_gf2_subspaces_by_enumeration(int n, int l) {
    std::set<std::vector<std::uint32_t>> seen;
    const std::uint64_t total = 1ull << (static_cast<std::uint64_t>(l) * n);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> rows(l);
        std::uint64_t c = code;
        for (int j = 0; j < l; ++j) {
            rows[j] = static_cast<std::uint32_t>(c & ((1u << n) - 1));
            c >>= n;
        }
        auto canon = rref_bits(rows, n);
        if (static_cast<int>(canon.size()) == l) seen.insert(canon);
    }
    return static_cast<long>(seen.size());
}

/// All 2^d vectors spanned by GF(2) basis rows (as bitmasks), sorted.
inline std::vector<std::uint32_t> span_bits(const std::vector<std::uint32_t>& basis) {
    std::vector<std::uint32_t> out;
    out.reserve(1u << basis.size());
    for (std::uint32_t c = 0; c < (1u << basis.size()); ++c) {
        std::uint32_t v = 0;
        for (std::size_t j = 0; j < basis.size(); ++j)
            if ((c >> j) & 1u) v ^= basis[j];
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// |u cap w| for two sorted vector sets.
inline int common_count(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    int c = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++c; ++i; ++j; }
    }
    return c;
}

/// Breadth-first distances from source over an explicit adjacency oracle:
/// vertices are GF(2) subspaces given by their full (sorted) vector sets;
/// adjacency holds when the sets share exactly 2^(k-1) vectors.
inline std::vector<int> bfs_distances(const std::vector<std::vector<std::uint32_t>>& vertex_sets,
                                      int k, int source) {
    const int want = 1 << (k - 1);
    const int nv = static_cast<int>(vertex_sets.size());
    std::vector<std::vector<int>> adj(nv);
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
            if (common_count(vertex_sets[a], vertex_sets[b]) == want) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
    std::vector<int> dist(nv, -1);
    std::queue<int> bq;
    dist[source] = 0;
    bq.push(source);
    while (!bq.empty()) {
        int u = bq.front();
        bq.pop();
        for (int w : adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                bq.push(w);
            }
    }
    return dist;
}

}  // namespace oracles
