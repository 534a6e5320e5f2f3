#pragma once

#include <utility>
#include <vector>

#include "grasslab/numeric.hpp"

namespace grasslab::qalg {

/// Parameter block (q, n, k) with optional distance i. Construction enforces
/// the standing constraints q a prime power >= 2 and n > 2k >= 6; the i range
/// is checked per operation because a few formulas admit 0 <= i <= k while the
/// table formulas need 1 < i < k.
struct Params {
    long q, n, k;
    long i;  // -1 when absent

    Params(long q_, long n_, long k_, long i_ = -1);

    bool has_i() const { return i >= 0; }
    void require_i(long lo, long hi) const;  // inclusive bounds
};

/// [m] = (q^m - 1)/(q - 1). Rejects m < 0.
Int bracket(long m, long q);

/// Gaussian binomial: number of r-dimensional subspaces of an m-dimensional
/// space over GF(q). Rejects r < 0 or r > m.
Int gauss_binom(long m, long r, long q);

Int valency(const Params& p);  // q[k][n-k]

struct IntersectionNumbers {
    Int b, c, a;
};
IntersectionNumbers intersection_numbers(const Params& p);  // 0 <= i <= k

struct OrbitSizes {
    Int a_plus, a_zero, a_minus;
};
OrbitSizes orbit_sizes(const Params& p);  // 1 < i < k

Int eigenvalue_theta(const Params& p);  // 0 <= i <= k

/// a_1 = q[k] + q[n-k] - q - 1, the local-graph valency.
Int a1(const Params& p);

/// The nine vectors whose pairwise inner products the closed tables cover.
enum class BasisVec { XHat, YHat, XCapHat, XPlusHat, B, C, APlus, AZero, AMinus };

const char* to_string(BasisVec v);

/// Closed form for the inner product of any two of the nine vectors
/// (symmetric in u, v). This is the uniform formula registry: every Gram-style
/// table below is a block of it, so brute-force comparators can iterate
/// (table, row, col) and always land here.
Rat pair_form(BasisVec u, BasisVec v, const Params& p);  // 1 < i < k

enum class TableId { GeomGram, CombGram, CrossGram, AGeom, AComb, AA, Structure };

const char* to_string(TableId id);

struct TableSpec {
    TableId id;
    std::vector<BasisVec> rows, cols;
};

/// Row/column layout of each table, in the printed order.
const TableSpec& table_spec(TableId id);

/// One closed-table entry; for Gram tables this is pair_form(rows[r], cols[c]),
/// for Structure the orbit-adjacency count.
Rat table_entry(TableId id, const Params& p, int r, int c);

QMatrix closed_table(TableId id, const Params& p);  // 1 < i < k

/// Exact inverse of the geometric Gram matrix, as printed (prefactor times an
/// integer-entry pattern).
QMatrix geometric_gram_inverse(const Params& p);

enum class TransitionId { ALin, ALin2, XcapXplus };

const char* to_string(TransitionId id);

/// Coefficient matrices expanding target vectors in a basis:
///   ALin:      A+, A0, A- in the geometric basis      (4 x 3)
///   ALin2:     A+, A0, A- in the combinatorial basis  (4 x 3)
///   XcapXplus: x^y and x+y in the combinatorial basis (4 x 2)
/// One column per target, one row per basis vector in printed order.
QMatrix basis_transition(TransitionId id, const Params& p);

/// Row/target layout for a transition id (rows = basis, cols = targets).
struct TransitionSpec {
    TransitionId id;
    std::vector<BasisVec> basis, targets;
};
const TransitionSpec& transition_spec(TransitionId id);

struct EigenTriple {
    Int value;
    QMatrix row;  // 1 x 5
    QMatrix col;  // 5 x 1
};

/// The five (eigenvalue, row eigenvector, column eigenvector) triples of the
/// structure matrix, as printed.
std::vector<EigenTriple> eigen_data(const Params& p);

/// The five (eigenvalue, multiplicity) pairs of the local-graph spectrum.
std::vector<std::pair<Int, Int>> local_spectrum_closed(const Params& p);

}  // namespace grasslab::qalg
