#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "grasslab/grassmann.hpp"
#include "grasslab/numeric.hpp"

namespace grasslab::orbits {

using grassmann::GraphContext;
using gflinalg::LinearMap;
using gflinalg::Subspace;

/// The five orbit classes of the two-vertex stabilizer acting on the local
/// graph, in the printed order.
enum class OrbitClass { B, C, APlus, AZero, AMinus };

constexpr int kClassCount = 5;
const char* to_string(OrbitClass c);

/// Membership test per the defining subspace conditions: distance to y first,
/// then the (z+x+y, z cap x cap y) comparison for the middle layer.
OrbitClass classify(const GraphContext& ctx, const Subspace& x, const Subspace& y,
                    const Subspace& z);

/// The five-class partition of the local graph of x induced by y.
struct YPartition {
    Subspace x, y;
    int i = 0;
    std::array<std::vector<Subspace>, kClassCount> classes;  // canonical order inside

    const std::vector<Subspace>& cls(OrbitClass c) const {
        return classes[static_cast<int>(c)];
    }
    std::size_t total() const;
};

YPartition y_partition(const GraphContext& ctx, const Subspace& x, const Subspace& y);

/// Adjacency counts between classes: entry (r, c) is how many neighbors a
/// vertex of class r has in class c, within the local graph.
struct StructureMatrix {
    std::array<std::array<long, kClassCount>, kClassCount> entries{};
};

QMatrix to_qmatrix(const StructureMatrix& m);

/// Exhaustive per-vertex neighbor counting. equitable is true iff every vertex
/// of every class sees the same per-class counts; the matrix holds those
/// constants (for a non-equitable input: the first member's counts).
std::pair<StructureMatrix, bool> structure_matrix_brute(const GraphContext& ctx,
                                                        const YPartition& part);

/// sigma in Stab(x) with sigma(v) = v', built from matched adapted bases and
/// verified post hoc. Requires dim v = dim v' and dim(v cap x) = dim(v' cap x).
LinearMap witness_single(const GraphContext& ctx, const Subspace& x, const Subspace& v,
                         const Subspace& v2);

/// sigma in Stab(x, y) with sigma(z) = z', for z, z' in the same class. The
/// AZero case follows the psi = eta + rho recipe; the other classes use the
/// generic adapted-basis chain over the lattice of {x, y, z}. Always verified
/// post hoc; a verification failure is an internal error, never silent.
LinearMap witness_pair(const GraphContext& ctx, const Subspace& x, const Subspace& y,
                       const Subspace& z, const Subspace& z2);

/// JSON text: per class, count plus the serialized subspaces in canonical
/// order (the CLI golden format).
std::string serialize(const YPartition& part);

}  // namespace grasslab::orbits
