#pragma once

#include <string>
#include <vector>

#include "grasslab/grassmann.hpp"
#include "grasslab/numeric.hpp"
#include "grasslab/orbits.hpp"
#include "grasslab/qalg.hpp"

namespace grasslab::euclid {

using grassmann::GraphContext;
using gflinalg::Subspace;
using orbits::OrbitClass;
using orbits::YPartition;
using qalg::TableId;

/// Element of the representation space: exact rational coordinates indexed by
/// the canonical P_1 order. Two vectors are equal as elements of E iff they
/// differ by a constant vector (the all-ones line is the kernel of the form).
class EVector {
  public:
    explicit EVector(const GraphContext& ctx);

    const GraphContext& ctx() const { return *ctx_; }
    const std::vector<Rat>& coords() const { return coords_; }
    Rat& operator[](int j) { return coords_[j]; }
    const Rat& operator[](int j) const { return coords_[j]; }

    Rat coord_sum() const;

    EVector& operator+=(const EVector& rhs);
    EVector& operator-=(const EVector& rhs);
    EVector& scale(const Rat& s);
    friend EVector operator+(EVector a, const EVector& b) { return a += b; }
    friend EVector operator-(EVector a, const EVector& b) { return a -= b; }

  private:
    const GraphContext* ctx_;
    std::vector<Rat> coords_;
};

/// Incidence vector of the lines of u.
EVector hat(const GraphContext& ctx, const Subspace& u);

/// The bilinear form: [n] (a . b) - (sum a)(sum b). For hat vectors this is
/// [n][h] - [dim u][dim v] with h = dim(u cap v).
Rat form(const EVector& a, const EVector& b);

/// Equality in E: the difference is a constant vector.
bool e_equal(const EVector& a, const EVector& b);

/// Sum of hat vectors over one partition class.
EVector orbit_vector(const GraphContext& ctx, const YPartition& part, OrbitClass c);

/// The named table computed purely through form() on explicitly built
/// vectors; rejects TableId::Structure (not a Gram table).
QMatrix gram_brute(const GraphContext& ctx, TableId id, const Subspace& x, const Subspace& y);

enum class IdentityId { ALin, ALin2, XcapXplus, Theta1Local, CConditions, GramRank };

const char* to_string(IdentityId id);

struct IdentityCheck {
    std::string name;
    bool pass;
};

struct IdentityReport {
    IdentityId id;
    std::vector<IdentityCheck> checks;
    bool pass() const;
};

/// Exact verification of the named vector identity / condition family at the
/// pair (x, y).
IdentityReport verify_identity(const GraphContext& ctx, IdentityId id, const Subspace& x,
                               const Subspace& y);

/// JSON export: exact rationals in canonical P_1 order plus the serialized
/// P_1 index table.
std::string export_json(const EVector& v);

}  // namespace grasslab::euclid
