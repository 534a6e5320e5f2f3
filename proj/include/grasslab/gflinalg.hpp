#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace grasslab::gflinalg {

/// A field element is its reduced code in [0, q): for prime q the residue, for
/// q = p^e the base-p digit string of the polynomial coordinates (low degree
/// first), reduced modulo the field's fixed modulus.
using FieldElem = std::uint8_t;

/// GF(q) with a fixed compiled-in representation. Instances are interned per q
/// (supported q: 2, 3, 4, 5, 7, 8, 9) so identity comparison is pointer
/// comparison; all arithmetic is table-driven.
class FieldSpec {
  public:
    static const FieldSpec& get(long q);
    static const std::vector<long>& supported();

    long q() const { return q_; }
    long p() const { return p_; }
    int e() const { return e_; }
    /// Modulus coefficients, constant term first; empty for prime fields.
    const std::vector<FieldElem>& modulus() const { return modulus_; }

    FieldElem add(FieldElem a, FieldElem b) const { return add_[idx(a, b)]; }
    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg_[b]); }
    FieldElem neg(FieldElem a) const { return neg_[a]; }
    FieldElem mul(FieldElem a, FieldElem b) const { return mul_[idx(a, b)]; }
    FieldElem inv(FieldElem a) const;

    FieldSpec(const FieldSpec&) = delete;
    FieldSpec& operator=(const FieldSpec&) = delete;

  private:
    explicit FieldSpec(long q, std::vector<FieldElem> modulus);
    std::size_t idx(FieldElem a, FieldElem b) const {
        return static_cast<std::size_t>(a) * q_ + b;
    }

    long q_, p_;
    int e_;
    std::vector<FieldElem> modulus_;
    std::vector<FieldElem> add_, mul_, neg_, inv_;
};

/// Canonical subspace of GF(q)^n: the basis is the unique reduced row echelon
/// form with strictly increasing pivot columns, so two Subspace values are
/// equal as sets iff they are identical.
class Subspace {
  public:
    Subspace() = default;

    const FieldSpec& spec() const { return *spec_; }
    int ambient() const { return n_; }
    int dim() const { return dim_; }
    /// Row-major dim x ambient RREF basis.
    const std::vector<FieldElem>& basis() const { return basis_; }
    FieldElem entry(int r, int c) const { return basis_[static_cast<std::size_t>(r) * n_ + c]; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool operator==(const Subspace& rhs) const;
    bool operator!=(const Subspace& rhs) const { return !(*this == rhs); }

    /// True if the row vector v (length ambient) lies in the subspace.
    bool contains_vector(const std::vector<FieldElem>& v) const;
    bool contains_subspace(const Subspace& other) const;

    /// All q^dim - 1 nonzero vectors, sorted by the global canonical vector
    /// order (coordinates read left to right as a base-q numeral).
    std::vector<std::vector<FieldElem>> nonzero_vectors_sorted() const;

  private:
    friend Subspace make_canonical_unchecked(const FieldSpec&, int, int,
                                             std::vector<FieldElem>);
    const FieldSpec* spec_ = nullptr;
    int n_ = 0, dim_ = 0;
    std::vector<FieldElem> basis_;
    std::vector<int> pivots_;
};

/// Canonical span of arbitrary rows. Idempotent; zero rows allowed.
Subspace rref(const FieldSpec& spec, int n, const std::vector<std::vector<FieldElem>>& rows);

Subspace zero_subspace(const FieldSpec& spec, int n);
Subspace full_space(const FieldSpec& spec, int n);
/// Coordinate subspace spanned by unit vectors e[idx] (0-based).
Subspace coordinate_subspace(const FieldSpec& spec, int n, const std::vector<int>& idxs);

Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);

/// Rank of the rows of u stacked on the rows of v (= dim(u + v)) without
/// building the canonical sum.
int stacked_rank(const Subspace& u, const Subspace& v);

/// All 1-dimensional subspaces of u in the global canonical order.
std::vector<Subspace> omega(const Subspace& u);

/// Visit every l-dimensional subspace of GF(q)^n exactly once, in canonical
/// order (pivot-column sets lexicographically, then free entries read
/// row-major as base-q numerals). Returns the number visited.
long enumerate_subspaces(const FieldSpec& spec, int n, int l,
                         const std::function<void(const Subspace&)>& fn);
std::vector<Subspace> all_subspaces(const FieldSpec& spec, int n, int l);

/// Total order realizing the canonical enumeration order (dim first, then
/// pivot sets, then free digits). Used for stable class lists and golden files.
int compare(const Subspace& a, const Subspace& b);
bool less(const Subspace& a, const Subspace& b);

/// Invertible n x n matrix over GF(q), acting on row vectors from the right:
/// the image of v is v * M.
class LinearMap {
  public:
    LinearMap(const FieldSpec& spec, int n, std::vector<FieldElem> entries);

    static LinearMap identity(const FieldSpec& spec, int n);

    const FieldSpec& spec() const { return *spec_; }
    int n() const { return n_; }
    const std::vector<FieldElem>& entries() const { return a_; }
    FieldElem entry(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

    std::vector<FieldElem> apply(const std::vector<FieldElem>& v) const;

  private:
    const FieldSpec* spec_;
    int n_;
    std::vector<FieldElem> a_;
};

Subspace apply_map(const LinearMap& sigma, const Subspace& u);

/// The unique map sending basis row j of `from` to row j of `to`; both inputs
/// must be bases of the full space. Used by the witness builders.
LinearMap map_from_basis_images(const FieldSpec& spec, int n,
                                const std::vector<std::vector<FieldElem>>& from,
                                const std::vector<std::vector<FieldElem>>& to);

/// Deterministic-for-seed generators (row-by-row rejection of dependent rows).
LinearMap random_invertible(const FieldSpec& spec, int n, std::uint64_t seed);
Subspace random_subspace(const FieldSpec& spec, int n, int l, std::uint64_t seed);

/// Interchange format: "q:n:d:" followed by d comma-separated rows of n
/// base-q digits, RREF-canonical. parse rejects non-canonical input.
std::string serialize(const Subspace& u);
Subspace parse_subspace(const std::string& text);

/// Low-level rank helpers for hot loops (no allocation; destructive).
int rank_u8(const FieldSpec& spec, int n, FieldElem* rows, int nrows);
int rank_gf2(std::uint64_t* rows, int nrows);

/// Pack the basis rows of a GF(2) subspace into one word per row (bit c =
/// column c). Requires q = 2 and ambient <= 64.
void pack_gf2(const Subspace& u, std::uint64_t* out);

namespace detail {
/// Test seam: the generic elimination path, bypassing the packed GF(2) fast
/// path. rref() must agree with this bit-exactly for q = 2.
Subspace rref_force_generic(const FieldSpec& spec, int n,
                            const std::vector<std::vector<FieldElem>>& rows);
}  // namespace detail

}  // namespace grasslab::gflinalg
