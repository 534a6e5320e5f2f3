#include "grasslab/orbits.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "grasslab/errors.hpp"
#include "grasslab/parallel.hpp"
#include "grasslab/qalg.hpp"

namespace grasslab::orbits {

using gflinalg::FieldElem;
using gflinalg::FieldSpec;

const char* to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::B: return "B";
        case OrbitClass::C: return "C";
        case OrbitClass::APlus: return "A+";
        case OrbitClass::AZero: return "A0";
        case OrbitClass::AMinus: return "A-";
    }
    return "?";
}

namespace {

struct PairCache {
    int i;
    Subspace cap;   // x cap y
    Subspace plus;  // x + y
};

PairCache make_cache(const GraphContext& ctx, const Subspace& x, const Subspace& y) {
    int i = grassmann::distance(ctx, x, y);
    if (!(1 < i && i < ctx.k()))
        throw std::domain_error("orbits: need 1 < d(x,y) < k");
    return {i, gflinalg::intersect(x, y), gflinalg::sum(x, y)};
}

/// One code path for the defining conditions: d(z,y) from dim(z cap y), then
/// dim(z+x+y) against k+i and dim(z cap x cap y) against k-i.
OrbitClass classify_cached(const GraphContext& ctx, const Subspace& x, const Subspace& y,
                           const PairCache& pc, const Subspace& z) {
    const int k = ctx.k();
    if (z.dim() != k || gflinalg::stacked_rank(z, x) != k + 1)
        throw std::domain_error("classify: z is not adjacent to x");
    const int d_zy = gflinalg::stacked_rank(z, y) - k;
    if (d_zy == pc.i + 1) return OrbitClass::B;
    if (d_zy == pc.i - 1) return OrbitClass::C;
    if (d_zy != pc.i) throw internal_error("classify: neighbor distance to y out of range");
    const int dim_join = gflinalg::stacked_rank(z, pc.plus);   // dim(z + x + y)
    const int dim_meet = k + pc.cap.dim() - gflinalg::stacked_rank(z, pc.cap);
    if (dim_join > k + pc.i) {
        if (dim_meet != k - pc.i)
            throw internal_error("classify: mixed case is supposed to be empty");
        return OrbitClass::APlus;
    }
    return dim_meet == k - pc.i ? OrbitClass::AZero : OrbitClass::AMinus;
}

}  // namespace

OrbitClass classify(const GraphContext& ctx, const Subspace& x, const Subspace& y,
                    const Subspace& z) {
    PairCache pc = make_cache(ctx, x, y);
    return classify_cached(ctx, x, y, pc, z);
}

std::size_t YPartition::total() const {
    std::size_t t = 0;
    for (const auto& c : classes) t += c.size();
    return t;
}

YPartition y_partition(const GraphContext& ctx, const Subspace& x, const Subspace& y) {
    PairCache pc = make_cache(ctx, x, y);
    YPartition part;
    part.x = x;
    part.y = y;
    part.i = pc.i;
    for (const Subspace& z : grassmann::local_neighbors(ctx, x)) {
        OrbitClass cls = classify_cached(ctx, x, y, pc, z);
        part.classes[static_cast<int>(cls)].push_back(z);
    }
    return part;
}

QMatrix to_qmatrix(const StructureMatrix& m) {
    QMatrix out(kClassCount, kClassCount);
    for (int r = 0; r < kClassCount; ++r)
        for (int c = 0; c < kClassCount; ++c) out.at(r, c) = Rat(m.entries[r][c]);
    return out;
}

std::pair<StructureMatrix, bool> structure_matrix_brute(const GraphContext& ctx,
                                                        const YPartition& part) {
    const int k = ctx.k(), n = ctx.n();
    std::vector<const Subspace*> verts;
    std::vector<int> cls_of;
    for (int c = 0; c < kClassCount; ++c)
        for (const Subspace& s : part.classes[c]) {
            verts.push_back(&s);
            cls_of.push_back(c);
        }
    const std::size_t nv = verts.size();
    std::vector<std::array<long, kClassCount>> counts(nv);
    for (auto& row : counts) row.fill(0);

    if (ctx.q() == 2 && n <= 64) {
        std::vector<std::uint64_t> words(nv * k);
        for (std::size_t j = 0; j < nv; ++j) gflinalg::pack_gf2(*verts[j], &words[j * k]);
        parallel_blocks(nv, [&](unsigned, std::size_t lo, std::size_t hi) {
            std::vector<std::uint64_t> scratch(2 * k);
            for (std::size_t a = lo; a < hi; ++a)
                for (std::size_t b = 0; b < nv; ++b) {
                    if (b == a) continue;
                    std::memcpy(scratch.data(), &words[a * k], k * sizeof(std::uint64_t));
                    std::memcpy(scratch.data() + k, &words[b * k], k * sizeof(std::uint64_t));
                    if (gflinalg::rank_gf2(scratch.data(), 2 * k) == k + 1)
                        ++counts[a][cls_of[b]];
                }
        });
    } else {
        const std::size_t stride = static_cast<std::size_t>(k) * n;
        std::vector<FieldElem> rows(nv * stride);
        for (std::size_t j = 0; j < nv; ++j)
            std::memcpy(&rows[j * stride], verts[j]->basis().data(), stride);
        parallel_blocks(nv, [&](unsigned, std::size_t lo, std::size_t hi) {
            std::vector<FieldElem> scratch(2 * stride);
            for (std::size_t a = lo; a < hi; ++a)
                for (std::size_t b = 0; b < nv; ++b) {
                    if (b == a) continue;
                    std::memcpy(scratch.data(), &rows[a * stride], stride);
                    std::memcpy(scratch.data() + stride, &rows[b * stride], stride);
                    if (gflinalg::rank_u8(ctx.spec(), n, scratch.data(), 2 * k) == k + 1)
                        ++counts[a][cls_of[b]];
                }
        });
    }

    StructureMatrix m;
    bool equitable = true;
    std::size_t base = 0;
    for (int c = 0; c < kClassCount; ++c) {
        const std::size_t sz = part.classes[c].size();
        if (sz == 0) {
            m.entries[c].fill(0);
            continue;
        }
        m.entries[c] = counts[base];
        for (std::size_t j = 1; j < sz; ++j)
            if (counts[base + j] != m.entries[c]) equitable = false;
        base += sz;
    }
    return {m, equitable};
}

// ---------------------------------------------------------------------------
// Witness construction
// ---------------------------------------------------------------------------

namespace {

using Vec = std::vector<FieldElem>;

Vec sub_vecs(const FieldSpec& f, Vec a, const Vec& b) {
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = f.sub(a[j], b[j]);
    return a;
}

/// Incremental independence tracker (echelon rows with normalized pivots).
class EchelonTracker {
  public:
    EchelonTracker(const FieldSpec& f, int n) : f_(&f), n_(n) {}

    /// Insert v if independent from the current span; returns success.
    bool try_insert(const Vec& v) {
        Vec w = reduce(v);
        int lead = 0;
        while (lead < n_ && w[lead] == 0) ++lead;
        if (lead == n_) return false;
        FieldElem inv = f_->inv(w[lead]);
        if (inv != 1)
            for (int t = lead; t < n_; ++t) w[t] = f_->mul(w[t], inv);
        rows_.emplace_back(std::move(w), lead);
        return true;
    }

    bool spans(const Subspace& target) const {
        for (int r = 0; r < target.dim(); ++r) {
            Vec v(target.basis().begin() + static_cast<std::size_t>(r) * n_,
                  target.basis().begin() + static_cast<std::size_t>(r + 1) * n_);
            Vec w = reduce(v);
            if (std::any_of(w.begin(), w.end(), [](FieldElem x) { return x != 0; }))
                return false;
        }
        return true;
    }

  private:
    Vec reduce(const Vec& v) const {
        Vec w = v;
        for (const auto& row : rows_) {
            FieldElem c = w[row.second];
            if (c == 0) continue;
            for (int t = row.second; t < n_; ++t)
                w[t] = f_->sub(w[t], f_->mul(c, row.first[t]));
        }
        return w;
    }

    const FieldSpec* f_;
    int n_;
    std::vector<std::pair<Vec, int>> rows_;  // (normalized row, pivot)
};

/// Scan the target's vectors in canonical order, inserting the independent
/// ones; afterwards the tracker must span the target.
void extend_stage(EchelonTracker& tracker, const Subspace& target, std::vector<Vec>& out) {
    for (const auto& v : target.nonzero_vectors_sorted())
        if (tracker.try_insert(v)) out.push_back(v);
    if (!tracker.spans(target))
        throw internal_error("witness chain: stage failed to span its target");
}

void push_vector(EchelonTracker& tracker, const Vec& v, std::vector<Vec>& out) {
    if (!tracker.try_insert(v))
        throw internal_error("witness chain: prescribed vector is dependent");
    out.push_back(v);
}

/// Adapted-basis chain through the lattice of {x, y, z}, in canonical stage
/// order. Sound for the classes where z cap (x+y) = (z cap x) + (z cap y);
/// the AZero class violates that and takes the dedicated recipe below.
std::vector<Vec> generic_chain(const GraphContext& ctx, const Subspace& x, const Subspace& y,
                               const Subspace& z, std::vector<int>* stage_sizes) {
    const FieldSpec& f = ctx.spec();
    const int n = ctx.n();
    Subspace xy = gflinalg::intersect(x, y);
    Subspace xz = gflinalg::intersect(x, z);
    Subspace yz = gflinalg::intersect(y, z);
    Subspace xyz = gflinalg::intersect(xy, z);
    Subspace full = gflinalg::full_space(f, n);
    const Subspace* targets[] = {&xyz, &xy, &xz, &yz, &x, &y, &z, &full};
    EchelonTracker tracker(f, n);
    std::vector<Vec> chain;
    stage_sizes->clear();
    for (const Subspace* t : targets) {
        std::size_t before = chain.size();
        extend_stage(tracker, *t, chain);
        stage_sizes->push_back(static_cast<int>(chain.size() - before));
    }
    return chain;
}

/// The psi = eta + rho recipe for the AZero class: chain
/// [R(x cap y), S(z cap x), psi, Q(y), rho, W(V)] with psi the first vector of
/// (z+x) cap y outside x cap y and rho the first vector of x with
/// psi - rho in z (so eta = psi - rho lies in z).
std::vector<Vec> azero_chain(const GraphContext& ctx, const Subspace& x, const Subspace& y,
                             const Subspace& z, std::vector<int>* stage_sizes) {
    const FieldSpec& f = ctx.spec();
    const int n = ctx.n();
    Subspace xy = gflinalg::intersect(x, y);
    Subspace zx = gflinalg::intersect(z, x);
    Subspace w = gflinalg::intersect(gflinalg::sum(z, x), y);

    Vec psi;
    for (const auto& v : w.nonzero_vectors_sorted())
        if (!xy.contains_vector(v)) {
            psi = v;
            break;
        }
    if (psi.empty()) throw internal_error("azero chain: no psi outside x cap y");

    Vec rho;
    for (const auto& v : x.nonzero_vectors_sorted())
        if (z.contains_vector(sub_vecs(f, psi, v))) {
            rho = v;
            break;
        }
    if (rho.empty()) throw internal_error("azero chain: psi does not split over z and x");

    EchelonTracker tracker(f, n);
    std::vector<Vec> chain;
    stage_sizes->clear();
    auto stage = [&](const Subspace& target) {
        std::size_t before = chain.size();
        extend_stage(tracker, target, chain);
        stage_sizes->push_back(static_cast<int>(chain.size() - before));
    };
    stage(xy);
    stage(zx);
    push_vector(tracker, psi, chain);
    stage_sizes->push_back(1);
    stage(y);
    push_vector(tracker, rho, chain);
    stage_sizes->push_back(1);
    stage(gflinalg::full_space(f, n));
    return chain;
}

void verify_witness(const LinearMap& sigma, std::initializer_list<const Subspace*> fixed,
                    const Subspace& moved_from, const Subspace& moved_to) {
    for (const Subspace* s : fixed)
        if (gflinalg::apply_map(sigma, *s) != *s)
            throw internal_error("witness verification: a required subspace moved");
    if (gflinalg::apply_map(sigma, moved_from) != moved_to)
        throw internal_error("witness verification: z does not map to z'");
}

}  // namespace

LinearMap witness_single(const GraphContext& ctx, const Subspace& x, const Subspace& v,
                         const Subspace& v2) {
    if (v.dim() != v2.dim() ||
        gflinalg::intersect(v, x).dim() != gflinalg::intersect(v2, x).dim())
        throw class_mismatch_error("witness_single: (dim v, dim v cap x) invariants differ");
    const FieldSpec& f = ctx.spec();
    const int n = ctx.n();

    auto chain_for = [&](const Subspace& vv) {
        EchelonTracker tracker(f, n);
        std::vector<Vec> chain;
        extend_stage(tracker, gflinalg::intersect(vv, x), chain);
        extend_stage(tracker, vv, chain);
        extend_stage(tracker, x, chain);
        extend_stage(tracker, gflinalg::full_space(f, n), chain);
        return chain;
    };
    LinearMap sigma = gflinalg::map_from_basis_images(f, n, chain_for(v), chain_for(v2));
    verify_witness(sigma, {&x}, v, v2);
    return sigma;
}

LinearMap witness_pair(const GraphContext& ctx, const Subspace& x, const Subspace& y,
                       const Subspace& z, const Subspace& z2) {
    PairCache pc = make_cache(ctx, x, y);
    OrbitClass cls = classify_cached(ctx, x, y, pc, z);
    OrbitClass cls2 = classify_cached(ctx, x, y, pc, z2);
    if (cls != cls2)
        throw class_mismatch_error(std::string("witness_pair: classes differ (") +
                                   to_string(cls) + " vs " + to_string(cls2) + ")");

    std::vector<int> sizes_from, sizes_to;
    std::vector<Vec> from, to;
    if (cls == OrbitClass::AZero) {
        from = azero_chain(ctx, x, y, z, &sizes_from);
        to = azero_chain(ctx, x, y, z2, &sizes_to);
    } else {
        from = generic_chain(ctx, x, y, z, &sizes_from);
        to = generic_chain(ctx, x, y, z2, &sizes_to);
    }
    if (sizes_from != sizes_to)
        throw internal_error("witness_pair: chain stage sizes differ within one class");
    LinearMap sigma = gflinalg::map_from_basis_images(ctx.spec(), ctx.n(), from, to);
    verify_witness(sigma, {&x, &y}, z, z2);
    return sigma;
}

std::string serialize(const YPartition& part) {
    nlohmann::json j;
    j["x"] = gflinalg::serialize(part.x);
    j["y"] = gflinalg::serialize(part.y);
    j["i"] = part.i;
    nlohmann::json classes;
    for (int c = 0; c < kClassCount; ++c) {
        nlohmann::json entry;
        entry["count"] = part.classes[c].size();
        nlohmann::json list = nlohmann::json::array();
        for (const Subspace& s : part.classes[c]) list.push_back(gflinalg::serialize(s));
        entry["subspaces"] = std::move(list);
        classes[to_string(static_cast<OrbitClass>(c))] = std::move(entry);
    }
    j["classes"] = std::move(classes);
    return j.dump();
}

}  // namespace grasslab::orbits
