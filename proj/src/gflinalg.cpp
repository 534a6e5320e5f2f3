#include "grasslab/gflinalg.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include "grasslab/kernels.hpp"

namespace grasslab::gflinalg {

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

namespace {

long smallest_prime_factor(long q) {
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) return d;
    return q;
}

std::vector<FieldElem> code_to_digits(long code, long p, int e) {
    std::vector<FieldElem> d(e);
    for (int j = 0; j < e; ++j) {
        d[j] = static_cast<FieldElem>(code % p);
        code /= p;
    }
    return d;
}

long digits_to_code(const std::vector<FieldElem>& d, long p) {
    long code = 0;
    for (int j = static_cast<int>(d.size()) - 1; j >= 0; --j) code = code * p + d[j];
    return code;
}

}  // namespace

FieldSpec::FieldSpec(long q, std::vector<FieldElem> modulus)
    : q_(q), p_(smallest_prime_factor(q)), modulus_(std::move(modulus)) {
    long rest = q;
    e_ = 0;
    while (rest % p_ == 0) { rest /= p_; ++e_; }
    if (rest != 1) throw std::domain_error("FieldSpec: q is not a prime power");
    if (e_ == 1 && !modulus_.empty())
        throw std::domain_error("FieldSpec: prime field takes no modulus");
    if (e_ > 1 && static_cast<int>(modulus_.size()) != e_ + 1)
        throw std::domain_error("FieldSpec: modulus degree mismatch");

    const std::size_t qs = static_cast<std::size_t>(q_);
    add_.resize(qs * qs);
    mul_.resize(qs * qs);
    neg_.resize(qs);
    inv_.assign(qs, 0);

    for (long a = 0; a < q_; ++a) {
        auto da = code_to_digits(a, p_, e_);
        for (int j = 0; j < e_; ++j) da[j] = static_cast<FieldElem>((p_ - da[j]) % p_);
        neg_[a] = static_cast<FieldElem>(digits_to_code(da, p_));
    }
    for (long a = 0; a < q_; ++a) {
        auto da = code_to_digits(a, p_, e_);
        for (long b = 0; b < q_; ++b) {
            auto db = code_to_digits(b, p_, e_);
            // add
            std::vector<FieldElem> ds(e_);
            for (int j = 0; j < e_; ++j)
                ds[j] = static_cast<FieldElem>((da[j] + db[j]) % p_);
            add_[idx(static_cast<FieldElem>(a), static_cast<FieldElem>(b))] =
                static_cast<FieldElem>(digits_to_code(ds, p_));
            // mul: polynomial product reduced by the monic modulus
            std::vector<long> prod(2 * e_ - 1, 0);
            for (int x = 0; x < e_; ++x)
                for (int y = 0; y < e_; ++y) prod[x + y] += long(da[x]) * db[y];
            for (auto& v : prod) v %= p_;
            for (int d = 2 * e_ - 2; d >= e_; --d) {
                long c = prod[d] % p_;
                if (c == 0) continue;
                for (int j = 0; j <= e_; ++j) {
                    long& t = prod[d - e_ + j];
                    t = ((t - c * modulus_[j]) % p_ + p_) % p_;
                }
            }
            std::vector<FieldElem> dm(e_);
            for (int j = 0; j < e_; ++j)
                dm[j] = static_cast<FieldElem>(((prod[j] % p_) + p_) % p_);
            mul_[idx(static_cast<FieldElem>(a), static_cast<FieldElem>(b))] =
                static_cast<FieldElem>(digits_to_code(dm, p_));
        }
    }
    for (long a = 1; a < q_; ++a)
        for (long b = 1; b < q_; ++b)
            if (mul(static_cast<FieldElem>(a), static_cast<FieldElem>(b)) == 1) {
                inv_[a] = static_cast<FieldElem>(b);
                break;
            }
}

FieldElem FieldSpec::inv(FieldElem a) const {
    if (a == 0) throw std::domain_error("FieldSpec: inverse of zero");
    return inv_[a];
}

const std::vector<long>& FieldSpec::supported() {
    static const std::vector<long> s{2, 3, 4, 5, 7, 8, 9};
    return s;
}

const FieldSpec& FieldSpec::get(long q) {
    // Fixed moduli (constant term first) so canonical orders are stable
    // across runs and platforms.
    static const std::map<long, std::unique_ptr<FieldSpec>>& registry = *[] {
        auto* m = new std::map<long, std::unique_ptr<FieldSpec>>;
        auto put = [&](long qq, std::vector<FieldElem> mod) {
            m->emplace(qq, std::unique_ptr<FieldSpec>(new FieldSpec(qq, std::move(mod))));
        };
        put(2, {});
        put(3, {});
        put(5, {});
        put(7, {});
        put(4, {1, 1, 1});     // t^2 + t + 1
        put(8, {1, 1, 0, 1});  // t^3 + t + 1
        put(9, {1, 0, 1});     // t^2 + 1
        return m;
    }();
    auto it = registry.find(q);
    if (it == registry.end())
        throw std::domain_error("FieldSpec: unsupported field order " + std::to_string(q));
    return *it->second;
}

// ---------------------------------------------------------------------------
// Elimination cores
// ---------------------------------------------------------------------------

namespace {

using Rows = std::vector<std::vector<FieldElem>>;

/// In-place reduced row echelon form; returns pivot columns. Unique canonical
/// output regardless of input row order.
std::vector<int> rref_rows_generic(const FieldSpec& f, int n, Rows& rows) {
    std::vector<int> pivots;
    int r = 0;
    const int m = static_cast<int>(rows.size());
    for (int col = 0; col < n && r < m; ++col) {
        int piv = -1;
        for (int j = r; j < m; ++j)
            if (rows[j][col] != 0) { piv = j; break; }
        if (piv < 0) continue;
        rows[piv].swap(rows[r]);
        FieldElem s = f.inv(rows[r][col]);
        if (s != 1)
            for (int c = col; c < n; ++c) rows[r][c] = f.mul(rows[r][c], s);
        for (int j = 0; j < m; ++j) {
            if (j == r) continue;
            FieldElem c0 = rows[j][col];
            if (c0 == 0) continue;
            for (int c = col; c < n; ++c)
                rows[j][c] = f.sub(rows[j][c], f.mul(c0, rows[r][c]));
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::vector<int> rref_rows_gf2(int n, Rows& rows) {
    const int m = static_cast<int>(rows.size());
    std::vector<std::uint64_t> w(m, 0);
    for (int j = 0; j < m; ++j)
        for (int c = 0; c < n; ++c)
            if (rows[j][c]) w[j] |= 1ull << c;
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < n && r < m; ++col) {
        int piv = -1;
        for (int j = r; j < m; ++j)
            if ((w[j] >> col) & 1ull) { piv = j; break; }
        if (piv < 0) continue;
        std::swap(w[piv], w[r]);
        const std::uint64_t pw = w[r];
        kernels::xor_eliminate_column(w.data(), static_cast<std::size_t>(r), pw,
                                      static_cast<unsigned>(col));
        kernels::xor_eliminate_column(w.data() + r + 1, static_cast<std::size_t>(m - r - 1),
                                      pw, static_cast<unsigned>(col));
        pivots.push_back(col);
        ++r;
    }
    rows.assign(r, std::vector<FieldElem>(n, 0));
    for (int j = 0; j < r; ++j)
        for (int c = 0; c < n; ++c) rows[j][c] = static_cast<FieldElem>((w[j] >> c) & 1ull);
    return pivots;
}

std::vector<int> rref_rows(const FieldSpec& f, int n, Rows& rows) {
    for (const auto& row : rows)
        if (static_cast<int>(row.size()) != n)
            throw std::domain_error("rref: row length mismatch");
    if (f.q() == 2 && n <= 64) return rref_rows_gf2(n, rows);
    return rref_rows_generic(f, n, rows);
}

/// Reduce v against a canonical basis in place; v becomes zero iff contained.
void reduce_against(const FieldSpec& f, int n, const std::vector<FieldElem>& flat,
                    const std::vector<int>& pivots, std::vector<FieldElem>& v) {
    for (std::size_t j = 0; j < pivots.size(); ++j) {
        FieldElem c = v[pivots[j]];
        if (c == 0) continue;
        const FieldElem* row = flat.data() + j * n;
        for (int t = 0; t < n; ++t) v[t] = f.sub(v[t], f.mul(c, row[t]));
    }
}

}  // namespace

Subspace make_canonical_unchecked(const FieldSpec& spec, int n, int dim,
                                  std::vector<FieldElem> flat) {
    Subspace s;
    s.spec_ = &spec;
    s.n_ = n;
    s.dim_ = dim;
    s.basis_ = std::move(flat);
    s.pivots_.resize(dim);
    for (int r = 0; r < dim; ++r) {
        int c = 0;
        while (c < n && s.basis_[static_cast<std::size_t>(r) * n + c] == 0) ++c;
        s.pivots_[r] = c;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

bool Subspace::operator==(const Subspace& rhs) const {
    return spec_ == rhs.spec_ && n_ == rhs.n_ && dim_ == rhs.dim_ && basis_ == rhs.basis_;
}

bool Subspace::contains_vector(const std::vector<FieldElem>& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::domain_error("contains_vector: length");
    std::vector<FieldElem> w = v;
    reduce_against(*spec_, n_, basis_, pivots_, w);
    return std::all_of(w.begin(), w.end(), [](FieldElem x) { return x == 0; });
}

bool Subspace::contains_subspace(const Subspace& other) const {
    if (spec_ != other.spec_ || n_ != other.n_)
        throw std::domain_error("contains_subspace: ambient mismatch");
    for (int r = 0; r < other.dim_; ++r) {
        std::vector<FieldElem> v(other.basis_.begin() + static_cast<std::size_t>(r) * n_,
                                 other.basis_.begin() + static_cast<std::size_t>(r + 1) * n_);
        if (!contains_vector(v)) return false;
    }
    return true;
}

std::vector<std::vector<FieldElem>> Subspace::nonzero_vectors_sorted() const {
    const FieldSpec& f = *spec_;
    const long q = f.q();
    long total = 1;
    for (int j = 0; j < dim_; ++j) total *= q;
    std::vector<std::vector<FieldElem>> out;
    out.reserve(total - 1);
    std::vector<FieldElem> coef(dim_, 0);
    for (long t = 1; t < total; ++t) {
        long v = t;
        for (int j = dim_ - 1; j >= 0; --j) {
            coef[j] = static_cast<FieldElem>(v % q);
            v /= q;
        }
        std::vector<FieldElem> w(n_, 0);
        for (int j = 0; j < dim_; ++j) {
            if (coef[j] == 0) continue;
            const FieldElem* row = basis_.data() + static_cast<std::size_t>(j) * n_;
            for (int c = 0; c < n_; ++c)
                w[c] = f.add(w[c], f.mul(coef[j], row[c]));
        }
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subspace rref(const FieldSpec& spec, int n, const Rows& rows) {
    Rows work = rows;
    rref_rows(spec, n, work);
    std::vector<FieldElem> flat;
    flat.reserve(work.size() * n);
    for (const auto& r : work) flat.insert(flat.end(), r.begin(), r.end());
    return make_canonical_unchecked(spec, n, static_cast<int>(work.size()), std::move(flat));
}

namespace detail {
Subspace rref_force_generic(const FieldSpec& spec, int n, const Rows& rows) {
    Rows work = rows;
    rref_rows_generic(spec, n, work);
    std::vector<FieldElem> flat;
    flat.reserve(work.size() * n);
    for (const auto& r : work) flat.insert(flat.end(), r.begin(), r.end());
    return make_canonical_unchecked(spec, n, static_cast<int>(work.size()), std::move(flat));
}
}  // namespace detail

Subspace zero_subspace(const FieldSpec& spec, int n) {
    return make_canonical_unchecked(spec, n, 0, {});
}

Subspace full_space(const FieldSpec& spec, int n) {
    std::vector<int> idx(n);
    for (int j = 0; j < n; ++j) idx[j] = j;
    return coordinate_subspace(spec, n, idx);
}

Subspace coordinate_subspace(const FieldSpec& spec, int n, const std::vector<int>& idxs) {
    std::vector<int> sorted = idxs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<FieldElem> flat(sorted.size() * n, 0);
    for (std::size_t r = 0; r < sorted.size(); ++r) {
        if (sorted[r] < 0 || sorted[r] >= n || (r > 0 && sorted[r] == sorted[r - 1]))
            throw std::domain_error("coordinate_subspace: bad index set");
        flat[r * n + sorted[r]] = 1;
    }
    return make_canonical_unchecked(spec, n, static_cast<int>(sorted.size()), std::move(flat));
}

Subspace intersect(const Subspace& u, const Subspace& v) {
    if (&u.spec() != &v.spec() || u.ambient() != v.ambient())
        throw std::domain_error("intersect: ambient mismatch");
    const FieldSpec& f = u.spec();
    const int n = u.ambient();
    // Zassenhaus: reduce [U|U; V|0]; rows with zero left half carry u negated
    // combinations equal to v combinations, i.e. vectors of the intersection.
    Rows work;
    work.reserve(u.dim() + v.dim());
    for (int r = 0; r < u.dim(); ++r) {
        std::vector<FieldElem> row(2 * n, 0);
        for (int c = 0; c < n; ++c) {
            row[c] = u.entry(r, c);
            row[n + c] = u.entry(r, c);
        }
        work.push_back(std::move(row));
    }
    for (int r = 0; r < v.dim(); ++r) {
        std::vector<FieldElem> row(2 * n, 0);
        for (int c = 0; c < n; ++c) row[c] = v.entry(r, c);
        work.push_back(std::move(row));
    }
    rref_rows(f, 2 * n, work);
    Rows inter;
    int sum_dim = 0;
    for (const auto& row : work) {
        bool left_zero = std::all_of(row.begin(), row.begin() + n,
                                     [](FieldElem x) { return x == 0; });
        if (left_zero)
            inter.emplace_back(row.begin() + n, row.end());
        else
            ++sum_dim;
    }
    Subspace result = rref(f, n, inter);
    if (result.dim() + sum_dim != u.dim() + v.dim())
        throw std::logic_error("intersect: modularity violated (internal)");
    return result;
}

Subspace sum(const Subspace& u, const Subspace& v) {
    if (&u.spec() != &v.spec() || u.ambient() != v.ambient())
        throw std::domain_error("sum: ambient mismatch");
    Rows rows;
    rows.reserve(u.dim() + v.dim());
    for (int r = 0; r < u.dim(); ++r) {
        std::vector<FieldElem> row(u.basis().begin() + static_cast<std::size_t>(r) * u.ambient(),
                                   u.basis().begin() + static_cast<std::size_t>(r + 1) * u.ambient());
        rows.push_back(std::move(row));
    }
    for (int r = 0; r < v.dim(); ++r) {
        std::vector<FieldElem> row(v.basis().begin() + static_cast<std::size_t>(r) * v.ambient(),
                                   v.basis().begin() + static_cast<std::size_t>(r + 1) * v.ambient());
        rows.push_back(std::move(row));
    }
    return rref(u.spec(), u.ambient(), rows);
}

int stacked_rank(const Subspace& u, const Subspace& v) {
    if (&u.spec() != &v.spec() || u.ambient() != v.ambient())
        throw std::domain_error("stacked_rank: ambient mismatch");
    const int n = u.ambient();
    if (u.spec().q() == 2 && n <= 64) {
        std::uint64_t w[128];
        pack_gf2(u, w);
        pack_gf2(v, w + u.dim());
        return rank_gf2(w, u.dim() + v.dim());
    }
    std::vector<FieldElem> rows((u.dim() + v.dim()) * n);
    std::memcpy(rows.data(), u.basis().data(), u.basis().size());
    std::memcpy(rows.data() + u.basis().size(), v.basis().data(), v.basis().size());
    return rank_u8(u.spec(), n, rows.data(), u.dim() + v.dim());
}

std::vector<Subspace> omega(const Subspace& u) {
    const FieldSpec& f = u.spec();
    const long q = f.q();
    const int n = u.ambient(), d = u.dim();
    std::vector<Subspace> lines;
    std::vector<FieldElem> coef(d, 0);
    for (int j0 = 0; j0 < d; ++j0) {
        long tail = 1;
        for (int j = j0 + 1; j < d; ++j) tail *= q;
        for (long t = 0; t < tail; ++t) {
            std::fill(coef.begin(), coef.end(), 0);
            coef[j0] = 1;
            long v = t;
            for (int j = d - 1; j > j0; --j) {
                coef[j] = static_cast<FieldElem>(v % q);
                v /= q;
            }
            std::vector<FieldElem> w(n, 0);
            for (int j = j0; j < d; ++j) {
                if (coef[j] == 0) continue;
                const FieldElem* row = u.basis().data() + static_cast<std::size_t>(j) * n;
                for (int c = 0; c < n; ++c) w[c] = f.add(w[c], f.mul(coef[j], row[c]));
            }
            lines.push_back(make_canonical_unchecked(f, n, 1, std::move(w)));
        }
    }
    std::sort(lines.begin(), lines.end(), less);
    return lines;
}

long enumerate_subspaces(const FieldSpec& spec, int n, int l,
                         const std::function<void(const Subspace&)>& fn) {
    if (l < 0 || l > n) throw std::domain_error("enumerate_subspaces: l out of [0, n]");
    if (l == 0) {
        fn(zero_subspace(spec, n));
        return 1;
    }
    const long q = spec.q();
    std::vector<int> piv(l);
    for (int j = 0; j < l; ++j) piv[j] = j;
    long count = 0;
    for (;;) {
        std::vector<bool> is_piv(n, false);
        for (int c : piv) is_piv[c] = true;
        std::vector<std::pair<int, int>> free_pos;  // (row, col) row-major
        for (int r = 0; r < l; ++r)
            for (int c = piv[r] + 1; c < n; ++c)
                if (!is_piv[c]) free_pos.emplace_back(r, c);
        unsigned long long combos = 1;
        for (std::size_t j = 0; j < free_pos.size(); ++j) {
            combos *= static_cast<unsigned long long>(q);
            if (combos > (1ull << 62))
                throw std::domain_error("enumerate_subspaces: free-entry space too large");
        }
        std::vector<FieldElem> flat(static_cast<std::size_t>(l) * n, 0);
        for (int r = 0; r < l; ++r) flat[static_cast<std::size_t>(r) * n + piv[r]] = 1;
        for (unsigned long long t = 0; t < combos; ++t) {
            unsigned long long v = t;
            for (std::size_t j = free_pos.size(); j-- > 0;) {
                auto [r, c] = free_pos[j];
                flat[static_cast<std::size_t>(r) * n + c] = static_cast<FieldElem>(v % q);
                v /= q;
            }
            fn(make_canonical_unchecked(spec, n, l, flat));
            ++count;
        }
        // next pivot combination in lex order
        int j = l - 1;
        while (j >= 0 && piv[j] == n - l + j) --j;
        if (j < 0) break;
        ++piv[j];
        for (int t = j + 1; t < l; ++t) piv[t] = piv[t - 1] + 1;
    }
    return count;
}

std::vector<Subspace> all_subspaces(const FieldSpec& spec, int n, int l) {
    std::vector<Subspace> out;
    enumerate_subspaces(spec, n, l, [&](const Subspace& s) { out.push_back(s); });
    return out;
}

int compare(const Subspace& a, const Subspace& b) {
    if (&a.spec() != &b.spec() || a.ambient() != b.ambient())
        throw std::domain_error("compare: ambient mismatch");
    if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
    if (a.pivots() != b.pivots()) return a.pivots() < b.pivots() ? -1 : 1;
    if (a.basis() != b.basis()) return a.basis() < b.basis() ? -1 : 1;
    return 0;
}

bool less(const Subspace& a, const Subspace& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// LinearMap
// ---------------------------------------------------------------------------

LinearMap::LinearMap(const FieldSpec& spec, int n, std::vector<FieldElem> entries)
    : spec_(&spec), n_(n), a_(std::move(entries)) {
    if (static_cast<int>(a_.size()) != n * n)
        throw std::domain_error("LinearMap: entry count mismatch");
    std::vector<FieldElem> work = a_;
    if (rank_u8(spec, n, work.data(), n) != n)
        throw std::domain_error("LinearMap: matrix is singular");
}

LinearMap LinearMap::identity(const FieldSpec& spec, int n) {
    std::vector<FieldElem> a(static_cast<std::size_t>(n) * n, 0);
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j) * n + j] = 1;
    return LinearMap(spec, n, std::move(a));
}

std::vector<FieldElem> LinearMap::apply(const std::vector<FieldElem>& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::domain_error("LinearMap: length");
    std::vector<FieldElem> w(n_, 0);
    for (int r = 0; r < n_; ++r) {
        if (v[r] == 0) continue;
        const FieldElem* row = a_.data() + static_cast<std::size_t>(r) * n_;
        for (int c = 0; c < n_; ++c) w[c] = spec_->add(w[c], spec_->mul(v[r], row[c]));
    }
    return w;
}

Subspace apply_map(const LinearMap& sigma, const Subspace& u) {
    if (&sigma.spec() != &u.spec() || sigma.n() != u.ambient())
        throw std::domain_error("apply_map: ambient mismatch");
    Rows rows;
    rows.reserve(u.dim());
    for (int r = 0; r < u.dim(); ++r) {
        std::vector<FieldElem> row(u.basis().begin() + static_cast<std::size_t>(r) * u.ambient(),
                                   u.basis().begin() + static_cast<std::size_t>(r + 1) * u.ambient());
        rows.push_back(sigma.apply(row));
    }
    return rref(u.spec(), u.ambient(), rows);
}

LinearMap map_from_basis_images(const FieldSpec& spec, int n,
                                const std::vector<std::vector<FieldElem>>& from,
                                const std::vector<std::vector<FieldElem>>& to) {
    if (static_cast<int>(from.size()) != n || static_cast<int>(to.size()) != n)
        throw std::domain_error("map_from_basis_images: need n rows");
    // Solve B * A = T for A (row-vector convention), via [B | T] -> [I | A].
    Rows aug(n, std::vector<FieldElem>(2 * n, 0));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            aug[r][c] = from[r][c];
            aug[r][n + c] = to[r][c];
        }
    }
    rref_rows(spec, 2 * n, aug);
    if (static_cast<int>(aug.size()) != n)
        throw std::domain_error("map_from_basis_images: 'from' rows are dependent");
    std::vector<FieldElem> a(static_cast<std::size_t>(n) * n, 0);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if ((aug[r][c] != 0) != (r == c) || (r == c && aug[r][c] != 1))
                throw std::domain_error("map_from_basis_images: 'from' rows are dependent");
            a[static_cast<std::size_t>(r) * n + c] = aug[r][n + c];
        }
    }
    return LinearMap(spec, n, std::move(a));
}

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

namespace {

std::vector<FieldElem> random_vector(std::mt19937_64& gen, long q, int n) {
    std::vector<FieldElem> v(n);
    for (int c = 0; c < n; ++c) v[c] = static_cast<FieldElem>(gen() % static_cast<unsigned long>(q));
    return v;
}

}  // namespace

LinearMap random_invertible(const FieldSpec& spec, int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Rows rows;
    std::vector<FieldElem> scratch(static_cast<std::size_t>(n + 1) * n);
    while (static_cast<int>(rows.size()) < n) {
        auto cand = random_vector(gen, spec.q(), n);
        std::size_t off = 0;
        for (const auto& r : rows) {
            std::memcpy(scratch.data() + off, r.data(), n);
            off += n;
        }
        std::memcpy(scratch.data() + off, cand.data(), n);
        if (rank_u8(spec, n, scratch.data(), static_cast<int>(rows.size()) + 1) ==
            static_cast<int>(rows.size()) + 1)
            rows.push_back(std::move(cand));
    }
    std::vector<FieldElem> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return LinearMap(spec, n, std::move(flat));
}

Subspace random_subspace(const FieldSpec& spec, int n, int l, std::uint64_t seed) {
    if (l < 0 || l > n) throw std::domain_error("random_subspace: l out of [0, n]");
    std::mt19937_64 gen(seed);
    Rows rows;
    std::vector<FieldElem> scratch(static_cast<std::size_t>(l + 1) * n);
    while (static_cast<int>(rows.size()) < l) {
        auto cand = random_vector(gen, spec.q(), n);
        std::size_t off = 0;
        for (const auto& r : rows) {
            std::memcpy(scratch.data() + off, r.data(), n);
            off += n;
        }
        std::memcpy(scratch.data() + off, cand.data(), n);
        if (rank_u8(spec, n, scratch.data(), static_cast<int>(rows.size()) + 1) ==
            static_cast<int>(rows.size()) + 1)
            rows.push_back(std::move(cand));
    }
    return rref(spec, n, rows);
}

// ---------------------------------------------------------------------------
// Interchange format
// ---------------------------------------------------------------------------

std::string serialize(const Subspace& u) {
    std::ostringstream os;
    os << u.spec().q() << ':' << u.ambient() << ':' << u.dim() << ':';
    for (int r = 0; r < u.dim(); ++r) {
        if (r) os << ',';
        for (int c = 0; c < u.ambient(); ++c)
            os << static_cast<char>('0' + u.entry(r, c));
    }
    return os.str();
}

Subspace parse_subspace(const std::string& text) {
    auto fail = [](const std::string& why) -> Subspace {
        throw std::invalid_argument("parse_subspace: " + why);
    };
    std::size_t p1 = text.find(':');
    std::size_t p2 = (p1 == std::string::npos) ? std::string::npos : text.find(':', p1 + 1);
    std::size_t p3 = (p2 == std::string::npos) ? std::string::npos : text.find(':', p2 + 1);
    if (p3 == std::string::npos) return fail("expected q:n:d:rows");
    long q, n, d;
    try {
        q = std::stol(text.substr(0, p1));
        n = std::stol(text.substr(p1 + 1, p2 - p1 - 1));
        d = std::stol(text.substr(p2 + 1, p3 - p2 - 1));
    } catch (const std::exception&) {
        return fail("bad numeric header");
    }
    if (n < 1 || n > 64 || d < 0 || d > n) return fail("bad dimensions");
    const FieldSpec* spec;
    try {
        spec = &FieldSpec::get(q);
    } catch (const std::exception&) {
        return fail("unsupported field order");
    }
    std::string body = text.substr(p3 + 1);
    Rows rows;
    if (d > 0) {
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (static_cast<long>(tok.size()) != n) return fail("row length mismatch");
            std::vector<FieldElem> row(n);
            for (long c = 0; c < n; ++c) {
                if (tok[c] < '0' || tok[c] >= '0' + q) return fail("digit out of range");
                row[c] = static_cast<FieldElem>(tok[c] - '0');
            }
            rows.push_back(std::move(row));
        }
    } else if (!body.empty()) {
        return fail("trailing text after zero-dimensional header");
    }
    if (static_cast<long>(rows.size()) != d) return fail("row count mismatch");
    Subspace canon = rref(*spec, static_cast<int>(n), rows);
    if (canon.dim() != d) return fail("rows are dependent");
    // Must be bit-exact canonical already.
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < n; ++c)
            if (canon.entry(r, c) != rows[r][c]) return fail("rows are not canonical RREF");
    return canon;
}

// ---------------------------------------------------------------------------
// Hot-loop helpers
// ---------------------------------------------------------------------------

int rank_u8(const FieldSpec& spec, int n, FieldElem* rows, int nrows) {
    int r = 0;
    for (int col = 0; col < n && r < nrows; ++col) {
        int piv = -1;
        for (int j = r; j < nrows; ++j)
            if (rows[j * n + col] != 0) { piv = j; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int c = 0; c < n; ++c) std::swap(rows[piv * n + c], rows[r * n + c]);
        const FieldElem pinv = spec.inv(rows[r * n + col]);
        for (int j = r + 1; j < nrows; ++j) {
            FieldElem c0 = rows[j * n + col];
            if (c0 == 0) continue;
            const FieldElem fct = spec.mul(c0, pinv);
            for (int c = col; c < n; ++c)
                rows[j * n + c] = spec.sub(rows[j * n + c], spec.mul(fct, rows[r * n + c]));
        }
        ++r;
    }
    return r;
}

int rank_gf2(std::uint64_t* rows, int nrows) {
    int r = 0;
    for (int j = 0; j < nrows && r < nrows;) {
        // next pivot = lowest set bit among remaining rows
        int best = -1;
        int bestbit = 64;
        for (int t = r; t < nrows; ++t) {
            if (rows[t] == 0) continue;
            int b = __builtin_ctzll(rows[t]);
            if (b < bestbit) { bestbit = b; best = t; }
        }
        if (best < 0) break;
        std::swap(rows[best], rows[r]);
        kernels::xor_eliminate_column(rows + r + 1, static_cast<std::size_t>(nrows - r - 1),
                                      rows[r], static_cast<unsigned>(bestbit));
        ++r;
        j = r;
    }
    return r;
}

void pack_gf2(const Subspace& u, std::uint64_t* out) {
    if (u.spec().q() != 2 || u.ambient() > 64)
        throw std::domain_error("pack_gf2: needs q=2 and ambient <= 64");
    for (int r = 0; r < u.dim(); ++r) {
        std::uint64_t w = 0;
        for (int c = 0; c < u.ambient(); ++c)
            if (u.entry(r, c)) w |= 1ull << c;
        out[r] = w;
    }
}

}  // namespace grasslab::gflinalg
