#include "grasslab/spectra.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstring>

#include "grasslab/errors.hpp"
#include "grasslab/kernels.hpp"
#include "grasslab/parallel.hpp"

namespace grasslab::spectra {

bool SpectrumReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const NamedCheck& c) { return c.pass; });
}

std::string SpectrumReport::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    nlohmann::json evs = nlohmann::json::array();
    for (const Int& v : eigenvalues) evs.push_back(v.get_str());
    j["eigenvalues"] = std::move(evs);
    nlohmann::json ms = nlohmann::json::array();
    for (const Int& v : multiplicities) ms.push_back(v.get_str());
    j["multiplicities"] = std::move(ms);
    nlohmann::json cs = nlohmann::json::array();
    for (const NamedCheck& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}});
    j["checks"] = std::move(cs);
    j["pass"] = all_pass();
    return j.dump();
}

SpectrumReport verify_structure_eigen(const qalg::Params& p) {
    p.require_i(2, p.k - 1);
    SpectrumReport report;
    QMatrix m = qalg::closed_table(qalg::TableId::Structure, p);
    auto data = qalg::eigen_data(p);

    std::vector<Rat> roots;
    for (const auto& t : data) {
        report.eigenvalues.push_back(t.value);
        report.multiplicities.push_back(1);
        roots.emplace_back(t.value);
    }
    report.checks.push_back({"charpoly-splits", charpoly(m) == poly_from_roots(roots)});

    for (const auto& t : data) {
        bool row_ok = (t.row * m == t.row.scaled(Rat(t.value)));
        bool col_ok = (m * t.col == t.col.scaled(Rat(t.value)));
        report.checks.push_back({"eigenvector-" + t.value.get_str(), row_ok && col_ok});
    }

    auto in = qalg::intersection_numbers(p);
    auto os = qalg::orbit_sizes(p);
    QMatrix d(5, 5);
    d.at(0, 0) = Rat(in.b);
    d.at(1, 1) = Rat(in.c);
    d.at(2, 2) = Rat(os.a_plus);
    d.at(3, 3) = Rat(os.a_zero);
    d.at(4, 4) = Rat(os.a_minus);
    report.checks.push_back({"transpose-relation", m.transpose() * d == d * m});

    std::vector<Int> local;
    for (const auto& [lam, mult] : qalg::local_spectrum_closed(p)) {
        (void)mult;
        local.push_back(lam);
    }
    report.checks.push_back({"matches-local-eigenvalues", report.eigenvalues == local});
    return report;
}

namespace {

/// Row-block-parallel exact int64 product; merging is per disjoint output
/// rows, so results are independent of the worker count.
void matmul_par(std::int64_t* c, const std::int64_t* a, const std::int64_t* b, std::size_t n) {
    parallel_blocks(n, [&](unsigned, std::size_t lo, std::size_t hi) {
        if (hi > lo) kernels::i64_matmul(c + lo * n, a + lo * n, b, hi - lo, n, n);
    });
}

}  // namespace

SpectrumReport verify_local_spectrum(const GraphContext& ctx, const Subspace& x,
                                     long valency_budget) {
    qalg::Params p(ctx.q(), ctx.n(), ctx.k());
    Int val = qalg::valency(p);
    if (val > valency_budget)
        throw budget_error("verify_local_spectrum: valency " + val.get_str() +
                           " exceeds budget " + std::to_string(valency_budget));

    SpectrumReport report;
    auto neighbors = grassmann::local_neighbors(ctx, x);
    const std::size_t nv = neighbors.size();
    const int k = ctx.k(), n = ctx.n();

    // exact 0/1 adjacency matrix of the local graph
    std::vector<std::int64_t> adj(nv * nv, 0);
    if (ctx.q() == 2 && n <= 64) {
        std::vector<std::uint64_t> words(nv * k);
        for (std::size_t j = 0; j < nv; ++j) gflinalg::pack_gf2(neighbors[j], &words[j * k]);
        parallel_blocks(nv, [&](unsigned, std::size_t lo, std::size_t hi) {
            std::vector<std::uint64_t> scratch(2 * k);
            for (std::size_t a = lo; a < hi; ++a)
                for (std::size_t b = 0; b < nv; ++b) {
                    if (a == b) continue;
                    std::memcpy(scratch.data(), &words[a * k], k * sizeof(std::uint64_t));
                    std::memcpy(scratch.data() + k, &words[b * k], k * sizeof(std::uint64_t));
                    if (gflinalg::rank_gf2(scratch.data(), 2 * k) == k + 1) adj[a * nv + b] = 1;
                }
        });
    } else {
        const std::size_t stride = static_cast<std::size_t>(k) * n;
        parallel_blocks(nv, [&](unsigned, std::size_t lo, std::size_t hi) {
            std::vector<gflinalg::FieldElem> scratch(2 * stride);
            for (std::size_t a = lo; a < hi; ++a)
                for (std::size_t b = 0; b < nv; ++b) {
                    if (a == b) continue;
                    std::memcpy(scratch.data(), neighbors[a].basis().data(), stride);
                    std::memcpy(scratch.data() + stride, neighbors[b].basis().data(), stride);
                    if (gflinalg::rank_u8(ctx.spec(), n, scratch.data(), 2 * k) == k + 1)
                        adj[a * nv + b] = 1;
                }
        });
    }

    auto closed = qalg::local_spectrum_closed(p);
    for (const auto& [lam, mult] : closed) {
        (void)mult;
        report.eigenvalues.push_back(lam);
    }

    // annihilating polynomial: product of (A - lambda I) over the five
    // claimed eigenvalues, exactly in int64 (entry bound: product of column
    // L1 norms a_1 + |lambda|, far under 2^62 at desk scale).
    Int a1v = qalg::a1(p);
    Int bound(1);
    for (const Int& lam : report.eigenvalues) bound *= a1v + abs(lam);
    if (bound >= (Int(1) << 62))
        throw budget_error("verify_local_spectrum: entry bound exceeds int64 contract");

    std::vector<std::int64_t> cur(nv * nv), factor(nv * nv), next(nv * nv);
    auto fill_factor = [&](const Int& lam) {
        const std::int64_t l = lam.get_si();
        std::memcpy(factor.data(), adj.data(), nv * nv * sizeof(std::int64_t));
        for (std::size_t j = 0; j < nv; ++j) factor[j * nv + j] -= l;
    };
    fill_factor(report.eigenvalues[0]);
    std::memcpy(cur.data(), factor.data(), nv * nv * sizeof(std::int64_t));
    for (std::size_t t = 1; t < report.eigenvalues.size(); ++t) {
        fill_factor(report.eigenvalues[t]);
        matmul_par(next.data(), cur.data(), factor.data(), nv);
        std::swap(cur, next);
    }
    bool annihilated =
        std::all_of(cur.begin(), cur.end(), [](std::int64_t v) { return v == 0; });
    report.checks.push_back({"annihilator-zero", annihilated});

    // traces of A^m for m = 0..4 via A^2 (entries <= nv, all sums < 2^63)
    std::vector<std::int64_t> a2(nv * nv);
    matmul_par(a2.data(), adj.data(), adj.data(), nv);
    Int t0(static_cast<long>(nv)), t1(0), t2(0), t3(0), t4(0);
    {
        std::int64_t s1 = 0, s2 = 0;
        for (std::size_t j = 0; j < nv; ++j) {
            s1 += adj[j * nv + j];
            s2 += a2[j * nv + j];
        }
        std::int64_t s3 = 0, s4 = 0;
        for (std::size_t u = 0; u < nv; ++u)
            for (std::size_t v = 0; v < nv; ++v) {
                s3 += a2[u * nv + v] * adj[v * nv + u];
                s4 += a2[u * nv + v] * a2[v * nv + u];
            }
        t1 = s1;
        t2 = s2;
        t3 = s3;
        t4 = s4;
    }
    report.checks.push_back({"trace-zero", t1 == 0});
    report.checks.push_back({"handshake", t2 == Int(static_cast<long>(nv)) * a1v});

    // multiplicities from the exact Vandermonde system
    QMatrix vand(5, 5);
    for (int row = 0; row < 5; ++row)
        for (int col = 0; col < 5; ++col) {
            Rat pw(1);
            for (int e = 0; e < row; ++e) pw *= Rat(report.eigenvalues[col]);
            vand.at(row, col) = pw;
        }
    std::vector<Rat> rhs{Rat(t0), Rat(t1), Rat(t2), Rat(t3), Rat(t4)};
    std::vector<Rat> mults = solve(vand, rhs);

    bool integral = true, nonneg = true;
    Int mult_sum(0);
    for (const Rat& m : mults) {
        if (m.get_den() != 1) integral = false;
        if (m < 0) nonneg = false;
        report.multiplicities.push_back(m.get_num());
        mult_sum += m.get_num();
    }
    report.checks.push_back({"multiplicities-integral", integral && nonneg});
    report.checks.push_back({"multiplicities-sum", mult_sum == Int(static_cast<long>(nv))});

    bool match = true;
    for (std::size_t j = 0; j < closed.size(); ++j)
        if (report.multiplicities[j] != closed[j].second) match = false;
    report.checks.push_back({"multiplicities-match-closed", match});
    return report;
}

}  // namespace grasslab::spectra
