#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <random>

#include "grasslab/euclid.hpp"

using namespace grasslab;
using namespace grasslab::euclid;
using gflinalg::Subspace;
using gflinalg::coordinate_subspace;
using grassmann::GraphContext;
using qalg::Params;
using qalg::TableId;

namespace {

struct Fixture {
    GraphContext ctx{2, 7, 3};
    Subspace x = coordinate_subspace(ctx.spec(), 7, {0, 1, 2});
    Subspace y = coordinate_subspace(ctx.spec(), 7, {0, 3, 4});
};

}  // namespace

TEST_CASE("hat: degenerate images and incidence counts") {
    Fixture fx;
    CHECK(e_equal(hat(fx.ctx, gflinalg::zero_subspace(fx.ctx.spec(), 7)), EVector(fx.ctx)));
    CHECK(e_equal(hat(fx.ctx, gflinalg::full_space(fx.ctx.spec(), 7)), EVector(fx.ctx)));
    EVector hx = hat(fx.ctx, fx.x);
    int ones = 0;
    for (int j = 0; j < 127; ++j)
        if (hx[j] == 1) ++ones;
    CHECK(ones == 7);
    CHECK(hx.coord_sum() == 7);
}

TEST_CASE("form: fixture values") {
    Fixture fx;
    EVector hx = hat(fx.ctx, fx.x), hy = hat(fx.ctx, fx.y);
    CHECK(form(hx, hx) == 840);   // q^k [k][n-k]
    CHECK(form(hx, hy) == 78);    // [n][k-i] - [k]^2
    CHECK(form(hx, hat(fx.ctx, gflinalg::intersect(fx.x, fx.y))) == 120);
    CHECK(form(hx, hat(fx.ctx, gflinalg::sum(fx.x, fx.y))) == 672);
    EVector s = hat(fx.ctx, fx.ctx.p1()[3]), t = hat(fx.ctx, fx.ctx.p1()[90]);
    CHECK(form(s, t) == -1);
    CHECK(form(s, s) == 126);
}

TEST_CASE("form: [n][h] - [dim u][dim v] on random subspace pairs") {
    std::mt19937_64 gen(21);
    for (long q : {2L, 3L}) {
        GraphContext ctx(q, 7, 3);
        Int nq = qalg::bracket(7, q);
        for (int trial = 0; trial < 12; ++trial) {
            Subspace u = gflinalg::random_subspace(ctx.spec(), 7, 1 + gen() % 4, gen());
            Subspace v = gflinalg::random_subspace(ctx.spec(), 7, 1 + gen() % 4, gen());
            int h = gflinalg::intersect(u, v).dim();
            Rat expect = Rat(nq * qalg::bracket(h, q) -
                             qalg::bracket(u.dim(), q) * qalg::bracket(v.dim(), q));
            CHECK(form(hat(ctx, u), hat(ctx, v)) == expect);
            // norm specialization
            Rat norm_expect(ipow(Int(q), u.dim()) * qalg::bracket(u.dim(), q) *
                            qalg::bracket(7 - u.dim(), q));
            CHECK(form(hat(ctx, u), hat(ctx, u)) == norm_expect);
        }
    }
}

TEST_CASE("form is GL-equivariant") {
    Fixture fx;
    std::mt19937_64 gen(33);
    for (int trial = 0; trial < 10; ++trial) {
        gflinalg::LinearMap sigma = gflinalg::random_invertible(fx.ctx.spec(), 7, gen());
        Subspace u = gflinalg::random_subspace(fx.ctx.spec(), 7, 2 + gen() % 2, gen());
        Subspace v = gflinalg::random_subspace(fx.ctx.spec(), 7, 2 + gen() % 2, gen());
        CHECK(form(hat(fx.ctx, gflinalg::apply_map(sigma, u)),
                   hat(fx.ctx, gflinalg::apply_map(sigma, v))) ==
              form(hat(fx.ctx, u), hat(fx.ctx, v)));
    }
}

TEST_CASE("e_equal: kernel direction and distinct vertices") {
    Fixture fx;
    EVector a = hat(fx.ctx, fx.x);
    EVector shifted = a;
    for (int j = 0; j < 127; ++j) shifted[j] += 5;
    CHECK(e_equal(a, shifted));
    CHECK_FALSE(e_equal(hat(fx.ctx, fx.x), hat(fx.ctx, fx.y)));
    // exhaustive over a small sample of distinct vertices
    auto verts = fx.ctx.all_vertices();
    for (int j = 1; j < 40; ++j)
        CHECK_FALSE(e_equal(hat(fx.ctx, verts[0]), hat(fx.ctx, verts[j])));
}

TEST_CASE("orbit_vector: coordinate sums and the theta_1 identity") {
    Fixture fx;
    auto part = orbits::y_partition(fx.ctx, fx.x, fx.y);
    EVector c = orbit_vector(fx.ctx, part, orbits::OrbitClass::C);
    CHECK(c.coord_sum() == 63);  // 9 vertices x [k] = 7 lines

    EVector sum_all(fx.ctx);
    for (int cc = 0; cc < orbits::kClassCount; ++cc)
        sum_all += orbit_vector(fx.ctx, part, static_cast<orbits::OrbitClass>(cc));
    EVector rhs = hat(fx.ctx, fx.x);
    rhs.scale(Rat(83));  // theta_1 at (2,7,3)
    CHECK(e_equal(sum_all, rhs));

    orbits::YPartition corrupted = part;
    corrupted.classes[1].clear();
    CHECK(e_equal(orbit_vector(fx.ctx, corrupted, orbits::OrbitClass::C), EVector(fx.ctx)));
}

TEST_CASE("gram_brute equals every closed Gram table at the fixture") {
    Fixture fx;
    Params p(2, 7, 3, 2);
    for (TableId id : {TableId::GeomGram, TableId::CombGram, TableId::CrossGram,
                       TableId::AGeom, TableId::AComb, TableId::AA}) {
        CAPTURE(qalg::to_string(id));
        CHECK(gram_brute(fx.ctx, id, fx.x, fx.y) == qalg::closed_table(id, p));
    }
    CHECK(gram_brute(fx.ctx, TableId::AGeom, fx.x, fx.y).at(0, 0) == 23904);
    CHECK(gram_brute(fx.ctx, TableId::CrossGram, fx.x, fx.y).at(2, 0) == 31872);
    CHECK_THROWS_AS(gram_brute(fx.ctx, TableId::Structure, fx.x, fx.y), std::domain_error);
}

TEST_CASE("vector identities hold exactly at the fixture") {
    Fixture fx;
    for (IdentityId id : {IdentityId::ALin, IdentityId::ALin2, IdentityId::XcapXplus,
                          IdentityId::Theta1Local, IdentityId::GramRank}) {
        IdentityReport r = verify_identity(fx.ctx, id, fx.x, fx.y);
        CAPTURE(to_string(id));
        CHECK(r.pass());
    }
    IdentityReport c = verify_identity(fx.ctx, IdentityId::CConditions, fx.x, fx.y);
    REQUIRE(c.checks.size() == 6);
    for (const auto& chk : c.checks) {
        CAPTURE(chk.name);
        CHECK(chk.pass);
    }
}

TEST_CASE("identities also hold for a random pair at (2,9,4), i = 3") {
    GraphContext ctx(2, 9, 4);
    auto [x, y] = grassmann::choose_pair(ctx, 3, 5);
    for (IdentityId id : {IdentityId::ALin, IdentityId::ALin2, IdentityId::XcapXplus}) {
        CAPTURE(to_string(id));
        CHECK(verify_identity(ctx, id, x, y).pass());
    }
}

TEST_CASE("EVector export is canonical JSON") {
    Fixture fx;
    EVector v = hat(fx.ctx, fx.x);
    v.scale(Rat(1, 3));
    auto j = nlohmann::json::parse(export_json(v));
    CHECK(j["schema"] == 1);
    CHECK(j["coords"].size() == 127);
    CHECK(j["p1"].size() == 127);
    CHECK(j["p1"][0] == gflinalg::serialize(fx.ctx.p1()[0]));
    int thirds = 0;
    for (const auto& c : j["coords"])
        if (c == "1/3") ++thirds;
    CHECK(thirds == 7);
}
