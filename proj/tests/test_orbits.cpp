#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <random>

#include "grasslab/errors.hpp"
#include "grasslab/orbits.hpp"
#include "grasslab/qalg.hpp"

using namespace grasslab;
using namespace grasslab::orbits;
using gflinalg::FieldElem;
using gflinalg::Subspace;
using gflinalg::coordinate_subspace;
using grassmann::GraphContext;

namespace {

std::vector<FieldElem> vec7(std::initializer_list<int> ones) {
    std::vector<FieldElem> v(7, 0);
    for (int j : ones) v[j] = 1;
    return v;
}

Subspace span7(const gflinalg::FieldSpec& f, std::initializer_list<std::vector<FieldElem>> rows) {
    return gflinalg::rref(f, 7, rows);
}

struct Fixture {
    GraphContext ctx{2, 7, 3};
    Subspace x = coordinate_subspace(ctx.spec(), 7, {0, 1, 2});
    Subspace y = coordinate_subspace(ctx.spec(), 7, {0, 3, 4});
};

}  // namespace

TEST_CASE("classify: the five fixture representatives") {
    Fixture fx;
    const auto& f = fx.ctx.spec();
    CHECK(classify(fx.ctx, fx.x, fx.y, coordinate_subspace(f, 7, {0, 1, 5})) ==
          OrbitClass::APlus);  // <e1,e2,e6>
    CHECK(classify(fx.ctx, fx.x, fx.y, coordinate_subspace(f, 7, {1, 2, 3})) ==
          OrbitClass::AMinus);  // <e2,e3,e4>
    CHECK(classify(fx.ctx, fx.x, fx.y, span7(f, {vec7({0}), vec7({1}), vec7({2, 3})})) ==
          OrbitClass::AZero);  // <e1,e2,e3+e4>
    CHECK(classify(fx.ctx, fx.x, fx.y, coordinate_subspace(f, 7, {0, 1, 3})) ==
          OrbitClass::C);  // <e1,e2,e4>
    CHECK(classify(fx.ctx, fx.x, fx.y, coordinate_subspace(f, 7, {1, 2, 5})) ==
          OrbitClass::B);  // <e2,e3,e6>

    // z not adjacent to x
    CHECK_THROWS_AS(classify(fx.ctx, fx.x, fx.y, fx.y), std::domain_error);
    // distance out of the paper range
    Subspace close_y = coordinate_subspace(f, 7, {0, 1, 3});
    CHECK_THROWS_AS(classify(fx.ctx, fx.x, close_y, fx.y), std::domain_error);
}

TEST_CASE("y_partition: class sizes, disjoint union, canonical class order") {
    Fixture fx;
    YPartition part = y_partition(fx.ctx, fx.x, fx.y);
    CHECK(part.i == 2);
    CHECK(part.cls(OrbitClass::B).size() == 96);
    CHECK(part.cls(OrbitClass::C).size() == 9);
    CHECK(part.cls(OrbitClass::APlus).size() == 72);
    CHECK(part.cls(OrbitClass::AZero).size() == 9);
    CHECK(part.cls(OrbitClass::AMinus).size() == 24);
    CHECK(part.total() == 210);
    for (const auto& cls : part.classes)
        for (std::size_t j = 1; j < cls.size(); ++j)
            CHECK(gflinalg::less(cls[j - 1], cls[j]));

    // sizes agree with the closed forms for every class, not just the fixture
    qalg::Params p(2, 7, 3, 2);
    auto ins = qalg::intersection_numbers(p);
    auto os = qalg::orbit_sizes(p);
    CHECK(Int(static_cast<long>(part.cls(OrbitClass::B).size())) == ins.b);
    CHECK(Int(static_cast<long>(part.cls(OrbitClass::C).size())) == ins.c);
    CHECK(Int(static_cast<long>(part.cls(OrbitClass::APlus).size())) == os.a_plus);
    CHECK(Int(static_cast<long>(part.cls(OrbitClass::AZero).size())) == os.a_zero);
    CHECK(Int(static_cast<long>(part.cls(OrbitClass::AMinus).size())) == os.a_minus);
}

TEST_CASE("y_partition at (2,9,4), i = 3") {
    GraphContext ctx(2, 9, 4);
    auto [x, y] = grassmann::choose_pair(ctx, 3, 0);
    YPartition part = y_partition(ctx, x, y);
    CHECK(part.cls(OrbitClass::B).size() == 384);
    CHECK(part.cls(OrbitClass::C).size() == 49);
    CHECK(part.cls(OrbitClass::APlus).size() == 336);
    CHECK(part.cls(OrbitClass::AZero).size() == 49);
    CHECK(part.cls(OrbitClass::AMinus).size() == 112);
    CHECK(336 + 49 + 112 == 497);
}

TEST_CASE("structure matrix: frozen fixture, equitability, closed-form match") {
    Fixture fx;
    YPartition part = y_partition(fx.ctx, fx.x, fx.y);
    auto [m, equitable] = structure_matrix_brute(fx.ctx, part);
    CHECK(equitable);
    const long want[5][5] = {{29, 0, 6, 0, 6},
                             {0, 4, 24, 5, 8},
                             {8, 3, 27, 3, 0},
                             {0, 5, 24, 4, 8},
                             {24, 3, 0, 3, 11}};
    for (int r = 0; r < 5; ++r) {
        long rowsum = 0;
        for (int c = 0; c < 5; ++c) {
            CHECK(m.entries[r][c] == want[r][c]);
            rowsum += m.entries[r][c];
        }
        CHECK(rowsum == 41);
    }
    CHECK(to_qmatrix(m) == qalg::closed_table(qalg::TableId::Structure, qalg::Params(2, 7, 3, 2)));

    // negative control: moving one vertex between classes breaks equitability
    YPartition bad = part;
    bad.classes[0].push_back(bad.classes[2].back());
    bad.classes[2].pop_back();
    auto [m2, eq2] = structure_matrix_brute(fx.ctx, bad);
    (void)m2;
    CHECK_FALSE(eq2);
}

TEST_CASE("witness_single: identity, cross-x move, invariant mismatch") {
    Fixture fx;
    const auto& f = fx.ctx.spec();
    Subspace v = coordinate_subspace(f, 7, {0, 3});   // <e1,e4>
    Subspace v2 = coordinate_subspace(f, 7, {1, 4});  // <e2,e5>
    CHECK(witness_single(fx.ctx, fx.x, v, v).entries() ==
          gflinalg::LinearMap::identity(f, 7).entries());
    gflinalg::LinearMap sigma = witness_single(fx.ctx, fx.x, v, v2);
    CHECK(gflinalg::apply_map(sigma, fx.x) == fx.x);
    CHECK(gflinalg::apply_map(sigma, v) == v2);

    Subspace v3 = coordinate_subspace(f, 7, {3, 4});  // meets x in dim 0, not 1
    CHECK_THROWS_AS(witness_single(fx.ctx, fx.x, v, v3), class_mismatch_error);
}

TEST_CASE("witness_pair: fixture recipes and cross-class rejection") {
    Fixture fx;
    const auto& f = fx.ctx.spec();
    Subspace z0 = span7(f, {vec7({0}), vec7({1}), vec7({2, 3})});  // A0: <e1,e2,e3+e4>
    Subspace z0b = span7(f, {vec7({0}), vec7({2}), vec7({1, 4})});  // A0: <e1,e3,e2+e5>
    CHECK(classify(fx.ctx, fx.x, fx.y, z0b) == OrbitClass::AZero);

    CHECK(witness_pair(fx.ctx, fx.x, fx.y, z0, z0).entries() ==
          gflinalg::LinearMap::identity(f, 7).entries());
    gflinalg::LinearMap sigma = witness_pair(fx.ctx, fx.x, fx.y, z0, z0b);
    CHECK(gflinalg::apply_map(sigma, fx.x) == fx.x);
    CHECK(gflinalg::apply_map(sigma, fx.y) == fx.y);
    CHECK(gflinalg::apply_map(sigma, z0) == z0b);

    Subspace zp = coordinate_subspace(f, 7, {0, 1, 5});   // A+
    Subspace zm = coordinate_subspace(f, 7, {1, 2, 3});   // A-
    CHECK_THROWS_AS(witness_pair(fx.ctx, fx.x, fx.y, zp, zm), class_mismatch_error);
}

TEST_CASE("witness_pair: random same-class pairs succeed in every class") {
    Fixture fx;
    YPartition part = y_partition(fx.ctx, fx.x, fx.y);
    std::mt19937_64 gen(12);
    for (int c = 0; c < kClassCount; ++c) {
        const auto& cls = part.classes[c];
        for (int trial = 0; trial < 8; ++trial) {
            const Subspace& z = cls[gen() % cls.size()];
            const Subspace& z2 = cls[gen() % cls.size()];
            gflinalg::LinearMap sigma = witness_pair(fx.ctx, fx.x, fx.y, z, z2);
            CHECK(gflinalg::apply_map(sigma, z) == z2);
        }
    }
}

TEST_CASE("classify is invariant under constructed stabilizer elements") {
    Fixture fx;
    YPartition part = y_partition(fx.ctx, fx.x, fx.y);
    std::mt19937_64 gen(13);
    for (int c = 0; c < kClassCount; ++c) {
        const auto& cls = part.classes[c];
        const Subspace& z = cls[gen() % cls.size()];
        const Subspace& z2 = cls[gen() % cls.size()];
        gflinalg::LinearMap sigma = witness_pair(fx.ctx, fx.x, fx.y, z, z2);
        // sigma stabilizes x and y, so it must preserve every class
        for (int cc = 0; cc < kClassCount; ++cc) {
            const auto& other = part.classes[cc];
            for (int t = 0; t < 4; ++t) {
                const Subspace& w = other[gen() % other.size()];
                CHECK(classify(fx.ctx, fx.x, fx.y, gflinalg::apply_map(sigma, w)) ==
                      static_cast<OrbitClass>(cc));
            }
        }
    }
}

TEST_CASE("witness determinism: canonical choices give reproducible matrices") {
    Fixture fx;
    YPartition part = y_partition(fx.ctx, fx.x, fx.y);
    const Subspace& z = part.classes[0][5];
    const Subspace& z2 = part.classes[0][50];
    CHECK(witness_pair(fx.ctx, fx.x, fx.y, z, z2).entries() ==
          witness_pair(fx.ctx, fx.x, fx.y, z, z2).entries());
}

TEST_CASE("YPartition serialization is canonical JSON") {
    Fixture fx;
    YPartition part = y_partition(fx.ctx, fx.x, fx.y);
    auto j = nlohmann::json::parse(serialize(part));
    CHECK(j["i"] == 2);
    CHECK(j["x"] == "2:7:3:1000000,0100000,0010000");
    CHECK(j["classes"]["B"]["count"] == 96);
    CHECK(j["classes"]["A+"]["count"] == 72);
    CHECK(j["classes"]["A0"]["subspaces"].size() == 9);
    // round trip of the first serialized member
    std::string first = j["classes"]["C"]["subspaces"][0];
    CHECK(gflinalg::parse_subspace(first) == part.cls(OrbitClass::C)[0]);
    CHECK(serialize(part) == serialize(y_partition(fx.ctx, fx.x, fx.y)));
}
