#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grasslab/qalg.hpp"
#include "oracles.hpp"

using namespace grasslab;
using namespace grasslab::qalg;

namespace {
const std::vector<Params> kTableParams = {
    Params(2, 7, 3, 2), Params(2, 9, 4, 2), Params(2, 9, 4, 3), Params(3, 7, 3, 2)};
}

TEST_CASE("bracket: examples and enumeration oracle") {
    CHECK(bracket(0, 2) == 0);
    CHECK(bracket(1, 5) == 1);
    CHECK(bracket(7, 2) == Int(oracles::count_lines_by_enumeration(2, 7)));
    CHECK(bracket(7, 2) == 127);
    CHECK(bracket(3, 3) == Int(oracles::count_lines_by_enumeration(3, 3)));
    CHECK(bracket(3, 3) == 13);
    CHECK_THROWS_AS(bracket(-1, 2), std::domain_error);
}

TEST_CASE("bracket: recurrence [m] = q[m-1] + 1") {
    for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L})
        for (long m = 1; m <= 12; ++m)
            CHECK(bracket(m, q) == Int(q) * bracket(m - 1, q) + 1);
}

TEST_CASE("gauss_binom: examples, subspace-count oracle, errors") {
    CHECK(gauss_binom(7, 0, 2) == 1);
    CHECK(gauss_binom(7, 3, 2) == Int(oracles::count_gf2_subspaces_by_enumeration(7, 3)));
    CHECK(gauss_binom(7, 3, 2) == 11811);
    CHECK(gauss_binom(7, 1, 2) == bracket(7, 2));
    CHECK_THROWS_AS(gauss_binom(5, -1, 2), std::domain_error);
    CHECK_THROWS_AS(gauss_binom(5, 6, 2), std::domain_error);
}

TEST_CASE("Params validation") {
    CHECK_THROWS_AS(Params(2, 6, 3), std::domain_error);   // n > 2k violated
    CHECK_THROWS_AS(Params(2, 7, 2), std::domain_error);   // 2k >= 6 violated
    CHECK_THROWS_AS(Params(6, 7, 3), std::domain_error);   // q not a prime power
    CHECK_THROWS_AS(Params(2, 7, 3, 4), std::domain_error);  // i > k
    CHECK_NOTHROW(Params(9, 7, 3, 2));
}

TEST_CASE("intersection numbers") {
    auto f1 = intersection_numbers(Params(2, 7, 3, 2));
    CHECK(f1.b == 96);
    CHECK(f1.c == 9);
    CHECK(f1.a == 105);
    auto t0 = intersection_numbers(Params(2, 7, 3, 0));
    CHECK(t0.b == 210);
    CHECK(t0.c == 0);
    CHECK(t0.a == 0);
    auto n94 = intersection_numbers(Params(2, 9, 4, 3));
    CHECK(n94.b == 384);
    CHECK(n94.c == 49);
    CHECK(n94.a == 497);
    CHECK_THROWS_AS(intersection_numbers(Params(2, 7, 3)), std::domain_error);

    for (const Params& p : kTableParams) {
        auto in = intersection_numbers(p);
        CHECK(in.b + in.c + in.a == valency(p));
    }
}

TEST_CASE("orbit sizes and their sum") {
    auto s = orbit_sizes(Params(2, 7, 3, 2));
    CHECK(s.a_plus == 72);
    CHECK(s.a_zero == 9);
    CHECK(s.a_minus == 24);
    auto s94 = orbit_sizes(Params(2, 9, 4, 2));
    CHECK(s94.a_plus == 168);
    CHECK(s94.a_zero == 9);
    CHECK(s94.a_minus == 72);
    auto s943 = orbit_sizes(Params(2, 9, 4, 3));
    CHECK(s943.a_plus == 336);
    CHECK(s943.a_zero == 49);
    CHECK(s943.a_minus == 112);
    CHECK_THROWS_AS(orbit_sizes(Params(2, 7, 3, 1)), std::domain_error);

    for (const Params& p : kTableParams) {
        auto os = orbit_sizes(p);
        CHECK(os.a_plus + os.a_zero + os.a_minus == intersection_numbers(p).a);
    }
}

TEST_CASE("eigenvalue theta") {
    CHECK(eigenvalue_theta(Params(2, 7, 3, 0)) == valency(Params(2, 7, 3)));
    CHECK(eigenvalue_theta(Params(2, 7, 3, 0)) == 210);
    CHECK(eigenvalue_theta(Params(2, 7, 3, 1)) == 83);
    CHECK(eigenvalue_theta(Params(2, 7, 3, 3)) == -7);
}

TEST_CASE("structure table: frozen rows, row sums, transpose relation") {
    Params p(2, 7, 3, 2);
    QMatrix m = closed_table(TableId::Structure, p);
    const long want[5][5] = {{29, 0, 6, 0, 6},
                             {0, 4, 24, 5, 8},
                             {8, 3, 27, 3, 0},
                             {0, 5, 24, 4, 8},
                             {24, 3, 0, 3, 11}};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) CHECK(m.at(r, c) == want[r][c]);

    for (const Params& pp : kTableParams) {
        QMatrix mm = closed_table(TableId::Structure, pp);
        Rat rowsum_want(a1(pp));
        for (int r = 0; r < 5; ++r) {
            Rat s(0);
            for (int c = 0; c < 5; ++c) s += mm.at(r, c);
            CHECK(s == rowsum_want);
        }
        // M^t D == D M with D = diag(b, c, a+, a0, a-)
        auto in = intersection_numbers(pp);
        auto os = orbit_sizes(pp);
        QMatrix d(5, 5);
        d.at(0, 0) = Rat(in.b);
        d.at(1, 1) = Rat(in.c);
        d.at(2, 2) = Rat(os.a_plus);
        d.at(3, 3) = Rat(os.a_zero);
        d.at(4, 4) = Rat(os.a_minus);
        CHECK(mm.transpose() * d == d * mm);
    }
}

TEST_CASE("geometric Gram table and its printed inverse") {
    Params p(2, 7, 3, 2);
    QMatrix g = closed_table(TableId::GeomGram, p);
    CHECK(g.at(0, 0) == 840);
    CHECK(g.at(0, 1) == 78);
    CHECK(g.at(0, 2) == 120);
    CHECK(g.at(0, 3) == 672);
    QMatrix gi = geometric_gram_inverse(p);
    CHECK(gi.at(0, 0) == Rat(4) / 2286);

    for (const Params& pp : kTableParams)
        CHECK(closed_table(TableId::GeomGram, pp) * geometric_gram_inverse(pp) ==
              QMatrix::identity(4));
}

TEST_CASE("pair_form is symmetric and integer on desk parameters") {
    for (const Params& p : kTableParams) {
        for (int u = 0; u < 9; ++u)
            for (int v = 0; v < 9; ++v) {
                Rat a = pair_form(static_cast<BasisVec>(u), static_cast<BasisVec>(v), p);
                Rat b = pair_form(static_cast<BasisVec>(v), static_cast<BasisVec>(u), p);
                CHECK(a == b);
                CHECK(a.get_den() == 1);
            }
    }
}

TEST_CASE("closed tables have the printed shapes") {
    Params p(2, 7, 3, 2);
    CHECK(closed_table(TableId::GeomGram, p).rows() == 4);
    CHECK(closed_table(TableId::GeomGram, p).cols() == 4);
    CHECK(closed_table(TableId::CombGram, p).rows() == 4);
    CHECK(closed_table(TableId::CrossGram, p).cols() == 4);
    CHECK(closed_table(TableId::AGeom, p).cols() == 3);
    CHECK(closed_table(TableId::AComb, p).rows() == 4);
    CHECK(closed_table(TableId::AA, p).rows() == 3);
    CHECK(closed_table(TableId::Structure, p).rows() == 5);
    CHECK(closed_table(TableId::CrossGram, p).at(2, 0) == 31872);  // <B, x^>
    CHECK(closed_table(TableId::AGeom, p).at(0, 0) == 23904);      // <x^, A+>
}

TEST_CASE("basis transitions: frozen fixture columns") {
    Params p(2, 7, 3, 2);
    QMatrix alin = basis_transition(TransitionId::ALin, p);
    // A0 column in the geometric basis
    CHECK(alin.at(0, 1) == 1);
    CHECK(alin.at(1, 1) == -2);
    CHECK(alin.at(2, 1) == 8);
    CHECK(alin.at(3, 1) == 2);
    // A+ expansion omits y^
    for (const Params& pp : kTableParams) {
        CHECK(basis_transition(TransitionId::ALin, pp).at(1, 0) == 0);
        CHECK(basis_transition(TransitionId::ALin, pp).at(1, 2) == 0);
    }
    QMatrix alin2 = basis_transition(TransitionId::ALin2, p);
    CHECK(alin2.at(0, 1) == -3);
    CHECK(alin2.at(1, 1) == -6);
    CHECK(alin2.at(2, 1) == 0);
    CHECK(alin2.at(3, 1) == 2);
    QMatrix xc = basis_transition(TransitionId::XcapXplus, p);
    CHECK(xc.rows() == 4);
    CHECK(xc.cols() == 2);
}

TEST_CASE("eigen data: printed vectors annihilate the structure matrix") {
    for (const Params& p : kTableParams) {
        QMatrix m = closed_table(TableId::Structure, p);
        auto data = eigen_data(p);
        REQUIRE(data.size() == 5);
        for (const auto& t : data) {
            CHECK(t.row * m == t.row.scaled(Rat(t.value)));
            CHECK(m * t.col == t.col.scaled(Rat(t.value)));
        }
    }
}

TEST_CASE("eigen data: frozen eigenvalue sets") {
    auto vals = [](const Params& p) {
        std::vector<Int> v;
        for (const auto& t : eigen_data(p)) v.push_back(t.value);
        return v;
    };
    CHECK(vals(Params(2, 7, 3, 2)) == std::vector<Int>{41, 27, 11, -1, -3});
    // Formula values at (3,7,3,2): a1 = 3*13 + 3*40 - 4, etc.
    CHECK(vals(Params(3, 7, 3, 2)) == std::vector<Int>{155, 116, 35, -1, -4});
    auto d = eigen_data(Params(2, 7, 3, 2));
    CHECK(d[3].row == QMatrix(1, 5, {Rat(0), Rat(1), Rat(0), Rat(-1), Rat(0)}));
    CHECK(d[3].col == QMatrix(5, 1, {Rat(0), Rat(1), Rat(0), Rat(-1), Rat(0)}));
    CHECK(d[4].row == QMatrix(1, 5, {Rat(2), Rat(1), Rat(-2), Rat(1), Rat(-2)}));
}

TEST_CASE("local spectrum closed form") {
    auto s = local_spectrum_closed(Params(2, 7, 3));
    REQUIRE(s.size() == 5);
    CHECK(s[0] == std::pair<Int, Int>{41, 1});
    CHECK(s[1] == std::pair<Int, Int>{27, 6});
    CHECK(s[2] == std::pair<Int, Int>{11, 14});
    CHECK(s[3] == std::pair<Int, Int>{-1, 105});
    CHECK(s[4] == std::pair<Int, Int>{-3, 84});

    auto s94 = local_spectrum_closed(Params(2, 9, 4));
    CHECK(s94[1].second == 14);
    CHECK(s94[2].second == 30);
    CHECK(s94[3].second == 465);
    CHECK(s94[4].second == 420);

    for (long q : {2L, 3L}) {
        Params p(q, 9, 4);
        Int total(0), weighted(0);
        for (auto& [lam, mult] : local_spectrum_closed(p)) {
            CHECK(mult > 0);
            total += mult;
            weighted += mult * lam;
        }
        CHECK(total == valency(p));
        CHECK(weighted == 0);  // loopless local graph has zero trace
    }
}

TEST_CASE("structure eigenvalues appear in the local spectrum") {
    for (const Params& p : kTableParams) {
        std::vector<Int> quotient, local;
        for (const auto& t : eigen_data(p)) quotient.push_back(t.value);
        for (const auto& [lam, mult] : local_spectrum_closed(p)) local.push_back(lam);
        CHECK(quotient == local);
    }
}
