#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "grasslab/kernels.hpp"

using namespace grasslab::kernels;

namespace {

std::vector<std::int64_t> random_i64(std::mt19937_64& gen, std::size_t len, std::int64_t bound) {
    std::vector<std::int64_t> v(len);
    for (auto& x : v) x = static_cast<std::int64_t>(gen() % (2 * bound + 1)) - bound;
    return v;
}

}  // namespace

TEST_CASE("dispatcher reports an available lane") {
    CHECK(isa_available(Isa::Scalar));
    CHECK(isa_available(active_isa()));
}

TEST_CASE("i64_axpy: dispatched lane matches scalar reference bit-exactly") {
    std::mt19937_64 gen(1);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t len = gen() % 300;
        auto x = random_i64(gen, len, 1'000'000);
        auto y = random_i64(gen, len, 1'000'000);
        std::int64_t a = static_cast<std::int64_t>(gen() % 2001) - 1000;
        auto y_ref = y;
        scalar::i64_axpy(y_ref.data(), x.data(), a, len);
        auto y_disp = y;
        i64_axpy(y_disp.data(), x.data(), a, len);
        CHECK(y_disp == y_ref);
    }
}

TEST_CASE("i64_axpy: large magnitudes near the int64 contract") {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t len = 64 + gen() % 64;
        auto x = random_i64(gen, len, 3'000'000'000LL);
        auto y = random_i64(gen, len, 3'000'000'000LL);
        std::int64_t a = static_cast<std::int64_t>(gen() % 2'000'000'000LL) - 1'000'000'000LL;
        auto y_ref = y;
        scalar::i64_axpy(y_ref.data(), x.data(), a, len);
        auto y_disp = y;
        i64_axpy(y_disp.data(), x.data(), a, len);
        CHECK(y_disp == y_ref);
    }
}

TEST_CASE("i64_matmul: dispatched lane matches scalar reference bit-exactly") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + gen() % 17, m = 1 + gen() % 17, c = 1 + gen() % 17;
        auto a = random_i64(gen, r * m, 100'000);
        auto b = random_i64(gen, m * c, 100'000);
        std::vector<std::int64_t> out_ref(r * c), out_disp(r * c);
        scalar::i64_matmul(out_ref.data(), a.data(), b.data(), r, m, c);
        i64_matmul(out_disp.data(), a.data(), b.data(), r, m, c);
        CHECK(out_disp == out_ref);
    }
}

TEST_CASE("i64_matmul: identity and associativity spot checks") {
    std::mt19937_64 gen(4);
    const std::size_t n = 23;
    auto a = random_i64(gen, n * n, 1000);
    std::vector<std::int64_t> id(n * n, 0);
    for (std::size_t j = 0; j < n; ++j) id[j * n + j] = 1;
    std::vector<std::int64_t> out(n * n);
    i64_matmul(out.data(), a.data(), id.data(), n, n, n);
    CHECK(out == a);
    i64_matmul(out.data(), id.data(), a.data(), n, n, n);
    CHECK(out == a);
}

TEST_CASE("xor_eliminate_column: dispatched lane matches scalar reference") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t len = gen() % 200;
        std::vector<std::uint64_t> rows(len);
        for (auto& w : rows) w = gen();
        std::uint64_t pivot = gen();
        unsigned bit = static_cast<unsigned>(gen() % 64);
        pivot |= 1ull << bit;  // a pivot always has its own column bit set
        auto ref = rows;
        scalar::xor_eliminate_column(ref.data(), len, pivot, bit);
        auto disp = rows;
        xor_eliminate_column(disp.data(), len, pivot, bit);
        CHECK(disp == ref);
        for (const auto& w : ref) CHECK(((w >> bit) & 1ull) == 0);
    }
}

TEST_CASE("forcing the scalar lane matches the preferred lane") {
    std::mt19937_64 gen(6);
    const std::size_t n = 40;
    auto a = random_i64(gen, n * n, 50'000);
    auto b = random_i64(gen, n * n, 50'000);
    std::vector<std::int64_t> out_pref(n * n), out_scal(n * n);

    Isa preferred = active_isa();
    i64_matmul(out_pref.data(), a.data(), b.data(), n, n, n);
    force_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    i64_matmul(out_scal.data(), a.data(), b.data(), n, n, n);
    force_isa(preferred);
    CHECK(out_pref == out_scal);
    CHECK_THROWS_AS(force_isa(static_cast<Isa>(255)), std::domain_error);
}
