#include "grasslab/kernels.hpp"

#include <cstring>
#include <stdexcept>

namespace grasslab::kernels {

namespace scalar {

void i64_axpy(std::int64_t* y, const std::int64_t* x, std::int64_t a, std::size_t len) {
    for (std::size_t j = 0; j < len; ++j) y[j] += a * x[j];
}

void i64_matmul(std::int64_t* c, const std::int64_t* a, const std::int64_t* b,
                std::size_t r, std::size_t m, std::size_t cols) {
    std::memset(c, 0, r * cols * sizeof(std::int64_t));
    for (std::size_t i = 0; i < r; ++i) {
        std::int64_t* crow = c + i * cols;
        const std::int64_t* arow = a + i * m;
        for (std::size_t t = 0; t < m; ++t) {
            if (arow[t] != 0) i64_axpy(crow, b + t * cols, arow[t], cols);
        }
    }
}

void xor_eliminate_column(std::uint64_t* rows, std::size_t len,
                          std::uint64_t pivot, unsigned bit) {
    for (std::size_t j = 0; j < len; ++j) {
        rows[j] ^= pivot & (0ull - ((rows[j] >> bit) & 1ull));
    }
}

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void i64_axpy(std::int64_t* y, const std::int64_t* x, std::int64_t a, std::size_t len);
void i64_matmul(std::int64_t* c, const std::int64_t* a, const std::int64_t* b,
                std::size_t r, std::size_t m, std::size_t cols);
void xor_eliminate_column(std::uint64_t* rows, std::size_t len,
                          std::uint64_t pivot, unsigned bit);
}  // namespace avx2

static bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") != 0; }
#else
static bool cpu_has_avx2() { return false; }
#endif

namespace {

struct Vtable {
    void (*axpy)(std::int64_t*, const std::int64_t*, std::int64_t, std::size_t);
    void (*matmul)(std::int64_t*, const std::int64_t*, const std::int64_t*,
                   std::size_t, std::size_t, std::size_t);
    void (*xorcol)(std::uint64_t*, std::size_t, std::uint64_t, unsigned);
    Isa isa;
};

Vtable scalar_vtable() {
    return {&scalar::i64_axpy, &scalar::i64_matmul, &scalar::xor_eliminate_column, Isa::Scalar};
}

Vtable pick_vtable() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) {
        return {&avx2::i64_axpy, &avx2::i64_matmul, &avx2::xor_eliminate_column, Isa::Avx2};
    }
#endif
    return scalar_vtable();
}

Vtable g_vtable = pick_vtable();

}  // namespace

Isa active_isa() { return g_vtable.isa; }

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2: return cpu_has_avx2();
    }
    return false;
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) throw std::domain_error("kernels: requested ISA not available");
    if (isa == Isa::Scalar) {
        g_vtable = scalar_vtable();
    } else {
        g_vtable = pick_vtable();
    }
}

void i64_axpy(std::int64_t* y, const std::int64_t* x, std::int64_t a, std::size_t len) {
    g_vtable.axpy(y, x, a, len);
}

void i64_matmul(std::int64_t* c, const std::int64_t* a, const std::int64_t* b,
                std::size_t r, std::size_t m, std::size_t cols) {
    g_vtable.matmul(c, a, b, r, m, cols);
}

void xor_eliminate_column(std::uint64_t* rows, std::size_t len,
                          std::uint64_t pivot, unsigned bit) {
    g_vtable.xorcol(rows, len, pivot, bit);
}

}  // namespace grasslab::kernels
