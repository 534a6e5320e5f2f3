#pragma once

#include <cstddef>
#include <cstdint>

namespace grasslab::kernels {

/// Implementation lanes selectable at runtime. Scalar is the reference;
/// SIMD variants must be bit-identical to it (see tests/test_kernels.cpp).
enum class Isa { Scalar, Avx2 };

/// The lane the dispatcher picked for this process.
Isa active_isa();

/// True if `isa` can run on this CPU.
bool isa_available(Isa isa);

/// Test hook: pin the dispatcher to one lane. Throws std::domain_error if the
/// lane is unavailable on this CPU.
void force_isa(Isa isa);

/// y[j] += a * x[j] for j in [0, len). All products must fit in int64.
void i64_axpy(std::int64_t* y, const std::int64_t* x, std::int64_t a, std::size_t len);

/// Row-major C = A * B with A: r x m, B: m x c, C: r x c. Exact in int64;
/// the caller is responsible for proving no intermediate overflows.
void i64_matmul(std::int64_t* c, const std::int64_t* a, const std::int64_t* b,
                std::size_t r, std::size_t m, std::size_t cols);

/// Bit-packed GF(2) column elimination step:
///   rows[j] ^= pivot & -((rows[j] >> bit) & 1)
/// i.e. xor the pivot row into every row with a 1 in column `bit`.
void xor_eliminate_column(std::uint64_t* rows, std::size_t len,
                          std::uint64_t pivot, unsigned bit);

/// Scalar reference kernels, always available (used directly by the
/// equivalence tests; everything else should call the dispatched entry points).
namespace scalar {
void i64_axpy(std::int64_t* y, const std::int64_t* x, std::int64_t a, std::size_t len);
void i64_matmul(std::int64_t* c, const std::int64_t* a, const std::int64_t* b,
                std::size_t r, std::size_t m, std::size_t cols);
void xor_eliminate_column(std::uint64_t* rows, std::size_t len,
                          std::uint64_t pivot, unsigned bit);
}  // namespace scalar

}  // namespace grasslab::kernels
