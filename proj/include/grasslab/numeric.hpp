#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace grasslab {

using Int = mpz_class;
using Rat = mpq_class;

/// q^e for integer e of either sign (q > 0). Negative exponents show up in a
/// few printed coefficient tables, so the result is rational.
Rat qpow(const Int& q, long e);

/// Integer power with e >= 0.
Int ipow(const Int& q, unsigned long e);

/// Dense exact-rational matrix. Small (at most a few hundred square in tests);
/// everything is plain row-major mpq storage, no cleverness.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(int rows, int cols);
    QMatrix(int rows, int cols, std::initializer_list<Rat> entries);

    static QMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int r, int c);
    const Rat& at(int r, int c) const;

    QMatrix operator*(const QMatrix& rhs) const;
    QMatrix operator-(const QMatrix& rhs) const;
    QMatrix scaled(const Rat& s) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& rhs) const;
    bool operator!=(const QMatrix& rhs) const { return !(*this == rhs); }

    bool is_integer() const;
    std::string to_string() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Exact determinant by fraction-friendly Gaussian elimination.
Rat det(QMatrix m);

/// Characteristic polynomial det(tI - M) of a small square matrix via the
/// Leibniz expansion; coefficients returned lowest degree first. Deliberately
/// the most transparent exact route (it is used as an oracle).
std::vector<Rat> charpoly(const QMatrix& m);

/// Expand prod_j (t - root_j), coefficients lowest degree first.
std::vector<Rat> poly_from_roots(const std::vector<Rat>& roots);

/// Solve A x = b exactly; throws std::domain_error if A is singular.
std::vector<Rat> solve(QMatrix a, std::vector<Rat> b);

/// Render a rational the way reports do: "p" or "p/q".
std::string rat_to_string(const Rat& v);

/// Decompose q = p^e with p prime, e >= 1; throws std::domain_error if q is
/// not a prime power >= 2.
std::pair<long, int> prime_power_decompose(long q);

}  // namespace grasslab
