#include "grasslab/numeric.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace grasslab {

Rat qpow(const Int& q, long e) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    Rat r(p);
    if (e < 0) r = 1 / r;
    return r;
}

Int ipow(const Int& q, unsigned long e) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), q.get_mpz_t(), e);
    return p;
}

QMatrix::QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {
    if (rows < 0 || cols < 0) throw std::domain_error("QMatrix: negative dimensions");
}

QMatrix::QMatrix(int rows, int cols, std::initializer_list<Rat> entries) : QMatrix(rows, cols) {
    if (static_cast<int>(entries.size()) != rows * cols)
        throw std::domain_error("QMatrix: initializer size mismatch");
    std::copy(entries.begin(), entries.end(), a_.begin());
}

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Rat& QMatrix::at(int r, int c) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::domain_error("QMatrix: index");
    return a_[static_cast<std::size_t>(r) * cols_ + c];
}

const Rat& QMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::domain_error("QMatrix: index");
    return a_[static_cast<std::size_t>(r) * cols_ + c];
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::domain_error("QMatrix: shape mismatch in product");
    QMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int t = 0; t < cols_; ++t) {
            const Rat& v = at(i, t);
            if (v == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(t, j);
        }
    return out;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::domain_error("QMatrix: shape mismatch in difference");
    QMatrix out(rows_, cols_);
    for (std::size_t j = 0; j < a_.size(); ++j) out.a_[j] = a_[j] - rhs.a_[j];
    return out;
}

QMatrix QMatrix::scaled(const Rat& s) const {
    QMatrix out(rows_, cols_);
    for (std::size_t j = 0; j < a_.size(); ++j) out.a_[j] = a_[j] * s;
    return out;
}

QMatrix QMatrix::transpose() const {
    QMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool QMatrix::operator==(const QMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

bool QMatrix::is_integer() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const Rat& v) { return v.get_den() == 1; });
}

std::string QMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << rat_to_string(at(i, j));
        }
        os << '\n';
    }
    return os.str();
}

Rat det(QMatrix m) {
    if (m.rows() != m.cols()) throw std::domain_error("det: not square");
    const int n = m.rows();
    Rat result(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            result = -result;
        }
        result *= m.at(col, col);
        Rat inv = 1 / m.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            Rat f = m.at(r, col) * inv;
            if (f == 0) continue;
            for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
        }
    }
    return result;
}

std::vector<Rat> charpoly(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("charpoly: not square");
    const int n = m.rows();
    // det(tI - M) over all permutations; entries are linear polynomials.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Rat> acc(n + 1, Rat(0));
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        // product of (t*[i==perm(i)] - M[i][perm(i)]) ... sign convention below
        std::vector<Rat> term{Rat(1)};
        for (int i = 0; i < n; ++i) {
            Rat c0 = -m.at(i, perm[i]);
            Rat c1 = (i == perm[i]) ? Rat(1) : Rat(0);
            std::vector<Rat> next(term.size() + 1, Rat(0));
            for (std::size_t d = 0; d < term.size(); ++d) {
                next[d] += term[d] * c0;
                next[d + 1] += term[d] * c1;
            }
            term = std::move(next);
        }
        Rat sign = (inv % 2 == 0) ? Rat(1) : Rat(-1);
        for (std::size_t d = 0; d < term.size() && d <= static_cast<std::size_t>(n); ++d)
            acc[d] += sign * term[d];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

std::vector<Rat> poly_from_roots(const std::vector<Rat>& roots) {
    std::vector<Rat> p{Rat(1)};
    for (const Rat& r : roots) {
        std::vector<Rat> next(p.size() + 1, Rat(0));
        for (std::size_t d = 0; d < p.size(); ++d) {
            next[d] += p[d] * (-r);
            next[d + 1] += p[d];
        }
        p = std::move(next);
    }
    return p;
}

std::vector<Rat> solve(QMatrix a, std::vector<Rat> b) {
    if (a.rows() != a.cols() || static_cast<int>(b.size()) != a.rows())
        throw std::domain_error("solve: shape mismatch");
    const int n = a.rows();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a.at(r, col) != 0) { piv = r; break; }
        if (piv < 0) throw std::domain_error("solve: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            std::swap(b[piv], b[col]);
        }
        Rat inv = 1 / a.at(col, col);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rat f = a.at(r, col) * inv;
            if (f == 0) continue;
            for (int j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a.at(i, i);
    return x;
}

std::string rat_to_string(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::pair<long, int> prime_power_decompose(long q) {
    if (q < 2) throw std::domain_error("prime_power_decompose: q < 2");
    long p = 0;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 0) return {q, 1};  // q itself is prime
    long rest = q;
    int e = 0;
    while (rest % p == 0) { rest /= p; ++e; }
    if (rest != 1) throw std::domain_error("prime_power_decompose: not a prime power");
    return {p, e};
}

}  // namespace grasslab
