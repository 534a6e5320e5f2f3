#include "grasslab/qalg.hpp"

#include <map>
#include <stdexcept>

namespace grasslab::qalg {

Params::Params(long q_, long n_, long k_, long i_) : q(q_), n(n_), k(k_), i(i_) {
    prime_power_decompose(q);  // throws if not a prime power >= 2
    if (!(k >= 3 && n > 2 * k))
        throw std::domain_error("Params: need n > 2k >= 6");
    if (i_ != -1 && (i_ < 0 || i_ > k))
        throw std::domain_error("Params: distance out of [0, k]");
}

void Params::require_i(long lo, long hi) const {
    if (!has_i() || i < lo || i > hi)
        throw std::domain_error("Params: distance i out of required range");
}

Int bracket(long m, long q) {
    if (m < 0) throw std::domain_error("bracket: negative argument");
    if (q < 2) throw std::domain_error("bracket: q < 2");
    Int Q(q);
    return (ipow(Q, static_cast<unsigned long>(m)) - 1) / (Q - 1);
}

Int gauss_binom(long m, long r, long q) {
    if (r < 0 || r > m) throw std::domain_error("gauss_binom: r out of [0, m]");
    Int num(1), den(1);
    for (long j = 1; j <= r; ++j) {
        num *= bracket(m - j + 1, q);
        den *= bracket(j, q);
    }
    return num / den;  // exact: the q-binomial is an integer
}

namespace {

/// Per-call formula helper: brackets and rational q-powers of one Params.
struct F {
    const Params& p;
    Int Z(long m) const { return bracket(m, p.q); }
    Rat QP(long e) const { return qpow(Int(p.q), e); }
    Rat q() const { return Rat(p.q); }
    long n() const { return p.n; }
    long k() const { return p.k; }
    long i() const { return p.i; }
};

}  // namespace

Int valency(const Params& p) {
    F f{p};
    return Int(p.q) * f.Z(p.k) * f.Z(p.n - p.k);
}

IntersectionNumbers intersection_numbers(const Params& p) {
    p.require_i(0, p.k);
    F f{p};
    Int b = ipow(Int(p.q), static_cast<unsigned long>(2 * p.i + 1)) * f.Z(p.k - p.i) *
            f.Z(p.n - p.k - p.i);
    Int c = f.Z(p.i) * f.Z(p.i);
    Int a = valency(p) - b - c;
    return {b, c, a};
}

OrbitSizes orbit_sizes(const Params& p) {
    p.require_i(2, p.k - 1);
    F f{p};
    Int qi1 = ipow(Int(p.q), static_cast<unsigned long>(p.i + 1));
    return {qi1 * f.Z(p.i) * f.Z(p.n - p.k - p.i),
            Int(p.q - 1) * f.Z(p.i) * f.Z(p.i),
            qi1 * f.Z(p.i) * f.Z(p.k - p.i)};
}

Int eigenvalue_theta(const Params& p) {
    p.require_i(0, p.k);
    F f{p};
    return ipow(Int(p.q), static_cast<unsigned long>(p.i + 1)) * f.Z(p.k - p.i) *
               f.Z(p.n - p.k - p.i) -
           f.Z(p.i);
}

Int a1(const Params& p) {
    F f{p};
    return Int(p.q) * f.Z(p.k) + Int(p.q) * f.Z(p.n - p.k) - p.q - 1;
}

const char* to_string(BasisVec v) {
    switch (v) {
        case BasisVec::XHat: return "x^";
        case BasisVec::YHat: return "y^";
        case BasisVec::XCapHat: return "(x&y)^";
        case BasisVec::XPlusHat: return "(x+y)^";
        case BasisVec::B: return "B";
        case BasisVec::C: return "C";
        case BasisVec::APlus: return "A+";
        case BasisVec::AZero: return "A0";
        case BasisVec::AMinus: return "A-";
    }
    return "?";
}

const char* to_string(TableId id) {
    switch (id) {
        case TableId::GeomGram: return "GEOM_GRAM";
        case TableId::CombGram: return "COMB_GRAM";
        case TableId::CrossGram: return "CROSS_GRAM";
        case TableId::AGeom: return "A_GEOM";
        case TableId::AComb: return "A_COMB";
        case TableId::AA: return "A_A";
        case TableId::Structure: return "STRUCTURE";
    }
    return "?";
}

const char* to_string(TransitionId id) {
    switch (id) {
        case TransitionId::ALin: return "ALIN";
        case TransitionId::ALin2: return "ALIN2";
        case TransitionId::XcapXplus: return "XCAP_XPLUS";
    }
    return "?";
}

Rat pair_form(BasisVec u, BasisVec v, const Params& p) {
    p.require_i(2, p.k - 1);
    if (static_cast<int>(u) > static_cast<int>(v)) std::swap(u, v);
    F f{p};
    const long n = p.n, k = p.k, i = p.i;
    const Rat q = f.q();
    const Int b = intersection_numbers(p).b;
    const Int c = intersection_numbers(p).c;
    const OrbitSizes os = orbit_sizes(p);
    // Recurring factors of the printed tables.
    const Rat G1 = Rat(f.Z(n) * f.Z(k - 1) - f.Z(k) * f.Z(k));
    const Rat G2 = Rat(f.Z(n) * f.Z(k - 2) - f.Z(k) * f.Z(k));
    const Rat Gi = Rat(f.Z(n) * f.Z(k - i) - f.Z(k) * f.Z(k));

    using BV = BasisVec;
    auto is = [&](BV a, BV bb) { return u == a && v == bb; };

    // Geometric-basis block.
    if (is(BV::XHat, BV::XHat) || is(BV::YHat, BV::YHat))
        return f.QP(k) * f.Z(k) * f.Z(n - k);
    if (is(BV::XHat, BV::YHat)) return Gi;
    if (is(BV::XHat, BV::XCapHat) || is(BV::YHat, BV::XCapHat))
        return f.QP(k) * f.Z(k - i) * f.Z(n - k);
    if (is(BV::XHat, BV::XPlusHat) || is(BV::YHat, BV::XPlusHat))
        return f.QP(k + i) * f.Z(k) * f.Z(n - k - i);
    if (is(BV::XCapHat, BV::XCapHat)) return f.QP(k - i) * f.Z(k - i) * f.Z(n - k + i);
    if (is(BV::XCapHat, BV::XPlusHat)) return f.QP(k + i) * f.Z(k - i) * f.Z(n - k - i);
    if (is(BV::XPlusHat, BV::XPlusHat)) return f.QP(k + i) * f.Z(k + i) * f.Z(n - k - i);

    // B and C against the geometric basis.
    if (is(BV::XHat, BV::B)) return Rat(b) * G1;
    if (is(BV::YHat, BV::B)) return Rat(b) * Rat(f.Z(n) * f.Z(k - i - 1) - f.Z(k) * f.Z(k));
    if (is(BV::XCapHat, BV::B))
        return Rat(b) * Rat(f.Z(n) * f.Z(k - i - 1) - f.Z(k - i) * f.Z(k));
    if (is(BV::XPlusHat, BV::B))
        return Rat(b) * Rat(f.Z(n) * f.Z(k - 1) - f.Z(k) * f.Z(k + i));
    if (is(BV::XHat, BV::C)) return Rat(c) * G1;
    if (is(BV::YHat, BV::C)) return Rat(c) * Rat(f.Z(n) * f.Z(k - i + 1) - f.Z(k) * f.Z(k));
    if (is(BV::XCapHat, BV::C)) return f.QP(k) * Rat(c) * f.Z(k - i) * f.Z(n - k);
    if (is(BV::XPlusHat, BV::C)) return f.QP(k + i) * Rat(c) * f.Z(k) * f.Z(n - k - i);

    // Combinatorial-basis block.
    if (is(BV::B, BV::B))
        return f.QP(4 * i + 2) * f.Z(k - i) * f.Z(n - k - i) *
               (f.QP(k - i - 2) * f.Z(n) * (f.Z(k - i) + f.Z(n - k - i)) +
                Rat(f.Z(k - i) * f.Z(n - k - i)) * G2);
    if (is(BV::B, BV::C))
        return f.QP(2 * i + 1) * f.Z(k - i) * f.Z(n - k - i) * Rat(c) * G2;
    if (is(BV::C, BV::C))
        return Rat(c) * (f.QP(k - 2) * f.Z(n) * (2 * q * f.Z(i - 1) + q + 1) + Rat(c) * G2);

    // A+/A0/A- against the geometric basis.
    if (is(BV::XHat, BV::APlus)) return Rat(os.a_plus) * G1;
    if (is(BV::XHat, BV::AZero)) return Rat(os.a_zero) * G1;
    if (is(BV::XHat, BV::AMinus)) return Rat(os.a_minus) * G1;
    if (is(BV::YHat, BV::APlus)) return Rat(os.a_plus) * Gi;
    if (is(BV::YHat, BV::AZero)) return Rat(os.a_zero) * Gi;
    if (is(BV::YHat, BV::AMinus)) return Rat(os.a_minus) * Gi;
    if (is(BV::XCapHat, BV::APlus)) return Rat(os.a_plus) * f.QP(k) * f.Z(k - i) * f.Z(n - k);
    if (is(BV::XCapHat, BV::AZero)) return Rat(os.a_zero) * f.QP(k) * f.Z(k - i) * f.Z(n - k);
    if (is(BV::XCapHat, BV::AMinus))
        return Rat(os.a_minus) * Rat(f.Z(n) * f.Z(k - i - 1) - f.Z(k - i) * f.Z(k));
    if (is(BV::XPlusHat, BV::APlus))
        return Rat(os.a_plus) * Rat(f.Z(n) * f.Z(k - 1) - f.Z(k) * f.Z(k + i));
    if (is(BV::XPlusHat, BV::AZero))
        return Rat(os.a_zero) * f.QP(k + i) * f.Z(k) * f.Z(n - k - i);
    if (is(BV::XPlusHat, BV::AMinus))
        return Rat(os.a_minus) * f.QP(k + i) * f.Z(k) * f.Z(n - k - i);

    // A+/A0/A- against B and C.
    if (is(BV::B, BV::APlus))
        return f.QP(2 * i + 2) * f.Z(i) * f.Z(k - i) * f.Z(n - k - i) *
               ((f.QP(i) * f.Z(n - k - i) - 1) * G2 + G1);
    if (is(BV::B, BV::AZero))
        return f.QP(2 * i + 1) * (q - 1) * f.Z(k - i) * f.Z(n - k - i) * Rat(c) * G2;
    if (is(BV::B, BV::AMinus))
        return f.QP(2 * i + 2) * f.Z(i) * f.Z(k - i) * f.Z(n - k - i) *
               ((f.QP(i) * f.Z(k - i) - 1) * G2 + G1);
    if (is(BV::C, BV::APlus))
        return f.QP(i + 1) * f.Z(n - k - i) * Rat(c) * (f.QP(k - 2) * f.Z(n) + f.Z(i) * G2);
    if (is(BV::C, BV::AZero))
        return (q - 1) * Rat(c) * (f.QP(k - 2) * f.Z(n) * (2 * f.Z(i) - 1) + Rat(c) * G2);
    if (is(BV::C, BV::AMinus))
        return f.QP(i + 1) * f.Z(k - i) * Rat(c) * (f.QP(k - 2) * f.Z(n) + f.Z(i) * G2);

    // A+/A0/A- Gram block.
    if (is(BV::APlus, BV::APlus))
        return f.QP(2 * i + 2) * f.Z(i) * f.Z(n - k - i) *
               (f.QP(k - i - 2) * f.Z(n) * f.Z(n - k) + Rat(f.Z(i) * f.Z(n - k - i)) * G2);
    if (is(BV::APlus, BV::AZero))
        return f.QP(i + 1) * (q - 1) * f.Z(n - k - i) * Rat(c) *
               (f.QP(k - 2) * f.Z(n) + f.Z(i) * G2);
    if (is(BV::APlus, BV::AMinus))
        return f.QP(2 * i + 2) * f.Z(k - i) * f.Z(n - k - i) * Rat(c) * G2;
    if (is(BV::AZero, BV::AZero))
        return (q - 1) * Rat(c) *
               (f.QP(k - 2) * f.Z(n) * (2 * (q - 1) * f.Z(i) + 1) + (q - 1) * Rat(c) * G2);
    if (is(BV::AZero, BV::AMinus))
        return f.QP(i + 1) * (q - 1) * f.Z(k - i) * Rat(c) *
               (f.QP(k - 2) * f.Z(n) + f.Z(i) * G2);
    if (is(BV::AMinus, BV::AMinus))
        return f.QP(2 * i + 2) * f.Z(i) * f.Z(k - i) *
               (f.QP(k - i - 2) * f.Z(n) * f.Z(k) + Rat(f.Z(i) * f.Z(k - i)) * G2);

    throw std::domain_error("pair_form: unsupported vector pair");
}

namespace {

Rat structure_entry(const Params& p, int r, int c) {
    F f{p};
    const long n = p.n, k = p.k, i = p.i;
    const Rat q = f.q();
    const Rat zero(0);
    // Rows/cols ordered (B, C, A+, A0, A-).
    static constexpr int B = 0, C = 1, AP = 2, A0 = 3, AM = 4;
    switch (r * 5 + c) {
        case B * 5 + B: return f.QP(i + 1) * f.Z(k - i) + f.QP(i + 1) * f.Z(n - k - i) - q - 1;
        case B * 5 + C: return zero;
        case B * 5 + AP: return q * f.Z(i);
        case B * 5 + A0: return zero;
        case B * 5 + AM: return q * f.Z(i);
        case C * 5 + B: return zero;
        case C * 5 + C: return 2 * q * f.Z(i - 1);
        case C * 5 + AP: return f.QP(i + 1) * f.Z(n - k - i);
        case C * 5 + A0: return (q - 1) * (2 * f.Z(i) - 1);
        case C * 5 + AM: return f.QP(i + 1) * f.Z(k - i);
        case AP * 5 + B: return f.QP(i + 1) * f.Z(k - i);
        case AP * 5 + C: return Rat(f.Z(i));
        case AP * 5 + AP: return q * f.Z(n - k) - q - 1;
        case AP * 5 + A0: return (q - 1) * f.Z(i);
        case AP * 5 + AM: return zero;
        case A0 * 5 + B: return zero;
        case A0 * 5 + C: return 2 * f.Z(i) - 1;
        case A0 * 5 + AP: return f.QP(i + 1) * f.Z(n - k - i);
        case A0 * 5 + A0: return (q - 1) * (2 * f.Z(i) - 1) - 1;
        case A0 * 5 + AM: return f.QP(i + 1) * f.Z(k - i);
        case AM * 5 + B: return f.QP(i + 1) * f.Z(n - k - i);
        case AM * 5 + C: return Rat(f.Z(i));
        case AM * 5 + AP: return zero;
        case AM * 5 + A0: return (q - 1) * f.Z(i);
        case AM * 5 + AM: return q * f.Z(k) - q - 1;
    }
    throw std::domain_error("structure_entry: index");
}

const std::vector<BasisVec> kGeomBasis{BasisVec::XHat, BasisVec::YHat, BasisVec::XCapHat,
                                       BasisVec::XPlusHat};
const std::vector<BasisVec> kCombBasis{BasisVec::XHat, BasisVec::YHat, BasisVec::B,
                                       BasisVec::C};
const std::vector<BasisVec> kAVecs{BasisVec::APlus, BasisVec::AZero, BasisVec::AMinus};
const std::vector<BasisVec> kOrbitVecs{BasisVec::B, BasisVec::C, BasisVec::APlus,
                                       BasisVec::AZero, BasisVec::AMinus};

}  // namespace

const TableSpec& table_spec(TableId id) {
    static const std::map<TableId, TableSpec> specs{
        {TableId::GeomGram, {TableId::GeomGram, kGeomBasis, kGeomBasis}},
        {TableId::CombGram, {TableId::CombGram, kCombBasis, kCombBasis}},
        {TableId::CrossGram, {TableId::CrossGram, kCombBasis, kGeomBasis}},
        {TableId::AGeom, {TableId::AGeom, kGeomBasis, kAVecs}},
        {TableId::AComb, {TableId::AComb, kCombBasis, kAVecs}},
        {TableId::AA, {TableId::AA, kAVecs, kAVecs}},
        {TableId::Structure, {TableId::Structure, kOrbitVecs, kOrbitVecs}},
    };
    auto it = specs.find(id);
    if (it == specs.end()) throw std::domain_error("table_spec: unknown table id");
    return it->second;
}

Rat table_entry(TableId id, const Params& p, int r, int c) {
    p.require_i(2, p.k - 1);
    if (id == TableId::Structure) return structure_entry(p, r, c);
    const TableSpec& spec = table_spec(id);
    return pair_form(spec.rows.at(r), spec.cols.at(c), p);
}

QMatrix closed_table(TableId id, const Params& p) {
    const TableSpec& spec = table_spec(id);
    QMatrix m(static_cast<int>(spec.rows.size()), static_cast<int>(spec.cols.size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = table_entry(id, p, r, c);
    return m;
}

QMatrix geometric_gram_inverse(const Params& p) {
    p.require_i(2, p.k - 1);
    F f{p};
    const long n = p.n, k = p.k, i = p.i;
    Rat pre = 1 / (f.QP(k - i) * (f.q() - 1) * f.Z(i) * f.Z(i) * f.Z(n));
    Rat qi = f.QP(i);
    QMatrix m(4, 4,
              {qi, Rat(1), -qi, Rat(-1),
               Rat(1), qi, -qi, Rat(-1),
               -qi, -qi, (qi * f.Z(k) - f.Z(i)) / Rat(f.Z(k - i)), Rat(1),
               Rat(-1), Rat(-1), Rat(1),
               (qi * f.Z(n - k) - f.Z(i)) / (f.QP(2 * i) * f.Z(n - k - i))});
    return m.scaled(pre);
}

const TransitionSpec& transition_spec(TransitionId id) {
    static const std::map<TransitionId, TransitionSpec> specs{
        {TransitionId::ALin, {TransitionId::ALin, kGeomBasis, kAVecs}},
        {TransitionId::ALin2, {TransitionId::ALin2, kCombBasis, kAVecs}},
        {TransitionId::XcapXplus,
         {TransitionId::XcapXplus, kCombBasis, {BasisVec::XCapHat, BasisVec::XPlusHat}}},
    };
    auto it = specs.find(id);
    if (it == specs.end()) throw std::domain_error("transition_spec: unknown id");
    return it->second;
}

QMatrix basis_transition(TransitionId id, const Params& p) {
    p.require_i(2, p.k - 1);
    F f{p};
    const long n = p.n, k = p.k, i = p.i;
    switch (id) {
        case TransitionId::ALin:
            return QMatrix(
                4, 3,
                {f.QP(i + 1) * f.Z(n - k - i) * f.Z(i - 1), f.QP(i) * f.Z(i - 1) - f.Z(i),
                 f.QP(i + 1) * f.Z(k - i) * f.Z(i - 1),
                 Rat(0), -f.QP(i - 1), Rat(0),
                 f.QP(2 * i) * f.Z(n - k - i), f.QP(2 * i - 1), -f.QP(i) * f.Z(i),
                 Rat(-f.Z(i)), f.QP(i - 1), f.QP(i) * f.Z(k - i)});
        case TransitionId::ALin2: {
            Rat D(f.Z(n - 2 * k));
            return QMatrix(
                4, 3,
                {Rat(f.Z(k - 1) * f.Z(n - k - i) * f.Z(n - k)) / (f.QP(k - i - 1) * D),
                 Rat(-f.Z(i)),
                 -Rat(f.Z(k - i) * f.Z(k) * f.Z(n - k - 1)) / (f.QP(k - i - 1) * D),
                 Rat(f.Z(k) * f.Z(n - k - i)) / (f.QP(k - 2 * i + 1) * f.Z(i - 1) * D),
                 -f.QP(i - 1) * f.Z(i) / Rat(f.Z(i - 1)),
                 -Rat(f.Z(k - i) * f.Z(n - k)) / (f.QP(k - 2 * i + 1) * f.Z(i - 1) * D),
                 -Rat(f.Z(n - k)) / (f.QP(k) * D),
                 Rat(0),
                 Rat(f.Z(k)) / (f.QP(k) * D),
                 -Rat(f.Z(k) * f.Z(n - k - i)) / (f.QP(k - i) * f.Z(i - 1) * D),
                 f.QP(i - 1) / Rat(f.Z(i - 1)),
                 Rat(f.Z(k - i) * f.Z(n - k)) / (f.QP(k - i) * f.Z(i - 1) * D)});
        }
        case TransitionId::XcapXplus: {
            Rat D(f.Z(n - 2 * k));
            return QMatrix(
                4, 2,
                {Rat(f.Z(k - i) * f.Z(n - k - 1)) / (f.QP(k - 1) * D),
                 -Rat(f.Z(k - 1) * f.Z(n - k - i)) / (f.QP(k - i - 1) * D),
                 Rat(f.Z(k - i)) / (f.QP(k - i + 1) * f.Z(i - 1) * D),
                 -Rat(f.Z(n - k - i)) / (f.QP(k - 2 * i + 1) * f.Z(i - 1) * D),
                 Rat(-1) / (f.QP(k + i) * D),
                 Rat(1) / (f.QP(k) * D),
                 -Rat(f.Z(k - i)) / (f.QP(k) * f.Z(i - 1) * D),
                 Rat(f.Z(n - k - i)) / (f.QP(k - i) * f.Z(i - 1) * D)});
        }
    }
    throw std::domain_error("basis_transition: unknown id");
}

std::vector<EigenTriple> eigen_data(const Params& p) {
    p.require_i(2, p.k - 1);
    F f{p};
    const Int q(p.q);
    const IntersectionNumbers ic = intersection_numbers(p);
    const OrbitSizes os = orbit_sizes(p);
    const Rat b(ic.b), c(ic.c), ap(os.a_plus), az(os.a_zero), am(os.a_minus);
    const Rat qc = Rat(q) * c;

    auto row = [](std::initializer_list<Rat> v) { return QMatrix(1, 5, v); };
    auto col = [](std::initializer_list<Rat> v) { return QMatrix(5, 1, v); };

    std::vector<EigenTriple> out;
    out.push_back({a1(p), row({b, c, ap, az, am}),
                   col({Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)})});
    out.push_back({q * f.Z(p.n - p.k) - q - 1, row({ap, -c, -ap, -az, qc}),
                   col({qc, -am, -am, -am, qc})});
    out.push_back({q * f.Z(p.k) - q - 1, row({am, -c, qc, -az, -am}),
                   col({qc, -ap, qc, -ap, -ap})});
    out.push_back({Int(-1), row({Rat(0), Rat(1), Rat(0), Rat(-1), Rat(0)}),
                   col({Rat(0), Rat(q - 1), Rat(0), Rat(-1), Rat(0)})});
    out.push_back({Int(-q - 1), row({Rat(q), Rat(1), Rat(-q), Rat(q - 1), Rat(-q)}),
                   col({qc, b, -am, b, -ap})});
    return out;
}

std::vector<std::pair<Int, Int>> local_spectrum_closed(const Params& p) {
    F f{p};
    const Int q(p.q);
    std::vector<std::pair<Int, Int>> out;
    out.emplace_back(a1(p), Int(1));
    out.emplace_back(q * f.Z(p.n - p.k) - q - 1, f.Z(p.k) - 1);
    out.emplace_back(q * f.Z(p.k) - q - 1, f.Z(p.n - p.k) - 1);
    out.emplace_back(Int(-1), Int(p.q - 1) * f.Z(p.k) * f.Z(p.n - p.k));
    out.emplace_back(Int(-q - 1), q * q * f.Z(p.k - 1) * f.Z(p.n - p.k - 1));
    return out;
}

}  // namespace grasslab::qalg
