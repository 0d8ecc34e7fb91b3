#include "toricfib/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace toricfib {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                           [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    auto to_int = [](std::string_view s) {
        if (!s.empty() && s[0] == '+') s.remove_prefix(1);
        return Integer(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) throw std::invalid_argument("rationals must be p/q");
        return Rational(to_int(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw std::invalid_argument("rationals must be p/q");
    return make_rational(to_int(num), to_int(den));
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

bool is_canonical(const Rational& q) {
    if (q.get_den() < 1) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return g == 1;
}

// ---------------------------------------------------------------------------

LatticeVector::LatticeVector(std::initializer_list<long> entries) {
    entries_.reserve(entries.size());
    for (long e : entries) entries_.emplace_back(e);
}

LatticeVector LatticeVector::unit(std::size_t dim, std::size_t index) {
    LatticeVector v(dim);
    v[index] = 1;
    return v;
}

bool LatticeVector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& z) { return z == 0; });
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
    if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
    if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

LatticeVector& LatticeVector::operator*=(const Integer& k) {
    for (auto& e : entries_) e *= k;
    return *this;
}

bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.entries_ == b.entries_; }

std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
    if (a.dim() != b.dim()) return a.dim() <=> b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const int c = cmp(a[i], b[i]);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os << ')';
}

std::string to_string(const LatticeVector& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------

RationalVector::RationalVector(const LatticeVector& v) {
    entries_.reserve(v.dim());
    for (const auto& e : v.entries()) entries_.emplace_back(e);
}

bool RationalVector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
}

std::optional<LatticeVector> RationalVector::as_lattice() const {
    LatticeVector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (entries_[i].get_den() != 1) return std::nullopt;
        out[i] = entries_[i].get_num();
    }
    return out;
}

RationalVector& RationalVector::operator+=(const RationalVector& other) {
    if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& other) {
    if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

RationalVector& RationalVector::operator*=(const Rational& k) {
    for (auto& e : entries_) e *= k;
    return *this;
}

bool operator==(const RationalVector& a, const RationalVector& b) { return a.entries_ == b.entries_; }

std::ostream& operator<<(std::ostream& os, const RationalVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os << ')';
}

Rational dot(const RationalVector& m, const LatticeVector& v) {
    if (m.dim() != v.dim()) throw std::invalid_argument("dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) s += m[i] * v[i];
    return s;
}

Rational dot(const RationalVector& m, const RationalVector& v) {
    if (m.dim() != v.dim()) throw std::invalid_argument("dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) s += m[i] * v[i];
    return s;
}

RationalVector combine(std::span<const LatticeVector> gens, const RationalVector& coeffs) {
    if (gens.size() != coeffs.dim()) throw std::invalid_argument("coefficient count mismatch");
    if (gens.empty()) throw std::invalid_argument("no generators");
    RationalVector out(gens.front().dim());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].dim() != out.dim()) throw std::invalid_argument("dimension mismatch");
        for (std::size_t i = 0; i < out.dim(); ++i) out[i] += coeffs[j] * gens[j][i];
    }
    return out;
}

Integer gcd_of(const LatticeVector& v) {
    Integer g = 0;
    for (const auto& e : v.entries()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    return g;
}

bool is_primitive(const LatticeVector& v) { return gcd_of(v) == 1; }

LatticeVector primitive(const LatticeVector& v) {
    const Integer g = gcd_of(v);
    if (g == 0) throw std::invalid_argument("zero vector has no primitive representative");
    LatticeVector out(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i] / g;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns the pivot column of each pivot row.
// Only the first `cols` columns are eligible as pivots.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t common_dim(std::span<const LatticeVector> vs) {
    if (vs.empty()) return 0;
    const std::size_t d = vs.front().dim();
    for (const auto& v : vs) {
        if (v.dim() != d) throw std::invalid_argument("dimension mismatch");
    }
    return d;
}

} // namespace

std::size_t rank(std::span<const LatticeVector> vectors) {
    const std::size_t d = common_dim(vectors);
    Matrix m;
    m.reserve(vectors.size());
    for (const auto& v : vectors) {
        std::vector<Rational> row;
        row.reserve(d);
        for (const auto& e : v.entries()) row.emplace_back(e);
        m.push_back(std::move(row));
    }
    return rref(m, d).size();
}

bool linearly_independent(std::span<const LatticeVector> vectors) {
    return rank(vectors) == vectors.size();
}

Integer abs_det(std::span<const LatticeVector> rows) {
    const std::size_t n = rows.size();
    if (n == 0) return 1;
    if (common_dim(rows) != n) throw std::invalid_argument("matrix is not square");
    Matrix m;
    for (const auto& v : rows) {
        std::vector<Rational> row;
        for (const auto& e : v.entries()) row.emplace_back(e);
        m.push_back(std::move(row));
    }
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) return 0;
        std::swap(m[col], m[sel]);
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return abs(det.get_num());
}

std::optional<RationalVector> solve_in_basis(std::span<const LatticeVector> gens,
                                             const RationalVector& target) {
    if (gens.empty()) throw std::invalid_argument("no generators");
    const std::size_t d = common_dim(gens);
    if (target.dim() != d) throw std::invalid_argument("dimension mismatch");
    const std::size_t k = gens.size();
    Matrix m(d, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = gens[j][i];
        m[i][k] = target[i];
    }
    const auto pivots = rref(m, k);
    if (pivots.size() != k) throw std::invalid_argument("generators not independent");
    for (std::size_t i = k; i < d; ++i) {
        if (m[i][k] != 0) return std::nullopt;
    }
    RationalVector coeffs(k);
    for (std::size_t i = 0; i < k; ++i) coeffs[pivots[i]] = m[i][k];
    return coeffs;
}

std::optional<RationalVector> solve_in_basis(std::span<const LatticeVector> gens,
                                             const LatticeVector& target) {
    return solve_in_basis(gens, RationalVector(target));
}

std::optional<RationalVector> solve_linear_system(std::span<const LatticeVector> rows,
                                                  std::span<const Rational> rhs,
                                                  std::size_t unknowns) {
    if (rows.size() != rhs.size()) throw std::invalid_argument("row count mismatch");
    Matrix m;
    m.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].dim() != unknowns) throw std::invalid_argument("dimension mismatch");
        std::vector<Rational> row;
        row.reserve(unknowns + 1);
        for (const auto& e : rows[i].entries()) row.emplace_back(e);
        row.push_back(rhs[i]);
        m.push_back(std::move(row));
    }
    const auto pivots = rref(m, unknowns);
    for (std::size_t i = pivots.size(); i < m.size(); ++i) {
        if (m[i][unknowns] != 0) return std::nullopt;
    }
    RationalVector x(unknowns);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][unknowns];
    return x;
}

// ---------------------------------------------------------------------------

Diagonalization diagonalize(std::span<const LatticeVector> gens) {
    const std::size_t k = gens.size();
    const std::size_t d = common_dim(gens);
    if (k == 0) return {};
    if (k > d || !linearly_independent(gens)) throw std::invalid_argument("generators not independent");

    // m is d x k with the generators as columns.
    std::vector<std::vector<Integer>> m(d, std::vector<Integer>(k));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = gens[j][i];
    std::vector<std::vector<Integer>> v(k, std::vector<Integer>(k, Integer(0)));
    for (std::size_t j = 0; j < k; ++j) v[j][j] = 1;

    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : m) std::swap(row[a], row[b]);
        for (auto& row : v) std::swap(row[a], row[b]);
    };
    auto sub_col = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (auto& row : m) row[dst] -= q * row[src];
        for (auto& row : v) row[dst] -= q * row[src];
    };

    Diagonalization out;
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            std::size_t bi = d, bj = k;
            for (std::size_t i = t; i < d; ++i) {
                for (std::size_t j = t; j < k; ++j) {
                    if (m[i][j] == 0) continue;
                    if (bi == d || abs(m[i][j]) < abs(m[bi][bj])) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == d) throw std::logic_error("rank deficiency during diagonalization");
            std::swap(m[t], m[bi]);
            swap_cols(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < d; ++i) {
                if (m[i][t] == 0) continue;
                const Integer q = m[i][t] / m[t][t];
                for (std::size_t j = t; j < k; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < k; ++j) {
                if (m[t][j] == 0) continue;
                const Integer q = m[t][j] / m[t][t];
                sub_col(j, t, q);
                if (m[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        out.diagonal.push_back(abs(m[t][t]));
    }
    out.column = std::move(v);
    return out;
}

Integer sublattice_index(std::span<const LatticeVector> gens) {
    Integer index = 1;
    for (const auto& s : diagonalize(gens).diagonal) index *= s;
    return index;
}

std::vector<BoxPoint> parallelepiped_points(std::span<const LatticeVector> gens) {
    const auto diag = diagonalize(gens);
    const std::size_t k = gens.size();
    std::vector<BoxPoint> out;
    if (k == 0) return out;

    // Cosets of the sublattice are indexed by y_i = j_i / s_i with 0 <= j_i < s_i;
    // the coefficients are c = V y reduced mod 1.
    std::vector<Integer> counter(k, Integer(0));
    for (;;) {
        RationalVector c(k);
        for (std::size_t row = 0; row < k; ++row) {
            Rational s = 0;
            for (std::size_t j = 0; j < k; ++j) s += diag.column[row][j] * make_rational(counter[j], diag.diagonal[j]);
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
            c[row] = s - fl;
        }
        auto point = combine(gens, c).as_lattice();
        if (!point) throw std::logic_error("parallelepiped coset representative is not integral");
        out.push_back({std::move(*point), std::move(c)});

        std::size_t pos = 0;
        while (pos < k) {
            counter[pos] += 1;
            if (counter[pos] < diag.diagonal[pos]) break;
            counter[pos] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    std::sort(out.begin() + 1, out.end(),
              [](const BoxPoint& a, const BoxPoint& b) { return a.point < b.point; });
    return out;
}

} // namespace toricfib
