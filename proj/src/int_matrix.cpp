#include "motivic/int_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace motivic {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionMismatch("from_rows: ragged row");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Vec IntMatrix::row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Vec IntMatrix::col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product shape");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

Vec IntMatrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw DimensionMismatch("apply: vector length");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (x[j] != 0) out[i] += at(i, j) * x[j];
    return out;
}

Vec IntMatrix::apply_row(const Vec& y) const {
    if (y.size() != rows_) throw DimensionMismatch("apply_row: vector length");
    Vec out(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (y[i] != 0)
            for (std::size_t j = 0; j < cols_; ++j) out[j] += y[i] * at(i, j);
    return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& rhs) const {
    if (rows_ == 0 && cols_ == 0) return rhs;
    if (rhs.rows_ == 0 && rhs.cols_ == 0) return *this;
    std::size_t w = rows_ == 0 ? std::max(cols_, rhs.cols_) : cols_;
    if (rhs.rows_ != 0 && rhs.cols_ != w) throw DimensionMismatch("vstack width");
    if (rows_ != 0 && cols_ != w) throw DimensionMismatch("vstack width");
    IntMatrix out(rows_ + rhs.rows_, w);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < rhs.rows_; ++i)
        for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(rows_ + i, j) = rhs.at(i, j);
    return out;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? " [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 < cols_ ? "," : "");
        os << "]";
    }
    os << "]";
    return os.str();
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) at(dst, k) += factor * at(src, k);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) at(k, dst) += factor * at(k, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

namespace {

// Smallest nonzero |entry| in s[t.., t..]; ties by lowest row, then column.
bool find_pivot(const IntMatrix& s, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
            const Int& e = s.at(i, j);
            if (e == 0) continue;
            Int a = abs(e);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SNFDecomposition d;
    d.u = IntMatrix::identity(m);
    d.v = IntMatrix::identity(n);
    d.s = a;
    IntMatrix& s = d.s;

    const std::size_t nmin = std::min(m, n);
    std::size_t t = 0;
    while (t < nmin) {
        std::size_t pi = t, pj = t;
        if (!find_pivot(s, t, pi, pj)) break;  // remaining submatrix is zero
        s.swap_rows(t, pi);
        d.u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        d.v.swap_cols(t, pj);

        bool cleared = true;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (s.at(i, t) == 0) continue;
            Int q = s.at(i, t) / s.at(t, t);
            s.add_row_multiple(i, t, -q);
            d.u.add_row_multiple(i, t, -q);
            if (s.at(i, t) != 0) cleared = false;  // remainder stays, pivot will shrink
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (s.at(t, j) == 0) continue;
            Int q = s.at(t, j) / s.at(t, t);
            s.add_col_multiple(j, t, -q);
            d.v.add_col_multiple(j, t, -q);
            if (s.at(t, j) != 0) cleared = false;
        }
        if (!cleared) continue;

        // divisibility fix-up: fold a non-divisible row into the pivot row
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (s.at(i, j) % s.at(t, t) != 0) {
                    s.add_row_multiple(t, i, 1);
                    d.u.add_row_multiple(t, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;

        if (s.at(t, t) < 0) {
            s.negate_row(t);
            d.u.negate_row(t);
        }
        ++t;
    }

    for (std::size_t i = 0; i < nmin; ++i) {
        if (s.at(i, i) != 0)
            d.invariant_factors.push_back(s.at(i, i));
        else
            ++d.zero_count;
    }
    return d;
}

IntMatrix hnf_rows(const IntMatrix& m) {
    IntMatrix w = m;
    const std::size_t rows = w.rows(), cols = w.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // gcd-reduce column c over rows r..
        for (;;) {
            std::size_t best = rows;
            Int bestabs;
            for (std::size_t i = r; i < rows; ++i) {
                if (w.at(i, c) == 0) continue;
                Int a = abs(w.at(i, c));
                if (best == rows || a < bestabs) {
                    best = i;
                    bestabs = a;
                }
            }
            if (best == rows) break;
            w.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (w.at(i, c) == 0) continue;
                Int q = w.at(i, c) / w.at(r, c);
                w.add_row_multiple(i, r, -q);
                if (w.at(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (w.at(r, c) == 0) continue;
        if (w.at(r, c) < 0) w.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(w.at(i, c), w.at(r, c));
            w.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    IntMatrix out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = w.at(i, j);
    return out;
}

std::optional<Vec> solve_column(const IntMatrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw DimensionMismatch("solve_column: rhs length");
    SNFDecomposition d = smith_normal_form(a);
    Vec w = d.u.apply(b);  // S y = U b
    const std::size_t n = a.cols();
    Vec y(n);
    const std::size_t nmin = std::min(a.rows(), n);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Int di = (i < nmin) ? d.s.at(i, i) : Int(0);
        if (di != 0) {
            if (w[i] % di != 0) return std::nullopt;
            y[i] = w[i] / di;
        } else if (w[i] != 0) {
            return std::nullopt;
        }
    }
    return d.v.apply(y);
}

std::optional<Vec> lattice_membership(const Vec& v, const IntMatrix& l) {
    if (v.size() != l.cols()) throw DimensionMismatch("lattice_membership: vector length");
    return solve_column(l.transposed(), v);  // L^T c = v  <=>  c L = v
}

IntMatrix kernel_rows(const IntMatrix& a) {
    SNFDecomposition d = smith_normal_form(a);
    const std::size_t n = a.cols();
    const std::size_t r = d.rank();
    // kernel basis = columns of V past the rank
    IntMatrix out(n - r, n);
    for (std::size_t k = r; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) out.at(k - r, i) = d.v.at(i, k);
    return hnf_rows(out);
}

IntMatrix preimage_rows(const IntMatrix& m, const IntMatrix& l) {
    if (l.rows() > 0 && l.cols() != m.rows()) throw DimensionMismatch("preimage_rows: lattice width");
    const std::size_t s = m.cols(), k = l.rows();
    IntMatrix sys(m.rows(), s + k);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < s; ++j) sys.at(i, j) = m.at(i, j);
        for (std::size_t j = 0; j < k; ++j) sys.at(i, s + j) = -l.at(j, i);
    }
    IntMatrix ker = kernel_rows(sys);
    IntMatrix out(ker.rows(), s);
    for (std::size_t i = 0; i < ker.rows(); ++i)
        for (std::size_t j = 0; j < s; ++j) out.at(i, j) = ker.at(i, j);
    return hnf_rows(out);
}

IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b) { return hnf_rows(a.vstack(b)); }

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("unimodular_inverse: not square");
    const std::size_t n = m.rows();
    IntMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n);
        e[j] = 1;
        auto x = solve_column(m, e);
        if (!x) throw DimensionMismatch("unimodular_inverse: matrix is not unimodular");
        for (std::size_t i = 0; i < n; ++i) inv.at(i, j) = (*x)[i];
    }
    return inv;
}

bool lattice_contains(const IntMatrix& outer, const IntMatrix& inner) {
    for (std::size_t i = 0; i < inner.rows(); ++i)
        if (!lattice_membership(inner.row(i), outer)) return false;
    return true;
}

bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
    return lattice_contains(a, b) && lattice_contains(b, a);
}

bool in_lattice(const Vec& v, const IntMatrix& l) { return lattice_membership(v, l).has_value(); }

}  // namespace motivic
