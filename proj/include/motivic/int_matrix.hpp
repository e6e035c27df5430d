#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "motivic/errors.hpp"

namespace motivic {

using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;

/// Dense integer matrix, row-major, arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    /// M * x for a column vector x.
    Vec apply(const Vec& x) const;
    /// y * M for a row vector y.
    Vec apply_row(const Vec& y) const;

    /// Stack rhs below this (column counts must agree; a 0-row matrix adopts the other's width).
    IntMatrix vstack(const IntMatrix& rhs) const;

    bool is_zero() const;
    bool operator==(const IntMatrix&) const = default;

    std::string to_string() const;

    // elementary row/column operations (used by the normal-form routines)
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
    void negate_row(std::size_t i);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

struct SNFDecomposition {
    IntMatrix u;  // rows x rows, unimodular
    IntMatrix s;  // diagonal up to padding, d1 | d2 | ...
    IntMatrix v;  // cols x cols, unimodular
    std::vector<Int> invariant_factors;  // the nonzero diagonal entries
    std::size_t zero_count = 0;          // trailing zero diagonal positions

    std::size_t rank() const { return invariant_factors.size(); }
};

/// U*A*V = S with U, V unimodular and S in Smith normal form.
/// Pivot rule: smallest nonzero |entry| of the working submatrix, ties broken
/// by lowest row then column index, so the output is reproducible.
SNFDecomposition smith_normal_form(const IntMatrix& a);

/// Canonical basis of the row lattice: row-style Hermite normal form with
/// positive pivots, entries above each pivot reduced into [0, pivot), zero
/// rows dropped.  Two row sets span the same lattice iff their forms agree.
IntMatrix hnf_rows(const IntMatrix& m);

/// Particular integer solution of A x = b (free coordinates set to zero).
std::optional<Vec> solve_column(const IntMatrix& a, const Vec& b);

/// Coefficients c with c * L = v, if v lies in the row lattice of L.
std::optional<Vec> lattice_membership(const Vec& v, const IntMatrix& l);

/// Basis rows of { x : A x = 0 }.
IntMatrix kernel_rows(const IntMatrix& a);

/// Basis rows of { x : M x in rowlattice(L) }.  L's column count must equal M's row count.
IntMatrix preimage_rows(const IntMatrix& m, const IntMatrix& l);

IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b);

/// Inverse of a square matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& m);
bool lattice_contains(const IntMatrix& outer, const IntMatrix& inner);
bool lattice_equal(const IntMatrix& a, const IntMatrix& b);
bool in_lattice(const Vec& v, const IntMatrix& l);

Int floor_div(const Int& a, const Int& b);

}  // namespace motivic
