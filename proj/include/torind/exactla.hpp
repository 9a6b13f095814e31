#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace torind::la {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

// Arithmetic in Z/p for a runtime prime p < 2^31. Values handed to the field
// are always reduced representatives 0 <= v < p.
class PrimeField {
public:
    static constexpr std::uint32_t kDefaultPrime = 32003;

    explicit PrimeField(std::uint32_t p = kDefaultPrime);

    std::uint32_t p() const noexcept { return p_; }

    Scalar add(Scalar a, Scalar b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const noexcept {
        return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Scalar inv(Scalar a) const;
    Scalar from_int(std::int64_t v) const noexcept;
    std::int64_t to_signed(Scalar a) const noexcept { return a > p_ / 2 ? std::int64_t(a) - p_ : a; }

    // (-1)^e as a field element.
    Scalar sign(long long e) const noexcept { return (e & 1) ? p_ - 1 : 1; }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

// Dense row-major matrix over a prime field.
class Matrix {
public:
    Matrix() : field_(PrimeField::kDefaultPrime) {}
    Matrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(PrimeField field, std::size_t n);
    static Matrix from_columns(PrimeField field, std::size_t rows, std::span<const Vec> columns);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    void add_to(std::size_t r, std::size_t c, Scalar v) { at(r, c) = field_.add(at(r, c), v); }

    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    Vec column(std::size_t c) const;
    void set_column(std::size_t c, const Vec& v);

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(Scalar s) const;
    Vec apply(const Vec& v) const;
    Matrix transpose() const;

    // Copies `block` into this matrix with its top-left corner at (r0, c0).
    void place(std::size_t r0, std::size_t c0, const Matrix& block);
    Matrix slice_cols(std::size_t c0, std::size_t count) const;
    Matrix slice_rows(std::size_t r0, std::size_t count) const;
    Matrix select_cols(std::span<const std::size_t> cols) const;

    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    PrimeField field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// A subspace of k^ambient_dim given by a basis stored as the columns of a
// matrix; the columns are always linearly independent.
struct Subspace {
    std::size_t ambient_dim = 0;
    Matrix basis;

    std::size_t dim() const noexcept { return basis.cols(); }
    static Subspace zero(PrimeField field, std::size_t ambient);
    static Subspace full(PrimeField field, std::size_t ambient);
};

// Reduced row echelon form. Pivots are searched column by column, taking the
// smallest remaining row index with a nonzero entry.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const noexcept { return pivot_cols.size(); }
};

Echelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);
Subspace kernel_basis(const Matrix& m);
// Basis of the column space formed by the pivot columns of m (a subset of
// the columns of m itself).
Subspace column_space(const Matrix& m);

// Complement of S spanned by coordinate vectors at the non-pivot positions of
// S, plus the projection k^n -> complement coordinates that kills S.
struct Complement {
    Subspace complement;
    std::vector<std::size_t> positions;
    Matrix projection;
};

Complement quotient_basis(std::size_t ambient_dim, const Subspace& s);

// Solves basis * c = v for a matrix with independent columns.
class Solver {
public:
    explicit Solver(const Matrix& basis);

    std::optional<Vec> solve(const Vec& v) const;
    bool contains(const Vec& v) const;
    // Coordinates of each column of m; throws if some column is outside the span.
    Matrix solve_all(const Matrix& m) const;
    std::size_t dim() const noexcept { return left_inverse_.rows(); }

private:
    Matrix left_inverse_;
    Matrix constraints_;
};

bool is_subspace_of(const Subspace& inner, const Subspace& outer);
bool same_span(const Subspace& a, const Subspace& b);

// Homology of C_{+1} --in--> C --out--> C_{-1} at the middle spot.
struct Homology {
    std::size_t dim = 0;
    Matrix representatives;  // ambient x dim, cycles
    Matrix boundaries;       // ambient x b, basis of the image of `in`

    // Class coordinates of a cycle; throws if v is not a cycle.
    Vec class_of(const Vec& cycle) const;
    bool is_boundary(const Vec& v) const;

    std::optional<Solver> solver;  // for [boundaries | representatives]
};

Homology compute_homology(const Matrix& out, const Matrix& in);
std::size_t homology_dim(const Matrix& out, const Matrix& in);

}  // namespace torind::la
