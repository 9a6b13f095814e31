#include "torind/exactla.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "torind/error.hpp"

namespace torind::la {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
        throw Error(ErrorKind::Malformed, "characteristic " + std::to_string(p) + " is not a prime below 2^31");
}

Scalar PrimeField::inv(Scalar a) const {
    if (a == 0) throw Error(ErrorKind::Malformed, "inverse of zero");
    Scalar result = 1, base = a;
    for (std::uint32_t e = p_ - 2; e; e >>= 1) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
    }
    return result;
}

Scalar PrimeField::from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Scalar>(r);
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(PrimeField field, std::size_t rows, std::span<const Vec> columns) {
    Matrix m(field, rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
    return m;
}

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Vec& v) {
    assert(v.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    assert(cols_ == rhs.rows_);
    Matrix out(field_, rows_, rhs.cols_);
    const std::uint64_t p = field_.p();
    std::vector<std::uint64_t> acc(rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint64_t a = at(i, k);
            if (a == 0) continue;
            const Scalar* b = rhs.data_.data() + k * rhs.cols_;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                acc[j] += a * b[j];
                // keep the accumulator below 2^63
                if (acc[j] >= (std::uint64_t(1) << 62)) acc[j] %= p;
            }
        }
        for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) = static_cast<Scalar>(acc[j] % p);
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::scaled(Scalar s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = field_.mul(x, s);
    return out;
}

Vec Matrix::apply(const Vec& v) const {
    assert(v.size() == cols_);
    Vec out(rows_, 0);
    const std::uint64_t p = field_.p();
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        const Scalar* r = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) {
            acc += std::uint64_t(r[j]) * v[j];
            if (acc >= (std::uint64_t(1) << 62)) acc %= p;
        }
        out[i] = static_cast<Scalar>(acc % p);
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

void Matrix::place(std::size_t r0, std::size_t c0, const Matrix& block) {
    assert(r0 + block.rows_ <= rows_ && c0 + block.cols_ <= cols_);
    for (std::size_t i = 0; i < block.rows_; ++i)
        std::copy_n(block.data_.data() + i * block.cols_, block.cols_, data_.data() + (r0 + i) * cols_ + c0);
}

Matrix Matrix::slice_cols(std::size_t c0, std::size_t count) const {
    Matrix out(field_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) out.at(i, j) = at(i, c0 + j);
    return out;
}

Matrix Matrix::slice_rows(std::size_t r0, std::size_t count) const {
    Matrix out(field_, count, cols_);
    std::copy_n(data_.data() + r0 * cols_, count * cols_, out.data_.data());
    return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> cols) const {
    Matrix out(field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out.at(i, j) = at(i, cols[j]);
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows());
    Matrix out(a.field(), a.rows(), a.cols() + b.cols());
    out.place(0, 0, a);
    out.place(0, a.cols(), b);
    return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.cols());
    Matrix out(a.field(), a.rows() + b.rows(), a.cols());
    out.place(0, 0, a);
    out.place(a.rows(), 0, b);
    return out;
}

Subspace Subspace::zero(PrimeField field, std::size_t ambient) { return {ambient, Matrix(field, ambient, 0)}; }

Subspace Subspace::full(PrimeField field, std::size_t ambient) { return {ambient, Matrix::identity(field, ambient)}; }

Echelon row_reduce(Matrix m) {
    const PrimeField& f = m.field();
    const std::uint64_t p = f.p();
    Echelon e;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
        std::size_t r = pivot_row;
        while (r < m.rows() && m.at(r, c) == 0) ++r;
        if (r == m.rows()) continue;
        if (r != pivot_row) {
            auto a = m.row(r);
            auto b = m.row(pivot_row);
            std::swap_ranges(a.begin() + c, a.end(), b.begin() + c);
        }
        auto prow = m.row(pivot_row);
        const Scalar inv = f.inv(prow[c]);
        for (std::size_t j = c; j < m.cols(); ++j) prow[j] = f.mul(prow[j], inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == pivot_row) continue;
            auto row = m.row(i);
            const Scalar factor = row[c];
            if (factor == 0) continue;
            const std::uint64_t negf = p - factor;
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (prow[j] == 0) continue;
                row[j] = static_cast<Scalar>((row[j] + negf * prow[j]) % p);
            }
        }
        e.pivot_cols.push_back(c);
        ++pivot_row;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    // eliminate along the shorter side
    return m.rows() < m.cols() ? row_reduce(m.transpose()).rank() : row_reduce(m).rank();
}

Subspace kernel_basis(const Matrix& m) {
    const PrimeField& f = m.field();
    Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> cols;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = f.neg(e.reduced.at(r, free));
        cols.push_back(std::move(v));
    }
    return {m.cols(), Matrix::from_columns(f, m.cols(), cols)};
}

Subspace column_space(const Matrix& m) {
    if (m.cols() == 0) return Subspace::zero(m.field(), m.rows());
    Echelon e = row_reduce(m);
    return {m.rows(), m.select_cols(e.pivot_cols)};
}

Solver::Solver(const Matrix& basis) {
    const PrimeField& f = basis.field();
    const std::size_t n = basis.rows(), k = basis.cols();
    Echelon e = row_reduce(hstack(basis, Matrix::identity(f, n)));
    if (e.rank() < k || (k > 0 && e.pivot_cols[k - 1] != k - 1))
        throw Error(ErrorKind::DependentColumns, "basis columns are linearly dependent");
    left_inverse_ = e.reduced.slice_rows(0, k).slice_cols(k, n);
    constraints_ = e.reduced.slice_rows(k, n - k).slice_cols(k, n);
}

std::optional<Vec> Solver::solve(const Vec& v) const {
    if (!contains(v)) return std::nullopt;
    return left_inverse_.apply(v);
}

bool Solver::contains(const Vec& v) const {
    Vec c = constraints_.apply(v);
    return std::all_of(c.begin(), c.end(), [](Scalar x) { return x == 0; });
}

Matrix Solver::solve_all(const Matrix& m) const {
    if (!(constraints_ * m).is_zero()) throw Error(ErrorKind::DependentColumns, "vector outside the span");
    return left_inverse_ * m;
}

Complement quotient_basis(std::size_t ambient_dim, const Subspace& s) {
    const PrimeField& f = s.basis.field();
    if (s.ambient_dim != ambient_dim || s.basis.rows() != ambient_dim)
        throw Error(ErrorKind::Malformed, "subspace ambient dimension mismatch");
    Echelon e = row_reduce(s.basis.transpose());
    if (e.rank() != s.dim()) throw Error(ErrorKind::DependentColumns, "subspace basis has dependent columns");
    std::vector<bool> covered(ambient_dim, false);
    for (auto c : e.pivot_cols) covered[c] = true;
    Complement out;
    for (std::size_t i = 0; i < ambient_dim; ++i)
        if (!covered[i]) out.positions.push_back(i);
    Matrix comp(f, ambient_dim, out.positions.size());
    for (std::size_t j = 0; j < out.positions.size(); ++j) comp.at(out.positions[j], j) = 1;
    Solver solver(hstack(s.basis, comp));
    Matrix all = solver.solve_all(Matrix::identity(f, ambient_dim));
    out.projection = all.slice_rows(s.dim(), out.positions.size());
    out.complement = {ambient_dim, std::move(comp)};
    return out;
}

bool is_subspace_of(const Subspace& inner, const Subspace& outer) {
    if (inner.dim() == 0) return true;
    return rank(hstack(outer.basis, inner.basis)) == outer.dim();
}

bool same_span(const Subspace& a, const Subspace& b) {
    return a.dim() == b.dim() && is_subspace_of(a, b);
}

Vec Homology::class_of(const Vec& cycle) const {
    auto c = solver->solve(cycle);
    if (!c) throw Error(ErrorKind::Malformed, "vector is not a cycle");
    return Vec(c->begin() + boundaries.cols(), c->end());
}

bool Homology::is_boundary(const Vec& v) const {
    auto c = solver->solve(v);
    if (!c) return false;
    return std::all_of(c->begin() + boundaries.cols(), c->end(), [](Scalar x) { return x == 0; });
}

Homology compute_homology(const Matrix& out, const Matrix& in) {
    assert(in.rows() == out.cols());
    Subspace cycles = kernel_basis(out);
    Subspace bounds = column_space(in);
    Homology h;
    h.boundaries = bounds.basis;
    // complement of the boundaries inside the cycle space, in cycle coordinates
    Solver zsolve(cycles.basis);
    Matrix b_in_z = zsolve.solve_all(bounds.basis);
    Complement comp = quotient_basis(cycles.dim(), {cycles.dim(), b_in_z});
    h.representatives = cycles.basis * comp.complement.basis;
    h.dim = h.representatives.cols();
    h.solver.emplace(hstack(h.boundaries, h.representatives));
    return h;
}

std::size_t homology_dim(const Matrix& out, const Matrix& in) {
    return out.cols() - rank(out) - rank(in);
}

}  // namespace torind::la
