#include "torind/dgalgebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "torind/error.hpp"

namespace torind {

namespace {

std::string vec_string(const DGAlgebra& a, const Vec& v) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        if (!first) os << " + ";
        os << a.field().to_signed(v[k]) << "*" << a.basis()[k].label;
        first = false;
    }
    return first ? "0" : os.str();
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

void axiom(bool ok, const std::string& which, const std::string& witness) {
    if (!ok) throw Error(ErrorKind::AxiomViolation, which + " fails at " + witness);
}

}  // namespace

Vec DGAlgebra::basis_vector(std::size_t i) const {
    Vec v(dim(), 0);
    v[i] = 1;
    return v;
}

Vec DGAlgebra::product(const Vec& a, const Vec& b) const {
    const std::size_t n = dim();
    Vec out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            const Scalar c = field_.mul(a[i], b[j]);
            const Scalar* row = mult_.data() + (i * n + j) * n;
            for (std::size_t k = 0; k < n; ++k)
                if (row[k]) out[k] = field_.add(out[k], field_.mul(c, row[k]));
        }
    }
    return out;
}

Matrix DGAlgebra::left_multiplication(const Vec& a) const {
    Matrix m(field_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, product(a, basis_vector(j)));
    return m;
}

std::vector<std::size_t> DGAlgebra::indices_in_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (basis_[i].degree == d) out.push_back(i);
    return out;
}

std::optional<int> DGAlgebra::homogeneous_degree(const Vec& a) const {
    std::optional<int> d;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == 0) continue;
        if (d && *d != basis_[i].degree) throw Error(ErrorKind::DegreeMismatch, "inhomogeneous algebra element");
        d = basis_[i].degree;
    }
    return d;
}

DGAlgebra validate_dg_algebra(const RawDGAlgebra& raw) {
    DGAlgebra a{PrimeField(raw.p)};
    const PrimeField& f = a.field_;
    const std::size_t n = raw.basis.size();
    if (n == 0) throw Error(ErrorKind::Malformed, "algebra basis is empty");
    if (raw.unit >= n) throw Error(ErrorKind::Malformed, "unit index out of range");
    a.basis_ = raw.basis;
    a.unit_ = raw.unit;
    for (const auto& b : a.basis_) {
        axiom(b.degree >= 0, "positive grading", "basis element " + b.label);
        a.top_degree_ = std::max(a.top_degree_, b.degree);
    }
    if (a.basis_[a.unit_].degree != 0) throw Error(ErrorKind::AxiomViolation, "unit must have degree 0");
    for (std::size_t i = 0; i < n; ++i)
        if (i != a.unit_ && a.basis_[i].degree == 0)
            throw Error(ErrorKind::NotLocal, "degree-0 part is not k*1 (extra element " + a.basis_[i].label + ")");

    auto deg = [&](std::size_t i) { return a.basis_[i].degree; };
    auto label = [&](std::size_t i) { return a.basis_[i].label; };

    a.mult_.assign(n * n * n, 0);
    std::vector<bool> given(n * n, false);
    for (const auto& pr : raw.mult) {
        if (pr.left >= n || pr.right >= n) throw Error(ErrorKind::Malformed, "product index out of range");
        given[pr.left * n + pr.right] = true;
        for (auto [k, c] : pr.terms) {
            if (k >= n) throw Error(ErrorKind::Malformed, "product term index out of range");
            Scalar v = f.from_int(c);
            if (v == 0) continue;
            axiom(deg(k) == deg(pr.left) + deg(pr.right), "homogeneity of multiplication",
                  "(" + label(pr.left) + ", " + label(pr.right) + ") -> " + label(k));
            auto& slot = a.mult_[(pr.left * n + pr.right) * n + k];
            slot = f.add(slot, v);
        }
    }
    // products with the unit default to the identity when omitted
    for (std::size_t j = 0; j < n; ++j) {
        if (!given[a.unit_ * n + j]) a.mult_[(a.unit_ * n + j) * n + j] = 1;
        if (j != a.unit_ && !given[j * n + a.unit_]) a.mult_[(j * n + a.unit_) * n + j] = 1;
    }

    a.diff_ = Matrix(f, n, n);
    for (const auto& bd : raw.diff) {
        if (bd.source >= n) throw Error(ErrorKind::Malformed, "differential index out of range");
        for (auto [i, c] : bd.terms) {
            if (i >= n) throw Error(ErrorKind::Malformed, "differential term index out of range");
            Scalar v = f.from_int(c);
            if (v == 0) continue;
            axiom(deg(i) == deg(bd.source) - 1, "differential lowers degree by one",
                  label(bd.source) + " -> " + label(i));
            a.diff_.add_to(i, bd.source, v);
        }
    }

    std::vector<Vec> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = a.basis_vector(i);

    for (std::size_t j = 0; j < n; ++j) {
        axiom(a.product(e[a.unit_], e[j]) == e[j] && a.product(e[j], e[a.unit_]) == e[j], "unitality", label(j));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec ij = a.product(e[i], e[j]);
            Vec ji = a.product(e[j], e[i]);
            const Scalar sgn = f.sign(static_cast<long long>(deg(i)) * deg(j));
            for (auto& x : ji) x = f.mul(x, sgn);
            axiom(ij == ji, "graded commutativity", "(" + label(i) + ", " + label(j) + ")");
            if (is_zero(ij)) continue;
            for (std::size_t k = 0; k < n; ++k) {
                axiom(a.product(ij, e[k]) == a.product(e[i], a.product(e[j], e[k])), "associativity",
                      "(" + label(i) + ", " + label(j) + ", " + label(k) + ")");
            }
        }
        // associativity triples whose first product vanishes still need checking
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_zero(a.product(e[i], e[j]))) continue;
            for (std::size_t k = 0; k < n; ++k)
                axiom(is_zero(a.product(e[i], a.product(e[j], e[k]))), "associativity",
                      "(" + label(i) + ", " + label(j) + ", " + label(k) + ")");
        }
        if (deg(i) % 2 == 1) axiom(is_zero(a.product(e[i], e[i])), "odd elements square to zero", label(i));
    }

    axiom((a.diff_ * a.diff_).is_zero(), "differential squares to zero", "d o d");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = a.boundary(a.product(e[i], e[j]));
            Vec rhs = a.product(a.boundary(e[i]), e[j]);
            Vec tail = a.product(e[i], a.boundary(e[j]));
            const Scalar sgn = f.sign(deg(i));
            for (std::size_t k = 0; k < n; ++k) rhs[k] = f.add(rhs[k], f.mul(sgn, tail[k]));
            axiom(lhs == rhs, "Leibniz rule", "(" + label(i) + ", " + label(j) + "): " + vec_string(a, lhs) +
                                                  " vs " + vec_string(a, rhs));
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (deg(j) == 1 && a.diff_.at(a.unit_, j) != 0)
            throw Error(ErrorKind::HomologyZero, "the unit is the boundary of " + label(j));
    return a;
}

RawDGAlgebra to_raw(const DGAlgebra& a) {
    RawDGAlgebra raw;
    raw.p = a.field().p();
    raw.basis = a.basis();
    raw.unit = a.unit();
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            RawDGAlgebra::Product pr{i, j, {}};
            for (std::size_t k = 0; k < n; ++k)
                if (auto c = a.mult(i, j, k)) pr.terms.emplace_back(k, c);
            if (!pr.terms.empty() || i == a.unit() || j == a.unit()) raw.mult.push_back(std::move(pr));
        }
        RawDGAlgebra::Boundary bd{i, {}};
        for (std::size_t k = 0; k < n; ++k)
            if (auto c = a.diff(k, i)) bd.terms.emplace_back(k, c);
        if (!bd.terms.empty()) raw.diff.push_back(std::move(bd));
    }
    return raw;
}

DGAlgebra exterior_algebra(PrimeField field, const std::vector<int>& odd_degrees, const std::vector<std::string>& labels) {
    const std::size_t q = odd_degrees.size();
    for (int d : odd_degrees)
        if (d <= 0 || d % 2 == 0) throw Error(ErrorKind::Malformed, "exterior generators need positive odd degree");
    RawDGAlgebra raw;
    raw.p = field.p();
    const std::size_t n = std::size_t(1) << q;
    for (std::size_t mask = 0; mask < n; ++mask) {
        std::string name;
        int d = 0;
        for (std::size_t g = 0; g < q; ++g) {
            if (!(mask >> g & 1)) continue;
            name += g < labels.size() ? labels[g] : ("e" + std::to_string(g + 1));
            d += odd_degrees[g];
        }
        raw.basis.push_back({mask == 0 ? "1" : name, d});
    }
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            RawDGAlgebra::Product pr{s, t, {}};
            if ((s & t) == 0) {
                // each generator of t passing a larger generator of s flips the sign
                int swaps = 0;
                for (std::size_t b = 0; b < q; ++b)
                    if (t >> b & 1)
                        for (std::size_t a2 = b + 1; a2 < q; ++a2)
                            if (s >> a2 & 1) ++swaps;
                pr.terms.emplace_back(s | t, swaps % 2 ? -1 : 1);
            }
            raw.mult.push_back(std::move(pr));
        }
    }
    return validate_dg_algebra(raw);
}

DGAlgebra square_zero_extension(PrimeField field, const std::vector<int>& degrees, const Matrix& diff) {
    const std::size_t q = degrees.size();
    if (diff.rows() != q || diff.cols() != q) throw Error(ErrorKind::Malformed, "differential size mismatch");
    RawDGAlgebra raw;
    raw.p = field.p();
    raw.basis.push_back({"1", 0});
    for (std::size_t i = 0; i < q; ++i) raw.basis.push_back({"v" + std::to_string(i + 1), degrees[i]});
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) raw.mult.push_back({i + 1, j + 1, {}});
    for (std::size_t j = 0; j < q; ++j) {
        RawDGAlgebra::Boundary bd{j + 1, {}};
        for (std::size_t i = 0; i < q; ++i)
            if (auto c = diff.at(i, j)) bd.terms.emplace_back(i + 1, c);
        raw.diff.push_back(std::move(bd));
    }
    return validate_dg_algebra(raw);
}

DGAlgebra tensor_algebras(const DGAlgebra& a, const DGAlgebra& b) {
    if (!(a.field() == b.field())) throw Error(ErrorKind::AlgebraMismatch, "algebras over different fields");
    const PrimeField& f = a.field();
    const std::size_t na = a.dim(), nb = b.dim();
    RawDGAlgebra raw;
    raw.p = f.p();
    auto idx = [&](std::size_t i, std::size_t j) { return i * nb + j; };
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            std::string label = a.basis()[i].label == "1" ? b.basis()[j].label
                                : b.basis()[j].label == "1" ? a.basis()[i].label
                                                            : a.basis()[i].label + b.basis()[j].label;
            raw.basis.push_back({label, a.degree(i) + b.degree(j)});
        }
    raw.unit = idx(a.unit(), b.unit());
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t i2 = 0; i2 < na; ++i2)
                for (std::size_t j2 = 0; j2 < nb; ++j2) {
                    RawDGAlgebra::Product pr{idx(i, j), idx(i2, j2), {}};
                    const Scalar sgn = f.sign(static_cast<long long>(b.degree(j)) * a.degree(i2));
                    for (std::size_t k = 0; k < na; ++k) {
                        const Scalar ca = a.mult(i, i2, k);
                        if (!ca) continue;
                        for (std::size_t l = 0; l < nb; ++l)
                            if (auto cb = b.mult(j, j2, l))
                                pr.terms.emplace_back(idx(k, l), f.to_signed(f.mul(sgn, f.mul(ca, cb))));
                    }
                    raw.mult.push_back(std::move(pr));
                }
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            RawDGAlgebra::Boundary bd{idx(i, j), {}};
            for (std::size_t k = 0; k < na; ++k)
                if (auto c = a.diff(k, i)) bd.terms.emplace_back(idx(k, j), f.to_signed(c));
            const Scalar sgn = f.sign(a.degree(i));
            for (std::size_t l = 0; l < nb; ++l)
                if (auto c = b.diff(l, j)) bd.terms.emplace_back(idx(i, l), f.to_signed(f.mul(sgn, c)));
            raw.diff.push_back(std::move(bd));
        }
    return validate_dg_algebra(raw);
}

Subspace augmentation_power(const DGAlgebra& a, std::size_t n) {
    const PrimeField& f = a.field();
    if (n == 0) return Subspace::full(f, a.dim());
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.degree(i) > 0) positive.push_back(i);
    std::vector<Vec> current;
    for (auto i : positive) current.push_back(a.basis_vector(i));
    Subspace span = la::column_space(Matrix::from_columns(f, a.dim(), current));
    for (std::size_t step = 1; step < n && span.dim() > 0; ++step) {
        std::vector<Vec> next;
        for (std::size_t c = 0; c < span.dim(); ++c) {
            Vec v = span.basis.column(c);
            for (auto i : positive) next.push_back(a.product(a.basis_vector(i), v));
        }
        span = la::column_space(Matrix::from_columns(f, a.dim(), next));
    }
    return span;
}

std::optional<std::vector<std::size_t>> nonzero_product_witness(const DGAlgebra& a, std::size_t n) {
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.degree(i) > 0) positive.push_back(i);
    if (n == 0) return std::vector<std::size_t>{};
    std::vector<std::size_t> chosen;
    // Products of basis elements commute up to sign, so nondecreasing index
    // sequences suffice.
    auto search = [&](auto&& self, const Vec& acc, std::size_t from) -> bool {
        if (chosen.size() == n) return true;
        for (std::size_t pi = from; pi < positive.size(); ++pi) {
            Vec next = chosen.empty() ? a.basis_vector(positive[pi]) : a.product(acc, a.basis_vector(positive[pi]));
            if (is_zero(next)) continue;
            chosen.push_back(positive[pi]);
            if (self(self, next, pi)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (search(search, Vec{}, 0)) return chosen;
    return std::nullopt;
}

namespace {

// Submatrix of the differential from degree d to degree d - 1.
Matrix diff_block(const DGAlgebra& a, int d) {
    auto src = a.indices_in_degree(d);
    auto dst = a.indices_in_degree(d - 1);
    Matrix m(a.field(), dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
        for (std::size_t r = 0; r < dst.size(); ++r) m.at(r, c) = a.diff(dst[r], src[c]);
    return m;
}

Vec restrict_to(const DGAlgebra& a, const Vec& v, int d) {
    auto idx = a.indices_in_degree(d);
    Vec out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
    return out;
}

Vec extend_from(const DGAlgebra& a, const Vec& local, int d) {
    auto idx = a.indices_in_degree(d);
    Vec out(a.dim(), 0);
    for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = local[i];
    return out;
}

}  // namespace

HomologyAlgebra homology_algebra(const DGAlgebra& a) {
    HomologyAlgebra h;
    const int top = a.top_degree();
    h.dims.assign(top + 1, 0);
    std::vector<std::size_t> class_offset(top + 2, 0);
    for (int d = 0; d <= top; ++d) {
        h.per_degree.push_back(la::compute_homology(diff_block(a, d), diff_block(a, d + 1)));
        const auto& hd = h.per_degree.back();
        h.dims[d] = hd.dim;
        class_offset[d + 1] = class_offset[d] + hd.dim;
        for (std::size_t c = 0; c < hd.dim; ++c) {
            h.class_degree.push_back(d);
            h.representatives.push_back(extend_from(a, hd.representatives.column(c), d));
        }
    }
    const std::size_t total = h.representatives.size();
    if (total == 0) throw Error(ErrorKind::HomologyZero, "H(A) = 0");
    h.inf = h.class_degree.front();
    h.sup = h.class_degree.back();
    h.amplitude = h.sup - h.inf;
    for (std::size_t c = 0; c < total; ++c) {
        if (h.class_degree[c] == 0) h.unit_class = c;
        if (h.class_degree[c] > 0) h.max_ideal.push_back(c);
    }
    h.products.assign(total, std::vector<Vec>(total));
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            const int d = h.class_degree[i] + h.class_degree[j];
            Vec prod = a.product(h.representatives[i], h.representatives[j]);
            Vec coords(total, 0);
            if (d <= top) {
                Vec local = h.per_degree[d].class_of(restrict_to(a, prod, d));
                for (std::size_t c = 0; c < local.size(); ++c) coords[class_offset[d] + c] = local[c];
            }
            h.products[i][j] = std::move(coords);
        }
    }
    // The induced product does not depend on representatives: cycles times
    // boundaries are boundaries.
    for (std::size_t i = 0; i < total; ++i) {
        for (int d = 0; d <= top; ++d) {
            const auto& bd = h.per_degree[d].boundaries;
            for (std::size_t c = 0; c < bd.cols(); ++c) {
                Vec prod = a.product(h.representatives[i], extend_from(a, bd.column(c), d));
                const int e = h.class_degree[i] + d;
                if (e > top) continue;
                if (!h.per_degree[e].is_boundary(restrict_to(a, prod, e)))
                    throw Error(ErrorKind::AxiomViolation, "cycle times boundary is not a boundary");
            }
        }
    }
    return h;
}

namespace {

struct TruncationData {
    std::vector<std::size_t> kept;  // original indices forming the new basis
    Matrix projection;              // new x old
};

TruncationData truncation_data(const DGAlgebra& a, int r) {
    const PrimeField& f = a.field();
    TruncationData t;
    auto top = a.indices_in_degree(r);
    std::vector<std::size_t> kept_top;
    Matrix top_projection(f, 0, top.size());
    if (!top.empty()) {
        la::Subspace bd = la::column_space(diff_block(a, r + 1));
        la::Complement comp = la::quotient_basis(top.size(), bd);
        for (auto pos : comp.positions) kept_top.push_back(top[pos]);
        top_projection = comp.projection;
    }
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.degree(i) < r) t.kept.push_back(i);
    const std::size_t below = t.kept.size();
    t.kept.insert(t.kept.end(), kept_top.begin(), kept_top.end());
    t.projection = Matrix(f, t.kept.size(), a.dim());
    for (std::size_t i = 0; i < below; ++i) t.projection.at(i, t.kept[i]) = 1;
    for (std::size_t row = 0; row < kept_top.size(); ++row)
        for (std::size_t c = 0; c < top.size(); ++c) t.projection.at(below + row, top[c]) = top_projection.at(row, c);
    return t;
}

}  // namespace

DGAlgebra soft_truncate_algebra(const DGAlgebra& a, int r) {
    HomologyAlgebra h = homology_algebra(a);
    if (r < h.sup)
        throw Error(ErrorKind::TruncationBelowHomology,
                    "r = " + std::to_string(r) + " < sup H(A) = " + std::to_string(h.sup));
    TruncationData t = truncation_data(a, r);
    const PrimeField& f = a.field();
    RawDGAlgebra raw;
    raw.p = f.p();
    const std::size_t m = t.kept.size();
    for (auto i : t.kept) raw.basis.push_back(a.basis()[i]);
    raw.unit = static_cast<std::size_t>(std::find(t.kept.begin(), t.kept.end(), a.unit()) - t.kept.begin());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Vec prod = t.projection.apply(a.product(a.basis_vector(t.kept[i]), a.basis_vector(t.kept[j])));
            RawDGAlgebra::Product pr{i, j, {}};
            for (std::size_t k = 0; k < m; ++k)
                if (prod[k]) pr.terms.emplace_back(k, prod[k]);
            raw.mult.push_back(std::move(pr));
        }
        Vec bd = t.projection.apply(a.boundary(a.basis_vector(t.kept[i])));
        RawDGAlgebra::Boundary b{i, {}};
        for (std::size_t k = 0; k < m; ++k)
            if (bd[k]) b.terms.emplace_back(k, bd[k]);
        raw.diff.push_back(std::move(b));
    }
    DGAlgebra out = validate_dg_algebra(raw);
    HomologyAlgebra h2 = homology_algebra(out);
    if (h2.dims.size() < h.dims.size()) h2.dims.resize(h.dims.size(), 0);
    if (h.dims.size() < h2.dims.size()) h.dims.resize(h2.dims.size(), 0);
    if (h2.dims != h.dims) throw Error(ErrorKind::AxiomViolation, "soft truncation changed homology");
    return out;
}

Matrix truncation_projection(const DGAlgebra& a, const DGAlgebra& truncated, int r) {
    TruncationData t = truncation_data(a, r);
    if (t.kept.size() != truncated.dim()) throw Error(ErrorKind::AlgebraMismatch, "not the truncation at r");
    return t.projection;
}

}  // namespace torind
