#include "torind/dgmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "torind/error.hpp"

namespace torind {

std::optional<int> HomologyProfile::inf() const {
    if (dims.empty()) return std::nullopt;
    return dims.begin()->first;
}

std::optional<int> HomologyProfile::sup() const {
    if (dims.empty()) return std::nullopt;
    return dims.rbegin()->first;
}

std::optional<int> HomologyProfile::amp() const {
    if (dims.empty()) return std::nullopt;
    return *sup() - *inf();
}

std::size_t HomologyProfile::dim_at(int d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
}

HomologyProfile HomologyProfile::shifted(int q) const {
    HomologyProfile out;
    for (auto [d, n] : dims) out.dims[d + q] = n;
    if (certified_to) out.certified_to = *certified_to + q;
    return out;
}

HomologyProfile HomologyProfile::truncated_to(int degree) const {
    HomologyProfile out;
    for (auto [d, n] : dims)
        if (d <= degree) out.dims[d] = n;
    out.certified_to = certified_to ? std::min(*certified_to, degree) : degree;
    return out;
}

std::string HomologyProfile::describe() const {
    std::ostringstream os;
    if (zero()) {
        os << "zero";
    } else {
        os << "{";
        bool first = true;
        for (auto [d, n] : dims) {
            os << (first ? "" : ", ") << d << ": " << n;
            first = false;
        }
        os << "} inf " << *inf() << " sup " << *sup() << " amp " << *amp();
    }
    if (certified_to) os << " (certified through degree " << *certified_to << ")";
    return os.str();
}

std::pair<std::size_t, std::size_t> GradedComplex::range(int d) const {
    auto lo = std::lower_bound(degrees.begin(), degrees.end(), d);
    auto hi = std::upper_bound(lo, degrees.end(), d);
    return {static_cast<std::size_t>(lo - degrees.begin()), static_cast<std::size_t>(hi - degrees.begin())};
}

Matrix GradedComplex::block(int d) const {
    auto [s0, s1] = range(d);
    auto [t0, t1] = range(d - 1);
    Matrix out(field, t1 - t0, s1 - s0);
    for (std::size_t r = t0; r < t1; ++r)
        for (std::size_t c = s0; c < s1; ++c) out.at(r - t0, c - s0) = diff.at(r, c);
    return out;
}

la::Homology GradedComplex::homology_at(int d) const { return la::compute_homology(block(d), block(d + 1)); }

HomologyProfile homology_profile(const GradedComplex& c) {
    HomologyProfile out;
    if (c.degrees.empty()) return out;
    std::vector<int> ds(c.degrees.begin(), c.degrees.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    std::map<int, std::size_t> ranks;  // rank of the block leaving degree d
    for (int d : ds) ranks[d] = la::rank(c.block(d));
    for (int d : ds) {
        auto [s0, s1] = c.range(d);
        const std::size_t above = ranks.count(d + 1) ? ranks[d + 1] : 0;
        const std::size_t h = (s1 - s0) - ranks[d] - above;
        if (h) out.dims[d] = h;
    }
    return out;
}

FiniteDGModule::FiniteDGModule(AlgebraPtr algebra, std::vector<int> degrees, Matrix diff, std::vector<Matrix> action)
    : algebra_(std::move(algebra)), complex_{algebra_->field(), std::move(degrees), std::move(diff)},
      action_(std::move(action)) {
    const std::size_t n = complex_.degrees.size();
    if (!std::is_sorted(complex_.degrees.begin(), complex_.degrees.end()))
        throw Error(ErrorKind::Malformed, "module basis must be sorted by degree");
    if (complex_.diff.rows() != n || complex_.diff.cols() != n)
        throw Error(ErrorKind::Malformed, "differential has the wrong size");
    if (action_.size() != algebra_->dim()) throw Error(ErrorKind::Malformed, "one action matrix per algebra basis element");
    for (const auto& m : action_)
        if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::Malformed, "action matrix has the wrong size");
}

Matrix FiniteDGModule::act(const Vec& a) const {
    Matrix out(field(), dim(), dim());
    for (std::size_t b = 0; b < a.size(); ++b)
        if (a[b]) out = out + action_[b].scaled(a[b]);
    return out;
}

namespace {

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

Matrix permute(const Matrix& m, const std::vector<std::size_t>& perm) {
    Matrix out(m.field(), perm.size(), perm.size());
    for (std::size_t r = 0; r < perm.size(); ++r)
        for (std::size_t c = 0; c < perm.size(); ++c) out.at(r, c) = m.at(perm[r], perm[c]);
    return out;
}

FiniteDGModule sorted_module(AlgebraPtr algebra, const std::vector<int>& degrees, const Matrix& diff,
                             const std::vector<Matrix>& action) {
    std::vector<std::size_t> perm(degrees.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return degrees[a] < degrees[b]; });
    if (diff.rows() != degrees.size() || diff.cols() != degrees.size())
        throw Error(ErrorKind::Malformed, "differential has the wrong size");
    std::vector<int> sorted;
    for (auto i : perm) sorted.push_back(degrees[i]);
    std::vector<Matrix> acts;
    for (const auto& m : action) {
        if (m.rows() != degrees.size() || m.cols() != degrees.size())
            throw Error(ErrorKind::Malformed, "action matrix has the wrong size");
        acts.push_back(permute(m, perm));
    }
    return FiniteDGModule(std::move(algebra), std::move(sorted), permute(diff, perm), std::move(acts));
}

}  // namespace

void validate_dg_module(const FiniteDGModule& x) {
    const DGAlgebra& a = *x.algebra();
    const PrimeField& f = x.field();
    const std::size_t n = x.dim();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (x.diff().at(r, c) && x.degree(r) != x.degree(c) - 1)
                throw Error(ErrorKind::DegreeMismatch, "differential entry (" + std::to_string(r) + ", " +
                                                           std::to_string(c) + ") does not lower degree by one");
    for (std::size_t b = 0; b < a.dim(); ++b)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (x.action(b).at(r, c) && x.degree(r) != x.degree(c) + a.degree(b))
                    throw Error(ErrorKind::DegreeMismatch, "action of " + a.basis()[b].label + " is not homogeneous");
    if (!(x.diff() * x.diff()).is_zero()) throw Error(ErrorKind::AxiomViolation, "module differential squares to nonzero");
    if (!(x.action(a.unit()) == Matrix::identity(f, n)))
        throw Error(ErrorKind::AxiomViolation, "the unit does not act as the identity");
    for (std::size_t b = 0; b < a.dim(); ++b) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            Matrix lhs = x.action(b) * x.action(c);
            Matrix rhs(f, n, n);
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (auto v = a.mult(b, c, k)) rhs = rhs + x.action(k).scaled(v);
            if (!(lhs == rhs))
                throw Error(ErrorKind::AxiomViolation,
                            "associativity fails at (" + a.basis()[b].label + ", " + a.basis()[c].label + ")");
        }
        Matrix lhs = x.diff() * x.action(b);
        Matrix rhs = (x.action(b) * x.diff()).scaled(f.sign(a.degree(b)));
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (auto v = a.diff(k, b)) rhs = rhs + x.action(k).scaled(v);
        if (!(lhs == rhs)) throw Error(ErrorKind::AxiomViolation, "Leibniz rule fails for " + a.basis()[b].label);
    }
}

FiniteDGModule make_dg_module(AlgebraPtr algebra, std::vector<int> degrees, const Matrix& diff,
                              const std::vector<Matrix>& action) {
    if (action.size() != algebra->dim()) throw Error(ErrorKind::Malformed, "one action matrix per algebra basis element");
    FiniteDGModule x = sorted_module(std::move(algebra), degrees, diff, action);
    validate_dg_module(x);
    return x;
}

FiniteDGModule algebra_as_module(const AlgebraPtr& a) {
    std::vector<int> degrees;
    for (std::size_t i = 0; i < a->dim(); ++i) degrees.push_back(a->degree(i));
    std::vector<Matrix> actions;
    for (std::size_t b = 0; b < a->dim(); ++b) actions.push_back(a->left_multiplication(a->basis_vector(b)));
    return sorted_module(a, degrees, a->diff_matrix(), actions);
}

FiniteDGModule residue_module(const AlgebraPtr& a) {
    std::vector<Matrix> actions;
    for (std::size_t b = 0; b < a->dim(); ++b) {
        Matrix m(a->field(), 1, 1);
        if (b == a->unit()) m.at(0, 0) = 1;
        actions.push_back(m);
    }
    return FiniteDGModule(a, {0}, Matrix(a->field(), 1, 1), std::move(actions));
}

FiniteDGModule direct_sum(const FiniteDGModule& x, const FiniteDGModule& y) {
    if (x.algebra() != y.algebra()) throw Error(ErrorKind::AlgebraMismatch, "modules over different algebras");
    const std::size_t n = x.dim() + y.dim();
    std::vector<int> degrees = x.degrees();
    degrees.insert(degrees.end(), y.degrees().begin(), y.degrees().end());
    Matrix diff(x.field(), n, n);
    diff.place(0, 0, x.diff());
    diff.place(x.dim(), x.dim(), y.diff());
    std::vector<Matrix> actions;
    for (std::size_t b = 0; b < x.actions().size(); ++b) {
        Matrix m(x.field(), n, n);
        m.place(0, 0, x.action(b));
        m.place(x.dim(), x.dim(), y.action(b));
        actions.push_back(std::move(m));
    }
    return sorted_module(x.algebra(), degrees, diff, actions);
}

FiniteDGModule shift(const FiniteDGModule& x, int q) {
    std::vector<int> degrees = x.degrees();
    for (auto& d : degrees) d += q;
    const PrimeField& f = x.field();
    std::vector<Matrix> actions;
    for (std::size_t b = 0; b < x.actions().size(); ++b)
        actions.push_back(x.action(b).scaled(f.sign(static_cast<long long>(x.algebra()->degree(b)) * q)));
    return FiniteDGModule(x.algebra(), std::move(degrees), x.diff().scaled(f.sign(q)), std::move(actions));
}

FiniteDGModule sub_dg_module(const FiniteDGModule& x, const Matrix& basis) {
    const PrimeField& f = x.field();
    std::vector<int> degs;
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        std::optional<int> d;
        for (std::size_t r = 0; r < basis.rows(); ++r) {
            if (!basis.at(r, c)) continue;
            if (d && *d != x.degree(r)) throw Error(ErrorKind::Malformed, "submodule basis vector is not homogeneous");
            d = x.degree(r);
        }
        if (!d) throw Error(ErrorKind::Malformed, "zero vector in submodule basis");
        degs.push_back(*d);
    }
    std::vector<std::size_t> order(basis.cols());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degs[a] < degs[b]; });
    Matrix sorted = basis.select_cols(order);
    std::vector<int> sorted_degs;
    for (auto i : order) sorted_degs.push_back(degs[i]);
    la::Solver solver(sorted);
    auto restrict = [&](const Matrix& m) {
        Matrix image = m * sorted;
        for (std::size_t c = 0; c < image.cols(); ++c)
            if (!solver.contains(image.column(c))) throw Error(ErrorKind::Malformed, "subspace is not a DG submodule");
        return solver.solve_all(image);
    };
    std::vector<Matrix> actions;
    for (const auto& m : x.actions()) actions.push_back(restrict(m));
    (void)f;
    return FiniteDGModule(x.algebra(), std::move(sorted_degs), restrict(x.diff()), std::move(actions));
}

HomologyProfile homology_profile(const FiniteDGModule& x) { return homology_profile(x.complex()); }

namespace {

void check_entries(const DGAlgebra& a, const std::vector<LabeledDegree>& semibasis,
                   const std::vector<std::vector<Vec>>& entries) {
    const std::size_t t = semibasis.size();
    if (entries.size() != t) throw Error(ErrorKind::Malformed, "differential matrix has the wrong size");
    for (std::size_t i = 0; i < t; ++i) {
        if (entries[i].size() != t) throw Error(ErrorKind::Malformed, "differential matrix has the wrong size");
        for (std::size_t j = 0; j < t; ++j) {
            const Vec& m = entries[i][j];
            if (m.size() != a.dim()) throw Error(ErrorKind::Malformed, "entry has the wrong length");
            const int want = semibasis[j].degree - semibasis[i].degree - 1;
            for (std::size_t b = 0; b < a.dim(); ++b)
                if (m[b] && a.degree(b) != want)
                    throw Error(ErrorKind::DegreeMismatch, "entry (" + semibasis[i].label + ", " + semibasis[j].label +
                                                               ") needs degree " + std::to_string(want));
        }
    }
}

}  // namespace

SemifreeDGModule::SemifreeDGModule(Unchecked, AlgebraPtr algebra, std::vector<LabeledDegree> semibasis,
                                   std::vector<std::vector<Vec>> entries)
    : algebra_(std::move(algebra)), semibasis_(std::move(semibasis)), entries_(std::move(entries)) {}

SemifreeDGModule::SemifreeDGModule(AlgebraPtr algebra, std::vector<LabeledDegree> semibasis,
                                   std::vector<std::vector<Vec>> entries)
    : algebra_(std::move(algebra)), semibasis_(std::move(semibasis)), entries_(std::move(entries)) {
    const DGAlgebra& a = *algebra_;
    const PrimeField& f = a.field();
    check_entries(a, semibasis_, entries_);
    const std::size_t t = size();
    // coefficient of e_l in d^2(e_j): d(m_lj) + sum_i (-1)^{|m_ij|} m_ij m_li
    for (std::size_t j = 0; j < t; ++j) {
        for (std::size_t l = 0; l < t; ++l) {
            Vec acc = a.boundary(entries_[l][j]);
            for (std::size_t i = 0; i < t; ++i) {
                if (is_zero(entries_[i][j]) || is_zero(entries_[l][i])) continue;
                Vec prod = a.product(entries_[i][j], entries_[l][i]);
                const Scalar sgn = f.sign(degree(j) - degree(i) - 1);
                for (std::size_t b = 0; b < a.dim(); ++b) acc[b] = f.add(acc[b], f.mul(sgn, prod[b]));
            }
            if (!is_zero(acc))
                throw Error(ErrorKind::AxiomViolation, "d^2(" + semibasis_[j].label + ") has a nonzero coefficient on " +
                                                           semibasis_[l].label);
        }
    }
}

bool SemifreeDGModule::minimal() const {
    const std::size_t u = algebra_->unit();
    for (const auto& row : entries_)
        for (const auto& m : row)
            if (m[u]) return false;
    return true;
}

SemifreeDGModule free_semifree(const AlgebraPtr& a, const std::vector<int>& degrees) {
    std::vector<LabeledDegree> basis;
    for (std::size_t j = 0; j < degrees.size(); ++j) basis.push_back({"e" + std::to_string(j + 1), degrees[j]});
    std::vector<std::vector<Vec>> entries(degrees.size(), std::vector<Vec>(degrees.size(), Vec(a->dim(), 0)));
    return SemifreeDGModule(SemifreeDGModule::Unchecked{}, a, std::move(basis), std::move(entries));
}

SemifreeDGModule shift(const SemifreeDGModule& l, int q) {
    const PrimeField& f = l.algebra()->field();
    auto basis = l.semibasis();
    for (auto& b : basis) b.degree += q;
    auto entries = l.entries();
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < l.size(); ++j) {
            const Scalar sgn = f.sign(static_cast<long long>(q) * (l.degree(j) - l.degree(i)));
            for (auto& c : entries[i][j]) c = f.mul(c, sgn);
        }
    return SemifreeDGModule(SemifreeDGModule::Unchecked{}, l.algebra(), std::move(basis), std::move(entries));
}

SemifreeDGModule semibasis_filtration(const SemifreeDGModule& f, int p) {
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < f.size(); ++j)
        if (f.degree(j) <= p) kept.push_back(j);
    std::vector<LabeledDegree> basis;
    for (auto j : kept) basis.push_back(f.semibasis()[j]);
    std::vector<std::vector<Vec>> entries(kept.size(), std::vector<Vec>(kept.size()));
    for (std::size_t a = 0; a < kept.size(); ++a)
        for (std::size_t b = 0; b < kept.size(); ++b) entries[a][b] = f.entry(kept[a], kept[b]);
    for (auto j : kept)
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f.degree(i) > p && !is_zero(f.entry(i, j)))
                throw Error(ErrorKind::AxiomViolation, "filtration piece is not closed under the differential");
    return SemifreeDGModule(SemifreeDGModule::Unchecked{}, f.algebra(), std::move(basis), std::move(entries));
}

Expansion expand_with_index(const SemifreeDGModule& l) {
    const DGAlgebra& a = *l.algebra();
    const PrimeField& f = a.field();
    const std::size_t na = a.dim(), t = l.size();
    std::vector<std::tuple<int, std::size_t, std::size_t>> keys;
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t b = 0; b < na; ++b) keys.emplace_back(a.degree(b) + l.degree(j), j, b);
    std::sort(keys.begin(), keys.end());
    const std::size_t n = keys.size();
    Expansion ex{FiniteDGModule(l.algebra(), {}, Matrix(f, 0, 0), std::vector<Matrix>(na, Matrix(f, 0, 0))), {}, {}};
    ex.position.assign(t * na, 0);
    std::vector<int> degrees;
    for (std::size_t k = 0; k < n; ++k) {
        auto [d, j, b] = keys[k];
        ex.origin.emplace_back(b, j);
        ex.position[j * na + b] = k;
        degrees.push_back(d);
    }
    Matrix diff(f, n, n);
    std::vector<Matrix> actions(na, Matrix(f, n, n));
    for (std::size_t k = 0; k < n; ++k) {
        auto [b, j] = ex.origin[k];
        for (std::size_t c = 0; c < na; ++c)
            if (auto v = a.diff(c, b)) diff.add_to(ex.position[j * na + c], k, v);
        const Scalar sgn = f.sign(a.degree(b));
        for (std::size_t i = 0; i < t; ++i) {
            const Vec& m = l.entry(i, j);
            for (std::size_t c = 0; c < na; ++c) {
                if (!m[c]) continue;
                const Scalar coef = f.mul(sgn, m[c]);
                for (std::size_t e = 0; e < na; ++e)
                    if (auto v = a.mult(b, c, e)) diff.add_to(ex.position[i * na + e], k, f.mul(coef, v));
            }
        }
        for (std::size_t x = 0; x < na; ++x)
            for (std::size_t e = 0; e < na; ++e)
                if (auto v = a.mult(x, b, e)) actions[x].add_to(ex.position[j * na + e], k, v);
    }
    ex.module = FiniteDGModule(l.algebra(), std::move(degrees), std::move(diff), std::move(actions));
    return ex;
}

FiniteDGModule expand(const SemifreeDGModule& l) { return expand_with_index(l).module; }

HomologyProfile homology_profile(const SemifreeDGModule& l) { return homology_profile(expand(l)); }

SingleDegreeReport free_single_degree_check(const SemifreeDGModule& l) {
    if (l.size() == 0) throw Error(ErrorKind::Malformed, "empty semibasis");
    SingleDegreeReport rep;
    rep.degree = l.degree(0);
    rep.rank = l.size();
    for (std::size_t j = 0; j < l.size(); ++j)
        if (l.degree(j) != rep.degree) throw Error(ErrorKind::NotSingleDegree, "semibasis spans several degrees");
    for (const auto& row : l.entries())
        for (const auto& m : row)
            if (!is_zero(m)) rep.differential_zero = false;

    const DGAlgebra& a = *l.algebra();
    const PrimeField& f = a.field();
    const int n = rep.degree;
    Expansion ex = expand_with_index(l);
    const std::size_t dim = ex.module.dim();
    // Sigma^n A^(rank) on the same index set: (b, j) -> sigma^n b in copy j
    Matrix target_diff(f, dim, dim);
    std::vector<Matrix> target_action(a.dim(), Matrix(f, dim, dim));
    rep.isomorphism = Matrix(f, dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        auto [b, j] = ex.origin[k];
        for (std::size_t c = 0; c < a.dim(); ++c)
            if (auto v = a.diff(c, b)) target_diff.add_to(ex.position[j * a.dim() + c], k, f.mul(f.sign(n), v));
        for (std::size_t x = 0; x < a.dim(); ++x)
            for (std::size_t e = 0; e < a.dim(); ++e)
                if (auto v = a.mult(x, b, e))
                    target_action[x].add_to(ex.position[j * a.dim() + e], k,
                                            f.mul(f.sign(static_cast<long long>(a.degree(x)) * n), v));
        rep.isomorphism.at(k, k) = f.sign(static_cast<long long>(n) * a.degree(b));
    }
    bool ok = rep.isomorphism * ex.module.diff() == target_diff * rep.isomorphism;
    for (std::size_t x = 0; x < a.dim() && ok; ++x)
        ok = rep.isomorphism * ex.module.action(x) == target_action[x] * rep.isomorphism;
    rep.isomorphism_verified = ok;

    rep.profile = homology_profile(ex.module);
    HomologyAlgebra h = homology_algebra(a);
    if (!rep.profile.zero()) {
        rep.inf = *rep.profile.inf();
        rep.sup = *rep.profile.sup();
        rep.amp = *rep.profile.amp();
    }
    bool dims_ok = true;
    for (std::size_t d = 0; d < h.dims.size(); ++d)
        if (rep.profile.dim_at(n + static_cast<int>(d)) != rep.rank * h.dims[d]) dims_ok = false;
    rep.equalities_hold = dims_ok && !rep.profile.zero() && rep.inf == n + h.inf && rep.sup == n + h.sup &&
                          rep.amp == h.amplitude;
    return rep;
}

FiniteDGModule tensor_over_A(const SemifreeDGModule& l, const FiniteDGModule& y) {
    if (l.algebra() != y.algebra()) throw Error(ErrorKind::AlgebraMismatch, "modules over different algebras");
    const DGAlgebra& a = *l.algebra();
    const PrimeField& f = a.field();
    const std::size_t t = l.size(), ny = y.dim();
    std::vector<std::tuple<int, std::size_t, std::size_t>> keys;
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t v = 0; v < ny; ++v) keys.emplace_back(l.degree(j) + y.degree(v), j, v);
    std::sort(keys.begin(), keys.end());
    const std::size_t n = keys.size();
    std::vector<std::size_t> pos(t * ny);
    std::vector<int> degrees;
    for (std::size_t k = 0; k < n; ++k) {
        auto [d, j, v] = keys[k];
        pos[j * ny + v] = k;
        degrees.push_back(d);
    }
    Matrix diff(f, n, n);
    std::vector<Matrix> actions(a.dim(), Matrix(f, n, n));
    for (std::size_t j = 0; j < t; ++j) {
        for (std::size_t i = 0; i < t; ++i) {
            const Vec& m = l.entry(i, j);
            if (is_zero(m)) continue;
            const Scalar sgn = f.sign(static_cast<long long>(l.degree(j) - l.degree(i) - 1) * l.degree(i));
            Matrix act = y.act(m);
            for (std::size_t v = 0; v < ny; ++v)
                for (std::size_t w = 0; w < ny; ++w)
                    if (auto c = act.at(w, v)) diff.add_to(pos[i * ny + w], pos[j * ny + v], f.mul(sgn, c));
        }
        const Scalar sgn = f.sign(l.degree(j));
        for (std::size_t v = 0; v < ny; ++v)
            for (std::size_t w = 0; w < ny; ++w)
                if (auto c = y.diff().at(w, v)) diff.add_to(pos[j * ny + w], pos[j * ny + v], f.mul(sgn, c));
        for (std::size_t b = 0; b < a.dim(); ++b) {
            const Scalar s2 = f.sign(static_cast<long long>(a.degree(b)) * l.degree(j));
            const Matrix& act = y.action(b);
            for (std::size_t v = 0; v < ny; ++v)
                for (std::size_t w = 0; w < ny; ++w)
                    if (auto c = act.at(w, v)) actions[b].add_to(pos[j * ny + w], pos[j * ny + v], f.mul(s2, c));
        }
    }
    return FiniteDGModule(l.algebra(), std::move(degrees), std::move(diff), std::move(actions));
}

Truncation soft_truncate(const FiniteDGModule& x, int r, bool check_bound) {
    HomologyProfile prof = check_bound ? homology_profile(x) : HomologyProfile{};
    if (!prof.zero() && *prof.sup() > r)
        throw Error(ErrorKind::TruncationBelowHomology,
                    "r = " + std::to_string(r) + " < sup H = " + std::to_string(*prof.sup()));
    const PrimeField& f = x.field();
    auto [r0, r1] = x.complex().range(r);
    la::Complement comp = la::quotient_basis(r1 - r0, la::column_space(x.complex().block(r + 1)));
    const std::size_t below = r0, top = comp.positions.size(), m = below + top;
    Matrix proj(f, m, x.dim());
    Matrix section(f, x.dim(), m);
    std::vector<int> degrees;
    for (std::size_t i = 0; i < below; ++i) {
        proj.at(i, i) = 1;
        section.at(i, i) = 1;
        degrees.push_back(x.degree(i));
    }
    for (std::size_t k = 0; k < top; ++k) {
        for (std::size_t c = 0; c < r1 - r0; ++c) proj.at(below + k, r0 + c) = comp.projection.at(k, c);
        section.at(r0 + comp.positions[k], below + k) = 1;
        degrees.push_back(r);
    }
    std::vector<Matrix> actions;
    for (const auto& a : x.actions()) actions.push_back(proj * a * section);
    return {FiniteDGModule(x.algebra(), std::move(degrees), proj * x.diff() * section, std::move(actions)), proj};
}

Matrix resolution_map(const SemifreeResolution& res, const Expansion& ex, const FiniteDGModule& y) {
    Matrix phi(y.field(), y.dim(), ex.module.dim());
    for (std::size_t k = 0; k < ex.module.dim(); ++k) {
        auto [b, j] = ex.origin[k];
        phi.set_column(k, y.action(b).apply(res.images[j]));
    }
    return phi;
}

namespace {

struct Cone {
    GradedComplex complex;
    // (true, k): basis vector k of the source shifted up by one; (false, k): vector k of the target.
    std::vector<std::pair<bool, std::size_t>> origin;
};

// Cone_n = F_{n-1} + Y_n with d(f, y) = (-df, phi f + dy).
Cone build_cone(const FiniteDGModule& src, const FiniteDGModule& dst, const Matrix& phi) {
    const PrimeField& f = src.field();
    std::vector<std::tuple<int, int, std::size_t>> keys;
    for (std::size_t k = 0; k < src.dim(); ++k) keys.emplace_back(src.degree(k) + 1, 0, k);
    for (std::size_t k = 0; k < dst.dim(); ++k) keys.emplace_back(dst.degree(k), 1, k);
    std::sort(keys.begin(), keys.end());
    const std::size_t n = keys.size();
    std::vector<std::size_t> pos_src(src.dim()), pos_dst(dst.dim());
    Cone cone{GradedComplex{f, {}, Matrix(f, n, n)}, {}};
    for (std::size_t k = 0; k < n; ++k) {
        auto [d, tag, i] = keys[k];
        cone.complex.degrees.push_back(d);
        cone.origin.emplace_back(tag == 0, i);
        (tag == 0 ? pos_src : pos_dst)[i] = k;
    }
    Matrix& m = cone.complex.diff;
    for (std::size_t c = 0; c < src.dim(); ++c) {
        for (std::size_t r = 0; r < src.dim(); ++r)
            if (auto v = src.diff().at(r, c)) m.at(pos_src[r], pos_src[c]) = f.neg(v);
        for (std::size_t r = 0; r < dst.dim(); ++r)
            if (auto v = phi.at(r, c)) m.at(pos_dst[r], pos_src[c]) = v;
    }
    for (std::size_t c = 0; c < dst.dim(); ++c)
        for (std::size_t r = 0; r < dst.dim(); ++r)
            if (auto v = dst.diff().at(r, c)) m.at(pos_dst[r], pos_dst[c]) = v;
    return cone;
}

}  // namespace

SemifreeResolution minimal_semifree_resolution(const FiniteDGModule& y, int r, const ProgressFn& progress) {
    HomologyProfile prof = homology_profile(y);
    if (prof.zero()) throw Error(ErrorKind::ZeroModule, "H(Y) = 0 has nothing to resolve");
    const int inf = *prof.inf();
    if (r < inf)
        throw Error(ErrorKind::CutoffTooSmall, "r = " + std::to_string(r) + " < inf H(Y) = " + std::to_string(inf));
    const AlgebraPtr& alg = y.algebra();
    const DGAlgebra& a = *alg;
    const PrimeField& f = a.field();
    std::vector<LabeledDegree> basis;
    std::vector<std::vector<Vec>> entries;
    SemifreeResolution res{SemifreeDGModule(SemifreeDGModule::Unchecked{}, alg, {}, {}), {}, inf, inf - 1, false, {}};

    for (int d = inf; d <= r; ++d) {
        Expansion ex = expand_with_index(res.module);
        Cone cone = build_cone(ex.module, y, resolution_map(res, ex, y));
        la::Homology h = cone.complex.homology_at(d);
        auto [c0, c1] = cone.complex.range(d);
        for (std::size_t c = 0; c < h.dim; ++c) {
            const std::size_t j = basis.size();
            basis.push_back({"e" + std::to_string(j + 1), d});
            for (auto& row : entries) row.push_back(Vec(a.dim(), 0));
            entries.push_back(std::vector<Vec>(j + 1, Vec(a.dim(), 0)));
            Vec image(y.dim(), 0);
            for (std::size_t k = c0; k < c1; ++k) {
                const Scalar v = h.representatives.at(k - c0, c);
                if (!v) continue;
                auto [from_src, idx] = cone.origin[k];
                if (from_src) {
                    auto [b, i] = ex.origin[idx];
                    entries[i][j][b] = f.add(entries[i][j][b], v);
                } else {
                    image[idx] = f.sub(image[idx], v);
                }
            }
            res.images.push_back(std::move(image));
        }
        res.added_per_degree.push_back(h.dim);
        res.module = SemifreeDGModule(SemifreeDGModule::Unchecked{}, alg, basis, entries);
        res.resolved_through = d;
        Expansion next = expand_with_index(res.module);
        Cone check = build_cone(next.module, y, resolution_map(res, next, y));
        if (homology_profile(check.complex).zero()) {
            res.complete = true;
            break;
        }
        if (progress && !progress(d)) break;
    }
    return res;
}

DerivedTensor tensor_chain(const std::vector<ResolvedMember>& resolved, const FiniteDGModule& last, int last_inf,
                           std::optional<int> last_valid_through) {
    FiniteDGModule x = last;
    for (std::size_t i = resolved.size(); i-- > 0;) x = tensor_over_A(*resolved[i].module, x);
    int total_inf = last_inf;
    for (const auto& m : resolved) total_inf += m.inf;
    std::optional<int> cert;
    auto consider = [&](std::optional<int> valid, int inf) {
        if (!valid) return;
        const int c = *valid + (total_inf - inf) - 1;
        cert = cert ? std::min(*cert, c) : c;
    };
    for (const auto& m : resolved) consider(m.valid_through, m.inf);
    consider(last_valid_through, last_inf);
    HomologyProfile prof = homology_profile(x);
    if (cert) prof = prof.truncated_to(*cert);
    return {std::move(x), std::move(prof)};
}

int required_resolution_degree(std::size_t member, const std::vector<int>& infs, int cutoff) {
    int r = cutoff;
    for (std::size_t j = 0; j < infs.size(); ++j)
        if (j != member) r -= std::min(infs[j], 0);
    return std::max(infs[member], r);
}

HomologyProfile derived_tensor_profile(const FiniteDGModule& x, const FiniteDGModule& y, int cutoff) {
    HomologyProfile px = homology_profile(x), py = homology_profile(y);
    if (px.zero() || py.zero()) return HomologyProfile{};
    std::vector<int> infs{*px.inf(), *py.inf()};
    SemifreeResolution res = minimal_semifree_resolution(x, required_resolution_degree(0, infs, cutoff));
    ResolvedMember m{&res.module, res.complete ? std::nullopt : std::optional<int>(res.resolved_through), infs[0]};
    return tensor_chain({m}, y, infs[1]).profile;
}

HomologyProfile derived_tensor_profile(const SemifreeDGModule& x, const FiniteDGModule& y) {
    return homology_profile(tensor_over_A(x, y));
}

DGIndependenceReport check_strong_tor_independence_dg(const std::vector<FiniteDGModule>& modules, int cutoff) {
    if (modules.empty()) throw Error(ErrorKind::Malformed, "no modules given");
    if (modules.size() > 16) throw Error(ErrorKind::Malformed, "too many modules");
    const AlgebraPtr& alg = modules.front().algebra();
    for (const auto& m : modules)
        if (m.algebra() != alg) throw Error(ErrorKind::AlgebraMismatch, "modules over different algebras");
    DGIndependenceReport rep;
    rep.s = homology_algebra(*alg).amplitude;
    rep.certified_to = cutoff - 1;
    const std::size_t n = modules.size();
    std::vector<int> infs;
    for (std::size_t i = 0; i < n; ++i) {
        HomologyProfile p = homology_profile(modules[i]);
        if (p.zero()) throw Error(ErrorKind::ZeroModule, "module " + std::to_string(i + 1) + " has zero homology");
        infs.push_back(*p.inf());
    }
    std::vector<std::optional<SemifreeResolution>> resolutions(n);
    auto resolution = [&](std::size_t i) -> const SemifreeResolution& {
        if (!resolutions[i])
            resolutions[i] = minimal_semifree_resolution(modules[i], required_resolution_degree(i, infs, cutoff));
        return *resolutions[i];
    };
    std::map<unsigned, FiniteDGModule> cache;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) members.push_back(i);
        const std::size_t low = members.front();
        const unsigned rest = mask & ~(1u << low);
        FiniteDGModule x = rest == 0 ? modules[low] : tensor_over_A(resolution(low).module, cache.at(rest));
        // Every resolving order certifies at least through D - 1, so a
        // subset with a non-perfect member is judged there whatever the order.
        bool exact = true;
        if (members.size() > 1)
            for (auto i : members) exact = exact && resolution(i).complete;
        SubsetProfile sp;
        sp.subset = members;
        sp.profile = homology_profile(x);
        if (!exact) sp.profile = sp.profile.truncated_to(cutoff - 1);
        sp.amplitude = sp.profile.amp();
        cache.emplace(mask, std::move(x));
        const bool bad = sp.amplitude && *sp.amplitude > rep.s;
        rep.subsets.push_back(sp);
        if (bad) {
            rep.pass = false;
            rep.witness = sp;
            break;
        }
    }
    return rep;
}

}  // namespace torind
