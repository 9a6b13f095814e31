#include "torind/ringkit.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "torind/error.hpp"

namespace torind {

namespace {

bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

// total degree ascending, then exponent vector descending
bool monomial_order(const Exponent& a, const Exponent& b) {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
}

std::vector<std::string> default_names(std::size_t m) {
    static const char* small[] = {"x", "y", "z", "w"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back(m <= 4 ? small[i] : "x" + std::to_string(i + 1));
    return out;
}

}  // namespace

RingPtr make_ring(PrimeField field, std::size_t num_vars, std::vector<Exponent> gens, std::vector<std::string> names) {
    auto ring = std::shared_ptr<MonomialQuotientRing>(new MonomialQuotientRing(field));
    ring->num_vars_ = num_vars;
    ring->names_ = names.empty() ? default_names(num_vars) : std::move(names);
    if (ring->names_.size() != num_vars) throw Error(ErrorKind::Malformed, "variable name count mismatch");
    for (const auto& g : gens) {
        if (g.size() != num_vars) throw Error(ErrorKind::Malformed, "generator exponent length mismatch");
        if (std::any_of(g.begin(), g.end(), [](int e) { return e < 0; }))
            throw Error(ErrorKind::Malformed, "negative exponent");
        const int d = total_degree(g);
        if (d == 0) throw Error(ErrorKind::Malformed, "the unit ideal is not allowed");
        if (d == 1) throw Error(ErrorKind::Malformed, "a variable lies in the ideal; drop it from the ring");
    }
    std::sort(gens.begin(), gens.end(), monomial_order);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (const auto& g : gens) {
        bool redundant = std::any_of(ring->gens_.begin(), ring->gens_.end(), [&](const Exponent& h) { return divides(h, g); });
        if (!redundant) ring->gens_.push_back(g);
    }

    Exponent pure(num_vars, 0);
    for (const auto& g : ring->gens_) {
        std::size_t support = 0, var = 0;
        for (std::size_t a = 0; a < num_vars; ++a)
            if (g[a] > 0) ++support, var = a;
        if (support == 1) pure[var] = g[var];
    }
    ring->artinian_ = std::all_of(pure.begin(), pure.end(), [](int e) { return e > 0; });
    if (ring->artinian_) {
        Exponent e(num_vars, 0);
        while (true) {
            if (!ring->in_ideal(e)) ring->k_basis_.push_back(e);
            std::size_t a = 0;
            while (a < num_vars && ++e[a] == pure[a]) e[a++] = 0;
            if (a == num_vars) break;
        }
        std::sort(ring->k_basis_.begin(), ring->k_basis_.end(), monomial_order);
        ring->times_var_.resize(ring->k_basis_.size() * num_vars);
        for (std::size_t i = 0; i < ring->k_basis_.size(); ++i) {
            for (std::size_t a = 0; a < num_vars; ++a) {
                Exponent next = ring->k_basis_[i];
                ++next[a];
                ring->times_var_[i * num_vars + a] = ring->index_of(next);
            }
        }
    }
    return ring;
}

std::optional<std::size_t> MonomialQuotientRing::index_of(const Exponent& e) const {
    auto it = std::lower_bound(k_basis_.begin(), k_basis_.end(), e, monomial_order);
    if (it == k_basis_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - k_basis_.begin());
}

bool MonomialQuotientRing::in_ideal(const Exponent& e) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Exponent& g) { return divides(g, e); });
}

std::vector<std::size_t> MonomialQuotientRing::free_variables() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < num_vars_; ++a)
        if (std::all_of(gens_.begin(), gens_.end(), [&](const Exponent& g) { return g[a] == 0; })) out.push_back(a);
    return out;
}

Exponent MonomialQuotientRing::generator_lcm() const {
    Exponent l(num_vars_, 0);
    for (const auto& g : gens_)
        for (std::size_t a = 0; a < num_vars_; ++a) l[a] = std::max(l[a], g[a]);
    return l;
}

std::optional<std::size_t> MonomialQuotientRing::times(std::size_t i, std::size_t j) const {
    Exponent e = k_basis_[i];
    for (std::size_t a = 0; a < num_vars_; ++a) e[a] += k_basis_[j][a];
    return index_of(e);
}

std::string MonomialQuotientRing::monomial_string(const Exponent& e) const {
    std::string s;
    for (std::size_t a = 0; a < num_vars_; ++a) {
        if (e[a] == 0) continue;
        s += names_[a];
        if (e[a] > 1) s += "^" + std::to_string(e[a]);
    }
    return s.empty() ? "1" : s;
}

std::string MonomialQuotientRing::describe() const {
    std::ostringstream os;
    os << "k[";
    for (std::size_t a = 0; a < num_vars_; ++a) os << (a ? "," : "") << names_[a];
    os << "]";
    if (!gens_.empty()) {
        os << "/(";
        for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : "") << monomial_string(gens_[i]);
        os << ")";
    }
    return os.str();
}

RingElement to_ring_element(const MonomialQuotientRing& r, const Polynomial& poly) {
    if (!r.artinian()) throw Error(ErrorKind::NonArtinian, "ring elements need an artinian ring");
    RingElement out(r.dim(), 0);
    for (const auto& [c, e] : poly.terms) {
        if (e.size() != r.num_vars()) throw Error(ErrorKind::Malformed, "monomial exponent length mismatch");
        if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
            throw Error(ErrorKind::Malformed, "negative exponent");
        if (auto i = r.index_of(e)) out[*i] = r.field().add(out[*i], r.field().from_int(c));
    }
    return out;
}

namespace {

// Image of a vector of R^rank under multiplication by the k-basis monomial j.
Vec free_monomial_shift(const MonomialQuotientRing& r, std::size_t rank, const Vec& v, std::size_t j) {
    const std::size_t n = r.dim();
    Vec out(rank * n, 0);
    for (std::size_t g = 0; g < rank; ++g)
        for (std::size_t i = 0; i < n; ++i) {
            const Scalar c = v[g * n + i];
            if (c == 0) continue;
            if (auto t = r.times(i, j)) out[g * n + *t] = r.field().add(out[g * n + *t], c);
        }
    return out;
}

Matrix free_action(const MonomialQuotientRing& r, std::size_t rank, std::size_t var) {
    const std::size_t n = r.dim();
    Matrix x(r.field(), rank * n, rank * n);
    for (std::size_t g = 0; g < rank; ++g)
        for (std::size_t i = 0; i < n; ++i)
            if (auto t = r.times_variable(i, var)) x.at(g * n + *t, g * n + i) = 1;
    return x;
}

Matrix kron_identity_left(const Matrix& x, std::size_t n) {
    // x tensor I_n
    Matrix out(x.field(), x.rows() * n, x.cols() * n);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (auto v = x.at(i, j))
                for (std::size_t k = 0; k < n; ++k) out.at(i * n + k, j * n + k) = v;
    return out;
}

Matrix kron_identity_right(std::size_t m, const Matrix& y) {
    // I_m tensor y
    Matrix out(y.field(), m * y.rows(), m * y.cols());
    for (std::size_t b = 0; b < m; ++b) out.place(b * y.rows(), b * y.cols(), y);
    return out;
}

}  // namespace

FGModule::FGModule(RingPtr ring, std::vector<Matrix> actions) : ring_(std::move(ring)), actions_(std::move(actions)) {
    if (!ring_->artinian()) throw Error(ErrorKind::NonArtinian, "module arithmetic needs an artinian ring");
    if (actions_.size() != ring_->num_vars()) throw Error(ErrorKind::Malformed, "one action matrix per variable required");
    dim_ = actions_.empty() ? 0 : actions_.front().rows();
    for (const auto& x : actions_) {
        if (x.rows() != dim_ || x.cols() != dim_) throw Error(ErrorKind::Malformed, "action matrices must be square of equal size");
        if (!(x.field() == ring_->field())) throw Error(ErrorKind::Malformed, "action matrix over the wrong field");
    }
    if (ring_->num_vars() == 0) {
        // R = k: a module is just a vector space; dimension is carried by no matrix
        throw Error(ErrorKind::Malformed, "use free_module for modules over k");
    }
    for (std::size_t a = 0; a < actions_.size(); ++a)
        for (std::size_t b = a + 1; b < actions_.size(); ++b)
            if (!(actions_[a] * actions_[b] == actions_[b] * actions_[a]))
                throw Error(ErrorKind::AxiomViolation, "actions of " + ring_->var_names()[a] + " and " +
                                                           ring_->var_names()[b] + " do not commute");
    const auto& kb = ring_->k_basis();
    monomial_actions_.reserve(kb.size());
    for (std::size_t i = 0; i < kb.size(); ++i) {
        if (i == 0) {
            monomial_actions_.push_back(Matrix::identity(field(), dim_));
            continue;
        }
        std::size_t a = 0;
        while (kb[i][a] == 0) ++a;
        Exponent prev = kb[i];
        --prev[a];
        monomial_actions_.push_back(actions_[a] * monomial_actions_[*ring_->index_of(prev)]);
    }
    for (const auto& g : ring_->generators()) {
        std::size_t a = 0;
        while (g[a] == 0) ++a;
        Exponent prev = g;
        --prev[a];
        if (!(actions_[a] * monomial_actions_[*ring_->index_of(prev)]).is_zero())
            throw Error(ErrorKind::AxiomViolation, "relation " + ring_->monomial_string(g) + " does not act as zero");
    }
}

Matrix FGModule::ring_action(const RingElement& r) const {
    Matrix out(field(), dim_, dim_);
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i]) out = out + monomial_actions_[i].scaled(r[i]);
    return out;
}

Subspace FGModule::maximal_ideal_image() const {
    Matrix all(field(), dim_, 0);
    for (const auto& x : actions_) all = la::hstack(all, x);
    return la::column_space(all);
}

FGModule free_module(const RingPtr& ring, std::size_t rank) {
    if (!ring->artinian()) throw Error(ErrorKind::NonArtinian, "free modules need an artinian ring");
    std::vector<Matrix> actions;
    for (std::size_t a = 0; a < ring->num_vars(); ++a) actions.push_back(free_action(*ring, rank, a));
    if (ring->num_vars() == 0) throw Error(ErrorKind::Malformed, "the ring k has no variables");
    return FGModule(ring, std::move(actions));
}

FGModule residue_field(const RingPtr& ring) {
    std::vector<Matrix> actions(ring->num_vars(), Matrix(ring->field(), 1, 1));
    return FGModule(ring, std::move(actions));
}

Subspace submodule_span(const FGModule& m, const std::vector<Vec>& vectors) {
    std::vector<Vec> cols;
    for (const auto& v : vectors)
        for (std::size_t i = 0; i < m.ring()->dim(); ++i) cols.push_back(m.monomial_action(i).apply(v));
    return la::column_space(Matrix::from_columns(m.field(), m.dim(), cols));
}

FGModule submodule(const FGModule& m, const Subspace& s) {
    la::Solver solver(s.basis);
    std::vector<Matrix> actions;
    for (const auto& x : m.actions()) actions.push_back(solver.solve_all(x * s.basis));
    return FGModule(m.ring(), std::move(actions));
}

FGModule quotient_module(const FGModule& m, const Subspace& s) {
    if (s.dim())
        for (const auto& x : m.actions())
            if (!la::is_subspace_of(la::column_space(x * s.basis), s)) throw Error(ErrorKind::Malformed, "not a submodule");
    la::Complement comp = la::quotient_basis(m.dim(), s);
    std::vector<Matrix> actions;
    for (const auto& x : m.actions()) actions.push_back(comp.projection * x * comp.complement.basis);
    return FGModule(m.ring(), std::move(actions));
}

FGModule direct_sum(const FGModule& a, const FGModule& b) {
    if (!(*a.ring() == *b.ring())) throw Error(ErrorKind::Malformed, "modules over different rings");
    std::vector<Matrix> actions;
    for (std::size_t v = 0; v < a.actions().size(); ++v) {
        Matrix x(a.field(), a.dim() + b.dim(), a.dim() + b.dim());
        x.place(0, 0, a.action(v));
        x.place(a.dim(), a.dim(), b.action(v));
        actions.push_back(std::move(x));
    }
    return FGModule(a.ring(), std::move(actions));
}

FGModule module_from_presentation(const RingPtr& ring, std::size_t generators,
                                  const std::vector<std::vector<RingElement>>& relations) {
    FGModule f = free_module(ring, generators);
    const std::size_t n = ring->dim();
    std::vector<Vec> cols;
    for (const auto& rel : relations) {
        if (rel.size() != generators) throw Error(ErrorKind::Malformed, "presentation column has wrong length");
        Vec v(generators * n, 0);
        for (std::size_t g = 0; g < generators; ++g) {
            if (rel[g].size() != n) throw Error(ErrorKind::Malformed, "ring element has wrong length");
            std::copy(rel[g].begin(), rel[g].end(), v.begin() + g * n);
        }
        cols.push_back(std::move(v));
    }
    return quotient_module(f, submodule_span(f, cols));
}

FGModule cyclic_module(const RingPtr& ring, const std::vector<RingElement>& ideal_gens) {
    std::vector<std::vector<RingElement>> rel;
    for (const auto& g : ideal_gens) rel.push_back({g});
    return module_from_presentation(ring, 1, rel);
}

FGModule tensor_modules(const FGModule& m, const FGModule& n) {
    if (!(*m.ring() == *n.ring())) throw Error(ErrorKind::Malformed, "modules over different rings");
    const std::size_t dm = m.dim(), dn = n.dim();
    Matrix relations(m.field(), dm * dn, 0);
    std::vector<Matrix> left;
    for (std::size_t a = 0; a < m.actions().size(); ++a) {
        Matrix l = kron_identity_left(m.action(a), dn);
        relations = la::hstack(relations, l - kron_identity_right(dm, n.action(a)));
        left.push_back(std::move(l));
    }
    Subspace rel = la::column_space(relations);
    la::Complement comp = la::quotient_basis(dm * dn, rel);
    std::vector<Matrix> actions;
    for (const auto& l : left) actions.push_back(comp.projection * l * comp.complement.basis);
    return FGModule(m.ring(), std::move(actions));
}

KoszulComplex koszul_complex(const RingPtr& ring) {
    KoszulComplex k;
    k.ring = ring;
    k.num_vars = ring->num_vars();
    const std::size_t m = k.num_vars;
    k.subsets.assign(m + 1, {});
    for (unsigned mask = 0; mask < (1u << m); ++mask) k.subsets[std::popcount(mask)].push_back(mask);
    k.terms.assign(m + 1, {});
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t s = 0; s < k.subsets[i].size(); ++s) {
            const unsigned mask = k.subsets[i][s];
            int below = 0;
            for (std::size_t a = 0; a < m; ++a) {
                if (!(mask >> a & 1)) continue;
                const unsigned target = mask & ~(1u << a);
                auto& tl = k.subsets[i - 1];
                const std::size_t t = std::lower_bound(tl.begin(), tl.end(), target) - tl.begin();
                k.terms[i].push_back({s, t, a, below % 2 ? -1 : 1});
                ++below;
            }
        }
    }
    return k;
}

namespace {

KoszulHomology finish_homology(std::vector<std::size_t> dims) {
    KoszulHomology h;
    h.dims = std::move(dims);
    int lo = -1, hi = -1;
    for (std::size_t i = 0; i < h.dims.size(); ++i)
        if (h.dims[i]) {
            if (lo < 0) lo = static_cast<int>(i);
            hi = static_cast<int>(i);
        }
    h.inf = lo;
    h.sup = hi;
    return h;
}

}  // namespace

KoszulHomology koszul_homology(const MonomialQuotientRing& ring) {
    const std::size_t m = ring.num_vars();
    if (m > 20) throw Error(ErrorKind::Malformed, "too many variables");
    const Exponent box = ring.generator_lcm();
    std::vector<std::size_t> dims(m + 1, 0);
    Exponent alpha(m, 0);
    const PrimeField& f = ring.field();
    while (true) {
        // basis of K_i in multidegree alpha: subsets S with alpha - e_S standard
        std::vector<std::vector<unsigned>> basis(m + 1);
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            Exponent beta = alpha;
            bool ok = true;
            for (std::size_t a = 0; a < m && ok; ++a)
                if (mask >> a & 1) ok = --beta[a] >= 0;
            if (ok && !ring.in_ideal(beta)) basis[std::popcount(mask)].push_back(mask);
        }
        std::vector<std::size_t> ranks(m + 2, 0);
        for (std::size_t i = 1; i <= m; ++i) {
            if (basis[i].empty() || basis[i - 1].empty()) continue;
            Matrix d(f, basis[i - 1].size(), basis[i].size());
            for (std::size_t s = 0; s < basis[i].size(); ++s) {
                const unsigned mask = basis[i][s];
                int below = 0;
                for (std::size_t a = 0; a < m; ++a) {
                    if (!(mask >> a & 1)) continue;
                    const unsigned target = mask & ~(1u << a);
                    auto it = std::lower_bound(basis[i - 1].begin(), basis[i - 1].end(), target);
                    if (it != basis[i - 1].end() && *it == target)
                        d.at(it - basis[i - 1].begin(), s) = f.sign(below);
                    ++below;
                }
            }
            ranks[i] = la::rank(d);
        }
        for (std::size_t i = 0; i <= m; ++i) dims[i] += basis[i].size() - ranks[i] - ranks[i + 1];
        std::size_t a = 0;
        while (a < m && ++alpha[a] > box[a]) alpha[a++] = 0;
        if (a == m) break;
    }
    return finish_homology(std::move(dims));
}

std::vector<std::size_t> koszul_homology_dims(const FGModule& mod) {
    KoszulComplex k = koszul_complex(mod.ring());
    const std::size_t m = k.num_vars, d = mod.dim();
    const PrimeField& f = mod.field();
    std::vector<Matrix> diffs(m + 2);
    for (std::size_t i = 0; i <= m + 1; ++i) {
        const std::size_t src = i <= m ? k.rank(i) * d : 0;
        const std::size_t dst = (i >= 1 && i - 1 <= m) ? k.rank(i - 1) * d : 0;
        diffs[i] = Matrix(f, dst, src);
    }
    for (std::size_t i = 1; i <= m; ++i)
        for (const auto& t : k.terms[i]) {
            Matrix block = mod.action(t.var);
            if (t.sign < 0) block = block.scaled(f.neg(1));
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    if (auto v = block.at(r, c)) diffs[i].add_to(t.target * d + r, t.source * d + c, v);
        }
    std::vector<std::size_t> dims(m + 1);
    for (std::size_t i = 0; i <= m; ++i) dims[i] = k.rank(i) * d - la::rank(diffs[i]) - la::rank(diffs[i + 1]);
    return dims;
}

DepthInfo depth_and_ecodepth(const MonomialQuotientRing& ring) {
    DepthInfo info;
    info.koszul = koszul_homology(ring);
    info.embedding_dim = ring.num_vars();
    info.ecodepth = info.koszul.sup;
    info.depth = static_cast<int>(ring.num_vars()) - info.koszul.sup;
    if (info.depth == 0) {
        // amp H(K) = ecodepth(R) = amp(K)
        if (info.koszul.amplitude() != info.ecodepth || info.ecodepth != static_cast<int>(ring.num_vars()))
            throw Error(ErrorKind::AxiomViolation, "Koszul amplitude chain fails for depth-zero ring");
    }
    return info;
}

Resolution::Resolution(FGModule m) : module_(std::move(m)), augmentation_(module_.field(), module_.dim(), 0) {
    current_ = module_;
}

void Resolution::extend_to(std::size_t level) {
    while (betti_.size() <= level) step();
}

std::size_t Resolution::betti(std::size_t i) {
    extend_to(i);
    return betti_[i];
}

const Matrix& Resolution::differential(std::size_t i) {
    extend_to(i);
    return diffs_.at(i - 1);
}

void Resolution::step() {
    const RingPtr& ring = module_.ring();
    const PrimeField& f = module_.field();
    const std::size_t n = ring->dim();
    const std::size_t level = betti_.size();
    const std::size_t prev_rank = level == 0 ? 0 : betti_.back() * n;
    if (!current_ || current_->dim() == 0) {
        if (!pd_) pd_ = level == 0 ? 0 : level - 1;
        betti_.push_back(0);
        if (level > 0) diffs_.push_back(Matrix(f, prev_rank, 0));
        current_.reset();
        return;
    }
    const FGModule& syz = *current_;
    la::Complement comp = la::quotient_basis(syz.dim(), syz.maximal_ideal_image());
    const std::size_t b = comp.positions.size();
    Matrix eps(f, syz.dim(), b * n);
    for (std::size_t j = 0; j < b; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            Vec col = syz.monomial_action(i).column(comp.positions[j]);
            eps.set_column(j * n + i, col);
        }
    Matrix gens = comp.complement.basis;
    if (level == 0) {
        augmentation_ = gens;
    } else {
        diffs_.push_back(*current_embedding_ * gens);
    }
    betti_.push_back(b);
    Subspace kernel = la::kernel_basis(eps);
    if (kernel.dim() == 0) {
        current_.reset();
        current_embedding_.reset();
        pd_ = level;
        return;
    }
    // the kernel is an R-submodule of the free module F_level
    std::vector<Matrix> actions;
    la::Solver solver(kernel.basis);
    for (std::size_t a = 0; a < ring->num_vars(); ++a) {
        Matrix image(f, b * n, kernel.dim());
        std::optional<std::size_t> var_index;
        Exponent ea(ring->num_vars(), 0);
        ea[a] = 1;
        var_index = ring->index_of(ea);
        for (std::size_t c = 0; c < kernel.dim(); ++c) {
            Vec v = var_index ? free_monomial_shift(*ring, b, kernel.basis.column(c), *var_index) : Vec(b * n, 0);
            image.set_column(c, v);
        }
        actions.push_back(solver.solve_all(image));
    }
    current_.emplace(ring, std::move(actions));
    current_embedding_ = kernel.basis;
}

Matrix Resolution::differential_matrix(std::size_t i) {
    const Matrix& d = differential(i);
    const RingPtr& ring = module_.ring();
    const std::size_t n = ring->dim();
    const std::size_t src = betti_[i], dst = betti_[i - 1];
    Matrix out(module_.field(), dst * n, src * n);
    for (std::size_t j = 0; j < src; ++j)
        for (std::size_t k = 0; k < n; ++k) out.set_column(j * n + k, free_monomial_shift(*ring, dst, d.column(j), k));
    return out;
}

namespace {

// delta_i : N^{beta_i} -> N^{beta_{i-1}} induced by d_i.
Matrix tensored_differential(Resolution& res, const FGModule& nmod, std::size_t i) {
    const PrimeField& f = nmod.field();
    const std::size_t dn = nmod.dim();
    if (i == 0) return Matrix(f, 0, res.betti(0) * dn);
    const Matrix& d = res.differential(i);
    const std::size_t n = nmod.ring()->dim();
    const std::size_t src = res.betti(i), dst = res.betti(i - 1);
    Matrix out(f, dst * dn, src * dn);
    for (std::size_t j = 0; j < src; ++j) {
        const Vec col = d.column(j);
        for (std::size_t l = 0; l < dst; ++l) {
            RingElement r(col.begin() + l * n, col.begin() + (l + 1) * n);
            if (std::all_of(r.begin(), r.end(), [](Scalar x) { return x == 0; })) continue;
            out.place(l * dn, j * dn, nmod.ring_action(r));
        }
    }
    return out;
}

}  // namespace

std::vector<std::size_t> tor_via_resolution(Resolution& res, const FGModule& nmod, std::size_t cutoff) {
    if (!(*res.module().ring() == *nmod.ring())) throw Error(ErrorKind::Malformed, "modules over different rings");
    res.extend_to(cutoff + 1);
    std::vector<std::size_t> ranks(cutoff + 2);
    for (std::size_t i = 0; i <= cutoff + 1; ++i) ranks[i] = la::rank(tensored_differential(res, nmod, i));
    std::vector<std::size_t> dims(cutoff + 1);
    for (std::size_t i = 0; i <= cutoff; ++i) dims[i] = res.betti(i) * nmod.dim() - ranks[i] - ranks[i + 1];
    return dims;
}

std::optional<std::pair<std::size_t, std::size_t>> first_nonvanishing_tor(Resolution& res, const FGModule& nmod,
                                                                         std::size_t from, std::size_t cutoff) {
    if (from > cutoff) return std::nullopt;
    std::size_t rank_here = la::rank(tensored_differential(res, nmod, from));
    for (std::size_t i = from; i <= cutoff; ++i) {
        if (res.projective_dimension() && i > *res.projective_dimension()) return std::nullopt;
        const std::size_t rank_above = la::rank(tensored_differential(res, nmod, i + 1));
        const std::size_t dim = res.betti(i) * nmod.dim() - rank_here - rank_above;
        if (dim) return std::make_pair(i, dim);
        rank_here = rank_above;
    }
    return std::nullopt;
}

std::vector<std::size_t> tor_dims(const FGModule& m, const FGModule& n, std::size_t cutoff) {
    Resolution rm(m), rn(n);
    auto left = tor_via_resolution(rm, n, cutoff);
    auto right = tor_via_resolution(rn, m, cutoff);
    if (left != right) throw Error(ErrorKind::BalanceMismatch, "Tor computed from the two sides disagrees");
    return left;
}

ResolutionData minimal_free_resolution(const FGModule& m, std::size_t cutoff) {
    Resolution res(m);
    res.extend_to(cutoff);
    ResolutionData out;
    out.table.betti.assign(res.betti_numbers().begin(), res.betti_numbers().begin() + cutoff + 1);
    out.table.certified_to = cutoff;
    out.table.projective_dimension = res.projective_dimension();
    const std::size_t n = m.ring()->dim();
    for (std::size_t i = 1; i <= cutoff; ++i) {
        const Matrix& d = res.differential(i);
        for (std::size_t j = 0; j < d.cols(); ++j)
            for (std::size_t l = 0; l < d.rows() / std::max<std::size_t>(n, 1); ++l)
                if (d.at(l * n, j) != 0) out.minimal = false;  // constant term of entry (l, j)
        out.differentials.push_back(d);
    }
    return out;
}

SyzygyModule syzygy_module(const FGModule& m) {
    Resolution res(m);
    res.extend_to(1);
    const std::size_t b = res.betti(0);
    const std::size_t n = m.ring()->dim();
    // kernel of F_0 -> M
    Matrix eps(m.field(), m.dim(), b * n);
    for (std::size_t j = 0; j < b; ++j)
        for (std::size_t i = 0; i < n; ++i) eps.set_column(j * n + i, m.monomial_action(i).apply(res.augmentation().column(j)));
    Subspace kernel = la::kernel_basis(eps);
    FGModule f0 = free_module(m.ring(), b);
    if (kernel.dim() == 0) {
        std::vector<Matrix> zero(m.ring()->num_vars(), Matrix(m.field(), 0, 0));
        return {FGModule(m.ring(), std::move(zero)), b, kernel.basis};
    }
    return {submodule(f0, kernel), b, kernel.basis};
}

IndependenceReport check_strong_tor_independence(const std::vector<FGModule>& modules, std::size_t cutoff) {
    IndependenceReport report;
    report.certified_to = cutoff;
    const std::size_t n = modules.size();
    if (n > 16) throw Error(ErrorKind::Malformed, "too many modules");
    for (std::size_t i = 1; i < n; ++i)
        if (!(*modules[i].ring() == *modules[0].ring())) throw Error(ErrorKind::Malformed, "modules over different rings");
    std::map<unsigned, FGModule> tensors;
    std::map<unsigned, Resolution> resolutions;
    auto tensor_of = [&](auto&& self, unsigned mask) -> const FGModule& {
        if (auto it = tensors.find(mask); it != tensors.end()) return it->second;
        const unsigned top = 31 - std::countl_zero(mask);
        const unsigned rest = mask & ~(1u << top);
        FGModule t = rest == 0 ? modules[top] : tensor_modules(self(self, rest), modules[top]);
        return tensors.emplace(mask, std::move(t)).first->second;
    };
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        for (std::size_t j = 0; j < n; ++j) {
            if (mask >> j & 1) continue;
            auto it = resolutions.find(mask);
            if (it == resolutions.end()) it = resolutions.emplace(mask, Resolution(tensor_of(tensor_of, mask))).first;
            ++report.conditions_checked;
            if (auto hit = first_nonvanishing_tor(it->second, modules[j], 1, cutoff)) {
                TorWitness w;
                for (std::size_t a = 0; a < n; ++a)
                    if (mask >> a & 1) w.subset.push_back(a);
                w.against = j;
                w.degree = hit->first;
                w.dimension = hit->second;
                report.pass = false;
                report.witness = w;
                return report;
            }
        }
    }
    return report;
}

std::optional<Exponent> maximal_ideal_power_witness(const MonomialQuotientRing& ring, std::size_t n) {
    const std::size_t m = ring.num_vars();
    if (ring.artinian()) {
        for (const auto& e : ring.k_basis())
            if (static_cast<std::size_t>(total_degree(e)) == n) return e;
        return std::nullopt;
    }
    // enumerate exponent vectors of total degree n in descending order
    Exponent e(m, 0);
    auto search = [&](auto&& self, std::size_t var, int left) -> bool {
        if (var + 1 == m) {
            e[var] = left;
            return !ring.in_ideal(e);
        }
        for (int k = left; k >= 0; --k) {
            e[var] = k;
            if (self(self, var + 1, left - k)) return true;
        }
        return false;
    };
    if (m == 0) return n == 0 ? std::optional<Exponent>(Exponent{}) : std::nullopt;
    if (search(search, 0, static_cast<int>(n))) return e;
    return std::nullopt;
}

RingSplit split_free_variables(const RingPtr& ring) {
    RingSplit s;
    s.free_vars = ring->free_variables();
    std::vector<std::string> names;
    for (std::size_t a = 0; a < ring->num_vars(); ++a)
        if (!std::binary_search(s.free_vars.begin(), s.free_vars.end(), a)) {
            s.core_vars.push_back(a);
            names.push_back(ring->var_names()[a]);
        }
    std::vector<Exponent> gens;
    for (const auto& g : ring->generators()) {
        Exponent e;
        for (auto a : s.core_vars) e.push_back(g[a]);
        gens.push_back(std::move(e));
    }
    s.core = make_ring(ring->field(), s.core_vars.size(), std::move(gens), std::move(names));
    return s;
}

RingPtr drop_variable(const RingPtr& ring, std::size_t v) {
    if (v >= ring->num_vars()) throw Error(ErrorKind::Malformed, "variable index out of range");
    auto fv = ring->free_variables();
    if (!std::binary_search(fv.begin(), fv.end(), v))
        throw Error(ErrorKind::NotRegularVariable, ring->var_names()[v] + " occurs in a generator of the ideal");
    std::vector<Exponent> gens;
    for (const auto& g : ring->generators()) {
        Exponent e = g;
        e.erase(e.begin() + v);
        gens.push_back(std::move(e));
    }
    std::vector<std::string> names = ring->var_names();
    names.erase(names.begin() + v);
    return make_ring(ring->field(), ring->num_vars() - 1, std::move(gens), std::move(names));
}

}  // namespace torind
