#include "torind/theorem.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "torind/error.hpp"

namespace torind {

std::size_t worker_count() {
    if (const char* env = std::getenv("TORIND_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

std::string subset_string(const std::vector<std::size_t>& subset) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < subset.size(); ++i) os << (i ? "," : "") << subset[i] + 1;
    os << "}";
    return os.str();
}

std::string describe_witness(const TorWitness& w) {
    std::ostringstream os;
    os << "Tor_" << w.degree << "(tensor of modules " << subset_string(w.subset) << ", module " << w.against + 1
       << ") has dimension " << w.dimension;
    return os.str();
}

std::string describe_witness(const SubsetProfile& w, int s) {
    std::ostringstream os;
    os << "derived tensor over modules " << subset_string(w.subset) << " has amplitude " << *w.amplitude
       << " > s = " << s << "; homology " << w.profile.describe();
    return os.str();
}

// Rank of H_n(f): H_n(src) -> H_n(dst) for a degree-preserving map.
std::size_t induced_rank(const FiniteDGModule& src, const FiniteDGModule& dst, const Matrix& map, int n) {
    la::Homology hs = src.complex().homology_at(n);
    if (hs.dim == 0) return 0;
    la::Homology hd = dst.complex().homology_at(n);
    auto [s0, s1] = src.complex().range(n);
    auto [t0, t1] = dst.complex().range(n);
    Matrix block(map.field(), t1 - t0, s1 - s0);
    for (std::size_t r = t0; r < t1; ++r)
        for (std::size_t c = s0; c < s1; ++c) block.at(r - t0, c - s0) = map.at(r, c);
    Matrix images = block * hs.representatives;
    return la::rank(la::hstack(hd.boundaries, images)) - la::rank(hd.boundaries);
}

std::size_t dim_in_degree(const FiniteDGModule& x, int d) {
    auto [a, b] = x.complex().range(d);
    return b - a;
}

std::size_t homology_dim_at(const FiniteDGModule& x, int d) { return x.complex().homology_at(d).dim; }

}  // namespace

SyzygyPackage syzygy_construction(const FiniteDGModule& k, int r) {
    HomologyProfile prof = homology_profile(k);
    if (prof.zero()) throw Error(ErrorKind::ZeroModule, "H(K) = 0");
    const int t = *prof.sup();
    if (r < t) throw Error(ErrorKind::CutoffTooSmall, "r = " + std::to_string(r) + " < sup H(K) = " + std::to_string(t));
    const AlgebraPtr& alg = k.algebra();
    const DGAlgebra& a = *alg;
    const PrimeField& f = a.field();
    const std::size_t na = a.dim();

    SemifreeResolution res = minimal_semifree_resolution(k, r + 1);
    Expansion exf = expand_with_index(res.module);
    Truncation tr = soft_truncate(exf.module, r, false);
    SemifreeDGModule cover = semibasis_filtration(res.module, r);
    Expansion exl = expand_with_index(cover);
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < res.module.size(); ++j)
        if (res.module.degree(j) <= r) kept.push_back(j);
    Matrix incl(f, exf.module.dim(), exl.module.dim());
    for (std::size_t c = 0; c < exl.module.dim(); ++c) {
        auto [b, jl] = exl.origin[c];
        incl.at(exf.position[kept[jl] * na + b], c) = 1;
    }
    Matrix pi = tr.projection * incl;

    // kernel of pi, degree by degree so the basis is homogeneous
    std::vector<Vec> kernel_cols;
    std::vector<int> ldegs(exl.module.degrees());
    ldegs.erase(std::unique(ldegs.begin(), ldegs.end()), ldegs.end());
    for (int d : ldegs) {
        auto [c0, c1] = exl.module.complex().range(d);
        std::vector<std::size_t> cols;
        for (std::size_t c = c0; c < c1; ++c) cols.push_back(c);
        Subspace ker = la::kernel_basis(pi.select_cols(cols));
        for (std::size_t c = 0; c < ker.dim(); ++c) {
            Vec v(exl.module.dim(), 0);
            for (std::size_t i = 0; i < cols.size(); ++i) v[cols[i]] = ker.basis.at(i, c);
            kernel_cols.push_back(std::move(v));
        }
    }
    Matrix alpha = Matrix::from_columns(f, exl.module.dim(), kernel_cols);
    FiniteDGModule syz = kernel_cols.empty()
                             ? FiniteDGModule(alg, {}, Matrix(f, 0, 0), std::vector<Matrix>(na, Matrix(f, 0, 0)))
                             : sub_dg_module(exl.module, alpha);

    SyzygyPackage pkg{r,
                      t,
                      prof,
                      std::move(res),
                      tr.module,
                      cover,
                      exl.module,
                      pi,
                      syz,
                      alpha,
                      homology_profile(tr.module),
                      homology_profile(exl.module),
                      homology_profile(syz),
                      {}};

    // exactness of 0 -> Syz -> L -> Ktilde -> 0 in each degree
    bool exact = la::rank(pi) == tr.module.dim() && (pi * alpha).is_zero();
    for (int d : ldegs)
        if (dim_in_degree(syz, d) + dim_in_degree(tr.module, d) != dim_in_degree(exl.module, d)) exact = false;
    pkg.checks.exact_degreewise = exact;

    bool inside = true;
    for (std::size_t row = 0; row < alpha.rows(); ++row)
        if (exl.origin[row].first == a.unit())
            for (std::size_t c = 0; c < alpha.cols(); ++c)
                if (alpha.at(row, c)) inside = false;
    pkg.checks.image_in_augmentation = inside;

    auto same_dims = [](const HomologyProfile& x, const HomologyProfile& y) { return x.dims == y.dims; };
    pkg.checks.truncation_matches = same_dims(pkg.truncation_profile, prof);

    bool les = true;
    const int lo = ldegs.empty() ? 0 : ldegs.front() - 1;
    const int hi = ldegs.empty() ? 0 : ldegs.back() + 1;
    for (int n = lo; n <= hi && les; ++n) {
        const std::size_t an = induced_rank(syz, exl.module, alpha, n);
        const std::size_t pn = induced_rank(exl.module, tr.module, pi, n);
        const std::size_t an_prev = induced_rank(syz, exl.module, alpha, n - 1);
        const std::size_t pn_next = induced_rank(exl.module, tr.module, pi, n + 1);
        const std::size_t hl = homology_dim_at(exl.module, n);
        const std::size_t hk = homology_dim_at(tr.module, n);
        const std::size_t hs = homology_dim_at(syz, n);
        const std::size_t delta_n = homology_dim_at(syz, n - 1) - an_prev;
        const std::size_t delta_next = homology_dim_at(tr.module, n + 1) - pn_next;
        les = hl == an + pn && hk == pn + delta_n && hs == delta_next + an;
    }
    pkg.checks.long_exact_sequence = les;
    return pkg;
}

BoundsReport verify_syzygy_bounds(const SyzygyPackage& pkg) {
    BoundsReport rep;
    rep.s = homology_algebra(*pkg.syzygy.algebra()).amplitude;
    rep.applicable = pkg.input_profile.amp() && *pkg.input_profile.amp() <= rep.s;
    rep.profile = pkg.syzygy_profile;
    if (rep.profile.zero()) {
        rep.vacuous = true;
        return rep;
    }
    rep.checks.push_back({"sup H(Syz)", *rep.profile.sup(), rep.s + pkg.r, false});
    rep.checks.push_back({"inf H(Syz)", *rep.profile.inf(), pkg.r, true});
    rep.checks.push_back({"amp H(Syz)", *rep.profile.amp(), rep.s, false});
    for (const auto& c : rep.checks)
        if (!c.holds() && rep.applicable) rep.pass = false;
    return rep;
}

BoundsReport verify_syzygy_independence(const SyzygyPackage& pkg, const FiniteDGModule& k, const FiniteDGModule& y,
                                        int cutoff) {
    DGIndependenceReport pre = check_strong_tor_independence_dg({k, y}, cutoff);
    if (!pre.pass)
        throw Error(ErrorKind::PreconditionUnverified,
                    "K, Y are not strongly Tor-independent: " + describe_witness(*pre.witness, pre.s));
    BoundsReport rep;
    rep.s = pre.s;
    HomologyProfile py = homology_profile(y);
    if (pkg.syzygy_profile.zero()) {
        rep.vacuous = true;
        return rep;
    }
    rep.profile = derived_tensor_profile(pkg.syzygy, y, cutoff);
    if (rep.profile.zero()) {
        rep.vacuous = true;
        return rep;
    }
    rep.checks.push_back({"sup H(Syz (x) Y)", *rep.profile.sup(), *py.sup() + pkg.r, false});
    rep.checks.push_back({"inf H(Syz (x) Y)", *rep.profile.inf(), *py.inf() + pkg.r, true});
    rep.checks.push_back({"amp H(Syz (x) Y)", *rep.profile.amp(), rep.s, false});
    for (const auto& c : rep.checks)
        if (!c.holds()) rep.pass = false;
    return rep;
}

BatchReport batch_syzygy_independence(const std::vector<FiniteDGModule>& modules, const std::vector<int>& degrees,
                                      int cutoff) {
    if (modules.size() != degrees.size()) throw Error(ErrorKind::Malformed, "one truncation degree per module");
    DGIndependenceReport pre = check_strong_tor_independence_dg(modules, cutoff);
    if (!pre.pass)
        throw Error(ErrorKind::PreconditionUnverified,
                    "input family is not strongly Tor-independent: " + describe_witness(*pre.witness, pre.s));
    BatchReport rep;
    std::vector<FiniteDGModule> syz;
    for (std::size_t i = 0; i < modules.size(); ++i) {
        SyzygyPackage pkg = syzygy_construction(modules[i], degrees[i]);
        rep.packages.push_back(pkg.checks);
        if (!pkg.checks.all()) rep.pass = false;
        syz.push_back(pkg.syzygy);
    }
    for (std::size_t m = 1; m <= modules.size(); ++m) {
        BatchStep step;
        step.replaced = m;
        std::vector<FiniteDGModule> family(syz.begin(), syz.begin() + m);
        family.insert(family.end(), modules.begin() + m, modules.end());
        for (const auto& x : family)
            if (homology_profile(x).zero()) step.vacuous = true;
        if (!step.vacuous) {
            step.report = check_strong_tor_independence_dg(family, cutoff);
            step.pass = step.report.pass;
        }
        if (!step.pass) rep.pass = false;
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

AnnihilationReport annihilation_check(const std::vector<FiniteDGModule>& modules, const std::vector<int>& degrees,
                                      std::size_t n, int cutoff) {
    if (modules.empty()) throw Error(ErrorKind::Malformed, "no modules given");
    if (modules.size() != degrees.size()) throw Error(ErrorKind::Malformed, "one truncation degree per module");
    const AlgebraPtr& alg = modules.front().algebra();
    const DGAlgebra& a = *alg;
    if (augmentation_power(a, n).dim() != 0) {
        std::string w;
        if (auto wit = nonzero_product_witness(a, n))
            for (auto i : *wit) w += (w.empty() ? "" : " * ") + a.basis()[i].label;
        throw Error(ErrorKind::PowerNotZero, "(A_+)^" + std::to_string(n) + " != 0, witness " + w);
    }
    const std::size_t j = modules.size();
    if (j > n) throw Error(ErrorKind::Malformed, "more modules than the nilpotency index");
    DGIndependenceReport pre = check_strong_tor_independence_dg(modules, cutoff);
    if (!pre.pass)
        throw Error(ErrorKind::PreconditionUnverified,
                    "input family is not strongly Tor-independent: " + describe_witness(*pre.witness, pre.s));

    AnnihilationReport rep;
    rep.power = n - j;
    std::vector<FiniteDGModule> syz;
    std::vector<int> infs;
    for (std::size_t i = 0; i < j; ++i) {
        SyzygyPackage pkg = syzygy_construction(modules[i], degrees[i]);
        if (pkg.syzygy_profile.zero()) {
            rep.syzygy_zero = true;
            return rep;
        }
        infs.push_back(*pkg.syzygy_profile.inf());
        syz.push_back(std::move(pkg.syzygy));
    }
    std::vector<SemifreeResolution> res;
    for (std::size_t i = 0; i + 1 < j; ++i)
        res.push_back(minimal_semifree_resolution(syz[i], required_resolution_degree(i, infs, cutoff)));
    std::vector<ResolvedMember> members;
    for (std::size_t i = 0; i + 1 < j; ++i)
        members.push_back({&res[i].module, res[i].complete ? std::nullopt : std::optional<int>(res[i].resolved_through),
                           infs[i]});
    DerivedTensor x = tensor_chain(members, syz.back(), infs.back());
    rep.profile = x.profile;
    const int cert = x.profile.certified_to ? *x.profile.certified_to : INT_MAX;

    // generators of m_{H(A)}^q as products of cycle representatives
    HomologyAlgebra h = homology_algebra(a);
    std::vector<Vec> gens;
    if (rep.power == 0) {
        gens.push_back(h.representatives[h.unit_class]);
    } else {
        for (auto c : h.max_ideal) gens.push_back(h.representatives[c]);
        for (std::size_t step = 1; step < rep.power; ++step) {
            std::vector<Vec> next;
            for (const auto& g : gens)
                for (auto c : h.max_ideal) {
                    Vec p = a.product(g, h.representatives[c]);
                    if (std::any_of(p.begin(), p.end(), [](Scalar v) { return v != 0; })) next.push_back(p);
                }
            gens = std::move(next);
        }
        if (!gens.empty()) {
            Subspace span = la::column_space(Matrix::from_columns(a.field(), a.dim(), gens));
            gens.clear();
            for (std::size_t c = 0; c < span.dim(); ++c) gens.push_back(span.basis.column(c));
        }
    }
    rep.generators = gens.size();

    const FiniteDGModule& m = x.module;
    std::vector<int> ds(m.degrees());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    for (int d : ds) {
        if (d > cert) break;
        la::Homology hd = m.complex().homology_at(d);
        if (hd.dim == 0) continue;
        auto [s0, s1] = m.complex().range(d);
        for (const auto& g : gens) {
            const int e = *a.homogeneous_degree(g);
            if (d + e > cert) {
                rep.products_skipped += hd.dim;
                continue;
            }
            Matrix act = m.act(g);
            la::Homology target = m.complex().homology_at(d + e);
            auto [t0, t1] = m.complex().range(d + e);
            for (std::size_t c = 0; c < hd.dim; ++c) {
                Vec full(m.dim(), 0);
                for (std::size_t i = s0; i < s1; ++i) full[i] = hd.representatives.at(i - s0, c);
                Vec img = act.apply(full);
                Vec local(img.begin() + t0, img.begin() + t1);
                ++rep.products_checked;
                if (t1 == t0 || target.is_boundary(local)) continue;
                rep.pass = false;
                std::ostringstream os;
                os << "a product of " << rep.power << " maximal-ideal classes moves a degree-" << d
                   << " class to a nonzero class in degree " << d + e;
                rep.witness = os.str();
                return rep;
            }
        }
    }
    return rep;
}

namespace {

std::string product_string(const DGAlgebra& a, const std::vector<std::size_t>& idx) {
    std::string s;
    for (auto i : idx) s += (s.empty() ? "" : " * ") + a.basis()[i].label;
    return s;
}

SemifreeDGModule transport(const SemifreeDGModule& f, const AlgebraPtr& target, const Matrix& projection) {
    std::vector<std::vector<Vec>> entries(f.size(), std::vector<Vec>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) entries[i][j] = projection.apply(f.entry(i, j));
    return SemifreeDGModule(target, f.semibasis(), std::move(entries));
}

}  // namespace

TheoremReport verify_dg_theorem(const std::vector<FiniteDGModule>& modules, int cutoff) {
    if (modules.empty()) throw Error(ErrorKind::Malformed, "no modules given");
    const AlgebraPtr& alg = modules.front().algebra();
    const DGAlgebra& a = *alg;
    HomologyAlgebra h = homology_algebra(a);
    TheoremReport rep;
    rep.theorem = "dg";
    rep.n = rep.effective_n = modules.size();
    rep.bound = h.amplitude;
    const int s = h.amplitude;

    std::vector<int> infs;
    for (const auto& k : modules) {
        HomologyProfile p = homology_profile(k);
        if (p.zero()) throw Error(ErrorKind::ZeroModule, "a module has zero homology");
        infs.push_back(*p.inf());
    }
    std::vector<SemifreeResolution> res;
    for (std::size_t i = 0; i < modules.size(); ++i) {
        const int r = std::max(cutoff, required_resolution_degree(i, infs, cutoff));
        res.push_back(minimal_semifree_resolution(modules[i], r));
        if (res.back().complete)
            throw Error(ErrorKind::PerfectInput, "module " + std::to_string(i + 1) + " has a finite semibasis of size " +
                                                     std::to_string(res.back().module.size()));
        rep.semibasis_sizes.push_back(res.back().module.size());
        rep.flags.push_back("module " + std::to_string(i + 1) + ": resolution still growing at degree " +
                            std::to_string(res.back().resolved_through) + " (" +
                            std::to_string(res.back().module.size()) + " semibasis elements)");
    }

    DGIndependenceReport indep = check_strong_tor_independence_dg(modules, cutoff);
    if (!indep.pass)
        throw Error(ErrorKind::PreconditionUnverified,
                    "family is not strongly Tor-independent: " + describe_witness(*indep.witness, indep.s));
    rep.certified_to = indep.certified_to;
    rep.dg_independence = indep;

    const std::size_t n = modules.size();
    bool ok = true;
    if (auto w = nonzero_product_witness(a, n)) {
        rep.witnesses.push_back({"nonzero_product", product_string(a, *w) + " != 0 in A"});
    } else {
        ok = false;
        rep.witnesses.push_back({"power_zero", "(A_+)^" + std::to_string(n) + " = 0"});
    }
    if (static_cast<int>(n) > s) ok = false;

    // soft truncation of A at sup H(A) = s and the transported family
    auto truncated = std::make_shared<const DGAlgebra>(soft_truncate_algebra(a, h.sup));
    Matrix proj = truncation_projection(a, *truncated, h.sup);
    if (augmentation_power(*truncated, static_cast<std::size_t>(s) + 1).dim() != 0) {
        ok = false;
        rep.flags.push_back("truncated algebra has (A'_+)^(s+1) != 0");
    }
    if (auto w = nonzero_product_witness(*truncated, n)) {
        rep.witnesses.push_back({"nonzero_product_truncated", product_string(*truncated, *w) + " != 0 in A'"});
    } else {
        ok = false;
        rep.witnesses.push_back({"power_zero_truncated", "(A'_+)^" + std::to_string(n) + " = 0"});
    }
    std::vector<SemifreeDGModule> moved;
    for (const auto& r : res) moved.push_back(transport(r.module, truncated, proj));
    std::vector<FiniteDGModule> moved_last;
    for (const auto& m : moved) moved_last.push_back(expand(m));
    DGIndependenceReport tr;
    tr.s = s;
    tr.certified_to = cutoff - 1;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) members.push_back(i);
        std::vector<ResolvedMember> chain;
        for (std::size_t k = 0; k + 1 < members.size(); ++k)
            chain.push_back({&moved[members[k]], res[members[k]].resolved_through, infs[members[k]]});
        const std::size_t last = members.back();
        DerivedTensor x = tensor_chain(chain, moved_last[last], infs[last], res[last].resolved_through);
        SubsetProfile sp{members, x.profile, x.profile.amp()};
        if (x.profile.certified_to) tr.certified_to = std::min(tr.certified_to, *x.profile.certified_to);
        tr.subsets.push_back(sp);
        if (sp.amplitude && *sp.amplitude > s) {
            tr.pass = false;
            tr.witness = sp;
            break;
        }
    }
    if (!tr.pass) ok = false;
    rep.truncated_independence = tr;

    rep.pass = ok;
    rep.verdict = std::to_string(n) + " <= s = " + std::to_string(s);
    if (!ok) rep.verdict = "bound not confirmed: n = " + std::to_string(n) + ", s = " + std::to_string(s);
    return rep;
}

BaseCaseReport base_case_pipeline(const RingPtr& ring, const std::vector<FGModule>& modules, int cutoff) {
    BaseCaseReport rep;
    rep.ring = depth_and_ecodepth(*ring);
    if (rep.ring.depth != 0)
        throw Error(ErrorKind::DepthNonzero, "depth(R) = " + std::to_string(rep.ring.depth));
    if (!ring->artinian()) throw Error(ErrorKind::NonArtinian, "the base case needs an artinian ring");
    const int ecodepth = rep.ring.ecodepth;
    rep.chain_holds = rep.ring.koszul.amplitude() == ecodepth && ecodepth == static_cast<int>(ring->num_vars());
    rep.pass = rep.chain_holds;
    const std::size_t n = modules.size();
    if (n == 0) return rep;
    IndependenceReport indep = check_strong_tor_independence(modules, static_cast<std::size_t>(cutoff));
    if (!indep.pass)
        throw Error(ErrorKind::PreconditionUnverified, "family is not strongly Tor-independent: " +
                                                           describe_witness(*indep.witness));
    std::map<unsigned, FGModule> tensors;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        SubsetAmplitude sa;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sa.subset.push_back(i);
        const unsigned top = sa.subset.back();
        const unsigned rest = mask & ~(1u << top);
        FGModule t = rest == 0 ? modules[top] : tensor_modules(tensors.at(rest), modules[top]);
        sa.koszul_dims = koszul_homology_dims(t);
        int lo = -1, hi = -1;
        for (std::size_t i = 0; i < sa.koszul_dims.size(); ++i)
            if (sa.koszul_dims[i]) {
                if (lo < 0) lo = static_cast<int>(i);
                hi = static_cast<int>(i);
            }
        if (lo >= 0) sa.amplitude = hi - lo;
        if (sa.amplitude && *sa.amplitude > ecodepth) rep.pass = false;
        tensors.emplace(mask, std::move(t));
        rep.subsets.push_back(std::move(sa));
    }
    return rep;
}

Reduction regular_element_reduction(const RingPtr& ring, const std::vector<FGModule>& core_modules, std::size_t var,
                                    int cutoff) {
    if (var >= ring->num_vars()) throw Error(ErrorKind::Malformed, "variable index out of range");
    DepthInfo before = depth_and_ecodepth(*ring);
    if (before.depth == 0) throw Error(ErrorKind::DepthZero, "depth(R) = 0: nothing to reduce");
    RingPtr reduced = drop_variable(ring, var);
    DepthInfo after = depth_and_ecodepth(*reduced);
    Reduction out{reduced, {}, {}};
    for (const auto& m : core_modules) out.modules.push_back(syzygy_module(m).module);
    ReductionReport& rep = out.report;
    rep.variable = ring->var_names()[var];
    rep.ring_before = ring->describe();
    rep.ring_after = reduced->describe();
    rep.depth_before = before.depth;
    rep.depth_after = after.depth;
    rep.ecodepth_before = before.ecodepth;
    rep.ecodepth_after = after.ecodepth;
    if (!out.modules.empty()) rep.independence = check_strong_tor_independence(out.modules, static_cast<std::size_t>(cutoff));
    rep.independence.certified_to = static_cast<std::size_t>(cutoff);
    rep.pass = after.depth == before.depth - 1 && after.ecodepth == before.ecodepth && rep.independence.pass;
    return out;
}

void check_reduction_available(const MonomialQuotientRing& ring) {
    DepthInfo info = depth_and_ecodepth(ring);
    const std::size_t free = ring.free_variables().size();
    if (info.depth > static_cast<int>(free))
        throw Error(ErrorKind::ReductionUnavailable,
                    "depth(R) = " + std::to_string(info.depth) + " but only " + std::to_string(free) +
                        " variables avoid the ideal; a regular element outside the variables would be needed");
}

TheoremReport verify_module_theorem(const RingPtr& ring, const std::vector<FGModule>& core_modules, int cutoff) {
    check_reduction_available(*ring);
    RingSplit split = split_free_variables(ring);
    if (!split.core->artinian()) throw Error(ErrorKind::NonArtinian, "the core ring is not artinian");
    for (const auto& m : core_modules)
        if (!(*m.ring() == *split.core)) throw Error(ErrorKind::Malformed, "modules must live over the core ring");
    DepthInfo info = depth_and_ecodepth(*ring);

    TheoremReport rep;
    rep.theorem = "module";
    rep.n = core_modules.size();
    rep.bound = info.ecodepth;
    rep.certified_to = cutoff;
    for (std::size_t i = 0; i < core_modules.size(); ++i) {
        const FGModule& m = core_modules[i];
        if (m.dim() == 0) {
            rep.flags.push_back("module " + std::to_string(i + 1) + " is zero; excluded from the count");
            continue;
        }
        Resolution r(m);
        if (r.betti(1) == 0) {
            rep.flags.push_back("module " + std::to_string(i + 1) +
                                " is free (finite projective dimension); outside the intended scope, excluded from the count");
            continue;
        }
        ++rep.effective_n;
    }
    IndependenceReport indep = core_modules.empty() ? IndependenceReport{}
                                                    : check_strong_tor_independence(core_modules, cutoff);
    indep.certified_to = static_cast<std::size_t>(cutoff);
    if (!indep.pass)
        throw Error(ErrorKind::PreconditionUnverified, "family is not strongly Tor-independent: " +
                                                           describe_witness(*indep.witness));
    rep.independence = indep;

    bool ok = true;
    RingPtr current = ring;
    std::vector<FGModule> mods = core_modules;
    while (!current->free_variables().empty()) {
        const std::size_t v = current->free_variables().front();
        Reduction red = regular_element_reduction(current, mods, v, cutoff);
        if (!red.report.pass) {
            ok = false;
            rep.flags.push_back("reduction by " + red.report.variable +
                                " not confirmed at the cutoff (evidence of an insufficient cutoff)");
        }
        rep.reductions.push_back(red.report);
        current = red.ring;
        mods = std::move(red.modules);
    }
    try {
        rep.base_case = base_case_pipeline(current, mods, cutoff);
        if (!rep.base_case->pass) ok = false;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PreconditionUnverified || ok) throw;
        rep.flags.push_back("base case skipped: reduced family failed its independence check");
    }
    if (static_cast<int>(rep.effective_n) > info.ecodepth) ok = false;
    rep.pass = ok;
    rep.verdict = std::to_string(rep.effective_n) + " <= ecodepth " + std::to_string(info.ecodepth);
    if (!ok)
        rep.verdict = "bound not confirmed: n = " + std::to_string(rep.effective_n) + ", ecodepth " +
                      std::to_string(info.ecodepth);
    return rep;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::optional<FGModule> random_module(const RingPtr& ring, std::size_t dim_bound, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const PrimeField& f = ring->field();
    const std::size_t n = ring->dim();
    const std::size_t g = 1 + rng() % 2;
    FGModule free = free_module(ring, g);
    const std::size_t relations = 1 + rng() % 3;
    std::vector<Vec> rels;
    for (std::size_t q = 0; q < relations; ++q) {
        Vec v(g * n, 0);
        // sparse, often monomial relations so that small quotients like R/(x) occur
        for (std::size_t i = 0; i < g * n; ++i) {
            if (rng() % 3 != 0) continue;
            v[i] = rng() % 2 ? 1 : static_cast<Scalar>(1 + rng() % (f.p() - 1));
        }
        rels.push_back(std::move(v));
    }
    FGModule m = quotient_module(free, submodule_span(free, rels));
    if (m.dim() == 0 || m.dim() > dim_bound) return std::nullopt;
    Resolution r(m);
    if (r.betti(1) == 0) return std::nullopt;
    return m;
}

SearchReport search_independent_families(const RingPtr& ring, std::size_t dim_bound, std::size_t n_target,
                                         int cutoff, std::uint64_t seed, std::size_t candidates, std::size_t keep) {
    if (!ring->artinian()) throw Error(ErrorKind::NonArtinian, "search needs an artinian ring");
    if (n_target == 0) throw Error(ErrorKind::Malformed, "n_target must be positive");
    constexpr std::size_t kAttempts = 32;
    struct Slot {
        std::size_t rejected = 0;
        bool tested = false;
        bool found = false;
        std::vector<FGModule> modules;
    };
    std::vector<Slot> slots(candidates);
    parallel_for(candidates, [&](std::size_t c) {
        Slot& slot = slots[c];
        std::uint64_t state = splitmix64(seed ^ splitmix64(c));
        for (std::size_t i = 0; i < n_target; ++i) {
            std::optional<FGModule> m;
            for (std::size_t attempt = 0; attempt < kAttempts && !m; ++attempt) {
                state = splitmix64(state);
                m = random_module(ring, dim_bound, state);
                if (!m) ++slot.rejected;
            }
            if (!m) return;
            slot.modules.push_back(std::move(*m));
        }
        slot.tested = true;
        slot.found = check_strong_tor_independence(slot.modules, static_cast<std::size_t>(cutoff)).pass;
        if (!slot.found) slot.modules.clear();
    });
    SearchReport rep;
    rep.candidates = candidates;
    for (std::size_t c = 0; c < candidates; ++c) {
        const Slot& slot = slots[c];
        rep.rejected_modules += slot.rejected;
        if (slot.tested) ++rep.families_tested;
        if (!slot.found) continue;
        FoundFamily fam{c, slot.modules, maximal_ideal_power_witness(*ring, n_target)};
        if (!fam.power_witness) rep.power_bound_consistent = false;
        if (rep.found.size() < keep) rep.found.push_back(std::move(fam));
        else if (!fam.power_witness) rep.found.push_back(std::move(fam));
    }
    for (const auto& s : slots) rep.total_found += s.found;
    if (rep.total_found > rep.found.size())
        rep.flags.push_back(std::to_string(rep.total_found) + " families found, first " +
                            std::to_string(rep.found.size()) + " kept");
    if (n_target == 1)
        rep.flags.push_back("n_target = 1: the independence condition is vacuous, every non-free module qualifies");
    return rep;
}

}  // namespace torind
