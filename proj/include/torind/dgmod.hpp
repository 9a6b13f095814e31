#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torind/dgalgebra.hpp"

namespace torind {

// Per-degree homology dimensions, stored sparsely. The zero profile has no
// inf or sup; callers must test zero() before asking.
struct HomologyProfile {
    std::map<int, std::size_t> dims;  // nonzero entries only
    // Degrees <= certified_to are exact; nullopt means exact everywhere.
    std::optional<int> certified_to;

    bool zero() const noexcept { return dims.empty(); }
    std::optional<int> inf() const;
    std::optional<int> sup() const;
    std::optional<int> amp() const;
    std::size_t dim_at(int d) const;

    HomologyProfile shifted(int q) const;
    // Forget everything above `degree` and mark the result certified there.
    HomologyProfile truncated_to(int degree) const;
    std::string describe() const;

    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

// Finite graded complex with basis sorted by degree.
struct GradedComplex {
    PrimeField field;
    std::vector<int> degrees;  // nondecreasing
    Matrix diff;               // degree -1

    std::size_t dim() const noexcept { return degrees.size(); }
    // [begin, end) of the basis indices in degree d.
    std::pair<std::size_t, std::size_t> range(int d) const;
    // Block of the differential from degree d to degree d - 1.
    Matrix block(int d) const;
    la::Homology homology_at(int d) const;
};

HomologyProfile homology_profile(const GradedComplex& c);

// DG module over A with finite total dimension. Basis vectors are ordered by
// degree; action(b) is the matrix of the algebra basis element b.
class FiniteDGModule {
public:
    // No axiom checks; see validate_dg_module.
    FiniteDGModule(AlgebraPtr algebra, std::vector<int> degrees, Matrix diff, std::vector<Matrix> action);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const PrimeField& field() const noexcept { return complex_.field; }
    std::size_t dim() const noexcept { return complex_.dim(); }
    int degree(std::size_t i) const { return complex_.degrees[i]; }
    const std::vector<int>& degrees() const noexcept { return complex_.degrees; }
    const Matrix& diff() const noexcept { return complex_.diff; }
    const GradedComplex& complex() const noexcept { return complex_; }
    const Matrix& action(std::size_t b) const { return action_[b]; }
    const std::vector<Matrix>& actions() const noexcept { return action_; }
    // Matrix of multiplication by an arbitrary element of A.
    Matrix act(const Vec& a) const;

private:
    AlgebraPtr algebra_;
    GradedComplex complex_;
    std::vector<Matrix> action_;
};

// Sorts the basis by degree and checks homogeneity, d^2 = 0, unitality,
// associativity and the Leibniz rule on basis tuples.
FiniteDGModule make_dg_module(AlgebraPtr algebra, std::vector<int> degrees, const Matrix& diff,
                              const std::vector<Matrix>& action);
void validate_dg_module(const FiniteDGModule& x);

FiniteDGModule algebra_as_module(const AlgebraPtr& a);
// k concentrated in degree 0 with A_+ acting by zero.
FiniteDGModule residue_module(const AlgebraPtr& a);
FiniteDGModule direct_sum(const FiniteDGModule& x, const FiniteDGModule& y);
// Sigma^q X: degrees raised by q, differential times (-1)^q, action of a
// times (-1)^{|a| q}.
FiniteDGModule shift(const FiniteDGModule& x, int q);
// Sub-DG-module spanned by the columns of `basis` (which must be homogeneous
// and closed under d and the action). Throws Malformed otherwise.
FiniteDGModule sub_dg_module(const FiniteDGModule& x, const Matrix& basis);

HomologyProfile homology_profile(const FiniteDGModule& x);

// Free graded A-module on a semibasis with differential d(e_j) = sum_i m_ij e_i.
class SemifreeDGModule {
public:
    // Validates entry degrees (DegreeMismatch) and d^2 = 0 (AxiomViolation).
    SemifreeDGModule(AlgebraPtr algebra, std::vector<LabeledDegree> semibasis, std::vector<std::vector<Vec>> entries);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    std::size_t size() const noexcept { return semibasis_.size(); }
    const std::vector<LabeledDegree>& semibasis() const noexcept { return semibasis_; }
    int degree(std::size_t j) const { return semibasis_[j].degree; }
    // Coefficient m_ij in A of e_i in d(e_j).
    const Vec& entry(std::size_t i, std::size_t j) const { return entries_[i][j]; }
    const std::vector<std::vector<Vec>>& entries() const noexcept { return entries_; }
    // Every entry lies in A_+ (equivalently no degree-0 entries are nonzero).
    bool minimal() const;

    struct Unchecked {};
    SemifreeDGModule(Unchecked, AlgebraPtr algebra, std::vector<LabeledDegree> semibasis,
                     std::vector<std::vector<Vec>> entries);

private:
    AlgebraPtr algebra_;
    std::vector<LabeledDegree> semibasis_;
    std::vector<std::vector<Vec>> entries_;
};

SemifreeDGModule free_semifree(const AlgebraPtr& a, const std::vector<int>& degrees);
SemifreeDGModule shift(const SemifreeDGModule& l, int q);
// F^(p): the semibasis elements of degree <= p.
SemifreeDGModule semibasis_filtration(const SemifreeDGModule& f, int p);

// The k-basis {b e_j} of a semifree module.
struct Expansion {
    FiniteDGModule module;
    // origin[k] = (algebra basis index, semibasis index) of basis vector k.
    std::vector<std::pair<std::size_t, std::size_t>> origin;
    // position[j * dim A + b] = basis index of b e_j.
    std::vector<std::size_t> position;
};

Expansion expand_with_index(const SemifreeDGModule& l);
FiniteDGModule expand(const SemifreeDGModule& l);
HomologyProfile homology_profile(const SemifreeDGModule& l);

struct SingleDegreeReport {
    int degree = 0;
    std::size_t rank = 0;
    bool differential_zero = true;
    bool isomorphism_verified = false;  // L -> Sigma^n A^(rank) commutes with d and the action
    Matrix isomorphism;
    HomologyProfile profile;
    int inf = 0, sup = 0, amp = 0;
    bool equalities_hold = false;  // inf = n + inf H(A), sup = n + sup H(A), amp = s
};

// Throws NotSingleDegree if the semibasis spans several degrees.
SingleDegreeReport free_single_degree_check(const SemifreeDGModule& l);

// L tensor_A Y with basis e_j (x) y ordered by (degree, j, y).
FiniteDGModule tensor_over_A(const SemifreeDGModule& l, const FiniteDGModule& y);

struct Truncation {
    FiniteDGModule module;
    Matrix projection;  // dim(tau X) x dim(X), a surjective DG map
};

// tau_{<= r}(X). Throws TruncationBelowHomology when r < sup H(X) unless
// the bound check is disabled (for partially built resolutions, where only
// degrees <= r + 1 are meaningful).
Truncation soft_truncate(const FiniteDGModule& x, int r, bool check_bound = true);

struct SemifreeResolution {
    SemifreeDGModule module;
    std::vector<Vec> images;  // phi(e_j) in Y
    int inf = 0;              // inf H(Y)
    // H_i(phi) is bijective for i < resolved_through and onto in that degree.
    int resolved_through = 0;
    // The cone of phi is acyclic: phi is a quasi-isomorphism and Y is perfect.
    bool complete = false;
    // Degrees of semibasis elements added at each degree, for progress reporting.
    std::vector<std::size_t> added_per_degree;
};

// Progress callback receives the degree just finished; returning false stops
// the construction early (resolved_through then records the last degree done).
using ProgressFn = std::function<bool(int)>;

// Kills the homology of the mapping cone degree by degree from inf H(Y).
// Throws ZeroModule when H(Y) = 0 and CutoffTooSmall when r < inf H(Y).
SemifreeResolution minimal_semifree_resolution(const FiniteDGModule& y, int r, const ProgressFn& progress = {});

// Map F -> Y of a resolution on the expansion of F.
Matrix resolution_map(const SemifreeResolution& res, const Expansion& ex, const FiniteDGModule& y);

struct DerivedTensor {
    FiniteDGModule module;
    HomologyProfile profile;  // certified_to set unless exact
};

// Tensor of a chain of members: all but the last are semifree modules valid
// through the given degree (nullopt = exact); the last is finite.
struct ResolvedMember {
    const SemifreeDGModule* module = nullptr;
    std::optional<int> valid_through;
    int inf = 0;
};

DerivedTensor tensor_chain(const std::vector<ResolvedMember>& resolved, const FiniteDGModule& last, int last_inf,
                           std::optional<int> last_valid_through = std::nullopt);

// Resolving degree needed so the derived tensor of the family is exact
// through degree D - 1.
int required_resolution_degree(std::size_t member, const std::vector<int>& infs, int cutoff);

HomologyProfile derived_tensor_profile(const FiniteDGModule& x, const FiniteDGModule& y, int cutoff);
HomologyProfile derived_tensor_profile(const SemifreeDGModule& x, const FiniteDGModule& y);

struct SubsetProfile {
    std::vector<std::size_t> subset;
    HomologyProfile profile;
    std::optional<int> amplitude;  // observed in the certified range
};

struct DGIndependenceReport {
    bool pass = true;
    int s = 0;
    int certified_to = 0;  // minimum over subsets
    std::vector<SubsetProfile> subsets;
    std::optional<SubsetProfile> witness;
};

// Every nonempty subset I: amp H(derived tensor over I) <= s = amp H(A).
DGIndependenceReport check_strong_tor_independence_dg(const std::vector<FiniteDGModule>& modules, int cutoff);

}  // namespace torind
