#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torind/dgmod.hpp"
#include "torind/ringkit.hpp"

namespace torind {

// Number of worker threads, from TORIND_THREADS (default: hardware threads).
std::size_t worker_count();

// Runs fn(0..count-1) on worker_count() threads. Results must be written to
// per-index slots so that the outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

struct SyzygyChecks {
    bool exact_degreewise = false;      // dim Syz_d + dim Ktilde_d = dim L_d and pi onto
    bool image_in_augmentation = false;  // Im(alpha) inside A_+ L
    bool truncation_matches = false;     // H(Ktilde) has the profile of H(K)
    bool long_exact_sequence = false;    // ranks of H(alpha), H(pi) close the sequence
    bool all() const { return exact_degreewise && image_in_augmentation && truncation_matches && long_exact_sequence; }
};

// 0 -> Syz -> L -> Ktilde -> 0 for a DG module K and r >= sup H(K).
struct SyzygyPackage {
    int r = 0;
    int t = 0;  // sup H(K)
    HomologyProfile input_profile;
    SemifreeResolution resolution;  // semibasis through degree r + 1
    FiniteDGModule truncation;      // tau_{<= r}(F)
    SemifreeDGModule cover;         // F^(r)
    FiniteDGModule cover_expanded;
    Matrix pi;                       // dim Ktilde x dim L
    FiniteDGModule syzygy;
    Matrix alpha;  // dim L x dim Syz
    HomologyProfile truncation_profile, cover_profile, syzygy_profile;
    SyzygyChecks checks;
};

// Throws ZeroModule when H(K) = 0 and CutoffTooSmall when r < sup H(K).
SyzygyPackage syzygy_construction(const FiniteDGModule& k, int r);

struct BoundCheck {
    std::string name;
    long long value = 0;
    long long bound = 0;
    bool lower = false;  // value >= bound instead of value <= bound
    bool holds() const { return lower ? value >= bound : value <= bound; }
};

struct BoundsReport {
    bool applicable = true;  // the hypothesis amp H(K) <= s held
    bool pass = true;
    bool vacuous = false;    // the profile was zero
    int s = 0;
    HomologyProfile profile;
    std::vector<BoundCheck> checks;
};

BoundsReport verify_syzygy_bounds(const SyzygyPackage& pkg);

// Syz tensor Y against the shifted bounds of Y. Throws PreconditionUnverified
// when K, Y are not strongly Tor-independent at level D.
BoundsReport verify_syzygy_independence(const SyzygyPackage& pkg, const FiniteDGModule& k, const FiniteDGModule& y,
                                        int cutoff);

struct BatchStep {
    std::size_t replaced = 0;  // first m members replaced by syzygies
    bool pass = true;
    bool vacuous = false;  // some syzygy has zero homology
    DGIndependenceReport report;
};

struct BatchReport {
    bool pass = true;
    std::vector<SyzygyChecks> packages;
    std::vector<BatchStep> steps;
};

BatchReport batch_syzygy_independence(const std::vector<FiniteDGModule>& modules, const std::vector<int>& degrees,
                                      int cutoff);

struct AnnihilationReport {
    bool pass = true;
    std::size_t power = 0;  // n - j
    std::size_t generators = 0;
    std::size_t products_checked = 0;
    std::size_t products_skipped = 0;  // landing above the certified range
    bool syzygy_zero = false;
    HomologyProfile profile;  // of the derived tensor of the syzygies
    std::optional<std::string> witness;
};

// Throws PowerNotZero when (A_+)^n != 0.
AnnihilationReport annihilation_check(const std::vector<FiniteDGModule>& modules, const std::vector<int>& degrees,
                                      std::size_t n, int cutoff);

struct Witness {
    std::string kind;
    std::string description;
};

struct ReductionReport {
    std::string variable;
    std::string ring_before, ring_after;
    int depth_before = 0, depth_after = 0;
    int ecodepth_before = 0, ecodepth_after = 0;
    IndependenceReport independence;  // of the reduced family
    bool pass = false;
};

struct SubsetAmplitude {
    std::vector<std::size_t> subset;
    std::vector<std::size_t> koszul_dims;
    std::optional<int> amplitude;
};

struct BaseCaseReport {
    DepthInfo ring;
    bool chain_holds = false;  // amp H(K) = ecodepth = amp K
    std::vector<SubsetAmplitude> subsets;
    bool pass = false;
};

struct TheoremReport {
    std::string theorem;  // "dg" or "module"
    bool pass = false;
    std::string verdict;
    int certified_to = 0;
    std::size_t n = 0;          // family length
    std::size_t effective_n = 0;  // members counted by the bound
    int bound = 0;                // s or ecodepth(R)
    std::vector<Witness> witnesses;
    std::vector<std::string> flags;

    // module theorem
    std::optional<IndependenceReport> independence;
    std::vector<ReductionReport> reductions;
    std::optional<BaseCaseReport> base_case;
    // DG theorem
    std::optional<DGIndependenceReport> dg_independence;
    std::optional<DGIndependenceReport> truncated_independence;
    std::vector<std::size_t> semibasis_sizes;
};

TheoremReport verify_dg_theorem(const std::vector<FiniteDGModule>& modules, int cutoff);

// Depth-zero artinian ring: amp H(K tensor (tensor N_i)) <= ecodepth for every
// subset. Throws DepthNonzero / PreconditionUnverified.
BaseCaseReport base_case_pipeline(const RingPtr& ring, const std::vector<FGModule>& modules, int cutoff);

// Modules over a ring R = core[free variables] are given by their core
// modules (modules extended from the core). Dropping a free variable replaces
// each by its first syzygy over the core.
struct Reduction {
    RingPtr ring;
    std::vector<FGModule> modules;  // over the core of the reduced ring
    ReductionReport report;
};

Reduction regular_element_reduction(const RingPtr& ring, const std::vector<FGModule>& core_modules, std::size_t var,
                                    int cutoff);

// Throws ReductionUnavailable when depth(R) exceeds the number of free variables.
void check_reduction_available(const MonomialQuotientRing& ring);

TheoremReport verify_module_theorem(const RingPtr& ring, const std::vector<FGModule>& core_modules, int cutoff);

struct FoundFamily {
    std::size_t candidate = 0;
    std::vector<FGModule> modules;
    std::optional<Exponent> power_witness;  // standard monomial of degree n
};

struct SearchReport {
    std::size_t candidates = 0;
    std::size_t rejected_modules = 0;  // free, zero or too large draws
    std::size_t families_tested = 0;
    std::size_t total_found = 0;
    std::vector<FoundFamily> found;  // the first `keep`, plus any with m^n = 0
    bool power_bound_consistent = true;  // every family found has m^n != 0
    std::vector<std::string> flags;
};

SearchReport search_independent_families(const RingPtr& ring, std::size_t dim_bound, std::size_t n_target,
                                         int cutoff, std::uint64_t seed, std::size_t candidates,
                                         std::size_t keep = 8);

// Random quotient of R^g by a random submodule, or nullopt when the draw is
// zero, free or larger than dim_bound.
std::optional<FGModule> random_module(const RingPtr& ring, std::size_t dim_bound, std::uint64_t seed);

}  // namespace torind
