#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torind/exactla.hpp"

namespace torind {

using la::Matrix;
using la::PrimeField;
using la::Scalar;
using la::Subspace;
using la::Vec;

using Exponent = std::vector<int>;

// R = k[x_1..x_m] / I with I generated by monomials.
class MonomialQuotientRing {
public:
    const PrimeField& field() const noexcept { return field_; }
    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::vector<Exponent>& generators() const noexcept { return gens_; }
    const std::vector<std::string>& var_names() const noexcept { return names_; }
    bool artinian() const noexcept { return artinian_; }

    // Standard monomials ordered by total degree, then by descending exponent
    // vector (so x comes before y). Empty unless artinian.
    const std::vector<Exponent>& k_basis() const noexcept { return k_basis_; }
    std::size_t dim() const noexcept { return k_basis_.size(); }
    std::optional<std::size_t> index_of(const Exponent& e) const;

    bool in_ideal(const Exponent& e) const;
    // Variables that appear in no generator.
    std::vector<std::size_t> free_variables() const;
    // Exponent vector of lcm of all generators.
    Exponent generator_lcm() const;

    // Index of x_var * b_i in the k-basis, or nullopt when the product is 0.
    std::optional<std::size_t> times_variable(std::size_t i, std::size_t var) const {
        return times_var_[i * num_vars_ + var];
    }
    std::optional<std::size_t> times(std::size_t i, std::size_t j) const;

    std::string monomial_string(const Exponent& e) const;
    std::string describe() const;

    friend std::shared_ptr<const MonomialQuotientRing> make_ring(PrimeField, std::size_t, std::vector<Exponent>,
                                                                 std::vector<std::string>);

    friend bool operator==(const MonomialQuotientRing& a, const MonomialQuotientRing& b) {
        return a.field_ == b.field_ && a.num_vars_ == b.num_vars_ && a.gens_ == b.gens_;
    }

private:
    explicit MonomialQuotientRing(PrimeField f) : field_(f) {}

    PrimeField field_;
    std::size_t num_vars_ = 0;
    std::vector<Exponent> gens_;
    std::vector<std::string> names_;
    bool artinian_ = false;
    std::vector<Exponent> k_basis_;
    std::vector<std::optional<std::size_t>> times_var_;
};

using RingPtr = std::shared_ptr<const MonomialQuotientRing>;

// Validates and minimalizes the generators. Degree-one generators (a variable
// lying in I) and the unit ideal are rejected as malformed.
RingPtr make_ring(PrimeField field, std::size_t num_vars, std::vector<Exponent> gens,
                  std::vector<std::string> names = {});

// Element of an artinian R as coordinates over k_basis().
using RingElement = Vec;

struct Polynomial {
    std::vector<std::pair<long long, Exponent>> terms;
};

RingElement to_ring_element(const MonomialQuotientRing& r, const Polynomial& poly);

// Finitely generated module over an artinian R, stored as a finite-dimensional
// k-space with commuting action matrices X_1..X_m.
class FGModule {
public:
    // Throws NonArtinian for a non-artinian ring and AxiomViolation when the
    // actions do not commute or do not satisfy the monomial relations.
    FGModule(RingPtr ring, std::vector<Matrix> actions);

    const RingPtr& ring() const noexcept { return ring_; }
    const PrimeField& field() const noexcept { return ring_->field(); }
    std::size_t dim() const noexcept { return dim_; }
    const Matrix& action(std::size_t var) const { return actions_[var]; }
    const std::vector<Matrix>& actions() const noexcept { return actions_; }
    // X^beta for the k-basis monomial with index i.
    const Matrix& monomial_action(std::size_t i) const { return monomial_actions_[i]; }
    Matrix ring_action(const RingElement& r) const;

    // m * M as a subspace.
    Subspace maximal_ideal_image() const;

private:
    RingPtr ring_;
    std::size_t dim_ = 0;
    std::vector<Matrix> actions_;
    std::vector<Matrix> monomial_actions_;
};

FGModule free_module(const RingPtr& ring, std::size_t rank);
FGModule residue_field(const RingPtr& ring);
// Smallest submodule containing the given vectors.
Subspace submodule_span(const FGModule& m, const std::vector<Vec>& vectors);
FGModule submodule(const FGModule& m, const Subspace& s);
FGModule quotient_module(const FGModule& m, const Subspace& s);
FGModule direct_sum(const FGModule& a, const FGModule& b);
// R^g modulo the submodule generated by the given columns (each a vector of g ring elements).
FGModule module_from_presentation(const RingPtr& ring, std::size_t generators,
                                  const std::vector<std::vector<RingElement>>& relations);
// R / (elements)
FGModule cyclic_module(const RingPtr& ring, const std::vector<RingElement>& ideal_gens);

FGModule tensor_modules(const FGModule& m, const FGModule& n);

struct KoszulTerm {
    std::size_t source;  // subset index in degree i
    std::size_t target;  // subset index in degree i - 1
    std::size_t var;
    int sign;
};

struct KoszulComplex {
    RingPtr ring;
    std::size_t num_vars = 0;
    // subsets[i] lists the bitmasks of i-element subsets, ascending.
    std::vector<std::vector<unsigned>> subsets;
    // terms[i] describes the differential K_i -> K_{i-1}.
    std::vector<std::vector<KoszulTerm>> terms;

    std::size_t rank(std::size_t i) const { return subsets[i].size(); }
    int amplitude() const { return static_cast<int>(num_vars); }
};

KoszulComplex koszul_complex(const RingPtr& ring);

struct KoszulHomology {
    std::vector<std::size_t> dims;  // dims[i] = dim_k H_i(K)
    int sup = 0;
    int inf = 0;
    int amplitude() const { return sup - inf; }
};

// Computed on multidegree strands inside the box below the lcm of the
// generators, which carries all of Tor^{k[x]}(R, k). Works for any ring.
KoszulHomology koszul_homology(const MonomialQuotientRing& ring);
// H(K tensor_R M) computed directly for a finite-length module.
std::vector<std::size_t> koszul_homology_dims(const FGModule& m);

struct DepthInfo {
    int depth = 0;
    int ecodepth = 0;
    std::size_t embedding_dim = 0;
    KoszulHomology koszul;
};

DepthInfo depth_and_ecodepth(const MonomialQuotientRing& ring);

// Minimal free resolution F_0 <- F_1 <- ... built lazily. Generators of each
// syzygy are chosen as the pivot complement of m * Syz.
class Resolution {
public:
    explicit Resolution(FGModule m);

    const FGModule& module() const noexcept { return module_; }
    // Ensures F_0..F_level exist.
    void extend_to(std::size_t level);
    std::size_t built() const noexcept { return betti_.size(); }
    std::size_t betti(std::size_t i);
    const std::vector<std::size_t>& betti_numbers() const noexcept { return betti_; }
    // Differential F_i -> F_{i-1} (i >= 1): column j holds the image of the
    // j-th generator of F_i in k-coordinates of F_{i-1} (generator-major).
    const Matrix& differential(std::size_t i);
    // Images of the generators of F_0 in M.
    const Matrix& augmentation() const noexcept { return augmentation_; }
    // True once a syzygy vanished; the resolution is then finite.
    std::optional<std::size_t> projective_dimension() const noexcept { return pd_; }
    // Full k-linear matrix of F_i -> F_{i-1}.
    Matrix differential_matrix(std::size_t i);

private:
    void step();

    FGModule module_;
    std::vector<std::size_t> betti_;
    std::vector<Matrix> diffs_;  // diffs_[i - 1] = d_i
    Matrix augmentation_;
    std::optional<FGModule> current_;   // syzygy to be covered next
    std::optional<Matrix> current_embedding_;  // into F_{built-1}
    std::optional<std::size_t> pd_;
};

struct BettiTable {
    std::vector<std::size_t> betti;  // beta_0..beta_D
    std::size_t certified_to = 0;
    std::optional<std::size_t> projective_dimension;
};

struct ResolutionData {
    BettiTable table;
    std::vector<Matrix> differentials;  // d_1..d_D
    bool minimal = true;                // every entry of every d_i lies in m
};

ResolutionData minimal_free_resolution(const FGModule& m, std::size_t cutoff);

// Homology of F(M) tensor N in degrees 0..D given a resolution of M.
std::vector<std::size_t> tor_via_resolution(Resolution& res, const FGModule& n, std::size_t cutoff);
// First i in [from, D] with Tor_i(M, N) != 0, computed incrementally.
std::optional<std::pair<std::size_t, std::size_t>> first_nonvanishing_tor(Resolution& res, const FGModule& n,
                                                                         std::size_t from, std::size_t cutoff);
// dim Tor_i^R(M, N), 0 <= i <= D. Both arguments are resolved and the two
// answers compared; a disagreement throws BalanceMismatch.
std::vector<std::size_t> tor_dims(const FGModule& m, const FGModule& n, std::size_t cutoff);

struct SyzygyModule {
    FGModule module;
    std::size_t free_rank = 0;
    Matrix embedding;  // dim F_0 x dim syzygy
};

SyzygyModule syzygy_module(const FGModule& m);

struct TorWitness {
    std::vector<std::size_t> subset;  // 0-based module indices tensored together
    std::size_t against = 0;
    std::size_t degree = 0;
    std::size_t dimension = 0;
};

struct IndependenceReport {
    bool pass = true;
    std::size_t certified_to = 0;
    std::size_t conditions_checked = 0;
    std::optional<TorWitness> witness;
};

IndependenceReport check_strong_tor_independence(const std::vector<FGModule>& modules, std::size_t cutoff);

// Power m^n of the maximal ideal: a standard monomial of total degree n, or
// nullopt when m^n = 0.
std::optional<Exponent> maximal_ideal_power_witness(const MonomialQuotientRing& ring, std::size_t n);

// R = core[free variables] where the core ring keeps only variables that
// occur in some generator.
struct RingSplit {
    RingPtr core;
    std::vector<std::size_t> core_vars;  // positions in R of the core variables
    std::vector<std::size_t> free_vars;
};

RingSplit split_free_variables(const RingPtr& ring);

// Ring obtained by deleting variable v (which must be free).
RingPtr drop_variable(const RingPtr& ring, std::size_t v);

}  // namespace torind
