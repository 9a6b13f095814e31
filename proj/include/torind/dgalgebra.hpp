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

struct LabeledDegree {
    std::string label;
    int degree = 0;
};

// Sparse tables as they arrive from a document. Coefficients are arbitrary
// integers and are reduced modulo p during validation.
struct RawDGAlgebra {
    std::uint32_t p = PrimeField::kDefaultPrime;
    std::vector<LabeledDegree> basis;
    std::size_t unit = 0;
    struct Product {
        std::size_t left, right;
        std::vector<std::pair<std::size_t, long long>> terms;
    };
    std::vector<Product> mult;
    struct Boundary {
        std::size_t source;
        std::vector<std::pair<std::size_t, long long>> terms;
    };
    std::vector<Boundary> diff;
};

// Finite-dimensional positively graded, graded-commutative DG algebra over
// F_p with A_0 = k * 1. Instances only exist in validated form.
class DGAlgebra {
public:
    const PrimeField& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<LabeledDegree>& basis() const noexcept { return basis_; }
    int degree(std::size_t i) const { return basis_[i].degree; }
    std::size_t unit() const noexcept { return unit_; }
    int top_degree() const noexcept { return top_degree_; }

    // Structure constant c_{ij}^k of b_i b_j.
    Scalar mult(std::size_t i, std::size_t j, std::size_t k) const { return mult_[(i * dim() + j) * dim() + k]; }
    // Coefficient of b_i in the boundary of b_j.
    Scalar diff(std::size_t i, std::size_t j) const { return diff_.at(i, j); }
    const Matrix& diff_matrix() const noexcept { return diff_; }

    Vec basis_vector(std::size_t i) const;
    Vec product(const Vec& a, const Vec& b) const;
    Vec boundary(const Vec& a) const { return diff_.apply(a); }
    // Matrix of x |-> a x on the whole algebra.
    Matrix left_multiplication(const Vec& a) const;

    // Indices of basis elements in a given degree, ascending.
    std::vector<std::size_t> indices_in_degree(int d) const;
    // Degree of a nonzero homogeneous element, nullopt for zero, throws if inhomogeneous.
    std::optional<int> homogeneous_degree(const Vec& a) const;

    friend DGAlgebra validate_dg_algebra(const RawDGAlgebra& raw);

private:
    DGAlgebra(PrimeField f) : field_(f) {}

    PrimeField field_;
    std::vector<LabeledDegree> basis_;
    std::size_t unit_ = 0;
    int top_degree_ = 0;
    std::vector<Scalar> mult_;
    Matrix diff_;
};

using AlgebraPtr = std::shared_ptr<const DGAlgebra>;

// Checks every axiom exhaustively on basis tuples. Throws AxiomViolation with
// the offending tuple, NotLocal when A_0 is not k*1, HomologyZero when 1 is a
// boundary.
DGAlgebra validate_dg_algebra(const RawDGAlgebra& raw);

// Raw tables reproducing a validated algebra.
RawDGAlgebra to_raw(const DGAlgebra& a);

// Exterior algebra on generators of the given odd degrees with zero
// differential. Basis elements are ordered by subset bitmask.
DGAlgebra exterior_algebra(PrimeField field, const std::vector<int>& odd_degrees,
                           const std::vector<std::string>& labels = {});

// k * 1 plus V with V * V = 0. `degrees` are the (positive) degrees of a basis
// of V and `diff(i, j)` is the coefficient of v_i in the boundary of v_j.
DGAlgebra square_zero_extension(PrimeField field, const std::vector<int>& degrees, const Matrix& diff);

// A tensor B over k with the Koszul sign rule. Basis pairs (i, j) are ordered
// with the index into A varying slowest.
DGAlgebra tensor_algebras(const DGAlgebra& a, const DGAlgebra& b);

// (A_+)^n as a subspace of A; n = 0 gives A.
Subspace augmentation_power(const DGAlgebra& a, std::size_t n);

// Basis indices i_1..i_n of positive-degree elements whose product is
// nonzero, or nullopt when (A_+)^n = 0.
std::optional<std::vector<std::size_t>> nonzero_product_witness(const DGAlgebra& a, std::size_t n);

struct HomologyAlgebra {
    int sup = 0;
    int inf = 0;
    int amplitude = 0;  // s
    std::vector<std::size_t> dims;   // dims[d] = dim H_d(A)
    std::vector<int> class_degree;   // degree of each homology basis class
    std::vector<Vec> representatives;  // cycles in A, one per class
    std::size_t unit_class = 0;
    // Structure constants of the induced product: product of classes i, j.
    std::vector<std::vector<Vec>> products;
    // Positive-degree classes, the maximal ideal of H(A).
    std::vector<std::size_t> max_ideal;
    std::vector<la::Homology> per_degree;
};

HomologyAlgebra homology_algebra(const DGAlgebra& a);

// tau_{<= r}(A). Throws TruncationBelowHomology when r < sup H(A).
DGAlgebra soft_truncate_algebra(const DGAlgebra& a, int r);

// Images of the basis of A in the truncation, as a dim(A') x dim(A) matrix.
Matrix truncation_projection(const DGAlgebra& a, const DGAlgebra& truncated, int r);

}  // namespace torind
