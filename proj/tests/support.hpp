// Random instances shared by the property suites.
#pragma once

#include <memory>
#include <random>
#include <vector>

#include "torind/dgmod.hpp"
#include "torind/ringkit.hpp"

namespace support {

using namespace torind;

inline AlgebraPtr share(DGAlgebra a) { return std::make_shared<const DGAlgebra>(std::move(a)); }

inline Scalar random_scalar(std::mt19937_64& rng, const PrimeField& f) {
    return rng() % 3 == 0 ? static_cast<Scalar>(1 + rng() % (f.p() - 1)) : 1;
}

// k plus V with V*V = 0; differentials only from even to odd degrees, so
// d^2 = 0 holds by construction.
inline DGAlgebra random_square_zero(std::mt19937_64& rng, const PrimeField& f, std::size_t dim_v) {
    std::vector<int> degrees;
    for (std::size_t i = 0; i < dim_v; ++i) degrees.push_back(1 + static_cast<int>(rng() % 4));
    Matrix diff(f, dim_v, dim_v);
    for (std::size_t j = 0; j < dim_v; ++j)
        for (std::size_t i = 0; i < dim_v; ++i)
            if (degrees[j] % 2 == 0 && degrees[i] == degrees[j] - 1 && rng() % 2) diff.at(i, j) = random_scalar(rng, f);
    return square_zero_extension(f, degrees, diff);
}

// Exterior algebras, truncated polynomial algebras, square-zero extensions
// and their tensor products, of dimension at most max_dim.
inline AlgebraPtr random_algebra(std::mt19937_64& rng, const PrimeField& f = PrimeField(), std::size_t max_dim = 8) {
    auto one = [&](std::size_t budget) -> DGAlgebra {
        switch (rng() % 4) {
            case 0:
                return exterior_algebra(f, {1 + 2 * static_cast<int>(rng() % 2)});
            case 1:
                return square_zero_extension(f, {2 * (1 + static_cast<int>(rng() % 2))}, Matrix(f, 1, 1));
            case 2:
                if (budget >= 4) return exterior_algebra(f, {1, 1 + 2 * static_cast<int>(rng() % 2)});
                [[fallthrough]];
            default:
                return random_square_zero(rng, f, 1 + rng() % std::min<std::size_t>(budget - 1, 4));
        }
    };
    DGAlgebra a = one(max_dim);
    if (a.dim() * 2 <= max_dim && rng() % 2) {
        DGAlgebra b = one(max_dim / a.dim());
        if (a.dim() * b.dim() <= max_dim) return share(tensor_algebras(a, b));
    }
    return share(std::move(a));
}

// Semifree module with generators in degrees [low, low + spread]. Each new
// generator has a random cycle of the current module as its boundary.
inline SemifreeDGModule random_semifree(std::mt19937_64& rng, const AlgebraPtr& a, std::size_t max_size, int low,
                                        int spread) {
    const PrimeField& f = a->field();
    const std::size_t na = a->dim();
    const std::size_t size = 1 + rng() % max_size;
    // climb in steps of 0, 1 or 2 so that most generators have cycles below them
    std::vector<int> degs{low};
    while (degs.size() < size) degs.push_back(std::min(low + spread, degs.back() + static_cast<int>(rng() % 3)));
    std::vector<LabeledDegree> basis;
    std::vector<std::vector<Vec>> entries;
    for (std::size_t j = 0; j < size; ++j) {
        std::vector<Vec> column(j, Vec(na, 0));
        if (j > 0 && rng() % 4 != 0) {
            SemifreeDGModule current(a, basis, entries);
            Expansion ex = expand_with_index(current);
            auto [c0, c1] = ex.module.complex().range(degs[j] - 1);
            if (c1 > c0) {
                la::Homology h = ex.module.complex().homology_at(degs[j] - 1);
                // cycles: homology representatives plus boundaries
                Matrix cycles = la::hstack(h.representatives, h.boundaries);
                Vec v(ex.module.dim(), 0);
                const std::size_t forced = cycles.cols() ? rng() % cycles.cols() : 0;
                for (std::size_t c = 0; c < cycles.cols(); ++c) {
                    if (c != forced && rng() % 3 == 0) continue;
                    const Scalar s = random_scalar(rng, f);
                    for (std::size_t r = 0; r < cycles.rows(); ++r)
                        v[c0 + r] = f.add(v[c0 + r], f.mul(s, cycles.at(r, c)));
                }
                for (std::size_t k = 0; k < v.size(); ++k) {
                    if (!v[k]) continue;
                    auto [b, i] = ex.origin[k];
                    column[i][b] = v[k];
                }
            }
        }
        for (auto& row : entries) row.push_back(Vec(na, 0));
        basis.push_back({"e" + std::to_string(j + 1), degs[j]});
        entries.push_back(std::vector<Vec>(j + 1, Vec(na, 0)));
        for (std::size_t i = 0; i < j; ++i) entries[i][j] = column[i];
    }
    return SemifreeDGModule(a, std::move(basis), std::move(entries));
}

// A finite DG module with nonzero homology.
inline FiniteDGModule random_finite_module(std::mt19937_64& rng, const AlgebraPtr& a) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        FiniteDGModule x = [&]() -> FiniteDGModule {
            switch (rng() % 4) {
                case 0:
                    return shift(residue_module(a), static_cast<int>(rng() % 3));
                case 1: {
                    FiniteDGModule e = expand(random_semifree(rng, a, 3, 0, 2));
                    HomologyProfile p = homology_profile(e);
                    if (p.zero()) return e;
                    return soft_truncate(e, *p.sup() + static_cast<int>(rng() % 2)).module;
                }
                case 2:
                    return direct_sum(residue_module(a), shift(algebra_as_module(a), 1));
                default:
                    return expand(random_semifree(rng, a, 3, static_cast<int>(rng() % 2), 2));
            }
        }();
        if (!homology_profile(x).zero()) return x;
    }
    return residue_module(a);
}

}  // namespace support
