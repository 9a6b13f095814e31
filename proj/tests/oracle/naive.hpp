// Brute-force reference computations used to freeze expected values. Nothing
// here calls the library's linear algebra, resolution or Koszul code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "torind/dgmod.hpp"
#include "torind/ringkit.hpp"

namespace oracle {

using i64 = long long;

struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<i64> a;
    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    i64& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    i64 at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

inline i64 md(i64 v, i64 p) { return ((v % p) + p) % p; }

inline i64 inv(i64 a, i64 p) {
    i64 r = 1, e = p - 2;
    a = md(a, p);
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline std::size_t rank(Mat m, i64 p) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && md(m.at(piv, c), p) == 0) ++piv;
        if (piv == m.rows) continue;
        for (std::size_t k = 0; k < m.cols; ++k) std::swap(m.at(r, k), m.at(piv, k));
        const i64 iv = inv(m.at(r, c), p);
        for (std::size_t k = 0; k < m.cols; ++k) m.at(r, k) = md(m.at(r, k) * iv, p);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            const i64 f = md(m.at(i, c), p);
            if (!f) continue;
            for (std::size_t k = 0; k < m.cols; ++k) m.at(i, k) = md(m.at(i, k) - f * m.at(r, k), p);
        }
        ++r;
    }
    return r;
}

inline Mat mul(const Mat& x, const Mat& y, i64 p) {
    Mat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const i64 v = x.at(i, k);
            if (!v) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) = md(z.at(i, j) + v * y.at(k, j), p);
        }
    return z;
}

inline bool is_zero(const Mat& m, i64 p) {
    return std::all_of(m.a.begin(), m.a.end(), [p](i64 v) { return md(v, p) == 0; });
}

// Homology at the middle of  C_{i+1} --in--> C_i --out--> C_{i-1}.
inline std::size_t homology(std::size_t dim, const Mat& out, const Mat& in, i64 p) {
    const std::size_t ro = out.rows && out.cols ? rank(out, p) : 0;
    const std::size_t ri = in.rows && in.cols ? rank(in, p) : 0;
    return dim - ro - ri;
}

inline Mat from_lib(const torind::la::Matrix& m) {
    Mat out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m.at(r, c);
    return out;
}

// ---------------------------------------------------------------- rings

using Mono = std::vector<int>;

// k[x_1..x_m]/(monomials), artinian, with its own enumeration of the
// standard monomials (lexicographic inside the box of pure powers).
struct Ring {
    i64 p = 32003;
    std::size_t m = 0;
    std::vector<Mono> gens;
    std::vector<Mono> basis;
    std::map<Mono, std::size_t> index;

    bool in_ideal(const Mono& e) const {
        for (const auto& g : gens) {
            bool div = true;
            for (std::size_t i = 0; i < m; ++i) div = div && e[i] >= g[i];
            if (div) return true;
        }
        return false;
    }
};

inline Ring make_ring(std::size_t m, std::vector<Mono> gens, i64 p = 32003) {
    Ring r;
    r.p = p;
    r.m = m;
    r.gens = std::move(gens);
    Mono bound(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        int b = -1;
        for (const auto& g : r.gens) {
            bool pure = g[i] > 0;
            for (std::size_t j = 0; j < m; ++j) pure = pure && (j == i || g[j] == 0);
            if (pure) b = b < 0 ? g[i] : std::min(b, g[i]);
        }
        if (b < 0) throw std::runtime_error("oracle ring must be artinian");
        bound[i] = b;
    }
    Mono e(m, 0);
    while (true) {
        if (!r.in_ideal(e)) {
            r.index[e] = r.basis.size();
            r.basis.push_back(e);
        }
        std::size_t i = 0;
        while (i < m && ++e[i] >= bound[i]) e[i++] = 0;
        if (i == m) break;
    }
    return r;
}

// A module as commuting action matrices of the variables.
struct Module {
    std::size_t dim = 0;
    std::vector<Mat> act;
};

inline Module from_lib(const torind::FGModule& m) {
    Module out;
    out.dim = m.dim();
    for (const auto& a : m.actions()) out.act.push_back(from_lib(a));
    return out;
}

inline Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

inline Mat monomial_action(const Module& mod, const Mono& e, i64 p) {
    Mat out = identity(mod.dim);
    for (std::size_t v = 0; v < e.size(); ++v)
        for (int k = 0; k < e[v]; ++k) out = mul(mod.act[v], out, p);
    return out;
}

// The regular representation.
inline Module regular(const Ring& r) {
    Module out;
    out.dim = r.basis.size();
    for (std::size_t v = 0; v < r.m; ++v) {
        Mat a(out.dim, out.dim);
        for (std::size_t j = 0; j < out.dim; ++j) {
            Mono e = r.basis[j];
            ++e[v];
            if (!r.in_ideal(e)) a.at(r.index.at(e), j) = 1;
        }
        out.act.push_back(a);
    }
    return out;
}

// Polynomials as coefficient maps over monomials.
using Poly = std::vector<std::pair<i64, Mono>>;

inline Mat poly_action(const Module& mod, const Poly& f, i64 p) {
    Mat out(mod.dim, mod.dim);
    for (const auto& [c, e] : f) {
        Mat t = monomial_action(mod, e, p);
        for (std::size_t k = 0; k < t.a.size(); ++k) out.a[k] = md(out.a[k] + c * t.a[k], p);
    }
    return out;
}

// Complex of free modules R^{r_i} with matrices of polynomials;
// d[i][row][col] maps R^{ranks[i]} -> R^{ranks[i-1]} (d[0] unused).
struct FreeComplex {
    std::vector<std::size_t> ranks;
    std::vector<std::vector<std::vector<Poly>>> d;
};

inline Mat tensor_block(const FreeComplex& f, std::size_t i, const Module& n, i64 p) {
    const std::size_t rows = f.ranks[i - 1], cols = f.ranks[i];
    Mat out(rows * n.dim, cols * n.dim);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            Mat blk = poly_action(n, f.d[i][r][c], p);
            for (std::size_t a = 0; a < n.dim; ++a)
                for (std::size_t b = 0; b < n.dim; ++b) out.at(r * n.dim + a, c * n.dim + b) = blk.at(a, b);
        }
    return out;
}

// dims of H_i(F tensor N) for 0 <= i < ranks.size() - 1.
inline std::vector<std::size_t> complex_homology(const FreeComplex& f, const Module& n, i64 p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < f.ranks.size(); ++i) {
        Mat outgoing = i == 0 ? Mat(0, f.ranks[0] * n.dim) : tensor_block(f, i, n, p);
        Mat incoming = tensor_block(f, i + 1, n, p);
        out.push_back(homology(f.ranks[i] * n.dim, outgoing, incoming, p));
    }
    return out;
}

// Periodic complex R <-f- R <-f- R ... of the given length.
inline FreeComplex periodic(const Poly& f, std::size_t length) {
    FreeComplex c;
    c.ranks.assign(length + 1, 1);
    c.d.resize(length + 1);
    for (std::size_t i = 1; i <= length; ++i) c.d[i] = {{f}};
    return c;
}

// Tensor product of two free complexes (Koszul sign on the first degree).
inline FreeComplex tensor(const FreeComplex& a, const FreeComplex& b, std::size_t length) {
    FreeComplex c;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pos(length + 1);
    for (std::size_t n = 0; n <= length; ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            const std::size_t j = n - i;
            if (i < a.ranks.size() && j < b.ranks.size())
                for (std::size_t u = 0; u < a.ranks[i]; ++u)
                    for (std::size_t v = 0; v < b.ranks[j]; ++v) pos[n].push_back({i * 1000 + u, j * 1000 + v});
        }
    c.ranks.resize(length + 1);
    for (std::size_t n = 0; n <= length; ++n) c.ranks[n] = pos[n].size();
    c.d.resize(length + 1);
    for (std::size_t n = 1; n <= length; ++n) {
        c.d[n].assign(c.ranks[n - 1], std::vector<Poly>(c.ranks[n]));
        for (std::size_t col = 0; col < c.ranks[n]; ++col) {
            const auto [ai, bj] = pos[n][col];
            const std::size_t i = ai / 1000, u = ai % 1000, j = bj / 1000, v = bj % 1000;
            for (std::size_t row = 0; row < c.ranks[n - 1]; ++row) {
                const auto [ai2, bj2] = pos[n - 1][row];
                const std::size_t i2 = ai2 / 1000, u2 = ai2 % 1000, j2 = bj2 / 1000, v2 = bj2 % 1000;
                if (i >= 1 && i2 == i - 1 && j2 == j && v2 == v) c.d[n][row][col] = a.d[i][u2][u];
                if (j >= 1 && j2 == j - 1 && i2 == i && u2 == u) {
                    Poly f = b.d[j][v2][v];
                    if (i % 2)
                        for (auto& t : f) t.first = -t.first;
                    c.d[n][row][col] = f;
                }
            }
        }
    }
    return c;
}

// Normalized two-sided bar complex M (x) Rbar^{(x) i} (x) N; returns
// dim Tor_i(M, N) for 0 <= i <= top.
inline std::vector<std::size_t> bar_tor(const Ring& r, const Module& m, const Module& n, std::size_t top) {
    const i64 p = r.p;
    std::vector<std::size_t> bar;  // nonunit basis monomials
    for (std::size_t b = 0; b < r.basis.size(); ++b)
        if (std::accumulate(r.basis[b].begin(), r.basis[b].end(), 0) > 0) bar.push_back(b);
    const std::size_t nb = bar.size();
    std::vector<std::size_t> pos_in_bar(r.basis.size(), SIZE_MAX);
    for (std::size_t k = 0; k < nb; ++k) pos_in_bar[bar[k]] = k;
    std::vector<Mat> mact, nact;
    for (auto b : bar) {
        mact.push_back(monomial_action(m, r.basis[b], p));
        nact.push_back(monomial_action(n, r.basis[b], p));
    }
    auto product = [&](std::size_t x, std::size_t y) -> std::optional<std::size_t> {
        Mono e = r.basis[bar[x]];
        for (std::size_t v = 0; v < r.m; ++v) e[v] += r.basis[bar[y]][v];
        if (r.in_ideal(e)) return std::nullopt;
        return pos_in_bar[r.index.at(e)];
    };
    auto power = [](std::size_t b, std::size_t k) {
        std::size_t out = 1;
        for (std::size_t i = 0; i < k; ++i) out *= b;
        return out;
    };
    auto dim_of = [&](std::size_t i) { return m.dim * power(nb, i) * n.dim; };
    // index = (mi * nb^i + word) * n.dim + ni, word digits a_1 most significant
    auto boundary = [&](std::size_t i) {
        Mat d(dim_of(i - 1), dim_of(i));
        const std::size_t words = power(nb, i);
        std::vector<std::size_t> w(i);
        for (std::size_t word = 0; word < words; ++word) {
            std::size_t t = word;
            for (std::size_t k = i; k-- > 0;) {
                w[k] = t % nb;
                t /= nb;
            }
            auto encode = [&](const std::vector<std::size_t>& ws) {
                std::size_t code = 0;
                for (auto x : ws) code = code * nb + x;
                return code;
            };
            for (std::size_t mi = 0; mi < m.dim; ++mi)
                for (std::size_t ni = 0; ni < n.dim; ++ni) {
                    const std::size_t col = (mi * words + word) * n.dim + ni;
                    const std::size_t lower = power(nb, i - 1);
                    {
                        std::vector<std::size_t> rest(w.begin() + 1, w.end());
                        const std::size_t code = encode(rest);
                        for (std::size_t mo = 0; mo < m.dim; ++mo) {
                            const i64 c = mact[w[0]].at(mo, mi);
                            if (c) d.at((mo * lower + code) * n.dim + ni, col) += c;
                        }
                    }
                    for (std::size_t j = 0; j + 1 < i; ++j) {
                        auto prod = product(w[j], w[j + 1]);
                        if (!prod) continue;
                        std::vector<std::size_t> merged;
                        for (std::size_t k = 0; k < i; ++k) {
                            if (k == j) merged.push_back(*prod);
                            else if (k != j + 1) merged.push_back(w[k]);
                        }
                        const i64 sign = (j + 1) % 2 ? -1 : 1;
                        d.at((mi * lower + encode(merged)) * n.dim + ni, col) += sign;
                    }
                    {
                        std::vector<std::size_t> rest(w.begin(), w.end() - 1);
                        const std::size_t code = encode(rest);
                        const i64 sign = i % 2 ? -1 : 1;
                        for (std::size_t no = 0; no < n.dim; ++no) {
                            const i64 c = nact[w[i - 1]].at(no, ni);
                            if (c) d.at((mi * lower + code) * n.dim + no, col) += sign * c;
                        }
                    }
                }
        }
        for (auto& v : d.a) v = md(v, p);
        return d;
    };
    std::vector<Mat> ds(top + 2);
    for (std::size_t i = 1; i <= top + 1; ++i) ds[i] = boundary(i);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= top; ++i) {
        Mat outgoing = i == 0 ? Mat(0, dim_of(0)) : ds[i];
        out.push_back(homology(dim_of(i), outgoing, ds[i + 1], p));
    }
    return out;
}

// H(K(x; M)) for the Koszul complex on all variables.
inline std::vector<std::size_t> koszul(const Module& mod, std::size_t m, i64 p) {
    std::vector<std::vector<unsigned>> subsets(m + 1);
    for (unsigned s = 0; s < (1u << m); ++s) subsets[__builtin_popcount(s)].push_back(s);
    auto block = [&](std::size_t i) {
        Mat d(subsets[i - 1].size() * mod.dim, subsets[i].size() * mod.dim);
        for (std::size_t c = 0; c < subsets[i].size(); ++c) {
            const unsigned s = subsets[i][c];
            int seen = 0;
            for (std::size_t a = 0; a < m; ++a) {
                if (!(s >> a & 1)) continue;
                const unsigned t = s & ~(1u << a);
                const std::size_t r = std::find(subsets[i - 1].begin(), subsets[i - 1].end(), t) - subsets[i - 1].begin();
                const i64 sign = seen % 2 ? -1 : 1;
                ++seen;
                for (std::size_t x = 0; x < mod.dim; ++x)
                    for (std::size_t y = 0; y < mod.dim; ++y)
                        d.at(r * mod.dim + x, c * mod.dim + y) = md(sign * mod.act[a].at(x, y), p);
            }
        }
        return d;
    };
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= m; ++i) {
        Mat outgoing = i == 0 ? Mat(0, mod.dim) : block(i);
        Mat incoming = i == m ? Mat(subsets[i].size() * mod.dim, 0) : block(i + 1);
        out.push_back(homology(subsets[i].size() * mod.dim, outgoing, incoming, p));
    }
    return out;
}

// Koszul homology of a monomial quotient (possibly not artinian) summed over
// multidegrees in the box [0, bound]. Each strand is finite.
inline std::vector<std::size_t> koszul_ring(std::size_t m, const std::vector<Mono>& gens, const Mono& bound, i64 p) {
    auto in_ideal = [&](const Mono& e) {
        for (const auto& g : gens) {
            bool div = true;
            for (std::size_t i = 0; i < m; ++i) div = div && e[i] >= g[i];
            if (div) return true;
        }
        return false;
    };
    std::vector<std::size_t> total(m + 1, 0);
    Mono alpha(m, 0);
    while (true) {
        // chains in degree i: subsets S with x^{alpha - e_S} standard
        std::vector<std::vector<unsigned>> chains(m + 1);
        for (unsigned s = 0; s < (1u << m); ++s) {
            Mono e = alpha;
            bool ok = true;
            for (std::size_t a = 0; a < m; ++a)
                if (s >> a & 1) ok = ok && --e[a] >= 0;
            if (ok && !in_ideal(e)) chains[__builtin_popcount(s)].push_back(s);
        }
        auto block = [&](std::size_t i) {
            Mat d(chains[i - 1].size(), chains[i].size());
            for (std::size_t c = 0; c < chains[i].size(); ++c) {
                const unsigned s = chains[i][c];
                int seen = 0;
                for (std::size_t a = 0; a < m; ++a) {
                    if (!(s >> a & 1)) continue;
                    const i64 sign = seen++ % 2 ? -1 : 1;
                    const unsigned t = s & ~(1u << a);
                    auto it = std::find(chains[i - 1].begin(), chains[i - 1].end(), t);
                    if (it != chains[i - 1].end()) d.at(it - chains[i - 1].begin(), c) = md(sign, p);
                }
            }
            return d;
        };
        for (std::size_t i = 0; i <= m; ++i) {
            Mat outgoing = i == 0 ? Mat(0, chains[0].size()) : block(i);
            Mat incoming = i == m ? Mat(chains[i].size(), 0) : block(i + 1);
            total[i] += homology(chains[i].size(), outgoing, incoming, p);
        }
        std::size_t i = 0;
        while (i < m && ++alpha[i] > bound[i]) alpha[i++] = 0;
        if (i == m) break;
    }
    return total;
}

// ---------------------------------------------------------------- DG

// dims of H of a finite DG module, by degree.
inline std::map<int, std::size_t> dg_homology(const torind::FiniteDGModule& x) {
    const i64 p = x.field().p();
    Mat d = from_lib(x.diff());
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t i = 0; i < x.dim(); ++i) by_degree[x.degree(i)].push_back(i);
    std::map<int, std::size_t> out;
    for (const auto& [deg, idx] : by_degree) {
        auto block = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
            Mat b(rows.size(), cols.size());
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < cols.size(); ++c) b.at(r, c) = d.at(rows[r], cols[c]);
            return b;
        };
        std::vector<std::size_t> below = by_degree.count(deg - 1) ? by_degree[deg - 1] : std::vector<std::size_t>{};
        std::vector<std::size_t> above = by_degree.count(deg + 1) ? by_degree[deg + 1] : std::vector<std::size_t>{};
        const std::size_t h = homology(idx.size(), block(below, idx), block(idx, above), p);
        if (h) out[deg] = h;
    }
    return out;
}

// Two-sided bar construction B(X, A, Y) over a DG algebra with A_0 = k,
// truncated in total degree. Returns dims of H_t for t < top (chains are
// built through degree top). Also reports whether d^2 = 0 held.
struct BarResult {
    std::map<int, std::size_t> dims;
    bool square_zero = true;
};

inline BarResult dg_bar_tor(const torind::FiniteDGModule& x, const torind::FiniteDGModule& y, int top) {
    const torind::DGAlgebra& a = *x.algebra();
    const i64 p = a.field().p();
    std::vector<std::size_t> plus;
    for (std::size_t b = 0; b < a.dim(); ++b)
        if (a.degree(b) > 0) plus.push_back(b);
    std::vector<std::size_t> where(a.dim(), SIZE_MAX);
    for (std::size_t k = 0; k < plus.size(); ++k) where[plus[k]] = k;
    int xmin = 0, ymin = 0;
    for (std::size_t i = 0; i < x.dim(); ++i) xmin = i ? std::min(xmin, x.degree(i)) : x.degree(i);
    for (std::size_t i = 0; i < y.dim(); ++i) ymin = i ? std::min(ymin, y.degree(i)) : y.degree(i);

    struct Chain {
        std::size_t xi;
        std::vector<std::size_t> word;  // indices into plus
        std::size_t yi;
    };
    std::vector<Chain> chains;
    std::map<std::tuple<std::size_t, std::vector<std::size_t>, std::size_t>, std::size_t> index;
    std::vector<int> degree;
    std::function<void(std::vector<std::size_t>&, int)> grow = [&](std::vector<std::size_t>& w, int wdeg) {
        for (std::size_t xi = 0; xi < x.dim(); ++xi)
            for (std::size_t yi = 0; yi < y.dim(); ++yi) {
                const int t = x.degree(xi) + wdeg + y.degree(yi);
                if (t > top) continue;
                index[{xi, w, yi}] = chains.size();
                chains.push_back({xi, w, yi});
                degree.push_back(t);
            }
        for (std::size_t k = 0; k < plus.size(); ++k) {
            const int nd = wdeg + a.degree(plus[k]) + 1;
            if (xmin + nd + ymin > top) continue;
            w.push_back(k);
            grow(w, nd);
            w.pop_back();
        }
    };
    std::vector<std::size_t> empty;
    grow(empty, 0);

    const std::size_t n = chains.size();
    Mat d(n, n);
    auto add = [&](std::size_t xi, const std::vector<std::size_t>& w, std::size_t yi, i64 c, std::size_t col) {
        auto it = index.find({xi, w, yi});
        if (it != index.end()) d.at(it->second, col) = md(d.at(it->second, col) + c, p);
        // terms above the top degree never arise: d lowers degree by one
    };
    auto sgn = [](long long e) -> i64 { return (e % 2 + 2) % 2 ? -1 : 1; };
    for (std::size_t col = 0; col < n; ++col) {
        const Chain& ch = chains[col];
        const std::size_t len = ch.word.size();
        const int xd = x.degree(ch.xi);
        std::vector<long long> eps(len + 1);
        eps[0] = xd;
        for (std::size_t j = 0; j < len; ++j) eps[j + 1] = eps[j] + a.degree(plus[ch.word[j]]) + 1;
        // internal differential
        for (std::size_t xo = 0; xo < x.dim(); ++xo)
            if (auto c = x.diff().at(xo, ch.xi)) add(xo, ch.word, ch.yi, c, col);
        for (std::size_t j = 0; j < len; ++j) {
            const std::size_t b = plus[ch.word[j]];
            for (std::size_t bo = 0; bo < a.dim(); ++bo) {
                const i64 c = a.diff(bo, b);
                if (!c) continue;
                if (where[bo] == SIZE_MAX) throw std::runtime_error("boundary leaves A_+");
                std::vector<std::size_t> w = ch.word;
                w[j] = where[bo];
                add(ch.xi, w, ch.yi, -sgn(eps[j]) * c, col);
            }
        }
        for (std::size_t yo = 0; yo < y.dim(); ++yo)
            if (auto c = y.diff().at(yo, ch.yi)) add(ch.xi, ch.word, yo, sgn(eps[len]) * c, col);
        if (len == 0) continue;
        // x a_1, with the right action x a = (-1)^{|x||a|} a x
        {
            const std::size_t b = plus[ch.word[0]];
            std::vector<std::size_t> rest(ch.word.begin() + 1, ch.word.end());
            const i64 s = sgn(xd) * sgn(static_cast<long long>(xd) * a.degree(b));
            for (std::size_t xo = 0; xo < x.dim(); ++xo)
                if (auto c = x.action(b).at(xo, ch.xi)) add(xo, rest, ch.yi, s * c, col);
        }
        for (std::size_t j = 1; j < len; ++j) {
            const std::size_t b1 = plus[ch.word[j - 1]], b2 = plus[ch.word[j]];
            for (std::size_t bo = 0; bo < a.dim(); ++bo) {
                const i64 c = a.mult(b1, b2, bo);
                if (!c) continue;
                std::vector<std::size_t> w;
                for (std::size_t k = 0; k < len; ++k) {
                    if (k == j - 1) w.push_back(where[bo]);
                    else if (k != j) w.push_back(ch.word[k]);
                }
                add(ch.xi, w, ch.yi, sgn(eps[j]) * c, col);
            }
        }
        {
            const std::size_t b = plus[ch.word[len - 1]];
            std::vector<std::size_t> rest(ch.word.begin(), ch.word.end() - 1);
            for (std::size_t yo = 0; yo < y.dim(); ++yo)
                if (auto c = y.action(b).at(yo, ch.yi)) add(ch.xi, rest, yo, -sgn(eps[len - 1]) * c, col);
        }
    }
    BarResult res;
    res.square_zero = is_zero(mul(d, d, p), p);
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t i = 0; i < n; ++i) by_degree[degree[i]].push_back(i);
    for (int t = xmin + ymin; t < top; ++t) {
        auto get = [&](int deg) { return by_degree.count(deg) ? by_degree[deg] : std::vector<std::size_t>{}; };
        const auto mid = get(t), lo = get(t - 1), hi = get(t + 1);
        auto block = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
            Mat b(rows.size(), cols.size());
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < cols.size(); ++c) b.at(r, c) = d.at(rows[r], cols[c]);
            return b;
        };
        const std::size_t h = homology(mid.size(), block(lo, mid), block(mid, hi), p);
        if (h) res.dims[t] = h;
    }
    return res;
}

}  // namespace oracle
