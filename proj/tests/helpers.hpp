#pragma once

#include <random>
#include <vector>

#include "gmwin/graded.hpp"
#include "gmwin/laurent.hpp"
#include "gmwin/localization.hpp"
#include "gmwin/spaces.hpp"
#include "gmwin/walls.hpp"

namespace gmwin::testing {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline WeightList random_weight_list(Rng& rng, int max_size = 6, int bound = 5) {
    const int n = pick(rng, 0, max_size);
    std::vector<int> w;
    for (int i = 0; i < n; ++i) {
        int c = 0;
        while (c == 0) c = pick(rng, -bound, bound);
        w.push_back(c);
    }
    return WeightList(w);
}

// Independent expansion of the Euler class as the alternating sum of
// exterior powers of the dual: sum over subsets S of (-1)^|S| t^{-sum S}.
inline LaurentPolynomial euler_via_exterior_powers(const WeightList& n) {
    const auto& w = n.weights();
    LaurentPolynomial e;
    for (unsigned mask = 0; mask < (1u << w.size()); ++mask) {
        int total = 0;
        int bits = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (mask & (1u << i)) {
                total += w[i];
                ++bits;
            }
        }
        e += LaurentPolynomial::monomial(-total, bits % 2 == 0 ? 1 : -1);
    }
    return e;
}

// ----------------------------------------------------------- complexes --

inline GradedComplex direct_sum(const GradedComplex& A, const GradedComplex& B) {
    if (A.empty()) return B;
    if (B.empty()) return A;
    const int lo = std::min(A.min_degree(), B.min_degree());
    const int hi = std::max(A.max_degree(), B.max_degree());
    std::vector<GradedFreeModule> terms;
    std::vector<RationalMatrix> diffs;
    for (int k = lo; k <= hi; ++k) {
        GradedFreeModule t = A.term(k);
        for (int d : B.term(k).generator_degrees) t.generator_degrees.push_back(d);
        terms.push_back(std::move(t));
    }
    for (int k = lo; k < hi; ++k) {
        const auto da = A.differential(k);
        const auto db = B.differential(k);
        const int ra = A.term(k + 1).rank(), ca = A.term(k).rank();
        const int rb = B.term(k + 1).rank(), cb = B.term(k).rank();
        RationalMatrix m(ra + rb, std::vector<Rational>(ca + cb, Rational(0)));
        for (int i = 0; i < ra; ++i) {
            for (int j = 0; j < ca; ++j) m[i][j] = da[i][j];
        }
        for (int i = 0; i < rb; ++i) {
            for (int j = 0; j < cb; ++j) m[ra + i][ca + j] = db[i][j];
        }
        diffs.push_back(std::move(m));
    }
    return GradedComplex(lo, std::move(terms), std::move(diffs));
}

inline RationalMatrix rational_inverse(RationalMatrix m) {
    const int n = static_cast<int>(m.size());
    RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i) {
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational p = m[col][col];
        for (int j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (int j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// Random bounded complex: a direct sum of lines and torsion resolutions in
// shifted positions, conjugated by random equivariant automorphisms so the
// differentials are not block diagonal. Generator degrees stay in [-6, 6]
// and ranks stay small.
inline GradedComplex random_complex(Rng& rng) {
    GradedComplex F;
    const int blocks = pick(rng, 1, 3);
    for (int b = 0; b < blocks; ++b) {
        const int shift = pick(rng, -1, 1);
        if (pick(rng, 0, 2) == 0) {
            F = direct_sum(F, GradedComplex::line_bundle(pick(rng, -5, 5)).shift(shift));
        } else {
            const int j = pick(rng, 1, 3);
            const int d = pick(rng, -6, 6 - j);
            F = direct_sum(F, GradedComplex::torsion_module(j, d).shift(shift));
        }
    }

    // Equivariant change of basis per term.
    std::map<int, RationalMatrix> U;
    for (int k = F.min_degree(); k <= F.max_degree(); ++k) {
        const auto degs = F.term(k).generator_degrees;
        const int n = F.term(k).rank();
        RationalMatrix u(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i) u[i][i] = pick(rng, 0, 1) ? 1 : -1;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j || degs[j] - degs[i] < 0) continue;
                if (pick(rng, 0, 2) == 0) u[i][j] = pick(rng, -2, 2);
            }
        }
        // Degree-sorted entries make u triangular up to permutation, but an
        // added entry can break invertibility; fall back to the diagonal.
        if (rational_rank(u) < n) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) u[i][j] = i == j ? Rational(1) : Rational(0);
            }
        }
        U[k] = std::move(u);
    }
    std::vector<GradedFreeModule> terms;
    std::vector<RationalMatrix> diffs;
    for (int k = F.min_degree(); k <= F.max_degree(); ++k) terms.push_back(F.term(k));
    for (int k = F.min_degree(); k < F.max_degree(); ++k) {
        RationalMatrix d = F.differential(k);
        const auto& u_next = U[k + 1];
        RationalMatrix u_inv = rational_inverse(U[k]);
        // d' = U_{k+1} d U_k^{-1}
        const int rows = static_cast<int>(d.size());
        const int cols = rows ? static_cast<int>(d[0].size()) : 0;
        RationalMatrix tmp(rows, std::vector<Rational>(cols, Rational(0)));
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                Rational s(0);
                for (int t = 0; t < cols; ++t) s += d[i][t] * u_inv[t][j];
                tmp[i][j] = s;
            }
        }
        RationalMatrix out(rows, std::vector<Rational>(cols, Rational(0)));
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                Rational s(0);
                for (int t = 0; t < rows; ++t) s += u_next[i][t] * tmp[t][j];
                out[i][j] = s;
            }
        }
        diffs.push_back(std::move(out));
    }
    return GradedComplex(F.min_degree(), std::move(terms), std::move(diffs));
}

// -------------------------------------------------------------- spaces --

// Brute-force instability of the torus-invariant stratum with the given
// coordinate support: take both one-parameter limits and apply the sign
// rule directly.
inline bool brute_force_unstable(const std::vector<int>& weights, const std::vector<int>& support,
                                 const Rational& a) {
    int vmin = weights[support.front()];
    int vmax = vmin;
    for (int k : support) {
        vmin = std::min(vmin, weights[k]);
        vmax = std::max(vmax, weights[k]);
    }
    // t -> 0 limit lands in the component of value vmin (stratum S^+), the
    // inverse limit in vmax (stratum S^-); w = -v.
    return Rational(-vmin) < a || Rational(-vmax) > a;
}

// Instability according to the reported stratum list.
inline bool reported_unstable(const GmSpace& space, const std::vector<StratumReport>& strata,
                              const std::vector<int>& support, const Rational&) {
    const auto comps = fixed_components(space);
    int vmin = space.weights[support.front()];
    int vmax = vmin;
    for (int k : support) {
        vmin = std::min(vmin, space.weights[k]);
        vmax = std::max(vmax, space.weights[k]);
    }
    for (const auto& s : strata) {
        if (s.sign == '+' && comps[s.component].value == vmin) return true;
        if (s.sign == '-' && comps[s.component].value == vmax) return true;
    }
    return false;
}

// ------------------------------------------------------------- walls ----

inline TorusRep random_quasi_symmetric_rank1(Rng& rng, int max_side = 5, int bound = 4) {
    std::vector<int> w;
    const int npos = pick(rng, 1, max_side);
    int total = 0;
    for (int i = 0; i < npos; ++i) {
        const int c = pick(rng, 1, bound);
        w.push_back(c);
        total += c;
    }
    while (total > 0) {
        const int c = pick(rng, 1, std::min(bound, total));
        w.push_back(-c);
        total -= c;
    }
    return TorusRep::rank1(w);
}

inline Rational random_nonwall_theta(Rng& rng) {
    const int num = pick(rng, -12, 12);
    const int den = pick(rng, 2, 5);
    Rational t(num, den);
    if (is_integer(t)) t += Rational(1, 7);
    return t;
}

}  // namespace gmwin::testing
