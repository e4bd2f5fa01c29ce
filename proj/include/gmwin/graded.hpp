#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmwin/rational.hpp"

namespace gmwin {

/// Free graded k[x]-module, deg x = 1. O(n) is the rank-1 module whose
/// generator sits in degree -n.
struct GradedFreeModule {
    std::vector<int> generator_degrees;

    int rank() const { return static_cast<int>(generator_degrees.size()); }
    /// The twist (m) multiplies by a formal generator of degree -m.
    GradedFreeModule twist(int m) const;
    static GradedFreeModule line(int n) { return GradedFreeModule{{-n}}; }

    friend bool operator==(const GradedFreeModule&, const GradedFreeModule&) = default;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Degree-preserving map between free graded modules. Entry (i,j) is
/// coeff[i][j] * x^(source_degree(j) - target_degree(i)); a nonzero
/// coefficient with a negative implied exponent is rejected.
class EquivariantMatrix {
public:
    EquivariantMatrix(GradedFreeModule source, GradedFreeModule target, RationalMatrix coefficients);

    const GradedFreeModule& source() const { return source_; }
    const GradedFreeModule& target() const { return target_; }
    const RationalMatrix& coefficients() const { return coeff_; }
    int exponent(int i, int j) const;

    friend bool operator==(const EquivariantMatrix&, const EquivariantMatrix&) = default;

private:
    GradedFreeModule source_;
    GradedFreeModule target_;
    RationalMatrix coeff_;
};

/// Bounded complex of free graded k[x]-modules with equivariant
/// differentials; d o d = 0 is checked exactly at construction.
class GradedComplex {
public:
    GradedComplex() = default;  // the zero complex
    GradedComplex(int min_degree, std::vector<GradedFreeModule> terms, std::vector<RationalMatrix> diffs);

    bool empty() const { return terms_.empty(); }
    int min_degree() const { return min_degree_; }
    int max_degree() const { return min_degree_ + static_cast<int>(terms_.size()) - 1; }
    /// Term in cohomological degree k (rank 0 outside the stored range).
    GradedFreeModule term(int k) const;
    /// Coefficient matrix of d : term(k) -> term(k+1), shaped even when zero.
    RationalMatrix differential(int k) const;

    std::optional<int> min_generator_degree() const;
    std::optional<int> max_generator_degree() const;
    int generator_degree_spread() const;
    /// Alternating sum of term ranks; the per-weight Euler characteristic in
    /// every weight above all generator degrees.
    long long generic_euler_characteristic() const;

    static GradedComplex line_bundle(int n);
    /// Resolution of k[x]/(x^j) e_d placed in cohomological degrees -1, 0.
    static GradedComplex torsion_module(int j, int d);
    GradedComplex shift(int s) const;  // F[s]: degree k picks up old degree k+s

    friend bool operator==(const GradedComplex&, const GradedComplex&) = default;

private:
    int min_degree_ = 0;
    std::vector<GradedFreeModule> terms_;
    std::vector<RationalMatrix> diffs_;  // diffs_[k] : term k -> term k+1
};

/// Two-term complex k[x] -> k[x] e_{-j}, 1 |-> x^j e_{-j}, in cohomological
/// degrees 0 and 1; its only cohomology is k[x]/(x^j) e_{-j} in degree 1.
GradedComplex koszul_truncation(int j);

/// k(j) = k[x]/(x) e_{-j} presented by its Koszul resolution (degrees -1, 0).
GradedComplex k_point(int j);

/// Totalization with the Koszul sign rule: the differential on F^p (x) G^q is
/// d_F (x) 1 + (-1)^p 1 (x) d_G.
GradedComplex tensor(const GradedComplex& F, const GradedComplex& G);

/// F (x) koszul_truncation(j): the j-th stage of the local cohomology colimit.
GradedComplex local_cohomology_level(const GradedComplex& F, int j);

/// Hom-complex of two complexes of frees, with d(f) = d_F o f - (-1)^n f o d_E.
GradedComplex hom_complex(const GradedComplex& E, const GradedComplex& F);

/// Finite table of graded cohomology dimensions within a declared window.
struct CohomologyTable {
    int weight_lo = 0;
    int weight_hi = -1;  // empty window by default
    std::map<std::pair<int, int>, long long> dims;  // (cohomological degree, weight) -> dim > 0

    bool is_zero() const { return dims.empty(); }
    long long dim(int degree, int weight) const;
    long long euler_characteristic(int weight) const;
    CohomologyTable restricted(int lo, int hi) const;
    std::string to_string() const;

    friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

struct WeightWindow {
    int lo;
    int hi;
};

WeightWindow default_window(const GradedComplex& F);

/// Exact cohomology dimensions of F for every weight in [lo, hi].
CohomologyTable cohomology_in_window(const GradedComplex& F, int weight_lo, int weight_hi);

struct StabilityOptions {
    std::optional<int> j_max;  // default: 2 * generator degree spread + 16
};

/// Weight-(>= w) part of the stabilized local cohomology of F. Stability is
/// certified by comparing the j and j+1 stages; failure to stabilize within
/// j_max raises certification_error instead of truncating silently.
CohomologyTable restricted_local_cohomology(const GradedComplex& F, int w, StabilityOptions opts = {});

/// Weight-(< w) part of the stabilized pro-system F (x) k[x]/(x^j); the left
/// companion of restricted_local_cohomology.
CohomologyTable beta_lower(const GradedComplex& F, int w, StabilityOptions opts = {});

/// Cohomology of the Hom-complex; with invariants_only, its weight-0 part.
CohomologyTable rhom(const GradedComplex& E, const GradedComplex& F, bool invariants_only);
CohomologyTable rhom_in_window(const GradedComplex& E, const GradedComplex& F, int weight_lo, int weight_hi);

/// The three semiorthogonal pieces of F at the cut w. lower and upper are
/// honest dimension tables; middle is the remaining per-weight Euler
/// characteristic, certified to be a constant multiple of the weight pattern
/// of the rank-1 free module generated in degree w.
struct SodDecomposition {
    CohomologyTable lower;
    CohomologyTable middle;
    CohomologyTable upper;
    long long middle_multiplicity = 0;
};

SodDecomposition sod_decompose(const GradedComplex& F, int w, StabilityOptions opts = {});

/// Rank of a rational matrix by exact Gaussian elimination.
int rational_rank(RationalMatrix m);

}  // namespace gmwin
