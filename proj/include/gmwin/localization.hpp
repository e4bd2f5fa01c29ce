#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gmwin/laurent.hpp"
#include "gmwin/spaces.hpp"

namespace gmwin {

/// Integer combination of equivariant twists [O(d) (x) chi_m]. Equal
/// summands are merged on construction.
class KClass {
public:
    KClass() = default;

    static KClass line_bundle(int d, int m = 0);

    void add_summand(int d, int m, long long multiplicity);
    bool is_zero() const { return coeffs_.empty(); }
    /// (d, m) -> multiplicity, no zero entries.
    const std::map<std::pair<int, int>, long long>& summands() const { return coeffs_; }

    friend bool operator==(const KClass&, const KClass&) = default;

private:
    std::map<std::pair<int, int>, long long> coeffs_;
};

/// Full character sum_j (-1)^j char H^j(X, F) on a projective space,
/// computed from symmetric powers and Serre duality, independently of any
/// localization code path.
LaurentPolynomial sheaf_character(const GmSpace& space, const KClass& F);

/// Affine variant: the character is a series; the coordinate degrees must
/// all have the same sign for it to live in a completion.
LaurentSeries sheaf_character_series(const GmSpace& space, const KClass& F, int truncation_order);

/// char of the derived restriction of F to a fixed component (a Laurent
/// polynomial since this version restricts to point components).
LaurentPolynomial restriction_character(const GmSpace&, const FixedComponent& Z, const KClass& F);

/// Signed weight multiplicities of F restricted to component i.
std::vector<std::pair<int, long long>> restriction_weights(const GmSpace& space, int component_index,
                                                           const KClass& F);

struct FixedContribution {
    LaurentSeries series;
    long long chi = 0;  // weight-0 coefficient, certified within truncation
};

/// char(F|_{Z_i}) / e_{side}(N_{Z_i} X) expanded in the completion matching
/// the side: '+' expands bounded-above, '-' bounded-below.
FixedContribution fixed_contribution(const GmSpace& space, int component_index, const KClass& F,
                                     char side, std::optional<int> truncation_order = {});

struct IndexRow {
    int component = 0;
    char side = '+';
    long long chi = 0;
};

struct IndexReport {
    long long total = 0;       // chi(X/Gm, F), the invariant Euler characteristic
    long long semistable = 0;  // total minus all listed fixed-component terms
    std::vector<IndexRow> rows;
};

/// Fixed-point decomposition of the index with every component on the '+'
/// side (the far chamber); the total is certified against the weight-0
/// coefficient of the independently computed sheaf character.
IndexReport atiyah_bott_index(const GmSpace& space, const KClass& F);

/// Index decomposition at a non-critical parameter a: '+'-side terms for
/// w_i < a, '-'-side terms for w_i > a, remainder attributed to the
/// semistable locus.
IndexReport semistable_index(const GmSpace& space, const Rational& a, const KClass& F);

struct WallCrossingRow {
    int component = 0;
    long long delta = 0;  // chi_-(i) - chi_+(i), the swap across the wall
};

struct WallCrossingReport {
    long long delta = 0;  // semistable index at a1 minus at a2
    std::vector<WallCrossingRow> walls;
};

/// Difference of semistable indices, computed directly and re-derived as the
/// sum of per-wall swaps; the two routes are compared exactly.
WallCrossingReport wall_crossing_delta(const GmSpace& space, const Rational& a1, const Rational& a2,
                                       const KClass& F);

/// Window membership of a K-class: all twist weights of every summand must
/// lie in the component intervals.
MembershipReport window_membership(const GmSpace& space, const KClass& F, const WindowSpec& spec);

}  // namespace gmwin
