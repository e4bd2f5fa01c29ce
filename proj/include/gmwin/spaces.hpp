#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmwin/graded.hpp"
#include "gmwin/laurent.hpp"
#include "gmwin/rational.hpp"

namespace gmwin {

enum class SpaceKind { projective, affine };

/// A Gm-action on P(V) or A^n. For projective spaces the action weights are
/// the weights of V; for affine spaces they are the degrees of the coordinate
/// functions (the A^1 of the rest of the library is affine with weights {1}).
struct GmSpace {
    SpaceKind kind = SpaceKind::affine;
    std::vector<int> weights;
    std::optional<Rational> default_a;

    static GmSpace projective(std::vector<int> weights);
    static GmSpace affine(std::vector<int> coordinate_degrees);

    int dimension() const;

    friend bool operator==(const GmSpace&, const GmSpace&) = default;
};

/// One connected component of the fixed locus, with the weight data feeding
/// stratifications, windows and localization.
///
/// normal_weights follows the presentation convention of the inputs: for
/// projective components these are the tangent weights {v' - v}; for the
/// affine origin they are the coordinate degrees. tangent_weights is the
/// uniform tangent-space data and is what Euler classes consume; cotangent
/// weights are its negatives, and eta_plus / eta_minus are the sums of the
/// positive resp. negative cotangent weights.
struct FixedComponent {
    int index = 0;
    int value = 0;      // common action weight (projective); 0 for the origin
    int dimension = 0;
    int w = 0;          // weight of the O(1)-fiber along the component
    std::vector<int> normal_weights;
    std::vector<int> tangent_weights;
    long long eta_plus = 0;
    long long eta_minus = 0;
    int canonical_weight = 0;  // weight of omega_X along the component
};

/// Components sorted by nondecreasing w.
std::vector<FixedComponent> fixed_components(const GmSpace& space);

struct StratumReport {
    int component = 0;
    char sign = '+';
    int dimension = 0;
    std::string condition;
};

/// The strata {S_i^+ : w_i < a} and {S_i^- : w_i > a}, listed in closure
/// order (deeper strata first). a equal to some w_i is allowed; that
/// component then contributes no stratum.
std::vector<StratumReport> unstable_locus(const GmSpace& space, const Rational& a);

struct Chambers {
    std::vector<int> critical_values;  // sorted, distinct
    /// number of open intervals, i.e. critical_values.size() + 1
    std::size_t interval_count() const { return critical_values.size() + 1; }
};

Chambers chambers(const GmSpace& space);

enum class WallType { grows_up, grows_down, derived_equivalence };

std::string wall_type_name(WallType t);

/// Classification of the wall a = w_i by the sign of the canonical weight.
/// grows_up means the window interval on the w_i < a side contains the one
/// on the w_i > a side, so the quotient category grows as a increases.
WallType wall_type(const GmSpace& space, int component_index);

struct WindowSpec {
    std::vector<Rational> theta;  // one per fixed component, none integral
    Rational a;
};

struct ComponentInterval {
    int component = 0;
    Rational lo;
    Rational hi;
};

/// Per-component weight intervals [theta_i, theta_i + eta_i^+] (w_i < a) or
/// [theta_i, theta_i + eta_i^-] (w_i > a). Rejects integral theta_i and
/// critical a.
std::vector<ComponentInterval> window_bounds(const GmSpace& space, const WindowSpec& spec);

using Exponents = std::vector<int>;              // one exponent per coordinate
using MultiPoly = std::map<Exponents, Rational>; // no zero coefficients

/// Bounded complex of equivariant free modules over the coordinate ring of a
/// linear Gm-model, with polynomial differentials. Homogeneity of every
/// entry and d o d = 0 are checked exactly.
class EquivariantComplex {
public:
    EquivariantComplex() = default;
    EquivariantComplex(std::vector<int> coordinate_degrees, int min_degree,
                       std::vector<std::vector<int>> term_weights,
                       std::vector<std::vector<std::vector<MultiPoly>>> diffs);

    bool empty() const { return term_weights_.empty(); }
    int min_degree() const { return min_degree_; }
    int max_degree() const { return min_degree_ + static_cast<int>(term_weights_.size()) - 1; }
    const std::vector<int>& coordinate_degrees() const { return coord_degrees_; }
    std::vector<int> term_weights(int k) const;
    /// Value of the differential at the origin (the constant parts).
    RationalMatrix differential_at_origin(int k) const;

    /// A Koszul-type two-term complex O e_{c} -> O, generator to the
    /// degree-c coordinate, in cohomological degrees -1, 0.
    static EquivariantComplex koszul_of_coordinate(std::vector<int> coordinate_degrees, int which);
    /// O tensored with the character of weight m, in degree 0.
    static EquivariantComplex twisted_structure_sheaf(std::vector<int> coordinate_degrees, int m);

    friend bool operator==(const EquivariantComplex&, const EquivariantComplex&) = default;

private:
    std::vector<int> coord_degrees_;
    int min_degree_ = 0;
    std::vector<std::vector<int>> term_weights_;
    std::vector<std::vector<std::vector<MultiPoly>>> diffs_;
};

/// Weights (with multiplicities) of the cohomology of the restriction of E
/// to the fixed component. Affine origin only in this version.
CohomologyTable restrict_to_fixed(const GmSpace& space, const EquivariantComplex& E, int component_index);

struct ComponentMembership {
    int component = 0;
    Rational lo;
    Rational hi;
    std::vector<std::pair<int, long long>> weights;  // weight -> multiplicity
    std::vector<int> violations;                     // weights outside the interval
};

struct MembershipReport {
    bool member = false;
    std::vector<ComponentMembership> components;
};

/// Window membership of a complex on a linear model: every restriction
/// weight must lie in the component interval.
MembershipReport window_membership(const GmSpace& space, const EquivariantComplex& E,
                                   const WindowSpec& spec);

}  // namespace gmwin
