#include "gmwin/localization.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gmwin/errors.hpp"

namespace gmwin {

KClass KClass::line_bundle(int d, int m) {
    KClass f;
    f.add_summand(d, m, 1);
    return f;
}

void KClass::add_summand(int d, int m, long long multiplicity) {
    if (multiplicity == 0) return;
    auto key = std::make_pair(d, m);
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
        coeffs_[key] = multiplicity;
    } else if ((it->second += multiplicity) == 0) {
        coeffs_.erase(it);
    }
}

namespace {

// Complete homogeneous symmetric sum of degree d in the characters t^{e_k}:
// the character of Sym^d of a representation with weights e_k.
LaurentPolynomial complete_homogeneous(int d, const std::vector<int>& exponents) {
    std::vector<LaurentPolynomial> table(d + 1);
    table[0] = LaurentPolynomial::one();
    for (int e : exponents) {
        std::vector<LaurentPolynomial> next(d + 1);
        for (int total = 0; total <= d; ++total) {
            LaurentPolynomial acc;
            for (int k = 0; k <= total; ++k) {
                acc += LaurentPolynomial::monomial(e * k) * table[total - k];
            }
            next[total] = std::move(acc);
        }
        table = std::move(next);
    }
    return table[d];
}

// Character of the full cohomology of O(d) on P(V). Sections are Sym^d V*;
// the top-degree side is pinned by requiring chi(O(-1)) = 0 and works out to
// (-1)^n t^{sum v} Sym^{-d-n-1} V.
LaurentPolynomial line_bundle_character(const std::vector<int>& v, int d) {
    const int n = static_cast<int>(v.size()) - 1;
    if (d >= 0) {
        std::vector<int> dual;
        for (int w : v) dual.push_back(-w);
        return complete_homogeneous(d, dual);
    }
    if (d >= -n) return LaurentPolynomial::zero();
    const int sum = std::accumulate(v.begin(), v.end(), 0);
    LaurentPolynomial top = complete_homogeneous(-d - n - 1, v) * LaurentPolynomial::monomial(sum);
    return n % 2 == 0 ? top : -top;
}

void require_projective(const GmSpace& space, const char* what) {
    if (space.kind != SpaceKind::projective) {
        throw std::invalid_argument(std::string(what) + " needs a projective space");
    }
}

void require_point_components(const GmSpace& space, const char* what) {
    if (space.kind != SpaceKind::affine) {
        std::set<int> distinct(space.weights.begin(), space.weights.end());
        if (distinct.size() != space.weights.size()) {
            throw std::invalid_argument(std::string(what)
                                        + ": repeated weights give positive-dimensional fixed "
                                          "components, which this version does not localize over");
        }
    }
}

// Direction of the completion a one-sided affine coordinate ring lives in.
Direction affine_char_direction(const GmSpace& space) {
    const bool all_pos = std::all_of(space.weights.begin(), space.weights.end(),
                                     [](int c) { return c > 0; });
    const bool all_neg = std::all_of(space.weights.begin(), space.weights.end(),
                                     [](int c) { return c < 0; });
    if (!all_pos && !all_neg) {
        throw std::invalid_argument("affine characters need coordinate degrees of one sign; "
                                    "mixed-sign coordinate rings have no completed character");
    }
    return all_pos ? Direction::bounded_below : Direction::bounded_above;
}

}  // namespace

LaurentPolynomial sheaf_character(const GmSpace& space, const KClass& F) {
    require_projective(space, "sheaf_character");
    LaurentPolynomial chi;
    for (const auto& [dm, mult] : F.summands()) {
        const auto& [d, m] = dm;
        LaurentPolynomial part = line_bundle_character(space.weights, d)
                                 * LaurentPolynomial::monomial(m, mult);
        chi += part;
    }
    return chi;
}

LaurentSeries sheaf_character_series(const GmSpace& space, const KClass& F, int truncation_order) {
    if (space.kind == SpaceKind::projective) {
        return LaurentSeries::from_polynomial(sheaf_character(space, F),
                                              Direction::bounded_below, truncation_order);
    }
    const Direction dir = affine_char_direction(space);
    // char k[x_1..x_n] = prod 1/(1 - t^{c_k}); the coordinate of degree c is
    // dual to the weight -c line, so this is invert_euler of the tangent
    // weights.
    std::vector<int> tangent;
    for (int c : space.weights) tangent.push_back(-c);
    const auto comps = fixed_components(space);
    LaurentSeries ring = invert_euler(WeightList(tangent), dir, truncation_order);
    LaurentSeries out(dir, truncation_order);
    for (const auto& [dm, mult] : F.summands()) {
        const auto& [d, m] = dm;
        out += ring * LaurentPolynomial::monomial(d * comps[0].w + m, mult);
    }
    return out;
}

LaurentPolynomial restriction_character(const GmSpace&, const FixedComponent& Z,
                                        const KClass& F) {
    LaurentPolynomial chi;
    for (const auto& [dm, mult] : F.summands()) {
        const auto& [d, m] = dm;
        // O(d)-fiber along the component has weight d * w.
        chi += LaurentPolynomial::monomial(d * Z.w + m, mult);
    }
    return chi;
}

std::vector<std::pair<int, long long>> restriction_weights(const GmSpace& space, int component_index,
                                                           const KClass& F) {
    const auto comps = fixed_components(space);
    if (component_index < 0 || component_index >= static_cast<int>(comps.size())) {
        throw std::invalid_argument("no fixed component with index " + std::to_string(component_index));
    }
    std::vector<std::pair<int, long long>> out;
    const LaurentPolynomial chi = restriction_character(space, comps[component_index], F);
    for (const auto& [w, c] : chi.coefficients()) {
        out.push_back({w, c});
    }
    return out;
}

FixedContribution fixed_contribution(const GmSpace& space, int component_index, const KClass& F,
                                     char side, std::optional<int> truncation_order) {
    if (side != '+' && side != '-') throw std::invalid_argument("side must be '+' or '-'");
    require_point_components(space, "fixed_contribution");
    const auto comps = fixed_components(space);
    if (component_index < 0 || component_index >= static_cast<int>(comps.size())) {
        throw std::invalid_argument("no fixed component with index " + std::to_string(component_index));
    }
    const FixedComponent& Z = comps[component_index];
    const Direction dir = side == '+' ? Direction::bounded_above : Direction::bounded_below;
    const LaurentPolynomial restriction = restriction_character(space, Z, F);

    const WeightList normal(Z.tangent_weights);
    // Truncation that provably brackets weight 0 after multiplying by the
    // restriction character.
    int shift = 0;
    if (!restriction.is_zero()) {
        shift = dir == Direction::bounded_above ? *restriction.max_weight() : *restriction.min_weight();
    }
    int order;
    if (truncation_order) {
        order = *truncation_order;
    } else if (dir == Direction::bounded_above) {
        order = std::min(default_inversion_order(normal, dir), -1 - std::max(shift, 0)) - 4;
    } else {
        order = std::max(default_inversion_order(normal, dir), 1 - std::min(shift, 0)) + 4;
    }

    FixedContribution out{LaurentSeries(dir, order), 0};
    if (restriction.is_zero()) return out;
    out.series = invert_euler(normal, dir, order) * restriction;
    if (!out.series.represents(0)) {
        throw std::invalid_argument("truncation order " + std::to_string(order)
                                    + " cannot certify the weight-0 coefficient; enlarge it");
    }
    out.chi = out.series.coefficient(0);
    return out;
}

IndexReport atiyah_bott_index(const GmSpace& space, const KClass& F) {
    require_projective(space, "atiyah_bott_index");
    require_point_components(space, "atiyah_bott_index");
    const auto comps = fixed_components(space);
    IndexReport report;
    for (const auto& z : comps) {
        const auto contrib = fixed_contribution(space, z.index, F, '+');
        report.rows.push_back({z.index, '+', contrib.chi});
        report.total += contrib.chi;
    }
    report.semistable = 0;
    const long long direct = weight_coefficient(sheaf_character(space, F), 0);
    if (direct != report.total) {
        // If this ever fires, the first suspect is the pairing of stratum
        // signs with completion directions.
        throw certification_error("fixed-point total " + std::to_string(report.total)
                                  + " disagrees with the sheaf character coefficient "
                                  + std::to_string(direct));
    }
    return report;
}

namespace {

long long invariant_euler_characteristic(const GmSpace& space, const KClass& F) {
    if (space.kind == SpaceKind::projective) {
        return weight_coefficient(sheaf_character(space, F), 0);
    }
    const Direction dir = affine_char_direction(space);
    // Pick a truncation deep enough that every twist still brackets weight 0.
    const auto comps = fixed_components(space);
    int lo_shift = 0, hi_shift = 0;
    for (const auto& [dm, mult] : F.summands()) {
        const int shift = dm.first * comps[0].w + dm.second;
        lo_shift = std::min(lo_shift, shift);
        hi_shift = std::max(hi_shift, shift);
    }
    const int order = dir == Direction::bounded_below ? 8 - lo_shift : -8 - hi_shift;
    return sheaf_character_series(space, F, order).coefficient(0);
}

}  // namespace

IndexReport semistable_index(const GmSpace& space, const Rational& a, const KClass& F) {
    require_point_components(space, "semistable_index");
    const auto comps = fixed_components(space);
    for (const auto& z : comps) {
        if (Rational(z.w) == a) {
            throw std::invalid_argument("a = " + rational_to_string(a)
                                        + " is critical; pick a chamber value");
        }
    }
    IndexReport report;
    report.total = invariant_euler_characteristic(space, F);
    long long fixed = 0;
    for (const auto& z : comps) {
        const char side = Rational(z.w) < a ? '+' : '-';
        const auto contrib = fixed_contribution(space, z.index, F, side);
        report.rows.push_back({z.index, side, contrib.chi});
        fixed += contrib.chi;
    }
    report.semistable = report.total - fixed;
    return report;
}

WallCrossingReport wall_crossing_delta(const GmSpace& space, const Rational& a1, const Rational& a2,
                                       const KClass& F) {
    const IndexReport r1 = semistable_index(space, a1, F);
    const IndexReport r2 = semistable_index(space, a2, F);
    WallCrossingReport out;
    out.delta = r1.semistable - r2.semistable;

    const Rational lo = std::min(a1, a2);
    const Rational hi = std::max(a1, a2);
    const long long orientation = a1 >= a2 ? 1 : -1;
    long long swap_total = 0;
    for (const auto& z : fixed_components(space)) {
        const Rational w(z.w);
        if (w <= lo || w >= hi) continue;
        const long long swap = fixed_contribution(space, z.index, F, '-').chi
                               - fixed_contribution(space, z.index, F, '+').chi;
        out.walls.push_back({z.index, orientation * swap});
        swap_total += orientation * swap;
    }
    if (swap_total != out.delta) {
        throw certification_error("wall-by-wall swaps sum to " + std::to_string(swap_total)
                                  + " but the direct semistable difference is "
                                  + std::to_string(out.delta));
    }
    return out;
}

MembershipReport window_membership(const GmSpace& space, const KClass& F, const WindowSpec& spec) {
    const auto bounds = window_bounds(space, spec);
    MembershipReport report;
    report.member = true;
    for (const auto& b : bounds) {
        ComponentMembership cm;
        cm.component = b.component;
        cm.lo = b.lo;
        cm.hi = b.hi;
        for (const auto& [w, mult] : restriction_weights(space, b.component, F)) {
            cm.weights.push_back({w, mult});
            if (Rational(w) < b.lo || Rational(w) > b.hi) {
                cm.violations.push_back(w);
                report.member = false;
            }
        }
        report.components.push_back(std::move(cm));
    }
    return report;
}

}  // namespace gmwin
