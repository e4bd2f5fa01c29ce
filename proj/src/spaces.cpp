#include "gmwin/spaces.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gmwin/errors.hpp"

namespace gmwin {

GmSpace GmSpace::projective(std::vector<int> weights) {
    if (weights.empty()) throw std::invalid_argument("projective spaces need at least one weight");
    return GmSpace{SpaceKind::projective, std::move(weights), {}};
}

GmSpace GmSpace::affine(std::vector<int> coordinate_degrees) {
    if (coordinate_degrees.empty()) {
        throw std::invalid_argument("affine spaces need at least one coordinate");
    }
    for (int c : coordinate_degrees) {
        if (c == 0) {
            throw std::invalid_argument("affine coordinate degrees must be nonzero "
                                        "(the fixed locus must be the origin)");
        }
    }
    return GmSpace{SpaceKind::affine, std::move(coordinate_degrees), {}};
}

int GmSpace::dimension() const {
    return kind == SpaceKind::projective ? static_cast<int>(weights.size()) - 1
                                         : static_cast<int>(weights.size());
}

std::vector<FixedComponent> fixed_components(const GmSpace& space) {
    std::vector<FixedComponent> out;
    if (space.kind == SpaceKind::affine) {
        FixedComponent z;
        z.index = 0;
        z.value = 0;
        z.dimension = 0;
        // Calibration: on A^1 with the degree-1 coordinate the O(1)-fiber at
        // the origin has weight -1; in general we use -max degree.
        z.w = -*std::max_element(space.weights.begin(), space.weights.end());
        z.normal_weights = space.weights;
        std::sort(z.normal_weights.begin(), z.normal_weights.end());
        for (int c : z.normal_weights) z.tangent_weights.push_back(-c);
        std::sort(z.tangent_weights.begin(), z.tangent_weights.end());
        for (int c : z.normal_weights) {
            if (c > 0) z.eta_plus += c;
            if (c < 0) z.eta_minus += -c;
        }
        z.canonical_weight = std::accumulate(space.weights.begin(), space.weights.end(), 0);
        out.push_back(std::move(z));
        return out;
    }

    std::map<int, int> multiplicity;
    for (int v : space.weights) ++multiplicity[v];
    for (const auto& [v, mult] : multiplicity) {
        FixedComponent z;
        z.value = v;
        z.dimension = mult - 1;
        z.w = -v;  // the O(1)-fiber over P(V_v) is V_v^*
        for (const auto& [v2, mult2] : multiplicity) {
            if (v2 == v) continue;
            for (int t = 0; t < mult2; ++t) z.normal_weights.push_back(v2 - v);
        }
        std::sort(z.normal_weights.begin(), z.normal_weights.end());
        z.tangent_weights = z.normal_weights;
        for (int c : z.tangent_weights) {
            // cotangent weight is -c
            if (c < 0) z.eta_plus += -c;
            if (c > 0) z.eta_minus += c;
        }
        z.canonical_weight = static_cast<int>(z.eta_plus - z.eta_minus);
        out.push_back(std::move(z));
    }
    std::sort(out.begin(), out.end(),
              [](const FixedComponent& a, const FixedComponent& b) { return a.w < b.w; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
    return out;
}

namespace {

StratumReport make_stratum(const GmSpace& space, const FixedComponent& z, char sign) {
    StratumReport s;
    s.component = z.index;
    s.sign = sign;
    std::ostringstream cond;
    if (space.kind == SpaceKind::affine) {
        // S^+ is the t->0 basin: coordinates with negative tangent weight
        // (positive degree) must vanish.
        int dim = 0;
        for (int c : space.weights) {
            if ((sign == '+' && c < 0) || (sign == '-' && c > 0)) ++dim;
        }
        s.dimension = dim;
        cond << "coordinates with " << (sign == '+' ? "positive" : "negative")
             << " degree vanish";
    } else {
        int count = 0;
        for (int v : space.weights) {
            if (sign == '+' ? v >= z.value : v <= z.value) ++count;
        }
        s.dimension = count - 1;
        cond << "coordinates of weight " << (sign == '+' ? "<" : ">") << " " << z.value
             << " vanish; the weight-" << z.value << " part is nonzero";
    }
    s.condition = cond.str();
    return s;
}

}  // namespace

std::vector<StratumReport> unstable_locus(const GmSpace& space, const Rational& a) {
    const auto comps = fixed_components(space);
    std::vector<StratumReport> out;
    for (const auto& z : comps) {
        if (Rational(z.w) < a) out.push_back(make_stratum(space, z, '+'));
        if (Rational(z.w) > a) out.push_back(make_stratum(space, z, '-'));
    }
    // Closure order: deeper strata (larger |w_i - a|) first.
    auto depth = [&](const StratumReport& s) {
        const Rational d = Rational(comps[s.component].w) - a;
        return d < 0 ? -d : d;
    };
    std::stable_sort(out.begin(), out.end(), [&](const StratumReport& x, const StratumReport& y) {
        const Rational dx = depth(x), dy = depth(y);
        if (dx != dy) return dx > dy;
        if (x.sign != y.sign) return x.sign == '+';
        return x.component < y.component;
    });
    return out;
}

Chambers chambers(const GmSpace& space) {
    Chambers c;
    for (const auto& z : fixed_components(space)) c.critical_values.push_back(z.w);
    std::sort(c.critical_values.begin(), c.critical_values.end());
    c.critical_values.erase(std::unique(c.critical_values.begin(), c.critical_values.end()),
                            c.critical_values.end());
    return c;
}

std::string wall_type_name(WallType t) {
    switch (t) {
        case WallType::grows_up: return "grows-up";
        case WallType::grows_down: return "grows-down";
        case WallType::derived_equivalence: return "derived-equivalence";
    }
    return "";
}

WallType wall_type(const GmSpace& space, int component_index) {
    const auto comps = fixed_components(space);
    if (component_index < 0 || component_index >= static_cast<int>(comps.size())) {
        throw std::invalid_argument("no fixed component with index " + std::to_string(component_index));
    }
    const int cw = comps[component_index].canonical_weight;
    if (cw > 0) return WallType::grows_up;
    if (cw < 0) return WallType::grows_down;
    return WallType::derived_equivalence;
}

std::vector<ComponentInterval> window_bounds(const GmSpace& space, const WindowSpec& spec) {
    const auto comps = fixed_components(space);
    if (spec.theta.size() != comps.size()) {
        throw std::invalid_argument("need one theta per fixed component ("
                                    + std::to_string(comps.size()) + " components)");
    }
    for (const auto& t : spec.theta) {
        if (is_integer(t)) {
            throw std::invalid_argument("theta = " + rational_to_string(t)
                                        + " is integral; window bounds need non-integral theta");
        }
    }
    for (const auto& z : comps) {
        if (Rational(z.w) == spec.a) {
            throw std::invalid_argument("a = " + rational_to_string(spec.a)
                                        + " is a critical value; window bounds need a chamber value");
        }
    }
    std::vector<ComponentInterval> out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const long long eta = Rational(comps[i].w) < spec.a ? comps[i].eta_plus : comps[i].eta_minus;
        out.push_back({comps[i].index, spec.theta[i], spec.theta[i] + Rational(eta)});
    }
    return out;
}

namespace {

void multi_add_term(MultiPoly& p, const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p[e] = c;
    } else if ((it->second += c) == 0) {
        p.erase(it);
    }
}

MultiPoly multi_mul(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            Exponents e(ea.size());
            for (std::size_t k = 0; k < ea.size(); ++k) e[k] = ea[k] + eb[k];
            multi_add_term(r, e, ca * cb);
        }
    }
    return r;
}

int monomial_weight(const Exponents& e, const std::vector<int>& degrees) {
    int w = 0;
    for (std::size_t k = 0; k < e.size(); ++k) w += e[k] * degrees[k];
    return w;
}

}  // namespace

EquivariantComplex::EquivariantComplex(std::vector<int> coordinate_degrees, int min_degree,
                                       std::vector<std::vector<int>> term_weights,
                                       std::vector<std::vector<std::vector<MultiPoly>>> diffs)
    : coord_degrees_(std::move(coordinate_degrees)),
      min_degree_(min_degree),
      term_weights_(std::move(term_weights)),
      diffs_(std::move(diffs)) {
    if (term_weights_.empty()) {
        if (!diffs_.empty()) throw std::invalid_argument("differentials without terms");
        return;
    }
    if (diffs_.size() + 1 != term_weights_.size()) {
        throw std::invalid_argument("a complex with n terms needs n-1 differentials");
    }
    const std::size_t nvars = coord_degrees_.size();
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        const auto& src = term_weights_[k];
        const auto& tgt = term_weights_[k + 1];
        const auto& mat = diffs_[k];
        if (mat.size() != tgt.size()) throw std::invalid_argument("matrix rows do not match target rank");
        for (std::size_t i = 0; i < mat.size(); ++i) {
            if (mat[i].size() != src.size()) {
                throw std::invalid_argument("matrix columns do not match source rank");
            }
            for (std::size_t j = 0; j < src.size(); ++j) {
                for (const auto& [e, c] : mat[i][j]) {
                    if (e.size() != nvars) {
                        throw std::invalid_argument("monomial exponent arity mismatch");
                    }
                    for (int exp : e) {
                        if (exp < 0) throw std::invalid_argument("negative exponent in a differential");
                    }
                    if (monomial_weight(e, coord_degrees_) != src[j] - tgt[i]) {
                        throw std::invalid_argument("non-equivariant differential entry");
                    }
                }
            }
        }
    }
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
        const auto& A = diffs_[k + 1];
        const auto& B = diffs_[k];
        for (std::size_t i = 0; i < term_weights_[k + 2].size(); ++i) {
            for (std::size_t j = 0; j < term_weights_[k].size(); ++j) {
                MultiPoly s;
                for (std::size_t t = 0; t < term_weights_[k + 1].size(); ++t) {
                    for (const auto& [e, c] : multi_mul(A[i][t], B[t][j])) multi_add_term(s, e, c);
                }
                if (!s.empty()) throw std::invalid_argument("d o d != 0");
            }
        }
    }
}

std::vector<int> EquivariantComplex::term_weights(int k) const {
    const int idx = k - min_degree_;
    if (idx < 0 || idx >= static_cast<int>(term_weights_.size())) return {};
    return term_weights_[idx];
}

RationalMatrix EquivariantComplex::differential_at_origin(int k) const {
    const auto src = term_weights(k);
    const auto tgt = term_weights(k + 1);
    RationalMatrix m(tgt.size(), std::vector<Rational>(src.size(), Rational(0)));
    const int idx = k - min_degree_;
    if (idx < 0 || idx >= static_cast<int>(diffs_.size())) return m;
    const Exponents zero(coord_degrees_.size(), 0);
    for (std::size_t i = 0; i < tgt.size(); ++i) {
        for (std::size_t j = 0; j < src.size(); ++j) {
            auto it = diffs_[idx][i][j].find(zero);
            if (it != diffs_[idx][i][j].end()) m[i][j] = it->second;
        }
    }
    return m;
}

EquivariantComplex EquivariantComplex::koszul_of_coordinate(std::vector<int> coordinate_degrees,
                                                            int which) {
    const int n = static_cast<int>(coordinate_degrees.size());
    if (which < 0 || which >= n) throw std::invalid_argument("no such coordinate");
    const int c = coordinate_degrees[which];
    Exponents e(n, 0);
    e[which] = 1;
    MultiPoly entry;
    entry[e] = Rational(1);
    return EquivariantComplex(std::move(coordinate_degrees), -1, {{c}, {0}}, {{{entry}}});
}

EquivariantComplex EquivariantComplex::twisted_structure_sheaf(std::vector<int> coordinate_degrees,
                                                               int m) {
    return EquivariantComplex(std::move(coordinate_degrees), 0, {{m}}, {});
}

CohomologyTable restrict_to_fixed(const GmSpace& space, const EquivariantComplex& E,
                                  int component_index) {
    if (space.kind != SpaceKind::affine) {
        throw std::invalid_argument("complex restriction is supported on linear models only; "
                                    "use twist classes on projective spaces");
    }
    if (component_index != 0) throw std::invalid_argument("affine spaces have one fixed component");
    if (E.coordinate_degrees() != space.weights) {
        throw std::invalid_argument("complex coordinate degrees do not match the space");
    }
    CohomologyTable table;
    if (E.empty()) {
        table.weight_lo = 0;
        table.weight_hi = -1;
        return table;
    }
    int lo = 0, hi = 0;
    bool first = true;
    for (int k = E.min_degree(); k <= E.max_degree(); ++k) {
        for (int w : E.term_weights(k)) {
            if (first || w < lo) lo = w;
            if (first || w > hi) hi = w;
            first = false;
        }
    }
    table.weight_lo = lo;
    table.weight_hi = hi;

    for (int w = lo; w <= hi; ++w) {
        for (int k = E.min_degree(); k <= E.max_degree(); ++k) {
            const auto weights = E.term_weights(k);
            std::vector<int> here;
            for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
                if (weights[i] == w) here.push_back(i);
            }
            if (here.empty()) continue;
            auto slice = [&](int kk) {
                const auto sw = E.term_weights(kk);
                const auto tw = E.term_weights(kk + 1);
                const auto m = E.differential_at_origin(kk);
                std::vector<int> sc, tr;
                for (int j = 0; j < static_cast<int>(sw.size()); ++j) {
                    if (sw[j] == w) sc.push_back(j);
                }
                for (int i = 0; i < static_cast<int>(tw.size()); ++i) {
                    if (tw[i] == w) tr.push_back(i);
                }
                RationalMatrix s(tr.size(), std::vector<Rational>(sc.size(), Rational(0)));
                for (std::size_t i = 0; i < tr.size(); ++i) {
                    for (std::size_t j = 0; j < sc.size(); ++j) s[i][j] = m[tr[i]][sc[j]];
                }
                return s;
            };
            const long long h = static_cast<long long>(here.size()) - rational_rank(slice(k))
                                - rational_rank(slice(k - 1));
            if (h != 0) table.dims[{k, w}] = h;
        }
    }
    return table;
}

MembershipReport window_membership(const GmSpace& space, const EquivariantComplex& E,
                                   const WindowSpec& spec) {
    const auto bounds = window_bounds(space, spec);
    const CohomologyTable restricted = restrict_to_fixed(space, E, 0);
    MembershipReport report;
    report.member = true;
    ComponentMembership cm;
    cm.component = 0;
    cm.lo = bounds[0].lo;
    cm.hi = bounds[0].hi;
    std::map<int, long long> by_weight;
    for (const auto& [key, d] : restricted.dims) by_weight[key.second] += d;
    for (const auto& [w, d] : by_weight) {
        cm.weights.push_back({w, d});
        if (Rational(w) < cm.lo || Rational(w) > cm.hi) {
            cm.violations.push_back(w);
            report.member = false;
        }
    }
    report.components.push_back(std::move(cm));
    return report;
}

}  // namespace gmwin
