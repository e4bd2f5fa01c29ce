#include "gmwin/graded.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gmwin/errors.hpp"

namespace gmwin {

GradedFreeModule GradedFreeModule::twist(int m) const {
    GradedFreeModule t = *this;
    for (int& d : t.generator_degrees) d -= m;
    return t;
}

EquivariantMatrix::EquivariantMatrix(GradedFreeModule source, GradedFreeModule target,
                                     RationalMatrix coefficients)
    : source_(std::move(source)), target_(std::move(target)), coeff_(std::move(coefficients)) {
    if (static_cast<int>(coeff_.size()) != target_.rank()) {
        throw std::invalid_argument("matrix row count does not match the target rank");
    }
    for (const auto& row : coeff_) {
        if (static_cast<int>(row.size()) != source_.rank()) {
            throw std::invalid_argument("matrix column count does not match the source rank");
        }
    }
    for (int i = 0; i < target_.rank(); ++i) {
        for (int j = 0; j < source_.rank(); ++j) {
            if (coeff_[i][j] != 0 && exponent(i, j) < 0) {
                throw std::invalid_argument("non-equivariant entry: generator degrees force x^"
                                            + std::to_string(exponent(i, j)));
            }
        }
    }
}

int EquivariantMatrix::exponent(int i, int j) const {
    return source_.generator_degrees[j] - target_.generator_degrees[i];
}

namespace {

RationalMatrix zero_matrix(int rows, int cols) {
    return RationalMatrix(rows, std::vector<Rational>(cols, Rational(0)));
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    const int n = static_cast<int>(a.size());
    const int k = n ? static_cast<int>(a[0].size()) : 0;
    const int m = k && !b.empty() ? static_cast<int>(b[0].size()) : 0;
    RationalMatrix r = zero_matrix(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            Rational s(0);
            for (int t = 0; t < k; ++t) s += a[i][t] * b[t][j];
            r[i][j] = s;
        }
    }
    return r;
}

bool is_zero(const RationalMatrix& a) {
    for (const auto& row : a) {
        for (const auto& c : row) {
            if (c != 0) return false;
        }
    }
    return true;
}

}  // namespace

GradedComplex::GradedComplex(int min_degree, std::vector<GradedFreeModule> terms,
                             std::vector<RationalMatrix> diffs)
    : min_degree_(min_degree), terms_(std::move(terms)), diffs_(std::move(diffs)) {
    if (terms_.empty()) {
        if (!diffs_.empty()) throw std::invalid_argument("differentials without terms");
        return;
    }
    if (diffs_.size() + 1 != terms_.size()) {
        throw std::invalid_argument("a complex with n terms needs n-1 differentials");
    }
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        // Validates shapes and equivariance of every entry.
        EquivariantMatrix check(terms_[k], terms_[k + 1], diffs_[k]);
    }
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
        if (!is_zero(multiply(diffs_[k + 1], diffs_[k]))) {
            throw std::invalid_argument("d o d != 0 between degrees "
                                        + std::to_string(min_degree_ + static_cast<int>(k))
                                        + " and " + std::to_string(min_degree_ + static_cast<int>(k) + 2));
        }
    }
}

GradedFreeModule GradedComplex::term(int k) const {
    const int idx = k - min_degree_;
    if (idx < 0 || idx >= static_cast<int>(terms_.size())) return GradedFreeModule{};
    return terms_[idx];
}

RationalMatrix GradedComplex::differential(int k) const {
    const int idx = k - min_degree_;
    if (idx < 0 || idx >= static_cast<int>(diffs_.size())) {
        return zero_matrix(term(k + 1).rank(), term(k).rank());
    }
    return diffs_[idx];
}

std::optional<int> GradedComplex::min_generator_degree() const {
    std::optional<int> m;
    for (const auto& t : terms_) {
        for (int d : t.generator_degrees) {
            if (!m || d < *m) m = d;
        }
    }
    return m;
}

std::optional<int> GradedComplex::max_generator_degree() const {
    std::optional<int> m;
    for (const auto& t : terms_) {
        for (int d : t.generator_degrees) {
            if (!m || d > *m) m = d;
        }
    }
    return m;
}

int GradedComplex::generator_degree_spread() const {
    auto lo = min_generator_degree();
    auto hi = max_generator_degree();
    return lo && hi ? *hi - *lo : 0;
}

long long GradedComplex::generic_euler_characteristic() const {
    long long chi = 0;
    for (int k = min_degree(); k <= max_degree(); ++k) {
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(term(k).rank());
    }
    return chi;
}

GradedComplex GradedComplex::line_bundle(int n) {
    return GradedComplex(0, {GradedFreeModule::line(n)}, {});
}

GradedComplex GradedComplex::torsion_module(int j, int d) {
    if (j <= 0) throw std::invalid_argument("torsion modules need j >= 1");
    GradedFreeModule src{{d + j}};
    GradedFreeModule tgt{{d}};
    return GradedComplex(-1, {src, tgt}, {{{Rational(1)}}});
}

GradedComplex GradedComplex::shift(int s) const {
    GradedComplex r = *this;
    r.min_degree_ = min_degree_ - s;
    if (s % 2 != 0) {
        for (auto& mat : r.diffs_) {
            for (auto& row : mat) {
                for (auto& c : row) c = -c;
            }
        }
    }
    return r;
}

GradedComplex koszul_truncation(int j) {
    if (j <= 0) throw std::invalid_argument("koszul truncations need j >= 1");
    return GradedComplex(0, {GradedFreeModule{{0}}, GradedFreeModule{{-j}}}, {{{Rational(1)}}});
}

GradedComplex k_point(int j) { return GradedComplex::torsion_module(1, -j); }

GradedComplex tensor(const GradedComplex& F, const GradedComplex& G) {
    if (F.empty() || G.empty()) return GradedComplex();
    const int lo = F.min_degree() + G.min_degree();
    const int hi = F.max_degree() + G.max_degree();

    struct Gen {
        int p;
        int i;
        int j;
    };
    std::vector<std::vector<Gen>> gens(hi - lo + 1);
    std::vector<GradedFreeModule> terms(hi - lo + 1);
    for (int n = lo; n <= hi; ++n) {
        for (int p = F.min_degree(); p <= F.max_degree(); ++p) {
            const int q = n - p;
            if (q < G.min_degree() || q > G.max_degree()) continue;
            const auto fp = F.term(p);
            const auto gq = G.term(q);
            for (int i = 0; i < fp.rank(); ++i) {
                for (int j = 0; j < gq.rank(); ++j) {
                    gens[n - lo].push_back({p, i, j});
                    terms[n - lo].generator_degrees.push_back(fp.generator_degrees[i]
                                                              + gq.generator_degrees[j]);
                }
            }
        }
    }

    auto index_of = [&](int n, int p, int i, int j) {
        const auto& list = gens[n - lo];
        for (std::size_t t = 0; t < list.size(); ++t) {
            if (list[t].p == p && list[t].i == i && list[t].j == j) return static_cast<int>(t);
        }
        throw std::logic_error("tensor generator lookup failed");
    };

    std::vector<RationalMatrix> diffs;
    for (int n = lo; n < hi; ++n) {
        RationalMatrix d = zero_matrix(terms[n + 1 - lo].rank(), terms[n - lo].rank());
        const auto& src = gens[n - lo];
        for (std::size_t col = 0; col < src.size(); ++col) {
            const auto [p, i, j] = src[col];
            const int q = n - p;
            const auto dF = F.differential(p);
            for (int i2 = 0; i2 < F.term(p + 1).rank(); ++i2) {
                if (dF[i2][i] == 0) continue;
                d[index_of(n + 1, p + 1, i2, j)][col] += dF[i2][i];
            }
            const auto dG = G.differential(q);
            const Rational sign = (p % 2 == 0) ? Rational(1) : Rational(-1);
            for (int j2 = 0; j2 < G.term(q + 1).rank(); ++j2) {
                if (dG[j2][j] == 0) continue;
                d[index_of(n + 1, p, i, j2)][col] += sign * dG[j2][j];
            }
        }
        diffs.push_back(std::move(d));
    }
    return GradedComplex(lo, std::move(terms), std::move(diffs));
}

GradedComplex local_cohomology_level(const GradedComplex& F, int j) {
    if (j <= 0) throw std::invalid_argument("local cohomology levels need j >= 1");
    if (F.empty()) return GradedComplex();
    return tensor(F, koszul_truncation(j));
}

GradedComplex hom_complex(const GradedComplex& E, const GradedComplex& F) {
    if (E.empty() || F.empty()) return GradedComplex();
    const int lo = F.min_degree() - E.max_degree();
    const int hi = F.max_degree() - E.min_degree();

    struct Gen {
        int p;
        int a;
        int b;
    };
    std::vector<std::vector<Gen>> gens(hi - lo + 1);
    std::vector<GradedFreeModule> terms(hi - lo + 1);
    for (int n = lo; n <= hi; ++n) {
        for (int p = E.min_degree(); p <= E.max_degree(); ++p) {
            const int q = p + n;
            if (q < F.min_degree() || q > F.max_degree()) continue;
            const auto ep = E.term(p);
            const auto fq = F.term(q);
            for (int a = 0; a < ep.rank(); ++a) {
                for (int b = 0; b < fq.rank(); ++b) {
                    gens[n - lo].push_back({p, a, b});
                    terms[n - lo].generator_degrees.push_back(fq.generator_degrees[b]
                                                              - ep.generator_degrees[a]);
                }
            }
        }
    }

    auto index_of = [&](int n, int p, int a, int b) {
        const auto& list = gens[n - lo];
        for (std::size_t t = 0; t < list.size(); ++t) {
            if (list[t].p == p && list[t].a == a && list[t].b == b) return static_cast<int>(t);
        }
        throw std::logic_error("hom generator lookup failed");
    };

    std::vector<RationalMatrix> diffs;
    for (int n = lo; n < hi; ++n) {
        RationalMatrix d = zero_matrix(terms[n + 1 - lo].rank(), terms[n - lo].rank());
        const auto& src = gens[n - lo];
        const Rational sign = (n % 2 == 0) ? Rational(-1) : Rational(1);  // -(-1)^n
        for (std::size_t col = 0; col < src.size(); ++col) {
            const auto [p, a, b] = src[col];
            const int q = p + n;
            const auto dF = F.differential(q);
            for (int b2 = 0; b2 < F.term(q + 1).rank(); ++b2) {
                if (dF[b2][b] == 0) continue;
                d[index_of(n + 1, p, a, b2)][col] += dF[b2][b];
            }
            const auto dE = E.differential(p - 1);
            for (int a2 = 0; a2 < E.term(p - 1).rank(); ++a2) {
                if (dE[a][a2] == 0) continue;
                d[index_of(n + 1, p - 1, a2, b)][col] += sign * dE[a][a2];
            }
        }
        diffs.push_back(std::move(d));
    }
    return GradedComplex(lo, std::move(terms), std::move(diffs));
}

long long CohomologyTable::dim(int degree, int weight) const {
    auto it = dims.find({degree, weight});
    return it == dims.end() ? 0 : it->second;
}

long long CohomologyTable::euler_characteristic(int weight) const {
    long long chi = 0;
    for (const auto& [key, d] : dims) {
        if (key.second == weight) chi += (key.first % 2 == 0 ? d : -d);
    }
    return chi;
}

CohomologyTable CohomologyTable::restricted(int lo, int hi) const {
    CohomologyTable r;
    r.weight_lo = lo;
    r.weight_hi = hi;
    for (const auto& [key, d] : dims) {
        if (key.second >= lo && key.second <= hi) r.dims[key] = d;
    }
    return r;
}

std::string CohomologyTable::to_string() const {
    std::ostringstream out;
    out << "weight window [" << weight_lo << ", " << weight_hi << "]\n";
    if (dims.empty()) {
        out << "(zero)\n";
        return out.str();
    }
    out << "degree weight dim\n";
    for (const auto& [key, d] : dims) {
        out << key.first << " " << key.second << " " << d << "\n";
    }
    return out.str();
}

WeightWindow default_window(const GradedComplex& F) {
    if (F.empty()) return {0, -1};
    int max_rank = 0;
    for (int k = F.min_degree(); k <= F.max_degree(); ++k) {
        max_rank = std::max(max_rank, F.term(k).rank());
    }
    return {*F.min_generator_degree() - max_rank - 2, *F.max_generator_degree() + max_rank + 2};
}

int rational_rank(RationalMatrix m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i) {
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[pivot], m[row]);
        for (int i = row + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            const Rational f = m[i][col] / m[row][col];
            for (int j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace {

// Weight-w piece of the differential term(k) -> term(k+1): generators of
// degree <= w span the weight-w slice of a free module.
RationalMatrix weight_slice(const GradedComplex& F, int k, int w) {
    const auto src = F.term(k);
    const auto tgt = F.term(k + 1);
    const auto d = F.differential(k);
    std::vector<int> sc, tr;
    for (int j = 0; j < src.rank(); ++j) {
        if (src.generator_degrees[j] <= w) sc.push_back(j);
    }
    for (int i = 0; i < tgt.rank(); ++i) {
        if (tgt.generator_degrees[i] <= w) tr.push_back(i);
    }
    RationalMatrix m = zero_matrix(static_cast<int>(tr.size()), static_cast<int>(sc.size()));
    for (std::size_t i = 0; i < tr.size(); ++i) {
        for (std::size_t j = 0; j < sc.size(); ++j) {
            m[i][j] = d[tr[i]][sc[j]];
        }
    }
    return m;
}

long long weight_dim(const GradedFreeModule& t, int w) {
    long long n = 0;
    for (int d : t.generator_degrees) {
        if (d <= w) ++n;
    }
    return n;
}

}  // namespace

CohomologyTable cohomology_in_window(const GradedComplex& F, int weight_lo, int weight_hi) {
    if (weight_lo > weight_hi) {
        throw std::invalid_argument("weight window is empty");
    }
    CohomologyTable table;
    table.weight_lo = weight_lo;
    table.weight_hi = weight_hi;
    if (F.empty()) return table;
    for (int w = weight_lo; w <= weight_hi; ++w) {
        for (int k = F.min_degree(); k <= F.max_degree(); ++k) {
            const long long n = weight_dim(F.term(k), w);
            if (n == 0) continue;
            const long long rk_out = rational_rank(weight_slice(F, k, w));
            const long long rk_in = rational_rank(weight_slice(F, k - 1, w));
            const long long h = n - rk_out - rk_in;
            if (h != 0) table.dims[{k, w}] = h;
        }
    }
    return table;
}

namespace {

int stability_limit(const GradedComplex& F, const StabilityOptions& opts, int needed) {
    const int fallback = 2 * F.generator_degree_spread() + 16;
    const int jmax = opts.j_max.value_or(std::max(fallback, needed + 2));
    return jmax;
}

}  // namespace

CohomologyTable restricted_local_cohomology(const GradedComplex& F, int w, StabilityOptions opts) {
    CohomologyTable empty;
    empty.weight_lo = w;
    empty.weight_hi = w - 1;
    if (F.empty()) return empty;
    const int dmax = *F.max_generator_degree();
    // Every stage F (x) koszul_truncation(j) has weights <= dmax - 1, so the
    // window below is complete for the whole ind-system.
    if (w > dmax - 1) return empty;
    const int needed = std::max(1, dmax - w);
    const int jmax = stability_limit(F, opts, needed);
    if (needed + 1 > jmax) {
        throw certification_error("restricted local cohomology needs stages up to j = "
                                  + std::to_string(needed + 1) + " but j_max = "
                                  + std::to_string(jmax));
    }
    auto stage = [&](int j) {
        return cohomology_in_window(local_cohomology_level(F, j), w, dmax - 1);
    };
    CohomologyTable current = stage(needed);
    for (int j = needed; j + 1 <= jmax; ++j) {
        CohomologyTable next = stage(j + 1);
        if (next == current) return current;
        current = std::move(next);
    }
    throw certification_error("restricted local cohomology did not stabilize by j_max = "
                              + std::to_string(jmax));
}

CohomologyTable beta_lower(const GradedComplex& F, int w, StabilityOptions opts) {
    CohomologyTable empty;
    empty.weight_lo = w;
    empty.weight_hi = w - 1;
    if (F.empty()) return empty;
    const int dmin = *F.min_generator_degree();
    // Stages F (x) k[x]/(x^j) have weights >= dmin.
    if (dmin > w - 1) return empty;
    empty.weight_lo = dmin;
    const int needed = std::max(1, w - dmin);
    const int jmax = stability_limit(F, opts, needed);
    if (needed + 1 > jmax) {
        throw certification_error("the pro-system below the cut needs stages up to j = "
                                  + std::to_string(needed + 1) + " but j_max = "
                                  + std::to_string(jmax));
    }
    auto stage = [&](int j) {
        return cohomology_in_window(tensor(F, GradedComplex::torsion_module(j, 0)), dmin, w - 1);
    };
    CohomologyTable current = stage(needed);
    for (int j = needed; j + 1 <= jmax; ++j) {
        CohomologyTable next = stage(j + 1);
        if (next == current) return current;
        current = std::move(next);
    }
    throw certification_error("the pro-system below the cut did not stabilize by j_max = "
                              + std::to_string(jmax));
}

CohomologyTable rhom_in_window(const GradedComplex& E, const GradedComplex& F, int weight_lo,
                               int weight_hi) {
    const GradedComplex H = hom_complex(E, F);
    return cohomology_in_window(H, weight_lo, weight_hi);
}

CohomologyTable rhom(const GradedComplex& E, const GradedComplex& F, bool invariants_only) {
    const GradedComplex H = hom_complex(E, F);
    if (H.empty()) {
        CohomologyTable t;
        t.weight_lo = 0;
        t.weight_hi = invariants_only ? 0 : -1;
        return t;
    }
    if (invariants_only) return cohomology_in_window(H, 0, 0);
    const WeightWindow win = default_window(H);
    return cohomology_in_window(H, win.lo, win.hi);
}

SodDecomposition sod_decompose(const GradedComplex& F, int w, StabilityOptions opts) {
    SodDecomposition out;
    out.upper = restricted_local_cohomology(F, w, opts);
    out.lower = beta_lower(F, w, opts);
    out.middle.weight_lo = w;
    if (F.empty()) {
        out.middle.weight_hi = w - 1;
        return out;
    }
    const int hi = std::max(*F.max_generator_degree(), w) + 1;
    const int lo = std::min(*F.min_generator_degree(), w) - 1;
    out.middle.weight_hi = hi;
    const CohomologyTable full = cohomology_in_window(F, lo, hi);
    const long long c = F.generic_euler_characteristic();
    out.middle_multiplicity = c;
    // The remainder must be c times the weight pattern of the rank-1 free
    // module generated in degree w, and nothing below the cut.
    for (int v = lo; v <= hi; ++v) {
        const long long rem = full.euler_characteristic(v) - out.lower.euler_characteristic(v)
                              - out.upper.euler_characteristic(v);
        const long long expected = v >= w ? c : 0;
        if (rem != expected) {
            throw certification_error("middle factor is not a multiple of the window generator: "
                                      "weight " + std::to_string(v) + " has remainder "
                                      + std::to_string(rem) + ", expected "
                                      + std::to_string(expected));
        }
    }
    if (c != 0) {
        const int degree = c >= 0 ? 0 : 1;
        for (int v = w; v <= hi; ++v) out.middle.dims[{degree, v}] = c >= 0 ? c : -c;
    }
    return out;
}

}  // namespace gmwin
