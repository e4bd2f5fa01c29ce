#include "gmwin/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gmwin/errors.hpp"

namespace gmwin {

LaurentPolynomial::LaurentPolynomial(const std::map<int, Coeff>& coefficients) {
    for (const auto& [w, c] : coefficients) {
        if (c != 0) coeffs_[w] = c;
    }
}

LaurentPolynomial LaurentPolynomial::monomial(int weight, Coeff c) {
    LaurentPolynomial p;
    if (c != 0) p.coeffs_[weight] = c;
    return p;
}

LaurentPolynomial::Coeff LaurentPolynomial::coefficient(int weight) const {
    auto it = coeffs_.find(weight);
    return it == coeffs_.end() ? 0 : it->second;
}

std::optional<int> LaurentPolynomial::min_weight() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

std::optional<int> LaurentPolynomial::max_weight() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.rbegin()->first;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial r;
    for (const auto& [w, c] : coeffs_) r.coeffs_[w] = -c;
    return r;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
    for (const auto& [w, c] : other.coeffs_) {
        auto it = coeffs_.find(w);
        if (it == coeffs_.end()) {
            coeffs_[w] = c;
        } else if ((it->second += c) == 0) {
            coeffs_.erase(it);
        }
    }
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
    return *this += -other;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial r;
    for (const auto& [wa, ca] : a.coeffs_) {
        for (const auto& [wb, cb] : b.coeffs_) {
            auto& slot = r.coeffs_[wa + wb];
            slot += ca * cb;
            if (slot == 0) r.coeffs_.erase(wa + wb);
        }
    }
    return r;
}

namespace {

void append_term(std::ostringstream& out, bool& first, int w, std::int64_t c) {
    if (!first) out << ' ';
    first = false;
    out << (c < 0 ? '-' : '+') << (c < 0 ? -c : c) << "*t^" << w;
}

}  // namespace

std::string LaurentPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        append_term(out, first, it->first, it->second);
    }
    return out.str();
}

std::string direction_name(Direction d) {
    return d == Direction::bounded_above ? "bounded-above" : "bounded-below";
}

LaurentSeries::LaurentSeries(Direction dir, int truncation_order, const std::map<int, Coeff>& coefficients)
    : dir_(dir), truncation_(truncation_order) {
    for (const auto& [w, c] : coefficients) {
        if (c == 0) continue;
        if (!represents(w)) {
            throw std::invalid_argument("series coefficient at weight " + std::to_string(w)
                                        + " lies beyond the truncation order "
                                        + std::to_string(truncation_));
        }
        coeffs_[w] = c;
    }
}

LaurentSeries LaurentSeries::from_polynomial(const LaurentPolynomial& p, Direction dir,
                                             int truncation_order) {
    LaurentSeries s(dir, truncation_order);
    for (const auto& [w, c] : p.coefficients()) {
        if (s.represents(w)) s.coeffs_[w] = c;
    }
    return s;
}

bool LaurentSeries::represents(int weight) const {
    return dir_ == Direction::bounded_above ? weight > truncation_ : weight < truncation_;
}

LaurentSeries::Coeff LaurentSeries::coefficient(int weight) const {
    if (!represents(weight)) {
        throw std::invalid_argument("weight " + std::to_string(weight)
                                    + " is beyond the truncation order "
                                    + std::to_string(truncation_) + " of a "
                                    + direction_name(dir_) + " series");
    }
    auto it = coeffs_.find(weight);
    return it == coeffs_.end() ? 0 : it->second;
}

void LaurentSeries::drop_unrepresented() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (!represents(it->first) || it->second == 0) {
            it = coeffs_.erase(it);
        } else {
            ++it;
        }
    }
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& other) {
    if (dir_ != other.dir_) {
        throw std::invalid_argument("cannot combine series of mismatched direction");
    }
    truncation_ = dir_ == Direction::bounded_above ? std::max(truncation_, other.truncation_)
                                                   : std::min(truncation_, other.truncation_);
    for (const auto& [w, c] : other.coeffs_) coeffs_[w] += c;
    drop_unrepresented();
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& other) {
    LaurentSeries neg = other;
    for (auto& [w, c] : neg.coeffs_) c = -c;
    return *this += neg;
}

namespace {

// Extreme represented weight used for truncation bookkeeping: the support
// bound when the series is nonzero, its truncation otherwise.
int support_bound(const LaurentSeries& s) {
    if (s.coefficients().empty()) return s.truncation_order();
    return s.direction() == Direction::bounded_above ? s.coefficients().rbegin()->first
                                                     : s.coefficients().begin()->first;
}

}  // namespace

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.direction() != b.direction()) {
        throw std::invalid_argument("cannot combine series of mismatched direction");
    }
    const bool above = a.direction() == Direction::bounded_above;
    const int ka = a.truncation_order() + support_bound(b);
    const int kb = b.truncation_order() + support_bound(a);
    const int k = above ? std::max(ka, kb) : std::min(ka, kb);
    LaurentSeries r(a.direction(), k);
    std::map<int, LaurentSeries::Coeff> acc;
    for (const auto& [wa, ca] : a.coefficients()) {
        for (const auto& [wb, cb] : b.coefficients()) {
            acc[wa + wb] += ca * cb;
        }
    }
    for (const auto& [w, c] : acc) {
        if (c != 0 && r.represents(w)) r += LaurentSeries(a.direction(), k, {{w, c}});
    }
    return r;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentPolynomial& b) {
    const bool above = a.direction() == Direction::bounded_above;
    if (b.is_zero()) return LaurentSeries(a.direction(), a.truncation_order());
    const int shift = above ? *b.max_weight() : *b.min_weight();
    LaurentSeries r(a.direction(), a.truncation_order() + shift);
    std::map<int, LaurentSeries::Coeff> acc;
    for (const auto& [wa, ca] : a.coefficients()) {
        for (const auto& [wb, cb] : b.coefficients()) {
            acc[wa + wb] += ca * cb;
        }
    }
    for (const auto& [w, c] : acc) {
        if (c != 0 && r.represents(w)) r += LaurentSeries(r.direction(), r.truncation_order(), {{w, c}});
    }
    return r;
}

bool LaurentSeries::agree(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.dir_ != b.dir_) return false;
    const bool above = a.dir_ == Direction::bounded_above;
    const int k = above ? std::max(a.truncation_, b.truncation_) : std::min(a.truncation_, b.truncation_);
    for (const auto& [w, c] : a.coeffs_) {
        if ((above ? w > k : w < k) && b.coefficient(w) != c) return false;
    }
    for (const auto& [w, c] : b.coeffs_) {
        if ((above ? w > k : w < k) && a.coefficient(w) != c) return false;
    }
    return true;
}

std::string LaurentSeries::to_string() const {
    std::ostringstream out;
    bool first = true;
    if (dir_ == Direction::bounded_above) {
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            append_term(out, first, it->first, it->second);
        }
    } else {
        for (const auto& [w, c] : coeffs_) append_term(out, first, w, c);
    }
    if (!first) out << ' ';
    out << "+ O(t^" << truncation_ << ")";
    return out.str();
}

WeightList::WeightList(std::vector<int> weights) : weights_(std::move(weights)) {
    for (int w : weights_) {
        if (w == 0) throw std::invalid_argument("weight lists must not contain 0");
    }
    std::sort(weights_.begin(), weights_.end());
}

LaurentPolynomial euler_class(const WeightList& normal_weights) {
    LaurentPolynomial e = LaurentPolynomial::one();
    for (int c : normal_weights.weights()) {
        e = e * (LaurentPolynomial::one() - LaurentPolynomial::monomial(-c));
    }
    return e;
}

namespace {

// Geometric expansion of 1/(1 - t^beta) pointing in the requested direction,
// with exact bookkeeping of the monomial unit when the factor has to be
// rewritten as -t^beta (1 - t^{-beta}).
LaurentSeries invert_factor(int beta, Direction dir, int truncation) {
    const bool above = dir == Direction::bounded_above;
    const bool natural = above ? beta < 0 : beta > 0;
    LaurentSeries s(dir, truncation);
    if (natural) {
        // 1 + t^beta + t^{2 beta} + ...
        for (long long w = 0; s.represents(static_cast<int>(w)); w += beta) {
            s += LaurentSeries(dir, truncation, {{static_cast<int>(w), 1}});
        }
    } else {
        // -(t^{-beta} + t^{-2 beta} + ...)
        for (long long w = -beta; s.represents(static_cast<int>(w)); w += -beta) {
            s += LaurentSeries(dir, truncation, {{static_cast<int>(w), -1}});
        }
    }
    return s;
}

int inverse_support_bound(const WeightList& n, Direction dir) {
    // Extreme weight of 1/e(n): each factor contributes 0 when its expansion
    // starts at 1 and -beta = c when it starts at the rewritten monomial.
    int bound = 0;
    for (int c : n.weights()) {
        const int beta = -c;
        if (dir == Direction::bounded_above && beta > 0) bound += -beta;
        if (dir == Direction::bounded_below && beta < 0) bound += -beta;
    }
    return bound;
}

}  // namespace

int default_inversion_order(const WeightList& normal_weights, Direction dir, int extra) {
    const int bound = inverse_support_bound(normal_weights, dir);
    return dir == Direction::bounded_above ? bound - extra : bound + extra;
}

LaurentSeries invert_euler(const WeightList& normal_weights, Direction dir, int truncation_order) {
    const bool above = dir == Direction::bounded_above;
    const int bound = inverse_support_bound(normal_weights, dir);
    if (above ? truncation_order >= bound : truncation_order <= bound) {
        throw std::invalid_argument("truncation order " + std::to_string(truncation_order)
                                    + " is not on the representable side of the "
                                    + direction_name(dir) + " inverse (extreme weight "
                                    + std::to_string(bound) + ")");
    }
    LaurentSeries result = LaurentSeries::from_polynomial(LaurentPolynomial::one(), dir, truncation_order);
    if (!normal_weights.empty()) {
        // Per-factor truncation chosen so that the final product is exact at
        // truncation_order regardless of multiplication order.
        std::vector<int> factor_bound;
        int total = 0;
        for (int c : normal_weights.weights()) {
            const int beta = -c;
            const bool natural = above ? beta < 0 : beta > 0;
            factor_bound.push_back(natural ? 0 : -beta);
            total += factor_bound.back();
        }
        std::size_t idx = 0;
        for (int c : normal_weights.weights()) {
            const int beta = -c;
            const int k = truncation_order - total + factor_bound[idx++];
            result = result * invert_factor(beta, dir, k);
        }
    }
    // Exactness certificate: e(n) * result must be 1 on the represented window.
    const LaurentSeries check = result * euler_class(normal_weights);
    const LaurentSeries one = LaurentSeries::from_polynomial(LaurentPolynomial::one(), dir,
                                                             check.truncation_order());
    if (!LaurentSeries::agree(check, one)) {
        throw certification_error("inverted Euler class failed to multiply back to 1");
    }
    return result;
}

std::int64_t weight_coefficient(const LaurentPolynomial& p, int weight) {
    return p.coefficient(weight);
}

std::int64_t weight_coefficient(const LaurentSeries& s, int weight) {
    return s.coefficient(weight);
}

}  // namespace gmwin
