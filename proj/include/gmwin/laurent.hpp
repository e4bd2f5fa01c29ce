#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gmwin {

/// Exact Laurent polynomial over the integers in one character variable t.
/// The character of the weight-m representation is t^m; the variable
/// u = t^{-1} of the completed ring is the class of the weight -1 line.
class LaurentPolynomial {
public:
    using Coeff = std::int64_t;

    LaurentPolynomial() = default;
    explicit LaurentPolynomial(const std::map<int, Coeff>& coefficients);

    static LaurentPolynomial zero() { return LaurentPolynomial(); }
    static LaurentPolynomial one() { return monomial(0, 1); }
    static LaurentPolynomial monomial(int weight, Coeff c = 1);
    /// char(weight m) = t^m.
    static LaurentPolynomial character_of_weight(int m) { return monomial(m, 1); }

    bool is_zero() const { return coeffs_.empty(); }
    Coeff coefficient(int weight) const;
    const std::map<int, Coeff>& coefficients() const { return coeffs_; }
    std::optional<int> min_weight() const;
    std::optional<int> max_weight() const;

    LaurentPolynomial operator-() const;
    LaurentPolynomial& operator+=(const LaurentPolynomial& other);
    LaurentPolynomial& operator-=(const LaurentPolynomial& other);
    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) = default;

    /// Terms sorted by descending weight, explicit signs, e.g. "+1*t^0 -2*t^-1".
    std::string to_string() const;

private:
    std::map<int, Coeff> coeffs_;  // weight -> coefficient, no zero entries
};

enum class Direction { bounded_above, bounded_below };

std::string direction_name(Direction d);

/// Truncated element of a completed character ring. A bounded-above series
/// carries exact coefficients for all weights strictly above its truncation
/// order (the tail O(t^K) is unrepresented); bounded-below mirrors this.
class LaurentSeries {
public:
    using Coeff = LaurentPolynomial::Coeff;

    LaurentSeries(Direction dir, int truncation_order)
        : dir_(dir), truncation_(truncation_order) {}
    LaurentSeries(Direction dir, int truncation_order, const std::map<int, Coeff>& coefficients);

    static LaurentSeries from_polynomial(const LaurentPolynomial& p, Direction dir, int truncation_order);

    Direction direction() const { return dir_; }
    int truncation_order() const { return truncation_; }
    const std::map<int, Coeff>& coefficients() const { return coeffs_; }
    bool represents(int weight) const;
    /// Exact coefficient; rejects weights on the unrepresented side.
    Coeff coefficient(int weight) const;

    LaurentSeries& operator+=(const LaurentSeries& other);
    LaurentSeries& operator-=(const LaurentSeries& other);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentPolynomial& b);
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) = default;

    /// True when every represented coefficient of a-b vanishes on the
    /// common represented window.
    static bool agree(const LaurentSeries& a, const LaurentSeries& b);

    std::string to_string() const;

private:
    void drop_unrepresented();

    Direction dir_;
    int truncation_;
    std::map<int, Coeff> coeffs_;
};

/// Multiset of nonzero integer weights (a normal bundle has no weight-0 part).
class WeightList {
public:
    WeightList() = default;
    explicit WeightList(std::vector<int> weights);

    const std::vector<int>& weights() const { return weights_; }
    bool empty() const { return weights_.empty(); }
    std::size_t size() const { return weights_.size(); }

private:
    std::vector<int> weights_;  // sorted
};

/// e(N) = prod over weights c of (1 - t^{-c}), the alternating sum of
/// exterior powers of the dual bundle.
LaurentPolynomial euler_class(const WeightList& normal_weights);

/// Inverse of euler_class(n) in the requested completion, exact up to the
/// truncation order. The product with euler_class(n) is re-checked to be 1
/// on the represented window before returning.
LaurentSeries invert_euler(const WeightList& normal_weights, Direction dir, int truncation_order);

/// Default truncation: 64 weights past the extreme weight of the inverse.
int default_inversion_order(const WeightList& normal_weights, Direction dir, int extra = 64);

std::int64_t weight_coefficient(const LaurentPolynomial& p, int weight);
std::int64_t weight_coefficient(const LaurentSeries& s, int weight);

}  // namespace gmwin
