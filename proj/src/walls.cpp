#include "gmwin/walls.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gmwin/errors.hpp"

namespace gmwin {

TorusRep TorusRep::rank1(const std::vector<int>& weights, bool allow_zero) {
    std::vector<std::vector<int>> w;
    w.reserve(weights.size());
    for (int x : weights) w.push_back({x});
    return of_rank(1, std::move(w), allow_zero);
}

TorusRep TorusRep::of_rank(int rank, std::vector<std::vector<int>> weights, bool allow_zero) {
    if (rank < 1) throw std::invalid_argument("torus rank must be >= 1");
    for (const auto& w : weights) {
        if (static_cast<int>(w.size()) != rank) {
            throw std::invalid_argument("every weight must have one entry per torus factor");
        }
        const bool zero = std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
        if (zero && !allow_zero) {
            throw std::invalid_argument("zero weights must be declared with allow_zero_weights");
        }
    }
    return TorusRep{rank, std::move(weights), allow_zero};
}

namespace {

long long vec_gcd(const std::vector<int>& v) {
    long long g = 0;
    for (int x : v) g = std::gcd(g, static_cast<long long>(std::abs(x)));
    return g;
}

// Primitive direction of a nonzero weight, sign-normalized so the first
// nonzero entry is positive.
std::vector<int> primitive_direction(const std::vector<int>& w) {
    const long long g = vec_gcd(w);
    std::vector<int> dir(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) dir[i] = static_cast<int>(w[i] / g);
    for (int x : dir) {
        if (x > 0) break;
        if (x < 0) {
            for (auto& y : dir) y = -y;
            break;
        }
    }
    return dir;
}

bool is_zero_vector(const std::vector<int>& w) {
    return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

void require_rank1(const TorusRep& rep, const char* what) {
    if (rep.rank != 1) {
        throw std::invalid_argument(std::string(what) + " is implemented for rank-1 tori only");
    }
}

long long positive_weight_sum(const TorusRep& rep) {
    long long eta = 0;
    for (const auto& w : rep.weights) {
        if (w[0] > 0) eta += w[0];
    }
    return eta;
}

void require_quasi_symmetric(const TorusRep& rep, const char* what) {
    const QsymReport q = quasi_symmetric(rep);
    if (!q.ok) {
        throw std::invalid_argument(std::string(what) + " needs a quasi-symmetric representation");
    }
}

std::vector<long long> side_weights(const TorusRep& rep, int ell) {
    std::vector<long long> out;
    for (const auto& w : rep.weights) {
        if ((ell > 0 && w[0] > 0) || (ell < 0 && w[0] < 0)) out.push_back(std::abs(w[0]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

QsymReport quasi_symmetric(const TorusRep& rep) {
    std::map<std::vector<int>, std::vector<int>> line_sums;
    for (const auto& w : rep.weights) {
        if (is_zero_vector(w)) continue;  // lies on no punctured line
        const auto dir = primitive_direction(w);
        auto& sum = line_sums[dir];
        if (sum.empty()) sum.assign(rep.rank, 0);
        for (int i = 0; i < rep.rank; ++i) sum[i] += w[i];
    }
    for (const auto& [dir, sum] : line_sums) {
        if (!is_zero_vector(sum)) return {false, dir};
    }
    return {true, {}};
}

Rank1Window window_lattice_points(const TorusRep& rep, const Rational& theta) {
    require_rank1(rep, "window_lattice_points");
    require_quasi_symmetric(rep, "window_lattice_points");
    if (theta_on_wall(rep, theta)) {
        throw std::invalid_argument("theta = " + rational_to_string(theta) + " lies on a wall");
    }
    Rank1Window win;
    win.theta = theta;
    win.eta = positive_weight_sum(rep);
    const Int first = floor_rational(theta) + 1;
    for (long long k = 0; k < win.eta; ++k) {
        win.lattice_points.push_back(static_cast<long long>(first) + k);
    }
    return win;
}

WallArrangement wall_arrangement(const TorusRep& rep) {
    require_rank1(rep, "wall_arrangement");
    require_quasi_symmetric(rep, "wall_arrangement");
    return WallArrangement{"theta in Z", 1};
}

bool theta_on_wall(const TorusRep& rep, const Rational& theta) {
    require_rank1(rep, "theta_on_wall");
    require_quasi_symmetric(rep, "theta_on_wall");
    // eta is an integer, so both boundary conditions reduce to theta in Z.
    return is_integer(theta);
}

LaurentPolynomial unstable_koszul_class(const TorusRep& rep, int ell) {
    require_rank1(rep, "unstable_koszul_class");
    if (ell == 0) throw std::invalid_argument("ell must be a nonzero sign");
    bool has_pos = false, has_neg = false;
    for (const auto& w : rep.weights) {
        has_pos = has_pos || w[0] > 0;
        has_neg = has_neg || w[0] < 0;
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("the representation needs weights of both signs; "
                                    "a one-sided action has an empty quotient on one side");
    }
    LaurentPolynomial kappa = LaurentPolynomial::one();
    for (const auto& w : rep.weights) {
        const int beta = w[0];
        if ((ell > 0 && beta > 0) || (ell < 0 && beta < 0)) {
            kappa = kappa * (LaurentPolynomial::one() - LaurentPolynomial::monomial(-beta));
        }
    }
    return kappa;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            Int s = 0;
            for (int k = 0; k < a.cols(); ++k) s += a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    }
    return r;
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    const int n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    auto a = a_;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i) {
                if (a[i][k] != 0) {
                    pivot = i;
                    break;
                }
            }
            if (pivot < 0) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

IntMatrix IntMatrix::inverse_unimodular() const {
    const Int det = determinant();
    if (det != 1 && det != -1) {
        throw std::invalid_argument("matrix is not unimodular (det = " + det.str() + ")");
    }
    const int n = rows_;
    // Gauss-Jordan over the rationals; the result is integral because the
    // determinant is a unit.
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = Rational(a_[i][j]);
        m[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i) {
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) throw std::logic_error("unimodular matrix lost rank");
        std::swap(m[pivot], m[col]);
        const Rational p = m[col][col];
        for (auto& x : m[col]) x /= p;
        for (int i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (int j = 0; j < 2 * n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    IntMatrix inv(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Rational& x = m[i][n + j];
            if (denominator(x) != 1) throw std::logic_error("non-integral inverse of a unimodular matrix");
            inv.at(i, j) = numerator(x);
        }
    }
    return inv;
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << a_[i][j].str();
        }
        out << '\n';
    }
    return out.str();
}

namespace {

// kappa_ell cleared of its unit monomial factor: a degree-eta polynomial in
// u = t^{-1} with constant term 1 and unit leading coefficient.
std::vector<Int> cleared_koszul(const TorusRep& rep, int ell) {
    const auto side = side_weights(rep, ell);
    std::vector<Int> k{1};
    for (long long b : side) {
        std::vector<Int> next(k.size() + static_cast<std::size_t>(b), 0);
        for (std::size_t i = 0; i < k.size(); ++i) {
            next[i] += k[i];
            next[i + static_cast<std::size_t>(b)] -= k[i];
        }
        k = std::move(next);
    }
    return k;
}

std::vector<Int> mult_u(const std::vector<Int>& r, const std::vector<Int>& kappa) {
    const std::size_t eta = r.size();
    std::vector<Int> out(eta, 0);
    const Int& lead = kappa[eta];  // +-1
    for (std::size_t i = 0; i + 1 < eta; ++i) out[i + 1] = r[i];
    const Int top = r[eta - 1];
    if (top != 0) {
        for (std::size_t i = 0; i < eta; ++i) out[i] -= top * kappa[i] / lead;
    }
    return out;
}

std::vector<Int> mult_u_inverse(const std::vector<Int>& r, const std::vector<Int>& kappa) {
    const std::size_t eta = r.size();
    std::vector<Int> out(eta, 0);
    for (std::size_t i = 0; i + 1 < eta; ++i) out[i] = r[i + 1];
    const Int low = r[0];  // kappa[0] == 1
    if (low != 0) {
        for (std::size_t i = 0; i < eta; ++i) out[i] -= low * kappa[i + 1];
    }
    return out;
}

}  // namespace

IntMatrix window_basis_matrix(const TorusRep& rep, int ell, const Rational& theta) {
    const Rank1Window win = window_lattice_points(rep, theta);
    if (ell == 0) throw std::invalid_argument("ell must be a nonzero sign");
    unstable_koszul_class(rep, ell);  // validates two-sided weights
    const auto kappa = cleared_koszul(rep, ell);
    const std::size_t eta = static_cast<std::size_t>(win.eta);
    if (kappa.size() != eta + 1) {
        throw std::logic_error("koszul degree mismatch");
    }

    // Walk the reduction of u^m from m = 0 to the first lattice point, then
    // across the window.
    std::vector<Int> r(eta, 0);
    r[0] = 1;
    long long m = 0;
    const long long first = win.lattice_points.front();
    while (m < first) {
        r = mult_u(r, kappa);
        ++m;
    }
    while (m > first) {
        r = mult_u_inverse(r, kappa);
        --m;
    }
    IntMatrix b(static_cast<int>(eta), static_cast<int>(eta));
    for (std::size_t col = 0; col < eta; ++col) {
        for (std::size_t i = 0; i < eta; ++i) b.at(static_cast<int>(i), static_cast<int>(col)) = r[i];
        if (col + 1 < eta) r = mult_u(r, kappa);
    }
    const Int det = b.determinant();
    if (det != 1 && det != -1) {
        throw certification_error("window basis is not unimodular (det = " + det.str()
                                  + "); genericity violation");
    }
    return b;
}

MonodromyMatrix monodromy_matrix(const TorusRep& rep, const Rational& theta0,
                                 const std::vector<PathLeg>& legs) {
    require_rank1(rep, "monodromy_matrix");
    require_quasi_symmetric(rep, "monodromy_matrix");
    if (theta_on_wall(rep, theta0)) {
        throw std::invalid_argument("the path starts on a wall");
    }
    const long long eta = positive_weight_sum(rep);
    MonodromyMatrix out;
    out.matrix = IntMatrix::identity(static_cast<int>(eta));
    out.theta_start = theta0;
    out.theta_end = theta0;
    std::ostringstream path;
    path << "W(" << rational_to_string(theta0) << ")";
    Rational theta_prev = theta0;
    for (const auto& leg : legs) {
        if (leg.ell == 0) throw std::invalid_argument("legs must travel through ell != 0");
        if (theta_on_wall(rep, leg.theta_to)) {
            throw std::invalid_argument("the path touches the wall theta = "
                                        + rational_to_string(leg.theta_to));
        }
        const IntMatrix from = window_basis_matrix(rep, leg.ell, theta_prev);
        const IntMatrix to = window_basis_matrix(rep, leg.ell, leg.theta_to);
        out.matrix = to.inverse_unimodular() * from * out.matrix;
        path << " -(" << (leg.ell > 0 ? "+" : "-") << ")-> W(" << rational_to_string(leg.theta_to)
             << ")";
        theta_prev = leg.theta_to;
    }
    out.theta_end = theta_prev;
    out.det = out.matrix.determinant();
    if (out.det != 1 && out.det != -1) {
        throw certification_error("monodromy matrix is not unimodular (det = " + out.det.str() + ")");
    }
    out.path = path.str();
    return out;
}

}  // namespace gmwin
