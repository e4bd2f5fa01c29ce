#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmwin/laurent.hpp"
#include "gmwin/rational.hpp"

namespace gmwin {

/// Linear torus representation given by its weights in the character lattice.
struct TorusRep {
    int rank = 1;
    std::vector<std::vector<int>> weights;  // each of length rank
    bool allow_zero_weights = false;

    static TorusRep rank1(const std::vector<int>& weights, bool allow_zero = false);
    static TorusRep of_rank(int rank, std::vector<std::vector<int>> weights, bool allow_zero = false);

    friend bool operator==(const TorusRep&, const TorusRep&) = default;
};

struct QsymReport {
    bool ok = false;
    std::optional<std::vector<int>> failing_line;  // primitive direction
};

/// Quasi-symmetry: the weights along every line through the origin sum to
/// zero. Zero weights are ignored (they lie on no punctured line).
QsymReport quasi_symmetric(const TorusRep& rep);

struct Rank1Window {
    Rational theta;
    long long eta = 0;                      // sum of the positive weights
    std::vector<long long> lattice_points;  // integers in the open (theta, theta + eta)
};

/// Lattice points of the rank-1 window at theta; defined off walls only.
Rank1Window window_lattice_points(const TorusRep& rep, const Rational& theta);

struct WallArrangement {
    std::string walls;  // description of the wall set
    int period = 1;
};

WallArrangement wall_arrangement(const TorusRep& rep);
bool theta_on_wall(const TorusRep& rep, const Rational& theta);

/// K-class of the structure sheaf of the ell-unstable linear subspace:
/// the Koszul product prod (1 - t^{-beta}) over the weights beta with
/// sign(beta) = ell. Requires weights of both signs.
LaurentPolynomial unstable_koszul_class(const TorusRep& rep, int ell);

/// Dense integer matrix with exact big-integer entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows, std::vector<Int>(cols, 0)) {}
    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return a_[i][j]; }
    const Int& at(int i, int j) const { return a_[i][j]; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    Int determinant() const;  // fraction-free elimination
    /// Exact inverse; requires determinant +-1.
    IntMatrix inverse_unimodular() const;

    std::string to_string() const;  // row-major, space separated

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::vector<Int>> a_;
};

/// Matrix of the window characters {t^{-m} : m in the window lattice} in the
/// monomial reduction basis of Z[t^{+-1}]/(kappa_ell). Must be unimodular;
/// a failed determinant check is reported as a genericity violation, not as
/// an input error.
IntMatrix window_basis_matrix(const TorusRep& rep, int ell, const Rational& theta);

struct PathLeg {
    int ell = +1;      // chamber through which the leg travels
    Rational theta_to; // window chamber the leg ends at
};

struct MonodromyMatrix {
    IntMatrix matrix;
    Int det;
    Rational theta_start;
    Rational theta_end;
    std::string path;
};

/// K-theory matrix of a path through window and quotient chambers: each leg
/// (ell, theta -> theta') contributes B(ell, theta')^{-1} B(ell, theta).
/// Walls may not be touched; the empty path is the identity.
MonodromyMatrix monodromy_matrix(const TorusRep& rep, const Rational& theta0,
                                 const std::vector<PathLeg>& legs);

}  // namespace gmwin
