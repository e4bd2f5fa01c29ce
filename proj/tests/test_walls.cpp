#include <doctest.h>

#include "gmwin/errors.hpp"
#include "gmwin/walls.hpp"
#include "helpers.hpp"

using namespace gmwin;
using gmwin::testing::Rng;

namespace {

LaurentPolynomial t(int w, std::int64_t c = 1) { return LaurentPolynomial::monomial(w, c); }

IntMatrix mat2(long long a, long long b, long long c, long long d) {
    IntMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

LaurentPolynomial mirror(const LaurentPolynomial& p) {
    LaurentPolynomial q;
    for (const auto& [w, c] : p.coefficients()) q += LaurentPolynomial::monomial(-w, c);
    return q;
}

}  // namespace

TEST_CASE("quasi-symmetry") {
    CHECK(quasi_symmetric(TorusRep::rank1({1, 1, -1, -1})).ok);
    CHECK(quasi_symmetric(TorusRep::rank1({2, -1, -1})).ok);
    const auto bad = quasi_symmetric(TorusRep::rank1({1, -2}));
    CHECK_FALSE(bad.ok);
    CHECK(*bad.failing_line == std::vector<int>{1});

    const auto rank2 = quasi_symmetric(
        TorusRep::of_rank(2, {{1, 0}, {-1, 0}, {0, 1}}));
    CHECK_FALSE(rank2.ok);
    CHECK(*rank2.failing_line == std::vector<int>({0, 1}));
    CHECK(quasi_symmetric(TorusRep::of_rank(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}})).ok);
    // scaled weights on one line still balance
    CHECK(quasi_symmetric(TorusRep::of_rank(2, {{2, 2}, {-1, -1}, {-1, -1}})).ok);
}

TEST_CASE("zero weights need a declaration") {
    CHECK_THROWS_AS(TorusRep::rank1({1, 0, -1}), std::invalid_argument);
    const auto rep = TorusRep::rank1({1, 0, -1}, true);
    CHECK(quasi_symmetric(rep).ok);
    // zero weights contribute nothing to eta or the lattice
    CHECK(window_lattice_points(rep, Rational(-1, 2)).eta == 1);
}

TEST_CASE("window lattice points") {
    const auto conifold = TorusRep::rank1({1, 1, -1, -1});
    const auto win = window_lattice_points(conifold, Rational(-1, 2));
    CHECK(win.eta == 2);
    CHECK(win.lattice_points == std::vector<long long>({0, 1}));

    const auto small = window_lattice_points(TorusRep::rank1({1, -1}), Rational(-1, 2));
    CHECK(small.lattice_points == std::vector<long long>{0});

    // translation by one shifts the lattice pointwise
    const auto shifted = window_lattice_points(conifold, Rational(1, 2));
    CHECK(shifted.lattice_points == std::vector<long long>({1, 2}));

    CHECK_THROWS_AS(window_lattice_points(conifold, Rational(2)), std::invalid_argument);
    CHECK_THROWS_AS(window_lattice_points(TorusRep::rank1({1, -2}), Rational(-1, 2)),
                    std::invalid_argument);
}

TEST_CASE("walls sit at the integers") {
    const auto rep = TorusRep::rank1({1, 1, -1, -1});
    CHECK(wall_arrangement(rep).walls == "theta in Z");
    CHECK(wall_arrangement(rep).period == 1);
    CHECK_FALSE(theta_on_wall(rep, Rational(1, 3)));
    CHECK(theta_on_wall(rep, Rational(2)));
}

TEST_CASE("unstable koszul classes") {
    const auto conifold = TorusRep::rank1({1, 1, -1, -1});
    CHECK(unstable_koszul_class(conifold, +1) == t(0) - t(-1, 2) + t(-2));
    CHECK(unstable_koszul_class(conifold, -1) == t(0) - t(1, 2) + t(2));
    CHECK(unstable_koszul_class(TorusRep::rank1({1, -1}), +1) == t(0) - t(-1));
    // symmetric representation: the two sides swap under t <-> t^{-1}
    CHECK(mirror(unstable_koszul_class(conifold, +1)) == unstable_koszul_class(conifold, -1));
    CHECK_THROWS_AS(unstable_koszul_class(TorusRep::rank1({1, 1, -1, -1}), 0),
                    std::invalid_argument);
    // two-sided but not quasi-symmetric is fine here; kappa does not need
    // the balance condition
    CHECK(unstable_koszul_class(TorusRep::rank1({1, 2, -3}), +1)
          == (t(0) - t(-1)) * (t(0) - t(-2)));
}

TEST_CASE("one-sided representations are rejected") {
    Rng rng(67);
    // weights all positive: no quotient on the other side
    CHECK_THROWS_AS(unstable_koszul_class(TorusRep::rank1({1, 2}), +1), std::invalid_argument);
}

TEST_CASE("window basis matrices") {
    CHECK(window_basis_matrix(TorusRep::rank1({1, -1}), +1, Rational(-1, 2)).at(0, 0) == 1);

    const auto conifold = TorusRep::rank1({1, 1, -1, -1});
    CHECK(window_basis_matrix(conifold, +1, Rational(-1, 2)) == IntMatrix::identity(2));
    CHECK(window_basis_matrix(conifold, +1, Rational(1, 2)) == mat2(0, -1, 1, 2));
    // both quotients of the conifold present the same reduction
    CHECK(window_basis_matrix(conifold, -1, Rational(1, 2)) == mat2(0, -1, 1, 2));

    const auto mckay = TorusRep::rank1({2, -1, -1});
    CHECK(window_basis_matrix(mckay, +1, Rational(1, 2)) == mat2(0, 1, 1, 0));
    CHECK(window_basis_matrix(mckay, -1, Rational(1, 2)) == mat2(0, -1, 1, 2));
}

TEST_CASE("theta translation composes with the u-multiplication") {
    for (const auto& rep : {TorusRep::rank1({1, 1, -1, -1}), TorusRep::rank1({2, -1, -1}),
                            TorusRep::rank1({3, 1, -2, -2})}) {
        for (int ell : {+1, -1}) {
            IntMatrix u;
            bool first = true;
            for (const Rational& theta : {Rational(-1, 2), Rational(1, 2), Rational(7, 3)}) {
                const auto b = window_basis_matrix(rep, ell, theta);
                const auto b1 = window_basis_matrix(rep, ell, theta + 1);
                const IntMatrix shift = b1 * b.inverse_unimodular();
                if (first) {
                    u = shift;
                    first = false;
                } else {
                    CHECK(u == shift);
                }
            }
        }
    }
}

TEST_CASE("window bases are unimodular") {
    Rng rng(71);
    for (int trial = 0; trial < 60; ++trial) {
        const auto rep = gmwin::testing::random_quasi_symmetric_rank1(rng);
        const Rational theta = gmwin::testing::random_nonwall_theta(rng);
        for (int ell : {+1, -1}) {
            const auto b = window_basis_matrix(rep, ell, theta);
            const Int det = b.determinant();
            CHECK((det == 1 || det == -1));
        }
    }
}

TEST_CASE("monodromy of the empty path") {
    const auto m = monodromy_matrix(TorusRep::rank1({1, 1, -1, -1}), Rational(-1, 2), {});
    CHECK(m.matrix == IntMatrix::identity(2));
    CHECK(m.det == 1);
}

TEST_CASE("mirror-symmetric weights give a K-trivial wall loop") {
    // The two unstable Koszul classes generate the same ideal when the
    // positive weights mirror the negative ones, so the loop through both
    // quotients reduces to the identity on K-classes.
    const auto conifold = TorusRep::rank1({1, 1, -1, -1});
    const std::vector<PathLeg> loop{{+1, Rational(1, 2)}, {-1, Rational(-1, 2)}};
    const auto m = monodromy_matrix(conifold, Rational(-1, 2), loop);
    CHECK(m.det == 1);
    CHECK(m.matrix == IntMatrix::identity(2));
}

TEST_CASE("asymmetric weights give a nontrivial wall loop") {
    const auto mckay = TorusRep::rank1({2, -1, -1});
    const std::vector<PathLeg> loop{{+1, Rational(1, 2)}, {-1, Rational(-1, 2)}};
    const auto m = monodromy_matrix(mckay, Rational(-1, 2), loop);
    CHECK(m.matrix == mat2(-1, 0, 2, 1));
    CHECK(m.det == -1);
    // the loop is an involution on K-classes
    CHECK(m.matrix * m.matrix == IntMatrix::identity(2));
    CHECK_FALSE(m.matrix == IntMatrix::identity(2));
}

TEST_CASE("paths compose and reverse") {
    Rng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rep = gmwin::testing::random_quasi_symmetric_rank1(rng);
        const Rational theta0 = gmwin::testing::random_nonwall_theta(rng);
        std::vector<PathLeg> path;
        Rational prev = theta0;
        for (int leg = 0; leg < 3; ++leg) {
            path.push_back({gmwin::testing::pick(rng, 0, 1) ? +1 : -1,
                            gmwin::testing::random_nonwall_theta(rng)});
        }
        const auto full = monodromy_matrix(rep, theta0, path);

        // concatenation multiplies
        const std::vector<PathLeg> head(path.begin(), path.begin() + 1);
        const std::vector<PathLeg> tail(path.begin() + 1, path.end());
        const auto m_head = monodromy_matrix(rep, theta0, head);
        const auto m_tail = monodromy_matrix(rep, path[0].theta_to, tail);
        CHECK(full.matrix == m_tail.matrix * m_head.matrix);

        // reversal inverts
        std::vector<PathLeg> reversed;
        reversed.push_back({path[2].ell, path[1].theta_to});
        reversed.push_back({path[1].ell, path[0].theta_to});
        reversed.push_back({path[0].ell, theta0});
        const auto back = monodromy_matrix(rep, path[2].theta_to, reversed);
        const int eta = full.matrix.rows();
        CHECK(back.matrix * full.matrix == IntMatrix::identity(eta));
    }
}

TEST_CASE("translation invariance of monodromy") {
    Rng rng(79);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rep = gmwin::testing::random_quasi_symmetric_rank1(rng);
        const Rational theta0 = gmwin::testing::random_nonwall_theta(rng);
        std::vector<PathLeg> path, shifted;
        for (int leg = 0; leg < 2; ++leg) {
            const PathLeg l{gmwin::testing::pick(rng, 0, 1) ? +1 : -1,
                            gmwin::testing::random_nonwall_theta(rng)};
            path.push_back(l);
            shifted.push_back({l.ell, l.theta_to + 1});
        }
        // Conjugating the path by the lattice translation theta -> theta + 1
        // relabels the window basis t^{-m} -> t^{-m-1} in order, so the
        // matrix is unchanged.
        const auto a = monodromy_matrix(rep, theta0, path);
        const auto b = monodromy_matrix(rep, theta0 + 1, shifted);
        CHECK(a.matrix == b.matrix);
    }
}

TEST_CASE("monodromy rejects walls") {
    const auto rep = TorusRep::rank1({1, -1});
    CHECK_THROWS_AS(monodromy_matrix(rep, Rational(0), {}), std::invalid_argument);
    CHECK_THROWS_AS(monodromy_matrix(rep, Rational(1, 2), {{+1, Rational(1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(monodromy_matrix(rep, Rational(1, 2), {{0, Rational(3, 2)}}),
                    std::invalid_argument);
}

TEST_CASE("integer matrix arithmetic") {
    const auto m = mat2(2, 3, 1, 2);
    CHECK(m.determinant() == 1);
    CHECK(m.inverse_unimodular() == mat2(2, -3, -1, 2));
    CHECK(m * m.inverse_unimodular() == IntMatrix::identity(2));
    CHECK_THROWS_AS(mat2(2, 0, 0, 2).inverse_unimodular(), std::invalid_argument);
    IntMatrix big(3, 3);
    // det of a singular matrix
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) big.at(i, j) = i + j;
    }
    CHECK(big.determinant() == 0);
}
