#include <catch_amalgamated.hpp>

#include "limvam/core.hpp"
#include "limvam/rng.hpp"

using namespace limvam;

TEST_CASE("MultiViewData validates shapes") {
    Matrix a = Matrix::Zero(2, 5), b = Matrix::Zero(2, 5);
    CHECK_NOTHROW(MultiViewData({a, b}));
    CHECK_THROWS_AS(MultiViewData({}), ShapeMismatch);
    Matrix c = Matrix::Zero(3, 5);
    CHECK_THROWS_AS(MultiViewData({a, c}), ShapeMismatch);
    MultiViewData d({a, b});
    CHECK(d.m() == 2);
    CHECK(d.p() == 2);
    CHECK(d.n() == 5);
}

TEST_CASE("sample_variance uses the population (1/n) convention") {
    Eigen::RowVectorXd row(4);
    row << 1.0, 2.0, 3.0, 4.0;
    CHECK(sample_variance(row) == Catch::Approx(1.25));  // not the 1/(n-1) value 5/3
}

TEST_CASE("center removes per-row means exactly") {
    RngStream rng(3);
    Matrix v(3, 100);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 100; ++c) v(r, c) = rng.normal() + r;
    MultiViewData out = center(MultiViewData({v}));
    for (int r = 0; r < 3; ++r) CHECK(std::abs(out.views[0].row(r).mean()) < 1e-14);
}

TEST_CASE("standardize_pair scales to unit variance and rejects degenerate rows") {
    RngStream rng(4);
    Matrix x(2, 50), y(2, 50);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 50; ++c) {
            x(r, c) = 3.0 * rng.normal();
            y(r, c) = 0.5 * rng.normal();
        }
    x.row(0).array() -= x.row(0).mean();
    x.row(1).array() -= x.row(1).mean();
    y.row(0).array() -= y.row(0).mean();
    y.row(1).array() -= y.row(1).mean();
    VariablePairView pair = standardize_pair(x, y);
    for (int r = 0; r < 2; ++r) {
        CHECK(sample_variance(pair.x.row(r)) == Catch::Approx(1.0));
        CHECK(sample_variance(pair.y.row(r)) == Catch::Approx(1.0));
    }

    Matrix flat = Matrix::Zero(2, 50);
    CHECK_THROWS_AS(standardize_pair(flat, y), ZeroVariance);
    CHECK_THROWS_AS(standardize_pair(x, Matrix::Zero(2, 40)), ShapeMismatch);
}

TEST_CASE("validate_dag orders a triangular support and rejects cycles") {
    Matrix b = Matrix::Zero(3, 3);
    b(1, 0) = 0.5;
    b(2, 1) = -1.0;
    CausalOrdering ord = validate_dag(b);
    CHECK(ord.perm == std::vector<int>{0, 1, 2});

    Matrix cyc = Matrix::Zero(2, 2);
    cyc(0, 1) = cyc(1, 0) = 1.0;
    CHECK_THROWS_AS(validate_dag(cyc), CyclicGraph);
    CHECK_THROWS_AS(validate_dag(Matrix::Zero(2, 3)), ShapeMismatch);
}

TEST_CASE("validate_dag breaks root ties by lowest index") {
    // both 0 and 2 are roots; 0 must come first
    Matrix b = Matrix::Zero(3, 3);
    b(1, 2) = 1.0;
    CausalOrdering ord = validate_dag(b);
    CHECK(ord.perm == std::vector<int>{0, 2, 1});
}

TEST_CASE("triangular reassembly round-trips through a permutation") {
    RngStream rng(9);
    const int p = 5;
    CausalOrdering ord;
    ord.perm = {3, 0, 4, 1, 2};
    Matrix t = Matrix::Zero(p, p);
    for (int j = 1; j < p; ++j)
        for (int k = 0; k < j; ++k) t(j, k) = rng.normal();
    Matrix b = reassemble_from_triangular(t, ord);
    CHECK((triangular_from_adjacency(b, ord) - t).cwiseAbs().maxCoeff() == 0.0);
    // B(perm[j], perm[k]) = T(j, k)
    CHECK(b(ord.perm[2], ord.perm[1]) == t(2, 1));
    CHECK_NOTHROW(validate_dag(b));
}

TEST_CASE("ordering_compatible detects upper-triangular mass") {
    CausalOrdering ord;
    ord.perm = {1, 0};
    Matrix b = Matrix::Zero(2, 2);
    b(0, 1) = 0.7;  // edge 1 -> 0, consistent with ordering (1, 0)
    AdjacencySet set;
    set.matrices = {b};
    CHECK(ordering_compatible(set, ord));
    CausalOrdering wrong;
    wrong.perm = {0, 1};
    CHECK_FALSE(ordering_compatible(set, wrong));
}

TEST_CASE("CausalOrdering helpers") {
    CausalOrdering ord;
    ord.perm = {2, 0, 1};
    CHECK(ord.is_permutation());
    CHECK(ord.positions() == std::vector<int>{1, 2, 0});
    ord.perm = {0, 0, 1};
    CHECK_FALSE(ord.is_permutation());
}
