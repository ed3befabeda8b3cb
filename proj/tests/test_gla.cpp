#include "doctest.h"
#include "qchar/gla.hpp"

using namespace qchar;

namespace {

FinVector vec(std::initializer_list<Scalar> xs) { return FinVector::fromDense(std::vector<Scalar>(xs)); }

LinearMap fromRows(std::size_t n, std::size_t m, std::initializer_list<std::initializer_list<Scalar>> rows) {
    LinearMap f(n, m);
    std::vector<std::vector<Scalar>> cols(n, std::vector<Scalar>(m));
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (const auto& x : r) cols[j++][i] = x;
        ++i;
    }
    for (std::size_t j = 0; j < n; ++j) f.setColumn(j, FinVector::fromDense(cols[j]));
    return f;
}

}  // namespace

TEST_CASE("rowReduce examples") {
    Scalar la = Scalar::param(kLambda);
    CHECK(rowReduce({}).rank == 0);
    CHECK(rowReduce({vec({1, 0}), vec({0, 1}), vec({1, 1})}).rank == 2);
    CHECK(rowReduce({vec({Scalar(1), la}), vec({la, la * la})}).rank == 1);
}

TEST_CASE("kernelBasis examples") {
    Scalar la = Scalar::param(kLambda);
    CHECK(kernelBasis(LinearMap(3, 3)).size() == 3);
    CHECK(kernelBasis(LinearMap::identity(3)).empty());
    LinearMap f = fromRows(2, 1, {{Scalar(1), la}});
    auto k = kernelBasis(f);
    REQUIRE(k.size() == 1);
    CHECK(f.apply(k[0]).isZero());
    // spanned by (-lambda, 1)
    CHECK(k[0].get(1) * (-la) == k[0].get(0));
}

TEST_CASE("cohomologyRank examples") {
    CHECK(cohomologyRank(LinearMap(2, 2), LinearMap(2, 2)) == 2);
    CHECK(cohomologyRank(LinearMap::identity(2), LinearMap(2, 2)) == 0);
    LinearMap dIn = fromRows(1, 2, {{1}, {0}});
    LinearMap dOut = fromRows(2, 1, {{0, 1}});
    CHECK(cohomologyRank(dIn, dOut) == 0);
    CHECK_THROWS_AS(cohomologyRank(LinearMap::identity(2), LinearMap::identity(2)), std::logic_error);
}

TEST_CASE("rank-nullity and order invariance") {
    Scalar mu = Scalar::param(kMu);
    LinearMap f = fromRows(4, 3, {{1, mu, 0, mu * mu}, {mu, mu * mu, 1, 0}, {1 + mu, mu + mu * mu, 1, mu * mu}});
    CHECK(kernelBasis(f).size() + rank(f) == 4);
    for (const auto& k : kernelBasis(f)) CHECK(f.apply(k).isZero());
    std::vector<FinVector> cols, rev;
    for (std::size_t j = 0; j < 4; ++j) cols.push_back(f.column(j));
    rev.assign(cols.rbegin(), cols.rend());
    CHECK(rowReduce(cols).rank == rowReduce(rev).rank);
}

TEST_CASE("affine solver") {
    // x + y = 2, x - y = 0
    std::vector<std::pair<FinVector, Scalar>> eq = {{vec({1, 1}), Scalar(2)}, {vec({1, -1}), Scalar(0)}};
    auto s = solveAffine(2, eq);
    CHECK(s.consistent);
    CHECK(s.particular == vec({1, 1}));
    CHECK(s.homogeneous.empty());
    eq.push_back({vec({2, 2}), Scalar(5)});
    CHECK_FALSE(solveAffine(2, eq).consistent);
    auto free = solveAffine(3, {{vec({1, 0, 1}), Scalar(1)}});
    CHECK(free.consistent);
    CHECK(free.homogeneous.size() == 2);
}
