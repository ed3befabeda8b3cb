#include "doctest.h"
#include "fixtures.hpp"
#include "qchar/exterior.hpp"

using namespace qchar;

TEST_CASE("low antisymmetrizers") {
    auto c = fixtures::sumu2Calculus();
    CHECK(antisymmetrizer(c->sigma(), 4, 1) == LinearMap::identity(4));
    CHECK(antisymmetrizer(c->sigma(), 4, 2) == LinearMap::identity(16) - c->sigma());
    auto u = fixtures::u1Calculus();
    CHECK(antisymmetrizer(u->sigma(), 1, 2).isZero());
    CHECK(exteriorDims(*u, 3) == std::vector<std::size_t>{1, 1, 0, 0});
}

TEST_CASE("reduced words") {
    CHECK(reducedWord({0, 1, 2}).empty());
    CHECK(reducedWord({1, 0}) == std::vector<int>{0});
    CHECK(reducedWord({2, 1, 0}).size() == 3);
}

TEST_CASE("antisymmetrizer recursion matches the permutation sum") {
    auto c = fixtures::sumu2Calculus();
    for (int n = 1; n <= 3; ++n) CHECK(antisymmetrizer(c->sigma(), 4, n) == antisymmetrizerDirect(c->sigma(), 4, n));
    // sigma_pi does not depend on the reduced word: s0 s1 s0 = s1 s0 s1
    LinearMap s0 = braidAt(c->sigma(), 4, 3, 0), s1 = braidAt(c->sigma(), 4, 3, 1);
    CHECK(s0.compose(s1).compose(s0) == s1.compose(s0).compose(s1));
}

TEST_CASE("antisymmetrizer factorization through shuffles") {
    auto c = fixtures::sumu2Calculus();
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; k + l <= 4; ++l) {
            LinearMap lhs = antisymmetrizer(c->sigma(), 4, k + l);
            LinearMap rhs = antisymmetrizer(c->sigma(), 4, k).tensor(antisymmetrizer(c->sigma(), 4, l)).compose(shuffleSum(c->sigma(), 4, k, l));
            CHECK_MESSAGE(lhs == rhs, "k=" << k << " l=" << l);
        }
}

TEST_CASE("kernels of antisymmetrizers form an ideal") {
    auto c = fixtures::sumu2Calculus();
    for (int k = 2; k <= 3; ++k) {
        LinearMap next = antisymmetrizer(c->sigma(), 4, k + 1);
        for (const auto& v : kernelBasis(antisymmetrizer(c->sigma(), 4, k))) {
            LinearMap embedL(1, tensorPower(4, k)), embedR(1, tensorPower(4, k));
            embedL.setColumn(0, v);
            for (Index a = 0; a < 4; ++a) {
                LinearMap e(1, 4);
                e.setColumn(0, FinVector::unit(a));
                CHECK(next.apply(embedL.tensor(e).column(0)).isZero());
                CHECK(next.apply(e.tensor(embedL).column(0)).isZero());
            }
        }
    }
}

TEST_CASE("U(1) envelope and group cohomology") {
    auto c = fixtures::u1Calculus();
    GradedModel env = envelopeModel(*c, 4);
    CHECK(env.dims == std::vector<std::size_t>{1, 1, 0, 0, 0});
    CHECK(groupCohomology(env) == std::vector<std::size_t>{1, 1, 0, 0});
    GradedModel vee = veeModel(*c, 4);
    CHECK(groupCohomology(vee) == std::vector<std::size_t>{1, 1, 0, 0});
}

TEST_CASE("S_mu U(2) exterior algebras") {
    auto c = fixtures::sumu2Calculus();
    auto dims = exteriorDims(*c, 4);
    MESSAGE("vee dims " << dims[2] << " " << dims[3] << " " << dims[4]);
    CHECK(dims[0] == 1);
    CHECK(dims[1] == 4);
    QuadraticAlgebra env = envelopeAlgebra(*c);
    MESSAGE("wedge dims " << env.dim(2) << " " << env.dim(3) << " " << env.dim(4));
    GradedModel m = envelopeModel(*c, 4);
    auto h = groupCohomology(m);
    MESSAGE("wedge cohomology " << h[0] << " " << h[1] << " " << h[2] << " " << h[3]);
    CHECK(h[0] == 1);
    GradedModel v = veeModel(*c, 4);
    auto hv = groupCohomology(v);
    MESSAGE("vee cohomology " << hv[0] << " " << hv[1] << " " << hv[2] << " " << hv[3]);
    CHECK(hv[0] == 1);
}
