#include "doctest.h"
#include "fixtures.hpp"

using namespace qchar;

TEST_CASE("U(1) pi and o-action") {
    auto c = fixtures::u1Calculus();
    const HopfAlgebra& A = c->hopf();
    Scalar la = Scalar::param(kLambda);
    CHECK(c->pi(A.one()).isZero());
    CHECK(c->pi(A.parse("u")) == FinVector::unit(0, Scalar(1) - la));
    for (int k = -5; k <= 5; ++k) {
        if (k == 0) continue;
        CHECK(c->pi(A.parse("u^" + std::to_string(k))) == FinVector::unit(0, Scalar(1) - la.pow(k)));
    }
    FinVector z = FinVector::unit(0);
    CHECK(c->circ(z, A.one()) == z);
    CHECK(c->circ(z, A.parse("u")) == FinVector::unit(0, la));
    CHECK(c->circ(z, A.parse("u^-1")) == FinVector::unit(0, la.inverse()));
    CHECK(c->pi(A.parse("v + u/lambda - (1+1/lambda)")).isZero());
    auto vp = c->varpi(z);
    CHECK(vp[0] == A.one());
    CHECK(c->starForm(z) == FinVector::unit(0, Scalar(-1)));
    CHECK(c->cTop(z).isZero());
    CHECK(c->applySigma(FinVector::unit(0)) == FinVector::unit(0));
    REQUIRE(c->wedgeSpace());
    CHECK(c->wedgeSpace()->size() == 1);
    Report r = c->validate(4);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.ok());
    DeltaSolution d = deriveDelta(*c);
    REQUIRE(d.found);
    CHECK(d.delta[0].isZero());
}

TEST_CASE("S_mu U(2) 4D calculus tables") {
    auto c = fixtures::sumu2Calculus();
    const HopfAlgebra& A = c->hopf();
    CHECK(c->tables().idealGenerators.size() == 9);
    REQUIRE(c->wedgeSpace());
    CHECK(c->wedgeSpace()->size() == 9);
    auto vt = c->varpi(FinVector::unit(0));
    CHECK(vt[0] == A.one());
    for (std::size_t j = 1; j < 4; ++j) CHECK(vt[j].isZero());
    CHECK(c->cTop(FinVector::unit(0)).isZero());
    CHECK(rank(c->sigma() - LinearMap::identity(16)) == 6);
    Report r = c->validate(3);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.ok());
    DeltaSolution d = deriveDelta(*c);
    REQUIRE(d.found);
    for (std::size_t i = 0; i < 4; ++i) {
        FinVector e = FinVector::unit(static_cast<Index>(i));
        CHECK(c->applySigma(d.delta[i]) == d.delta[i] + c->cTop(e));
    }
    MESSAGE("delta solution dimension " << d.solutionDimension);
}

TEST_CASE("corrupted o-matrix breaks the module law") {
    auto A = std::make_shared<HopfAlgebra>(fixtures::sumu2Presentation());
    auto t = fixtures::sumu2Tables(*A);
    FinVector col = t.circOfGenerator[0].column(2);
    col.addScaled(FinVector::unit(0), Scalar(1));
    t.circOfGenerator[0].setColumn(2, col);
    Calculus c(A, t);
    Report r = c.validate(2);
    CHECK(r.failed("circ-module-law"));
}
