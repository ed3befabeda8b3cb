#include "doctest.h"
#include "fixtures.hpp"
#include "qchar/universal.hpp"

using namespace qchar;

TEST_CASE("Omega differential") {
    OmegaSpace om(2);
    // dims: compositions of the degree into parts 1 and 2, each part carrying 2 letters
    CHECK(om.dim(0) == 1);
    CHECK(om.dim(1) == 2);
    CHECK(om.dim(2) == 6);
    CHECK(om.dim(3) == 16);
    CHECK(om.d(1, om.word({0})) == om.word({2}));
    CHECK(om.d(2, om.word({2})).isZero());
    CHECK(om.d(2, om.word({0, 1})) == om.word({2, 1}) - om.word({0, 3}));
    for (int k = 0; k < 4; ++k) CHECK(om.differential(k + 1).compose(om.differential(k)).isZero());
    CHECK(omegaCohomology(om, 4) == std::vector<std::size_t>{1, 0, 0, 0, 0});
}

TEST_CASE("U(1) extended coaction") {
    auto c = fixtures::withDelta(fixtures::u1Calculus());
    UniversalModel um(c);
    const OmegaSpace& om = um.omega();
    MixedForm z = um.adTilde(1, om.word({0}));
    MixedForm expect = {{MixedKey{1, 0, 0, 0, Word()}, Scalar(1)}, {MixedKey{0, 0, 1, 0, Word()}, Scalar(1)}};
    CHECK(z == expect);
    MixedForm dz = um.adTilde(2, om.word({1}));
    CHECK(dz == MixedForm{{MixedKey{2, om.index(2, {1}), 0, 0, Word()}, Scalar(1)}});
    CHECK(um.adTilde(0, FinVector::unit(0)) == MixedForm{{MixedKey{0, 0, 0, 0, Word()}, Scalar(1)}});
    Report r = um.checkCoaction(4);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.ok());
}

TEST_CASE("U(1) daleth cohomology") {
    auto c = fixtures::withDelta(fixtures::u1Calculus());
    UniversalModel um(c);
    CHECK(um.dalethBasis(0).size() == 1);
    CHECK(um.dalethBasis(1).empty());
    // zeta zeta is invariant too, since it vanishes in the one-dimensional envelope
    CHECK(um.dalethBasis(2).size() == 2);
    auto h = um.dalethCohomology(5);
    CHECK(h.dims == std::vector<std::size_t>{1, 0, 1, 0, 1, 0});
    const OmegaSpace& om = um.omega();
    REQUIRE(h.representatives[2].size() == 1);
    const FinVector& r2 = h.representatives[2][0];
    REQUIRE(r2.nnz() == 1);
    CHECK(r2.entries()[0].first == om.index(2, {1}));
    REQUIRE(h.representatives[4].size() == 1);
    CHECK(h.representatives[4][0].entries()[0].first == om.index(4, {1, 1}));
    // daleth is closed under d and products
    for (int p = 0; p <= 2; ++p)
        for (const auto& x : um.dalethBasis(p)) {
            const FinVector dx = om.d(p, x);
            const MixedForm ad = um.adTilde(p + 1, dx);
            MixedForm trivial;
            for (const auto& [i, s] : dx.entries()) trivial.emplace(MixedKey{p + 1, i, 0, 0, Word()}, s);
            CHECK(ad == trivial);
            for (int q = 0; p + q <= 4; ++q)
                for (const auto& y : um.dalethBasis(q)) {
                    const FinVector xy = om.multiply(p, x, q, y);
                    MixedForm t;
                    for (const auto& [i, s] : xy.entries()) t.emplace(MixedKey{p + q, i, 0, 0, Word()}, s);
                    CHECK(um.adTilde(p + q, xy) == t);
                }
        }
    // one-dimensional calculus: the vee and wedge algebras agree, so h(Omega) = ker of the contraction
    for (int k = 0; k <= 4; ++k) {
        auto h1 = um.horizontalBasis(k), h2 = um.contractionKernel(k);
        CHECK(h1 == h2);
    }
}

TEST_CASE("Sigma for U(1) is a polynomial algebra") {
    auto c = fixtures::u1Calculus();
    SigmaModel s(c);
    for (int p = 0; p <= 5; ++p) {
        CHECK(s.dim(p) == 1);
        CHECK(s.invariants(p).size() == 1);
    }
    Report r = checkCentrality(s, 3, 6);
    CHECK(r.ok());
}

TEST_CASE("Sigma for S_mu U(2)") {
    auto c = fixtures::sumu2Calculus();
    SigmaModel s(c);
    std::vector<std::size_t> dims, inv;
    for (int p = 0; p <= 4; ++p) {
        dims.push_back(s.dim(p));
        inv.push_back(s.invariants(p).size());
    }
    CHECK(dims == std::vector<std::size_t>{1, 4, 10, 20, 35});
    CHECK(inv == std::vector<std::size_t>{1, 1, 2, 2, 3});
    Report r = checkCentrality(s, 3, 5);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.ok());
}

TEST_CASE("U(1) Omega_*") {
    auto c = fixtures::withDelta(fixtures::u1Calculus());
    OmegaStar st(c);
    // R(zeta) = d zeta since delta vanishes; d_vh(zeta) = 0
    CHECK(st.totalDifferential(1, st.theta(0)) == st.curvature(0));
    CHECK(st.verticalDifferential(1, st.theta(0)).isZero());
    CHECK(st.covariantDerivative(2, st.curvature(0)).isZero());
    Report r = st.checkIdentities(4);
    CHECK(r.ok());
    KIdealResult k = kIdealCheck(st, 4);
    for (const auto& f : k.report.failures()) INFO(f);
    CHECK(k.report.ok());
    CHECK(k.quotientCohomology == std::vector<std::size_t>{1, 0, 0, 0});
}

TEST_CASE("S_mu U(2) Omega_* identities and the ideal K") {
    auto c = fixtures::withDelta(fixtures::sumu2Calculus());
    OmegaStar st(c);
    for (std::size_t i = 0; i < 4; ++i) CHECK(st.covariantDerivative(2, st.curvature(i)).isZero());
    Report r = st.checkIdentities(3);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.ok());
    KIdealResult k = kIdealCheck(st, 3);
    for (const auto& f : k.report.failures()) INFO(f);
    CHECK(k.report.ok());
    CHECK(k.quotientDims == std::vector<std::size_t>{1, 4, 11, 24});
    MESSAGE("H(Omega_*) through degree 2: " << k.quotientCohomology[0] << " " << k.quotientCohomology[1] << " " << k.quotientCohomology[2]);
}
