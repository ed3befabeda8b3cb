#include "doctest.h"
#include "fixtures.hpp"
#include "qchar/hopf.hpp"

using namespace qchar;

TEST_CASE("U(1) normal forms and structure maps") {
    HopfAlgebra A(fixtures::u1Presentation());
    CHECK(A.parse("u*v") == A.one());
    CHECK(A.parse("u^3*u^-1") == A.parse("u^2"));
    CHECK(A.parse("u^-1") == A.parse("v"));
    HopfElement u = A.parse("u");
    Tensor cu = A.coproduct(u);
    CHECK(cu.terms().size() == 1);
    CHECK(cu.terms().begin()->first == Tensor::Key{fixtures::w({0}), fixtures::w({0})});
    Tensor c1 = A.coproduct(A.one());
    CHECK(c1.terms().begin()->first == Tensor::Key{Word(), Word()});
    Tensor t = A.iteratedCoproduct(A.parse("u^2"), 3);
    CHECK(t.terms().size() == 1);
    CHECK(t.terms().begin()->first == Tensor::Key(3, fixtures::w({0, 0})));
    CHECK(A.counit(u) == Scalar(1));
    CHECK(A.counit(A.one()) == Scalar(1));
    CHECK(A.antipode(u) == A.parse("v"));
    CHECK(A.star(u) == A.parse("v"));
    Tensor ad = A.adjointCoaction(u);
    CHECK(ad.terms().size() == 1);
    CHECK(ad.terms().begin()->first == Tensor::Key{fixtures::w({0}), Word()});
    CHECK(A.validate(6, 1).ok());
}

TEST_CASE("S_mu U(2) presentation validates and rewriting is confluent") {
    HopfAlgebra A(fixtures::sumu2Presentation());
    Report r = A.validate(4, 11);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.ok());
    std::uint64_t st = 2024;
    int mismatches = 0;
    for (int s = 0; s < 10000; ++s) {
        int len = 1 + static_cast<int>(randomBelow(st, 6));
        Word w;
        for (int i = 0; i < len; ++i) w += static_cast<char>(randomBelow(st, 4));
        if (A.reduceRandomly(w, st) != A.normalWord(w)) ++mismatches;
    }
    CHECK(mismatches == 0);
    HopfElement alpha = A.parse("a");
    Tensor ad = A.adjointCoaction(alpha);
    HopfElement back;
    for (const auto& [k, c] : ad.terms()) back.add(k[0], c * A.counitOfWord(k[1]));
    CHECK(back == alpha);
}

TEST_CASE("antipode is an anti-homomorphism and adjoint coaction is a coaction") {
    HopfAlgebra A(fixtures::sumu2Presentation());
    std::uint64_t st = 5;
    for (int s = 0; s < 30; ++s) {
        Word x, y;
        for (int i = 0, n = 1 + static_cast<int>(randomBelow(st, 3)); i < n; ++i) x += static_cast<char>(randomBelow(st, 4));
        for (int i = 0, n = 1 + static_cast<int>(randomBelow(st, 3)); i < n; ++i) y += static_cast<char>(randomBelow(st, 4));
        HopfElement a = A.normalWord(x), b = A.normalWord(y);
        CHECK(A.antipode(A.mul(a, b)) == A.mul(A.antipode(b), A.antipode(a)));
        CHECK(A.counit(A.mul(a, b)) == A.counit(a) * A.counit(b));
        CHECK(A.star(A.mul(a, b)) == A.mul(A.star(b), A.star(a)));
    }
    for (const auto& w : A.normalWordsUpTo(2)) {
        HopfElement x = HopfElement::monomial(w);
        Tensor ad = A.adjointCoaction(x);
        // (ad (x) id) ad  vs  (id (x) phi) ad
        Tensor lhs(3), rhs(3);
        for (const auto& [k, c] : ad.terms()) {
            Tensor inner = A.adjointCoaction(HopfElement::monomial(k[0]));
            for (const auto& [k2, d] : inner.terms()) lhs.add({k2[0], k2[1], k[1]}, c * d);
            Tensor cp = A.coproductOfWord(k[1]);
            for (const auto& [k3, e] : cp.terms()) rhs.add({k[0], k3[0], k3[1]}, c * e);
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("broken counit is reported") {
    auto p = fixtures::u1Presentation();
    p.counit[1] = Scalar(2);
    HopfAlgebra A(p);
    Report r = A.validate(3, 1);
    CHECK(r.failed("counit-relations"));
}

TEST_CASE("non-terminating rules hit the budget") {
    HopfPresentation p;
    p.names = {"x", "y"};
    p.star = {0, 1};
    p.rules.push_back({fixtures::w({0, 1}), HopfElement::monomial(fixtures::w({1, 0}))});
    p.rules.push_back({fixtures::w({1, 0}), HopfElement::monomial(fixtures::w({0, 1}))});
    p.coproduct = {fixtures::pairs({{fixtures::w({0}), fixtures::w({0}), Scalar(1)}}),
                   fixtures::pairs({{fixtures::w({1}), fixtures::w({1}), Scalar(1)}})};
    p.counit = {Scalar(1), Scalar(1)};
    p.antipode = {HopfElement::monomial(fixtures::w({0})), HopfElement::monomial(fixtures::w({1}))};
    HopfAlgebra A(p);
    A.rewriteBudget = 1000;
    CHECK_THROWS_AS(A.normalWord(fixtures::w({0, 1, 0})), RewriteBudgetExceeded);
}
