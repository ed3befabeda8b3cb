#pragma once

#include "qchar/hopf.hpp"

namespace fixtures {

using qchar::HopfElement;
using qchar::HopfPresentation;
using qchar::Scalar;
using qchar::Tensor;
using qchar::Word;

inline Word w(std::initializer_list<int> g) {
    Word r;
    for (int x : g) r += static_cast<char>(x);
    return r;
}

inline Tensor pairs(std::initializer_list<std::tuple<Word, Word, Scalar>> terms) {
    Tensor t(2);
    for (const auto& [a, b, c] : terms) t.add({a, b}, c);
    return t;
}

// U(1): generators u (0) and v = u^-1 (1).
inline HopfPresentation u1Presentation() {
    HopfPresentation p;
    p.names = {"u", "v"};
    p.star = {1, 0};
    p.rules.push_back({w({0, 1}), HopfElement(Scalar(1))});
    p.rules.push_back({w({1, 0}), HopfElement(Scalar(1))});
    p.coproduct = {pairs({{w({0}), w({0}), Scalar(1)}}), pairs({{w({1}), w({1}), Scalar(1)}})};
    p.counit = {Scalar(1), Scalar(1)};
    p.antipode = {HopfElement::monomial(w({1})), HopfElement::monomial(w({0}))};
    return p;
}

// S_mu U(2): a = alpha (0), A = alpha* (1), G = gamma* (2), g = gamma (3).
inline HopfPresentation sumu2Presentation() {
    const Scalar mu = Scalar::param(qchar::kMu);
    const int a = 0, A = 1, G = 2, g = 3;
    HopfPresentation p;
    p.names = {"a", "A", "G", "g"};
    p.star = {A, a, g, G};
    auto rule = [&](Word lhs, std::initializer_list<std::pair<Word, Scalar>> rhs) {
        HopfElement e;
        for (const auto& [x, c] : rhs) e.add(x, c);
        p.rules.push_back({lhs, e});
    };
    rule(w({a, g}), {{w({g, a}), mu}});
    rule(w({a, G}), {{w({G, a}), mu}});
    rule(w({A, g}), {{w({g, A}), mu.inverse()}});
    rule(w({A, G}), {{w({G, A}), mu.inverse()}});
    rule(w({G, g}), {{w({g, G}), Scalar(1)}});
    rule(w({A, a}), {{Word(), Scalar(1)}, {w({g, G}), Scalar(-1)}});
    rule(w({a, A}), {{Word(), Scalar(1)}, {w({g, G}), -mu * mu}});
    p.coproduct.resize(4);
    p.coproduct[a] = pairs({{w({a}), w({a}), Scalar(1)}, {w({G}), w({g}), -mu}});
    p.coproduct[A] = pairs({{w({A}), w({A}), Scalar(1)}, {w({g}), w({G}), -mu}});
    p.coproduct[G] = pairs({{w({a}), w({G}), Scalar(1)}, {w({G}), w({A}), Scalar(1)}});
    p.coproduct[g] = pairs({{w({g}), w({a}), Scalar(1)}, {w({A}), w({g}), Scalar(1)}});
    p.counit = {Scalar(1), Scalar(1), Scalar(0), Scalar(0)};
    p.antipode.resize(4);
    p.antipode[a] = HopfElement::monomial(w({A}));
    p.antipode[A] = HopfElement::monomial(w({a}));
    p.antipode[G] = HopfElement::monomial(w({G}), -mu.inverse());
    p.antipode[g] = HopfElement::monomial(w({g}), -mu);
    return p;
}

}  // namespace fixtures

#include "qchar/calculus.hpp"
#include "qchar/classes.hpp"

#include <memory>

namespace fixtures {

inline qchar::LinearMap matrix(const std::vector<std::vector<const char*>>& rows) {
    const std::size_t n = rows.size();
    qchar::LinearMap m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Scalar> col;
        for (std::size_t i = 0; i < n; ++i) col.push_back(Scalar::parse(rows[i][j]));
        m.setColumn(j, qchar::FinVector::fromDense(col));
    }
    return m;
}

inline qchar::FinVector vec(std::initializer_list<const char*> xs) {
    std::vector<Scalar> d;
    for (const char* x : xs) d.push_back(Scalar::parse(x));
    return qchar::FinVector::fromDense(d);
}

// One-dimensional calculus on U(1) with zeta o u = lambda zeta.
inline qchar::CalculusTables u1Tables(const qchar::HopfAlgebra& A) {
    qchar::CalculusTables t;
    t.basis = {"zeta"};
    t.piOfGenerator = {vec({"1-lambda"}), vec({"1-1/lambda"})};
    t.circOfGenerator = {matrix({{"lambda"}}), matrix({{"1/lambda"}})};
    t.representatives = {A.parse("(u-1)/(1-lambda)")};
    t.idealGenerators = {A.parse("v + u/lambda - (1+1/lambda)")};
    return t;
}

// 4D calculus on S_mu U(2), basis tau, e3, ep, em.
inline qchar::CalculusTables sumu2Tables(const qchar::HopfAlgebra& A) {
    qchar::CalculusTables t;
    t.basis = {"tau", "e3", "ep", "em"};
    t.piOfGenerator = {vec({"1/(1+mu^2)", "1/(1+mu^2)", "0", "0"}), vec({"1/(1+mu^2)", "-mu^2/(1+mu^2)", "0", "0"}),
                       vec({"0", "0", "0", "1"}), vec({"0", "0", "1", "0"})};
    const char* k1 = "(mu^4+1)/(mu^3+mu)";
    const char* k2 = "mu*(mu+1)^2/((mu^2+1)*(mu^2+mu+1))";
    const char* k2n = "-(mu+1)^2/(mu*(mu^2+1)*(mu^2+mu+1))";
    const char* k3 = "(mu-1)*(mu^3-1)/(mu^3+mu)";
    const char* k4 = "2*mu/(mu^2+1)";
    const char* k5 = "-mu*(mu-1)*(mu^3-1)/(mu^2+1)";
    const char* k6 = "(mu^2-1)/(mu^3+mu)";
    const char* k7 = "(mu-1)*(mu^3-1)/mu";
    const char* k8 = "mu-1/mu";
    t.circOfGenerator = {
        matrix({{k1, k2, "0", "0"}, {k3, k4, "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}),
        matrix({{k1, k2n, "0", "0"}, {k5, k4, "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}),
        matrix({{"0", "0", k2n, "0"}, {"0", "0", k6, "0"}, {"0", "0", "0", "0"}, {k7, k8, "0", "0"}}),
        matrix({{"0", "0", "0", k2n}, {"0", "0", "0", k6}, {k7, k8, "0", "0"}, {"0", "0", "0", "0"}}),
    };
    t.representatives = {A.parse("mu^2*a + A"), A.parse("a - A"), A.parse("g"), A.parse("G")};
    return t;
}

inline std::shared_ptr<qchar::Calculus> u1Calculus() {
    auto A = std::make_shared<qchar::HopfAlgebra>(u1Presentation());
    return std::make_shared<qchar::Calculus>(A, u1Tables(*A));
}

// The ideal generators are taken from the degree <= 2 part of ker(eps) and ker(pi).
inline std::shared_ptr<qchar::Calculus> sumu2Calculus() {
    auto A = std::make_shared<qchar::HopfAlgebra>(sumu2Presentation());
    auto t = sumu2Tables(*A);
    qchar::Calculus bare(A, t);
    t.idealGenerators = qchar::idealElements(bare, 2);
    return std::make_shared<qchar::Calculus>(A, t);
}

// Same calculus with delta filled in by deriveDelta.
inline std::shared_ptr<qchar::Calculus> withDelta(const std::shared_ptr<qchar::Calculus>& c) {
    auto d = qchar::deriveDelta(*c);
    auto t = c->tables();
    t.delta = d.delta;
    return std::make_shared<qchar::Calculus>(c->hopfPtr(), t);
}

inline qchar::ScalarMatrix smatrix(const std::vector<std::vector<const char*>>& rows) {
    qchar::ScalarMatrix m;
    for (const auto& r : rows) {
        m.emplace_back();
        for (const char* x : r) m.back().push_back(Scalar::parse(x));
    }
    return m;
}

// Fundamental representation of S_mu U(2).
inline qchar::Representation sumu2Fundamental(const qchar::HopfAlgebra& A) {
    qchar::Representation u;
    u.name = "fundamental";
    u.u = {{A.parse("a"), A.parse("-mu*G")}, {A.parse("g"), A.parse("A")}};
    u.C = smatrix({{"1/mu", "0"}, {"0", "mu"}});
    return u;
}

// Hecke braid on C^2 (x) C^2 normalized to eigenvalue 1 on the symmetric part.
inline qchar::LinearMap sumu2Braid() {
    return matrix({{"1", "0", "0", "0"}, {"0", "1-1/mu^2", "1/mu", "0"}, {"0", "1/mu", "0", "0"}, {"0", "0", "0", "1"}});
}

// diag(u, u^-1) on U(1), self-conjugate through the swap.
inline qchar::Representation u1Pair(const qchar::HopfAlgebra& A) {
    qchar::Representation u;
    u.name = "pair";
    u.u = {{A.parse("u"), HopfElement()}, {HopfElement(), A.parse("v")}};
    u.C = smatrix({{"1", "0"}, {"0", "1"}});
    return u;
}

}  // namespace fixtures
