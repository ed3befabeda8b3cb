#pragma once

#include "qchar/calculus.hpp"
#include "qchar/exterior.hpp"
#include "qchar/report.hpp"
#include "qchar/universal.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qchar {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// A finite-dimensional representation u with phi(u_ij) = sum_k u_ik (x) u_kj and
// its intertwiner C_u between u and the double contragredient.
struct Representation {
    std::string name;
    std::vector<std::vector<HopfElement>> u;
    ScalarMatrix C;
    // optional data for the Euler class: conjugation intertwiner and a braid on H_u (x) H_u
    std::optional<ScalarMatrix> S;
    std::optional<LinearMap> braid;
    std::size_t dim() const { return u.size(); }
};

ScalarMatrix identityMatrix(std::size_t n);
// Throws std::domain_error for a singular matrix.
ScalarMatrix inverse(const ScalarMatrix& m);
Scalar trace(const ScalarMatrix& m);

Report validateRepresentation(const HopfAlgebra& A, const Representation& u);
Representation trivialRepresentation(std::size_t dim = 1);
Representation directSum(const Representation& u, const Representation& v);
Representation tensorProduct(const HopfAlgebra& A, const Representation& u, const Representation& v);

bool isAdInvariant(const HopfAlgebra& A, const HopfElement& a);

class NotInvariant : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// sum_ij (C^-1)_ij u_ji; throws NotInvariant when the result is not ad-invariant.
HopfElement character(const HopfAlgebra& A, const Representation& u);
Scalar quantumDimension(const Representation& u);

// pi^(x)k applied leg by leg to a k-leg tensor, in Gamma_inv^(x)k.
FinVector piTensor(const Calculus& c, const Tensor& t);

// coefficients[n] is the lambda^n coefficient, an element of Sigma^n.
struct ChernSeries {
    std::vector<FinVector> coefficients;
    Report report;  // invariance and centrality of each coefficient
};

// exp(sum_k lambda^k pi(a(1))...pi(a(k)) / k) truncated at lambda^order.
// Throws NotInvariant for a that is not ad-invariant.
ChernSeries chernSeries(const SigmaModel& sigma, const HopfElement& a, int order);
FinVector chernClass(const SigmaModel& sigma, const HopfElement& a, int n);

bool isCoactionInvariant(const SigmaModel& sigma, int p, const FinVector& x);
bool isCentral(const SigmaModel& sigma, int p, const FinVector& x);
// Antilinear involution of Sigma reversing products, theta -> theta* on letters.
FinVector sigmaStar(const SigmaModel& sigma, int p, const FinVector& x);
std::string formatSigma(const SigmaModel& sigma, int p, const FinVector& x);

// Polynomial in e: power -> coefficient.
// Characters of the given representations and of their conjugates, kept when ad-invariant.
std::vector<HopfElement> invariantGenerators(const HopfAlgebra& A, const std::vector<Representation>& reps);
// Integer combination of products of at most maxDegree generators.
HopfElement randomInvariant(const HopfAlgebra& A, const std::vector<HopfElement>& gens, std::uint64_t& state,
                            int maxDegree = 2);
// Delta(a + b) = Delta(a) Delta(b) and c_n(a)* = (-1)^n c_n(kappa(a)*), coefficient by coefficient.
Report chernIdentities(const SigmaModel& sigma, const HopfElement& a, const HopfElement& b, int order);

using EPolynomial = std::map<int, Scalar>;
// Action of the line bundle labelled n on e^k, through e^(k+order).
EPolynomial eulerActionSeries(int k, int n, int order);
std::string formatEPolynomial(const EPolynomial& p);

struct EulerClassResult {
    Report report;
    bool ok = false;
    std::vector<std::size_t> exteriorDims;  // ranks of A_k for k = 0..top+1
    int topDegree = -1;
    FinVector volume;     // in H_u^(x)k
    HopfElement determinant;
    FinVector eulerClass;  // in Sigma^(k/2)
    int eulerDegree = 0;
};
// Check names: "braid-equation", "braid-intertwines", "conjugation-intertwines",
// "lambda-intertwines", "volume-element", "even-top-degree", "unimodular", "invariant".
EulerClassResult quantumEulerClass(const SigmaModel& sigma, const Representation& u, const ScalarMatrix& S,
                                   const LinearMap& braid, const Scalar& normalization = Scalar(1));

// S_mu U(2) specific checks on the 4D calculus with basis tau, e3, ep, em.
Report sumu2SigmaRelations(const SigmaModel& sigma);

struct FactorizedChern {
    Report report;
    std::vector<FinVector> computed;  // in the quotient by (ep, em), basis from QuadraticAlgebra
    std::vector<FinVector> expected;
    std::vector<std::string> computedText;
    std::vector<std::string> expectedText;
    // whether the closed form agrees with the alternating-sign exponent instead
    bool alternatingMatches = false;
};
// Delta^lambda(chi_u) in Sigma / (ep, em) against the three-term binomial closed form.
FactorizedChern factorizedChernCheck(const SigmaModel& sigma, const Representation& u, int order);

}  // namespace qchar
