#pragma once

#include "qchar/gla.hpp"
#include "qchar/hopf.hpp"
#include "qchar/report.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qchar {

// Elements of Gamma_inv are FinVectors over the basis; elements of
// Gamma_inv^(x)k use the base-n index a_1 n^(k-1) + ... + a_k.
using InvariantForm = FinVector;

struct CalculusTables {
    std::vector<std::string> basis;
    std::vector<FinVector> piOfGenerator;     // one per Hopf generator
    std::vector<LinearMap> circOfGenerator;   // column j holds theta_j o g
    std::vector<HopfElement> representatives; // pi(representatives[i]) = theta_i
    std::optional<std::vector<FinVector>> delta;  // delta(theta_i) in Gamma_inv^(x)2
    std::vector<FinVector> wedgeGenerators;   // generators of S^wedge2 (as a right module)
    std::vector<HopfElement> idealGenerators; // right ideal generators of R
};

class Calculus {
public:
    Calculus(std::shared_ptr<const HopfAlgebra> hopf, CalculusTables tables);

    const HopfAlgebra& hopf() const { return *hopf_; }
    std::shared_ptr<const HopfAlgebra> hopfPtr() const { return hopf_; }
    const CalculusTables& tables() const { return t_; }
    std::size_t dim() const { return t_.basis.size(); }
    int basisIndex(const std::string& name) const;

    InvariantForm pi(const HopfElement& a) const;
    InvariantForm piOfWord(const Word& w) const;
    // Matrix of theta -> theta o w.
    LinearMap circMatrix(const Word& w) const;
    LinearMap circMatrix(const HopfElement& a) const;
    InvariantForm circ(const InvariantForm& theta, const HopfElement& a) const;
    // Diagonal action on Gamma_inv^(x)2 through the coproduct.
    FinVector circTensor(const FinVector& x, const HopfElement& a) const;

    // varpi(theta_i) = sum_j theta_j (x) V(j, i)
    const HopfElement& V(std::size_t j, std::size_t i) const { return v_[j][i]; }
    // Matrix of the o-action of V(j, i) and pi(V(j, i)).
    const LinearMap& F(std::size_t j, std::size_t i) const { return f_[j][i]; }
    const FinVector& P(std::size_t j, std::size_t i) const { return p_[j][i]; }
    // Coefficients of varpi(theta) along theta_0..theta_{n-1}.
    std::vector<HopfElement> varpi(const InvariantForm& theta) const;

    InvariantForm starForm(const InvariantForm& theta) const;
    // (x (x) y)* = -y* (x) x*
    FinVector starTensor(const FinVector& x) const;
    FinVector cTop(const InvariantForm& theta) const;
    const LinearMap& sigma() const { return sigma_; }
    FinVector applySigma(const FinVector& x) const { return sigma_.apply(x); }
    // sigma acting on positions (pos, pos+1) of Gamma_inv^(x)k.
    LinearMap sigmaAt(int k, int pos) const;

    // q(a) = pi(a(1)) (x) pi(a(2))
    FinVector quadraticForm(const HopfElement& a) const;
    // d^(x) theta_i = -q(representative_i)
    FinVector tensorDifferential(std::size_t i) const;
    // Echelon basis of S^wedge2; empty optional when no data is available.
    const std::optional<std::vector<FinVector>>& wedgeSpace() const { return wedge_; }
    bool hasDelta() const { return t_.delta.has_value(); }
    const FinVector& delta(std::size_t i) const { return t_.delta->at(i); }

    Report validate(int maxDegree) const;

private:
    std::shared_ptr<const HopfAlgebra> hopf_;
    CalculusTables t_;
    std::vector<std::vector<HopfElement>> v_;
    std::vector<std::vector<LinearMap>> f_;
    std::vector<std::vector<FinVector>> p_;
    std::vector<FinVector> starBasis_;
    LinearMap sigma_;
    std::optional<std::vector<FinVector>> wedge_;

    mutable std::mutex mu_;
    mutable std::unordered_map<Word, FinVector> piMemo_;
    mutable std::unordered_map<Word, LinearMap> circMemo_;
};

struct DeltaSolution {
    bool found = false;
    std::vector<FinVector> delta;
    std::size_t solutionDimension = 0;  // dimension of the affine space of admissible delta
    std::string reason;
};

// Solves (sigma - I) delta = c^T for a hermitian, varpi-intertwining delta that
// lifts the envelope differential. Unknown coefficients are taken conjugation-invariant.
DeltaSolution deriveDelta(const Calculus& c);

// Basis of ker(eps) and ker(pi) inside the span of normal words up to the given length.
std::vector<HopfElement> idealElements(const Calculus& c, int maxLength);

// Index helpers for Gamma_inv^(x)k.
std::size_t tensorPower(std::size_t n, int k);
std::vector<int> tensorDigits(std::size_t index, std::size_t n, int k);

}  // namespace qchar
