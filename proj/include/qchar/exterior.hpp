#pragma once

#include "qchar/calculus.hpp"
#include "qchar/gla.hpp"
#include "qchar/report.hpp"

#include <deque>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace qchar {

// T(V) / (R) for a space R of quadratic relations, built degree by degree:
// Q_{k+1} = (Q_k (x) V) / image of Q_{k-1} (x) R. Basis elements of degree k
// are pairs (parent in degree k-1, letter); each has a representative word.
class QuadraticAlgebra {
public:
    QuadraticAlgebra(std::size_t generators, std::vector<FinVector> relations);

    std::size_t generators() const { return n_; }
    const std::vector<FinVector>& relations() const { return rel_; }
    std::size_t dim(int k) const;
    std::vector<int> word(int k, std::size_t i) const;

    // x in degree k times the letter a.
    FinVector appendLetter(int k, const FinVector& x, int a) const;
    FinVector appendWord(int k, FinVector x, const std::vector<int>& w) const;
    // x in degree k times a tensor in V^(x)m (base-n indices).
    FinVector appendTensor(int k, const FinVector& x, int m, const FinVector& t) const;
    FinVector fromWord(const std::vector<int>& w) const { return appendWord(0, FinVector::unit(0), w); }
    FinVector fromTensor(int m, const FinVector& t) const { return appendTensor(0, FinVector::unit(0), m, t); }
    FinVector multiply(int p, const FinVector& x, int q, const FinVector& y) const;

private:
    std::size_t n_;
    std::vector<FinVector> rel_;
    mutable std::mutex mu_;
    // deques keep references to built degrees stable while later degrees are added
    mutable std::deque<std::size_t> dims_;
    mutable std::deque<std::vector<std::size_t>> parent_;
    mutable std::deque<std::vector<int>> letter_;
    // red_[k][y * n + a]: coordinates in degree k of (basis y of degree k-1) times a
    mutable std::deque<std::vector<FinVector>> red_;

    void extendTo(int k) const;
};

// Operators built from a braid on V (x) V, dim V = m.
LinearMap braidAt(const LinearMap& braid, std::size_t m, int k, int pos);
// sigma_pi for a permutation given by images p[i], via a reduced word.
LinearMap permutationOperator(const LinearMap& braid, std::size_t m, const std::vector<int>& p);
// Signed sum over (k,l)-shuffles.
LinearMap shuffleSum(const LinearMap& braid, std::size_t m, int k, int l);
// A_n via A_n = (A_{n-1} (x) id) A_{n-1,1}.
LinearMap antisymmetrizer(const LinearMap& braid, std::size_t m, int n);
// A_n as the signed sum over all of S_n.
LinearMap antisymmetrizerDirect(const LinearMap& braid, std::size_t m, int n);
// Reduced word of a permutation (letters i meaning the transposition (i, i+1)), rightmost factor first.
std::vector<int> reducedWord(std::vector<int> p);

enum class CalculusKind { Vee, Wedge };
std::string kindName(CalculusKind k);

// Per-degree dimensions and differentials d_k : degree k -> degree k+1.
struct GradedModel {
    CalculusKind kind = CalculusKind::Wedge;
    std::vector<std::size_t> dims;
    std::vector<LinearMap> differential;
};

// d^(x) on V^(x)k extended from d^(x) theta_i = -q(representative_i).
FinVector tensorAlgebraDifferential(const Calculus& c, int k, std::size_t index);

// A_(k+l) = (A_k (x) A_l) A_(kl) for k + l <= maxN; recursion against the permutation sum for n <= min(maxN, 3).
Report antisymmetrizerChecks(const LinearMap& braid, std::size_t m, int maxN);

std::vector<std::size_t> exteriorDims(const Calculus& c, int maxDegree);
// The envelope Gamma_inv^wedge as a quadratic algebra over S^wedge2.
QuadraticAlgebra envelopeAlgebra(const Calculus& c);
// Differential of a basis element of Gamma_inv^wedge of degree k.
FinVector envelopeDifferential(const Calculus& c, const QuadraticAlgebra& env, int k, std::size_t i);
GradedModel envelopeModel(const Calculus& c, int maxDegree);
GradedModel veeModel(const Calculus& c, int maxDegree);
// H^k for k below the top built degree.
std::vector<std::size_t> groupCohomology(const GradedModel& m);

}  // namespace qchar
