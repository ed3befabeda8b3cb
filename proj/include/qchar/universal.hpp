#pragma once

#include "qchar/calculus.hpp"
#include "qchar/exterior.hpp"
#include "qchar/gla.hpp"
#include "qchar/report.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace qchar {

// Letters 0..n-1 are theta_i (degree 1), letters n..2n-1 are Theta_i = d theta_i (degree 2).
using OmegaWord = std::vector<int>;

// Free graded-differential algebra generated by Gamma_inv with d(1) = 0.
class OmegaSpace {
public:
    explicit OmegaSpace(std::size_t generators) : n_(generators) {}

    std::size_t generators() const { return n_; }
    int letterDegree(int letter) const { return letter < static_cast<int>(n_) ? 1 : 2; }
    int wordDegree(const OmegaWord& w) const;
    const std::vector<OmegaWord>& basis(int degree) const;
    std::size_t dim(int degree) const { return basis(degree).size(); }
    std::size_t index(int degree, const OmegaWord& w) const;
    FinVector word(const OmegaWord& w, const Scalar& c = Scalar(1)) const;

    // d of a degree-k element
    FinVector d(int degree, const FinVector& x) const;
    LinearMap differential(int degree) const;
    FinVector multiply(int p, const FinVector& x, int q, const FinVector& y) const;
    std::string format(int degree, const FinVector& x, const std::vector<std::string>& names) const;

private:
    std::size_t n_;
    mutable std::mutex mu_;
    mutable std::deque<std::vector<OmegaWord>> basis_;
    mutable std::deque<std::map<OmegaWord, std::size_t>> index_;
};

// dim H^k(Omega) for k = 0..maxDegree.
std::vector<std::size_t> omegaCohomology(const OmegaSpace& omega, int maxDegree);

// Sigma = tensor algebra over Gamma_inv modulo the ideal generated by im(I - sigma),
// with the projected coaction varpi.
class SigmaModel {
public:
    explicit SigmaModel(std::shared_ptr<const Calculus> c);

    const Calculus& calculus() const { return *c_; }
    const QuadraticAlgebra& algebra() const { return alg_; }
    std::size_t dim(int p) const { return alg_.dim(p); }
    // varpi(e_i) = sum_j e_j (x) coaction(p, i)[j]
    std::vector<HopfElement> coaction(int p, std::size_t i) const;
    // Basis of the varpi-invariant part of Sigma^p.
    std::vector<FinVector> invariants(int p) const;

private:
    std::shared_ptr<const Calculus> c_;
    QuadraticAlgebra alg_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, std::size_t>, std::vector<HopfElement>> coaction_;
    mutable std::map<int, std::vector<FinVector>> invariants_;
};

std::vector<FinVector> sigmaRelations(const Calculus& c);
// I(Sigma)^p for p <= maxDegree against the generators (which implies centrality in
// every degree), and against every Sigma^q basis element with p + q <= pairDegree.
Report checkCentrality(const SigmaModel& sigma, int maxDegree, int pairDegree);

// Omega_* = Omega / K realised on Sigma (x) Gamma_inv^wedge. The Sigma factor
// stands for products of curvatures R(theta_i).
class OmegaStar {
public:
    explicit OmegaStar(std::shared_ptr<const Calculus> c);

    const Calculus& calculus() const { return *c_; }
    const SigmaModel& sigma() const { return sigma_; }
    const QuadraticAlgebra& envelope() const { return env_; }

    struct Slot {
        int p;
        int q;
        std::size_t sigmaIndex;
        std::size_t formIndex;
    };
    std::size_t dim(int degree) const;
    Slot slot(int degree, std::size_t i) const;
    // psi (x) eta with psi in Sigma^p and eta in Gamma_inv^wedge q
    FinVector pack(int p, const FinVector& psi, int q, const FinVector& eta) const;

    FinVector multiply(int p, const FinVector& x, int q, const FinVector& y) const;
    FinVector theta(std::size_t i) const;
    FinVector curvature(std::size_t i) const;

    FinVector covariantDerivative(int degree, const FinVector& x) const;
    FinVector verticalDifferential(int degree, const FinVector& x) const;
    // d from the Leibniz rule and d theta_i = R(theta_i) + delta(theta_i).
    FinVector totalDifferential(int degree, const FinVector& x) const;
    LinearMap matrix(int degree, int which) const;  // 0: D, 1: d_vh, 2: d

    // The projection Omega -> Omega_* (theta_i -> theta_i, Theta_i -> d theta_i).
    FinVector project(const OmegaSpace& omega, int degree, const FinVector& x) const;

    // Identities D^2 = 0, d_vh^2 = 0, D d_vh + d_vh D = 0, D + d_vh = d on basis elements.
    Report checkIdentities(int maxDegree) const;

private:
    std::shared_ptr<const Calculus> c_;
    SigmaModel sigma_;
    QuadraticAlgebra env_;
    std::size_t n_;

    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, std::size_t, int, int>, FinVector> circV_;
    mutable std::map<OmegaWord, FinVector> projected_;
    mutable std::map<std::pair<int, std::size_t>, FinVector> dBasis_;

    std::size_t offset(int degree, int p) const;
    std::size_t formDim(int q) const { return env_.dim(q); }
    // eta o V(j, z) for a basis element eta of Gamma_inv^wedge q.
    FinVector circV(int q, std::size_t eta, int j, int z) const;
    FinVector circV(int q, const FinVector& eta, int j, int z) const;
    FinVector multiplyBasis(const Slot& a, const Slot& b) const;
    FinVector dTheta(std::size_t i) const;
    FinVector dCurvature(std::size_t i) const;
    FinVector dBasis(int degree, std::size_t i) const;
};

struct KIdealResult {
    Report report;
    std::vector<std::size_t> omegaDims;
    std::vector<std::size_t> idealDims;
    std::vector<std::size_t> quotientDims;
    std::vector<std::size_t> quotientCohomology;  // H^k(Omega_*) for k < maxDegree
};
// Generators of K in Omega: S^wedge2, j3 and j4, graded by degree.
std::vector<std::pair<int, FinVector>> kIdealGenerators(const OmegaStar& star, const OmegaSpace& omega);
KIdealResult kIdealCheck(const OmegaStar& star, int maxDegree);

// Element of Omega^k (x) Gamma^wedge, the Gamma^wedge leg written as a (x) vartheta
// with a in A and vartheta a basis element of Gamma_inv^wedge.
struct MixedKey {
    int k;  // Omega degree
    std::size_t omega;
    int q;  // Gamma_inv^wedge degree
    std::size_t form;
    Word a;
    bool operator<(const MixedKey& o) const {
        return std::tie(k, omega, q, form, a) < std::tie(o.k, o.omega, o.q, o.form, o.a);
    }
    bool operator==(const MixedKey& o) const { return std::tie(k, omega, q, form, a) == std::tie(o.k, o.omega, o.q, o.form, o.a); }
};
using MixedForm = std::map<MixedKey, Scalar>;

// The extended coaction on Omega and the subalgebras it determines.
class UniversalModel {
public:
    explicit UniversalModel(std::shared_ptr<const Calculus> c);

    const Calculus& calculus() const { return *c_; }
    const OmegaSpace& omega() const { return omega_; }
    const QuadraticAlgebra& envelope() const { return env_; }

    MixedForm adTilde(int degree, const FinVector& x) const;
    MixedForm mixedMultiply(const MixedForm& x, const MixedForm& y) const;
    // d on Omega (x) Gamma^wedge with d(a) = a(1) pi(a(2)) on the A leg.
    MixedForm mixedDifferential(const MixedForm& x) const;
    // (id (x) scalar part) adTilde: Omega (x) A, keyed by (omega index, word).
    std::map<std::pair<std::size_t, Word>, Scalar> adWedge(int degree, const FinVector& x) const;
    // Projection of adTilde onto Omega (x) Gamma_inv, with eps on the A leg.
    std::map<std::pair<std::size_t, std::size_t>, Scalar> verticalContraction(int degree, const FinVector& x) const;

    std::vector<FinVector> dalethBasis(int degree) const;
    std::vector<FinVector> horizontalBasis(int degree) const;
    std::vector<FinVector> contractionKernel(int degree) const;

    struct Cohomology {
        std::vector<std::size_t> dims;
        std::vector<std::vector<FinVector>> representatives;
    };
    // H^k of daleth for k = 0..maxDegree (needs daleth up to maxDegree + 1).
    Cohomology dalethCohomology(int maxDegree) const;

    // Checks adTilde d = d adTilde and the coaction law of ad_wedge on basis elements.
    Report checkCoaction(int maxDegree) const;

private:
    std::shared_ptr<const Calculus> c_;
    OmegaSpace omega_;
    QuadraticAlgebra env_;

    mutable std::mutex mu_;
    mutable std::map<OmegaWord, MixedForm> ad_;
    mutable std::map<std::pair<Word, std::pair<int, std::size_t>>, FinVector> circ_;

    MixedForm adWord(const OmegaWord& w) const;
    MixedForm adLetter(int letter) const;
    FinVector circForm(int q, std::size_t form, const Word& a) const;
    std::vector<FinVector> kernelOf(int degree, int mode) const;
};

}  // namespace qchar
