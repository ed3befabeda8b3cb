#pragma once

#include "qchar/report.hpp"
#include "qchar/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qchar {

// A monomial: each character is a generator index. Index 0 is the largest
// generator in the declared order.
using Word = std::string;

// Shortlex on raw characters; used for deterministic storage order only.
struct ShortLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Degree-lexicographic comparison in the declared generator order: true when a > b.
bool deglexGreater(const Word& a, const Word& b);

class HopfElement {
public:
    using Terms = std::map<Word, Scalar, ShortLex>;

    HopfElement() = default;
    explicit HopfElement(const Scalar& c);
    static HopfElement monomial(const Word& w, const Scalar& c = Scalar(1));

    const Terms& terms() const { return t_; }
    bool isZero() const { return t_.empty(); }
    void add(const Word& w, const Scalar& c);
    void addScaled(const HopfElement& o, const Scalar& c);
    Scalar coefficient(const Word& w) const;
    // Degree of the longest word.
    int degree() const;

    HopfElement& operator+=(const HopfElement& o) {
        addScaled(o, Scalar(1));
        return *this;
    }
    HopfElement& operator-=(const HopfElement& o) {
        addScaled(o, Scalar(-1));
        return *this;
    }
    friend HopfElement operator+(HopfElement a, const HopfElement& b) { return a += b; }
    friend HopfElement operator-(HopfElement a, const HopfElement& b) { return a -= b; }
    friend HopfElement operator*(const Scalar& c, const HopfElement& a) {
        HopfElement r;
        r.addScaled(a, c);
        return r;
    }
    bool operator==(const HopfElement& o) const { return t_ == o.t_; }
    bool operator!=(const HopfElement& o) const { return !(*this == o); }

private:
    Terms t_;
};

// Sum of k-fold tensor products of monomials, one word per leg.
class Tensor {
public:
    using Key = std::vector<Word>;
    using Terms = std::map<Key, Scalar>;

    Tensor() = default;
    explicit Tensor(int legs) : legs_(legs) {}
    int legs() const { return legs_; }
    const Terms& terms() const { return t_; }
    bool isZero() const { return t_.empty(); }
    void add(const Key& k, const Scalar& c);
    void addScaled(const Tensor& o, const Scalar& c);
    bool operator==(const Tensor& o) const { return legs_ == o.legs_ && t_ == o.t_; }
    bool operator!=(const Tensor& o) const { return !(*this == o); }

private:
    int legs_ = 0;
    Terms t_;
};

struct RewriteRule {
    Word lhs;
    HopfElement rhs;  // words over generators, not necessarily normal
};

struct HopfPresentation {
    std::vector<std::string> names;  // declared order, largest first
    std::vector<int> star;           // star partner of each generator
    std::vector<RewriteRule> rules;
    std::vector<Tensor> coproduct;   // two legs, raw words
    std::vector<Scalar> counit;
    std::vector<HopfElement> antipode;

    int generatorIndex(const std::string& name) const;
};

class RewriteBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A finitely presented Hopf *-algebra with memoized normal forms.
class HopfAlgebra {
public:
    explicit HopfAlgebra(HopfPresentation p);

    const HopfPresentation& presentation() const { return p_; }
    int numGenerators() const { return static_cast<int>(p_.names.size()); }
    std::size_t rewriteBudget = 2000000;

    HopfElement one() const { return HopfElement(Scalar(1)); }
    HopfElement generator(int g) const { return HopfElement::monomial(Word(1, static_cast<char>(g))); }

    HopfElement normalWord(const Word& w) const;
    HopfElement normalize(const HopfElement& raw) const;
    bool isNormal(const Word& w) const;
    // Normal words of exactly the given length.
    std::vector<Word> normalWords(int length) const;
    std::vector<Word> normalWordsUpTo(int maxLength) const;

    HopfElement mul(const HopfElement& a, const HopfElement& b) const;
    HopfElement mulWords(const Word& a, const Word& b) const;
    HopfElement power(const HopfElement& a, unsigned k) const;

    Tensor coproduct(const HopfElement& a) const;
    Tensor coproductOfWord(const Word& w) const;
    // (phi (x) id ... ) applied k-1 times; k = 1 returns a itself as a one-leg tensor.
    Tensor iteratedCoproduct(const HopfElement& a, int k) const;
    // The same, expanding the last leg at each step.
    Tensor iteratedCoproductRight(const HopfElement& a, int k) const;
    Tensor expandLeg(const Tensor& t, int leg) const;
    Tensor tensorMul(const Tensor& a, const Tensor& b) const;
    Tensor normalizeTensor(const Tensor& t) const;

    Scalar counit(const HopfElement& a) const;
    Scalar counitOfWord(const Word& w) const;
    HopfElement antipode(const HopfElement& a) const;
    HopfElement antipodeOfWord(const Word& w) const;
    HopfElement star(const HopfElement& a) const;
    // ad(a) = a(2) (x) kappa(a(1)) a(3)
    Tensor adjointCoaction(const HopfElement& a) const;
    // Multiply the legs of a two-leg tensor.
    HopfElement multiplyLegs(const Tensor& t) const;
    HopfElement leg(const Tensor& t, int k) const;

    HopfElement parse(const std::string& text) const;
    std::string format(const HopfElement& a) const;
    std::string formatWord(const Word& w) const;
    std::string formatTensor(const Tensor& t) const;

    // Reduces with randomly chosen redexes; used for confluence sampling.
    HopfElement reduceRandomly(const Word& w, std::uint64_t& state) const;

    Report validate(int maxDegree, std::uint64_t seed, int confluenceSamples = 200, int sampleLength = 6) const;

private:
    HopfPresentation p_;
    std::vector<std::vector<std::size_t>> rulesByLast_;
    std::vector<Tensor> genCoproduct_;
    std::vector<HopfElement> genAntipode_;

    mutable std::mutex mu_;
    mutable std::unordered_map<Word, HopfElement> nf_;
    mutable std::unordered_map<Word, Tensor> cop_;
    mutable std::unordered_map<Word, HopfElement> kappa_;

    HopfElement nfRec(const Word& w, std::size_t& steps, int depth) const;
    HopfElement appendLetter(const Word& u, char x, std::size_t& steps, int depth) const;
    const HopfElement* lookupNf(const Word& w) const;
    void storeNf(const Word& w, const HopfElement& e) const;
};

// Deterministic generator used for sampling (splitmix64).
std::uint64_t nextRandom(std::uint64_t& state);
std::size_t randomBelow(std::uint64_t& state, std::size_t n);

}  // namespace qchar
