#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qchar {

// Formal parameters. nu stands for the symbol 2*pi*i.
enum Param : int { kMu = 0, kLambda = 1, kNu = 2 };
constexpr int kNumParams = 3;

const char* paramName(int v);

using Monomial = std::array<std::uint16_t, kNumParams>;

// Multivariate polynomial with integer coefficients. Terms are kept sorted in
// descending lexicographic order of exponent vectors (mu > lambda > nu).
class Poly {
public:
    struct Term {
        Monomial exp;
        mpz_class coef;
    };

    Poly() = default;
    explicit Poly(long c);
    explicit Poly(const mpz_class& c);
    static Poly variable(int v, unsigned power = 1);
    static Poly fromTerms(std::vector<Term> terms);

    bool isZero() const { return t_.empty(); }
    bool isConstant() const;
    bool isOne() const;
    const std::vector<Term>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }

    int totalDegree() const;
    int degree(int v) const;
    const mpz_class& leadingCoef() const { return t_.front().coef; }
    mpz_class content() const;
    bool dependsOn(int v) const { return degree(v) > 0; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const mpz_class& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(unsigned k) const;
    // Flip the sign of every term with odd degree in v.
    Poly reflect(int v) const;
    // Divide all coefficients by an integer that is known to divide them.
    Poly divideContent(const mpz_class& c) const;
    Poly withPositiveLead() const;

    std::string str() const;

private:
    std::vector<Term> t_;
    void canonicalize();
    friend Poly divExact(const Poly& a, const Poly& b);
};

// Greatest common divisor, normalized to have a positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);
// a / b where b is known to divide a exactly; throws std::domain_error otherwise.
Poly divExact(const Poly& a, const Poly& b);

// Element of Q(mu, lambda, nu) in canonical reduced form: gcd(num, den) = 1 and
// the leading coefficient of den is positive.
class Scalar {
public:
    Scalar() : den_(1) {}
    Scalar(long c) : num_(c), den_(1) {}
    explicit Scalar(const mpz_class& c) : num_(c), den_(1) {}
    explicit Scalar(const mpq_class& c);
    explicit Scalar(Poly p) : num_(std::move(p)), den_(1) {}
    static Scalar param(int v);
    static Scalar fraction(Poly num, Poly den);
    // Parses the textual syntax: integers, mu, lambda, nu, + - * / ^ and parentheses.
    static Scalar parse(const std::string& text);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isOne() const { return num_.isOne() && den_.isOne(); }
    bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
    bool dependsOn(int v) const { return num_.dependsOn(v) || den_.dependsOn(v); }
    int numeratorDegree() const { return num_.isZero() ? 0 : num_.totalDegree(); }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const;
    Scalar pow(long k) const;
    // Complex conjugation: fixes mu and lambda, sends nu to -nu.
    Scalar conj() const;
    // Substitute a rational number for one parameter. lambda in {-1, 0, 1} is rejected.
    Scalar substitute(int v, const mpq_class& value) const;

    std::string str() const;

private:
    Poly num_;
    Poly den_;
    void reduce();
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// s (s-1) ... (s-k+1) / k!
Scalar binomial(const Scalar& s, unsigned k);

}  // namespace qchar
