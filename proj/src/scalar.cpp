#include "qchar/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qchar {

const char* paramName(int v) {
    static const char* names[kNumParams] = {"mu", "lambda", "nu"};
    return names[v];
}

namespace {

bool lexGreater(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kNumParams; ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

bool divides(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kNumParams; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mulMono(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kNumParams; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    return r;
}

}  // namespace

Poly::Poly(long c) {
    if (c != 0) t_.push_back({Monomial{0, 0, 0}, mpz_class(c)});
}

Poly::Poly(const mpz_class& c) {
    if (c != 0) t_.push_back({Monomial{0, 0, 0}, c});
}

Poly Poly::variable(int v, unsigned power) {
    Poly p;
    Monomial m{0, 0, 0};
    m[v] = static_cast<std::uint16_t>(power);
    p.t_.push_back({m, mpz_class(1)});
    return p;
}

Poly Poly::fromTerms(std::vector<Term> terms) {
    Poly p;
    p.t_ = std::move(terms);
    p.canonicalize();
    return p;
}

void Poly::canonicalize() {
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return lexGreater(a.exp, b.exp); });
    std::size_t out = 0;
    for (std::size_t i = 0; i < t_.size();) {
        std::size_t j = i + 1;
        mpz_class c = t_[i].coef;
        while (j < t_.size() && t_[j].exp == t_[i].exp) c += t_[j++].coef;
        if (c != 0) {
            t_[out].exp = t_[i].exp;
            t_[out].coef = std::move(c);
            ++out;
        }
        i = j;
    }
    t_.resize(out);
}

bool Poly::isConstant() const {
    return t_.empty() || (t_.size() == 1 && t_[0].exp == Monomial{0, 0, 0});
}

bool Poly::isOne() const {
    return t_.size() == 1 && t_[0].exp == Monomial{0, 0, 0} && t_[0].coef == 1;
}

int Poly::totalDegree() const {
    int d = 0;
    for (const auto& t : t_) d = std::max(d, t.exp[0] + t.exp[1] + t.exp[2]);
    return d;
}

int Poly::degree(int v) const {
    int d = 0;
    for (const auto& t : t_) d = std::max(d, static_cast<int>(t.exp[v]));
    return d;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& t : t_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.coef = -t.coef;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.t_.empty()) return *this;
    if (t_.empty()) return *this = o;
    std::vector<Term> r;
    r.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && lexGreater(t_[i].exp, o.t_[j].exp))) {
            r.push_back(std::move(t_[i++]));
        } else if (i == t_.size() || lexGreater(o.t_[j].exp, t_[i].exp)) {
            r.push_back(o.t_[j++]);
        } else {
            mpz_class c = t_[i].coef + o.t_[j].coef;
            if (c != 0) r.push_back({t_[i].exp, std::move(c)});
            ++i;
            ++j;
        }
    }
    t_ = std::move(r);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.t_.empty() || b.t_.empty()) return r;
    if (b.isConstant()) {
        r = a;
        return r *= b.t_[0].coef;
    }
    if (a.isConstant()) {
        r = b;
        return r *= a.t_[0].coef;
    }
    r.t_.reserve(a.t_.size() * b.t_.size());
    for (const auto& x : a.t_)
        for (const auto& y : b.t_) r.t_.push_back({mulMono(x.exp, y.exp), x.coef * y.coef});
    r.canonicalize();
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const mpz_class& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& t : t_) t.coef *= c;
    return *this;
}

bool Poly::operator==(const Poly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (t_[i].exp != o.t_[i].exp || t_[i].coef != o.t_[i].coef) return false;
    return true;
}

Poly Poly::pow(unsigned k) const {
    Poly r(1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

Poly Poly::reflect(int v) const {
    Poly r = *this;
    for (auto& t : r.t_)
        if (t.exp[v] & 1) t.coef = -t.coef;
    return r;
}

Poly Poly::divideContent(const mpz_class& c) const {
    Poly r = *this;
    for (auto& t : r.t_) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
    return r;
}

Poly Poly::withPositiveLead() const {
    if (!t_.empty() && t_.front().coef < 0) return -*this;
    return *this;
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        mpz_class c = t.coef;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool constant = t.exp == Monomial{0, 0, 0};
        bool needStar = false;
        if (c != 1 || constant) {
            os << c.get_str();
            needStar = true;
        }
        for (int v = 0; v < kNumParams; ++v) {
            if (!t.exp[v]) continue;
            if (needStar) os << "*";
            os << paramName(v);
            if (t.exp[v] > 1) os << "^" << t.exp[v];
            needStar = true;
        }
    }
    return os.str();
}

Poly divExact(const Poly& a, const Poly& b) {
    if (b.isZero()) throw std::domain_error("polynomial division by zero");
    if (b.isConstant()) {
        Poly r = a;
        const mpz_class& c = b.t_[0].coef;
        for (auto& t : r.t_) {
            if (!mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t()))
                throw std::domain_error("inexact polynomial division");
            mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
        }
        return r;
    }
    std::vector<Poly::Term> q;
    Poly r = a;
    const auto& lb = b.t_.front();
    while (!r.isZero()) {
        const auto& lr = r.t_.front();
        if (!divides(lb.exp, lr.exp) || !mpz_divisible_p(lr.coef.get_mpz_t(), lb.coef.get_mpz_t()))
            throw std::domain_error("inexact polynomial division");
        Monomial m;
        for (int i = 0; i < kNumParams; ++i) m[i] = static_cast<std::uint16_t>(lr.exp[i] - lb.exp[i]);
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), lr.coef.get_mpz_t(), lb.coef.get_mpz_t());
        Poly step;
        step.t_.reserve(b.t_.size());
        for (const auto& t : b.t_) step.t_.push_back({mulMono(t.exp, m), -(t.coef * c)});
        q.push_back({m, c});
        r += step;
    }
    return Poly::fromTerms(std::move(q));
}

namespace {

// Coefficients of p viewed as a polynomial in v; entry k multiplies v^k.
std::vector<Poly> coeffsIn(const Poly& p, int v) {
    std::vector<std::vector<Poly::Term>> buckets(p.degree(v) + 1);
    for (const auto& t : p.terms()) {
        Monomial m = t.exp;
        int k = m[v];
        m[v] = 0;
        buckets[k].push_back({m, t.coef});
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Poly::fromTerms(std::move(b)));
    return out;
}

Poly fromCoeffs(const std::vector<Poly>& c, int v) {
    std::vector<Poly::Term> terms;
    for (std::size_t k = 0; k < c.size(); ++k)
        for (const auto& t : c[k].terms()) {
            Monomial m = t.exp;
            m[v] = static_cast<std::uint16_t>(k);
            terms.push_back({m, t.coef});
        }
    return Poly::fromTerms(std::move(terms));
}

Poly contentIn(const Poly& p, int v) {
    Poly g;
    for (const auto& c : coeffsIn(p, v)) {
        if (c.isZero()) continue;
        g = gcd(g, c);
        if (g.isOne()) break;
    }
    return g;
}

void trim(std::vector<Poly>& a) {
    while (!a.empty() && a.back().isZero()) a.pop_back();
}

// Pseudo-remainder of a by b with respect to v (up to a power of the leading coefficient of b).
Poly pseudoRemainder(const Poly& pa, const Poly& pb, int v) {
    auto a = coeffsIn(pa, v);
    auto b = coeffsIn(pb, v);
    trim(a);
    trim(b);
    const std::size_t db = b.size() - 1;
    const Poly& lb = b[db];
    while (!a.empty() && a.size() - 1 >= db) {
        std::size_t da = a.size() - 1;
        Poly la = a[da];
        for (auto& c : a) c = lb * c;
        for (std::size_t j = 0; j <= db; ++j) a[j + da - db] -= la * b[j];
        trim(a);
    }
    return fromCoeffs(a, v);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.isZero()) return b.withPositiveLead();
    if (b.isZero()) return a.withPositiveLead();
    if (a.isConstant() || b.isConstant()) {
        mpz_class g;
        mpz_class ca = a.content(), cb = b.content();
        mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        return Poly(g);
    }
    int shared = -1;
    for (int v = 0; v < kNumParams && shared < 0; ++v)
        if (a.dependsOn(v) && b.dependsOn(v)) shared = v;
    if (shared < 0) {
        for (int v = 0; v < kNumParams; ++v)
            if (a.dependsOn(v)) return gcd(contentIn(a, v), b);
        return Poly(1);
    }
    const int v = shared;
    Poly ca = contentIn(a, v), cb = contentIn(b, v);
    Poly c = gcd(ca, cb);
    Poly A = divExact(a, ca), B = divExact(b, cb);
    if (A.degree(v) < B.degree(v)) std::swap(A, B);
    for (;;) {
        Poly r = pseudoRemainder(A, B, v);
        if (r.isZero()) break;
        if (r.degree(v) == 0) {
            B = Poly(1);
            break;
        }
        A = std::move(B);
        B = divExact(r, contentIn(r, v));
    }
    B = divExact(B, contentIn(B, v));
    return (c * B).withPositiveLead();
}

Scalar::Scalar(const mpq_class& c) : num_(c.get_num()), den_(c.get_den()) {}

Scalar Scalar::param(int v) { return Scalar(Poly::variable(v)); }

Scalar Scalar::fraction(Poly num, Poly den) {
    if (den.isZero()) throw std::domain_error("division by zero");
    Scalar s;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.reduce();
    return s;
}

void Scalar::reduce() {
    if (num_.isZero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.isOne()) return;
    Poly g = gcd(num_, den_);
    if (!g.isOne()) {
        num_ = divExact(num_, g);
        den_ = divExact(den_, g);
    }
    if (den_.leadingCoef() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.isZero()) return *this;
    if (isZero()) return *this = o;
    if (den_.isOne() && o.den_.isOne()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        reduce();
        return *this;
    }
    Poly g = gcd(den_, o.den_);
    Poly dn = divExact(o.den_, g);
    Poly mine = divExact(den_, g);
    num_ = num_ * dn + o.num_ * mine;
    den_ = den_ * dn;
    reduce();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (isZero()) return *this;
    if (o.isZero()) return *this = Scalar();
    if (den_.isOne() && o.den_.isOne()) {
        num_ = num_ * o.num_;
        return *this;
    }
    Poly g1 = gcd(num_, o.den_);
    Poly g2 = gcd(o.num_, den_);
    Poly n = divExact(num_, g1) * divExact(o.num_, g2);
    Poly d = divExact(den_, g2) * divExact(o.den_, g1);
    num_ = std::move(n);
    den_ = std::move(d);
    if (den_.leadingCoef() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    return *this;
}

Scalar Scalar::inverse() const {
    if (isZero()) throw std::domain_error("division by zero");
    Scalar r;
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_.leadingCoef() < 0) {
        r.num_ = -r.num_;
        r.den_ = -r.den_;
    }
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Scalar r;
    r.num_ = num_.pow(static_cast<unsigned>(k));
    r.den_ = den_.pow(static_cast<unsigned>(k));
    return r;
}

Scalar Scalar::conj() const {
    if (!dependsOn(kNu)) return *this;
    return fraction(num_.reflect(kNu), den_.reflect(kNu));
}

namespace {

Scalar substitutePoly(const Poly& p, int v, const mpq_class& value) {
    const int deg = p.degree(v);
    const mpz_class& a = value.get_num();
    const mpz_class& b = value.get_den();
    std::vector<Poly::Term> terms;
    for (const auto& t : p.terms()) {
        Monomial m = t.exp;
        int e = m[v];
        m[v] = 0;
        mpz_class ap, bp;
        mpz_pow_ui(ap.get_mpz_t(), a.get_mpz_t(), e);
        mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), deg - e);
        terms.push_back({m, t.coef * ap * bp});
    }
    mpz_class bd;
    mpz_pow_ui(bd.get_mpz_t(), b.get_mpz_t(), deg);
    return Scalar::fraction(Poly::fromTerms(std::move(terms)), Poly(bd));
}

}  // namespace

Scalar Scalar::substitute(int v, const mpq_class& value) const {
    if (v == kLambda && (value == 0 || value == 1 || value == -1))
        throw std::invalid_argument("lambda may not be specialized to -1, 0 or 1");
    Scalar d = substitutePoly(den_, v, value);
    if (d.isZero()) throw std::domain_error("specialization hits a pole");
    return substitutePoly(num_, v, value) / d;
}

std::string Scalar::str() const {
    if (den_.isOne()) return num_.str();
    std::string n = num_.str(), d = den_.str();
    if (num_.size() > 1) n = "(" + n + ")";
    if (d.find_first_of("*+- ") != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar binomial(const Scalar& s, unsigned k) {
    Scalar r(1);
    for (unsigned i = 0; i < k; ++i) {
        r *= s - Scalar(static_cast<long>(i));
        r /= Scalar(static_cast<long>(i + 1));
    }
    return r;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Scalar parseAll() {
        Scalar r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("cannot parse scalar '" + s_ + "': " + why + " at offset " +
                                    std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool acceptWord(const char* w) {
        std::size_t n = std::char_traits<char>::length(w);
        if (s_.compare(pos_, n, w) == 0) {
            pos_ += n;
            return true;
        }
        return false;
    }

    Scalar expr() {
        Scalar r = term();
        for (;;) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }
    Scalar term() {
        Scalar r = factor();
        for (;;) {
            if (accept('*')) r *= factor();
            else if (accept('/')) {
                Scalar d = factor();
                if (d.isZero()) fail("division by zero");
                r /= d;
            } else return r;
        }
    }
    Scalar factor() {
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        Scalar base = atom();
        if (accept('^')) {
            skip();
            bool neg = accept('-');
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            long e = std::stol(s_.substr(start, pos_ - start));
            if (neg && base.isZero()) fail("division by zero");
            base = base.pow(neg ? -e : e);
        }
        return base;
    }
    Scalar atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (accept('(')) {
            Scalar r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Scalar(mpz_class(s_.substr(start, pos_ - start)));
        }
        if (acceptWord("lambda") || acceptWord("\xce\xbb")) return Scalar::param(kLambda);
        if (acceptWord("mu") || acceptWord("\xce\xbc")) return Scalar::param(kMu);
        if (acceptWord("nu") || acceptWord("\xce\xbd")) return Scalar::param(kNu);
        fail("unknown symbol");
    }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) { return Parser(text).parseAll(); }

}  // namespace qchar
