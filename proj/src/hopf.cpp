#include "qchar/hopf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qchar {

std::uint64_t nextRandom(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t randomBelow(std::uint64_t& state, std::size_t n) { return static_cast<std::size_t>(nextRandom(state) % n); }

bool deglexGreater(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

HopfElement::HopfElement(const Scalar& c) {
    if (!c.isZero()) t_.emplace(Word(), c);
}

HopfElement HopfElement::monomial(const Word& w, const Scalar& c) {
    HopfElement e;
    e.add(w, c);
    return e;
}

void HopfElement::add(const Word& w, const Scalar& c) {
    if (c.isZero()) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
        t_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.isZero()) t_.erase(it);
}

void HopfElement::addScaled(const HopfElement& o, const Scalar& c) {
    if (c.isZero()) return;
    for (const auto& [w, x] : o.t_) add(w, c.isOne() ? x : x * c);
}

Scalar HopfElement::coefficient(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? Scalar() : it->second;
}

int HopfElement::degree() const {
    int d = 0;
    for (const auto& [w, c] : t_) d = std::max(d, static_cast<int>(w.size()));
    return d;
}

void Tensor::add(const Key& k, const Scalar& c) {
    if (c.isZero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.isZero()) t_.erase(it);
}

void Tensor::addScaled(const Tensor& o, const Scalar& c) {
    if (legs_ == 0) legs_ = o.legs_;
    for (const auto& [k, x] : o.t_) add(k, x * c);
}

int HopfPresentation::generatorIndex(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

HopfAlgebra::HopfAlgebra(HopfPresentation p) : p_(std::move(p)) {
    const int n = numGenerators();
    rulesByLast_.resize(n);
    for (std::size_t r = 0; r < p_.rules.size(); ++r) {
        const Word& lhs = p_.rules[r].lhs;
        if (lhs.empty()) throw std::invalid_argument("rewrite rule with empty left hand side");
        rulesByLast_[static_cast<unsigned char>(lhs.back())].push_back(r);
    }
    for (int g = 0; g < n; ++g) {
        genCoproduct_.push_back(normalizeTensor(p_.coproduct[g]));
        genAntipode_.push_back(normalize(p_.antipode[g]));
    }
}

const HopfElement* HopfAlgebra::lookupNf(const Word& w) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = nf_.find(w);
    return it == nf_.end() ? nullptr : &it->second;
}

void HopfAlgebra::storeNf(const Word& w, const HopfElement& e) const {
    std::lock_guard<std::mutex> lock(mu_);
    nf_.emplace(w, e);
}

HopfElement HopfAlgebra::appendLetter(const Word& u, char x, std::size_t& steps, int depth) const {
    Word ux = u + x;
    if (const HopfElement* hit = lookupNf(ux)) return *hit;
    for (std::size_t r : rulesByLast_[static_cast<unsigned char>(x)]) {
        const RewriteRule& rule = p_.rules[r];
        if (rule.lhs.size() > ux.size()) continue;
        if (ux.compare(ux.size() - rule.lhs.size(), rule.lhs.size(), rule.lhs) != 0) continue;
        if (++steps > rewriteBudget) throw RewriteBudgetExceeded("rewriting step budget exceeded");
        Word pre = ux.substr(0, ux.size() - rule.lhs.size());
        HopfElement out;
        for (const auto& [rw, c] : rule.rhs.terms()) out.addScaled(nfRec(pre + rw, steps, depth + 1), c);
        storeNf(ux, out);
        return out;
    }
    HopfElement out = HopfElement::monomial(ux);
    storeNf(ux, out);
    return out;
}

HopfElement HopfAlgebra::nfRec(const Word& w, std::size_t& steps, int depth) const {
    if (depth > 4000) throw RewriteBudgetExceeded("rewriting recursion too deep");
    if (w.size() <= 1) return HopfElement::monomial(w);
    if (const HopfElement* hit = lookupNf(w)) return *hit;
    HopfElement prefix = nfRec(w.substr(0, w.size() - 1), steps, depth + 1);
    HopfElement out;
    for (const auto& [u, c] : prefix.terms()) out.addScaled(appendLetter(u, w.back(), steps, depth + 1), c);
    storeNf(w, out);
    return out;
}

HopfElement HopfAlgebra::normalWord(const Word& w) const {
    std::size_t steps = 0;
    return nfRec(w, steps, 0);
}

HopfElement HopfAlgebra::normalize(const HopfElement& raw) const {
    HopfElement out;
    for (const auto& [w, c] : raw.terms()) out.addScaled(normalWord(w), c);
    return out;
}

bool HopfAlgebra::isNormal(const Word& w) const {
    for (const auto& rule : p_.rules)
        if (w.find(rule.lhs) != Word::npos) return false;
    return true;
}

std::vector<Word> HopfAlgebra::normalWords(int length) const {
    std::vector<Word> cur{Word()};
    for (int k = 0; k < length; ++k) {
        std::vector<Word> next;
        for (const auto& w : cur)
            for (int g = 0; g < numGenerators(); ++g) {
                Word x = w + static_cast<char>(g);
                bool ok = true;
                for (std::size_t r : rulesByLast_[g]) {
                    const Word& lhs = p_.rules[r].lhs;
                    if (lhs.size() <= x.size() && x.compare(x.size() - lhs.size(), lhs.size(), lhs) == 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) next.push_back(std::move(x));
            }
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end(), ShortLex());
    return cur;
}

std::vector<Word> HopfAlgebra::normalWordsUpTo(int maxLength) const {
    std::vector<Word> out;
    for (int k = 0; k <= maxLength; ++k) {
        auto w = normalWords(k);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

HopfElement HopfAlgebra::mulWords(const Word& a, const Word& b) const { return normalWord(a + b); }

HopfElement HopfAlgebra::mul(const HopfElement& a, const HopfElement& b) const {
    HopfElement out;
    for (const auto& [u, c] : a.terms())
        for (const auto& [v, d] : b.terms()) out.addScaled(normalWord(u + v), c * d);
    return out;
}

HopfElement HopfAlgebra::power(const HopfElement& a, unsigned k) const {
    HopfElement r = one();
    for (unsigned i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

Tensor HopfAlgebra::normalizeTensor(const Tensor& t) const {
    Tensor out(t.legs());
    for (const auto& [key, c] : t.terms()) {
        std::vector<std::pair<Tensor::Key, Scalar>> partial{{Tensor::Key(), c}};
        for (const auto& w : key) {
            HopfElement nw = normalWord(w);
            std::vector<std::pair<Tensor::Key, Scalar>> next;
            for (const auto& [pk, pc] : partial)
                for (const auto& [u, d] : nw.terms()) {
                    Tensor::Key k2 = pk;
                    k2.push_back(u);
                    next.emplace_back(std::move(k2), pc * d);
                }
            partial = std::move(next);
        }
        for (const auto& [k, x] : partial) out.add(k, x);
    }
    return out;
}

Tensor HopfAlgebra::tensorMul(const Tensor& a, const Tensor& b) const {
    Tensor raw(a.legs());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            Tensor::Key k(ka.size());
            for (std::size_t i = 0; i < ka.size(); ++i) k[i] = ka[i] + kb[i];
            raw.add(k, ca * cb);
        }
    return normalizeTensor(raw);
}

Tensor HopfAlgebra::coproductOfWord(const Word& w) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cop_.find(w);
        if (it != cop_.end()) return it->second;
    }
    Tensor out(2);
    if (w.empty()) {
        out.add({Word(), Word()}, Scalar(1));
    } else if (w.size() == 1) {
        out = genCoproduct_[static_cast<unsigned char>(w[0])];
    } else {
        out = tensorMul(coproductOfWord(w.substr(0, w.size() - 1)),
                        genCoproduct_[static_cast<unsigned char>(w.back())]);
    }
    std::lock_guard<std::mutex> lock(mu_);
    cop_.emplace(w, out);
    return out;
}

Tensor HopfAlgebra::coproduct(const HopfElement& a) const {
    Tensor out(2);
    for (const auto& [w, c] : a.terms()) out.addScaled(coproductOfWord(w), c);
    return out;
}

Tensor HopfAlgebra::expandLeg(const Tensor& t, int leg) const {
    Tensor out(t.legs() + 1);
    for (const auto& [key, c] : t.terms()) {
        const Tensor& cw = coproductOfWord(key[leg]);
        for (const auto& [pair, d] : cw.terms()) {
            Tensor::Key k;
            k.reserve(key.size() + 1);
            k.insert(k.end(), key.begin(), key.begin() + leg);
            k.push_back(pair[0]);
            k.push_back(pair[1]);
            k.insert(k.end(), key.begin() + leg + 1, key.end());
            out.add(k, c * d);
        }
    }
    return out;
}

Tensor HopfAlgebra::iteratedCoproduct(const HopfElement& a, int k) const {
    if (k < 1) throw std::invalid_argument("iterated coproduct needs k >= 1");
    Tensor t(1);
    for (const auto& [w, c] : a.terms()) t.add({w}, c);
    for (int i = 1; i < k; ++i) t = expandLeg(t, 0);
    return t;
}

Tensor HopfAlgebra::iteratedCoproductRight(const HopfElement& a, int k) const {
    if (k < 1) throw std::invalid_argument("iterated coproduct needs k >= 1");
    Tensor t(1);
    for (const auto& [w, c] : a.terms()) t.add({w}, c);
    for (int i = 1; i < k; ++i) t = expandLeg(t, i - 1);
    return t;
}

Scalar HopfAlgebra::counitOfWord(const Word& w) const {
    Scalar r(1);
    for (char g : w) {
        r *= p_.counit[static_cast<unsigned char>(g)];
        if (r.isZero()) break;
    }
    return r;
}

Scalar HopfAlgebra::counit(const HopfElement& a) const {
    Scalar r;
    for (const auto& [w, c] : a.terms()) r += c * counitOfWord(w);
    return r;
}

HopfElement HopfAlgebra::antipodeOfWord(const Word& w) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = kappa_.find(w);
        if (it != kappa_.end()) return it->second;
    }
    HopfElement out;
    if (w.empty()) out = one();
    else if (w.size() == 1) out = genAntipode_[static_cast<unsigned char>(w[0])];
    else out = mul(genAntipode_[static_cast<unsigned char>(w.back())], antipodeOfWord(w.substr(0, w.size() - 1)));
    std::lock_guard<std::mutex> lock(mu_);
    kappa_.emplace(w, out);
    return out;
}

HopfElement HopfAlgebra::antipode(const HopfElement& a) const {
    HopfElement out;
    for (const auto& [w, c] : a.terms()) out.addScaled(antipodeOfWord(w), c);
    return out;
}

HopfElement HopfAlgebra::star(const HopfElement& a) const {
    HopfElement raw;
    for (const auto& [w, c] : a.terms()) {
        Word r(w.rbegin(), w.rend());
        for (auto& ch : r) ch = static_cast<char>(p_.star[static_cast<unsigned char>(ch)]);
        raw.add(r, c.conj());
    }
    return normalize(raw);
}

HopfElement HopfAlgebra::leg(const Tensor& t, int k) const {
    HopfElement out;
    for (const auto& [key, c] : t.terms()) out.add(key[k], c);
    return out;
}

HopfElement HopfAlgebra::multiplyLegs(const Tensor& t) const {
    HopfElement out;
    for (const auto& [key, c] : t.terms()) {
        Word w;
        for (const auto& part : key) w += part;
        out.addScaled(normalWord(w), c);
    }
    return out;
}

Tensor HopfAlgebra::adjointCoaction(const HopfElement& a) const {
    Tensor three = iteratedCoproduct(a, 3);
    Tensor out(2);
    for (const auto& [key, c] : three.terms()) {
        HopfElement right = mul(antipodeOfWord(key[0]), HopfElement::monomial(key[2]));
        for (const auto& [w, d] : right.terms()) out.add({key[1], w}, c * d);
    }
    return out;
}

std::string HopfAlgebra::formatWord(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += "*";
        out += p_.names[static_cast<unsigned char>(w[i])];
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

namespace {

std::string coefficientTerm(const Scalar& c, const std::string& word) {
    if (word.empty()) return c.str();
    if (c.isOne()) return word;
    if (c == Scalar(-1)) return "-" + word;
    std::string s = c.str();
    if (c.den().isOne() && c.num().size() > 1) s = "(" + s + ")";
    return s + "*" + word;
}

std::string joinTerms(const std::vector<std::string>& parts) {
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (!parts[i].empty() && parts[i][0] == '-') out += " - " + parts[i].substr(1);
        else out += " + " + parts[i];
    }
    return out;
}

}  // namespace

std::string HopfAlgebra::format(const HopfElement& a) const {
    std::vector<std::string> parts;
    for (const auto& [w, c] : a.terms()) parts.push_back(coefficientTerm(c, w.empty() ? "" : formatWord(w)));
    return joinTerms(parts);
}

std::string HopfAlgebra::formatTensor(const Tensor& t) const {
    std::vector<std::string> parts;
    for (const auto& [key, c] : t.terms()) {
        std::string w;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (i) w += " (x) ";
            w += formatWord(key[i]);
        }
        parts.push_back(coefficientTerm(c, "[" + w + "]"));
    }
    return joinTerms(parts);
}

namespace {

class ElementParser {
public:
    ElementParser(const HopfAlgebra& alg, const std::string& s) : alg_(alg), s_(s) {}

    HopfElement parseAll() {
        HopfElement r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    const HopfAlgebra& alg_;
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("cannot parse element '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
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
    static bool isConstant(const HopfElement& e, Scalar* value) {
        if (e.isZero()) {
            if (value) *value = Scalar();
            return true;
        }
        if (e.terms().size() == 1 && e.terms().begin()->first.empty()) {
            if (value) *value = e.terms().begin()->second;
            return true;
        }
        return false;
    }

    HopfElement expr() {
        HopfElement r = term();
        for (;;) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }
    HopfElement term() {
        HopfElement r = factor();
        for (;;) {
            if (accept('*')) r = alg_.mul(r, factor());
            else if (accept('/')) {
                Scalar d;
                if (!isConstant(factor(), &d) || d.isZero()) fail("division by a non-scalar or zero");
                r = d.inverse() * r;
            } else return r;
        }
    }
    HopfElement factor() {
        if (accept('-')) return Scalar(-1) * factor();
        if (accept('+')) return factor();
        HopfElement base = atom();
        if (accept('^')) {
            skip();
            bool neg = accept('-');
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            long e = std::stol(s_.substr(start, pos_ - start));
            Scalar c;
            if (isConstant(base, &c)) {
                if (neg && c.isZero()) fail("division by zero");
                return HopfElement(c.pow(neg ? -e : e));
            }
            if (neg) {
                HopfElement inv = alg_.antipode(base);
                if (alg_.mul(base, inv) != alg_.one() || alg_.mul(inv, base) != alg_.one())
                    fail("negative power of a non-invertible element");
                base = inv;
            }
            return alg_.power(base, static_cast<unsigned>(e));
        }
        return base;
    }
    HopfElement atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (accept('(')) {
            HopfElement r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        unsigned char c = static_cast<unsigned char>(s_[pos_]);
        if (std::isdigit(c)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return HopfElement(Scalar(mpz_class(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(c) || c == '_' || c >= 0x80) {
            std::size_t start = pos_;
            while (pos_ < s_.size()) {
                unsigned char d = static_cast<unsigned char>(s_[pos_]);
                if (std::isalnum(d) || d == '_' || d >= 0x80) ++pos_;
                else break;
            }
            std::string name = s_.substr(start, pos_ - start);
            int g = alg_.presentation().generatorIndex(name);
            if (g >= 0) return alg_.generator(g);
            if (name == "mu" || name == "lambda" || name == "nu" || name == "\xce\xbc" || name == "\xce\xbb" ||
                name == "\xce\xbd")
                return HopfElement(Scalar::parse(name));
            pos_ = start;
            fail("unknown symbol '" + name + "'");
        }
        fail("unexpected character");
    }
};

}  // namespace

HopfElement HopfAlgebra::parse(const std::string& text) const { return ElementParser(*this, text).parseAll(); }

HopfElement HopfAlgebra::reduceRandomly(const Word& w, std::uint64_t& state) const {
    std::map<Word, Scalar, ShortLex> cur;
    cur.emplace(w, Scalar(1));
    std::size_t steps = 0;
    for (;;) {
        std::vector<std::pair<Word, std::vector<std::pair<std::size_t, std::size_t>>>> reducible;
        for (const auto& [u, c] : cur) {
            std::vector<std::pair<std::size_t, std::size_t>> redexes;
            for (std::size_t r = 0; r < p_.rules.size(); ++r) {
                const Word& lhs = p_.rules[r].lhs;
                for (std::size_t pos = u.find(lhs); pos != Word::npos; pos = u.find(lhs, pos + 1))
                    redexes.emplace_back(r, pos);
            }
            if (!redexes.empty()) reducible.emplace_back(u, std::move(redexes));
        }
        if (reducible.empty()) break;
        if (++steps > rewriteBudget) throw RewriteBudgetExceeded("rewriting step budget exceeded");
        auto& [u, redexes] = reducible[randomBelow(state, reducible.size())];
        auto [r, pos] = redexes[randomBelow(state, redexes.size())];
        Scalar c = cur[u];
        cur.erase(u);
        const RewriteRule& rule = p_.rules[r];
        for (const auto& [rw, d] : rule.rhs.terms()) {
            Word x = u.substr(0, pos) + rw + u.substr(pos + rule.lhs.size());
            Scalar add = c * d;
            auto it = cur.find(x);
            if (it == cur.end()) cur.emplace(x, add);
            else {
                it->second += add;
                if (it->second.isZero()) cur.erase(it);
            }
        }
    }
    HopfElement out;
    for (const auto& [u, c] : cur) out.add(u, c);
    return out;
}

namespace {

HopfElement applyCounitLeg(const HopfAlgebra& alg, const Tensor& t, int keep) {
    HopfElement out;
    for (const auto& [key, c] : t.terms()) out.add(key[keep], c * alg.counitOfWord(key[1 - keep]));
    return out;
}

}  // namespace

Report HopfAlgebra::validate(int maxDegree, std::uint64_t seed, int confluenceSamples, int sampleLength) const {
    Report rep;
    const int n = numGenerators();

    std::string bad;
    for (const auto& rule : p_.rules)
        for (const auto& [w, c] : rule.rhs.terms())
            if (!deglexGreater(rule.lhs, w)) bad += formatWord(rule.lhs) + " ";
    rep.add("rule-order", bad.empty(), bad.empty() ? "" : "rules not decreasing: " + bad);

    bad.clear();
    for (const auto& rule : p_.rules)
        if (counitOfWord(rule.lhs) != counit(rule.rhs)) bad += formatWord(rule.lhs) + " ";
    rep.add("counit-relations", bad.empty(), bad.empty() ? "" : "counit does not respect " + bad);

    auto rawCoproduct = [&](const HopfElement& e) {
        Tensor out(2);
        for (const auto& [w, c] : e.terms()) {
            Tensor t(2);
            t.add({Word(), Word()}, Scalar(1));
            for (char g : w) t = tensorMul(t, genCoproduct_[static_cast<unsigned char>(g)]);
            out.addScaled(t, c);
        }
        return out;
    };
    auto rawAntipode = [&](const HopfElement& e) {
        HopfElement out;
        for (const auto& [w, c] : e.terms()) {
            HopfElement t = one();
            for (char g : w) t = mul(genAntipode_[static_cast<unsigned char>(g)], t);
            out.addScaled(t, c);
        }
        return out;
    };
    auto rawStar = [&](const HopfElement& e) {
        HopfElement out;
        for (const auto& [w, c] : e.terms()) {
            Word r(w.rbegin(), w.rend());
            for (auto& ch : r) ch = static_cast<char>(p_.star[static_cast<unsigned char>(ch)]);
            out.addScaled(normalWord(r), c.conj());
        }
        return out;
    };

    std::string badCop, badKappa, badStar;
    for (const auto& rule : p_.rules) {
        HopfElement lhs = HopfElement::monomial(rule.lhs);
        if (rawCoproduct(lhs) != rawCoproduct(rule.rhs)) badCop += formatWord(rule.lhs) + " ";
        if (rawAntipode(lhs) != rawAntipode(rule.rhs)) badKappa += formatWord(rule.lhs) + " ";
        if (rawStar(lhs) != rawStar(rule.rhs)) badStar += formatWord(rule.lhs) + " ";
    }
    rep.add("coproduct-relations", badCop.empty(), badCop.empty() ? "" : "coproduct does not respect " + badCop);
    rep.add("antipode-relations", badKappa.empty(), badKappa.empty() ? "" : "antipode does not respect " + badKappa);
    rep.add("star-relations", badStar.empty(), badStar.empty() ? "" : "star does not respect " + badStar);

    std::string badStarGen;
    for (int g = 0; g < n; ++g)
        if (p_.star[p_.star[g]] != g) badStarGen += p_.names[g] + " ";
    rep.add("star-involution", badStarGen.empty(), badStarGen);

    // Critical pairs of the rewrite system.
    std::string badPair;
    try {
        for (std::size_t i = 0; i < p_.rules.size(); ++i)
            for (std::size_t j = 0; j < p_.rules.size(); ++j) {
                const Word& l1 = p_.rules[i].lhs;
                const Word& l2 = p_.rules[j].lhs;
                for (std::size_t k = 1; k < l1.size() && k < l2.size() + 1; ++k) {
                    if (k > l2.size()) break;
                    if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
                    if (k == l2.size() && k == l1.size()) continue;
                    Word w = l1 + l2.substr(k);
                    HopfElement viaFirst, viaSecond;
                    for (const auto& [rw, c] : p_.rules[i].rhs.terms())
                        viaFirst.addScaled(normalWord(rw + l2.substr(k)), c);
                    Word pre = l1.substr(0, l1.size() - k);
                    for (const auto& [rw, c] : p_.rules[j].rhs.terms())
                        viaSecond.addScaled(normalWord(pre + rw), c);
                    if (viaFirst != viaSecond) badPair += formatWord(w) + " ";
                }
            }
    } catch (const RewriteBudgetExceeded& e) {
        badPair += e.what();
    }
    rep.add("critical-pairs", badPair.empty(), badPair.empty() ? "" : "non-joinable overlaps: " + badPair);

    std::uint64_t state = seed;
    std::string badSample;
    try {
        for (int s = 0; s < confluenceSamples && badSample.empty(); ++s) {
            int len = 1 + static_cast<int>(randomBelow(state, sampleLength));
            Word w;
            for (int i = 0; i < len; ++i) w += static_cast<char>(randomBelow(state, n));
            if (reduceRandomly(w, state) != normalWord(w)) badSample = formatWord(w);
        }
    } catch (const RewriteBudgetExceeded& e) {
        badSample = e.what();
    }
    rep.add("confluence-sampling", badSample.empty(), badSample.empty() ? "" : "order-dependent result for " + badSample);

    std::string badCounit, badCoassoc, badAntipode, badStarCop, badStarInv;
    const auto words = normalWordsUpTo(maxDegree);
    for (const auto& w : words) {
        HopfElement x = HopfElement::monomial(w);
        Tensor cw = coproductOfWord(w);
        if (applyCounitLeg(*this, cw, 0) != x || applyCounitLeg(*this, cw, 1) != x) badCounit += formatWord(w) + " ";
        if (iteratedCoproduct(x, 3) != iteratedCoproductRight(x, 3)) badCoassoc += formatWord(w) + " ";
        HopfElement left, right;
        for (const auto& [key, c] : cw.terms()) {
            left.addScaled(mul(antipodeOfWord(key[0]), HopfElement::monomial(key[1])), c);
            right.addScaled(mul(HopfElement::monomial(key[0]), antipodeOfWord(key[1])), c);
        }
        HopfElement expect(counitOfWord(w));
        if (left != expect || right != expect) badAntipode += formatWord(w) + " ";
        HopfElement xs = star(x);
        Tensor lhs = coproduct(xs);
        Tensor rhs(2);
        for (const auto& [key, c] : cw.terms()) {
            HopfElement a = star(HopfElement::monomial(key[0]));
            HopfElement b = star(HopfElement::monomial(key[1]));
            for (const auto& [u, d] : a.terms())
                for (const auto& [v, e] : b.terms()) rhs.add({u, v}, c.conj() * d * e);
        }
        if (lhs != rhs) badStarCop += formatWord(w) + " ";
        if (star(xs) != x) badStarInv += formatWord(w) + " ";
    }
    rep.add("counit-law", badCounit.empty(), badCounit);
    rep.add("coassociativity", badCoassoc.empty(), badCoassoc);
    rep.add("antipode-law", badAntipode.empty(), badAntipode);
    rep.add("star-coproduct", badStarCop.empty(), badStarCop);
    rep.add("star-antilinear-involution", badStarInv.empty(), badStarInv);
    return rep;
}

}  // namespace qchar
