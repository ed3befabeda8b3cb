#include "qchar/calculus.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qchar {

std::size_t tensorPower(std::size_t n, int k) {
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r *= n;
    return r;
}

std::vector<int> tensorDigits(std::size_t index, std::size_t n, int k) {
    std::vector<int> d(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(index % n);
        index /= n;
    }
    return d;
}

namespace {

std::string describe(const FinVector& v) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v.entries()) {
        if (!first) os << ", ";
        os << i << ":" << c.str();
        first = false;
    }
    return "[" + os.str() + "]";
}

}  // namespace

Calculus::Calculus(std::shared_ptr<const HopfAlgebra> hopf, CalculusTables tables)
    : hopf_(std::move(hopf)), t_(std::move(tables)) {
    const std::size_t n = dim();
    const auto g = static_cast<std::size_t>(hopf_->numGenerators());
    if (t_.piOfGenerator.size() != g || t_.circOfGenerator.size() != g)
        throw std::invalid_argument("calculus tables need pi and o-action for every generator");
    for (const auto& m : t_.circOfGenerator)
        if (m.domainDim() != n || m.codomainDim() != n) throw std::invalid_argument("o-action matrix has wrong size");
    if (t_.representatives.size() != n) throw std::invalid_argument("one representative per basis element required");

    v_.assign(n, std::vector<HopfElement>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Tensor ad = hopf_->adjointCoaction(t_.representatives[i]);
        for (const auto& [k, c] : ad.terms()) {
            FinVector left = piOfWord(k[0]);
            for (const auto& [j, x] : left.entries()) v_[j][i].add(k[1], c * x);
        }
    }
    f_.assign(n, std::vector<LinearMap>(n));
    p_.assign(n, std::vector<FinVector>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            f_[j][i] = circMatrix(v_[j][i]);
            p_[j][i] = pi(v_[j][i]);
        }

    for (std::size_t i = 0; i < n; ++i) {
        FinVector s = pi(hopf_->star(hopf_->antipode(t_.representatives[i])));
        s.scale(Scalar(-1));
        starBasis_.push_back(std::move(s));
    }

    sigma_ = LinearMap(n * n, n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            VectorBuilder col;
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [f, c] : f_[j][b].column(a).entries()) col.add(static_cast<Index>(j * n + f), c);
            sigma_.setColumn(a * n + b, col.build());
        }

    std::vector<FinVector> seeds = t_.wedgeGenerators;
    for (const auto& r : t_.idealGenerators) seeds.push_back(quadraticForm(r));
    if (!t_.wedgeGenerators.empty() || !t_.idealGenerators.empty()) {
        Echelon e;
        std::deque<FinVector> queue(seeds.begin(), seeds.end());
        while (!queue.empty()) {
            FinVector v = std::move(queue.front());
            queue.pop_front();
            if (!e.insert(v)) continue;
            for (int gi = 0; gi < hopf_->numGenerators(); ++gi) queue.push_back(circTensor(v, hopf_->generator(gi)));
        }
        wedge_ = e.rows();
    }
}

int Calculus::basisIndex(const std::string& name) const {
    for (std::size_t i = 0; i < t_.basis.size(); ++i)
        if (t_.basis[i] == name) return static_cast<int>(i);
    return -1;
}

InvariantForm Calculus::piOfWord(const Word& w) const {
    if (w.empty()) return {};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = piMemo_.find(w);
        if (it != piMemo_.end()) return it->second;
    }
    // pi(g w') = eps(g) pi(w') + pi(g) o w'
    const auto g = static_cast<unsigned char>(w[0]);
    const Word rest = w.substr(1);
    FinVector out = circMatrix(rest).apply(t_.piOfGenerator[g]);
    out.addScaled(piOfWord(rest), hopf_->presentation().counit[g]);
    std::lock_guard<std::mutex> lock(mu_);
    piMemo_.emplace(w, out);
    return out;
}

InvariantForm Calculus::pi(const HopfElement& a) const {
    VectorBuilder b;
    for (const auto& [w, c] : a.terms()) b.addScaled(piOfWord(w), c);
    return b.build();
}

LinearMap Calculus::circMatrix(const Word& w) const {
    if (w.empty()) return LinearMap::identity(dim());
    if (w.size() == 1) return t_.circOfGenerator[static_cast<unsigned char>(w[0])];
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = circMemo_.find(w);
        if (it != circMemo_.end()) return it->second;
    }
    LinearMap m = t_.circOfGenerator[static_cast<unsigned char>(w.back())].compose(circMatrix(w.substr(0, w.size() - 1)));
    std::lock_guard<std::mutex> lock(mu_);
    circMemo_.emplace(w, m);
    return m;
}

LinearMap Calculus::circMatrix(const HopfElement& a) const {
    LinearMap out(dim(), dim());
    for (const auto& [w, c] : a.terms()) out = out + circMatrix(w).scaled(c);
    return out;
}

InvariantForm Calculus::circ(const InvariantForm& theta, const HopfElement& a) const {
    VectorBuilder b;
    for (const auto& [w, c] : a.terms()) b.addScaled(circMatrix(w).apply(theta), c);
    return b.build();
}

FinVector Calculus::circTensor(const FinVector& x, const HopfElement& a) const {
    VectorBuilder b;
    const Tensor cop = hopf_->coproduct(a);
    for (const auto& [k, c] : cop.terms())
        b.addScaled(circMatrix(k[0]).tensor(circMatrix(k[1])).apply(x), c);
    return b.build();
}

std::vector<HopfElement> Calculus::varpi(const InvariantForm& theta) const {
    std::vector<HopfElement> out(dim());
    for (const auto& [i, c] : theta.entries())
        for (std::size_t j = 0; j < dim(); ++j) out[j].addScaled(v_[j][i], c);
    return out;
}

InvariantForm Calculus::starForm(const InvariantForm& theta) const {
    VectorBuilder b;
    for (const auto& [i, c] : theta.entries()) b.addScaled(starBasis_[i], c.conj());
    return b.build();
}

FinVector Calculus::starTensor(const FinVector& x) const {
    const std::size_t n = dim();
    VectorBuilder b;
    for (const auto& [idx, c] : x.entries()) {
        const std::size_t a = idx / n, bb = idx % n;
        for (const auto& [k, s] : starBasis_[bb].entries())
            for (const auto& [l, t] : starBasis_[a].entries()) b.add(static_cast<Index>(k * n + l), -(c.conj() * s * t));
    }
    return b.build();
}

FinVector Calculus::cTop(const InvariantForm& theta) const {
    const std::size_t n = dim();
    VectorBuilder b;
    for (const auto& [i, c] : theta.entries())
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [f, x] : p_[j][i].entries()) b.add(static_cast<Index>(j * n + f), c * x);
    return b.build();
}

LinearMap Calculus::sigmaAt(int k, int pos) const {
    const std::size_t n = dim(), nn = n * n;
    const std::size_t total = tensorPower(n, k);
    const std::size_t right = tensorPower(n, k - pos - 2);
    LinearMap m(total, total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const std::size_t lo = idx % right, mid = (idx / right) % nn, hi = idx / (right * nn);
        std::vector<FinVector::Entry> e;
        for (const auto& [r, c] : sigma_.column(mid).entries())
            e.emplace_back(static_cast<Index>((hi * nn + r) * right + lo), c);
        m.setColumn(idx, FinVector::fromEntries(std::move(e)));
    }
    return m;
}

FinVector Calculus::quadraticForm(const HopfElement& a) const {
    const std::size_t n = dim();
    VectorBuilder b;
    const Tensor cop = hopf_->coproduct(a);
    for (const auto& [k, c] : cop.terms()) {
        FinVector x = piOfWord(k[0]);
        if (x.isZero()) continue;
        FinVector y = piOfWord(k[1]);
        for (const auto& [i, s] : x.entries())
            for (const auto& [j, t] : y.entries()) b.add(static_cast<Index>(i * n + j), c * s * t);
    }
    return b.build();
}

FinVector Calculus::tensorDifferential(std::size_t i) const {
    FinVector q = quadraticForm(t_.representatives[i]);
    q.scale(Scalar(-1));
    return q;
}

Report Calculus::validate(int maxDegree) const {
    Report r;
    const std::size_t n = dim();
    const HopfAlgebra& A = *hopf_;
    const auto& pres = A.presentation();

    {
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < n && ok; ++i)
            if (pi(t_.representatives[i]) != FinVector::unit(static_cast<Index>(i))) {
                ok = false;
                detail = "pi(representative of " + t_.basis[i] + ") = " + describe(pi(t_.representatives[i]));
            }
        r.add("pi-representatives", ok, detail);
    }

    // Descent: pi(u r v) = 0 for rule differences r holds iff pi(r) = 0 and r acts by zero.
    {
        bool piOk = true, circOk = true;
        std::string piDetail, circDetail;
        for (std::size_t k = 0; k < pres.rules.size(); ++k) {
            HopfElement diff = HopfElement::monomial(pres.rules[k].lhs) - pres.rules[k].rhs;
            if (piOk && !pi(diff).isZero()) {
                piOk = false;
                piDetail = "rule " + A.formatWord(pres.rules[k].lhs) + ": pi = " + describe(pi(diff));
            }
            if (circOk && !circMatrix(diff).isZero()) {
                circOk = false;
                circDetail = "rule " + A.formatWord(pres.rules[k].lhs) + " is not respected by the o-action";
            }
        }
        const auto words = A.normalWordsUpTo(maxDegree);
        for (const auto& a : words) {
            for (const auto& b : words) {
                if (static_cast<int>(a.size() + b.size()) > maxDegree) continue;
                HopfElement ab = A.mulWords(a, b);
                if (circOk && circMatrix(ab) != circMatrix(b).compose(circMatrix(a))) {
                    circOk = false;
                    circDetail = "theta o (ab) != (theta o a) o b for a=" + A.formatWord(a) + ", b=" + A.formatWord(b);
                }
                FinVector lhs = pi(ab);
                FinVector rhs = circMatrix(b).apply(piOfWord(a));
                rhs.addScaled(piOfWord(b), A.counitOfWord(a));
                if (piOk && lhs != rhs) {
                    piOk = false;
                    piDetail = "pi(ab) != eps(a)pi(b) + pi(a) o b for a=" + A.formatWord(a) + ", b=" + A.formatWord(b);
                }
            }
        }
        r.add("pi-descent", piOk, piDetail);
        r.add("circ-module-law", circOk, circDetail);
    }

    {
        bool ok = true;
        std::string detail;
        for (std::size_t j = 0; j < n && ok; ++j)
            for (std::size_t i = 0; i < n && ok; ++i) {
                if (A.counit(v_[j][i]) != Scalar(j == i ? 1 : 0)) {
                    ok = false;
                    detail = "(id (x) eps) varpi != id";
                }
                Tensor lhs = A.coproduct(v_[j][i]);
                Tensor rhs(2);
                for (std::size_t k = 0; k < n; ++k) {
                    Tensor t(2);
                    for (const auto& [w1, c1] : v_[j][k].terms())
                        for (const auto& [w2, c2] : v_[k][i].terms()) t.add({w1, w2}, c1 * c2);
                    rhs.addScaled(t, Scalar(1));
                }
                if (ok && lhs != rhs) {
                    ok = false;
                    detail = "coaction law fails at (" + std::to_string(j) + "," + std::to_string(i) + ")";
                }
            }
        r.add("varpi-coaction", ok, detail);
    }

    {
        // varpi(pi(a)) = (pi (x) id) ad(a) on normal words
        bool ok = true;
        std::string detail;
        for (const auto& w : A.normalWordsUpTo(std::min(maxDegree, 3))) {
            HopfElement a = HopfElement::monomial(w);
            std::vector<HopfElement> lhs = varpi(pi(a));
            std::vector<HopfElement> rhs(n);
            const Tensor ad = A.adjointCoaction(a);
            for (const auto& [k, c] : ad.terms()) {
                const FinVector left = piOfWord(k[0]);
                for (const auto& [j, x] : left.entries()) rhs[j].add(k[1], c * x);
            }
            if (lhs != rhs) {
                ok = false;
                detail = "varpi(pi(a)) != (pi (x) id)ad(a) for a=" + A.formatWord(w);
                break;
            }
        }
        r.add("varpi-representatives", ok, detail);
    }

    {
        LinearMap s12 = sigmaAt(3, 0), s23 = sigmaAt(3, 1);
        bool braid = s12.compose(s23).compose(s12) == s23.compose(s12).compose(s23);
        r.add("sigma-braid", braid);
        r.add("sigma-invertible", rank(sigma_) == n * n);
    }

    {
        // sigma commutes with varpi (x) varpi
        std::map<std::pair<Index, Index>, HopfElement> prodMemo;
        auto vv = [&](std::size_t c, std::size_t a, std::size_t d, std::size_t b) -> const HopfElement& {
            auto key = std::make_pair(static_cast<Index>(c * n + a), static_cast<Index>(d * n + b));
            auto it = prodMemo.find(key);
            if (it == prodMemo.end()) it = prodMemo.emplace(key, A.mul(v_[c][a], v_[d][b])).first;
            return it->second;
        };
        auto coact = [&](const FinVector& x) {
            std::map<std::pair<Index, Word>, Scalar> out;
            for (const auto& [idx, s] : x.entries()) {
                const std::size_t a = idx / n, b = idx % n;
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d)
                        for (const auto& [w, t] : vv(c, a, d, b).terms()) {
                            auto& slot = out[{static_cast<Index>(c * n + d), w}];
                            slot += s * t;
                        }
            }
            for (auto it = out.begin(); it != out.end();) it = it->second.isZero() ? out.erase(it) : std::next(it);
            return out;
        };
        bool ok = true;
        for (std::size_t idx = 0; idx < n * n && ok; ++idx) {
            auto lhs = coact(sigma_.column(idx));
            std::map<std::pair<Index, Word>, Scalar> rhs;
            for (const auto& [key, s] : coact(FinVector::unit(static_cast<Index>(idx))))
                for (const auto& [o, t] : sigma_.column(key.first).entries()) rhs[{o, key.second}] += s * t;
            for (auto it = rhs.begin(); it != rhs.end();) it = it->second.isZero() ? rhs.erase(it) : std::next(it);
            ok = lhs == rhs;
        }
        r.add("sigma-intertwines-varpi", ok);
    }

    if (wedge_) {
        bool ok = true;
        for (const auto& s : *wedge_) ok = ok && applySigma(s) == s;
        r.add("sigma-fixes-wedge", ok);
    }

    {
        bool inv = true, circStar = true, piStar = true;
        for (std::size_t i = 0; i < n; ++i) {
            FinVector e = FinVector::unit(static_cast<Index>(i));
            inv = inv && starForm(starForm(e)) == e;
        }
        for (const auto& w : A.normalWordsUpTo(std::min(maxDegree, 3))) {
            HopfElement a = HopfElement::monomial(w);
            HopfElement ks = A.star(A.antipode(a));
            FinVector p = starForm(pi(a));
            FinVector q = pi(ks);
            q.scale(Scalar(-1));
            piStar = piStar && p == q;
            for (std::size_t i = 0; i < n; ++i) {
                FinVector e = FinVector::unit(static_cast<Index>(i));
                circStar = circStar && starForm(circ(e, a)) == circ(starForm(e), ks);
            }
        }
        r.add("star-form-involution", inv);
        r.add("star-pi", piStar);
        r.add("star-circ", circStar);
    }

    if (!t_.idealGenerators.empty()) {
        bool ok = true;
        std::string detail;
        for (const auto& g : t_.idealGenerators)
            if (!pi(g).isZero() || !A.counit(g).isZero()) {
                ok = false;
                detail = "generator " + A.format(g) + " is not in ker(eps) and ker(pi)";
            }
        r.add("ideal-annihilated", ok, detail);
    }

    if (t_.delta) {
        bool braid = true, lift = true;
        std::string detail;
        if (t_.delta->size() != n) {
            r.add("delta-braid-relation", false, "delta table has wrong size");
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const FinVector& d = (*t_.delta)[i];
                FinVector lhs = applySigma(d);
                FinVector rhs = d + cTop(FinVector::unit(static_cast<Index>(i)));
                if (lhs != rhs) {
                    braid = false;
                    detail = "sigma delta != delta + c^T at " + t_.basis[i];
                }
                if (wedge_) {
                    Echelon e;
                    for (const auto& s : *wedge_) e.insert(s);
                    if (!e.contains(d - tensorDifferential(i))) lift = false;
                }
            }
            r.add("delta-braid-relation", braid, detail);
            if (wedge_) r.add("delta-lift", lift);
        }
    }
    return r;
}

DeltaSolution deriveDelta(const Calculus& c) {
    DeltaSolution sol;
    const std::size_t n = c.dim(), nn = n * n;
    if (!c.wedgeSpace()) {
        sol.reason = "no S^wedge2 data";
        return sol;
    }
    const auto& wedge = *c.wedgeSpace();
    const std::size_t L = wedge.size();
    // unknowns: y(i,l) at i*L + l, then x(i,e) at n*L + i*nn + e
    const std::size_t yCount = n * L;
    auto X = [&](std::size_t i, std::size_t e) { return static_cast<Index>(yCount + i * nn + e); };
    auto Y = [&](std::size_t i, std::size_t l) { return static_cast<Index>(i * L + l); };
    const std::size_t unknowns = yCount + n * nn;
    std::vector<std::pair<FinVector, Scalar>> eqs;

    LinearMap sm = c.sigma() - LinearMap::identity(nn);
    for (std::size_t i = 0; i < n; ++i) {
        FinVector ct = c.cTop(FinVector::unit(static_cast<Index>(i)));
        std::vector<VectorBuilder> rows(nn);
        for (std::size_t e = 0; e < nn; ++e)
            for (const auto& [o, s] : sm.column(e).entries()) rows[o].add(X(i, e), s);
        for (std::size_t o = 0; o < nn; ++o) eqs.emplace_back(rows[o].build(), ct.get(static_cast<Index>(o)));
    }

    {
        const HopfAlgebra& A = c.hopf();
        std::map<std::tuple<std::size_t, std::size_t, Word>, VectorBuilder> rows;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t cc = 0; cc < n; ++cc)
                    for (std::size_t d = 0; d < n; ++d) {
                        HopfElement prod = A.mul(c.V(cc, a), c.V(d, b));
                        for (const auto& [w, s] : prod.terms())
                            for (std::size_t i = 0; i < n; ++i) rows[{i, cc * n + d, w}].add(X(i, a * n + b), s);
                    }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [w, s] : c.V(j, i).terms())
                    for (std::size_t e = 0; e < nn; ++e) rows[{i, e, w}].add(X(j, e), -s);
        for (auto& [k, b] : rows) {
            FinVector row = b.build();
            if (!row.isZero()) eqs.emplace_back(std::move(row), Scalar());
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        FinVector si = c.starForm(FinVector::unit(static_cast<Index>(i)));
        std::vector<VectorBuilder> rows(nn);
        for (const auto& [k, s] : si.entries())
            for (std::size_t e = 0; e < nn; ++e) rows[e].add(X(k, e), s);
        for (std::size_t e = 0; e < nn; ++e) {
            FinVector st = c.starTensor(FinVector::unit(static_cast<Index>(e)));
            for (const auto& [o, t] : st.entries()) rows[o].add(X(i, e), -t);
        }
        for (auto& b : rows) {
            FinVector row = b.build();
            if (!row.isZero()) eqs.emplace_back(std::move(row), Scalar());
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        FinVector target = c.tensorDifferential(i);
        std::vector<VectorBuilder> rows(nn);
        for (std::size_t e = 0; e < nn; ++e) rows[e].add(X(i, e), Scalar(1));
        for (std::size_t l = 0; l < L; ++l)
            for (const auto& [e, s] : wedge[l].entries()) rows[e].add(Y(i, l), -s);
        for (std::size_t e = 0; e < nn; ++e) eqs.emplace_back(rows[e].build(), target.get(static_cast<Index>(e)));
    }

    AffineSolution as = solveAffine(unknowns, eqs);
    if (!as.consistent) {
        sol.reason = "no hermitian intertwining solution";
        return sol;
    }
    sol.found = true;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<FinVector::Entry> e;
        for (std::size_t k = 0; k < nn; ++k) {
            Scalar v = as.particular.get(X(i, k));
            if (!v.isZero()) e.emplace_back(static_cast<Index>(k), v);
        }
        sol.delta.push_back(FinVector::fromEntries(std::move(e)));
    }
    Echelon proj;
    for (const auto& h : as.homogeneous) {
        std::vector<FinVector::Entry> e;
        for (const auto& [k, v] : h.entries())
            if (k >= yCount) e.emplace_back(k, v);
        proj.insert(FinVector::fromEntries(std::move(e)));
    }
    sol.solutionDimension = proj.rank();
    return sol;
}

std::vector<HopfElement> idealElements(const Calculus& c, int maxLength) {
    const auto words = c.hopf().normalWordsUpTo(maxLength);
    LinearMap m(words.size(), c.dim() + 1);
    for (std::size_t k = 0; k < words.size(); ++k) {
        FinVector col = c.piOfWord(words[k]).shifted(1);
        col.addScaled(FinVector::unit(0), c.hopf().counitOfWord(words[k]));
        m.setColumn(k, std::move(col));
    }
    std::vector<HopfElement> out;
    for (const auto& v : kernelBasis(m)) {
        HopfElement e;
        for (const auto& [k, s] : v.entries()) e.add(words[k], s);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace qchar
