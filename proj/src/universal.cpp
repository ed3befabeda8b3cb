#include "qchar/universal.hpp"

#include <sstream>
#include <stdexcept>

namespace qchar {

namespace {

// Rows are assigned to keys on first use.
template <typename Key>
class RowIndex {
public:
    Index operator()(const Key& k) {
        auto it = rows_.find(k);
        if (it != rows_.end()) return it->second;
        const auto r = static_cast<Index>(rows_.size());
        rows_.emplace(k, r);
        return r;
    }
    std::size_t size() const { return rows_.size(); }

private:
    std::map<Key, Index> rows_;
};

template <typename Map>
void addTo(Map& m, const typename Map::key_type& k, const Scalar& c) {
    if (c.isZero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.isZero()) m.erase(it);
}

std::vector<int> slice(const std::vector<int>& w, std::size_t from, std::size_t to) {
    return std::vector<int>(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

}  // namespace

// ---------------------------------------------------------------- Omega

int OmegaSpace::wordDegree(const OmegaWord& w) const {
    int d = 0;
    for (int l : w) d += letterDegree(l);
    return d;
}

const std::vector<OmegaWord>& OmegaSpace::basis(int degree) const {
    if (degree < 0) throw std::out_of_range("negative degree");
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(basis_.size()) <= degree) {
        const int k = static_cast<int>(basis_.size());
        std::vector<OmegaWord> words;
        if (k == 0) words.emplace_back();
        for (int l = 0; l < static_cast<int>(2 * n_); ++l) {
            const int rest = k - letterDegree(l);
            if (rest < 0) continue;
            for (const auto& w : basis_[static_cast<std::size_t>(rest)]) {
                OmegaWord x = {l};
                x.insert(x.end(), w.begin(), w.end());
                words.push_back(std::move(x));
            }
        }
        std::map<OmegaWord, std::size_t> idx;
        for (std::size_t i = 0; i < words.size(); ++i) idx.emplace(words[i], i);
        basis_.push_back(std::move(words));
        index_.push_back(std::move(idx));
    }
    return basis_[static_cast<std::size_t>(degree)];
}

std::size_t OmegaSpace::index(int degree, const OmegaWord& w) const {
    basis(degree);
    std::lock_guard<std::mutex> lock(mu_);
    return index_[static_cast<std::size_t>(degree)].at(w);
}

FinVector OmegaSpace::word(const OmegaWord& w, const Scalar& c) const {
    return FinVector::unit(static_cast<Index>(index(wordDegree(w), w)), c);
}

FinVector OmegaSpace::d(int degree, const FinVector& x) const {
    const auto& src = basis(degree);
    VectorBuilder b;
    for (const auto& [i, c] : x.entries()) {
        const OmegaWord& w = src[i];
        int before = 0;
        for (std::size_t t = 0; t < w.size(); ++t) {
            if (w[t] < static_cast<int>(n_)) {
                OmegaWord v = w;
                v[t] += static_cast<int>(n_);
                b.add(static_cast<Index>(index(degree + 1, v)), before % 2 == 0 ? c : -c);
            }
            before += letterDegree(w[t]);
        }
    }
    return b.build();
}

LinearMap OmegaSpace::differential(int degree) const {
    LinearMap m(dim(degree), dim(degree + 1));
    for (std::size_t i = 0; i < dim(degree); ++i) m.setColumn(i, d(degree, FinVector::unit(static_cast<Index>(i))));
    return m;
}

FinVector OmegaSpace::multiply(int p, const FinVector& x, int q, const FinVector& y) const {
    const auto& bx = basis(p);
    const auto& by = basis(q);
    VectorBuilder b;
    for (const auto& [i, c] : x.entries())
        for (const auto& [j, s] : y.entries()) {
            OmegaWord w = bx[i];
            w.insert(w.end(), by[j].begin(), by[j].end());
            b.add(static_cast<Index>(index(p + q, w)), c * s);
        }
    return b.build();
}

std::string OmegaSpace::format(int degree, const FinVector& x, const std::vector<std::string>& names) const {
    if (x.isZero()) return "0";
    const auto& src = basis(degree);
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : x.entries()) {
        if (!first) os << " + ";
        first = false;
        std::string w;
        for (int l : src[i]) {
            if (!w.empty()) w += "*";
            w += l < static_cast<int>(n_) ? names[static_cast<std::size_t>(l)] : "d" + names[static_cast<std::size_t>(l) - n_];
        }
        if (w.empty()) w = "1";
        os << "(" << c.str() << ")*" << w;
    }
    return os.str();
}

std::vector<std::size_t> omegaCohomology(const OmegaSpace& omega, int maxDegree) {
    std::vector<std::size_t> h;
    LinearMap in(0, 1);
    for (int k = 0; k <= maxDegree; ++k) {
        LinearMap out = omega.differential(k);
        h.push_back(cohomologyRank(in, out));
        in = std::move(out);
    }
    return h;
}

// ---------------------------------------------------------------- Sigma

std::vector<FinVector> sigmaRelations(const Calculus& c) {
    const std::size_t nn = c.dim() * c.dim();
    std::vector<FinVector> rel;
    for (std::size_t i = 0; i < nn; ++i) {
        FinVector v = FinVector::unit(static_cast<Index>(i)) - c.sigma().column(i);
        if (!v.isZero()) rel.push_back(std::move(v));
    }
    return rowReduce(rel).basis;
}

SigmaModel::SigmaModel(std::shared_ptr<const Calculus> c) : c_(std::move(c)), alg_(c_->dim(), sigmaRelations(*c_)) {}

std::vector<HopfElement> SigmaModel::coaction(int p, std::size_t i) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = coaction_.find({p, i});
        if (it != coaction_.end()) return it->second;
    }
    const HopfAlgebra& A = c_->hopf();
    std::vector<HopfElement> out(alg_.dim(p));
    if (p == 0) {
        out[0] = A.one();
    } else {
        // the basis word of e_i is (basis word of its parent) + letter
        const auto w = alg_.word(p, i);
        const int a = w.back();
        const FinVector parent = alg_.fromWord(slice(w, 0, w.size() - 1));
        std::vector<HopfElement> prev(alg_.dim(p - 1));
        for (const auto& [y, s] : parent.entries()) {
            const auto co = coaction(p - 1, y);
            for (std::size_t z = 0; z < co.size(); ++z)
                if (!co[z].isZero()) prev[z].addScaled(co[z], s);
        }
        for (std::size_t z = 0; z < prev.size(); ++z) {
            if (prev[z].isZero()) continue;
            for (std::size_t cc = 0; cc < c_->dim(); ++cc) {
                const HopfElement& v = c_->V(cc, static_cast<std::size_t>(a));
                if (v.isZero()) continue;
                const HopfElement prod = A.mul(prev[z], v);
                const FinVector target = alg_.appendLetter(p - 1, FinVector::unit(static_cast<Index>(z)), static_cast<int>(cc));
                for (const auto& [j, t] : target.entries()) out[j].addScaled(prod, t);
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    coaction_.emplace(std::make_pair(p, i), out);
    return out;
}

std::vector<FinVector> SigmaModel::invariants(int p) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = invariants_.find(p);
        if (it != invariants_.end()) return it->second;
    }
    const std::size_t m = alg_.dim(p);
    RowIndex<std::pair<std::size_t, Word>> rows;
    std::vector<std::vector<FinVector::Entry>> cols(m);
    for (std::size_t i = 0; i < m; ++i) {
        VectorBuilder b;
        const auto co = coaction(p, i);
        for (std::size_t j = 0; j < m; ++j) {
            HopfElement e = co[j];
            if (j == i) e -= HopfElement(Scalar(1));
            for (const auto& [w, c] : e.terms()) b.add(rows({j, w}), c);
        }
        const FinVector col = b.build();
        cols[i] = col.entries();
    }
    LinearMap f(m, rows.size());
    for (std::size_t i = 0; i < m; ++i) f.setColumn(i, FinVector::fromEntries(cols[i]));
    auto inv = rowReduce(kernelBasis(f)).basis;
    std::lock_guard<std::mutex> lock(mu_);
    invariants_.emplace(p, inv);
    return inv;
}

Report checkCentrality(const SigmaModel& sigma, int maxDegree, int pairDegree) {
    Report r;
    const QuadraticAlgebra& alg = sigma.algebra();
    auto commutes = [&](int p, const FinVector& x, int q, std::size_t v) {
        const FinVector e = FinVector::unit(static_cast<Index>(v));
        return alg.multiply(p, x, q, e) == alg.multiply(q, e, p, x);
    };
    std::size_t gens = 0, pairs = 0;
    std::string genBad, pairBad;
    for (int p = 0; p <= maxDegree; ++p)
        for (const auto& x : sigma.invariants(p)) {
            for (std::size_t g = 0; g < alg.dim(1); ++g, ++gens)
                if (!commutes(p, x, 1, g) && genBad.empty()) genBad = "degree " + std::to_string(p) + " invariant against generator " + std::to_string(g);
            for (int q = 0; p + q <= pairDegree; ++q)
                for (std::size_t v = 0; v < alg.dim(q); ++v, ++pairs)
                    if (!commutes(p, x, q, v) && pairBad.empty())
                        pairBad = "degree " + std::to_string(p) + " invariant against basis element " + std::to_string(v) + " of degree " + std::to_string(q);
        }
    r.add("invariants-commute-with-generators", genBad.empty(), genBad.empty() ? std::to_string(gens) + " commutators vanish" : genBad);
    r.add("invariants-commute-with-basis", pairBad.empty(), pairBad.empty() ? std::to_string(pairs) + " commutators vanish" : pairBad);
    return r;
}

// ---------------------------------------------------------------- Omega_*

OmegaStar::OmegaStar(std::shared_ptr<const Calculus> c)
    : c_(std::move(c)), sigma_(c_), env_(envelopeAlgebra(*c_)), n_(c_->dim()) {
    if (!c_->hasDelta()) throw std::invalid_argument("Omega_* needs the embedded differential delta");
}

std::size_t OmegaStar::offset(int degree, int p) const {
    std::size_t off = 0;
    for (int s = 0; s < p; ++s) off += sigma_.dim(s) * formDim(degree - 2 * s);
    return off;
}

std::size_t OmegaStar::dim(int degree) const { return offset(degree, degree / 2 + 1); }

OmegaStar::Slot OmegaStar::slot(int degree, std::size_t i) const {
    for (int p = 0; 2 * p <= degree; ++p) {
        const int q = degree - 2 * p;
        const std::size_t block = sigma_.dim(p) * formDim(q);
        if (i < block) return {p, q, i / formDim(q), i % formDim(q)};
        i -= block;
    }
    throw std::out_of_range("Omega_* index out of range");
}

FinVector OmegaStar::pack(int p, const FinVector& psi, int q, const FinVector& eta) const {
    const std::size_t off = offset(2 * p + q, p), fd = formDim(q);
    VectorBuilder b;
    for (const auto& [i, c] : psi.entries())
        for (const auto& [j, s] : eta.entries()) b.add(static_cast<Index>(off + i * fd + j), c * s);
    return b.build();
}

FinVector OmegaStar::theta(std::size_t i) const { return pack(0, FinVector::unit(0), 1, env_.fromWord({static_cast<int>(i)})); }

FinVector OmegaStar::curvature(std::size_t i) const {
    return pack(1, sigma_.algebra().fromWord({static_cast<int>(i)}), 0, FinVector::unit(0));
}

FinVector OmegaStar::circV(int q, std::size_t eta, int j, int z) const {
    const auto key = std::make_tuple(q, eta, j, z);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = circV_.find(key);
        if (it != circV_.end()) return it->second;
    }
    // eta o V(j,z) = sum over paths j = k_0, k_1, ..., k_q = z of prod_t (e_t o V(k_{t-1}, k_t))
    const auto w = env_.word(q, eta);
    std::vector<FinVector> states(n_);
    states[static_cast<std::size_t>(j)] = FinVector::unit(0);
    for (int t = 0; t < q; ++t) {
        const int e = w[static_cast<std::size_t>(t)];
        std::vector<VectorBuilder> next(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            if (states[k].isZero()) continue;
            for (std::size_t k2 = 0; k2 < n_; ++k2) {
                const FinVector& col = c_->F(k, k2).column(static_cast<std::size_t>(e));
                for (const auto& [f, s] : col.entries()) next[k2].addScaled(env_.appendLetter(t, states[k], static_cast<int>(f)), s);
            }
        }
        for (std::size_t k = 0; k < n_; ++k) states[k] = next[k].build();
    }
    FinVector out = states[static_cast<std::size_t>(z)];
    std::lock_guard<std::mutex> lock(mu_);
    circV_.emplace(key, out);
    return out;
}

FinVector OmegaStar::circV(int q, const FinVector& eta, int j, int z) const {
    VectorBuilder b;
    for (const auto& [i, c] : eta.entries()) b.addScaled(circV(q, i, j, z), c);
    return b.build();
}

FinVector OmegaStar::multiplyBasis(const Slot& a, const Slot& b) const {
    // (psi (x) eta)(phi (x) vt) = sum_c psi R_c (x) (eta o V(c_1,b_1)...V(c_p,b_p)) vt
    const auto bw = sigma_.algebra().word(b.p, b.sigmaIndex);
    std::vector<std::pair<std::vector<int>, FinVector>> states = {{{}, FinVector::unit(static_cast<Index>(a.formIndex))}};
    for (int letter : bw) {
        std::vector<std::pair<std::vector<int>, FinVector>> next;
        for (const auto& [cw, eta] : states)
            for (std::size_t cc = 0; cc < n_; ++cc) {
                FinVector v = circV(a.q, eta, static_cast<int>(cc), letter);
                if (v.isZero()) continue;
                auto w = cw;
                w.push_back(static_cast<int>(cc));
                next.emplace_back(std::move(w), std::move(v));
            }
        states = std::move(next);
    }
    VectorBuilder out;
    const FinVector right = FinVector::unit(static_cast<Index>(b.formIndex));
    for (const auto& [cw, eta] : states) {
        const FinVector psi = sigma_.algebra().appendWord(a.p, FinVector::unit(static_cast<Index>(a.sigmaIndex)), cw);
        const FinVector form = env_.multiply(a.q, eta, b.q, right);
        out.addScaled(pack(a.p + b.p, psi, a.q + b.q, form), Scalar(1));
    }
    return out.build();
}

FinVector OmegaStar::multiply(int p, const FinVector& x, int q, const FinVector& y) const {
    VectorBuilder b;
    for (const auto& [i, c] : x.entries()) {
        const Slot sa = slot(p, i);
        for (const auto& [j, s] : y.entries()) b.addScaled(multiplyBasis(sa, slot(q, j)), c * s);
    }
    return b.build();
}

FinVector OmegaStar::covariantDerivative(int degree, const FinVector& x) const {
    VectorBuilder b;
    for (const auto& [i, c] : x.entries()) {
        const Slot s = slot(degree, i);
        const auto w = env_.word(s.q, s.formIndex);
        for (int t = 0; t < s.q; ++t) {
            const FinVector left = pack(s.p, FinVector::unit(static_cast<Index>(s.sigmaIndex)), t, env_.fromWord(slice(w, 0, static_cast<std::size_t>(t))));
            const int rest = s.q - t - 1;
            const FinVector right = pack(0, FinVector::unit(0), rest, env_.fromWord(slice(w, static_cast<std::size_t>(t) + 1, w.size())));
            const FinVector lm = multiply(2 * s.p + t, left, 2, curvature(static_cast<std::size_t>(w[static_cast<std::size_t>(t)])));
            b.addScaled(multiply(2 * s.p + t + 2, lm, rest, right), Scalar(t % 2 == 0 ? 1 : -1) * c);
        }
    }
    return b.build();
}

FinVector OmegaStar::verticalDifferential(int degree, const FinVector& x) const {
    VectorBuilder b;
    for (const auto& [i, c] : x.entries()) {
        const Slot s = slot(degree, i);
        const auto bw = sigma_.algebra().word(s.p, s.sigmaIndex);
        const FinVector vt = FinVector::unit(static_cast<Index>(s.formIndex));
        // pi(V(c_1,b_1)...V(c_t,b_t)) = pi(prefix) o V(c_t,b_t) + eps(prefix) pi(V(c_t,b_t))
        struct State {
            std::vector<int> c;
            FinVector piv;
            bool diagonal;
        };
        std::vector<State> states = {{{}, FinVector(), true}};
        for (int letter : bw) {
            std::vector<State> next;
            for (const auto& st : states)
                for (std::size_t cc = 0; cc < n_; ++cc) {
                    FinVector v = c_->F(cc, static_cast<std::size_t>(letter)).apply(st.piv);
                    if (st.diagonal) v += c_->P(cc, static_cast<std::size_t>(letter));
                    const bool diag = st.diagonal && static_cast<int>(cc) == letter;
                    if (v.isZero() && !diag) continue;
                    auto w = st.c;
                    w.push_back(static_cast<int>(cc));
                    next.push_back({std::move(w), std::move(v), diag});
                }
            states = std::move(next);
        }
        for (const auto& st : states) {
            if (st.piv.isZero()) continue;
            const FinVector form = env_.multiply(1, env_.fromTensor(1, st.piv), s.q, vt);
            b.addScaled(pack(s.p, sigma_.algebra().fromWord(st.c), s.q + 1, form), c);
        }
        b.addScaled(pack(s.p, FinVector::unit(static_cast<Index>(s.sigmaIndex)), s.q + 1, envelopeDifferential(*c_, env_, s.q, s.formIndex)), c);
    }
    return b.build();
}

FinVector OmegaStar::dTheta(std::size_t i) const {
    return curvature(i) + pack(0, FinVector::unit(0), 2, env_.fromTensor(2, c_->delta(i)));
}

FinVector OmegaStar::dCurvature(std::size_t i) const {
    // R = d theta - delta(theta), so d R = -d delta(theta)
    VectorBuilder b;
    for (const auto& [ab, s] : c_->delta(i).entries()) {
        const std::size_t a = ab / n_, bb = ab % n_;
        b.addScaled(multiply(2, dTheta(a), 1, theta(bb)), -s);
        b.addScaled(multiply(1, theta(a), 2, dTheta(bb)), s);
    }
    return b.build();
}

FinVector OmegaStar::dBasis(int degree, std::size_t i) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = dBasis_.find({degree, i});
        if (it != dBasis_.end()) return it->second;
    }
    const Slot s = slot(degree, i);
    const QuadraticAlgebra& alg = sigma_.algebra();
    const auto bw = alg.word(s.p, s.sigmaIndex);
    const auto w = env_.word(s.q, s.formIndex);
    const FinVector one = FinVector::unit(0);
    VectorBuilder b;
    // d(phi (x) 1) (1 (x) vt)
    const FinVector tail = pack(0, one, s.q, FinVector::unit(static_cast<Index>(s.formIndex)));
    for (std::size_t t = 0; t < bw.size(); ++t) {
        const int pl = static_cast<int>(t), pr = s.p - pl - 1;
        const FinVector left = pack(pl, alg.fromWord(slice(bw, 0, t)), 0, one);
        const FinVector right = pack(pr, alg.fromWord(slice(bw, t + 1, bw.size())), 0, one);
        FinVector x = multiply(2 * pl, left, 3, dCurvature(static_cast<std::size_t>(bw[t])));
        x = multiply(2 * pl + 3, x, 2 * pr, right);
        b.addScaled(multiply(2 * s.p + 1, x, s.q, tail), Scalar(1));
    }
    // (phi (x) 1) d(1 (x) vt)
    for (int t = 0; t < s.q; ++t) {
        const FinVector left = pack(s.p, FinVector::unit(static_cast<Index>(s.sigmaIndex)), t, env_.fromWord(slice(w, 0, static_cast<std::size_t>(t))));
        const int rest = s.q - t - 1;
        const FinVector right = pack(0, one, rest, env_.fromWord(slice(w, static_cast<std::size_t>(t) + 1, w.size())));
        const FinVector lm = multiply(2 * s.p + t, left, 2, dTheta(static_cast<std::size_t>(w[static_cast<std::size_t>(t)])));
        b.addScaled(multiply(2 * s.p + t + 2, lm, rest, right), Scalar(t % 2 == 0 ? 1 : -1));
    }
    FinVector out = b.build();
    std::lock_guard<std::mutex> lock(mu_);
    dBasis_.emplace(std::make_pair(degree, i), out);
    return out;
}

FinVector OmegaStar::totalDifferential(int degree, const FinVector& x) const {
    VectorBuilder b;
    for (const auto& [i, c] : x.entries()) b.addScaled(dBasis(degree, i), c);
    return b.build();
}

LinearMap OmegaStar::matrix(int degree, int which) const {
    LinearMap m(dim(degree), dim(degree + 1));
    for (std::size_t i = 0; i < dim(degree); ++i) {
        const FinVector e = FinVector::unit(static_cast<Index>(i));
        m.setColumn(i, which == 0 ? covariantDerivative(degree, e) : which == 1 ? verticalDifferential(degree, e) : totalDifferential(degree, e));
    }
    return m;
}

FinVector OmegaStar::project(const OmegaSpace& omega, int degree, const FinVector& x) const {
    VectorBuilder b;
    const auto& words = omega.basis(degree);
    for (const auto& [i, c] : x.entries()) {
        const OmegaWord& w = words[i];
        // longest memoized prefix, then extend letter by letter
        std::size_t len = w.size();
        FinVector acc;
        for (;; --len) {
            if (len == 0) {
                acc = FinVector::unit(0);
                break;
            }
            std::lock_guard<std::mutex> lock(mu_);
            auto it = projected_.find(slice(w, 0, len));
            if (it != projected_.end()) {
                acc = it->second;
                break;
            }
        }
        int deg = omega.wordDegree(slice(w, 0, len));
        for (std::size_t t = len; t < w.size(); ++t) {
            const int l = w[t];
            const bool isTheta = l < static_cast<int>(n_);
            const FinVector g = isTheta ? theta(static_cast<std::size_t>(l)) : dTheta(static_cast<std::size_t>(l) - n_);
            acc = multiply(deg, acc, isTheta ? 1 : 2, g);
            deg += isTheta ? 1 : 2;
            std::lock_guard<std::mutex> lock(mu_);
            projected_.emplace(slice(w, 0, t + 1), acc);
        }
        b.addScaled(acc, c);
    }
    return b.build();
}

Report OmegaStar::checkIdentities(int maxDegree) const {
    Report r;
    std::vector<LinearMap> D, V, d;
    for (int k = 0; k <= maxDegree + 1; ++k) {
        D.push_back(matrix(k, 0));
        V.push_back(matrix(k, 1));
        d.push_back(matrix(k, 2));
    }
    std::string bad[4];
    for (int k = 0; k <= maxDegree; ++k) {
        const auto u = static_cast<std::size_t>(k);
        const std::string at = "degree " + std::to_string(k);
        if (!D[u + 1].compose(D[u]).isZero() && bad[0].empty()) bad[0] = at;
        if (!V[u + 1].compose(V[u]).isZero() && bad[1].empty()) bad[1] = at;
        if (!(D[u + 1].compose(V[u]) + V[u + 1].compose(D[u])).isZero() && bad[2].empty()) bad[2] = at;
        if (!(D[u] + V[u] == d[u]) && bad[3].empty()) bad[3] = at;
    }
    const char* names[4] = {"D-squared", "dvh-squared", "D-dvh-anticommute", "D-plus-dvh-is-d"};
    for (int i = 0; i < 4; ++i)
        r.add(names[i], bad[i].empty(), bad[i].empty() ? "through degree " + std::to_string(maxDegree) : "fails in " + bad[i]);
    return r;
}

std::vector<std::pair<int, FinVector>> kIdealGenerators(const OmegaStar& star, const OmegaSpace& omega) {
    const Calculus& c = star.calculus();
    const std::size_t n = c.dim();
    const int nn = static_cast<int>(n);
    auto quad = [&](const FinVector& t) {
        VectorBuilder b;
        for (const auto& [ab, s] : t.entries()) b.addScaled(omega.word({static_cast<int>(ab / n), static_cast<int>(ab % n)}), s);
        return b.build();
    };
    std::vector<FinVector> R(n);
    for (std::size_t i = 0; i < n; ++i) R[i] = omega.word({nn + static_cast<int>(i)}) - quad(c.delta(i));
    auto Rof = [&](const FinVector& v) {
        VectorBuilder b;
        for (const auto& [m, s] : v.entries()) b.addScaled(R[m], s);
        return b.build();
    };
    std::vector<std::pair<int, FinVector>> gens;
    for (const auto& s : *c.wedgeSpace()) gens.emplace_back(2, quad(s));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb < n; ++bb) {
            const FinVector ta = omega.word({static_cast<int>(a)});
            FinVector j3 = omega.multiply(1, ta, 2, R[bb]);
            for (std::size_t k = 0; k < n; ++k) {
                const FinVector img = c.F(k, bb).column(a);
                VectorBuilder tb;
                for (const auto& [m, s] : img.entries()) tb.addScaled(omega.word({static_cast<int>(m)}), s);
                j3 -= omega.multiply(2, R[k], 1, tb.build());
            }
            gens.emplace_back(3, j3);
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb < n; ++bb) {
            FinVector j4 = omega.multiply(2, R[a], 2, R[bb]);
            for (std::size_t k = 0; k < n; ++k) j4 -= omega.multiply(2, R[k], 2, Rof(c.F(k, bb).column(a)));
            gens.emplace_back(4, j4);
        }
    return gens;
}

KIdealResult kIdealCheck(const OmegaStar& star, int maxDegree) {
    KIdealResult res;
    const OmegaSpace omega(star.calculus().dim());
    const auto gens = kIdealGenerators(star, omega);

    std::string bad;
    for (const auto& [deg, g] : gens)
        if (!star.project(omega, deg, g).isZero() && bad.empty()) bad = "generator of degree " + std::to_string(deg);
    res.report.add("generators-project-to-zero", bad.empty(), bad);

    std::string dimBad, dBad;
    for (int N = 0; N <= maxDegree; ++N) {
        Echelon K;
        for (const auto& [deg, g] : gens) {
            if (deg > N) continue;
            for (int left = 0; left <= N - deg; ++left) {
                const int right = N - deg - left;
                for (std::size_t u = 0; u < omega.dim(left); ++u) {
                    const FinVector ug = omega.multiply(left, FinVector::unit(static_cast<Index>(u)), deg, g);
                    for (std::size_t v = 0; v < omega.dim(right); ++v)
                        K.insert(omega.multiply(left + deg, ug, right, FinVector::unit(static_cast<Index>(v))));
                }
            }
        }
        LinearMap proj(omega.dim(N), star.dim(N));
        for (std::size_t i = 0; i < omega.dim(N); ++i) proj.setColumn(i, star.project(omega, N, FinVector::unit(static_cast<Index>(i))));
        const std::size_t rk = rank(proj);
        res.omegaDims.push_back(omega.dim(N));
        res.idealDims.push_back(K.rank());
        res.quotientDims.push_back(star.dim(N));
        if ((rk != star.dim(N) || omega.dim(N) != K.rank() + star.dim(N)) && dimBad.empty())
            dimBad = "degree " + std::to_string(N) + ": dim Omega " + std::to_string(omega.dim(N)) + ", dim K " + std::to_string(K.rank()) +
                     ", dim Omega_* " + std::to_string(star.dim(N)) + ", projection rank " + std::to_string(rk);
        if (N < maxDegree)
            for (const auto& row : K.rows())
                if (!star.project(omega, N + 1, omega.d(N, row)).isZero() && dBad.empty()) dBad = "degree " + std::to_string(N);
    }
    res.report.add("ideal-is-projection-kernel", dimBad.empty(), dimBad);
    res.report.add("ideal-d-invariant", dBad.empty(), dBad);

    LinearMap in(0, 1);
    for (int k = 0; k < maxDegree; ++k) {
        LinearMap out = star.matrix(k, 2);
        res.quotientCohomology.push_back(cohomologyRank(in, out));
        in = std::move(out);
    }
    return res;
}

// ---------------------------------------------------------------- adTilde

UniversalModel::UniversalModel(std::shared_ptr<const Calculus> c)
    : c_(std::move(c)), omega_(c_->dim()), env_(envelopeAlgebra(*c_)) {}

FinVector UniversalModel::circForm(int q, std::size_t form, const Word& a) const {
    const auto key = std::make_pair(a, std::make_pair(q, form));
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = circ_.find(key);
        if (it != circ_.end()) return it->second;
    }
    const HopfAlgebra& A = c_->hopf();
    FinVector out;
    if (q == 0) {
        out = FinVector::unit(0, A.counitOfWord(a));
    } else {
        // vartheta o a = prod_t (e_t o a(t))
        const auto w = env_.word(q, form);
        const Tensor legs = A.iteratedCoproduct(HopfElement::monomial(a), q);
        const std::size_t n = c_->dim();
        VectorBuilder tensor;
        for (const auto& [key2, s] : legs.terms()) {
            std::vector<FinVector::Entry> acc = {{0, s}};
            for (int t = 0; t < q && !acc.empty(); ++t) {
                const LinearMap m = c_->circMatrix(key2[static_cast<std::size_t>(t)]);
                const FinVector& col = m.column(static_cast<std::size_t>(w[static_cast<std::size_t>(t)]));
                std::vector<FinVector::Entry> next;
                for (const auto& [i, x] : acc)
                    for (const auto& [f, y] : col.entries()) next.emplace_back(static_cast<Index>(i * n + f), x * y);
                acc = std::move(next);
            }
            for (const auto& [i, x] : acc) tensor.add(i, x);
        }
        out = env_.fromTensor(q, tensor.build());
    }
    std::lock_guard<std::mutex> lock(mu_);
    circ_.emplace(key, out);
    return out;
}

MixedForm UniversalModel::mixedMultiply(const MixedForm& x, const MixedForm& y) const {
    const HopfAlgebra& A = c_->hopf();
    MixedForm out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) {
            // (w (x) a vt)(w' (x) a' vt') = (-1)^{|vt||w'|} w w' (x) a a'(1) (vt o a'(2)) vt'
            const Scalar sign((kx.q * ky.k) % 2 == 0 ? 1 : -1);
            OmegaWord w = omega_.basis(kx.k)[kx.omega];
            const auto& w2 = omega_.basis(ky.k)[ky.omega];
            w.insert(w.end(), w2.begin(), w2.end());
            const std::size_t wi = omega_.index(kx.k + ky.k, w);
            const Tensor cop = A.coproductOfWord(ky.a);
            for (const auto& [legs, s] : cop.terms()) {
                const FinVector moved = circForm(kx.q, kx.form, legs[1]);
                if (moved.isZero()) continue;
                const FinVector form = env_.multiply(kx.q, moved, ky.q, FinVector::unit(static_cast<Index>(ky.form)));
                if (form.isZero()) continue;
                const HopfElement prod = A.mulWords(kx.a, legs[0]);
                for (const auto& [aw, t] : prod.terms())
                    for (const auto& [f, u] : form.entries())
                        addTo(out, MixedKey{kx.k + ky.k, wi, kx.q + ky.q, f, aw}, sign * cx * cy * s * t * u);
            }
        }
    return out;
}

MixedForm UniversalModel::adLetter(int letter) const {
    const std::size_t n = c_->dim();
    MixedForm out;
    const std::size_t one = omega_.index(0, {});
    if (letter < static_cast<int>(n)) {
        const auto i = static_cast<std::size_t>(letter);
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [w, s] : c_->V(j, i).terms()) addTo(out, MixedKey{1, omega_.index(1, {static_cast<int>(j)}), 0, 0, w}, s);
        const FinVector th = env_.fromWord({letter});
        for (const auto& [f, s] : th.entries()) addTo(out, MixedKey{0, one, 1, f, Word()}, s);
        return out;
    }
    // d of the above: Theta_j (x) V(j,i) - theta_j (x) V(j,k) pi(V(k,i)) + 1 (x) d theta_i
    const auto i = static_cast<std::size_t>(letter) - n;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t Tj = omega_.index(2, {static_cast<int>(n + j)}), tj = omega_.index(1, {static_cast<int>(j)});
        for (const auto& [w, s] : c_->V(j, i).terms()) addTo(out, MixedKey{2, Tj, 0, 0, w}, s);
        for (std::size_t k = 0; k < n; ++k) {
            const FinVector form = env_.fromTensor(1, c_->P(k, i));
            for (const auto& [w, s] : c_->V(j, k).terms())
                for (const auto& [f, t] : form.entries()) addTo(out, MixedKey{1, tj, 1, f, w}, -s * t);
        }
    }
    const FinVector dth = envelopeDifferential(*c_, env_, 1, env_.fromWord({static_cast<int>(i)}).entries().front().first);
    for (const auto& [f, s] : dth.entries()) addTo(out, MixedKey{0, one, 2, f, Word()}, s);
    return out;
}

MixedForm UniversalModel::adWord(const OmegaWord& w) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ad_.find(w);
        if (it != ad_.end()) return it->second;
    }
    MixedForm out;
    if (w.empty())
        out.emplace(MixedKey{0, 0, 0, 0, Word()}, Scalar(1));
    else if (w.size() == 1)
        out = adLetter(w[0]);
    else
        out = mixedMultiply(adWord(OmegaWord(w.begin(), w.end() - 1)), adLetter(w.back()));
    std::lock_guard<std::mutex> lock(mu_);
    ad_.emplace(w, out);
    return out;
}

MixedForm UniversalModel::adTilde(int degree, const FinVector& x) const {
    MixedForm out;
    const auto& words = omega_.basis(degree);
    for (const auto& [i, c] : x.entries()) {
        const MixedForm t = adWord(words[i]);
        for (const auto& [k, s] : t) addTo(out, k, c * s);
    }
    return out;
}

MixedForm UniversalModel::mixedDifferential(const MixedForm& x) const {
    const HopfAlgebra& A = c_->hopf();
    MixedForm out;
    for (const auto& [key, c] : x) {
        const FinVector dw = omega_.d(key.k, FinVector::unit(static_cast<Index>(key.omega)));
        for (const auto& [w, s] : dw.entries()) addTo(out, MixedKey{key.k + 1, w, key.q, key.form, key.a}, c * s);
        const Scalar sign(key.k % 2 == 0 ? 1 : -1);
        // d(a vt) = a(1) pi(a(2)) vt + a d vt
        const Tensor cop = A.coproductOfWord(key.a);
        const FinVector vt = FinVector::unit(static_cast<Index>(key.form));
        for (const auto& [legs, s] : cop.terms()) {
            const FinVector p = c_->piOfWord(legs[1]);
            if (p.isZero()) continue;
            const FinVector form = env_.multiply(1, env_.fromTensor(1, p), key.q, vt);
            for (const auto& [f, t] : form.entries()) addTo(out, MixedKey{key.k, key.omega, key.q + 1, f, legs[0]}, sign * c * s * t);
        }
        const FinVector dvt = envelopeDifferential(*c_, env_, key.q, key.form);
        for (const auto& [f, t] : dvt.entries()) addTo(out, MixedKey{key.k, key.omega, key.q + 1, f, key.a}, sign * c * t);
    }
    return out;
}

std::map<std::pair<std::size_t, Word>, Scalar> UniversalModel::adWedge(int degree, const FinVector& x) const {
    std::map<std::pair<std::size_t, Word>, Scalar> out;
    const MixedForm t = adTilde(degree, x);
    for (const auto& [k, c] : t)
        if (k.q == 0) addTo(out, {k.omega, k.a}, c);
    return out;
}

std::map<std::pair<std::size_t, std::size_t>, Scalar> UniversalModel::verticalContraction(int degree, const FinVector& x) const {
    std::map<std::pair<std::size_t, std::size_t>, Scalar> out;
    const MixedForm t = adTilde(degree, x);
    for (const auto& [k, c] : t)
        if (k.q == 1) addTo(out, {k.omega, k.form}, c * c_->hopf().counitOfWord(k.a));
    return out;
}

std::vector<FinVector> UniversalModel::kernelOf(int degree, int mode) const {
    const std::size_t m = omega_.dim(degree);
    RowIndex<MixedKey> rows;
    std::vector<FinVector> cols(m);
    for (std::size_t i = 0; i < m; ++i) {
        const FinVector e = FinVector::unit(static_cast<Index>(i));
        VectorBuilder b;
        if (mode == 2) {
            const auto t = verticalContraction(degree, e);
            for (const auto& [k, c] : t) b.add(rows(MixedKey{degree - 1, k.first, 1, k.second, Word()}), c);
        } else {
            MixedForm t = adTilde(degree, e);
            if (mode == 0) addTo(t, MixedKey{degree, i, 0, 0, Word()}, Scalar(-1));
            for (const auto& [k, c] : t)
                if (mode == 0 || k.q > 0) b.add(rows(k), c);
        }
        cols[i] = b.build();
    }
    LinearMap f(m, rows.size());
    for (std::size_t i = 0; i < m; ++i) f.setColumn(i, cols[i]);
    return rowReduce(kernelBasis(f)).basis;
}

std::vector<FinVector> UniversalModel::dalethBasis(int degree) const { return kernelOf(degree, 0); }
std::vector<FinVector> UniversalModel::horizontalBasis(int degree) const { return kernelOf(degree, 1); }
std::vector<FinVector> UniversalModel::contractionKernel(int degree) const { return kernelOf(degree, 2); }

UniversalModel::Cohomology UniversalModel::dalethCohomology(int maxDegree) const {
    Cohomology h;
    std::vector<FinVector> prevImage;
    for (int k = 0; k <= maxDegree; ++k) {
        const auto basis = dalethBasis(k);
        LinearMap d(basis.size(), omega_.dim(k + 1));
        for (std::size_t i = 0; i < basis.size(); ++i) d.setColumn(i, omega_.d(k, basis[i]));
        Echelon image;
        for (const auto& v : prevImage) image.insert(v);
        std::vector<FinVector> reps;
        const auto ker = kernelBasis(d);
        for (const auto& alpha : ker) {
            VectorBuilder b;
            for (const auto& [i, c] : alpha.entries()) b.addScaled(basis[i], c);
            const FinVector z = b.build();
            if (image.insert(z)) reps.push_back(z);
        }
        h.dims.push_back(reps.size());
        h.representatives.push_back(std::move(reps));
        prevImage.clear();
        for (std::size_t i = 0; i < basis.size(); ++i) prevImage.push_back(d.column(i));
    }
    return h;
}

Report UniversalModel::checkCoaction(int maxDegree) const {
    Report r;
    const HopfAlgebra& A = c_->hopf();
    std::string dBad, coBad;
    for (int k = 0; k <= maxDegree; ++k)
        for (std::size_t i = 0; i < omega_.dim(k); ++i) {
            const FinVector e = FinVector::unit(static_cast<Index>(i));
            if (adTilde(k + 1, omega_.d(k, e)) != mixedDifferential(adTilde(k, e)) && dBad.empty())
                dBad = "degree " + std::to_string(k) + " element " + std::to_string(i);
            // (ad (x) id) ad = (id (x) phi) ad
            std::map<std::tuple<std::size_t, Word, Word>, Scalar> lhs, rhs;
            const auto once = adWedge(k, e);
            for (const auto& [key, c] : once) {
                const auto twice = adWedge(k, FinVector::unit(static_cast<Index>(key.first)));
                for (const auto& [key2, s] : twice) addTo(lhs, {key2.first, key2.second, key.second}, c * s);
                const Tensor cop = A.coproductOfWord(key.second);
                for (const auto& [legs, s] : cop.terms()) addTo(rhs, {key.first, legs[0], legs[1]}, c * s);
            }
            if (lhs != rhs && coBad.empty()) coBad = "degree " + std::to_string(k) + " element " + std::to_string(i);
        }
    r.add("adtilde-differential", dBad.empty(), dBad);
    r.add("adwedge-coaction", coBad.empty(), coBad);
    return r;
}

}  // namespace qchar
