#include "qchar/exterior.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qchar {

QuadraticAlgebra::QuadraticAlgebra(std::size_t generators, std::vector<FinVector> relations)
    : n_(generators), rel_(std::move(relations)) {
    dims_ = {1};
    parent_.emplace_back();
    letter_.emplace_back();
    red_.emplace_back();
}

void QuadraticAlgebra::extendTo(int k) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(dims_.size()) <= k) {
        const int next = static_cast<int>(dims_.size());
        const std::size_t prev = dims_[static_cast<std::size_t>(next - 1)];
        const auto cand = static_cast<Index>(prev * n_);
        Echelon e;
        if (next >= 2) {
            const auto& redPrev = red_[static_cast<std::size_t>(next - 1)];
            for (std::size_t z = 0; z < dims_[static_cast<std::size_t>(next - 2)]; ++z)
                for (const auto& r : rel_) {
                    VectorBuilder b;
                    for (const auto& [ab, c] : r.entries()) {
                        const std::size_t a = ab / n_, bb = ab % n_;
                        for (const auto& [y, s] : redPrev[z * n_ + a].entries())
                            b.add(static_cast<Index>(y * n_ + bb), c * s);
                    }
                    e.insert(b.build());
                }
        }
        std::vector<std::size_t> parent;
        std::vector<int> letter;
        std::vector<Index> position(cand, 0);
        for (Index idx = 0; idx < cand; ++idx)
            if (!e.isPivot(idx)) {
                position[idx] = static_cast<Index>(parent.size());
                parent.push_back(idx / n_);
                letter.push_back(static_cast<int>(idx % n_));
            }
        std::vector<FinVector> red(cand);
        for (Index idx = 0; idx < cand; ++idx) {
            FinVector r = e.reduce(FinVector::unit(idx));
            std::vector<FinVector::Entry> out;
            for (const auto& [i, c] : r.entries()) out.emplace_back(position[i], c);
            red[idx] = FinVector::fromEntries(std::move(out));
        }
        dims_.push_back(parent.size());
        parent_.push_back(std::move(parent));
        letter_.push_back(std::move(letter));
        red_.push_back(std::move(red));
    }
}

std::size_t QuadraticAlgebra::dim(int k) const {
    extendTo(k);
    std::lock_guard<std::mutex> lock(mu_);
    return dims_[static_cast<std::size_t>(k)];
}

std::vector<int> QuadraticAlgebra::word(int k, std::size_t i) const {
    extendTo(k);
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<int> w(static_cast<std::size_t>(k));
    for (int d = k; d >= 1; --d) {
        w[static_cast<std::size_t>(d - 1)] = letter_[static_cast<std::size_t>(d)][i];
        i = parent_[static_cast<std::size_t>(d)][i];
    }
    return w;
}

FinVector QuadraticAlgebra::appendLetter(int k, const FinVector& x, int a) const {
    extendTo(k + 1);
    const std::vector<FinVector>* red;
    {
        std::lock_guard<std::mutex> lock(mu_);
        red = &red_[static_cast<std::size_t>(k + 1)];
    }
    if (x.nnz() == 1) {
        const auto& [y, c] = x.entries().front();
        FinVector r = (*red)[y * n_ + static_cast<std::size_t>(a)];
        r.scale(c);
        return r;
    }
    VectorBuilder b;
    for (const auto& [y, c] : x.entries()) b.addScaled((*red)[y * n_ + static_cast<std::size_t>(a)], c);
    return b.build();
}

FinVector QuadraticAlgebra::appendWord(int k, FinVector x, const std::vector<int>& w) const {
    for (int a : w) x = appendLetter(k++, x, a);
    return x;
}

FinVector QuadraticAlgebra::appendTensor(int k, const FinVector& x, int m, const FinVector& t) const {
    if (m == 0) {
        FinVector r = x;
        r.scale(t.get(0));
        return r;
    }
    // group by the first letter to share prefixes
    const std::size_t block = tensorPower(n_, m - 1);
    std::vector<std::vector<FinVector::Entry>> parts(n_);
    for (const auto& [idx, c] : t.entries()) parts[idx / block].emplace_back(static_cast<Index>(idx % block), c);
    VectorBuilder b;
    for (std::size_t a = 0; a < n_; ++a) {
        if (parts[a].empty()) continue;
        FinVector head = appendLetter(k, x, static_cast<int>(a));
        b.addScaled(appendTensor(k + 1, head, m - 1, FinVector::fromEntries(std::move(parts[a]))), Scalar(1));
    }
    return b.build();
}

FinVector QuadraticAlgebra::multiply(int p, const FinVector& x, int q, const FinVector& y) const {
    VectorBuilder b;
    for (const auto& [i, c] : y.entries()) b.addScaled(appendWord(p, x, word(q, i)), c);
    return b.build();
}

std::vector<int> reducedWord(std::vector<int> p) {
    std::vector<int> letters;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (p[i] > p[i + 1]) {
                std::swap(p[i], p[i + 1]);
                letters.push_back(static_cast<int>(i));
                changed = true;
            }
    }
    return letters;
}

LinearMap braidAt(const LinearMap& braid, std::size_t m, int k, int pos) {
    const std::size_t mm = m * m, total = tensorPower(m, k), right = tensorPower(m, k - pos - 2);
    LinearMap out(total, total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const std::size_t lo = idx % right, mid = (idx / right) % mm, hi = idx / (right * mm);
        std::vector<FinVector::Entry> e;
        for (const auto& [r, c] : braid.column(mid).entries())
            e.emplace_back(static_cast<Index>((hi * mm + r) * right + lo), c);
        out.setColumn(idx, FinVector::fromEntries(std::move(e)));
    }
    return out;
}

LinearMap permutationOperator(const LinearMap& braid, std::size_t m, const std::vector<int>& p) {
    const int k = static_cast<int>(p.size());
    LinearMap op = LinearMap::identity(tensorPower(m, k));
    // letters are found rightmost first, so the first letter acts first
    for (int s : reducedWord(p)) op = braidAt(braid, m, k, s).compose(op);
    return op;
}

LinearMap shuffleSum(const LinearMap& braid, std::size_t m, int k, int l) {
    const int n = k + l;
    LinearMap sum(tensorPower(m, n), tensorPower(m, n));
    std::vector<bool> chosen(static_cast<std::size_t>(n), false);
    std::fill(chosen.begin(), chosen.begin() + k, true);
    // prev_permutation walks every k-subset exactly once
    do {
        std::vector<int> q;
        for (int i = 0; i < n; ++i)
            if (chosen[static_cast<std::size_t>(i)]) q.push_back(i);
        for (int i = 0; i < n; ++i)
            if (!chosen[static_cast<std::size_t>(i)]) q.push_back(i);
        // the operator is indexed by the inverse of the shuffle
        std::vector<int> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(q[static_cast<std::size_t>(i)])] = i;
        const bool odd = reducedWord(p).size() % 2 == 1;
        sum = sum + permutationOperator(braid, m, p).scaled(Scalar(odd ? -1 : 1));
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
    return sum;
}

LinearMap antisymmetrizer(const LinearMap& braid, std::size_t m, int n) {
    if (n <= 0) return LinearMap::identity(1);
    LinearMap a = LinearMap::identity(m);
    for (int k = 2; k <= n; ++k) a = a.tensor(LinearMap::identity(m)).compose(shuffleSum(braid, m, k - 1, 1));
    return a;
}

LinearMap antisymmetrizerDirect(const LinearMap& braid, std::size_t m, int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    LinearMap sum(tensorPower(m, n), tensorPower(m, n));
    do {
        const bool odd = reducedWord(p).size() % 2 == 1;
        sum = sum + permutationOperator(braid, m, p).scaled(Scalar(odd ? -1 : 1));
    } while (std::next_permutation(p.begin(), p.end()));
    return sum;
}

std::string kindName(CalculusKind k) { return k == CalculusKind::Vee ? "vee" : "wedge"; }

FinVector tensorAlgebraDifferential(const Calculus& c, int k, std::size_t index) {
    const std::size_t n = c.dim();
    const auto digits = tensorDigits(index, n, k);
    VectorBuilder b;
    for (int t = 0; t < k; ++t) {
        const std::size_t right = tensorPower(n, k - t - 1);
        const std::size_t prefix = index / (right * n), suffix = index % right;
        const Scalar sign(t % 2 == 0 ? 1 : -1);
        const FinVector dTheta = c.tensorDifferential(static_cast<std::size_t>(digits[static_cast<std::size_t>(t)]));
        for (const auto& [ab, s] : dTheta.entries())
            b.add(static_cast<Index>((prefix * n * n + ab) * right + suffix), sign * s);
    }
    return b.build();
}

Report antisymmetrizerChecks(const LinearMap& braid, std::size_t m, int maxN) {
    Report r;
    std::vector<LinearMap> A(maxN + 1);
    for (int n = 1; n <= maxN; ++n) A[n] = antisymmetrizer(braid, m, n);
    for (int k = 1; k < maxN; ++k)
        for (int l = 1; k + l <= maxN; ++l) {
            const LinearMap rhs = A[k].tensor(A[l]).compose(shuffleSum(braid, m, k, l));
            r.add("factorization-" + std::to_string(k) + "-" + std::to_string(l), A[k + l] == rhs);
        }
    for (int n = 1; n <= std::min(maxN, 3); ++n)
        r.add("permutation-sum-" + std::to_string(n), A[n] == antisymmetrizerDirect(braid, m, n));
    return r;
}

std::vector<std::size_t> exteriorDims(const Calculus& c, int maxDegree) {
    std::vector<std::size_t> dims = {1};
    for (int k = 1; k <= maxDegree; ++k) dims.push_back(rank(antisymmetrizer(c.sigma(), c.dim(), k)));
    return dims;
}

QuadraticAlgebra envelopeAlgebra(const Calculus& c) {
    if (!c.wedgeSpace()) throw std::invalid_argument("envelope needs S^wedge2 data (ideal or wedge generators)");
    return QuadraticAlgebra(c.dim(), *c.wedgeSpace());
}

FinVector envelopeDifferential(const Calculus& c, const QuadraticAlgebra& env, int k, std::size_t i) {
    const auto w = env.word(k, i);
    VectorBuilder b;
    for (int t = 0; t < k; ++t) {
        std::vector<int> prefix(w.begin(), w.begin() + t), suffix(w.begin() + t + 1, w.end());
        FinVector x = env.fromWord(prefix);
        x = env.appendTensor(t, x, 2, c.tensorDifferential(static_cast<std::size_t>(w[static_cast<std::size_t>(t)])));
        x = env.appendWord(t + 2, x, suffix);
        b.addScaled(x, Scalar(t % 2 == 0 ? 1 : -1));
    }
    return b.build();
}

GradedModel envelopeModel(const Calculus& c, int maxDegree) {
    QuadraticAlgebra env = envelopeAlgebra(c);
    GradedModel m;
    m.kind = CalculusKind::Wedge;
    for (int k = 0; k <= maxDegree; ++k) m.dims.push_back(env.dim(k));
    for (int k = 0; k < maxDegree; ++k) {
        LinearMap d(m.dims[static_cast<std::size_t>(k)], m.dims[static_cast<std::size_t>(k + 1)]);
        for (std::size_t i = 0; i < m.dims[static_cast<std::size_t>(k)]; ++i) d.setColumn(i, envelopeDifferential(c, env, k, i));
        m.differential.push_back(std::move(d));
    }
    return m;
}

namespace {

// Gamma^(x)k / K with K given by a spanning set; coordinates on the non-pivot indices.
struct QuotientSlice {
    Echelon kernel;
    std::vector<Index> basis;
    std::vector<Index> position;

    QuotientSlice(std::size_t ambient, const std::vector<FinVector>& span) : position(ambient, 0) {
        for (const auto& v : span) kernel.insert(v);
        for (Index i = 0; i < ambient; ++i)
            if (!kernel.isPivot(i)) {
                position[i] = static_cast<Index>(basis.size());
                basis.push_back(i);
            }
    }
    FinVector coords(const FinVector& x) const {
        std::vector<FinVector::Entry> out;
        const FinVector r = kernel.reduce(x);
        for (const auto& [i, c] : r.entries()) out.emplace_back(position[i], c);
        return FinVector::fromEntries(std::move(out));
    }
};

}  // namespace

GradedModel veeModel(const Calculus& c, int maxDegree) {
    const std::size_t n = c.dim();
    std::vector<QuotientSlice> slices;
    for (int k = 0; k <= maxDegree; ++k) {
        std::vector<FinVector> ker;
        if (k >= 2) ker = kernelBasis(antisymmetrizer(c.sigma(), n, k));
        slices.emplace_back(tensorPower(n, k), ker);
    }
    GradedModel m;
    m.kind = CalculusKind::Vee;
    for (const auto& s : slices) m.dims.push_back(s.basis.size());
    for (int k = 0; k < maxDegree; ++k) {
        const auto& src = slices[static_cast<std::size_t>(k)];
        LinearMap d(src.basis.size(), m.dims[static_cast<std::size_t>(k + 1)]);
        for (std::size_t i = 0; i < src.basis.size(); ++i)
            d.setColumn(i, k == 0 ? FinVector() : slices[static_cast<std::size_t>(k + 1)].coords(tensorAlgebraDifferential(c, k, src.basis[i])));
        m.differential.push_back(std::move(d));
    }
    return m;
}

std::vector<std::size_t> groupCohomology(const GradedModel& m) {
    std::vector<std::size_t> h;
    for (std::size_t k = 0; k < m.differential.size(); ++k) {
        LinearMap dIn = k == 0 ? LinearMap(0, m.dims[0]) : m.differential[k - 1];
        h.push_back(cohomologyRank(dIn, m.differential[k]));
    }
    return h;
}

}  // namespace qchar
