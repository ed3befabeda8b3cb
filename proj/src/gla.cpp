#include "qchar/gla.hpp"

#include <algorithm>
#include <stdexcept>

namespace qchar {

FinVector FinVector::unit(Index i, Scalar c) {
    FinVector v;
    if (!c.isZero()) v.e_.emplace_back(i, std::move(c));
    return v;
}

FinVector FinVector::fromEntries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    FinVector v;
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i + 1;
        Scalar c = std::move(entries[i].second);
        while (j < entries.size() && entries[j].first == entries[i].first) c += entries[j++].second;
        if (!c.isZero()) v.e_.emplace_back(entries[i].first, std::move(c));
        i = j;
    }
    return v;
}

FinVector FinVector::fromDense(const std::vector<Scalar>& dense) {
    FinVector v;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (!dense[i].isZero()) v.e_.emplace_back(static_cast<Index>(i), dense[i]);
    return v;
}

const Scalar* FinVector::find(Index i) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), i, [](const Entry& e, Index k) { return e.first < k; });
    if (it != e_.end() && it->first == i) return &it->second;
    return nullptr;
}

Scalar FinVector::get(Index i) const {
    const Scalar* s = find(i);
    return s ? *s : Scalar();
}

void FinVector::addScaled(const FinVector& o, const Scalar& c) {
    if (c.isZero() || o.e_.empty()) return;
    std::vector<Entry> r;
    r.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    const bool unitCoef = c.isOne();
    while (i < e_.size() || j < o.e_.size()) {
        if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
            r.push_back(std::move(e_[i++]));
        } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
            r.emplace_back(o.e_[j].first, unitCoef ? o.e_[j].second : o.e_[j].second * c);
            ++j;
        } else {
            Scalar s = std::move(e_[i].second);
            s += unitCoef ? o.e_[j].second : o.e_[j].second * c;
            if (!s.isZero()) r.emplace_back(e_[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    e_ = std::move(r);
}

void FinVector::scale(const Scalar& c) {
    if (c.isZero()) {
        e_.clear();
        return;
    }
    if (c.isOne()) return;
    for (auto& e : e_) e.second *= c;
}

bool FinVector::operator==(const FinVector& o) const {
    if (e_.size() != o.e_.size()) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i].first != o.e_[i].first || e_[i].second != o.e_[i].second) return false;
    return true;
}

FinVector FinVector::conj() const {
    FinVector v = *this;
    for (auto& e : v.e_) e.second = e.second.conj();
    return v;
}

FinVector FinVector::shifted(Index offset) const {
    FinVector v = *this;
    for (auto& e : v.e_) e.first += offset;
    return v;
}

void VectorBuilder::add(Index i, const Scalar& c) {
    if (c.isZero()) return;
    auto it = acc_.find(i);
    if (it == acc_.end()) acc_.emplace(i, c);
    else it->second += c;
}

void VectorBuilder::addScaled(const FinVector& v, const Scalar& c) {
    if (c.isZero()) return;
    for (const auto& [i, x] : v.entries()) add(i, c.isOne() ? x : x * c);
}

FinVector VectorBuilder::build() {
    std::vector<FinVector::Entry> e;
    e.reserve(acc_.size());
    for (auto& [i, c] : acc_)
        if (!c.isZero()) e.emplace_back(i, std::move(c));
    acc_.clear();
    return FinVector::fromEntries(std::move(e));
}

LinearMap::LinearMap(std::size_t domainDim, std::size_t codomainDim) : codim_(codomainDim), cols_(domainDim) {}

LinearMap LinearMap::identity(std::size_t n) {
    LinearMap m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.cols_[i] = FinVector::unit(static_cast<Index>(i));
    return m;
}

LinearMap LinearMap::fromColumns(std::size_t codomainDim, std::vector<FinVector> cols) {
    LinearMap m;
    m.codim_ = codomainDim;
    m.cols_ = std::move(cols);
    return m;
}

FinVector LinearMap::apply(const FinVector& v) const {
    if (v.nnz() == 1) {
        const auto& [i, c] = v.entries().front();
        FinVector r = cols_.at(i);
        r.scale(c);
        return r;
    }
    VectorBuilder b;
    for (const auto& [i, c] : v.entries()) b.addScaled(cols_.at(i), c);
    return b.build();
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
    if (inner.codim_ != domainDim()) throw std::invalid_argument("dimension mismatch in composition");
    LinearMap r(inner.domainDim(), codim_);
    for (std::size_t j = 0; j < inner.domainDim(); ++j) r.cols_[j] = apply(inner.cols_[j]);
    return r;
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
    LinearMap r = *this;
    for (std::size_t j = 0; j < cols_.size(); ++j) r.cols_[j] += o.cols_[j];
    return r;
}

LinearMap LinearMap::operator-(const LinearMap& o) const {
    LinearMap r = *this;
    for (std::size_t j = 0; j < cols_.size(); ++j) r.cols_[j] -= o.cols_[j];
    return r;
}

LinearMap LinearMap::scaled(const Scalar& c) const {
    LinearMap r = *this;
    for (auto& col : r.cols_) col.scale(c);
    return r;
}

LinearMap LinearMap::tensor(const LinearMap& o) const {
    LinearMap r(domainDim() * o.domainDim(), codim_ * o.codim_);
    for (std::size_t i = 0; i < domainDim(); ++i)
        for (std::size_t j = 0; j < o.domainDim(); ++j) {
            std::vector<FinVector::Entry> e;
            for (const auto& [a, x] : cols_[i].entries())
                for (const auto& [b, y] : o.cols_[j].entries())
                    e.emplace_back(static_cast<Index>(a * o.codim_ + b), x * y);
            r.cols_[i * o.domainDim() + j] = FinVector::fromEntries(std::move(e));
        }
    return r;
}

bool LinearMap::isZero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const FinVector& v) { return v.isZero(); });
}

bool LinearMap::operator==(const LinearMap& o) const { return codim_ == o.codim_ && cols_ == o.cols_; }

FinVector Echelon::reduce(FinVector v) const {
    if (rows_.empty()) return v;
    std::vector<std::pair<std::size_t, Scalar>> hits;
    for (const auto& [i, c] : v.entries()) {
        auto it = rowOf_.find(i);
        if (it != rowOf_.end()) hits.emplace_back(it->second, c);
    }
    if (hits.empty()) return v;
    if (hits.size() == 1) {
        v.addScaled(rows_[hits[0].first], -hits[0].second);
        return v;
    }
    VectorBuilder b;
    b.addScaled(v, Scalar(1));
    for (const auto& [r, c] : hits) b.addScaled(rows_[r], -c);
    return b.build();
}

bool Echelon::insert(const FinVector& v) {
    FinVector r = reduce(v);
    if (r.isZero()) return false;
    const FinVector::Entry* best = nullptr;
    int bestDeg = 0;
    for (const auto& e : r.entries()) {
        if (e.first >= limit_) break;
        int d = e.second.numeratorDegree();
        if (!best || d < bestDeg) {
            best = &e;
            bestDeg = d;
        }
    }
    if (!best) return false;
    const Index p = best->first;
    r.scale(best->second.inverse());
    for (auto& row : rows_) {
        const Scalar* c = row.find(p);
        if (c) row.addScaled(r, -Scalar(*c));
    }
    rowOf_.emplace(p, rows_.size());
    pivots_.push_back(p);
    rows_.push_back(std::move(r));
    return true;
}

RowReduction rowReduce(const std::vector<FinVector>& vectors) {
    Echelon e;
    for (const auto& v : vectors) e.insert(v);
    RowReduction out;
    out.basis = e.rows();
    out.rank = e.rank();
    return out;
}

std::vector<FinVector> kernelBasis(const LinearMap& f) {
    const Index m = static_cast<Index>(f.codomainDim());
    Echelon e(m);
    std::vector<FinVector> kernel;
    for (std::size_t j = 0; j < f.domainDim(); ++j) {
        FinVector aug = f.column(j);
        aug.addScaled(FinVector::unit(static_cast<Index>(m + j)), Scalar(1));
        FinVector r = e.reduce(aug);
        if (!r.entries().empty() && r.entries().front().first < m) {
            e.insert(r);
        } else {
            std::vector<FinVector::Entry> k;
            for (const auto& [i, c] : r.entries()) k.emplace_back(i - m, c);
            kernel.push_back(FinVector::fromEntries(std::move(k)));
        }
    }
    return kernel;
}

std::size_t rank(const LinearMap& f) {
    Echelon e;
    for (std::size_t j = 0; j < f.domainDim(); ++j) e.insert(f.column(j));
    return e.rank();
}

std::size_t cohomologyRank(const LinearMap& dIn, const LinearMap& dOut) {
    if (dIn.codomainDim() != dOut.domainDim()) throw std::invalid_argument("complex dimensions do not chain");
    if (!dOut.compose(dIn).isZero()) throw std::logic_error("inconsistent complex: dOut o dIn != 0");
    return dOut.domainDim() - rank(dOut) - rank(dIn);
}

AffineSolution solveAffine(std::size_t unknowns, const std::vector<std::pair<FinVector, Scalar>>& equations) {
    const Index n = static_cast<Index>(unknowns);
    Echelon e(n);
    AffineSolution sol;
    for (const auto& [a, b] : equations) {
        FinVector row = a;
        row.addScaled(FinVector::unit(n), b);
        FinVector r = e.reduce(row);
        if (r.isZero()) continue;
        if (r.entries().front().first >= n) return sol;
        e.insert(r);
    }
    sol.consistent = true;
    std::vector<FinVector::Entry> part;
    for (std::size_t k = 0; k < e.rank(); ++k) {
        const Scalar* b = e.rows()[k].find(n);
        if (b) part.emplace_back(e.pivot(k), *b);
    }
    sol.particular = FinVector::fromEntries(std::move(part));
    std::vector<std::vector<FinVector::Entry>> hom(unknowns);
    for (Index f = 0; f < n; ++f)
        if (!e.isPivot(f)) hom[f].emplace_back(f, Scalar(1));
    for (std::size_t k = 0; k < e.rank(); ++k)
        for (const auto& [i, c] : e.rows()[k].entries())
            if (i < n && i != e.pivot(k)) hom[i].emplace_back(e.pivot(k), -c);
    for (Index f = 0; f < n; ++f)
        if (!e.isPivot(f)) sol.homogeneous.push_back(FinVector::fromEntries(std::move(hom[f])));
    return sol;
}

}  // namespace qchar
