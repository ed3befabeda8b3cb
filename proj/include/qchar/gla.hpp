#pragma once

#include "qchar/scalar.hpp"

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qchar {

using Index = std::uint32_t;

// Sparse coordinate vector. Entries are sorted by index and never zero.
class FinVector {
public:
    using Entry = std::pair<Index, Scalar>;

    FinVector() = default;
    static FinVector unit(Index i, Scalar c = Scalar(1));
    static FinVector fromEntries(std::vector<Entry> entries);
    static FinVector fromDense(const std::vector<Scalar>& dense);

    bool isZero() const { return e_.empty(); }
    std::size_t nnz() const { return e_.size(); }
    const std::vector<Entry>& entries() const { return e_; }
    const Scalar* find(Index i) const;
    Scalar get(Index i) const;

    // this += c * o
    void addScaled(const FinVector& o, const Scalar& c);
    void scale(const Scalar& c);
    FinVector& operator+=(const FinVector& o) {
        addScaled(o, Scalar(1));
        return *this;
    }
    FinVector& operator-=(const FinVector& o) {
        addScaled(o, Scalar(-1));
        return *this;
    }
    friend FinVector operator+(FinVector a, const FinVector& b) { return a += b; }
    friend FinVector operator-(FinVector a, const FinVector& b) { return a -= b; }
    friend FinVector operator*(const Scalar& c, FinVector v) {
        v.scale(c);
        return v;
    }
    bool operator==(const FinVector& o) const;
    bool operator!=(const FinVector& o) const { return !(*this == o); }

    // Coordinate-wise conjugation of the coefficients.
    FinVector conj() const;
    // Re-index every entry i to offset + i.
    FinVector shifted(Index offset) const;

private:
    std::vector<Entry> e_;
};

// Accumulates a sum of sparse terms and produces a FinVector.
class VectorBuilder {
public:
    void add(Index i, const Scalar& c);
    void addScaled(const FinVector& v, const Scalar& c);
    FinVector build();
    bool empty() const { return acc_.empty(); }

private:
    std::unordered_map<Index, Scalar> acc_;
};

class LinearMap {
public:
    LinearMap() = default;
    LinearMap(std::size_t domainDim, std::size_t codomainDim);
    static LinearMap identity(std::size_t n);
    static LinearMap fromColumns(std::size_t codomainDim, std::vector<FinVector> cols);

    std::size_t domainDim() const { return cols_.size(); }
    std::size_t codomainDim() const { return codim_; }
    const FinVector& column(std::size_t j) const { return cols_[j]; }
    void setColumn(std::size_t j, FinVector v) { cols_[j] = std::move(v); }

    FinVector apply(const FinVector& v) const;
    // this after inner
    LinearMap compose(const LinearMap& inner) const;
    LinearMap operator+(const LinearMap& o) const;
    LinearMap operator-(const LinearMap& o) const;
    LinearMap scaled(const Scalar& c) const;
    // Kronecker product: (this (x) o)(e_i (x) f_j) = this(e_i) (x) o(f_j), index i*dim_o + j.
    LinearMap tensor(const LinearMap& o) const;
    bool isZero() const;
    bool operator==(const LinearMap& o) const;

private:
    std::size_t codim_ = 0;
    std::vector<FinVector> cols_;
};

// Reduced row echelon basis of a growing subspace. Pivots are chosen among
// coordinates below pivotLimit: smallest numerator degree, then smallest index.
class Echelon {
public:
    explicit Echelon(Index pivotLimit = std::numeric_limits<Index>::max()) : limit_(pivotLimit) {}

    FinVector reduce(FinVector v) const;
    // Returns true when v enlarged the span.
    bool insert(const FinVector& v);
    bool contains(const FinVector& v) const { return reduce(v).isZero(); }

    std::size_t rank() const { return rows_.size(); }
    const std::vector<FinVector>& rows() const { return rows_; }
    Index pivot(std::size_t row) const { return pivots_[row]; }
    bool isPivot(Index i) const { return rowOf_.count(i) != 0; }
    std::size_t rowOfPivot(Index i) const { return rowOf_.at(i); }

private:
    Index limit_;
    std::vector<FinVector> rows_;
    std::vector<Index> pivots_;
    std::unordered_map<Index, std::size_t> rowOf_;
};

struct RowReduction {
    std::vector<FinVector> basis;
    std::size_t rank = 0;
};

RowReduction rowReduce(const std::vector<FinVector>& vectors);
std::vector<FinVector> kernelBasis(const LinearMap& f);
std::size_t rank(const LinearMap& f);
// dim ker(dOut) - rank(dIn); throws std::logic_error when dOut o dIn != 0.
std::size_t cohomologyRank(const LinearMap& dIn, const LinearMap& dOut);

// Solution of the affine system sum_j a_ij x_j = b_i.
struct AffineSolution {
    bool consistent = false;
    FinVector particular;             // free variables set to zero
    std::vector<FinVector> homogeneous;  // basis of the solution space of the homogeneous part
};
// Each equation is given as a coefficient vector over the unknowns and a right hand side.
AffineSolution solveAffine(std::size_t unknowns, const std::vector<std::pair<FinVector, Scalar>>& equations);

}  // namespace qchar
