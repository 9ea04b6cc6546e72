// Exact dense linear algebra kernels on Eigen matrices over a field scalar.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "preproj/fp.hpp"

namespace preproj {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

/// Deterministic RNG (splitmix64): all randomized searches flow from one seed.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
    template <class K>
    K scalar() {
        if constexpr (std::is_same_v<K, Fp>)
            return Fp::from_raw(static_cast<uint32_t>(next() % Fp::modulus()));
        else
            return K(static_cast<long long>(next() % 2001) - 1000);
    }
};

/// Reduced row echelon form in place; returns pivot columns.
template <class K>
std::vector<int> rref_inplace(Mat<K>& m) {
    std::vector<int> pivots;
    int rows = int(m.rows()), cols = int(m.cols()), r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (!m(i, c).is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r) m.row(sel).swap(m.row(r));
        K inv = m(r, c).inv();
        for (int j = c; j < cols; ++j) m(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            K f = m(i, c);
            for (int j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
int rank_of(Mat<K> m) {
    return int(rref_inplace(m).size());
}

/// Basis of the right nullspace { x : m x = 0 }, as columns.
template <class K>
Mat<K> nullspace(Mat<K> m) {
    int cols = int(m.cols());
    std::vector<int> pivots = rref_inplace(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    int free_count = cols - int(pivots.size());
    Mat<K> basis = Mat<K>::Zero(cols, free_count);
    int k = 0;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        basis(c, k) = K(1);
        for (int r = 0; r < int(pivots.size()); ++r) basis(pivots[r], k) = -m(r, c);
        ++k;
    }
    return basis;
}

/// One solution of m x = b, if consistent.
template <class K>
std::optional<Vec<K>> solve(const Mat<K>& m, const Vec<K>& b) {
    Mat<K> aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = b;
    std::vector<int> pivots = rref_inplace(aug);
    if (!pivots.empty() && pivots.back() == int(m.cols())) return std::nullopt;
    Vec<K> x = Vec<K>::Zero(m.cols());
    for (int r = 0; r < int(pivots.size()); ++r) x(pivots[r]) = aug(r, m.cols());
    return x;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
    int n = int(m.rows());
    Mat<K> aug(n, 2 * n);
    aug.leftCols(n) = m;
    aug.rightCols(n) = Mat<K>::Identity(n, n);
    std::vector<int> pivots = rref_inplace(aug);
    if (int(pivots.size()) < n || pivots.back() >= n) {
        if (int(pivots.size()) < n) return std::nullopt;
    }
    for (int c : pivots)
        if (c >= n) return std::nullopt;
    return Mat<K>(aug.rightCols(n));
}

template <class K>
bool is_invertible(const Mat<K>& m) {
    return m.rows() == m.cols() && rank_of<K>(m) == m.rows();
}

/// Incrementally maintained row space in reduced echelon form. The workhorse
/// for span closures, subspace equality and membership tests.
template <class K>
class RowSpace {
  public:
    explicit RowSpace(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return int(rows_.size()); }

    /// Reduce v against the current rows (returns the residue).
    Vec<K> reduce(Vec<K> v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            K c = v(pivot_[r]);
            if (!c.is_zero()) v -= c * rows_[r];
        }
        return v;
    }

    /// Insert v; returns true if it enlarged the space.
    bool add(Vec<K> v) {
        v = reduce(std::move(v));
        int p = -1;
        for (int i = 0; i < dim_; ++i)
            if (!v(i).is_zero()) { p = i; break; }
        if (p < 0) return false;
        v *= v(p).inv();
        for (size_t r = 0; r < rows_.size(); ++r) {
            K c = rows_[r](p);
            if (!c.is_zero()) rows_[r] -= c * v;
        }
        size_t pos = 0;
        while (pos < pivot_.size() && pivot_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivot_.insert(pivot_.begin() + pos, p);
        return true;
    }

    bool contains(const Vec<K>& v) const { return reduce(v).isZero(0); }

    Mat<K> basis() const {
        Mat<K> b(rows_.size(), dim_);
        for (size_t r = 0; r < rows_.size(); ++r) b.row(r) = rows_[r].transpose();
        return b;
    }

    friend bool operator==(const RowSpace& a, const RowSpace& b) {
        if (a.dim_ != b.dim_ || a.pivot_ != b.pivot_) return false;
        for (size_t r = 0; r < a.rows_.size(); ++r)
            if (a.rows_[r] != b.rows_[r]) return false;
        return true;
    }

    const std::vector<int>& pivots() const { return pivot_; }
    const std::vector<Vec<K>>& rows() const { return rows_; }

  private:
    int dim_;
    std::vector<Vec<K>> rows_;
    std::vector<int> pivot_;
};

/// Vectorize a matrix column-major (for intertwiner systems).
template <class K>
Vec<K> vec_of(const Mat<K>& m) {
    Vec<K> v(m.size());
    int k = 0;
    for (int c = 0; c < m.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r) v(k++) = m(r, c);
    return v;
}

template <class K>
Mat<K> mat_of(const Vec<K>& v, int rows, int cols) {
    Mat<K> m(rows, cols);
    int k = 0;
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = v(k++);
    return m;
}

}  // namespace preproj
