#ifndef MAGHOM_SPARSE_MATRIX_HPP
#define MAGHOM_SPARSE_MATRIX_HPP

#include "maghom/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace maghom {

struct MatrixEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Integer value;

    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Dense row-major integer matrix. Only used for small matrices (transforms,
/// test oracles); boundary operators are kept sparse.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    DenseMatrix operator*(const DenseMatrix& rhs) const
    {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("dense matrix product: dimension mismatch");
        DenseMatrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Integer& a = (*this)(i, k);
                if (a == 0)
                    continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[target] += factor * row[source]
    void add_row(std::size_t target, std::size_t source, const Integer& factor)
    {
        if (factor == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(source, j) != 0)
                (*this)(target, j) += factor * (*this)(source, j);
    }

    /// col[target] += factor * col[source]
    void add_col(std::size_t target, std::size_t source, const Integer& factor)
    {
        if (factor == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, source) != 0)
                (*this)(i, target) += factor * (*this)(i, source);
    }

    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(r, j) = -(*this)(r, j);
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Integer matrix in coordinate form. Entries are unique, nonzero and sorted
/// by (column, row).
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    /// Builds a matrix from unordered triplets; duplicates are summed and zeros dropped.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<MatrixEntry> triplets)
    {
        for (const auto& e : triplets)
            if (e.row >= rows || e.col >= cols)
                throw std::out_of_range("sparse matrix entry outside bounds");
        std::sort(triplets.begin(), triplets.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
            return std::tie(a.col, a.row) < std::tie(b.col, b.row);
        });
        SparseMatrix m(rows, cols);
        for (auto& e : triplets) {
            if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
                m.entries_.back().value += e.value;
                if (m.entries_.back().value == 0)
                    m.entries_.pop_back();
            } else if (e.value != 0) {
                m.entries_.push_back(std::move(e));
            }
        }
        return m;
    }

    static SparseMatrix from_dense(const DenseMatrix& d)
    {
        std::vector<MatrixEntry> t;
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (d(i, j) != 0)
                    t.push_back({i, j, d(i, j)});
        return from_triplets(d.rows(), d.cols(), std::move(t));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return entries_.size(); }
    bool is_zero() const noexcept { return entries_.empty(); }
    const std::vector<MatrixEntry>& entries() const noexcept { return entries_; }

    Integer at(std::size_t r, std::size_t c) const
    {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{c, r},
                                   [](const MatrixEntry& e, const std::pair<std::size_t, std::size_t>& key) {
                                       return std::tie(e.col, e.row) < std::tie(key.first, key.second);
                                   });
        if (it != entries_.end() && it->row == r && it->col == c)
            return it->value;
        return 0;
    }

    DenseMatrix to_dense() const
    {
        DenseMatrix d(rows_, cols_);
        for (const auto& e : entries_)
            d(e.row, e.col) = e.value;
        return d;
    }

    SparseMatrix transpose() const
    {
        std::vector<MatrixEntry> t;
        t.reserve(entries_.size());
        for (const auto& e : entries_)
            t.push_back({e.col, e.row, e.value});
        return from_triplets(cols_, rows_, std::move(t));
    }

    SparseMatrix operator*(const SparseMatrix& rhs) const
    {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("sparse matrix product: dimension mismatch");
        std::vector<std::size_t> start(cols_ + 1, 0);
        for (const auto& e : entries_)
            ++start[e.col + 1];
        for (std::size_t c = 0; c < cols_; ++c)
            start[c + 1] += start[c];

        std::vector<MatrixEntry> out;
        std::map<std::size_t, Integer> acc;
        std::size_t i = 0;
        const auto& re = rhs.entries_;
        while (i < re.size()) {
            std::size_t col = re[i].col;
            acc.clear();
            for (; i < re.size() && re[i].col == col; ++i)
                for (std::size_t k = start[re[i].row]; k < start[re[i].row + 1]; ++k)
                    acc[entries_[k].row] += entries_[k].value * re[i].value;
            for (auto& [row, v] : acc)
                if (v != 0)
                    out.push_back({row, col, std::move(v)});
        }
        return from_triplets(rows_, rhs.cols_, std::move(out));
    }

    SparseMatrix operator-() const
    {
        SparseMatrix m = *this;
        for (auto& e : m.entries_)
            e.value = -e.value;
        return m;
    }

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<MatrixEntry> entries_;
};

} // namespace maghom

#endif // MAGHOM_SPARSE_MATRIX_HPP
