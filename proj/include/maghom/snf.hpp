#ifndef MAGHOM_SNF_HPP
#define MAGHOM_SNF_HPP

#include "maghom/sparse_matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace maghom {

struct SNFResult {
    /// Nonzero invariant factors d_1 | d_2 | ... (units included), all positive.
    std::vector<Integer> factors;
    /// Unimodular U (rows x rows) and V (cols x cols) with U * M * V = diag(factors).
    std::optional<DenseMatrix> left;
    std::optional<DenseMatrix> right;

    std::size_t rank() const noexcept { return factors.size(); }
};

/// Turns the diagonal of any diagonal matrix into its invariant factors:
/// repeatedly replaces (a, b) by (gcd, lcm). Zeros are dropped.
inline std::vector<Integer> canonical_invariant_factors(std::vector<Integer> diag)
{
    std::size_t units = 0;
    std::vector<Integer> rest;
    for (auto& d : diag) {
        Integer a = abs_value(d);
        if (a == 0)
            continue;
        if (a == 1)
            ++units;
        else
            rest.push_back(std::move(a));
    }
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            if (rest[j] % rest[i] == 0)
                continue;
            Integer g = boost::multiprecision::gcd(rest[i], rest[j]);
            Integer l = rest[i] / g * rest[j];
            rest[i] = std::move(g);
            rest[j] = std::move(l);
        }
    std::vector<Integer> out(units, Integer(1));
    for (auto& r : rest)
        if (r == 1)
            out.insert(out.begin(), Integer(1));
        else
            out.push_back(std::move(r));
    return out;
}

namespace detail {

/// In-place sparse elimination of one connected block; appends the diagonal
/// entries it produces. Rows are maps col -> value, `cols` tracks support.
class SparseEliminator {
public:
    SparseEliminator(std::size_t nrows, std::size_t ncols) : rows_(nrows), cols_(ncols) {}

    void set(std::size_t r, std::size_t c, const Integer& v)
    {
        rows_[r][c] = v;
        cols_[c].insert(r);
    }

    void run(std::vector<Integer>& diagonal)
    {
        while (true) {
            auto pivot = find_pivot();
            if (!pivot)
                return;
            auto [r, c] = *pivot;
            while (true) {
                Integer p = rows_[r].at(c);
                bool remainder = false;
                std::vector<std::size_t> others(cols_[c].begin(), cols_[c].end());
                for (std::size_t i : others) {
                    if (i == r)
                        continue;
                    Integer q = rows_[i].at(c) / p;
                    if (q != 0)
                        add_row(i, r, -q);
                    if (rows_[i].count(c))
                        remainder = true;
                }
                std::vector<std::size_t> row_cols;
                for (const auto& [j, v] : rows_[r])
                    if (j != c)
                        row_cols.push_back(j);
                for (std::size_t j : row_cols) {
                    Integer q = rows_[r].at(j) / p;
                    if (q != 0)
                        add_col(j, c, -q);
                    if (rows_[r].count(j))
                        remainder = true;
                }
                if (!remainder)
                    break;
                // a smaller entry appeared in the pivot row or column; move there
                auto next = find_pivot();
                r = next->first;
                c = next->second;
            }
            diagonal.push_back(abs_value(rows_[r].at(c)));
            rows_[r].clear();
            cols_[c].clear();
        }
    }

private:
    std::optional<std::pair<std::size_t, std::size_t>> find_pivot() const
    {
        std::optional<std::tuple<Integer, std::size_t, std::size_t>> best;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [c, v] : rows_[r]) {
                Integer a = abs_value(v);
                if (!best || std::tie(a, c, r) < std::tie(std::get<0>(*best), std::get<1>(*best), std::get<2>(*best)))
                    best.emplace(std::move(a), c, r);
                if (std::get<0>(*best) == 1 && std::get<1>(*best) == 0)
                    return std::pair{std::get<2>(*best), std::get<1>(*best)};
            }
        if (!best)
            return std::nullopt;
        return std::pair{std::get<2>(*best), std::get<1>(*best)};
    }

    void add_row(std::size_t target, std::size_t source, const Integer& factor)
    {
        for (const auto& [c, v] : rows_[source]) {
            auto& slot = rows_[target][c];
            slot += factor * v;
            if (slot == 0) {
                rows_[target].erase(c);
                cols_[c].erase(target);
            } else {
                cols_[c].insert(target);
            }
        }
    }

    void add_col(std::size_t target, std::size_t source, const Integer& factor)
    {
        std::vector<std::size_t> support(cols_[source].begin(), cols_[source].end());
        for (std::size_t r : support) {
            Integer delta = factor * rows_[r].at(source);
            auto& slot = rows_[r][target];
            slot += delta;
            if (slot == 0) {
                rows_[r].erase(target);
                cols_[target].erase(r);
            } else {
                cols_[target].insert(r);
            }
        }
    }

    std::vector<std::map<std::size_t, Integer>> rows_;
    std::vector<std::set<std::size_t>> cols_;
};

inline std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t x)
{
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

/// Invariant factors by sparse elimination, one connected block at a time.
inline std::vector<Integer> sparse_invariant_factors(const SparseMatrix& m)
{
    const std::size_t nr = m.rows();
    std::vector<std::size_t> parent(nr + m.cols());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (const auto& e : m.entries()) {
        auto a = uf_find(parent, e.row);
        auto b = uf_find(parent, nr + e.col);
        if (a != b)
            parent[a] = b;
    }

    struct Block {
        std::map<std::size_t, std::size_t> rows, cols;
        std::vector<const MatrixEntry*> entries;
    };
    std::map<std::size_t, Block> blocks;
    for (const auto& e : m.entries()) {
        auto& b = blocks[uf_find(parent, e.row)];
        b.rows.emplace(e.row, b.rows.size());
        b.cols.emplace(e.col, b.cols.size());
        b.entries.push_back(&e);
    }

    std::vector<Integer> diagonal;
    for (auto& [root, b] : blocks) {
        // relabel in sorted order so the column/row tie-break follows the original indices
        std::size_t k = 0;
        for (auto& [orig, local] : b.rows)
            local = k++;
        k = 0;
        for (auto& [orig, local] : b.cols)
            local = k++;
        SparseEliminator elim(b.rows.size(), b.cols.size());
        for (const auto* e : b.entries)
            elim.set(b.rows.at(e->row), b.cols.at(e->col), e->value);
        elim.run(diagonal);
    }
    return canonical_invariant_factors(std::move(diagonal));
}

/// Dense Smith normal form with transforms; D = U * M * V has a divisibility chain on its diagonal.
inline SNFResult dense_smith_with_transforms(const SparseMatrix& m)
{
    DenseMatrix d = m.to_dense();
    const std::size_t nr = d.rows();
    const std::size_t nc = d.cols();
    DenseMatrix u = DenseMatrix::identity(nr);
    DenseMatrix v = DenseMatrix::identity(nc);

    auto smallest_in = [&](std::size_t t) {
        std::optional<std::tuple<Integer, std::size_t, std::size_t>> best;
        for (std::size_t j = t; j < nc; ++j)
            for (std::size_t i = t; i < nr; ++i) {
                if (d(i, j) == 0)
                    continue;
                Integer a = abs_value(d(i, j));
                if (!best || a < std::get<0>(*best))
                    best.emplace(std::move(a), i, j);
            }
        return best;
    };

    std::vector<Integer> factors;
    for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
        auto best = smallest_in(t);
        if (!best)
            break;
        auto move_to_pivot = [&](std::size_t i, std::size_t j) {
            d.swap_rows(t, i);
            u.swap_rows(t, i);
            d.swap_cols(t, j);
            v.swap_cols(t, j);
        };
        move_to_pivot(std::get<1>(*best), std::get<2>(*best));

        while (true) {
            bool remainder = false;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (d(i, t) == 0)
                    continue;
                Integer q = d(i, t) / d(t, t);
                d.add_row(i, t, -q);
                u.add_row(i, t, -q);
                remainder = remainder || d(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (d(t, j) == 0)
                    continue;
                Integer q = d(t, j) / d(t, t);
                d.add_col(j, t, -q);
                v.add_col(j, t, -q);
                remainder = remainder || d(t, j) != 0;
            }
            if (remainder) {
                std::optional<std::tuple<Integer, std::size_t, std::size_t>> next;
                for (std::size_t j = t + 1; j < nc; ++j)
                    if (d(t, j) != 0 && (!next || abs_value(d(t, j)) < std::get<0>(*next)))
                        next.emplace(abs_value(d(t, j)), t, j);
                for (std::size_t i = t + 1; i < nr; ++i)
                    if (d(i, t) != 0 && (!next || abs_value(d(i, t)) < std::get<0>(*next)))
                        next.emplace(abs_value(d(i, t)), i, t);
                move_to_pivot(std::get<1>(*next), std::get<2>(*next));
                continue;
            }
            // the pivot must divide the remaining block
            bool fixed = false;
            for (std::size_t i = t + 1; i < nr && !fixed; ++i)
                for (std::size_t j = t + 1; j < nc && !fixed; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        fixed = true;
                    }
            if (!fixed)
                break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
        factors.push_back(d(t, t));
    }
    return SNFResult{std::move(factors), std::move(u), std::move(v)};
}

} // namespace detail

/// diag(factors) padded with zeros to the shape of the source matrix.
inline DenseMatrix snf_diagonal(const SNFResult& r, std::size_t rows, std::size_t cols)
{
    DenseMatrix d(rows, cols);
    for (std::size_t i = 0; i < r.factors.size(); ++i)
        d(i, i) = r.factors[i];
    return d;
}

/// Smith normal form over the integers. Without transforms the matrix is
/// reduced sparsely block by block; with transforms a dense reduction also
/// produces unimodular U and V with U * M * V = D.
inline SNFResult smith_normal_form(const SparseMatrix& m, bool with_transforms = false)
{
    if (with_transforms) {
        auto r = detail::dense_smith_with_transforms(m);
        if (!(*r.left * m.to_dense() * *r.right == snf_diagonal(r, m.rows(), m.cols())))
            throw std::logic_error("Smith transforms do not reproduce the diagonal");
        return r;
    }
    return SNFResult{detail::sparse_invariant_factors(m), std::nullopt, std::nullopt};
}

} // namespace maghom

#endif // MAGHOM_SNF_HPP
