#ifndef MAGHOM_CHAIN_COMPLEX_HPP
#define MAGHOM_CHAIN_COMPLEX_HPP

#include "maghom/errors.hpp"
#include "maghom/sparse_matrix.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maghom {

/// Bounded chain complex of finitely generated free abelian groups with
/// labeled bases. Degree n holds `basis(n)`; `boundary(n)` maps degree n to
/// degree n - 1 (rows index the basis of degree n - 1).
class ChainComplexZ {
public:
    ChainComplexZ() = default;

    ChainComplexZ(int min_degree, std::vector<std::vector<std::string>> bases, std::vector<SparseMatrix> boundaries)
        : min_degree_(min_degree)
        , bases_(std::move(bases))
        , boundaries_(std::move(boundaries))
    {
        if (bases_.size() != boundaries_.size())
            throw std::invalid_argument("chain complex: one boundary matrix per degree required");
        for (std::size_t k = 0; k < bases_.size(); ++k) {
            std::size_t below = k == 0 ? 0 : bases_[k - 1].size();
            if (boundaries_[k].cols() != bases_[k].size() || boundaries_[k].rows() != below)
                throw std::invalid_argument("chain complex: boundary dimensions do not match bases in degree "
                                            + std::to_string(min_degree_ + static_cast<int>(k)));
        }
    }

    int min_degree() const noexcept { return min_degree_; }
    int max_degree() const noexcept { return min_degree_ + static_cast<int>(bases_.size()) - 1; }
    bool in_range(int n) const noexcept { return n >= min_degree_ && n <= max_degree(); }

    std::size_t rank(int n) const noexcept { return in_range(n) ? bases_[slot(n)].size() : 0; }

    const std::vector<std::string>& basis(int n) const
    {
        if (!in_range(n))
            throw DegreeOutOfRange(n, min_degree_, max_degree());
        return bases_[slot(n)];
    }

    /// Boundary C_n -> C_{n-1}; a zero matrix of the right shape outside the stored range.
    SparseMatrix boundary(int n) const
    {
        if (in_range(n))
            return boundaries_[slot(n)];
        return SparseMatrix(rank(n - 1), rank(n));
    }

    const SparseMatrix& stored_boundary(int n) const
    {
        if (!in_range(n))
            throw DegreeOutOfRange(n, min_degree_, max_degree());
        return boundaries_[slot(n)];
    }

    std::size_t total_rank() const noexcept
    {
        std::size_t s = 0;
        for (const auto& b : bases_)
            s += b.size();
        return s;
    }

private:
    std::size_t slot(int n) const noexcept { return static_cast<std::size_t>(n - min_degree_); }

    int min_degree_ = 0;
    std::vector<std::vector<std::string>> bases_;
    std::vector<SparseMatrix> boundaries_;
};

/// Checks matrix shapes against adjacent bases and that consecutive boundaries compose to zero.
inline bool verify_complex(const ChainComplexZ& c)
{
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
        const auto& d = c.stored_boundary(n);
        if (d.cols() != c.rank(n) || d.rows() != c.rank(n - 1))
            return false;
        if (n == c.min_degree() && !d.is_zero())
            return false;
        if (n > c.min_degree() && !(c.stored_boundary(n - 1) * d).is_zero())
            return false;
    }
    return true;
}

/// Regrades so that degree n of the result is degree n - k of `c`.
inline ChainComplexZ shift(const ChainComplexZ& c, int k)
{
    std::vector<std::vector<std::string>> bases;
    std::vector<SparseMatrix> bds;
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
        bases.push_back(c.basis(n));
        bds.push_back(c.stored_boundary(n));
    }
    return ChainComplexZ(c.min_degree() + k, std::move(bases), std::move(bds));
}

namespace detail {

inline int parity_sign(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

struct TensorCell {
    std::vector<int> degrees;
    std::vector<std::size_t> indices;

    auto operator<=>(const TensorCell&) const = default;
};

inline void tensor_degree_tuples(std::span<const ChainComplexZ> factors, std::size_t h, int remaining,
                                 std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (h == factors.size()) {
        if (remaining == 0)
            out.push_back(cur);
        return;
    }
    for (int d = factors[h].min_degree(); d <= factors[h].max_degree(); ++d) {
        if (factors[h].rank(d) == 0)
            continue;
        cur.push_back(d);
        tensor_degree_tuples(factors, h + 1, remaining - d, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

/// Total complex of the tensor product of `factors`. The h-th slot's boundary
/// carries the sign (-1)^(i_1 + ... + i_{h-1}). Basis cells of a degree are
/// ordered lexicographically by degree tuple, then by index tuple; labels
/// are bracketed tuples of the factor labels.
inline ChainComplexZ tensor_total(std::span<const ChainComplexZ> factors)
{
    if (factors.empty())
        return ChainComplexZ(0, {{"[]"}}, {SparseMatrix(0, 1)});

    int lo = 0;
    int hi = 0;
    for (const auto& f : factors) {
        lo += f.min_degree();
        hi += f.max_degree();
    }

    std::vector<std::vector<detail::TensorCell>> cells;
    std::vector<std::map<detail::TensorCell, std::size_t>> index;
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        detail::tensor_degree_tuples(factors, 0, n, cur, tuples);
        std::vector<detail::TensorCell> here;
        for (const auto& degs : tuples) {
            detail::TensorCell cell{degs, std::vector<std::size_t>(factors.size(), 0)};
            auto advance = [&] {
                for (std::size_t h = factors.size(); h-- > 0;) {
                    if (++cell.indices[h] < factors[h].rank(degs[h]))
                        return true;
                    cell.indices[h] = 0;
                }
                return false;
            };
            do {
                here.push_back(cell);
            } while (advance());
        }
        std::map<detail::TensorCell, std::size_t> idx;
        for (std::size_t i = 0; i < here.size(); ++i)
            idx.emplace(here[i], i);
        cells.push_back(std::move(here));
        index.push_back(std::move(idx));
    }

    std::vector<std::vector<SparseMatrix>> factor_bds(factors.size());
    for (std::size_t h = 0; h < factors.size(); ++h)
        for (int d = factors[h].min_degree(); d <= factors[h].max_degree(); ++d)
            factor_bds[h].push_back(factors[h].stored_boundary(d));

    std::vector<std::vector<std::string>> bases;
    std::vector<SparseMatrix> bds;
    for (int n = lo; n <= hi; ++n) {
        const auto& here = cells[static_cast<std::size_t>(n - lo)];
        std::vector<std::string> labels;
        labels.reserve(here.size());
        for (const auto& cell : here) {
            std::string s = "[";
            for (std::size_t h = 0; h < factors.size(); ++h) {
                if (h)
                    s += ", ";
                s += factors[h].basis(cell.degrees[h])[cell.indices[h]];
            }
            labels.push_back(s + "]");
        }
        bases.push_back(std::move(labels));

        std::size_t below = n == lo ? 0 : cells[static_cast<std::size_t>(n - lo - 1)].size();
        std::vector<MatrixEntry> trip;
        if (n > lo) {
            const auto& idx_below = index[static_cast<std::size_t>(n - lo - 1)];
            for (std::size_t col = 0; col < here.size(); ++col) {
                const auto& cell = here[col];
                long prefix = 0;
                for (std::size_t h = 0; h < factors.size(); ++h) {
                    int deg = cell.degrees[h];
                    const auto& bd = factor_bds[h][static_cast<std::size_t>(deg - factors[h].min_degree())];
                    int sign = detail::parity_sign(prefix);
                    // column `cell.indices[h]` of the h-th boundary
                    auto first = std::lower_bound(bd.entries().begin(), bd.entries().end(), cell.indices[h],
                                                  [](const MatrixEntry& e, std::size_t c) { return e.col < c; });
                    for (auto it = first; it != bd.entries().end() && it->col == cell.indices[h]; ++it) {
                        detail::TensorCell target = cell;
                        target.degrees[h] = deg - 1;
                        target.indices[h] = it->row;
                        auto found = idx_below.find(target);
                        if (found == idx_below.end())
                            throw std::logic_error("tensor_total: boundary target missing");
                        trip.push_back({found->second, col, sign * it->value});
                    }
                    prefix += deg;
                }
            }
        }
        bds.push_back(SparseMatrix::from_triplets(below, here.size(), std::move(trip)));
    }
    return ChainComplexZ(lo, std::move(bases), std::move(bds));
}

inline ChainComplexZ tensor_total(const ChainComplexZ& a, const ChainComplexZ& b)
{
    std::vector<ChainComplexZ> fs{a, b};
    return tensor_total(fs);
}

} // namespace maghom

#endif // MAGHOM_CHAIN_COMPLEX_HPP
