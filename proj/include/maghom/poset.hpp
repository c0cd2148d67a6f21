#ifndef MAGHOM_POSET_HPP
#define MAGHOM_POSET_HPP

#include "maghom/chain_complex.hpp"
#include "maghom/errors.hpp"
#include "maghom/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maghom {

struct WeightedEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational weight = 1;
};

/// Undirected graph with labeled vertices; weights default to 1.
struct Graph {
    std::vector<std::string> labels;
    std::vector<WeightedEdge> edges;

    std::size_t size() const noexcept { return labels.size(); }
};

/// Finite partial order. Stores the full order relation and its cover
/// relation (the transitive reduction).
class Poset {
public:
    Poset() = default;

    /// Builds the order generated by `relations` (pairs i <= j, covers or any
    /// comparable pairs). Throws std::invalid_argument on a cycle.
    static Poset from_relations(std::vector<std::string> labels,
                                const std::vector<std::pair<std::size_t, std::size_t>>& relations)
    {
        Poset p;
        const std::size_t n = labels.size();
        p.labels_ = std::move(labels);
        p.leq_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            p.leq_[i * n + i] = 1;
        for (auto [i, j] : relations) {
            if (i >= n || j >= n)
                throw std::out_of_range("poset relation refers to unknown element");
            p.leq_[i * n + j] = 1;
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (p.leq_[i * n + k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (p.leq_[k * n + j])
                            p.leq_[i * n + j] = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (p.leq_[i * n + j] && p.leq_[j * n + i])
                    throw std::invalid_argument("poset relation has a cycle through elements " + std::to_string(i)
                                                + " and " + std::to_string(j));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || !p.leq_[i * n + j])
                    continue;
                bool cover = true;
                for (std::size_t k = 0; k < n && cover; ++k)
                    if (k != i && k != j && p.leq_[i * n + k] && p.leq_[k * n + j])
                        cover = false;
                if (cover)
                    p.covers_.emplace_back(i, j);
            }
        return p;
    }

    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
    bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
    bool comparable(std::size_t i, std::size_t j) const { return leq(i, j) || leq(j, i); }

    /// Pairs (i, j) with j covering i, sorted.
    const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept { return covers_; }

    /// All strict chains with `count` elements, listed bottom-up, in
    /// lexicographic order of their index sequences. count = 0 yields the empty chain.
    std::vector<std::vector<std::size_t>> chains(std::size_t count) const
    {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> cur;
        extend_chain(count, cur, out);
        return out;
    }

    /// Number of elements in a longest chain.
    std::size_t height() const
    {
        std::size_t h = 0;
        for (std::size_t k = 1; k <= size(); ++k) {
            if (chains(k).empty())
                break;
            h = k;
        }
        return h;
    }

private:
    void extend_chain(std::size_t count, std::vector<std::size_t>& cur,
                      std::vector<std::vector<std::size_t>>& out) const
    {
        if (cur.size() == count) {
            out.push_back(cur);
            return;
        }
        for (std::size_t x = 0; x < size(); ++x) {
            if (!cur.empty() && !less(cur.back(), x))
                continue;
            cur.push_back(x);
            extend_chain(count, cur, out);
            cur.pop_back();
        }
    }

    std::vector<std::string> labels_;
    std::vector<char> leq_;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
};

inline bool is_empty(const Poset& p) { return p.empty(); }

/// Every pair comparable. The empty poset counts as totally ordered.
inline bool is_totally_ordered(const Poset& p)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (!p.comparable(i, j))
                return false;
    return true;
}

namespace detail {

inline std::string chain_label(const Poset& p, const std::vector<std::size_t>& chain)
{
    std::string s = "(";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i)
            s += ",";
        s += p.label(chain[i]);
    }
    return s + ")";
}

} // namespace detail

/// Reduced chain complex of the order complex: degree n >= 0 is spanned by
/// strict chains x_0 < ... < x_n, degree -1 by the empty chain, and the
/// boundary deletes one element at a time with alternating signs.
inline ChainComplexZ order_complex_chain(const Poset& p)
{
    const std::size_t h = p.height();
    std::vector<std::vector<std::vector<std::size_t>>> by_size;
    for (std::size_t k = 0; k <= h; ++k)
        by_size.push_back(p.chains(k));

    std::vector<std::vector<std::string>> bases;
    std::vector<SparseMatrix> bds;
    std::map<std::vector<std::size_t>, std::size_t> prev_index;
    for (std::size_t k = 0; k <= h; ++k) {
        const auto& chains = by_size[k];
        std::vector<std::string> labels;
        std::vector<MatrixEntry> trip;
        for (std::size_t col = 0; col < chains.size(); ++col) {
            labels.push_back(detail::chain_label(p, chains[col]));
            if (k == 0)
                continue;
            for (std::size_t i = 0; i < chains[col].size(); ++i) {
                auto face = chains[col];
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                trip.push_back({prev_index.at(face), col, Integer(i % 2 == 0 ? 1 : -1)});
            }
        }
        std::size_t below = k == 0 ? 0 : by_size[k - 1].size();
        bds.push_back(SparseMatrix::from_triplets(below, chains.size(), std::move(trip)));
        bases.push_back(std::move(labels));
        prev_index.clear();
        for (std::size_t i = 0; i < chains.size(); ++i)
            prev_index.emplace(chains[i], i);
    }
    return ChainComplexZ(-1, std::move(bases), std::move(bds));
}

struct RankedPosetInfo {
    std::vector<std::size_t> rank_of;
    /// Common length of all maximal chains; -1 for the empty poset.
    int total_rank = -1;
};

/// Rank data when every maximal chain has the same length, otherwise nullopt.
inline std::optional<RankedPosetInfo> is_ranked(const Poset& p)
{
    RankedPosetInfo info;
    const std::size_t n = p.size();
    if (n == 0)
        return info;
    // longest chain ending at each element, by increasing number of elements below
    std::vector<std::size_t> order(n);
    std::vector<std::size_t> below(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
        for (std::size_t j = 0; j < n; ++j)
            if (p.less(j, i))
                ++below[i];
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
    info.rank_of.assign(n, 0);
    for (std::size_t x : order)
        for (auto [lo, hi] : p.covers())
            if (hi == x)
                info.rank_of[x] = std::max(info.rank_of[x], info.rank_of[lo] + 1);
    for (auto [lo, hi] : p.covers())
        if (info.rank_of[hi] != info.rank_of[lo] + 1)
            return std::nullopt;
    std::optional<std::size_t> top;
    for (std::size_t x = 0; x < n; ++x) {
        bool maximal = true;
        for (auto [lo, hi] : p.covers())
            if (lo == x)
                maximal = false;
        if (!maximal)
            continue;
        if (top && *top != info.rank_of[x])
            return std::nullopt;
        top = info.rank_of[x];
    }
    info.total_rank = static_cast<int>(*top);
    return info;
}

/// P with a new minimum (index 0, label "0^") and maximum (last index, label "1^").
/// Element i of P becomes i + 1.
inline Poset adjoin_bounds(const Poset& p)
{
    const std::size_t n = p.size();
    std::vector<std::string> labels;
    labels.push_back("0^");
    for (const auto& l : p.labels())
        labels.push_back(l);
    labels.push_back("1^");
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (auto [i, j] : p.covers())
        rel.emplace_back(i + 1, j + 1);
    for (std::size_t i = 0; i < n; ++i) {
        rel.emplace_back(0, i + 1);
        rel.emplace_back(i + 1, n + 1);
    }
    rel.emplace_back(0, n + 1);
    return Poset::from_relations(std::move(labels), rel);
}

/// The Hasse diagram as an undirected graph with unit weights; edges are the covers.
inline Graph hasse_graph(const Poset& p)
{
    Graph g;
    g.labels = p.labels();
    for (auto [i, j] : p.covers())
        g.edges.push_back({i, j, Rational(1)});
    return g;
}

/// Simplicial complex given by its facets (maximal faces) over labeled vertices.
struct SimplicialComplexFacets {
    std::vector<std::string> vertices;
    std::vector<std::vector<std::size_t>> facets;
};

/// Nonempty faces ordered by inclusion. Faces are listed by dimension, then
/// lexicographically by sorted vertex indices; labels look like "{a,b}".
inline Poset face_poset(const SimplicialComplexFacets& k)
{
    std::vector<std::set<std::size_t>> facets;
    for (const auto& f : k.facets) {
        if (f.empty())
            throw std::invalid_argument("facet must be nonempty");
        std::set<std::size_t> s(f.begin(), f.end());
        for (std::size_t v : s)
            if (v >= k.vertices.size())
                throw std::out_of_range("facet refers to unknown vertex");
        facets.push_back(std::move(s));
    }
    for (std::size_t a = 0; a < facets.size(); ++a)
        for (std::size_t b = 0; b < facets.size(); ++b)
            if (a != b && std::includes(facets[b].begin(), facets[b].end(), facets[a].begin(), facets[a].end()))
                throw std::invalid_argument("facet " + std::to_string(a) + " is contained in facet "
                                            + std::to_string(b));

    std::set<std::pair<std::size_t, std::vector<std::size_t>>> faces;
    for (const auto& f : facets) {
        std::vector<std::size_t> verts(f.begin(), f.end());
        const std::size_t m = verts.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
            std::vector<std::size_t> face;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::size_t{1} << i))
                    face.push_back(verts[i]);
            faces.emplace(face.size(), std::move(face));
        }
    }
    std::vector<std::vector<std::size_t>> list;
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::string> labels;
    for (const auto& [dim, face] : faces) {
        index.emplace(face, list.size());
        std::string s = "{";
        for (std::size_t i = 0; i < face.size(); ++i) {
            if (i)
                s += ",";
            s += k.vertices[face[i]];
        }
        labels.push_back(s + "}");
        list.push_back(face);
    }
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t j = 0; j < list.size(); ++j) {
        if (list[j].size() < 2)
            continue;
        for (std::size_t drop = 0; drop < list[j].size(); ++drop) {
            auto sub = list[j];
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
            covers.emplace_back(index.at(sub), j);
        }
    }
    return Poset::from_relations(std::move(labels), covers);
}

} // namespace maghom

#endif // MAGHOM_POSET_HPP
