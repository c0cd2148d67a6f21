#ifndef MAGHOM_MAGNITUDE_COMPLEX_HPP
#define MAGHOM_MAGNITUDE_COMPLEX_HPP

#include "maghom/chain_complex.hpp"
#include "maghom/chains.hpp"
#include "maghom/homology.hpp"
#include "maghom/poset.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace maghom {

/// Builds a complex from chains listed per degree (index 0 is `min_degree`).
/// The boundary is the alternating sum over smooth interior points of the
/// chain with that point deleted; every face must itself be listed.
template <Length T>
ChainComplexZ chain_complex_from_chains(const MetricSpace<T>& x, int min_degree,
                                        const std::vector<std::vector<ProperChain<T>>>& chains)
{
    std::vector<std::vector<std::string>> bases;
    std::vector<SparseMatrix> bds;
    std::map<std::vector<std::size_t>, std::size_t> below;
    for (std::size_t k = 0; k < chains.size(); ++k) {
        const auto& here = chains[k];
        std::vector<std::string> labels;
        std::vector<MatrixEntry> trip;
        for (std::size_t col = 0; col < here.size(); ++col) {
            const auto& pts = here[col].points;
            labels.push_back(chain_label(x, pts));
            if (k == 0)
                continue;
            for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
                if (!x.is_strictly_between(pts[i - 1], pts[i], pts[i + 1]))
                    continue;
                auto face = pts;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                auto it = below.find(face);
                if (it == below.end())
                    throw std::logic_error("boundary face " + chain_label(x, face) + " missing from the basis");
                trip.push_back({it->second, col, Integer(i % 2 == 0 ? 1 : -1)});
            }
        }
        std::size_t nrows = k == 0 ? 0 : chains[k - 1].size();
        bds.push_back(SparseMatrix::from_triplets(nrows, here.size(), std::move(trip)));
        bases.push_back(std::move(labels));
        below.clear();
        for (std::size_t i = 0; i < here.size(); ++i)
            below.emplace(here[i].points, i);
    }
    return ChainComplexZ(min_degree, std::move(bases), std::move(bds));
}

/// B^ℓ_•(X) in degrees 0..max_degree.
template <Length T>
ChainComplexZ magnitude_complex(const MetricSpace<T>& x, const T& length, std::size_t max_degree)
{
    std::vector<std::vector<ProperChain<T>>> chains;
    for (std::size_t n = 0; n <= max_degree; ++n)
        chains.push_back(enumerate_proper_chains(x, n, length));
    return chain_complex_from_chains(x, 0, chains);
}

/// Subcomplex of B^ℓ spanned by geodesically simple chains.
template <Length T>
ChainComplexZ simple_subcomplex(const MetricSpace<T>& x, const T& length, std::size_t max_degree)
{
    std::vector<std::vector<ProperChain<T>>> chains;
    for (std::size_t n = 0; n <= max_degree; ++n) {
        std::vector<ProperChain<T>> keep;
        for (auto& c : enumerate_proper_chains(x, n, length))
            if (is_geodesically_simple(x, c))
                keep.push_back(std::move(c));
        chains.push_back(std::move(keep));
    }
    return chain_complex_from_chains(x, 0, chains);
}

/// B^F_• in degrees deg(F)..max_degree (an empty range if max_degree < deg(F)).
template <Length T>
ChainComplexZ framed_complex(const MetricSpace<T>& x, const ProperChain<T>& frame, std::size_t max_degree)
{
    if (!is_frame(x, frame))
        throw NotAFrame();
    const std::size_t m = frame.degree();
    std::vector<std::vector<ProperChain<T>>> chains;
    for (std::size_t n = m; n <= max_degree; ++n)
        chains.push_back(enumerate_framed_chains(x, frame, n));
    return chain_complex_from_chains(x, static_cast<int>(m), chains);
}

/// Per-degree basis map from B^F into the shifted tensor total complex,
/// stored without the (-1)^n sign; the sign is applied when checking.
struct ChainMapWitness {
    int shift = 0;
    /// degree n -> matrix with one 1 per column (rows: target basis, cols: source basis)
    std::map<int, SparseMatrix> maps;
    /// the chain map is (-1)^n * maps[n]
    bool alternating_sign = true;
    /// every target basis element has a preimage
    bool bijective = true;
    /// target basis labels with no preimage, when not bijective
    std::vector<std::string> unrealized;
};

struct IntervalDecomposition {
    /// B^F_• in degrees deg(F).. the top degree of `total`
    ChainComplexZ framed;
    /// Tot(C(I(a0,a1)) ⊗ ... ⊗ C(I(a_{m-1},a_m))) shifted up by 2m
    ChainComplexZ total;
    std::vector<IntervalPoset> gaps;
    ChainMapWitness witness;
};

/// Splits each framed chain into its gap subchains and matches it with the
/// corresponding tensor basis element. The map is always injective; it is
/// onto exactly when every tuple of gap chains reassembles into a chain with
/// frame F (guaranteed below the minimal 4-cut length).
template <Length T>
IntervalDecomposition interval_decomposition(const MetricSpace<T>& x, const ProperChain<T>& frame)
{
    if (!is_frame(x, frame))
        throw NotAFrame();
    const std::size_t m = frame.degree();
    IntervalDecomposition out;
    std::vector<ChainComplexZ> factors;
    for (std::size_t i = 1; i <= m; ++i) {
        out.gaps.push_back(interval_poset(x, frame.points[i - 1], frame.points[i]));
        factors.push_back(order_complex_chain(out.gaps.back().poset));
    }
    out.total = shift(tensor_total(factors), static_cast<int>(2 * m));
    std::size_t top = static_cast<std::size_t>(std::max(out.total.max_degree(), static_cast<int>(m)));
    out.framed = framed_complex(x, frame, top);
    out.witness.shift = static_cast<int>(2 * m);

    std::vector<std::map<std::size_t, std::size_t>> point_to_element(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t e = 0; e < out.gaps[i].points.size(); ++e)
            point_to_element[i].emplace(out.gaps[i].points[e], e);

    for (int n = out.framed.min_degree(); n <= out.framed.max_degree(); ++n) {
        std::map<std::string, std::size_t> target_index;
        if (out.total.in_range(n)) {
            const auto& tb = out.total.basis(n);
            for (std::size_t i = 0; i < tb.size(); ++i)
                target_index.emplace(tb[i], i);
        }
        auto chains = enumerate_framed_chains(x, frame, static_cast<std::size_t>(n));
        std::vector<MatrixEntry> trip;
        std::vector<bool> hit(out.total.rank(n), false);
        for (std::size_t col = 0; col < chains.size(); ++col) {
            // walk the chain, cutting at the frame points
            std::string label = "[";
            std::size_t pos = 1;
            for (std::size_t g = 0; g < m; ++g) {
                std::vector<std::size_t> elems;
                while (chains[col].points[pos] != frame.points[g + 1]) {
                    elems.push_back(point_to_element[g].at(chains[col].points[pos]));
                    ++pos;
                }
                ++pos;
                if (g)
                    label += ", ";
                label += detail::chain_label(out.gaps[g].poset, elems);
            }
            label += "]";
            auto it = target_index.find(label);
            if (it == target_index.end())
                throw std::logic_error("framed chain " + chain_label(x, chains[col].points)
                                       + " has no tensor counterpart");
            hit[it->second] = true;
            trip.push_back({it->second, col, Integer(1)});
        }
        out.witness.maps[n] = SparseMatrix::from_triplets(out.total.rank(n), chains.size(), std::move(trip));
        for (std::size_t i = 0; i < hit.size(); ++i)
            if (!hit[i]) {
                out.witness.bijective = false;
                out.witness.unrealized.push_back(out.total.basis(n)[i]);
            }
    }
    for (int n = out.total.min_degree(); n <= out.total.max_degree(); ++n)
        if (!out.framed.in_range(n) && out.total.rank(n) > 0) {
            out.witness.bijective = false;
            for (const auto& l : out.total.basis(n))
                out.witness.unrealized.push_back(l);
        }
    return out;
}

/// Checks ∂^Tot ∘ ((-1)^n φ_n) = ((-1)^{n-1} φ_{n-1}) ∘ ∂ in every degree, and
/// that each φ_n sends basis elements to distinct basis elements.
inline bool verify_chain_map(const ChainComplexZ& source, const ChainComplexZ& target, const ChainMapWitness& w)
{
    auto phi = [&](int n) {
        auto it = w.maps.find(n);
        if (it != w.maps.end())
            return it->second;
        return SparseMatrix(target.rank(n), source.rank(n));
    };
    for (int n = source.min_degree(); n <= source.max_degree(); ++n) {
        SparseMatrix f = phi(n);
        if (f.rows() != target.rank(n) || f.cols() != source.rank(n))
            return false;
        std::vector<int> row_hits(f.rows(), 0);
        std::vector<int> col_hits(f.cols(), 0);
        for (const auto& e : f.entries()) {
            if (e.value != 1)
                return false;
            ++row_hits[e.row];
            ++col_hits[e.col];
        }
        for (int h : row_hits)
            if (h > 1)
                return false;
        for (int h : col_hits)
            if (h != 1)
                return false;

        SparseMatrix signed_f = (w.alternating_sign && n % 2 != 0) ? -f : f;
        SparseMatrix signed_prev = phi(n - 1);
        if (w.alternating_sign && (n - 1) % 2 != 0)
            signed_prev = -signed_prev;
        SparseMatrix lhs = target.boundary(n) * signed_f;
        SparseMatrix rhs = signed_prev * source.boundary(n);
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

/// H_n^{Σ,ℓ}(X), from B^ℓ truncated at degree n + 1.
template <Length T>
AbelianGroupInvariants magnitude_homology(const MetricSpace<T>& x, std::size_t n, const T& length)
{
    return homology(magnitude_complex(x, length, n + 1), static_cast<int>(n));
}

} // namespace maghom

#endif // MAGHOM_MAGNITUDE_COMPLEX_HPP
