#ifndef MAGHOM_ENGINE_HPP
#define MAGHOM_ENGINE_HPP

#include "maghom/chains.hpp"
#include "maghom/homology.hpp"
#include "maghom/magnitude_complex.hpp"
#include "maghom/metric.hpp"
#include "maghom/parallel.hpp"
#include "maghom/poset.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace maghom {

enum class GapKind { empty, totally_ordered, other };

inline const char* gap_kind_name(GapKind g)
{
    switch (g) {
    case GapKind::empty: return "empty";
    case GapKind::totally_ordered: return "totally-ordered";
    case GapKind::other: return "other";
    }
    return "?";
}

inline GapKind classify_gap(const Poset& p)
{
    if (p.empty())
        return GapKind::empty;
    return is_totally_ordered(p) ? GapKind::totally_ordered : GapKind::other;
}

/// Kind of each consecutive-pair interval of a frame.
template <Length T>
std::vector<GapKind> frame_gaps(const MetricSpace<T>& x, const ProperChain<T>& frame)
{
    std::vector<GapKind> out;
    for (std::size_t i = 1; i < frame.points.size(); ++i)
        out.push_back(classify_gap(interval_poset(x, frame.points[i - 1], frame.points[i]).poset));
    return out;
}

/// H_n^F(X) straight from the framed complex.
template <Length T>
AbelianGroupInvariants framed_homology(const MetricSpace<T>& x, const ProperChain<T>& frame, std::size_t n)
{
    if (n < frame.degree())
        return {};
    return homology(framed_complex(x, frame, n + 1), static_cast<int>(n));
}

/// H_n^F(X) from the homology of the gap order complexes, folded with the
/// Künneth formula and shifted by twice the frame degree.
template <Length T>
AbelianGroupInvariants kunneth_frame_homology(const MetricSpace<T>& x, const ProperChain<T>& frame, std::size_t n)
{
    HomologyTable acc{{0, AbelianGroupInvariants::free(1)}};
    for (std::size_t i = 1; i < frame.points.size(); ++i) {
        auto gap = homology_all(order_complex_chain(interval_poset(x, frame.points[i - 1], frame.points[i]).poset));
        int lo = acc.begin()->first + gap.begin()->first;
        int hi = acc.rbegin()->first + gap.rbegin()->first + 1;
        HomologyTable next;
        for (int d = lo; d <= hi; ++d)
            next[d] = kunneth_assemble(acc, gap, d);
        acc = std::move(next);
    }
    int target = static_cast<int>(n) - 2 * static_cast<int>(frame.degree());
    auto it = acc.find(target);
    return it == acc.end() ? AbelianGroupInvariants{} : it->second;
}

enum class DecompositionValidity {
    /// ℓ < m_X or n <= 1: the frame sum is H_n^{Σ,ℓ}
    per_frame,
    /// hypothesis fails but every chain of degree n and n+1 is geodesically simple
    simple_equals_full,
    /// the frame sum is only H_n^{simp,ℓ}; the direct result is attached
    direct,
};

inline const char* validity_name(DecompositionValidity v)
{
    switch (v) {
    case DecompositionValidity::per_frame: return "per-frame";
    case DecompositionValidity::simple_equals_full: return "simple-equals-full";
    case DecompositionValidity::direct: return "direct";
    }
    return "?";
}

template <Length T>
struct FrameHomology {
    ProperChain<T> frame;
    std::vector<GapKind> gaps;
    AbelianGroupInvariants homology;
};

template <Length T>
struct DecompositionReport {
    T grading{};
    std::size_t degree = 0;
    DecompositionValidity validity = DecompositionValidity::per_frame;
    std::vector<FrameHomology<T>> frames;
    AbelianGroupInvariants total;
    std::optional<AbelianGroupInvariants> direct;
};

/// Frame-by-frame computation of H_n in grading ℓ. Under the decomposition
/// hypothesis, frames with a nonempty totally ordered gap contribute zero
/// without any matrix work; the others go
/// through the interval decomposition (or the framed complex itself when the
/// decomposition map is not onto).
template <Length T>
DecompositionReport<T> decompose_by_frames(const MetricSpace<T>& x, std::size_t n, const T& length,
                                           std::size_t jobs = 1)
{
    DecompositionReport<T> report;
    report.grading = length;
    report.degree = n;
    auto m_x = min_four_cut_length(x);
    if (n <= 1 || x.less(length, m_x)) {
        report.validity = DecompositionValidity::per_frame;
    } else {
        bool all_simple = true;
        for (std::size_t d = n; d <= n + 1 && all_simple; ++d)
            for (const auto& c : enumerate_proper_chains(x, d, length))
                if (!is_geodesically_simple(x, c)) {
                    all_simple = false;
                    break;
                }
        report.validity = all_simple ? DecompositionValidity::simple_equals_full : DecompositionValidity::direct;
    }

    auto frames = enumerate_frames(x, n, length);
    report.frames = parallel_map(frames.size(), jobs, [&](std::size_t i) {
        FrameHomology<T> fh{frames[i], frame_gaps(x, frames[i]), {}};
        if (report.validity == DecompositionValidity::per_frame)
            for (auto g : fh.gaps)
                if (g == GapKind::totally_ordered)
                    return fh;
        auto dec = interval_decomposition(x, frames[i]);
        const int deg = static_cast<int>(n);
        if (dec.witness.bijective)
            fh.homology = dec.total.in_range(deg) ? homology(dec.total, deg) : AbelianGroupInvariants{};
        else
            fh.homology = framed_homology(x, frames[i], n);
        return fh;
    });
    for (const auto& f : report.frames)
        report.total = direct_sum(report.total, f.homology);
    if (report.validity == DecompositionValidity::direct)
        report.direct = magnitude_homology(x, n, length);
    return report;
}

/// H_n^{Σ,ℓ} for a geodetic space with 0 < ℓ < m_X: free on the thin frames
/// of degree n and length ℓ.
template <Length T>
AbelianGroupInvariants thin_frame_homology(const MetricSpace<T>& x, std::size_t n, const T& length)
{
    if (!x.less(T{}, length))
        throw PreconditionFailed(PreconditionFailed::Reason::grading_not_positive);
    if (!is_geodetic(x))
        throw PreconditionFailed(PreconditionFailed::Reason::not_geodetic);
    if (!x.less(length, min_four_cut_length(x)))
        throw PreconditionFailed(PreconditionFailed::Reason::grading_too_large);
    return AbelianGroupInvariants::free(enumerate_thin_frames(x, n, length).size());
}

template <Length T>
struct ThresholdReport {
    std::size_t k = 0;
    /// largest scanned grading with H_k != 0 (0 when none)
    ExtendedDistance<T> nu;
    T hole{};
    T window{};
    std::vector<T> nonvanishing;
    /// ν_k = k · h_X
    bool meets_bound = false;
    /// H_k is nonzero at ν_k itself
    bool attained = false;
    /// some pair at distance h_X has an empty interval
    bool hole_pair_exists = false;
};

/// Scans every grading 0 < ℓ <= window reachable by a degree-k chain and
/// records where H_k^{Σ,ℓ} is nonzero (computed directly).
template <Length T>
ThresholdReport<T> vanishing_threshold(const MetricSpace<T>& x, std::size_t k, const T& window, std::size_t jobs = 1)
{
    if (k == 0)
        throw std::invalid_argument("vanishing threshold needs k > 0");
    ThresholdReport<T> r;
    r.k = k;
    r.window = window;
    r.hole = hole_diameter(x);
    std::vector<T> gradings;
    for (auto& l : chain_lengths(x, k, window))
        if (x.less(T{}, l))
            gradings.push_back(l);
    auto groups = parallel_map(gradings.size(), jobs,
                               [&](std::size_t i) { return magnitude_homology(x, k, gradings[i]); });
    T nu{};
    for (std::size_t i = 0; i < gradings.size(); ++i)
        if (!groups[i].is_trivial()) {
            r.nonvanishing.push_back(gradings[i]);
            nu = gradings[i];
            r.attained = true;
        }
    r.nu = ExtendedDistance<T>::finite(nu);
    r.meets_bound = x.same(nu, T(static_cast<long>(k)) * r.hole);
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b)
            if (a != b && x.same(x.d(a, b), r.hole) && interval_is_empty(x, a, b))
                r.hole_pair_exists = true;
    return r;
}

template <Length T>
struct EmbeddingReport {
    std::size_t degree = 0;
    T grading{};
    AbelianGroupInvariants framed;
    AbelianGroupInvariants full;
    AbelianGroupInvariants complement;
    /// chains split into P^F and the rest with no boundary crossing between them
    bool partition_ok = false;
    bool rank_dominated = false;
    bool torsion_divides = false;
    /// full = framed ⊕ complement
    bool splits = false;

    bool embeds() const { return partition_ok && rank_dominated && torsion_divides && splits; }
};

/// Compares H_n^F with H_n^{Σ,|F|} for a two-point frame F: checks the basis
/// partition that makes B^F a direct summand of B^{|F|}, then the resulting
/// group-level consequences.
template <Length T>
EmbeddingReport<T> framed_embedding_check(const MetricSpace<T>& x, const ProperChain<T>& frame, std::size_t n)
{
    if (frame.points.size() != 2)
        throw NotATwoPointFrame();
    EmbeddingReport<T> r;
    r.degree = n;
    r.grading = frame.length;

    std::vector<std::vector<ProperChain<T>>> framed(n + 2), rest(n + 2), all(n + 2);
    std::vector<std::set<std::vector<std::size_t>>> framed_sets(n + 2);
    for (std::size_t d = 0; d <= n + 1; ++d) {
        all[d] = enumerate_proper_chains(x, d, frame.length);
        if (d >= 1)
            framed[d] = enumerate_framed_chains(x, frame, d);
        for (const auto& c : framed[d])
            framed_sets[d].insert(c.points);
        for (const auto& c : all[d])
            if (!framed_sets[d].count(c.points))
                rest[d].push_back(c);
    }

    r.partition_ok = true;
    for (std::size_t d = 1; d <= n + 1; ++d)
        for (const auto& c : all[d]) {
            const bool inside = framed_sets[d].count(c.points) > 0;
            const bool ends_match = c.points.front() == frame.points[0] && c.points.back() == frame.points[1];
            if (inside != ends_match)
                r.partition_ok = false;
            for (std::size_t i = 1; i + 1 < c.points.size(); ++i) {
                if (!x.is_strictly_between(c.points[i - 1], c.points[i], c.points[i + 1]))
                    continue;
                auto face = c.points;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                if ((framed_sets[d - 1].count(face) > 0) != inside)
                    r.partition_ok = false;
            }
        }

    const int deg = static_cast<int>(n);
    r.full = homology(chain_complex_from_chains(x, 0, all), deg);
    if (!r.partition_ok)
        return r;
    r.framed = homology(chain_complex_from_chains(x, 0, framed), deg);
    r.complement = homology(chain_complex_from_chains(x, 0, rest), deg);
    r.rank_dominated = r.framed.free_rank <= r.full.free_rank;
    r.torsion_divides = std::all_of(r.framed.torsion.begin(), r.framed.torsion.end(), [&](const Integer& t) {
        return std::any_of(r.full.torsion.begin(), r.full.torsion.end(),
                           [&](const Integer& u) { return u % t == 0; });
    });
    r.splits = r.full == direct_sum(r.framed, r.complement);
    return r;
}

struct PosetPipelineRow {
    std::size_t degree = 0;
    /// reduced H_{n-2} of the order complex of P
    AbelianGroupInvariants order_homology;
    /// H_n^{Σ,ℓ} of the Hasse-diagram metric on P̂
    AbelianGroupInvariants magnitude;
    EmbeddingReport<Rational> embedding;
};

struct PosetPipelineReport {
    Poset poset;
    RankedPosetInfo rank;
    Poset bounded;
    MetricSpace<Rational> space;
    Rational grading;
    std::vector<PosetPipelineRow> rows;
};

/// Ranked poset P -> P̂ -> Hasse-diagram metric; compares the order homology
/// of P with magnitude homology of P̂ in grading d(0̂, 1̂) = rank + 2.
inline PosetPipelineReport poset_magnitude_pipeline(const Poset& p, const std::vector<std::size_t>& degrees,
                                                    std::size_t jobs = 1)
{
    auto ranked = is_ranked(p);
    if (!ranked)
        throw NotRanked();
    PosetPipelineReport r{p, *ranked, adjoin_bounds(p), {}, {}, {}};
    r.space = graph_metric(hasse_graph(r.bounded));
    const std::size_t bottom = 0;
    const std::size_t top = r.bounded.size() - 1;
    r.grading = r.space.d(bottom, top);
    if (r.grading != Rational(ranked->total_rank + 2))
        throw std::logic_error("d(0^,1^) differs from rank + 2");

    auto order_table = homology_all(order_complex_chain(p));
    auto frame = make_chain(r.space, {bottom, top});
    r.rows = parallel_map(degrees.size(), jobs, [&](std::size_t i) {
        PosetPipelineRow row;
        row.degree = degrees[i];
        auto it = order_table.find(static_cast<int>(degrees[i]) - 2);
        if (it != order_table.end())
            row.order_homology = it->second;
        row.embedding = framed_embedding_check(r.space, frame, degrees[i]);
        row.magnitude = row.embedding.full;
        return row;
    });
    return r;
}

template <Length T>
struct CrossValidationRow {
    std::size_t degree = 0;
    T grading{};
    /// the decomposition hypothesis (ℓ < m_X or n <= 1) holds
    bool applicable = false;
    AbelianGroupInvariants direct;
    std::optional<AbelianGroupInvariants> per_frame;
    std::optional<AbelianGroupInvariants> kunneth;
    bool pass = true;
    std::string witness;
};

template <Length T>
struct CrossValidationTable {
    std::vector<CrossValidationRow<T>> rows;
    bool all_pass = true;
    std::optional<std::string> first_failure;
};

/// Compares, for every (n, ℓ), the direct SNF of B^ℓ against the sum over
/// frames of H_n^F computed (a) from framed complexes and (b) from gap
/// order complexes via Künneth. Rows where the hypothesis fails only report
/// the direct group. Rows are ordered by grading, then degree.
template <Length T>
CrossValidationTable<T> cross_validate(const MetricSpace<T>& x, std::size_t max_degree, std::vector<T> gradings,
                                       std::size_t jobs = 1)
{
    std::sort(gradings.begin(), gradings.end());
    auto m_x = min_four_cut_length(x);
    std::vector<std::pair<std::size_t, T>> cells;
    for (const auto& l : gradings)
        for (std::size_t n = 0; n <= max_degree; ++n)
            cells.emplace_back(n, l);

    CrossValidationTable<T> table;
    table.rows = parallel_map(cells.size(), jobs, [&](std::size_t i) {
        CrossValidationRow<T> row;
        row.degree = cells[i].first;
        row.grading = cells[i].second;
        const std::size_t n = row.degree;
        row.direct = magnitude_homology(x, n, row.grading);
        row.applicable = n <= 1 || x.less(row.grading, m_x);
        if (!row.applicable)
            return row;
        AbelianGroupInvariants framed_sum, kunneth_sum;
        std::ostringstream bad;
        for (const auto& f : enumerate_frames(x, n, row.grading)) {
            auto a = framed_homology(x, f, n);
            auto b = kunneth_frame_homology(x, f, n);
            if (!(a == b) && bad.str().empty())
                bad << " frame " << chain_label(x, f.points) << ": framed=" << a.to_string()
                    << " kunneth=" << b.to_string();
            framed_sum = direct_sum(framed_sum, a);
            kunneth_sum = direct_sum(kunneth_sum, b);
        }
        row.per_frame = framed_sum;
        row.kunneth = kunneth_sum;
        row.pass = row.direct == framed_sum && framed_sum == kunneth_sum;
        if (!row.pass) {
            std::ostringstream w;
            w << "n=" << n << " l=" << LengthTraits<T>::format(row.grading) << ": direct=" << row.direct.to_string()
              << " per-frame=" << framed_sum.to_string() << " kunneth=" << kunneth_sum.to_string() << bad.str();
            row.witness = w.str();
        }
        return row;
    });
    for (const auto& row : table.rows)
        if (!row.pass) {
            table.all_pass = false;
            if (!table.first_failure)
                table.first_failure = row.witness;
        }
    return table;
}

template <Length T>
struct HomologyRow {
    std::size_t degree = 0;
    T grading{};
    AbelianGroupInvariants group;
};

/// H_n^{Σ,ℓ} for n <= max_degree and every listed grading; one complex per grading.
template <Length T>
std::vector<HomologyRow<T>> magnitude_homology_scan(const MetricSpace<T>& x, std::size_t max_degree,
                                                    std::vector<T> gradings, std::size_t jobs = 1)
{
    std::sort(gradings.begin(), gradings.end());
    auto tables = parallel_map(gradings.size(), jobs, [&](std::size_t i) {
        return homology_all(magnitude_complex(x, gradings[i], max_degree + 1));
    });
    std::vector<HomologyRow<T>> rows;
    for (std::size_t i = 0; i < gradings.size(); ++i)
        for (std::size_t n = 0; n <= max_degree; ++n)
            rows.push_back({n, gradings[i], tables[i].at(static_cast<int>(n))});
    return rows;
}

} // namespace maghom

#endif // MAGHOM_ENGINE_HPP
