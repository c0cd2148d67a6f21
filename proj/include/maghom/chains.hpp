#ifndef MAGHOM_CHAINS_HPP
#define MAGHOM_CHAINS_HPP

#include "maghom/metric.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maghom {

/// Tuple of points with consecutive entries distinct, plus its cached length.
template <Length T>
struct ProperChain {
    std::vector<std::size_t> points;
    T length{};

    std::size_t degree() const noexcept { return points.empty() ? 0 : points.size() - 1; }

    friend bool operator==(const ProperChain& a, const ProperChain& b) { return a.points == b.points; }
    friend bool operator<(const ProperChain& a, const ProperChain& b) { return a.points < b.points; }
};

/// A proper chain fixed by the frame map; kept as a distinct name for readability.
template <Length T>
using Frame = ProperChain<T>;

template <Length T>
T chain_length(const MetricSpace<T>& x, std::span<const std::size_t> points)
{
    T len{};
    for (std::size_t i = 1; i < points.size(); ++i)
        len += x.d(points[i - 1], points[i]);
    return len;
}

template <Length T>
ProperChain<T> make_chain(const MetricSpace<T>& x, std::vector<std::size_t> points)
{
    if (points.empty())
        throw std::invalid_argument("a chain needs at least one point");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] >= x.size())
            throw std::out_of_range("chain refers to unknown point");
        if (i > 0 && points[i] == points[i - 1])
            throw std::invalid_argument("consecutive chain points must differ");
    }
    T len = chain_length<T>(x, points);
    return {std::move(points), std::move(len)};
}

template <Length T>
std::string chain_label(const MetricSpace<T>& x, const std::vector<std::size_t>& points)
{
    std::string s = "(";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i)
            s += ",";
        s += x.label(points[i]);
    }
    return s + ")";
}

enum class PointKind { singular, smooth };

/// Interior position i is smooth iff x_{i-1} ≺ x_i ≺ x_{i+1}; endpoints are singular.
template <Length T>
std::vector<PointKind> classify_points(const MetricSpace<T>& x, const ProperChain<T>& c)
{
    const auto& p = c.points;
    std::vector<PointKind> kinds(p.size(), PointKind::singular);
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (x.is_strictly_between(p[i - 1], p[i], p[i + 1]))
            kinds[i] = PointKind::smooth;
    return kinds;
}

/// The subchain of singular points.
template <Length T>
ProperChain<T> frame_of(const MetricSpace<T>& x, const ProperChain<T>& c)
{
    auto kinds = classify_points(x, c);
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < kinds.size(); ++i)
        if (kinds[i] == PointKind::singular)
            pts.push_back(c.points[i]);
    T len = chain_length<T>(x, pts);
    return {std::move(pts), std::move(len)};
}

template <Length T>
bool is_frame(const MetricSpace<T>& x, const ProperChain<T>& c)
{
    for (auto k : classify_points(x, c))
        if (k == PointKind::smooth)
            return false;
    return true;
}

/// |frame_of(c)| = |c|.
template <Length T>
bool is_geodesically_simple(const MetricSpace<T>& x, const ProperChain<T>& c)
{
    return x.same(frame_of(x, c).length, c.length);
}

namespace detail {

enum class ChainFilter { all, frames, thin_frames };

/// Depth-first enumeration in lexicographic order. A prefix is dropped when
/// the remaining steps cannot reach `target` (each step costs between the
/// smallest positive distance and the diameter), when a frame filter sees a
/// smooth interior point, or when a thin filter sees a nonempty gap interval.
template <Length T>
class ChainSearch {
public:
    ChainSearch(const MetricSpace<T>& x, std::size_t degree, T target, ChainFilter filter)
        : x_(x)
        , degree_(degree)
        , target_(std::move(target))
        , filter_(filter)
        , step_min_(x.min_positive_distance())
        , step_max_(x.diameter())
    {
        if (filter_ == ChainFilter::thin_frames) {
            empty_gap_.assign(x.size() * x.size(), 0);
            for (std::size_t a = 0; a < x.size(); ++a)
                for (std::size_t b = 0; b < x.size(); ++b)
                    if (a != b)
                        empty_gap_[a * x.size() + b] = interval_is_empty(x, a, b);
        }
    }

    std::vector<ProperChain<T>> run()
    {
        std::vector<ProperChain<T>> out;
        std::vector<std::size_t> cur;
        for (std::size_t p = 0; p < x_.size(); ++p) {
            cur.assign(1, p);
            extend(cur, T{}, out);
        }
        return out;
    }

private:
    void extend(std::vector<std::size_t>& cur, const T& partial, std::vector<ProperChain<T>>& out)
    {
        const std::size_t done = cur.size() - 1;
        const std::size_t left = degree_ - done;
        if (left == 0) {
            if (x_.same(partial, target_))
                out.push_back({cur, partial});
            return;
        }
        T room = target_ - partial;
        T steps(static_cast<long>(left));
        if (x_.less(room, steps * step_min_) || x_.less(steps * step_max_, room))
            return;
        const std::size_t last = cur.back();
        for (std::size_t p = 0; p < x_.size(); ++p) {
            if (p == last)
                continue;
            if (filter_ != ChainFilter::all && cur.size() >= 2
                && x_.is_strictly_between(cur[cur.size() - 2], last, p))
                continue;
            if (filter_ == ChainFilter::thin_frames && !empty_gap_[last * x_.size() + p])
                continue;
            T next = partial + x_.d(last, p);
            if (x_.less(target_, next))
                continue;
            cur.push_back(p);
            extend(cur, next, out);
            cur.pop_back();
        }
    }

    const MetricSpace<T>& x_;
    std::size_t degree_;
    T target_;
    ChainFilter filter_;
    T step_min_;
    T step_max_;
    std::vector<char> empty_gap_;
};

} // namespace detail

/// P_n^ℓ(X): proper chains of degree n and length ℓ, lexicographically ordered.
template <Length T>
std::vector<ProperChain<T>> enumerate_proper_chains(const MetricSpace<T>& x, std::size_t n, const T& length)
{
    return detail::ChainSearch<T>(x, n, length, detail::ChainFilter::all).run();
}

/// Frames of degree at most `max_degree` and the given length, by degree then lexicographically.
template <Length T>
std::vector<ProperChain<T>> enumerate_frames(const MetricSpace<T>& x, std::size_t max_degree, const T& length)
{
    std::vector<ProperChain<T>> out;
    for (std::size_t m = 0; m <= max_degree; ++m) {
        auto part = detail::ChainSearch<T>(x, m, length, detail::ChainFilter::frames).run();
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

/// Frames of degree exactly n and length ℓ whose consecutive intervals are all empty.
template <Length T>
std::vector<ProperChain<T>> enumerate_thin_frames(const MetricSpace<T>& x, std::size_t n, const T& length)
{
    return detail::ChainSearch<T>(x, n, length, detail::ChainFilter::thin_frames).run();
}

/// P_n^F(X): degree-n chains whose frame is exactly F. Candidates come from
/// inserting strict chains of each gap interval poset between consecutive
/// frame points; a candidate is kept only if its frame really is F.
template <Length T>
std::vector<ProperChain<T>> enumerate_framed_chains(const MetricSpace<T>& x, const ProperChain<T>& frame,
                                                    std::size_t n)
{
    if (!is_frame(x, frame))
        throw NotAFrame();
    const std::size_t m = frame.degree();
    if (n < m)
        return {};
    std::vector<IntervalPoset> gaps;
    for (std::size_t i = 1; i <= m; ++i)
        gaps.push_back(interval_poset(x, frame.points[i - 1], frame.points[i]));

    std::vector<ProperChain<T>> out;
    std::vector<std::size_t> cur{frame.points.front()};
    auto recurse = [&](auto&& self, std::size_t gap, std::size_t extra) -> void {
        if (gap == gaps.size()) {
            if (extra != 0)
                return;
            ProperChain<T> c{cur, frame.length};
            if (frame_of(x, c).points == frame.points)
                out.push_back(std::move(c));
            return;
        }
        const auto& ip = gaps[gap];
        for (std::size_t k = 0; k <= extra && k <= ip.points.size(); ++k)
            for (const auto& chain : ip.poset.chains(k)) {
                const std::size_t mark = cur.size();
                for (std::size_t e : chain)
                    cur.push_back(ip.points[e]);
                cur.push_back(frame.points[gap + 1]);
                self(self, gap + 1, extra - k);
                cur.resize(mark);
            }
    };
    recurse(recurse, 0, n - m);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

template <Length T>
void sort_unique_lengths(const MetricSpace<T>& x, std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    std::vector<T> out;
    for (auto& l : v)
        if (out.empty() || !x.same(out.back(), l))
            out.push_back(std::move(l));
    v = std::move(out);
}

/// Lengths reachable by proper chains, grouped by degree (index = degree), capped at `bound`.
template <Length T>
std::vector<std::vector<T>> lengths_by_degree(const MetricSpace<T>& x, const T& bound,
                                              std::optional<std::size_t> max_degree)
{
    std::vector<std::vector<T>> per_point(x.size(), std::vector<T>{T{}});
    std::vector<std::vector<T>> result{{T{}}};
    if (x.size() == 0)
        return {{}};
    for (std::size_t deg = 1; !max_degree || deg <= *max_degree; ++deg) {
        std::vector<std::vector<T>> next(x.size());
        bool any = false;
        for (std::size_t p = 0; p < x.size(); ++p)
            for (const auto& l : per_point[p])
                for (std::size_t q = 0; q < x.size(); ++q) {
                    if (q == p)
                        continue;
                    T v = l + x.d(p, q);
                    if (x.less(bound, v))
                        continue;
                    next[q].push_back(std::move(v));
                    any = true;
                }
        if (!any)
            break;
        std::vector<T> all;
        for (auto& v : next) {
            sort_unique_lengths(x, v);
            all.insert(all.end(), v.begin(), v.end());
        }
        sort_unique_lengths(x, all);
        result.push_back(std::move(all));
        per_point = std::move(next);
    }
    return result;
}

} // namespace detail

/// Every length ≤ bound of some proper chain (of degree ≤ max_degree when
/// given), ascending. Always contains 0.
template <Length T>
std::vector<T> achievable_gradings(const MetricSpace<T>& x, const T& bound,
                                   std::optional<std::size_t> max_degree = std::nullopt)
{
    std::vector<T> all;
    for (auto& v : detail::lengths_by_degree(x, bound, max_degree))
        all.insert(all.end(), v.begin(), v.end());
    detail::sort_unique_lengths(x, all);
    return all;
}

/// Lengths ≤ bound of proper chains of degree exactly `degree`, ascending.
template <Length T>
std::vector<T> chain_lengths(const MetricSpace<T>& x, std::size_t degree, const T& bound)
{
    auto by_degree = detail::lengths_by_degree(x, bound, degree);
    if (degree >= by_degree.size())
        return {};
    return by_degree[degree];
}

} // namespace maghom

#endif // MAGHOM_CHAINS_HPP
