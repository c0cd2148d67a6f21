#ifndef MAGHOM_METRIC_HPP
#define MAGHOM_METRIC_HPP

#include "maghom/errors.hpp"
#include "maghom/integer.hpp"
#include "maghom/poset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace maghom {

/// How lengths of a given representation are compared. Exact rationals use
/// equality; doubles from point clouds compare equal within the space's epsilon.
template <class T>
struct LengthTraits;

template <>
struct LengthTraits<Rational> {
    static constexpr bool exact = true;
    static bool equal(const Rational& a, const Rational& b, double) { return a == b; }
    static std::string format(const Rational& v) { return format_rational(v); }
    static double approx(const Rational& v) { return to_double(v); }
};

template <>
struct LengthTraits<double> {
    static constexpr bool exact = false;
    static bool equal(double a, double b, double eps) { return std::abs(a - b) <= eps; }
    static std::string format(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }
    static double approx(double v) { return v; }
};

template <class T>
concept Length = requires { LengthTraits<T>::exact; };

/// A length or +infinity.
template <Length T>
struct ExtendedDistance {
    bool infinite = true;
    T value{};

    static ExtendedDistance infinity() { return {}; }
    static ExtendedDistance finite(T v) { return {false, std::move(v)}; }

    std::string to_string() const { return infinite ? "inf" : LengthTraits<T>::format(value); }
};

template <Length T>
class MetricSpace;

template <Length T>
MetricSpace<T> validate_metric(std::vector<std::string> labels, std::vector<std::vector<T>> matrix, double eps = 0.0);

/// Finite metric space on points 0..n-1. Immutable once validated; build it
/// with validate_metric, graph_metric or euclidean_metric.
template <Length T>
class MetricSpace {
public:
    using length_type = T;

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const T& d(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
    double epsilon() const noexcept { return eps_; }
    bool approximate() const noexcept { return !LengthTraits<T>::exact; }

    bool same(const T& a, const T& b) const { return LengthTraits<T>::equal(a, b, eps_); }
    bool less(const T& a, const T& b) const { return a < b && !same(a, b); }
    bool less_eq(const T& a, const T& b) const { return a < b || same(a, b); }
    bool less(const T& a, const ExtendedDistance<T>& b) const { return b.infinite || less(a, b.value); }

    /// x ⪯ y ⪯ z: d(x,y) + d(y,z) = d(x,z).
    bool is_between(std::size_t x, std::size_t y, std::size_t z) const { return same(d(x, y) + d(y, z), d(x, z)); }

    /// x ≺ y ≺ z: betweenness with y distinct from both ends.
    bool is_strictly_between(std::size_t x, std::size_t y, std::size_t z) const
    {
        return x != y && y != z && is_between(x, y, z);
    }

    T diameter() const
    {
        T best{};
        for (const auto& v : dist_)
            if (best < v)
                best = v;
        return best;
    }

    /// Smallest distance between distinct points; zero for a one-point space.
    T min_positive_distance() const
    {
        std::optional<T> best;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (i != j && (!best || d(i, j) < *best))
                    best = d(i, j);
        return best.value_or(T{});
    }

    template <Length U>
    friend MetricSpace<U> validate_metric(std::vector<std::string>, std::vector<std::vector<U>>, double);

private:
    std::vector<std::string> labels_;
    std::vector<T> dist_;
    double eps_ = 0.0;
};

/// Checks the metric axioms and builds the space. Labels must be unique; an
/// empty label list is replaced by "0", "1", .... `eps` only matters for doubles.
template <Length T>
MetricSpace<T> validate_metric(std::vector<std::string> labels, std::vector<std::vector<T>> matrix, double eps)
{
    const std::size_t n = matrix.size();
    if (labels.empty())
        for (std::size_t i = 0; i < n; ++i)
            labels.push_back(std::to_string(i));
    if (labels.size() != n)
        throw AxiomViolation(Axiom::shape, {}, "label count does not match matrix size");
    for (std::size_t i = 0; i < n; ++i)
        if (matrix[i].size() != n)
            throw AxiomViolation(Axiom::shape, {i}, "row " + std::to_string(i) + " has wrong length");
    {
        std::set<std::string> seen;
        for (const auto& l : labels)
            if (!seen.insert(l).second)
                throw FormatError("duplicate point label '" + l + "'");
    }
    using Tr = LengthTraits<T>;
    auto eq = [&](const T& a, const T& b) { return Tr::equal(a, b, eps); };
    auto fmt = [](const T& v) { return Tr::format(v); };
    auto idx = [](std::size_t i) { return std::to_string(i); };

    for (std::size_t i = 0; i < n; ++i)
        if (!eq(matrix[i][i], T{}))
            throw AxiomViolation(Axiom::identity, {i}, "d(" + idx(i) + "," + idx(i) + ") = " + fmt(matrix[i][i]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!eq(matrix[i][j], matrix[j][i]))
                throw AxiomViolation(Axiom::symmetry, {i, j},
                                     "d(" + idx(i) + "," + idx(j) + ") != d(" + idx(j) + "," + idx(i) + ")");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (matrix[i][j] < T{} || eq(matrix[i][j], T{})))
                throw AxiomViolation(Axiom::positivity, {i, j},
                                     "d(" + idx(i) + "," + idx(j) + ") = " + fmt(matrix[i][j]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                T detour = matrix[i][j] + matrix[j][k];
                if (detour < matrix[i][k] && !eq(detour, matrix[i][k]))
                    throw AxiomViolation(Axiom::triangle, {i, j, k},
                                         "d(" + idx(i) + "," + idx(k) + ") = " + fmt(matrix[i][k]) + " > d(" + idx(i)
                                             + "," + idx(j) + ") + d(" + idx(j) + "," + idx(k) + ") = " + fmt(detour));
            }

    MetricSpace<T> space;
    space.labels_ = std::move(labels);
    space.eps_ = eps;
    space.dist_.reserve(n * n);
    for (auto& row : matrix)
        for (auto& v : row)
            space.dist_.push_back(std::move(v));
    return space;
}

/// Points strictly between a and b together with the point index of each poset element.
struct IntervalPoset {
    Poset poset;
    std::vector<std::size_t> points;
};

/// I_X(a, b) = {x : a ≺ x ≺ b}, ordered by x <= y iff a ≺ x ⪯ y.
template <Length T>
IntervalPoset interval_poset(const MetricSpace<T>& x, std::size_t a, std::size_t b)
{
    if (a == b)
        throw DegenerateEndpoints();
    IntervalPoset ip;
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < x.size(); ++p)
        if (x.is_strictly_between(a, p, b)) {
            ip.points.push_back(p);
            labels.push_back(x.label(p));
        }
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i < ip.points.size(); ++i)
        for (std::size_t j = 0; j < ip.points.size(); ++j)
            if (i != j && x.is_between(a, ip.points[i], ip.points[j]))
                rel.emplace_back(i, j);
    ip.poset = Poset::from_relations(std::move(labels), rel);
    return ip;
}

/// True when I_X(a, b) is empty (cheaper than building the poset).
template <Length T>
bool interval_is_empty(const MetricSpace<T>& x, std::size_t a, std::size_t b)
{
    for (std::size_t p = 0; p < x.size(); ++p)
        if (x.is_strictly_between(a, p, b))
            return false;
    return true;
}

template <Length T>
bool is_geodetic(const MetricSpace<T>& x)
{
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b)
            if (a != b && !is_totally_ordered(interval_poset(x, a, b).poset))
                return false;
    return true;
}

template <Length T>
struct FourCut {
    std::vector<std::size_t> points;
    T length;
};

/// 4-cuts (x0,x1,x2,x3): x0 ≺ x1 ≺ x2, x1 ≺ x2 ≺ x3 and d(x0,x3) < length.
/// Sorted by length, then lexicographically.
template <Length T>
std::vector<FourCut<T>> four_cuts(const MetricSpace<T>& x, const ExtendedDistance<T>& bound = {})
{
    std::vector<FourCut<T>> out;
    const std::size_t n = x.size();
    for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            if (x1 == x2)
                continue;
            for (std::size_t x0 = 0; x0 < n; ++x0) {
                if (!x.is_strictly_between(x0, x1, x2))
                    continue;
                for (std::size_t x3 = 0; x3 < n; ++x3) {
                    if (!x.is_strictly_between(x1, x2, x3))
                        continue;
                    T len = x.d(x0, x1) + x.d(x1, x2) + x.d(x2, x3);
                    if (!x.less(x.d(x0, x3), len))
                        continue;
                    if (!bound.infinite && x.less(bound.value, len))
                        continue;
                    out.push_back({{x0, x1, x2, x3}, len});
                }
            }
        }
    std::sort(out.begin(), out.end(), [](const FourCut<T>& a, const FourCut<T>& b) {
        return std::tie(a.length, a.points) < std::tie(b.length, b.points);
    });
    return out;
}

/// m_X: the minimum 4-cut length, infinite when there is none.
template <Length T>
ExtendedDistance<T> min_four_cut_length(const MetricSpace<T>& x)
{
    auto cuts = four_cuts(x);
    if (cuts.empty())
        return ExtendedDistance<T>::infinity();
    return ExtendedDistance<T>::finite(cuts.front().length);
}

/// h_X: the largest distance between distinct points with nothing between them (0 if none).
template <Length T>
T hole_diameter(const MetricSpace<T>& x)
{
    T best{};
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b)
            if (a != b && best < x.d(a, b) && interval_is_empty(x, a, b))
                best = x.d(a, b);
    return best;
}

/// Shortest-path metric of a connected graph with positive rational weights.
inline MetricSpace<Rational> graph_metric(const Graph& g)
{
    const std::size_t n = g.size();
    std::vector<std::vector<std::optional<Rational>>> dist(n, std::vector<std::optional<Rational>>(n));
    for (std::size_t i = 0; i < n; ++i)
        dist[i][i] = Rational(0);
    for (const auto& e : g.edges) {
        if (e.u >= n || e.v >= n)
            throw std::out_of_range("edge refers to unknown vertex");
        if (e.u == e.v)
            continue;
        if (e.weight <= 0)
            throw std::invalid_argument("edge weights must be positive");
        auto& slot = dist[e.u][e.v];
        if (!slot || e.weight < *slot) {
            slot = e.weight;
            dist[e.v][e.u] = e.weight;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!dist[i][k])
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!dist[k][j])
                    continue;
                Rational via = *dist[i][k] + *dist[k][j];
                if (!dist[i][j] || via < *dist[i][j])
                    dist[i][j] = via;
            }
        }
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i])
            continue;
        components.emplace_back();
        for (std::size_t j = 0; j < n; ++j)
            if (dist[i][j]) {
                seen[j] = true;
                components.back().push_back(j);
            }
    }
    if (components.size() > 1)
        throw DisconnectedGraph(std::move(components));

    std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            matrix[i][j] = *dist[i][j];
    return validate_metric<Rational>(g.labels, std::move(matrix));
}

/// Euclidean distances of a point cloud; lengths compare equal within `eps`.
inline MetricSpace<double> euclidean_metric(const std::vector<std::vector<double>>& points, double eps = 1e-9,
                                            std::vector<std::string> labels = {})
{
    if (!(eps > 0))
        throw std::invalid_argument("epsilon must be positive");
    const std::size_t n = points.size();
    for (const auto& p : points)
        if (p.size() != points.front().size())
            throw FormatError("points have inconsistent dimensions");
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0;
            for (std::size_t c = 0; c < points[i].size(); ++c)
                s += (points[i][c] - points[j][c]) * (points[i][c] - points[j][c]);
            double dij = std::sqrt(s);
            if (dij <= eps)
                throw DuplicatePoints(i, j);
            matrix[i][j] = matrix[j][i] = dij;
        }
    return validate_metric<double>(std::move(labels), std::move(matrix), eps);
}

} // namespace maghom

#endif // MAGHOM_METRIC_HPP
