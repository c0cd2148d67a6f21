#ifndef MAGHOM_TESTS_FIXTURES_HPP
#define MAGHOM_TESTS_FIXTURES_HPP

#include "maghom/metric.hpp"
#include "maghom/poset.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using maghom::Graph;
using maghom::MetricSpace;
using maghom::Rational;

inline Graph cycle_graph(std::size_t n, std::vector<std::string> labels = {})
{
    Graph g;
    for (std::size_t i = 0; i < n; ++i) {
        g.labels.push_back(labels.empty() ? std::to_string(i) : labels[i]);
        g.edges.push_back({i, (i + 1) % n, 1});
    }
    return g;
}

inline Graph path_graph(std::size_t n)
{
    Graph g;
    for (std::size_t i = 0; i < n; ++i)
        g.labels.push_back(std::to_string(i));
    for (std::size_t i = 1; i < n; ++i)
        g.edges.push_back({i - 1, i, 1});
    return g;
}

inline Graph complete_graph(std::size_t n)
{
    Graph g;
    for (std::size_t i = 0; i < n; ++i)
        g.labels.push_back(std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.edges.push_back({i, j, 1});
    return g;
}

/// C4 with vertices a, b, c, d in cyclic order.
inline MetricSpace<Rational> c4() { return maghom::graph_metric(cycle_graph(4, {"a", "b", "c", "d"})); }
inline MetricSpace<Rational> cycle(std::size_t n) { return maghom::graph_metric(cycle_graph(n)); }
inline MetricSpace<Rational> path(std::size_t n) { return maghom::graph_metric(path_graph(n)); }

inline MetricSpace<Rational> two_point(const Rational& d)
{
    return maghom::validate_metric<Rational>({"a", "b"}, {{0, d}, {d, 0}});
}

inline MetricSpace<Rational> one_point() { return maghom::validate_metric<Rational>({"p"}, {{0}}); }

/// Tree from a parent array (parent[0] ignored), unit or given edge weights.
inline MetricSpace<Rational> tree(const std::vector<std::size_t>& parent, const std::vector<Rational>& weights = {})
{
    Graph g;
    for (std::size_t i = 0; i < parent.size(); ++i)
        g.labels.push_back("t" + std::to_string(i));
    for (std::size_t i = 1; i < parent.size(); ++i)
        g.edges.push_back({parent[i], i, weights.empty() ? Rational(1) : weights[i]});
    return maghom::graph_metric(g);
}

/// Random labelled tree on n vertices: vertex i attaches to a uniform earlier vertex.
inline MetricSpace<Rational> random_tree(std::mt19937& rng, std::size_t n)
{
    std::vector<std::size_t> parent(n, 0);
    std::vector<Rational> w(n, 1);
    std::uniform_int_distribution<int> wd(1, 3);
    for (std::size_t i = 1; i < n; ++i) {
        parent[i] = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        w[i] = Rational(wd(rng), 2);
    }
    return tree(parent, w);
}

/// Planar cloud with coordinates drawn from a continuous distribution, so
/// no three points are collinear and no distance sums coincide.
inline MetricSpace<double> planar_cloud(std::mt19937& rng, std::size_t n)
{
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back({u(rng), u(rng)});
    return maghom::euclidean_metric(pts, 1e-9);
}

/// Shortest-path metric of a random connected weighted graph on n vertices
/// with weights in {1/2, 1, 3/2, 2}; a spanning path guarantees connectivity.
inline MetricSpace<Rational> random_rational_space(std::mt19937& rng, std::size_t n)
{
    Graph g;
    std::uniform_int_distribution<int> wd(1, 4);
    std::bernoulli_distribution extra(0.5);
    for (std::size_t i = 0; i < n; ++i)
        g.labels.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i < n; ++i)
        g.edges.push_back({i - 1, i, Rational(wd(rng), 2)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j)
            if (extra(rng))
                g.edges.push_back({i, j, Rational(wd(rng), 2)});
    return maghom::graph_metric(g);
}

inline maghom::SimplicialComplexFacets facets_from(const std::vector<std::vector<std::size_t>>& f, std::size_t vertices)
{
    maghom::SimplicialComplexFacets k;
    for (std::size_t v = 1; v <= vertices; ++v)
        k.vertices.push_back(std::to_string(v));
    for (const auto& face : f) {
        auto& out = k.facets.emplace_back();
        for (auto v : face)
            out.push_back(v - 1);
    }
    return k;
}

/// Six-vertex triangulation of the real projective plane.
inline maghom::SimplicialComplexFacets rp2_6()
{
    return facets_from({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6}, {2, 3, 5}, {3, 5, 6}, {3, 4, 6}, {2, 4, 6},
                        {2, 4, 5}},
                       6);
}

inline maghom::SimplicialComplexFacets triangle_boundary() { return facets_from({{1, 2}, {2, 3}, {1, 3}}, 3); }

/// Boundary of the tetrahedron (a 2-sphere).
inline maghom::SimplicialComplexFacets sphere2()
{
    return facets_from({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}, 4);
}

inline maghom::Poset antichain(std::size_t n)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back("e" + std::to_string(i));
    return maghom::Poset::from_relations(labels, {});
}

inline maghom::Poset total_order(std::size_t n)
{
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("e" + std::to_string(i));
        if (i > 0)
            rel.emplace_back(i - 1, i);
    }
    return maghom::Poset::from_relations(labels, rel);
}

} // namespace fixtures

#endif
