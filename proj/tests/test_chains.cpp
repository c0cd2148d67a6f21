#include "fixtures.hpp"
#include "maghom/chains.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <bit>

using namespace maghom;

namespace {

template <class T>
std::vector<std::vector<std::size_t>> points_of(const std::vector<ProperChain<T>>& cs)
{
    std::vector<std::vector<std::size_t>> out;
    for (const auto& c : cs)
        out.push_back(c.points);
    return out;
}

} // namespace

TEST_CASE("proper chain enumeration on small examples", "[chains]")
{
    auto x = fixtures::c4();
    CHECK(enumerate_proper_chains(x, 0, Rational(0)).size() == 4);
    auto two = fixtures::two_point(1);
    CHECK(points_of(enumerate_proper_chains(two, 2, Rational(2)))
          == std::vector<std::vector<std::size_t>>{{0, 1, 0}, {1, 0, 1}});
    CHECK(points_of(enumerate_proper_chains(x, 1, Rational(2)))
          == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}, {2, 0}, {3, 1}});
}

TEST_CASE("proper chain enumeration agrees with brute force", "[chains][property]")
{
    std::mt19937 rng(101);
    for (int trial = 0; trial < 12; ++trial) {
        auto x = fixtures::random_rational_space(rng, 3 + static_cast<std::size_t>(trial % 3));
        for (std::size_t n = 0; n <= 4; ++n)
            for (const auto& l : chain_lengths(x, n, Rational(2) * x.diameter())) {
                auto got = enumerate_proper_chains(x, n, l);
                REQUIRE(points_of(got) == oracle::brute_chains(x, n, l));
                for (const auto& c : got)
                    CHECK(c.length == l);
            }
    }
    auto cloud = fixtures::planar_cloud(rng, 4);
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& l : chain_lengths(cloud, n, 2 * cloud.diameter()))
            CHECK(points_of(enumerate_proper_chains(cloud, n, l)) == oracle::brute_chains(cloud, n, l));
}

TEST_CASE("achievable gradings are exactly the lengths of enumerated chains", "[chains][property]")
{
    std::mt19937 rng(103);
    for (int trial = 0; trial < 6; ++trial) {
        auto x = fixtures::random_rational_space(rng, 4);
        const Rational bound = Rational(2) * x.diameter();
        for (std::size_t n = 0; n <= 3; ++n) {
            std::set<Rational> brute;
            const std::size_t k = x.size();
            std::vector<std::size_t> t(n + 1, 0);
            // every tuple: total length if proper and within bound
            std::size_t total = 1;
            for (std::size_t i = 0; i <= n; ++i)
                total *= k;
            for (std::size_t code = 0; code < total; ++code) {
                std::size_t c = code;
                for (auto& v : t) {
                    v = c % k;
                    c /= k;
                }
                bool proper = true;
                for (std::size_t i = 1; i <= n; ++i)
                    proper = proper && t[i] != t[i - 1];
                Rational len = oracle::tuple_length(x, t);
                if (proper && len <= bound)
                    brute.insert(len);
            }
            auto got = chain_lengths(x, n, bound);
            CHECK(std::vector<Rational>(brute.begin(), brute.end()) == got);
        }
    }
}

TEST_CASE("point classification and frames", "[chains]")
{
    auto p3 = fixtures::path(3);
    auto c = make_chain(p3, {0, 1, 2});
    CHECK(classify_points(p3, c) == std::vector<PointKind>{PointKind::singular, PointKind::smooth, PointKind::singular});
    CHECK(frame_of(p3, c).points == std::vector<std::size_t>{0, 2});

    auto two = fixtures::two_point(1);
    auto aba = make_chain(two, {0, 1, 0});
    CHECK(classify_points(two, aba)[1] == PointKind::singular);
    CHECK(is_frame(two, aba));
    CHECK(frame_of(two, aba) == aba);

    auto x = fixtures::c4();
    auto abcd = make_chain(x, {0, 1, 2, 3});
    auto kinds = classify_points(x, abcd);
    CHECK(kinds[1] == PointKind::smooth);
    CHECK(kinds[2] == PointKind::smooth);
    auto f = frame_of(x, abcd);
    CHECK(f.points == std::vector<std::size_t>{0, 3});
    CHECK(f.length == 1);
    CHECK_FALSE(is_geodesically_simple(x, abcd));
    CHECK_THROWS(make_chain(x, {0, 0}));
}

TEST_CASE("classification matches the deletion-length characterisation", "[chains][property]")
{
    std::mt19937 rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = fixtures::random_rational_space(rng, 4 + static_cast<std::size_t>(trial % 2));
        for (std::size_t n = 1; n <= 4; ++n)
            for (const auto& l : chain_lengths(x, n, Rational(2) * x.diameter()))
                for (const auto& c : enumerate_proper_chains(x, n, l)) {
                    auto kinds = classify_points(x, c);
                    for (std::size_t i = 0; i < kinds.size(); ++i)
                        CHECK((kinds[i] == PointKind::singular) == oracle::singular_by_deletion(x, c.points, i));
                    auto f = frame_of(x, c);
                    CHECK(f.points == oracle::frame_by_deletion(x, c.points));
                    // deleting smooth points one at a time only stabilises on simple chains
                    if (is_geodesically_simple(x, c))
                        CHECK(frame_of(x, f) == f);
                }
    }
}

TEST_CASE("short chains are geodesically simple", "[chains][property]")
{
    std::mt19937 rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = fixtures::random_rational_space(rng, 5);
        auto mx = min_four_cut_length(x);
        for (std::size_t n = 0; n <= 4; ++n)
            for (const auto& l : chain_lengths(x, n, Rational(2) * x.diameter()))
                for (const auto& c : enumerate_proper_chains(x, n, l)) {
                    if (n <= 2 || x.less(l, mx))
                        CHECK(is_geodesically_simple(x, c));
                    if (n == 3 && frame_of(x, c).points.size() == 2) {
                        const bool cut = x.is_strictly_between(c.points[0], c.points[1], c.points[2])
                                         && x.is_strictly_between(c.points[1], c.points[2], c.points[3])
                                         && x.less(x.d(c.points[0], c.points[3]), c.length);
                        CHECK(is_geodesically_simple(x, c) == !cut);
                    }
                }
    }
}

TEST_CASE("framed chains", "[chains]")
{
    std::mt19937 rng(113);
    auto cloud = fixtures::planar_cloud(rng, 4);
    auto f = make_chain(cloud, {0, 1});
    CHECK(enumerate_framed_chains(cloud, f, 1).size() == 1);
    CHECK(enumerate_framed_chains(cloud, f, 2).empty());

    auto x = fixtures::c4();
    auto ac = make_chain(x, {0, 2});
    CHECK(enumerate_framed_chains(x, ac, 3).empty());
    CHECK(points_of(enumerate_framed_chains(x, ac, 2)) == std::vector<std::vector<std::size_t>>{{0, 1, 2}, {0, 3, 2}});
    CHECK_THROWS_AS(enumerate_framed_chains(fixtures::path(3), make_chain(fixtures::path(3), {0, 1, 2}), 2),
                    NotAFrame);
}

TEST_CASE("framed chains partition the simple chains", "[chains][property]")
{
    std::mt19937 rng(127);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = fixtures::random_rational_space(rng, 4 + static_cast<std::size_t>(trial % 2));
        for (std::size_t n = 1; n <= 4; ++n)
            for (const auto& l : chain_lengths(x, n, Rational(2) * x.diameter())) {
                std::size_t simple = 0;
                std::set<std::vector<std::size_t>> seen;
                for (const auto& c : enumerate_proper_chains(x, n, l))
                    simple += is_geodesically_simple(x, c);
                std::size_t framed = 0;
                for (const auto& f : enumerate_frames(x, n, l))
                    for (const auto& c : enumerate_framed_chains(x, f, n)) {
                        CHECK(seen.insert(c.points).second);
                        CHECK(frame_of(x, c).points == f.points);
                        CHECK(is_geodesically_simple(x, c));
                        ++framed;
                    }
                CHECK(framed == simple);
            }
    }
}

TEST_CASE("frame enumeration", "[chains]")
{
    auto two = fixtures::two_point(1);
    CHECK(points_of(enumerate_frames(two, 2, Rational(2))) == std::vector<std::vector<std::size_t>>{{0, 1, 0}, {1, 0, 1}});

    auto x = fixtures::c4();
    auto frames = enumerate_frames(x, 2, Rational(2));
    std::size_t deg1 = 0, deg2 = 0;
    for (const auto& f : frames) {
        deg1 += f.degree() == 1;
        deg2 += f.degree() == 2;
    }
    CHECK(deg1 == 4);
    CHECK(deg2 == 8);
    CHECK(frames.size() == 12);

    auto zero = enumerate_frames(x, 3, Rational(0));
    CHECK(zero.size() == 4);
    for (const auto& f : zero)
        CHECK(f.degree() == 0);

    std::mt19937 rng(131);
    for (int trial = 0; trial < 6; ++trial) {
        auto y = fixtures::random_rational_space(rng, 4);
        for (std::size_t m = 0; m <= 3; ++m)
            for (const auto& l : chain_lengths(y, m, Rational(2) * y.diameter())) {
                std::vector<std::vector<std::size_t>> brute;
                for (const auto& t : oracle::brute_chains(y, m, l))
                    if (oracle::frame_by_deletion(y, t) == t)
                        brute.push_back(t);
                std::vector<std::vector<std::size_t>> got;
                for (const auto& f : enumerate_frames(y, m, l))
                    if (f.degree() == m)
                        got.push_back(f.points);
                CHECK(got == brute);
            }
    }
}

TEST_CASE("thin frames", "[chains]")
{
    auto two = fixtures::two_point(Rational(3, 2));
    for (std::size_t k = 1; k <= 4; ++k)
        CHECK(enumerate_thin_frames(two, k, Rational(3, 2) * k).size() == 2);

    auto p3 = fixtures::path(3);
    CHECK(points_of(enumerate_thin_frames(p3, 2, Rational(2)))
          == std::vector<std::vector<std::size_t>>{{0, 1, 0}, {1, 0, 1}, {1, 2, 1}, {2, 1, 2}});
    // (0,2) has the nonempty interval {1}
    for (const auto& f : enumerate_thin_frames(p3, 1, Rational(2)))
        CHECK(f.points != std::vector<std::size_t>{0, 2});
    CHECK(enumerate_thin_frames(fixtures::cycle(5), 2, Rational(2)).size() == 10);
}

TEST_CASE("frame stability and length preservation under smooth deletions", "[chains][property]")
{
    std::mt19937 rng(137);
    for (int trial = 0; trial < 8; ++trial) {
        auto x = fixtures::random_rational_space(rng, 3 + static_cast<std::size_t>(trial % 3));
        for (std::size_t n = 2; n <= 5; ++n)
            for (const auto& l : chain_lengths(x, n, Rational(3, 2) * x.diameter()))
                for (const auto& c : enumerate_proper_chains(x, n, l)) {
                    if (!is_geodesically_simple(x, c))
                        continue;
                    auto kinds = classify_points(x, c);
                    auto f = frame_of(x, c);
                    std::vector<std::size_t> smooth;
                    for (std::size_t i = 0; i < kinds.size(); ++i)
                        if (kinds[i] == PointKind::smooth)
                            smooth.push_back(i);
                    for (std::size_t mask = 1; mask < (std::size_t{1} << smooth.size()); ++mask) {
                        std::vector<std::size_t> pts;
                        std::size_t s = 0;
                        for (std::size_t i = 0; i < c.points.size(); ++i) {
                            if (s < smooth.size() && smooth[s] == i) {
                                if (!(mask >> s & 1))
                                    pts.push_back(c.points[i]);
                                ++s;
                                continue;
                            }
                            pts.push_back(c.points[i]);
                        }
                        CHECK(chain_length(x, std::span<const std::size_t>(pts)) == c.length);
                        if (std::popcount(mask) == 1) {
                            auto d = make_chain(x, pts);
                            CHECK(is_geodesically_simple(x, d));
                            CHECK(frame_of(x, d).points == f.points);
                        }
                    }
                }
    }
}

TEST_CASE("two-point frame membership is decided by the endpoints", "[chains][property]")
{
    std::mt19937 rng(139);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = fixtures::random_rational_space(rng, 5);
        for (std::size_t a = 0; a < x.size(); ++a)
            for (std::size_t b = 0; b < x.size(); ++b) {
                if (a == b)
                    continue;
                auto f = make_chain(x, {a, b});
                const Rational l = x.d(a, b);
                for (std::size_t n = 1; n <= 4; ++n) {
                    std::set<std::vector<std::size_t>> framed;
                    for (const auto& c : enumerate_framed_chains(x, f, n))
                        framed.insert(c.points);
                    for (const auto& c : enumerate_proper_chains(x, n, l)) {
                        const bool ends = c.points.front() == a && c.points.back() == b;
                        CHECK(framed.count(c.points) == static_cast<std::size_t>(ends));
                        for (std::size_t i = 1; i + 1 < c.points.size(); ++i) {
                            if (!x.is_strictly_between(c.points[i - 1], c.points[i], c.points[i + 1]))
                                continue;
                            auto face = c.points;
                            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                            auto sub = make_chain(x, face);
                            CHECK((frame_of(x, sub).points == f.points) == ends);
                        }
                    }
                }
            }
    }
}
