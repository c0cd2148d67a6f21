#ifndef MAGHOM_HOMOLOGY_HPP
#define MAGHOM_HOMOLOGY_HPP

#include "maghom/chain_complex.hpp"
#include "maghom/snf.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace maghom {

/// A finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_t in
/// invariant-factor form (d_i >= 2, d_1 | d_2 | ...). Structural equality is
/// group isomorphism.
struct AbelianGroupInvariants {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    /// Canonical form of Z^free + (+)_i Z/orders[i]; orders equal to 0 count as free, 1 as trivial.
    static AbelianGroupInvariants from_cyclic(std::size_t free, const std::vector<Integer>& orders)
    {
        AbelianGroupInvariants g;
        g.free_rank = free;
        std::vector<Integer> finite;
        for (const auto& o : orders) {
            if (o == 0)
                ++g.free_rank;
            else
                finite.push_back(o);
        }
        for (auto& f : canonical_invariant_factors(std::move(finite)))
            if (f != 1)
                g.torsion.push_back(std::move(f));
        return g;
    }

    static AbelianGroupInvariants free(std::size_t rank) { return AbelianGroupInvariants{rank, {}}; }

    bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
    bool has_torsion() const noexcept { return !torsion.empty(); }

    std::string to_string() const
    {
        if (is_trivial())
            return "0";
        std::string s;
        if (free_rank > 0)
            s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
        for (const auto& t : torsion) {
            if (!s.empty())
                s += " + ";
            s += "Z/" + t.str();
        }
        return s;
    }

    friend bool operator==(const AbelianGroupInvariants&, const AbelianGroupInvariants&) = default;
};

inline AbelianGroupInvariants direct_sum(const AbelianGroupInvariants& a, const AbelianGroupInvariants& b)
{
    std::vector<Integer> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return AbelianGroupInvariants::from_cyclic(a.free_rank + b.free_rank, orders);
}

/// A (x) B: free x free is free, free x Z/d gives copies of Z/d, Z/d x Z/e is Z/gcd(d, e).
inline AbelianGroupInvariants tensor_product(const AbelianGroupInvariants& a, const AbelianGroupInvariants& b)
{
    std::vector<Integer> orders;
    for (std::size_t i = 0; i < a.free_rank; ++i)
        orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    for (std::size_t i = 0; i < b.free_rank; ++i)
        orders.insert(orders.end(), a.torsion.begin(), a.torsion.end());
    for (const auto& d : a.torsion)
        for (const auto& e : b.torsion)
            orders.push_back(boost::multiprecision::gcd(d, e));
    return AbelianGroupInvariants::from_cyclic(a.free_rank * b.free_rank, orders);
}

/// Tor_1(A, B): only torsion pairs contribute, each as Z/gcd(d, e).
inline AbelianGroupInvariants tor1(const AbelianGroupInvariants& a, const AbelianGroupInvariants& b)
{
    std::vector<Integer> orders;
    for (const auto& d : a.torsion)
        for (const auto& e : b.torsion)
            orders.push_back(boost::multiprecision::gcd(d, e));
    return AbelianGroupInvariants::from_cyclic(0, orders);
}

using HomologyTable = std::map<int, AbelianGroupInvariants>;

namespace detail {

inline AbelianGroupInvariants homology_from_snf(std::size_t dim, const SNFResult& out_bd, const SNFResult& in_bd)
{
    std::size_t free = dim - out_bd.rank() - in_bd.rank();
    return AbelianGroupInvariants::from_cyclic(free, in_bd.factors);
}

} // namespace detail

/// H_n(C) = ker d_n / im d_{n+1}.
inline AbelianGroupInvariants homology(const ChainComplexZ& c, int n)
{
    if (!c.in_range(n))
        throw DegreeOutOfRange(n, c.min_degree(), c.max_degree());
    auto out_bd = smith_normal_form(c.boundary(n));
    auto in_bd = smith_normal_form(c.boundary(n + 1));
    return detail::homology_from_snf(c.rank(n), out_bd, in_bd);
}

/// Homology in every degree of the stored range; each boundary is reduced once.
inline HomologyTable homology_all(const ChainComplexZ& c)
{
    HomologyTable table;
    if (c.max_degree() < c.min_degree())
        return table;
    std::vector<SNFResult> snf;
    for (int n = c.min_degree(); n <= c.max_degree() + 1; ++n)
        snf.push_back(smith_normal_form(c.boundary(n)));
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
        auto k = static_cast<std::size_t>(n - c.min_degree());
        table[n] = detail::homology_from_snf(c.rank(n), snf[k], snf[k + 1]);
    }
    return table;
}

/// Homology of a tensor product of free complexes from the factors' homology:
/// sum over p+q=n of H_p (x) H_q, plus sum over p+q=n-1 of Tor_1(H_p, H_q).
/// Degrees missing from a table are zero groups.
inline AbelianGroupInvariants kunneth_assemble(const HomologyTable& left, const HomologyTable& right, int n)
{
    AbelianGroupInvariants total;
    for (const auto& [p, hp] : left) {
        if (auto it = right.find(n - p); it != right.end())
            total = direct_sum(total, tensor_product(hp, it->second));
        if (auto it = right.find(n - 1 - p); it != right.end())
            total = direct_sum(total, tor1(hp, it->second));
    }
    return total;
}

} // namespace maghom

#endif // MAGHOM_HOMOLOGY_HPP
