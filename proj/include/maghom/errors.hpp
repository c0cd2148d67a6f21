#ifndef MAGHOM_ERRORS_HPP
#define MAGHOM_ERRORS_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace maghom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Axiom { shape, identity, symmetry, positivity, triangle };

inline const char* axiom_name(Axiom a)
{
    switch (a) {
    case Axiom::shape: return "shape";
    case Axiom::identity: return "identity";
    case Axiom::symmetry: return "symmetry";
    case Axiom::positivity: return "positivity";
    case Axiom::triangle: return "triangle";
    }
    return "unknown";
}

/// A candidate distance matrix breaks a metric axiom. `witness` holds the
/// offending indices (one, two or three of them depending on the axiom).
class AxiomViolation : public Error {
public:
    AxiomViolation(Axiom axiom, std::vector<std::size_t> witness, const std::string& detail)
        : Error(std::string("metric axiom violated (") + axiom_name(axiom) + "): " + detail)
        , axiom_(axiom)
        , witness_(std::move(witness))
    {
    }

    Axiom axiom() const noexcept { return axiom_; }
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }

private:
    Axiom axiom_;
    std::vector<std::size_t> witness_;
};

class DegenerateEndpoints : public Error {
public:
    DegenerateEndpoints() : Error("interval endpoints must be distinct") {}
};

class DisconnectedGraph : public Error {
public:
    explicit DisconnectedGraph(std::vector<std::vector<std::size_t>> components)
        : Error("graph is disconnected (" + std::to_string(components.size()) + " components)")
        , components_(std::move(components))
    {
    }
    const std::vector<std::vector<std::size_t>>& components() const noexcept { return components_; }

private:
    std::vector<std::vector<std::size_t>> components_;
};

class DuplicatePoints : public Error {
public:
    DuplicatePoints(std::size_t i, std::size_t j)
        : Error("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide within tolerance")
        , pair_{i, j}
    {
    }
    std::array<std::size_t, 2> pair() const noexcept { return pair_; }

private:
    std::array<std::size_t, 2> pair_;
};

class NotAFrame : public Error {
public:
    NotAFrame() : Error("chain is not a frame (some interior point is smooth)") {}
};

class NotATwoPointFrame : public Error {
public:
    NotATwoPointFrame() : Error("expected a frame with exactly two points") {}
};

class DegreeOutOfRange : public Error {
public:
    DegreeOutOfRange(int n, int lo, int hi)
        : Error("degree " + std::to_string(n) + " outside complex range [" + std::to_string(lo) + ", "
                + std::to_string(hi) + "]")
    {
    }
};

class PreconditionFailed : public Error {
public:
    enum class Reason { not_geodetic, grading_too_large, grading_not_positive };

    explicit PreconditionFailed(Reason r) : Error(describe(r)), reason_(r) {}
    Reason reason() const noexcept { return reason_; }

private:
    static std::string describe(Reason r)
    {
        switch (r) {
        case Reason::not_geodetic: return "space is not geodetic";
        case Reason::grading_too_large: return "grading is not below the minimal 4-cut length";
        case Reason::grading_not_positive: return "grading must be positive";
        }
        return "precondition failed";
    }
    Reason reason_;
};

class NotRanked : public Error {
public:
    NotRanked() : Error("poset is not ranked (maximal chains differ in length)") {}
};

class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace maghom

#endif // MAGHOM_ERRORS_HPP
