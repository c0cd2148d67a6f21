#ifndef MAGHOM_IO_HPP
#define MAGHOM_IO_HPP

#include "maghom/engine.hpp"
#include "maghom/errors.hpp"
#include "maghom/integer.hpp"
#include "maghom/metric.hpp"
#include "maghom/poset.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace maghom {

using Json = nlohmann::ordered_json;

enum class InputFormat { matrix, graph, points, poset, facets };

inline InputFormat parse_input_format(const std::string& s)
{
    static const std::map<std::string, InputFormat> names{{"matrix", InputFormat::matrix},
                                                          {"graph", InputFormat::graph},
                                                          {"points", InputFormat::points},
                                                          {"poset", InputFormat::poset},
                                                          {"facets", InputFormat::facets}};
    auto it = names.find(s);
    if (it == names.end())
        throw FormatError("unknown input format '" + s + "'");
    return it->second;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

/// Non-blank lines with '#' comments stripped.
inline std::vector<std::vector<std::string>> token_lines(std::istream& in)
{
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto toks = split_ws(line);
        if (!toks.empty())
            out.push_back(std::move(toks));
    }
    return out;
}

inline Json parse_json(std::istream& in)
{
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

inline Rational json_rational(const Json& v)
{
    try {
        if (v.is_string())
            return parse_rational(v.get<std::string>());
        if (v.is_number_integer())
            return Rational(v.get<long long>());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    throw FormatError("distance entries must be integers or \"p/q\" strings, got " + v.dump());
}

inline std::vector<std::string> json_labels(const Json& doc, const char* key)
{
    std::vector<std::string> labels;
    if (!doc.contains(key))
        return labels;
    if (!doc[key].is_array())
        throw FormatError(std::string("\"") + key + "\" must be an array");
    for (const auto& l : doc[key])
        labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    return labels;
}

} // namespace detail

/// {"labels": [...], "matrix": [["0", "3/2"], ...]}; labels are optional.
inline MetricSpace<Rational> read_matrix(std::istream& in)
{
    Json doc = detail::parse_json(in);
    if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array())
        throw FormatError("matrix file needs a \"matrix\" array");
    std::vector<std::vector<Rational>> m;
    for (const auto& row : doc["matrix"]) {
        if (!row.is_array())
            throw FormatError("matrix rows must be arrays");
        auto& r = m.emplace_back();
        for (const auto& v : row)
            r.push_back(detail::json_rational(v));
    }
    return validate_metric<Rational>(detail::json_labels(doc, "labels"), std::move(m));
}

/// Edge list "u v [w]"; vertices are numbered in order of first appearance.
inline Graph read_graph(std::istream& in)
{
    Graph g;
    std::map<std::string, std::size_t> index;
    auto vertex = [&](const std::string& name) {
        auto [it, fresh] = index.emplace(name, g.labels.size());
        if (fresh)
            g.labels.push_back(name);
        return it->second;
    };
    for (const auto& toks : detail::token_lines(in)) {
        if (toks.size() != 2 && toks.size() != 3)
            throw FormatError("edge line must be \"u v [w]\"");
        WeightedEdge e{vertex(toks[0]), vertex(toks[1]), 1};
        if (toks.size() == 3) {
            try {
                e.weight = parse_rational(toks[2]);
            } catch (const std::invalid_argument& ex) {
                throw FormatError(ex.what());
            }
        }
        g.edges.push_back(std::move(e));
    }
    return g;
}

inline std::vector<std::vector<double>> read_points(std::istream& in)
{
    std::vector<std::vector<double>> pts;
    for (const auto& toks : detail::token_lines(in)) {
        auto& p = pts.emplace_back();
        for (const auto& t : toks) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(t, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != t.size())
                throw FormatError("bad coordinate '" + t + "'");
            p.push_back(v);
        }
        if (p.size() != pts.front().size())
            throw FormatError("points must all have the same dimension");
    }
    return pts;
}

/// {"elements": [...], "covers": [[i, j], ...]} with i covered by j.
inline Poset read_poset(std::istream& in)
{
    Json doc = detail::parse_json(in);
    if (!doc.is_object() || !doc.contains("elements"))
        throw FormatError("poset file needs an \"elements\" array");
    auto labels = detail::json_labels(doc, "elements");
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    if (doc.contains("covers")) {
        for (const auto& c : doc["covers"]) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned())
                throw FormatError("covers must be pairs of element indices");
            rel.emplace_back(c[0].get<std::size_t>(), c[1].get<std::size_t>());
        }
    }
    try {
        return Poset::from_relations(std::move(labels), rel);
    } catch (const std::logic_error& e) {
        throw FormatError(e.what());
    }
}

/// One facet per line as vertex labels.
inline SimplicialComplexFacets read_facets(std::istream& in)
{
    SimplicialComplexFacets k;
    std::map<std::string, std::size_t> index;
    for (const auto& toks : detail::token_lines(in)) {
        auto& f = k.facets.emplace_back();
        for (const auto& t : toks) {
            auto [it, fresh] = index.emplace(t, k.vertices.size());
            if (fresh)
                k.vertices.push_back(t);
            f.push_back(it->second);
        }
    }
    return k;
}

/// Space given as a Hasse-diagram metric of P̂, or a plain metric space.
using AnySpace = std::variant<MetricSpace<Rational>, MetricSpace<double>>;

struct RunConfig {
    std::string command;
    std::string input;
    InputFormat format = InputFormat::matrix;
    std::optional<std::size_t> degree;
    std::vector<std::size_t> degrees;
    std::optional<std::string> grading;
    bool scan = false;
    std::optional<std::string> lmax;
    double eps = 1e-9;
    bool json = false;
    std::size_t jobs = 1;
};

inline std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open '" + path + "'");
    return in;
}

/// Format implied by the file name; JSON files holding "elements" are posets.
inline InputFormat guess_input_format(const std::string& path)
{
    const auto ext = std::filesystem::path(path).extension().string();
    if (ext == ".edges" || ext == ".graph")
        return InputFormat::graph;
    if (ext == ".pts" || ext == ".points")
        return InputFormat::points;
    if (ext == ".facets")
        return InputFormat::facets;
    if (ext == ".json") {
        auto in = open_input(path);
        Json j = Json::parse(in, nullptr, false);
        if (j.is_object() && j.contains("elements"))
            return InputFormat::poset;
    }
    return InputFormat::matrix;
}

inline Poset load_poset(const RunConfig& cfg)
{
    auto in = open_input(cfg.input);
    if (cfg.format == InputFormat::poset)
        return read_poset(in);
    if (cfg.format == InputFormat::facets) {
        try {
            return face_poset(read_facets(in));
        } catch (const std::logic_error& e) {
            throw FormatError(e.what());
        }
    }
    throw FormatError("expected a poset or facets input");
}

/// Poset inputs become the Hasse-diagram metric of P̂.
inline AnySpace load_space(const RunConfig& cfg)
{
    switch (cfg.format) {
    case InputFormat::matrix: {
        auto in = open_input(cfg.input);
        return read_matrix(in);
    }
    case InputFormat::graph: {
        auto in = open_input(cfg.input);
        return graph_metric(read_graph(in));
    }
    case InputFormat::points: {
        if (!(cfg.eps > 0))
            throw FormatError("--eps must be positive for point clouds");
        auto in = open_input(cfg.input);
        return euclidean_metric(read_points(in), cfg.eps);
    }
    case InputFormat::poset:
    case InputFormat::facets: return graph_metric(hasse_graph(adjoin_bounds(load_poset(cfg))));
    }
    throw FormatError("unsupported format");
}

template <Length T>
T parse_length(const std::string& s);

template <>
inline Rational parse_length<Rational>(const std::string& s)
{
    try {
        return parse_rational(s);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

template <>
inline double parse_length<double>(const std::string& s)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size())
        throw FormatError("bad length '" + s + "'");
    return v;
}

template <Length T>
std::string fmt_length(const T& v)
{
    return LengthTraits<T>::format(v);
}

inline Json group_json(const AbelianGroupInvariants& g)
{
    Json t = Json::array();
    for (const auto& d : g.torsion)
        t.push_back(d.str());
    return Json{{"free_rank", g.free_rank}, {"torsion", t}, {"group", g.to_string()}};
}

/// Torsion column for tables: "2,4" or "-".
inline std::string torsion_cell(const AbelianGroupInvariants& g)
{
    if (g.torsion.empty())
        return "-";
    std::string s;
    for (std::size_t i = 0; i < g.torsion.size(); ++i)
        s += (i ? "," : "") + g.torsion[i].str();
    return s;
}

template <Length T>
Json chain_json(const MetricSpace<T>& x, const ProperChain<T>& c)
{
    Json pts = Json::array();
    for (auto p : c.points)
        pts.push_back(x.label(p));
    return pts;
}

template <Length T>
Json space_json(const MetricSpace<T>& x)
{
    Json m = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < x.size(); ++j)
            row.push_back(fmt_length(x.d(i, j)));
        m.push_back(row);
    }
    return Json{{"labels", x.labels()}, {"matrix", m}};
}

inline Json complex_to_json(const ChainComplexZ& c)
{
    Json degrees = Json::array();
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
        Json trip = Json::array();
        for (const auto& e : c.boundary(n).entries())
            trip.push_back(Json::array({e.row, e.col, e.value.str()}));
        degrees.push_back(Json{{"degree", n}, {"basis", c.basis(n)}, {"boundary", trip}});
    }
    return Json{{"min_degree", c.min_degree()}, {"degrees", degrees}};
}

/// Space summary: the report printed by `validate`.
template <Length T>
Json validate_report(const MetricSpace<T>& x, const T& bound)
{
    Json grads = Json::array();
    for (const auto& l : achievable_gradings(x, bound))
        grads.push_back(fmt_length(l));
    Json r{{"command", "validate"}, {"valid", true}, {"points", x.size()}};
    r["approximate"] = x.approximate();
    r["m_X"] = min_four_cut_length(x).to_string();
    r["h_X"] = fmt_length(hole_diameter(x));
    r["geodetic"] = is_geodetic(x);
    r["diameter"] = fmt_length(x.diameter());
    r["grading_bound"] = fmt_length(bound);
    r["achievable_gradings"] = grads;
    r["space"] = space_json(x);
    return r;
}

template <Length T>
void print_validate_table(const Json& r, std::ostream& out)
{
    out << "points      " << r["points"].get<std::size_t>() << '\n';
    out << "m_X         " << r["m_X"].get<std::string>() << '\n';
    out << "h_X         " << r["h_X"].get<std::string>() << '\n';
    out << "geodetic    " << (r["geodetic"].get<bool>() ? "true" : "false") << '\n';
    out << "diameter    " << r["diameter"].get<std::string>() << '\n';
    out << "gradings    ";
    bool first = true;
    for (const auto& g : r["achievable_gradings"]) {
        out << (first ? "" : " ") << g.get<std::string>();
        first = false;
    }
    out << "  (<= " << r["grading_bound"].get<std::string>() << ")\n";
}

template <Length T>
Json homology_rows_json(const std::vector<HomologyRow<T>>& rows)
{
    Json a = Json::array();
    for (const auto& row : rows) {
        Json j{{"n", row.degree}, {"ell", fmt_length(row.grading)}};
        j.update(group_json(row.group));
        a.push_back(j);
    }
    return a;
}

template <Length T>
void print_homology_table(const std::vector<HomologyRow<T>>& rows, std::ostream& out)
{
    out << std::left << std::setw(4) << "n" << std::setw(12) << "ell" << std::setw(8) << "free" << std::setw(12)
        << "torsion" << "group\n";
    for (const auto& row : rows)
        out << std::setw(4) << row.degree << std::setw(12) << fmt_length(row.grading) << std::setw(8)
            << row.group.free_rank << std::setw(12) << torsion_cell(row.group) << row.group.to_string() << '\n';
}

template <Length T>
Json decomposition_json(const MetricSpace<T>& x, const DecompositionReport<T>& r)
{
    Json frames = Json::array();
    for (const auto& f : r.frames) {
        Json gaps = Json::array();
        for (auto g : f.gaps)
            gaps.push_back(gap_kind_name(g));
        Json j{{"frame", chain_json(x, f.frame)}, {"gaps", gaps}};
        j.update(group_json(f.homology));
        frames.push_back(j);
    }
    Json out{{"command", "decompose"},
             {"n", r.degree},
             {"ell", fmt_length(r.grading)},
             {"validity", validity_name(r.validity)},
             {"frames", frames},
             {"total", group_json(r.total)}};
    if (r.direct)
        out["direct"] = group_json(*r.direct);
    return out;
}

template <Length T>
void print_decomposition_table(const MetricSpace<T>& x, const DecompositionReport<T>& r, std::ostream& out)
{
    out << "n=" << r.degree << " ell=" << fmt_length(r.grading) << " validity=" << validity_name(r.validity) << '\n';
    for (const auto& f : r.frames) {
        std::string gaps;
        for (std::size_t i = 0; i < f.gaps.size(); ++i)
            gaps += (i ? "," : "") + std::string(gap_kind_name(f.gaps[i]));
        out << std::left << std::setw(24) << chain_label(x, f.frame.points) << std::setw(36)
            << (gaps.empty() ? "-" : gaps) << f.homology.to_string() << '\n';
    }
    out << "total  " << r.total.to_string() << '\n';
    if (r.direct)
        out << "direct " << r.direct->to_string() << '\n';
}

inline Json poset_json(const PosetPipelineReport& r)
{
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"n", row.degree},
                            {"order_homology", group_json(row.order_homology)},
                            {"magnitude", group_json(row.magnitude)},
                            {"framed", group_json(row.embedding.framed)},
                            {"embeds", row.embedding.embeds()}});
    Json elements = Json::array();
    Json covers = Json::array();
    for (const auto& l : r.poset.labels())
        elements.push_back(l);
    for (auto [i, j] : r.poset.covers())
        covers.push_back(Json::array({i, j}));
    return Json{{"command", "poset"},
                {"elements", r.poset.size()},
                {"rank", r.rank.total_rank},
                {"bounded_elements", r.bounded.size()},
                {"ell", fmt_length(r.grading)},
                {"rows", rows},
                {"poset", Json{{"elements", elements}, {"covers", covers}}}};
}

inline void print_poset_table(const PosetPipelineReport& r, std::ostream& out)
{
    out << "elements " << r.poset.size() << ", rank " << r.rank.total_rank << ", bounded " << r.bounded.size()
        << ", ell " << fmt_length(r.grading) << '\n';
    out << std::left << std::setw(4) << "n" << std::setw(20) << "order(n-2)" << std::setw(20) << "magnitude"
        << std::setw(20) << "framed" << "embeds\n";
    for (const auto& row : r.rows)
        out << std::setw(4) << row.degree << std::setw(20) << row.order_homology.to_string() << std::setw(20)
            << row.magnitude.to_string() << std::setw(20) << row.embedding.framed.to_string()
            << (row.embedding.embeds() ? "yes" : "no") << '\n';
}

template <Length T>
Json crossvalidation_json(const CrossValidationTable<T>& t)
{
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json j{{"n", row.degree}, {"ell", fmt_length(row.grading)}, {"applicable", row.applicable}};
        j["direct"] = group_json(row.direct);
        if (row.per_frame)
            j["per_frame"] = group_json(*row.per_frame);
        if (row.kunneth)
            j["kunneth"] = group_json(*row.kunneth);
        j["pass"] = row.pass;
        if (!row.pass)
            j["witness"] = row.witness;
        rows.push_back(j);
    }
    Json out{{"command", "crossvalidate"}, {"pass", t.all_pass}, {"rows", rows}};
    if (t.first_failure)
        out["first_failure"] = *t.first_failure;
    return out;
}

template <Length T>
void print_crossvalidation_table(const CrossValidationTable<T>& t, std::ostream& out)
{
    out << std::left << std::setw(4) << "n" << std::setw(12) << "ell" << std::setw(16) << "direct" << std::setw(16)
        << "per-frame" << std::setw(16) << "kunneth" << "status\n";
    for (const auto& row : t.rows)
        out << std::setw(4) << row.degree << std::setw(12) << fmt_length(row.grading) << std::setw(16)
            << row.direct.to_string() << std::setw(16) << (row.per_frame ? row.per_frame->to_string() : "n/a")
            << std::setw(16) << (row.kunneth ? row.kunneth->to_string() : "n/a")
            << (!row.applicable ? "skip" : row.pass ? "ok" : "FAIL") << '\n';
    out << (t.all_pass ? "all comparisons agree" : "MISMATCH: " + t.first_failure.value_or("")) << '\n';
}

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_mismatch = 2, exit_io = 3 };

namespace detail {

template <Length T>
T grading_bound(const MetricSpace<T>& x, const RunConfig& cfg, std::size_t degree)
{
    if (cfg.lmax)
        return parse_length<T>(*cfg.lmax);
    return T(static_cast<long>(degree + 2)) * x.diameter();
}

template <Length T>
int validate_space(const MetricSpace<T>& x, const RunConfig& cfg, std::ostream& out)
{
    auto r = validate_report(x, grading_bound(x, cfg, 0));
    if (cfg.json)
        out << r.dump(2) << '\n';
    else
        print_validate_table<T>(r, out);
    return exit_ok;
}

template <Length T>
int homology_space(const MetricSpace<T>& x, const RunConfig& cfg, std::ostream& out)
{
    const std::size_t n = cfg.degree.value_or(cfg.scan ? 3 : 1);
    std::vector<T> gradings;
    if (cfg.scan) {
        gradings = achievable_gradings(x, grading_bound(x, cfg, n), n);
    } else {
        if (!cfg.grading)
            throw FormatError("homology needs --ell (or --scan)");
        gradings.push_back(parse_length<T>(*cfg.grading));
    }
    auto rows = magnitude_homology_scan(x, n, gradings, cfg.jobs);
    if (!cfg.scan)
        rows = {rows.back()};
    if (cfg.json)
        out << Json{{"command", "homology"}, {"rows", homology_rows_json(rows)}}.dump(2) << '\n';
    else
        print_homology_table(rows, out);
    return exit_ok;
}

template <Length T>
int decompose_space(const MetricSpace<T>& x, const RunConfig& cfg, std::ostream& out)
{
    if (!cfg.degree || !cfg.grading)
        throw FormatError("decompose needs --n and --ell");
    auto r = decompose_by_frames(x, *cfg.degree, parse_length<T>(*cfg.grading), cfg.jobs);
    if (cfg.json)
        out << decomposition_json(x, r).dump(2) << '\n';
    else
        print_decomposition_table(x, r, out);
    return exit_ok;
}

template <Length T>
int crossvalidate_space(const MetricSpace<T>& x, const RunConfig& cfg, std::ostream& out)
{
    const std::size_t n = cfg.degree.value_or(3);
    auto gradings = achievable_gradings(x, grading_bound(x, cfg, n), n);
    auto t = cross_validate(x, n, gradings, cfg.jobs);
    if (cfg.json)
        out << crossvalidation_json(t).dump(2) << '\n';
    else
        print_crossvalidation_table(t, out);
    return t.all_pass ? exit_ok : exit_mismatch;
}

} // namespace detail

inline int run_validate(const RunConfig& cfg, std::ostream& out)
{
    return std::visit([&](const auto& x) { return detail::validate_space(x, cfg, out); }, load_space(cfg));
}

inline int run_homology(const RunConfig& cfg, std::ostream& out)
{
    return std::visit([&](const auto& x) { return detail::homology_space(x, cfg, out); }, load_space(cfg));
}

inline int run_decompose(const RunConfig& cfg, std::ostream& out)
{
    return std::visit([&](const auto& x) { return detail::decompose_space(x, cfg, out); }, load_space(cfg));
}

inline int run_crossvalidate(const RunConfig& cfg, std::ostream& out)
{
    return std::visit([&](const auto& x) { return detail::crossvalidate_space(x, cfg, out); }, load_space(cfg));
}

/// Degrees default to 0 .. rank + 3, which covers n - 2 up to the top of Δ(P).
inline int run_poset(const RunConfig& cfg, std::ostream& out)
{
    Poset p = load_poset(cfg);
    auto degrees = cfg.degrees;
    if (degrees.empty()) {
        auto ranked = is_ranked(p);
        if (!ranked)
            throw NotRanked();
        for (int n = 0; n <= ranked->total_rank + 3; ++n)
            degrees.push_back(static_cast<std::size_t>(n));
    }
    auto r = poset_magnitude_pipeline(p, degrees, cfg.jobs);
    if (cfg.json)
        out << poset_json(r).dump(2) << '\n';
    else
        print_poset_table(r, out);
    return exit_ok;
}

/// Dispatches on cfg.command and maps library errors to exit codes; the
/// diagnostic goes to `err`.
inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.command == "validate")
            return run_validate(cfg, out);
        if (cfg.command == "homology")
            return run_homology(cfg, out);
        if (cfg.command == "decompose")
            return run_decompose(cfg, out);
        if (cfg.command == "poset")
            return run_poset(cfg, out);
        if (cfg.command == "crossvalidate")
            return run_crossvalidate(cfg, out);
        throw FormatError("unknown command '" + cfg.command + "'");
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const AxiomViolation& e) {
        if (cfg.json) {
            Json w = Json::array();
            for (auto i : e.witness())
                w.push_back(i);
            out << Json{{"command", cfg.command},
                        {"valid", false},
                        {"axiom", axiom_name(e.axiom())},
                        {"witness", w},
                        {"message", e.what()}}
                       .dump(2)
                << '\n';
        }
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
}

} // namespace maghom

#endif // MAGHOM_IO_HPP
