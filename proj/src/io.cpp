#include "graphcorr/io.hpp"

#include <string>
#include <vector>

namespace graphcorr::io {

namespace {

constexpr int kVersion = 1;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParseError(path.empty() ? message : path + ": " + message);
}

const Json& field(const Json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

std::string string_at(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::size_t count_at(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned()) fail(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

Complex complex_at(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "expected a complex scalar as a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

ComplexMatrix matrix_at(const Json& j, const std::string& path, std::size_t rows,
                        std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        fail(path, "expected " + std::to_string(rows) + " rows");
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j[r];
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != cols)
            fail(row_path, "expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = complex_at(row[c], row_path + "[" + std::to_string(c) + "]");
    }
    if (!m.all_finite()) fail(path, "non-finite entries");
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

VertexSet vertices_at(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty list of vertex labels");
    std::vector<std::string> labels;
    labels.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        labels.push_back(string_at(j[i], path + "[" + std::to_string(i) + "]"));
    try {
        return VertexSet(std::move(labels));
    } catch (const ShapeError& e) {
        fail(path, e.what());
    }
}

std::vector<ComplexMatrix> matrix_family_at(const Json& j, const std::string& path,
                                            std::size_t vertex_count, std::size_t dim) {
    if (!j.is_array() || j.size() != vertex_count)
        fail(path, "expected one matrix per vertex, in vertex order");
    std::vector<ComplexMatrix> family;
    family.reserve(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v)
        family.push_back(matrix_at(j[v], path + "[" + std::to_string(v) + "]", dim, dim));
    return family;
}

DirectedGraph graph_from_json(const Json& j, const std::string& path) {
    VertexSet vertices = vertices_at(field(j, path, "vertices"), path + ".vertices");
    const Json& edges_json = field(j, path, "edges");
    const std::string edges_path = path + ".edges";
    if (!edges_json.is_array()) fail(edges_path, "expected a list of edges");
    std::vector<Edge> edges;
    edges.reserve(edges_json.size());
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        const std::string edge_path = edges_path + "[" + std::to_string(i) + "]";
        const Json& e = edges_json[i];
        edges.push_back({string_at(field(e, edge_path, "id"), edge_path + ".id"),
                         string_at(field(e, edge_path, "range"), edge_path + ".range"),
                         string_at(field(e, edge_path, "source"), edge_path + ".source")});
    }
    try {
        return DirectedGraph(std::move(vertices), std::move(edges));
    } catch (const ShapeError& e) {
        fail(path, e.what());
    }
}

Correspondence correspondence_from_json(const Json& j, const std::string& path) {
    VertexSet vertices = vertices_at(field(j, path, "vertices"), path + ".vertices");
    const std::size_t dim = count_at(field(j, path, "dim"), path + ".dim");
    std::vector<std::string> tags;
    if (j.contains("generator_tags")) {
        const Json& t = j["generator_tags"];
        const std::string tags_path = path + ".generator_tags";
        if (!t.is_array()) fail(tags_path, "expected a list of tags");
        for (std::size_t i = 0; i < t.size(); ++i)
            tags.push_back(string_at(t[i], tags_path + "[" + std::to_string(i) + "]"));
    }
    auto gram = matrix_family_at(field(j, path, "gram"), path + ".gram", vertices.size(), dim);
    auto right = matrix_family_at(field(j, path, "right_action"), path + ".right_action",
                                  vertices.size(), dim);
    auto left = matrix_family_at(field(j, path, "left_action"), path + ".left_action",
                                 vertices.size(), dim);
    try {
        return Correspondence(std::move(vertices), dim, std::move(gram), std::move(right),
                              std::move(left), std::move(tags));
    } catch (const ShapeError& e) {
        fail(path, e.what());
    }
}

GraphMorphism graph_morphism_from_json(const Json& j, const std::string& path) {
    GraphMorphism phi{graph_from_json(field(j, path, "domain"), path + ".domain"),
                      graph_from_json(field(j, path, "codomain"), path + ".codomain"),
                      {}};
    const Json& map_json = field(j, path, "edge_map");
    const std::string map_path = path + ".edge_map";
    if (!map_json.is_array()) fail(map_path, "expected a list of [from, to] pairs");
    for (std::size_t i = 0; i < map_json.size(); ++i) {
        const Json& pair = map_json[i];
        const std::string pair_path = map_path + "[" + std::to_string(i) + "]";
        if (!pair.is_array() || pair.size() != 2) fail(pair_path, "expected a [from, to] pair");
        const std::string from = string_at(pair[0], pair_path + "[0]");
        if (phi.edge_map.count(from)) fail(pair_path, "duplicate edge '" + from + "'");
        phi.edge_map[from] = string_at(pair[1], pair_path + "[1]");
    }
    return phi;
}

CorrespondenceMorphism correspondence_morphism_from_json(const Json& j, const std::string& path) {
    Correspondence dom = correspondence_from_json(field(j, path, "domain"), path + ".domain");
    Correspondence cod = correspondence_from_json(field(j, path, "codomain"), path + ".codomain");
    ComplexMatrix m = matrix_at(field(j, path, "matrix"), path + ".matrix", cod.dim(), dom.dim());
    try {
        return CorrespondenceMorphism(std::move(dom), std::move(cod), std::move(m));
    } catch (const ShapeError& e) {
        fail(path, e.what());
    }
}

Report report_from_json(const Json& j, const std::string& path) {
    Report report;
    report.subject = string_at(field(j, path, "subject"), path + ".subject");
    const Json& accepted = field(j, path, "accepted");
    if (!accepted.is_boolean()) fail(path + ".accepted", "expected a boolean");
    const Json& checks = field(j, path, "checks");
    const std::string checks_path = path + ".checks";
    if (!checks.is_array()) fail(checks_path, "expected a list of checks");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const Json& cj = checks[i];
        const std::string check_path = checks_path + "[" + std::to_string(i) + "]";
        Check c;
        c.name = string_at(field(cj, check_path, "name"), check_path + ".name");
        const Json& ok = field(cj, check_path, "ok");
        if (!ok.is_boolean()) fail(check_path + ".ok", "expected a boolean");
        c.ok = ok.get<bool>();
        const Json& residual = field(cj, check_path, "residual");
        if (!residual.is_number()) fail(check_path + ".residual", "expected a number");
        c.residual = residual.get<double>();
        if (cj.contains("where")) c.where = string_at(cj["where"], check_path + ".where");
        report.checks.push_back(std::move(c));
    }
    report.accepted = accepted.get<bool>();
    return report;
}

VertexMap vertex_map_from_json(const Json& j, const std::string& path) {
    VertexMap vm;
    vm.vertices = vertices_at(field(j, path, "vertices"), path + ".vertices");
    const Json& map_json = field(j, path, "map");
    const std::string map_path = path + ".map";
    if (!map_json.is_array() || map_json.size() != vm.vertices.size())
        fail(map_path, "expected one [vertex, image] pair per vertex");
    vm.map.assign(vm.vertices.size(), 0);
    std::vector<bool> seen(vm.vertices.size(), false);
    for (std::size_t i = 0; i < map_json.size(); ++i) {
        const Json& pair = map_json[i];
        const std::string pair_path = map_path + "[" + std::to_string(i) + "]";
        if (!pair.is_array() || pair.size() != 2) fail(pair_path, "expected a [vertex, image] pair");
        const std::string from = string_at(pair[0], pair_path + "[0]");
        const std::string to = string_at(pair[1], pair_path + "[1]");
        auto fi = vm.vertices.index_of(from);
        auto ti = vm.vertices.index_of(to);
        if (!fi) fail(pair_path + "[0]", "unknown vertex '" + from + "'");
        if (!ti) fail(pair_path + "[1]", "unknown vertex '" + to + "'");
        if (seen[*fi]) fail(pair_path, "vertex '" + from + "' mapped twice");
        seen[*fi] = true;
        vm.map[*fi] = *ti;
    }
    return vm;
}

Json envelope(const std::string& kind) {
    Json j = Json::object();
    j["kind"] = kind;
    j["version"] = kVersion;
    return j;
}

} // namespace

std::string kind_of(const Document& doc) {
    struct Visitor {
        std::string operator()(const DirectedGraph&) const { return "graph"; }
        std::string operator()(const Correspondence&) const { return "correspondence"; }
        std::string operator()(const GraphMorphism&) const { return "graph_morphism"; }
        std::string operator()(const CorrespondenceMorphism&) const {
            return "correspondence_morphism";
        }
        std::string operator()(const Report&) const { return "report"; }
        std::string operator()(const VertexMap&) const { return "vertex_map"; }
    };
    return std::visit(Visitor{}, doc);
}

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    const std::string kind = string_at(field(j, "", "kind"), "kind");
    const Json& version = field(j, "", "version");
    if (!version.is_number_unsigned() || version.get<int>() != kVersion)
        fail("version", "unsupported document version");

    if (kind == "graph") return graph_from_json(j, "");
    if (kind == "correspondence") return correspondence_from_json(j, "");
    if (kind == "graph_morphism") return graph_morphism_from_json(j, "");
    if (kind == "correspondence_morphism") return correspondence_morphism_from_json(j, "");
    if (kind == "report") return report_from_json(j, "");
    if (kind == "vertex_map") return vertex_map_from_json(j, "");
    fail("kind", "unknown document kind '" + kind + "'");
}

Json to_json(const DirectedGraph& g) {
    Json j = envelope("graph");
    j["vertices"] = g.vertices().labels();
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        Json edge = Json::object();
        edge["id"] = e.id;
        edge["range"] = e.range;
        edge["source"] = e.source;
        edges.push_back(std::move(edge));
    }
    j["edges"] = std::move(edges);
    return j;
}

Json to_json(const Correspondence& x) {
    Json j = envelope("correspondence");
    j["vertices"] = x.vertices().labels();
    j["dim"] = x.dim();
    j["generator_tags"] = x.generator_tags();
    Json gram = Json::array(), right = Json::array(), left = Json::array();
    for (std::size_t v = 0; v < x.vertices().size(); ++v) {
        gram.push_back(matrix_to_json(x.gram(v)));
        right.push_back(matrix_to_json(x.right_action(v)));
        left.push_back(matrix_to_json(x.left_action(v)));
    }
    j["gram"] = std::move(gram);
    j["right_action"] = std::move(right);
    j["left_action"] = std::move(left);
    return j;
}

Json to_json(const GraphMorphism& phi) {
    Json j = envelope("graph_morphism");
    j["domain"] = to_json(phi.domain);
    j["codomain"] = to_json(phi.codomain);
    Json map = Json::array();
    // Domain edge order keeps the serialization canonical.
    for (const auto& e : phi.domain.edges()) {
        auto it = phi.edge_map.find(e.id);
        if (it != phi.edge_map.end()) map.push_back(Json::array({it->first, it->second}));
    }
    for (const auto& [from, to] : phi.edge_map)
        if (!phi.domain.edge_index(from)) map.push_back(Json::array({from, to}));
    j["edge_map"] = std::move(map);
    return j;
}

Json to_json(const CorrespondenceMorphism& psi) {
    Json j = envelope("correspondence_morphism");
    j["domain"] = to_json(psi.domain());
    j["codomain"] = to_json(psi.codomain());
    j["matrix"] = matrix_to_json(psi.matrix());
    return j;
}

Json to_json(const Report& report) {
    Json j = envelope("report");
    j["subject"] = report.subject;
    j["accepted"] = report.accepted;
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json cj = Json::object();
        cj["name"] = c.name;
        cj["ok"] = c.ok;
        cj["residual"] = c.residual;
        if (!c.where.empty()) cj["where"] = c.where;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

Json to_json(const VertexMap& vm) {
    Json j = envelope("vertex_map");
    j["vertices"] = vm.vertices.labels();
    Json map = Json::array();
    for (std::size_t v = 0; v < vm.vertices.size(); ++v)
        map.push_back(Json::array({vm.vertices.label(v), vm.vertices.label(vm.map[v])}));
    j["map"] = std::move(map);
    return j;
}

Json to_json(const DimensionMatrix& dm) {
    Json j = Json::object();
    j["vertices"] = dm.vertices().labels();
    Json counts = Json::array();
    for (std::size_t u = 0; u < dm.vertices().size(); ++u) {
        Json row = Json::array();
        for (std::size_t v = 0; v < dm.vertices().size(); ++v) row.push_back(dm.at(u, v));
        counts.push_back(std::move(row));
    }
    j["counts"] = std::move(counts);
    return j;
}

std::string serialize(const Document& doc) {
    return std::visit([](const auto& payload) { return to_json(payload).dump(2) + "\n"; }, doc);
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string to_dot(const DirectedGraph& g) {
    std::string out = "digraph {\n";
    for (const auto& v : g.vertices().labels()) out += "  \"" + dot_escape(v) + "\";\n";
    for (const auto& e : g.edges())
        out += "  \"" + dot_escape(e.source) + "\" -> \"" + dot_escape(e.range) + "\" [label=\"" +
               dot_escape(e.id) + "\"];\n";
    out += "}\n";
    return out;
}

} // namespace graphcorr::io
