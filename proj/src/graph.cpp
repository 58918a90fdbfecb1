#include "graphcorr/graph.hpp"

#include <algorithm>
#include <set>

namespace graphcorr {

VertexSet::VertexSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second)
            throw ShapeError("VertexSet: duplicate label '" + labels_[i] + "'");
    }
}

std::optional<std::size_t> VertexSet::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t VertexSet::require(const std::string& label) const {
    auto idx = index_of(label);
    if (!idx) throw ShapeError("unknown vertex '" + label + "'");
    return *idx;
}

DirectedGraph::DirectedGraph(VertexSet vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    range_idx_.reserve(edges_.size());
    source_idx_.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!index_.emplace(edges_[i].id, i).second)
            throw ShapeError("DirectedGraph: duplicate edge id '" + edges_[i].id + "'");
        range_idx_.push_back(vertices_.require(edges_[i].range));
        source_idx_.push_back(vertices_.require(edges_[i].source));
    }
}

std::optional<std::size_t> DirectedGraph::edge_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t DimensionMatrix::total() const {
    std::size_t sum = 0;
    for (auto c : counts_) sum += c;
    return sum;
}

DimensionMatrix adjacency_matrix(const DirectedGraph& e) {
    DimensionMatrix m(e.vertices());
    for (std::size_t i = 0; i < e.edge_count(); ++i) m.at(e.range_index(i), e.source_index(i)) += 1;
    return m;
}

Report validate_graph_morphism(const GraphMorphism& phi) {
    Report report;
    report.subject = "graph_morphism";

    Check vertex_sets;
    vertex_sets.name = "vertex_sets_identical";
    if (phi.domain.vertices() != phi.codomain.vertices()) {
        vertex_sets.ok = false;
        vertex_sets.where = "vertex lists differ";
    }
    report.add(vertex_sets);

    Check total;
    total.name = "edge_map_total";
    for (const auto& e : phi.domain.edges()) {
        if (!phi.edge_map.count(e.id)) {
            total.ok = false;
            total.where = "edge '" + e.id + "' has no image";
            break;
        }
    }
    if (total.ok) {
        for (const auto& [from, to] : phi.edge_map) {
            (void)to;
            if (!phi.domain.edge_index(from)) {
                total.ok = false;
                total.where = "'" + from + "' is not a domain edge";
                break;
            }
        }
    }
    report.add(total);

    Check targets;
    targets.name = "edge_targets_exist";
    for (const auto& [from, to] : phi.edge_map) {
        (void)from;
        if (!phi.codomain.edge_index(to)) {
            targets.ok = false;
            targets.where = "image '" + to + "' is not a codomain edge";
            break;
        }
    }
    report.add(targets);

    Check injective;
    injective.name = "injective";
    {
        std::set<std::string> seen;
        for (const auto& [from, to] : phi.edge_map) {
            (void)from;
            if (!seen.insert(to).second) {
                injective.ok = false;
                injective.where = "image '" + to + "' hit twice";
                break;
            }
        }
    }
    report.add(injective);

    Check ranges;
    ranges.name = "preserves_range";
    Check sources;
    sources.name = "preserves_source";
    if (vertex_sets.ok && targets.ok) {
        for (const auto& [from, to] : phi.edge_map) {
            auto di = phi.domain.edge_index(from);
            auto ci = phi.codomain.edge_index(to);
            if (!di || !ci) continue;
            if (ranges.ok && phi.domain.edges()[*di].range != phi.codomain.edges()[*ci].range) {
                ranges.ok = false;
                ranges.where = "'" + from + "' -> '" + to + "'";
            }
            if (sources.ok && phi.domain.edges()[*di].source != phi.codomain.edges()[*ci].source) {
                sources.ok = false;
                sources.where = "'" + from + "' -> '" + to + "'";
            }
        }
    }
    report.add(ranges);
    report.add(sources);
    return report;
}

bool is_vertex_fixing_isomorphism(const GraphMorphism& phi) {
    const Report report = validate_graph_morphism(phi);
    if (!report.accepted) throw PresentationError(report.summary());
    return phi.edge_map.size() == phi.codomain.edge_count();
}

namespace {

// Edge indices grouped by (range, source), in edge-list order.
std::vector<std::vector<std::size_t>> edge_classes(const DirectedGraph& g) {
    const std::size_t n = g.vertices().size();
    std::vector<std::vector<std::size_t>> classes(n * n);
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        classes[g.range_index(i) * n + g.source_index(i)].push_back(i);
    return classes;
}

} // namespace

std::optional<GraphMorphism> canonical_pairing_isomorphism(const DirectedGraph& e,
                                                           const DirectedGraph& f) {
    if (e.vertices() != f.vertices())
        throw ShapeError("canonical_pairing_isomorphism: vertex sets differ");
    if (adjacency_matrix(e) != adjacency_matrix(f)) return std::nullopt;

    const auto ce = edge_classes(e);
    const auto cf = edge_classes(f);
    GraphMorphism phi{e, f, {}};
    for (std::size_t c = 0; c < ce.size(); ++c)
        for (std::size_t k = 0; k < ce[c].size(); ++k)
            phi.edge_map[e.edges()[ce[c][k]].id] = f.edges()[cf[c][k]].id;
    return phi;
}

DirectedGraph functional_graph(const VertexSet& vertices, const std::vector<std::size_t>& sigma) {
    if (sigma.size() != vertices.size())
        throw ShapeError("functional_graph: map not total on the vertex set");
    std::vector<Edge> edges;
    edges.reserve(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (sigma[v] >= vertices.size())
            throw ShapeError("functional_graph: image index out of range");
        const std::string& u = vertices.label(sigma[v]);
        edges.push_back({"(" + u + "," + vertices.label(v) + ")", u, vertices.label(v)});
    }
    return DirectedGraph(vertices, std::move(edges));
}

SinksAndSources sinks_and_sources(const DirectedGraph& e) {
    std::vector<bool> emits(e.vertices().size(), false);
    std::vector<bool> receives(e.vertices().size(), false);
    for (std::size_t i = 0; i < e.edge_count(); ++i) {
        emits[e.source_index(i)] = true;
        receives[e.range_index(i)] = true;
    }
    SinksAndSources out;
    for (std::size_t v = 0; v < e.vertices().size(); ++v) {
        if (!emits[v]) out.sinks.push_back(e.vertices().label(v));
        if (!receives[v]) out.sources.push_back(e.vertices().label(v));
    }
    return out;
}

GraphMorphism identity_graph_morphism(const DirectedGraph& e) {
    GraphMorphism phi{e, e, {}};
    for (const auto& edge : e.edges()) phi.edge_map[edge.id] = edge.id;
    return phi;
}

GraphMorphism compose_graph_morphisms(const GraphMorphism& outer, const GraphMorphism& inner) {
    for (const auto& edge : inner.codomain.edges()) {
        if (!outer.domain.edge_index(edge.id))
            throw ShapeError("compose_graph_morphisms: middle graphs do not match");
    }
    if (inner.codomain.edge_count() != outer.domain.edge_count())
        throw ShapeError("compose_graph_morphisms: middle graphs do not match");
    GraphMorphism phi{inner.domain, outer.codomain, {}};
    for (const auto& [from, mid] : inner.edge_map) {
        auto it = outer.edge_map.find(mid);
        if (it == outer.edge_map.end())
            throw ShapeError("compose_graph_morphisms: no image for middle edge '" + mid + "'");
        phi.edge_map[from] = it->second;
    }
    return phi;
}

std::string auto_edge_id(const std::string& range, const std::string& source, std::size_t k) {
    return range + "->" + source + "#" + std::to_string(k);
}

} // namespace graphcorr
