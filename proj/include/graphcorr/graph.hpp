#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphcorr/errors.hpp"
#include "graphcorr/validation.hpp"

namespace graphcorr {

// Ordered set of distinct vertex labels. The order is part of the value: it
// indexes every matrix and dimension count in the library.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::size_t> index_of(const std::string& label) const;
    std::size_t require(const std::string& label) const;

    bool operator==(const VertexSet& other) const { return labels_ == other.labels_; }
    bool operator!=(const VertexSet& other) const { return !(*this == other); }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
};

struct Edge {
    std::string id;
    std::string range;  // r(e)
    std::string source; // s(e)
};

// Finite directed multigraph on a fixed vertex set. Edge ids are unique and
// edge order is significant (it fixes generator order downstream).
class DirectedGraph {
public:
    DirectedGraph() = default;
    DirectedGraph(VertexSet vertices, std::vector<Edge> edges);

    const VertexSet& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::optional<std::size_t> edge_index(const std::string& id) const;
    std::size_t range_index(std::size_t e) const { return range_idx_[e]; }
    std::size_t source_index(std::size_t e) const { return source_idx_[e]; }

private:
    VertexSet vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::size_t> range_idx_;
    std::vector<std::size_t> source_idx_;
};

// Candidate vertex-fixing edge map between two graphs on the same vertex set.
// Whether it actually is one is the business of validate_graph_morphism.
struct GraphMorphism {
    DirectedGraph domain;
    DirectedGraph codomain;
    std::map<std::string, std::string> edge_map;
};

// Nonnegative integer matrix indexed by ordered vertex pairs (range, source).
class DimensionMatrix {
public:
    DimensionMatrix() = default;
    explicit DimensionMatrix(VertexSet vertices)
        : vertices_(std::move(vertices)), counts_(vertices_.size() * vertices_.size(), 0) {}

    std::size_t& at(std::size_t range, std::size_t source) {
        return counts_[range * vertices_.size() + source];
    }
    std::size_t at(std::size_t range, std::size_t source) const {
        return counts_[range * vertices_.size() + source];
    }

    const VertexSet& vertices() const { return vertices_; }
    std::size_t total() const;

    bool operator==(const DimensionMatrix& other) const {
        return vertices_ == other.vertices_ && counts_ == other.counts_;
    }
    bool operator!=(const DimensionMatrix& other) const { return !(*this == other); }

private:
    VertexSet vertices_;
    std::vector<std::size_t> counts_;
};

// counts(u, v) = number of edges with range u and source v.
DimensionMatrix adjacency_matrix(const DirectedGraph& e);

// Checks the morphism clauses: identical vertex sets, totality of the edge
// map, targets existing in the codomain, injectivity, and preservation of
// range and source. Never throws; every violated clause lands in the report.
Report validate_graph_morphism(const GraphMorphism& phi);

// True when the (valid) morphism is a bijection onto the codomain's edges.
// Throws PresentationError if phi fails validation.
bool is_vertex_fixing_isomorphism(const GraphMorphism& phi);

// When the adjacency matrices agree, pairs the k-th edge of each (u, v) class
// of `e` with the k-th edge of the same class of `f` (edge-list order) and
// returns that vertex-fixing isomorphism; otherwise nullopt. Throws ShapeError
// when the vertex sets differ.
std::optional<GraphMorphism> canonical_pairing_isomorphism(const DirectedGraph& e,
                                                           const DirectedGraph& f);

// The graph of a self-map of the vertex set: one edge per vertex v, with
// source v, range sigma(v), and id "(sigma(v),v)". sigma[i] is the index of
// the image of vertex i.
DirectedGraph functional_graph(const VertexSet& vertices, const std::vector<std::size_t>& sigma);

// Convention, fixed throughout: a sink emits no edge (no e with s(e) = v), a
// source receives no edge (no e with r(e) = v).
struct SinksAndSources {
    std::vector<std::string> sinks;
    std::vector<std::string> sources;
};
SinksAndSources sinks_and_sources(const DirectedGraph& e);

GraphMorphism identity_graph_morphism(const DirectedGraph& e);

// Composition outer . inner; domains must match up (ShapeError otherwise).
GraphMorphism compose_graph_morphisms(const GraphMorphism& outer, const GraphMorphism& inner);

// Deterministic per-class edge id "u->v#k" (range u, source v, 0-based k).
std::string auto_edge_id(const std::string& range, const std::string& source, std::size_t k);

} // namespace graphcorr
