#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "graphcorr/functor.hpp"

namespace graphcorr::io {

using Json = nlohmann::ordered_json;

// A vertex self-map, the input of the sigma pipelines.
struct VertexMap {
    VertexSet vertices;
    std::vector<std::size_t> map; // map[i] = index of the image of vertex i
};

using Document = std::variant<DirectedGraph, Correspondence, GraphMorphism,
                              CorrespondenceMorphism, Report, VertexMap>;

// Document kind tags: "graph", "correspondence", "graph_morphism",
// "correspondence_morphism", "report", "vertex_map".
std::string kind_of(const Document& doc);

// Parses a document from JSON text. Schema violations raise ParseError naming
// the offending field.
Document parse_document(const std::string& text);

Json to_json(const DirectedGraph& g);
Json to_json(const Correspondence& x);
Json to_json(const GraphMorphism& phi);
Json to_json(const CorrespondenceMorphism& psi);
Json to_json(const Report& report);
Json to_json(const VertexMap& vm);
Json to_json(const DimensionMatrix& dm); // embedded payload, not a standalone kind

std::string serialize(const Document& doc);

// DOT text for visualization; edges are drawn source -> range and labeled
// with their id.
std::string to_dot(const DirectedGraph& g);

} // namespace graphcorr::io
