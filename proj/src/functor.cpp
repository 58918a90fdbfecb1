#include "graphcorr/functor.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace graphcorr {

namespace {

void require_valid(const Correspondence& x, double tol_val, const char* caller) {
    const Report report = validate_correspondence(x, tol_val);
    if (!report.accepted)
        throw PresentationError(std::string(caller) + ": " + report.summary());
}

void require_valid_morphism(const CorrespondenceMorphism& psi, double tol_val,
                            const char* caller) {
    const Report report = validate_correspondence_morphism(psi, tol_val);
    if (!report.accepted)
        throw PresentationError(std::string(caller) + ": " + report.summary());
}

// Graph whose (u, v) class holds block_sizes[u * nv + v] edges "u->v#k",
// blocks in row-major vertex order.
DirectedGraph graph_from_block_sizes(const VertexSet& vertices,
                                     const std::vector<std::size_t>& block_sizes) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < vertices.size(); ++u)
        for (std::size_t v = 0; v < vertices.size(); ++v)
            for (std::size_t k = 0; k < block_sizes[u * vertices.size() + v]; ++k)
                edges.push_back({auto_edge_id(vertices.label(u), vertices.label(v), k),
                                 vertices.label(u), vertices.label(v)});
    return DirectedGraph(vertices, std::move(edges));
}

// Coordinate map onto a block basis: the inverse of the matrix whose columns
// are the basis vectors, blocks concatenated in edge order.
ComplexMatrix coordinate_map(const std::vector<std::vector<ComplexVector>>& blocks,
                             std::size_t dim, double tol_val) {
    std::vector<ComplexVector> columns;
    columns.reserve(dim);
    for (const auto& block : blocks)
        for (const auto& b : block) columns.push_back(b);
    return invert(ComplexMatrix::from_columns(columns, dim), tol_val);
}

} // namespace

OrthoBasisFamily::OrthoBasisFamily(Correspondence corr,
                                   std::vector<std::vector<ComplexVector>> blocks)
    : corr_(std::move(corr)), blocks_(std::move(blocks)) {
    const std::size_t nv = corr_.vertices().size();
    if (blocks_.size() != nv * nv)
        throw ShapeError("OrthoBasisFamily: expected one block per ordered vertex pair");
}

std::size_t OrthoBasisFamily::total() const {
    std::size_t sum = 0;
    for (const auto& block : blocks_) sum += block.size();
    return sum;
}

CorrespondenceMorphism gamma_on_morphism(const GraphMorphism& phi) {
    const Report report = validate_graph_morphism(phi);
    if (!report.accepted) throw PresentationError("gamma_on_morphism: " + report.summary());

    const Correspondence dom = graph_correspondence(phi.domain);
    const Correspondence cod = graph_correspondence(phi.codomain);
    ComplexMatrix m(cod.dim(), dom.dim());
    for (const auto& [from, to] : phi.edge_map)
        m(*phi.codomain.edge_index(to), *phi.domain.edge_index(from)) = 1.0;
    return CorrespondenceMorphism(dom, cod, m);
}

OrthoBasisFamily decompose(const Correspondence& x, const Tolerances& tol) {
    require_valid(x, tol.val, "decompose");
    const std::size_t nv = x.vertices().size();
    const std::size_t n = x.dim();

    std::vector<std::vector<ComplexVector>> blocks(nv * nv);
    for (std::size_t v = 0; v < nv; ++v) {
        const HermitianForm form(x.gram(v), tol.val);
        for (std::size_t u = 0; u < nv; ++u) {
            const ComplexMatrix compression = x.left_action(u) * x.right_action(v);
            std::vector<ComplexVector> compressed;
            compressed.reserve(n);
            for (std::size_t j = 0; j < n; ++j) compressed.push_back(compression.column(j));
            blocks[u * nv + v] = form_orthonormalize(compressed, form, tol.rank);
        }
    }

    OrthoBasisFamily family(x, std::move(blocks));
    if (family.total() != n)
        throw PresentationError("decompose: blocks span " + std::to_string(family.total()) +
                                " of " + std::to_string(n) +
                                " dimensions (invalid or numerically marginal presentation)");
    return family;
}

CharacterizationResult build_graph(const Correspondence& x, const Tolerances& tol) {
    OrthoBasisFamily family = decompose(x, tol);
    const std::size_t nv = x.vertices().size();

    std::vector<std::size_t> block_sizes(nv * nv);
    std::vector<std::vector<ComplexVector>> blocks;
    blocks.reserve(nv * nv);
    for (std::size_t u = 0; u < nv; ++u)
        for (std::size_t v = 0; v < nv; ++v) {
            block_sizes[u * nv + v] = family.block(u, v).size();
            blocks.push_back(family.block(u, v));
        }

    DirectedGraph graph = graph_from_block_sizes(x.vertices(), block_sizes);
    const ComplexMatrix witness_matrix = coordinate_map(blocks, x.dim(), tol.val);
    CorrespondenceMorphism witness(x, graph_correspondence(graph), witness_matrix);
    return {std::move(graph), std::move(witness), std::move(family)};
}

GraphMorphism recover_graph_isomorphism(const DirectedGraph& f, const Tolerances& tol) {
    const CharacterizationResult result = build_graph(graph_correspondence(f), tol);
    const DirectedGraph& e = result.graph;
    const std::size_t nv = f.vertices().size();

    // Edge indices of f grouped by (range, source) class, in edge-list order.
    std::vector<std::vector<std::size_t>> f_classes(nv * nv);
    for (std::size_t i = 0; i < f.edge_count(); ++i)
        f_classes[f.range_index(i) * nv + f.source_index(i)].push_back(i);

    std::vector<std::size_t> used(nv * nv, 0);
    GraphMorphism phi{e, f, {}};
    for (std::size_t i = 0; i < e.edge_count(); ++i) {
        const std::size_t cls = e.range_index(i) * nv + e.source_index(i);
        if (used[cls] >= f_classes[cls].size())
            throw PresentationError("recover_graph_isomorphism: class sizes disagree");
        phi.edge_map[e.edges()[i].id] = f.edges()[f_classes[cls][used[cls]++]].id;
    }
    return phi;
}

EssentialFullnessSquare essential_fullness(const CorrespondenceMorphism& psi,
                                           const Tolerances& tol) {
    require_valid_morphism(psi, tol.val, "essential_fullness");
    const Correspondence& x = psi.domain();
    const Correspondence& y = psi.codomain();
    const std::size_t nv = x.vertices().size();

    CharacterizationResult from_domain = build_graph(x, tol);
    const OrthoBasisFamily& x_basis = from_domain.basis;

    std::vector<std::vector<ComplexVector>> y_blocks(nv * nv);
    std::vector<std::size_t> e_sizes(nv * nv), f_sizes(nv * nv);
    for (std::size_t v = 0; v < nv; ++v) {
        const HermitianForm form(y.gram(v), tol.val);
        for (std::size_t u = 0; u < nv; ++u) {
            std::vector<ComplexVector> images;
            images.reserve(x_basis.block(u, v).size());
            for (const auto& b : x_basis.block(u, v)) images.push_back(psi.matrix().apply(b));

            // The pushed basis must land orthonormally in Y's block; failure
            // here means psi is not actually isometric.
            for (std::size_t i = 0; i < images.size(); ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    const Complex g = form.inner(images[i], images[j]);
                    const double dev =
                        std::abs(g - (i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
                    if (dev > 10.0 * tol.val)
                        throw PresentationError(
                            "essential_fullness: image of block basis is not orthonormal "
                            "(residual " +
                            std::to_string(dev) + ")");
                }

            const ComplexMatrix compression = y.left_action(u) * y.right_action(v);
            std::vector<ComplexVector> spanning;
            spanning.reserve(y.dim());
            for (std::size_t j = 0; j < y.dim(); ++j) spanning.push_back(compression.column(j));

            y_blocks[u * nv + v] = orthonormal_extension(images, spanning, form, tol.rank);
            e_sizes[u * nv + v] = images.size();
            f_sizes[u * nv + v] = y_blocks[u * nv + v].size();
        }
    }

    std::size_t f_total = 0;
    for (auto s : f_sizes) f_total += s;
    if (f_total != y.dim())
        throw PresentationError("essential_fullness: extended blocks span " +
                                std::to_string(f_total) + " of " + std::to_string(y.dim()) +
                                " dimensions");

    DirectedGraph f_graph = graph_from_block_sizes(y.vertices(), f_sizes);
    CorrespondenceMorphism upsilon_f(y, graph_correspondence(f_graph),
                                     coordinate_map(y_blocks, y.dim(), tol.val));

    // The image of the k-th domain basis vector of block (u, v) is by
    // construction the k-th extended basis vector, so phi pairs equal ids.
    GraphMorphism phi{from_domain.graph, f_graph, {}};
    for (std::size_t u = 0; u < nv; ++u)
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t k = 0; k < e_sizes[u * nv + v]; ++k) {
                const std::string id =
                    auto_edge_id(x.vertices().label(u), x.vertices().label(v), k);
                phi.edge_map[id] = id;
            }

    return {std::move(from_domain.graph), std::move(f_graph), std::move(phi),
            std::move(from_domain.witness), std::move(upsilon_f)};
}

double square_residual(const EssentialFullnessSquare& square, const CorrespondenceMorphism& psi) {
    const CorrespondenceMorphism gamma_phi = gamma_on_morphism(square.phi);
    return max_abs_diff(gamma_phi.matrix() * square.upsilon_e.matrix(),
                        square.upsilon_f.matrix() * psi.matrix());
}

bool is_canonical_graph_presentation(const Correspondence& x, double tol) {
    const std::size_t nv = x.vertices().size();
    const std::size_t n = x.dim();

    auto is_zero_one_diagonal = [&](const ComplexMatrix& m) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double a = std::abs(m(i, j));
                if (i != j && a > tol) return false;
                if (i == j && std::min(a, std::abs(m(i, j) - Complex{1.0, 0.0})) > tol)
                    return false;
            }
        return true;
    };

    for (std::size_t v = 0; v < nv; ++v) {
        if (!is_zero_one_diagonal(x.right_action(v))) return false;
        if (!is_zero_one_diagonal(x.left_action(v))) return false;
        if (max_abs_diff(x.gram(v), x.right_action(v)) > tol) return false;
    }
    // Each generator must sit in exactly one source and one range class.
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t sources = 0, ranges = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            if (std::abs(x.right_action(v)(j, j) - Complex{1.0, 0.0}) <= tol) ++sources;
            if (std::abs(x.left_action(v)(j, j) - Complex{1.0, 0.0}) <= tol) ++ranges;
        }
        if (sources != 1 || ranges != 1) return false;
    }
    std::set<std::string> tags(x.generator_tags().begin(), x.generator_tags().end());
    return tags.size() == n;
}

DirectedGraph canonical_graph_of(const Correspondence& x, double tol) {
    if (!is_canonical_graph_presentation(x, tol))
        throw PresentationError(
            "canonical_graph_of: presentation is not a canonical graph correspondence");
    const std::size_t nv = x.vertices().size();
    std::vector<Edge> edges;
    edges.reserve(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j) {
        std::size_t range = 0, source = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            if (std::abs(x.right_action(v)(j, j) - Complex{1.0, 0.0}) <= tol) source = v;
            if (std::abs(x.left_action(v)(j, j) - Complex{1.0, 0.0}) <= tol) range = v;
        }
        edges.push_back({x.generator_tags()[j], x.vertices().label(range),
                         x.vertices().label(source)});
    }
    return DirectedGraph(x.vertices(), std::move(edges));
}

std::optional<GraphMorphism> gamma_image_preimage(const CorrespondenceMorphism& psi,
                                                  const Tolerances& tol) {
    const DirectedGraph dom_graph = canonical_graph_of(psi.domain(), tol.val);
    const DirectedGraph cod_graph = canonical_graph_of(psi.codomain(), tol.val);
    require_valid_morphism(psi, tol.val, "gamma_image_preimage");

    const ComplexMatrix& m = psi.matrix();
    GraphMorphism phi{dom_graph, cod_graph, {}};
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::size_t hit = m.rows();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const double a = std::abs(m(i, j));
            if (std::abs(m(i, j) - Complex{1.0, 0.0}) <= tol.val) {
                if (hit != m.rows()) return std::nullopt;
                hit = i;
            } else if (a > tol.val) {
                return std::nullopt;
            }
        }
        if (hit == m.rows()) return std::nullopt;
        phi.edge_map[dom_graph.edges()[j].id] = cod_graph.edges()[hit].id;
    }

    if (!validate_graph_morphism(phi).accepted)
        throw PresentationError(
            "gamma_image_preimage: characteristic columns produced an invalid edge map");
    return phi;
}

ReflectionCheck check_reflects_isomorphism(const GraphMorphism& phi, const Tolerances& tol) {
    ReflectionCheck out;
    const CorrespondenceMorphism gamma_phi = gamma_on_morphism(phi);
    out.gamma_invertible = is_invertible(gamma_phi.matrix(), tol.val);
    out.phi_bijective = is_vertex_fixing_isomorphism(phi);
    return out;
}

bool correspondences_equal(const Correspondence& x, const Correspondence& y, double tol) {
    return presentations_equal(x, y, tol);
}

} // namespace graphcorr
