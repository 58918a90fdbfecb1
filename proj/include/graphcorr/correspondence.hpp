#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graphcorr/complexla.hpp"
#include "graphcorr/graph.hpp"
#include "graphcorr/validation.hpp"

namespace graphcorr {

// Finite presentation of a nondegenerate correspondence over c0(V): n
// generators carrying, per vertex, an n x n Gram block G_v with
// (G_v)_{ij} = <xi_i, xi_j>(v), the matrix R_v of the right action of p_v,
// and the matrix L_u of the left action of p_u, all in generator coordinates.
//
// Construction checks shapes only (one matrix of each family per vertex, all
// n x n, n >= 1, finite entries). Whether the axioms hold is decided by
// validate_correspondence. Generator tags are bookkeeping labels that make
// object equality a labeled notion; graph correspondences tag generators with
// edge ids.
class Correspondence {
public:
    Correspondence(VertexSet vertices, std::size_t dim,
                   std::vector<ComplexMatrix> gram,
                   std::vector<ComplexMatrix> right_action,
                   std::vector<ComplexMatrix> left_action,
                   std::vector<std::string> generator_tags = {});

    const VertexSet& vertices() const { return vertices_; }
    std::size_t dim() const { return dim_; }
    const ComplexMatrix& gram(std::size_t v) const { return gram_[v]; }
    const ComplexMatrix& right_action(std::size_t v) const { return right_[v]; }
    const ComplexMatrix& left_action(std::size_t u) const { return left_[u]; }
    const std::vector<std::string>& generator_tags() const { return tags_; }

    // max(1, largest |Gram entry|); the scale against which residuals are
    // measured.
    double gram_scale() const { return scale_; }

private:
    VertexSet vertices_;
    std::size_t dim_;
    std::vector<ComplexMatrix> gram_;
    std::vector<ComplexMatrix> right_;
    std::vector<ComplexMatrix> left_;
    std::vector<std::string> tags_;
    double scale_;
};

// Linear map between presentations, as a codomain.dim x domain.dim matrix in
// generator coordinates. Construction checks shape and that both sides live
// over the same vertex set; the morphism axioms are checked by
// validate_correspondence_morphism.
class CorrespondenceMorphism {
public:
    CorrespondenceMorphism(Correspondence domain, Correspondence codomain, ComplexMatrix matrix);

    const Correspondence& domain() const { return domain_; }
    const Correspondence& codomain() const { return codomain_; }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    Correspondence domain_;
    Correspondence codomain_;
    ComplexMatrix matrix_;
};

// Validates the seven axiom clauses of a presentation, residuals measured in
// max-entry norm relative to gram_scale():
//   1. gram_hermitian_psd     each G_v Hermitian PSD, sum_v G_v positive definite
//   2. right_projections      R_v R_w = delta_vw R_v and sum_v R_v = I
//   3. left_projections       L_u L_w = delta_uw L_u and sum_u L_u = I
//   4. bimodule_commutation   L_u R_v = R_v L_u
//   5. gram_right_linear      G_w R_v = delta_vw G_w
//   6. right_adjoint_gram     R_v^H G_w = delta_vw G_w
//   7. left_adjointable       L_u^H G_w = G_w L_u
// Each check records the first offending index combination and the worst
// residual for its clause.
Report validate_correspondence(const Correspondence& x, double tol_val = kDefaultTolVal);

// The graph correspondence: generators are the edge indicator functions in
// edge-list order, Gram and action matrices are the 0/1 diagonals determined
// by the range and source maps. Rejects edgeless graphs (the presentation
// would be zero-dimensional).
Correspondence graph_correspondence(const DirectedGraph& e);

// The correspondence of a vertex self-map: generators are the vertex
// indicator functions, the left action is twisted by sigma.
Correspondence sigma_correspondence(const VertexSet& vertices,
                                    const std::vector<std::size_t>& sigma);

// <xi, eta> as a function on vertices: value at v is xi^H G_v eta.
std::vector<Complex> inner_product(const Correspondence& x, const ComplexVector& xi,
                                   const ComplexVector& eta);

// a . xi . b with a, b given by their values on vertices.
ComplexVector module_action(const Correspondence& x, const std::vector<Complex>& a,
                            const ComplexVector& xi, const std::vector<Complex>& b);

// Validates a morphism: domain and codomain axioms, bimodule equivariance
// (M R_v = R_v M, M L_u = L_u M), and inner-product preservation
// (M^H G_w M = G_w) for every vertex.
Report validate_correspondence_morphism(const CorrespondenceMorphism& psi,
                                        double tol_val = kDefaultTolVal);

// counts(u, v) = rank of the compressed form (L_u R_v)^H G_v (L_u R_v) at
// tol_rank. Throws PresentationError when the counts do not add up to dim
// (invalid or numerically marginal presentation).
DimensionMatrix dimension_matrix(const Correspondence& x, double tol_rank = kDefaultTolRank);

// Fullness: every Gram block nonzero. For a graph correspondence this is
// exactly "no sinks".
bool is_full(const Correspondence& x, double tol_val = kDefaultTolVal);

// Faithful left action: every L_u nonzero. For a graph correspondence this is
// exactly "no sources".
bool is_left_faithful(const Correspondence& x, double tol_val = kDefaultTolVal);

// Re-coordinatizes the presentation by an invertible T:
//   G'_v = T^H G_v T,  R'_v = T^-1 R_v T,  L'_u = T^-1 L_u T.
// Generator tags carry over. Throws SingularError for ill-conditioned T.
Correspondence change_of_generators(const Correspondence& x, const ComplexMatrix& t,
                                    double tol = kDefaultTolVal);

// The identity of the underlying space as a morphism from
// change_of_generators(x, t) back to x; its matrix is T.
CorrespondenceMorphism change_of_generators_witness(const Correspondence& x,
                                                    const ComplexMatrix& t,
                                                    double tol = kDefaultTolVal);

CorrespondenceMorphism identity_morphism(const Correspondence& x);

// Composition outer . inner. The inner codomain must equal the outer domain
// as a presentation (ShapeError otherwise).
CorrespondenceMorphism compose_morphisms(const CorrespondenceMorphism& outer,
                                         const CorrespondenceMorphism& inner,
                                         double tol = kDefaultTolVal);

// Labeled structural equality: same vertex order, same dimension, same
// generator tags, and all matrices equal within tol * gram scale.
bool presentations_equal(const Correspondence& x, const Correspondence& y,
                         double tol = kDefaultTolVal);

} // namespace graphcorr
