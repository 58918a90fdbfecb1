#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "graphcorr/correspondence.hpp"

namespace graphcorr {

// Per-(u, v) orthonormal bases of the compressed blocks p_u X p_v, in
// generator coordinates. Blocks are stored row-major by (range, source) and
// together exhaust the presentation.
class OrthoBasisFamily {
public:
    OrthoBasisFamily(Correspondence corr, std::vector<std::vector<ComplexVector>> blocks);

    const Correspondence& correspondence() const { return corr_; }
    const std::vector<ComplexVector>& block(std::size_t u, std::size_t v) const {
        return blocks_[u * corr_.vertices().size() + v];
    }
    std::size_t total() const;

private:
    Correspondence corr_;
    std::vector<std::vector<ComplexVector>> blocks_;
};

// Output of the graph extraction: the built graph, the coordinate map onto
// its graph correspondence (an isomorphism witness), and the basis that
// produced it.
struct CharacterizationResult {
    DirectedGraph graph;
    CorrespondenceMorphism witness; // input presentation -> graph_correspondence(graph)
    OrthoBasisFamily basis;
};

// Commuting square gamma(phi) . upsilon_e = upsilon_f . psi exhibiting a
// morphism psi as isomorphic to a functor image.
struct EssentialFullnessSquare {
    DirectedGraph e;
    DirectedGraph f;
    GraphMorphism phi;                // e -> f
    CorrespondenceMorphism upsilon_e; // psi's domain -> gamma(e)
    CorrespondenceMorphism upsilon_f; // psi's codomain -> gamma(f)
};

// The functor on morphisms: chi_e maps to chi_{phi(e)}, i.e. the 0/1 matrix
// with a single 1 per column. Throws PresentationError when phi is invalid.
CorrespondenceMorphism gamma_on_morphism(const GraphMorphism& phi);

// Splits a valid presentation into orthonormal bases of the (u, v) blocks:
// the generator basis is compressed by L_u R_v and orthonormalized against
// G_v at tol.rank. Block sizes equal dimension_matrix(x); a total that does
// not exhaust dim(x) raises PresentationError naming the deficit.
OrthoBasisFamily decompose(const Correspondence& x, const Tolerances& tol = {});

// Builds a graph from a valid presentation: one edge "u->v#k" per basis
// vector of block (u, v), blocks in row-major vertex order. The witness is
// the coordinate map onto the edge basis (inverse of the column matrix of
// basis vectors).
CharacterizationResult build_graph(const Correspondence& x, const Tolerances& tol = {});

// Runs the extraction on the graph correspondence of f and returns the
// vertex-fixing isomorphism pairing the k-th built edge of each class with
// the k-th edge of the same class of f.
GraphMorphism recover_graph_isomorphism(const DirectedGraph& f, const Tolerances& tol = {});

// Exhibits a valid morphism psi: X -> Y as isomorphic to a functor image:
// builds (E, upsilon_E) from X, pushes the block bases through psi, extends
// the images to block bases of Y giving (F, upsilon_F), and reads off
// phi: E -> F. Throws PresentationError if psi is invalid or the pushed
// bases fail their orthonormality check.
EssentialFullnessSquare essential_fullness(const CorrespondenceMorphism& psi,
                                           const Tolerances& tol = {});

// Max-entry residual of gamma(phi) . upsilon_e - upsilon_f . psi.
double square_residual(const EssentialFullnessSquare& square, const CorrespondenceMorphism& psi);

// Decides whether a valid morphism between canonical graph-correspondence
// presentations is a functor image: it is iff every matrix column is a
// standard basis vector within tol.val, and then the edge map is read off the
// columns. Returns nullopt otherwise (e.g. for modulus-one phases).
std::optional<GraphMorphism> gamma_image_preimage(const CorrespondenceMorphism& psi,
                                                  const Tolerances& tol = {});

// Both sides of the isomorphism-reflection biconditional: invertibility of
// gamma(phi) and bijectivity of phi.
struct ReflectionCheck {
    bool gamma_invertible = false;
    bool phi_bijective = false;
    bool agree() const { return gamma_invertible == phi_bijective; }
};
ReflectionCheck check_reflects_isomorphism(const GraphMorphism& phi, const Tolerances& tol = {});

// Labeled object equality in the correspondence category; see
// presentations_equal.
bool correspondences_equal(const Correspondence& x, const Correspondence& y,
                           double tol = kDefaultTolVal);

// True when the presentation is a canonical graph correspondence: 0/1
// diagonal actions partitioning the generators, G_v = R_v, distinct tags.
bool is_canonical_graph_presentation(const Correspondence& x, double tol = kDefaultTolVal);

// Reads the graph back off a canonical presentation (tags become edge ids).
// Throws PresentationError when the presentation is not canonical.
DirectedGraph canonical_graph_of(const Correspondence& x, double tol = kDefaultTolVal);

} // namespace graphcorr
