#include "doctest.h"

#include <cmath>
#include <numbers>

#include "graphcorr/functor.hpp"
#include "generators.hpp"

using namespace graphcorr;
using testgen::loop_graph;
using testgen::two_cycle;

namespace {

CorrespondenceMorphism loop_phase(double theta) {
    const Correspondence loop = graph_correspondence(loop_graph());
    ComplexMatrix m(1, 1);
    m(0, 0) = {std::cos(theta), std::sin(theta)};
    return CorrespondenceMorphism(loop, loop, m);
}

// Inclusion of a single edge u<-v into two parallel edges.
GraphMorphism parallel_inclusion() {
    const VertexSet uv({"u", "v"});
    const DirectedGraph small(uv, {{"e", "u", "v"}});
    const DirectedGraph big(uv, {{"f0", "u", "v"}, {"f1", "u", "v"}});
    return GraphMorphism{small, big, {{"e", "f0"}}};
}

} // namespace

TEST_SUITE("functor") {

TEST_CASE("gamma on the identity is the identity matrix") {
    const CorrespondenceMorphism psi = gamma_on_morphism(identity_graph_morphism(two_cycle()));
    CHECK(max_abs_diff(psi.matrix(), ComplexMatrix::identity(2)) == 0.0);
    const Report report = validate_correspondence_morphism(psi);
    CHECK(report.accepted);
    CHECK(report.max_residual() == 0.0);
}

TEST_CASE("gamma on an edge renaming is a permutation matrix") {
    const DirectedGraph cyc = two_cycle();
    const DirectedGraph renamed(cyc.vertices(), {{"b", "u", "v"}, {"a", "v", "u"}});
    const auto pairing = canonical_pairing_isomorphism(cyc, renamed);
    REQUIRE(pairing.has_value());
    const ComplexMatrix m = gamma_on_morphism(*pairing).matrix();
    // Edge order flips between the two graphs.
    CHECK(m(0, 1) == Complex{1.0, 0.0});
    CHECK(m(1, 0) == Complex{1.0, 0.0});
    CHECK(m(0, 0) == Complex{0.0, 0.0});
    CHECK(is_invertible(m, 1e-9));
}

TEST_CASE("gamma on a subgraph inclusion is isometric and non-surjective") {
    const CorrespondenceMorphism psi = gamma_on_morphism(parallel_inclusion());
    REQUIRE(psi.matrix().rows() == 2);
    REQUIRE(psi.matrix().cols() == 1);
    CHECK(psi.matrix()(0, 0) == Complex{1.0, 0.0});
    CHECK(psi.matrix()(1, 0) == Complex{0.0, 0.0});
    CHECK(validate_correspondence_morphism(psi).accepted);
    CHECK(!is_invertible(psi.matrix(), 1e-9));
}

TEST_CASE("gamma preserves identities and composition exactly") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(20000 + seed);
        const DirectedGraph g = testgen::random_graph(rng, 4, 10);
        const GraphMorphism inner = testgen::random_injection(rng, g);
        const GraphMorphism outer = testgen::random_injection(rng, inner.domain, true);
        // outer: A -> dom(inner), inner: dom(inner) -> g.
        const GraphMorphism composed = compose_graph_morphisms(inner, outer);
        const ComplexMatrix lhs = gamma_on_morphism(composed).matrix();
        const ComplexMatrix rhs =
            gamma_on_morphism(inner).matrix() * gamma_on_morphism(outer).matrix();
        CHECK(max_abs_diff(lhs, rhs) == 0.0);
    }
}

TEST_CASE("gamma is faithful") {
    SplitMix64 rng(21000);
    for (int trial = 0; trial < 10; ++trial) {
        const DirectedGraph f = testgen::random_graph(rng, 4, 8);
        const GraphMorphism phi1 = testgen::random_injection(rng, f, true);
        GraphMorphism phi2 = phi1;
        // Alter one image within its class when the class has room.
        bool altered = false;
        for (auto& [from, to] : phi2.edge_map) {
            const auto from_idx = *phi2.domain.edge_index(from);
            for (const auto& candidate : f.edges()) {
                if (candidate.id == to) continue;
                if (candidate.range == phi2.domain.edges()[from_idx].range &&
                    candidate.source == phi2.domain.edges()[from_idx].source) {
                    // Swap the two images to stay injective.
                    for (auto& [other_from, other_to] : phi2.edge_map)
                        if (other_to == candidate.id) other_to = to;
                    to = candidate.id;
                    altered = true;
                    break;
                }
            }
            if (altered) break;
        }
        if (!altered) continue;
        REQUIRE(validate_graph_morphism(phi2).accepted);
        CHECK(max_abs_diff(gamma_on_morphism(phi1).matrix(), gamma_on_morphism(phi2).matrix()) >
              0.5);
    }
}

TEST_CASE("decompose of a graph correspondence gives the standard basis") {
    const DirectedGraph g(VertexSet({"u", "v"}),
                          {{"a", "u", "v"}, {"b", "u", "v"}, {"c", "v", "u"}});
    const OrthoBasisFamily family = decompose(graph_correspondence(g));
    REQUIRE(family.block(0, 1).size() == 2);
    REQUIRE(family.block(1, 0).size() == 1);
    CHECK(family.block(0, 1)[0] == ComplexVector{1.0, 0.0, 0.0});
    CHECK(family.block(0, 1)[1] == ComplexVector{0.0, 1.0, 0.0});
    CHECK(family.block(1, 0)[0] == ComplexVector{0.0, 0.0, 1.0});
    CHECK(family.block(0, 0).empty());
    CHECK(family.total() == 3);
}

TEST_CASE("decompose of the swap sigma correspondence") {
    const Correspondence x = sigma_correspondence(VertexSet({"u", "v"}), {1, 0});
    const OrthoBasisFamily family = decompose(x);
    // X_uv is spanned by chi_v and X_vu by chi_u; the diagonal blocks vanish.
    REQUIRE(family.block(0, 1).size() == 1);
    REQUIRE(family.block(1, 0).size() == 1);
    CHECK(family.block(0, 1)[0] == ComplexVector{0.0, 1.0});
    CHECK(family.block(1, 0)[0] == ComplexVector{1.0, 0.0});
    CHECK(family.block(0, 0).empty());
    CHECK(family.block(1, 1).empty());
}

TEST_CASE("decompose block sizes survive scrambling") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(22000 + seed);
        const DirectedGraph g = testgen::random_graph(rng);
        const Correspondence x = graph_correspondence(g);
        const Correspondence scrambled =
            change_of_generators(x, testgen::random_block_compatible(rng, g));
        const OrthoBasisFamily family = decompose(scrambled);
        const DimensionMatrix adj = adjacency_matrix(g);
        for (std::size_t u = 0; u < g.vertices().size(); ++u)
            for (std::size_t v = 0; v < g.vertices().size(); ++v)
                CHECK(family.block(u, v).size() == adj.at(u, v));
    }
}

TEST_CASE("build_graph on a class-sorted graph correspondence has identity witness") {
    const DirectedGraph g(VertexSet({"u", "v"}),
                          {{"a", "u", "v"}, {"b", "u", "v"}, {"c", "v", "u"}});
    const CharacterizationResult result = build_graph(graph_correspondence(g));
    CHECK(adjacency_matrix(result.graph) == adjacency_matrix(g));
    CHECK(max_abs_diff(result.witness.matrix(), ComplexMatrix::identity(3)) == 0.0);
    CHECK(validate_correspondence_morphism(result.witness).accepted);
}

TEST_CASE("build_graph on the sigma correspondence recovers the functional graph") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(23000 + seed);
        const std::size_t nv = 1 + rng.below(8);
        const VertexSet vs = testgen::make_vertices(nv);
        const auto sigma = testgen::random_sigma(rng, nv);
        const CharacterizationResult result = build_graph(sigma_correspondence(vs, sigma));
        const auto pairing =
            canonical_pairing_isomorphism(result.graph, functional_graph(vs, sigma));
        REQUIRE(pairing.has_value());
        CHECK(is_vertex_fixing_isomorphism(*pairing));
    }
}

TEST_CASE("build_graph on scrambled presentations") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(24000 + seed);
        const DirectedGraph g = testgen::random_graph(rng);
        const Correspondence x = change_of_generators(
            graph_correspondence(g), testgen::random_block_compatible(rng, g));
        const CharacterizationResult result = build_graph(x);
        CHECK(adjacency_matrix(result.graph) == adjacency_matrix(g));
        CHECK(adjacency_matrix(result.graph) == dimension_matrix(x));
        const Report report = validate_correspondence_morphism(result.witness);
        CHECK(report.accepted);
        CHECK(report.max_residual() <= 1e-8);
        CHECK(is_invertible(result.witness.matrix(), 1e-9));
    }
}

TEST_CASE("recover_graph_isomorphism on the paper shapes") {
    const GraphMorphism loop_iso = recover_graph_isomorphism(loop_graph());
    CHECK(is_vertex_fixing_isomorphism(loop_iso));
    CHECK(loop_iso.edge_map.at("w->w#0") == "w->w#0");

    const GraphMorphism cyc_iso = recover_graph_isomorphism(two_cycle());
    CHECK(is_vertex_fixing_isomorphism(cyc_iso));
    CHECK(cyc_iso.edge_map.at("u->v#0") == "(u,v)");
    CHECK(cyc_iso.edge_map.at("v->u#0") == "(v,u)");
}

TEST_CASE("recover_graph_isomorphism on random graphs") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SplitMix64 rng(25000 + seed);
        const DirectedGraph f = testgen::random_graph(rng);
        const GraphMorphism iso = recover_graph_isomorphism(f);
        CHECK(is_vertex_fixing_isomorphism(iso));
        CHECK(adjacency_matrix(iso.domain) == adjacency_matrix(f));
    }
}

TEST_CASE("essential fullness of an identity") {
    const Correspondence x = graph_correspondence(two_cycle());
    const CorrespondenceMorphism psi = identity_morphism(x);
    const EssentialFullnessSquare square = essential_fullness(psi);
    CHECK(square_residual(square, psi) <= 1e-9);
    CHECK(is_vertex_fixing_isomorphism(square.phi));
    CHECK(adjacency_matrix(square.f) == adjacency_matrix(square.e));
}

TEST_CASE("essential fullness of a strict inclusion extends the basis") {
    const CorrespondenceMorphism psi = gamma_on_morphism(parallel_inclusion());
    const EssentialFullnessSquare square = essential_fullness(psi);
    CHECK(square.e.edge_count() == 1);
    CHECK(square.f.edge_count() == 2);
    CHECK(adjacency_matrix(square.f).at(0, 1) == 2);
    CHECK(!is_vertex_fixing_isomorphism(square.phi));
    CHECK(validate_graph_morphism(square.phi).accepted);
    CHECK(square_residual(square, psi) <= 1e-9);
    CHECK(validate_correspondence_morphism(square.upsilon_e).accepted);
    CHECK(validate_correspondence_morphism(square.upsilon_f).accepted);
}

TEST_CASE("essential fullness absorbs a loop phase") {
    const CorrespondenceMorphism psi = loop_phase(std::numbers::pi / 4.0);
    const EssentialFullnessSquare square = essential_fullness(psi);
    CHECK(square.e.edge_count() == 1);
    CHECK(square.f.edge_count() == 1);
    CHECK(is_vertex_fixing_isomorphism(square.phi));
    CHECK(square_residual(square, psi) <= 1e-9);
    // The phase moves into upsilon_F.
    CHECK(std::abs(square.upsilon_f.matrix()(0, 0) - std::conj(psi.matrix()(0, 0))) <= 1e-12);
}

TEST_CASE("gamma preimage round-trips functor images") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(26000 + seed);
        const DirectedGraph f = testgen::random_graph(rng, 4, 10);
        const GraphMorphism phi = testgen::random_injection(rng, f);
        const auto recovered = gamma_image_preimage(gamma_on_morphism(phi));
        REQUIRE(recovered.has_value());
        CHECK(recovered->edge_map == phi.edge_map);
    }
}

TEST_CASE("gamma preimage rejects the loop phase and accepts the loop identity") {
    CHECK(!gamma_image_preimage(loop_phase(std::numbers::pi / 4.0)).has_value());

    const auto identity_preimage = gamma_image_preimage(loop_phase(0.0));
    REQUIRE(identity_preimage.has_value());
    CHECK(identity_preimage->edge_map.at("w->w#0") == "w->w#0");
}

TEST_CASE("gamma preimage reads permutations off the columns") {
    const DirectedGraph e(VertexSet({"u", "v"}), {{"a", "u", "v"}, {"b", "v", "u"}});
    const DirectedGraph f(VertexSet({"u", "v"}), {{"c", "v", "u"}, {"d", "u", "v"}});
    const auto pairing = canonical_pairing_isomorphism(e, f);
    REQUIRE(pairing.has_value());
    const auto recovered = gamma_image_preimage(gamma_on_morphism(*pairing));
    REQUIRE(recovered.has_value());
    CHECK(recovered->edge_map.at("a") == "d");
    CHECK(recovered->edge_map.at("b") == "c");
}

TEST_CASE("gamma preimage demands canonical presentations") {
    SplitMix64 rng(27000);
    const DirectedGraph g = two_cycle();
    const Correspondence x = graph_correspondence(g);
    const ComplexMatrix t = testgen::random_block_compatible(rng, g);
    const CorrespondenceMorphism witness = change_of_generators_witness(x, t);
    CHECK_THROWS_AS(gamma_image_preimage(witness), PresentationError);
}

TEST_CASE("isomorphism reflection agrees on both sides") {
    const ReflectionCheck id_check =
        check_reflects_isomorphism(identity_graph_morphism(two_cycle()));
    CHECK(id_check.gamma_invertible);
    CHECK(id_check.phi_bijective);
    CHECK(id_check.agree());

    const ReflectionCheck strict = check_reflects_isomorphism(parallel_inclusion());
    CHECK(!strict.gamma_invertible);
    CHECK(!strict.phi_bijective);
    CHECK(strict.agree());

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(28000 + seed);
        const DirectedGraph f = testgen::random_graph(rng);
        CHECK(check_reflects_isomorphism(testgen::random_injection(rng, f)).agree());
        CHECK(check_reflects_isomorphism(testgen::random_injection(rng, f, true)).agree());
    }
}

TEST_CASE("object equality is labeled equality") {
    const Correspondence x = graph_correspondence(two_cycle());
    CHECK(correspondences_equal(x, x));

    const Correspondence a = graph_correspondence(loop_graph("w", "e0"));
    const Correspondence b = graph_correspondence(loop_graph("w", "e1"));
    CHECK(!correspondences_equal(a, b)); // same matrices, different edge tags

    const VertexSet uv({"u", "v"});
    const Correspondence forward =
        graph_correspondence(DirectedGraph(uv, {{"e", "u", "v"}}));
    const Correspondence backward =
        graph_correspondence(DirectedGraph(uv, {{"e", "v", "u"}}));
    CHECK(!correspondences_equal(forward, backward));
}

TEST_CASE("dimension matrix is invariant under invertible valid morphisms") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(29000 + seed);
        const DirectedGraph g = testgen::random_graph(rng);
        const Correspondence x = graph_correspondence(g);
        const ComplexMatrix t = testgen::random_block_compatible(rng, g);
        const ComplexMatrix p = testgen::random_phase_diagonal(rng, x.dim());

        // Invertible valid morphism: phases composed with a re-coordinatization.
        const CorrespondenceMorphism witness = change_of_generators_witness(x, t);
        const CorrespondenceMorphism twisted(witness.domain(), x, p * witness.matrix());
        REQUIRE(validate_correspondence_morphism(twisted).accepted);
        CHECK(dimension_matrix(twisted.domain()) == dimension_matrix(twisted.codomain()));
    }
}

TEST_CASE("canonical presentation detection") {
    const Correspondence x = graph_correspondence(two_cycle());
    CHECK(is_canonical_graph_presentation(x));
    const DirectedGraph back = canonical_graph_of(x);
    CHECK(adjacency_matrix(back) == adjacency_matrix(two_cycle()));
    CHECK(back.edges()[0].id == "(v,u)");

    SplitMix64 rng(30000);
    ComplexMatrix t = testgen::random_block_compatible(rng, two_cycle());
    const Correspondence scrambled = change_of_generators(x, t);
    // Generic scrambles are not canonical.
    CHECK(!is_canonical_graph_presentation(scrambled));
}

} // TEST_SUITE
