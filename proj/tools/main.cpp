#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"

#include "graphcorr/io.hpp"

namespace {

using namespace graphcorr;
using io::Json;

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitIoError = 2;

struct Options {
    Tolerances tol;
    std::uint64_t seed = 0;
};

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw graphcorr::ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw graphcorr::ParseError("cannot write '" + path + "'");
    out << text;
}

template <typename T>
T load(const std::string& path, const char* kind) {
    io::Document doc = io::parse_document(read_text(path));
    if (auto* value = std::get_if<T>(&doc)) return std::move(*value);
    throw graphcorr::ParseError(path + ": expected a " + std::string(kind) + " document, got " +
                                io::kind_of(doc));
}

void emit_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

// Report document with optional embedded result documents.
void emit_report(const std::string& path, const Report& report, const Json& artifacts = {}) {
    Json j = io::to_json(report);
    if (!artifacts.is_null()) j["artifacts"] = artifacts;
    emit_json(path, j);
}

Check check_of(std::string name, bool ok, double residual = 0.0, std::string where = {}) {
    Check c;
    c.name = std::move(name);
    c.ok = ok;
    c.residual = residual;
    c.where = std::move(where);
    return c;
}

int cmd_validate(const Options& opt, const std::string& in, const std::string& out) {
    io::Document doc = io::parse_document(read_text(in));
    Report report;
    if (std::holds_alternative<DirectedGraph>(doc) || std::holds_alternative<io::VertexMap>(doc) ||
        std::holds_alternative<Report>(doc)) {
        // Structural kinds: parsing already established their invariants.
        report.subject = io::kind_of(doc);
        report.add(check_of("well_formed", true));
    } else if (auto* x = std::get_if<Correspondence>(&doc)) {
        report = validate_correspondence(*x, opt.tol.val);
    } else if (auto* phi = std::get_if<GraphMorphism>(&doc)) {
        report = validate_graph_morphism(*phi);
    } else {
        report = validate_correspondence_morphism(std::get<CorrespondenceMorphism>(doc),
                                                  opt.tol.val);
    }
    emit_report(out, report);
    return report.accepted ? kExitAccepted : kExitRejected;
}

int cmd_graph_to_corr(const Options&, const std::string& in, const std::string& out) {
    const auto graph = load<DirectedGraph>(in, "graph");
    emit_json(out, io::to_json(graph_correspondence(graph)));
    return kExitAccepted;
}

int cmd_sigma(const Options&, const std::string& in, const std::string& graph_out,
              const std::string& corr_out) {
    const auto vm = load<io::VertexMap>(in, "vertex_map");
    const DirectedGraph graph = functional_graph(vm.vertices, vm.map);
    const Correspondence corr = sigma_correspondence(vm.vertices, vm.map);
    if (graph_out == corr_out) {
        write_text(graph_out, io::to_json(graph).dump(2) + "\n" + io::to_json(corr).dump(2) + "\n");
    } else {
        emit_json(graph_out, io::to_json(graph));
        emit_json(corr_out, io::to_json(corr));
    }
    return kExitAccepted;
}

int cmd_corr_to_graph(const Options& opt, const std::string& in, const std::string& out,
                      const std::string& graph_out, const std::string& witness_out) {
    const auto corr = load<Correspondence>(in, "correspondence");
    const Report validation = validate_correspondence(corr, opt.tol.val);
    if (!validation.accepted) {
        emit_report(out, validation);
        return kExitRejected;
    }

    const CharacterizationResult result = build_graph(corr, opt.tol);
    const Report witness_validation = validate_correspondence_morphism(result.witness, opt.tol.val);

    Report report;
    report.subject = "corr_to_graph";
    report.add(check_of("input_valid", true));
    report.add(check_of("witness_valid", witness_validation.accepted,
                        witness_validation.max_residual()));
    report.add(check_of("witness_invertible",
                        is_invertible(result.witness.matrix(), opt.tol.val)));
    report.add(check_of("blocks_exhaust_dimension", result.basis.total() == corr.dim(), 0.0,
                        std::to_string(result.basis.total()) + " of " +
                            std::to_string(corr.dim())));
    Json blocks = Json::array();
    const auto& vs = corr.vertices();
    for (std::size_t u = 0; u < vs.size(); ++u)
        for (std::size_t v = 0; v < vs.size(); ++v)
            if (!result.basis.block(u, v).empty())
                blocks.push_back(
                    Json::array({vs.label(u), vs.label(v), result.basis.block(u, v).size()}));

    Json artifacts = Json::object();
    artifacts["graph"] = io::to_json(result.graph);
    artifacts["witness"] = io::to_json(result.witness);
    artifacts["basis_blocks"] = std::move(blocks);
    emit_report(out, report, artifacts);
    if (!graph_out.empty()) emit_json(graph_out, io::to_json(result.graph));
    if (!witness_out.empty()) emit_json(witness_out, io::to_json(result.witness));
    return report.accepted ? kExitAccepted : kExitRejected;
}

int cmd_roundtrip(const Options& opt, const std::string& in, const std::string& out) {
    const auto graph = load<DirectedGraph>(in, "graph");
    const GraphMorphism iso = recover_graph_isomorphism(graph, opt.tol);
    const bool valid = validate_graph_morphism(iso).accepted;
    const bool bijective = valid && is_vertex_fixing_isomorphism(iso);
    const bool adjacency_equal = adjacency_matrix(iso.domain) == adjacency_matrix(graph);

    Report report;
    report.subject = "roundtrip";
    report.add(check_of("isomorphism_valid", valid));
    report.add(check_of("isomorphism_bijective", bijective));
    report.add(check_of("adjacency_preserved", adjacency_equal));
    Json artifacts = Json::object();
    artifacts["isomorphism"] = io::to_json(iso);
    emit_report(out, report, artifacts);
    return report.accepted ? kExitAccepted : kExitRejected;
}

int cmd_functor(const Options&, const std::string& in, const std::string& out) {
    const auto phi = load<GraphMorphism>(in, "graph_morphism");
    const Report validation = validate_graph_morphism(phi);
    if (!validation.accepted) {
        emit_report(out, validation);
        return kExitRejected;
    }
    emit_json(out, io::to_json(gamma_on_morphism(phi)));
    return kExitAccepted;
}

int cmd_gamma_preimage(const Options& opt, const std::string& in, const std::string& out) {
    const auto psi = load<CorrespondenceMorphism>(in, "correspondence_morphism");
    const auto phi = gamma_image_preimage(psi, opt.tol);
    if (phi) {
        emit_json(out, io::to_json(*phi));
        return kExitAccepted;
    }
    Report report;
    report.subject = "gamma_preimage";
    report.add(check_of("in_functor_image", false, 0.0,
                        "absent: some matrix column is not a standard basis vector"));
    emit_report(out, report);
    return kExitRejected;
}

int cmd_essential_fullness(const Options& opt, const std::string& in, const std::string& out) {
    const auto psi = load<CorrespondenceMorphism>(in, "correspondence_morphism");
    const EssentialFullnessSquare square = essential_fullness(psi, opt.tol);
    const double residual = square_residual(square, psi);

    const Report ve = validate_correspondence_morphism(square.upsilon_e, opt.tol.val);
    const Report vf = validate_correspondence_morphism(square.upsilon_f, opt.tol.val);
    Report report;
    report.subject = "essential_fullness";
    report.add(check_of("square_commutes", residual <= 10.0 * opt.tol.val, residual));
    report.add(check_of("upsilon_E_valid", ve.accepted, ve.max_residual()));
    report.add(
        check_of("upsilon_E_invertible", is_invertible(square.upsilon_e.matrix(), opt.tol.val)));
    report.add(check_of("upsilon_F_valid", vf.accepted, vf.max_residual()));
    report.add(
        check_of("upsilon_F_invertible", is_invertible(square.upsilon_f.matrix(), opt.tol.val)));
    report.add(check_of("phi_valid", validate_graph_morphism(square.phi).accepted));

    Json artifacts = Json::object();
    artifacts["E"] = io::to_json(square.e);
    artifacts["F"] = io::to_json(square.f);
    artifacts["phi"] = io::to_json(square.phi);
    artifacts["upsilon_E"] = io::to_json(square.upsilon_e);
    artifacts["upsilon_F"] = io::to_json(square.upsilon_f);
    emit_report(out, report, artifacts);
    return report.accepted ? kExitAccepted : kExitRejected;
}

int cmd_dim_matrix(const Options& opt, const std::string& in, const std::string& out) {
    const auto corr = load<Correspondence>(in, "correspondence");
    const Report validation = validate_correspondence(corr, opt.tol.val);
    if (!validation.accepted) {
        emit_report(out, validation);
        return kExitRejected;
    }
    const DimensionMatrix dm = dimension_matrix(corr, opt.tol.rank);
    Report report;
    report.subject = "dimension_matrix";
    report.add(check_of("blocks_exhaust_dimension", true));
    Json artifacts = Json::object();
    artifacts["dimension_matrix"] = io::to_json(dm);
    emit_report(out, report, artifacts);
    return kExitAccepted;
}

int cmd_dot(const Options&, const std::string& in, const std::string& out) {
    write_text(out, io::to_dot(load<DirectedGraph>(in, "graph")));
    return kExitAccepted;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed multigraphs and finite correspondence presentations over c0(V)"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--tol-val", opt.tol.val, "validation tolerance")->capture_default_str();
    app.add_option("--tol-rank", opt.tol.rank, "rank cutoff tolerance")->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for randomized subroutines")->capture_default_str();

    std::string in, out = "-", graph_out, witness_out, corr_out = "-", sigma_graph_out = "-";

    auto* validate = app.add_subcommand("validate", "validate any document");
    validate->add_option("file", in)->required();
    validate->add_option("-o,--output", out);

    auto* g2c = app.add_subcommand("graph-to-corr", "graph correspondence of a graph");
    g2c->add_option("graph", in)->required();
    g2c->add_option("-o,--output", out);

    auto* sigma =
        app.add_subcommand("sigma", "functional graph and correspondence of a vertex self-map");
    sigma->add_option("map-file", in)->required();
    sigma->add_option("--graph-out", sigma_graph_out);
    sigma->add_option("--corr-out", corr_out);

    auto* c2g = app.add_subcommand("corr-to-graph",
                                   "extract a graph plus isomorphism witness from a presentation");
    c2g->add_option("corr", in)->required();
    c2g->add_option("-o,--output", out);
    c2g->add_option("--graph-out", graph_out);
    c2g->add_option("--witness-out", witness_out);

    auto* roundtrip = app.add_subcommand(
        "roundtrip", "rebuild a graph from its correspondence and pair edges class by class");
    roundtrip->add_option("graph", in)->required();
    roundtrip->add_option("-o,--output", out);

    auto* functor = app.add_subcommand("functor", "correspondence morphism of a graph morphism");
    functor->add_option("graph-morphism", in)->required();
    functor->add_option("-o,--output", out);

    auto* preimage = app.add_subcommand(
        "gamma-preimage", "graph morphism a correspondence morphism comes from, if any");
    preimage->add_option("corr-morphism", in)->required();
    preimage->add_option("-o,--output", out);

    auto* fullness = app.add_subcommand(
        "essential-fullness",
        "commuting square exhibiting a morphism as a functor image up to isomorphism");
    fullness->add_option("corr-morphism", in)->required();
    fullness->add_option("-o,--output", out);

    auto* dim = app.add_subcommand("dim-matrix", "block dimension matrix of a presentation");
    dim->add_option("corr", in)->required();
    dim->add_option("-o,--output", out);

    auto* dot = app.add_subcommand("dot", "DOT export of a graph");
    dot->add_option("graph", in)->required();
    dot->add_option("-o,--output", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitAccepted : kExitIoError;
    }

    try {
        if (*validate) return cmd_validate(opt, in, out);
        if (*g2c) return cmd_graph_to_corr(opt, in, out);
        if (*sigma) return cmd_sigma(opt, in, sigma_graph_out, corr_out);
        if (*c2g) return cmd_corr_to_graph(opt, in, out, graph_out, witness_out);
        if (*roundtrip) return cmd_roundtrip(opt, in, out);
        if (*functor) return cmd_functor(opt, in, out);
        if (*preimage) return cmd_gamma_preimage(opt, in, out);
        if (*fullness) return cmd_essential_fullness(opt, in, out);
        if (*dim) return cmd_dim_matrix(opt, in, out);
        if (*dot) return cmd_dot(opt, in, out);
    } catch (const graphcorr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const PresentationError& e) {
        Report report;
        report.subject = "rejection";
        report.add(check_of("rejected", false, 0.0, e.what()));
        emit_report(out, report);
        return kExitRejected;
    } catch (const SingularError& e) {
        Report report;
        report.subject = "rejection";
        report.add(check_of("singular_at_tolerance", false, 0.0, e.what()));
        emit_report(out, report);
        return kExitRejected;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    return kExitIoError;
}
