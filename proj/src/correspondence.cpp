#include "graphcorr/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace graphcorr {

namespace {

void check_family(const std::vector<ComplexMatrix>& family, std::size_t vertex_count,
                  std::size_t dim, const char* name) {
    if (family.size() != vertex_count)
        throw ShapeError(std::string(name) + ": expected one matrix per vertex");
    for (const auto& m : family) {
        if (m.rows() != dim || m.cols() != dim)
            throw ShapeError(std::string(name) + ": matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(dim) + "x" +
                             std::to_string(dim));
        if (!m.all_finite()) throw ShapeError(std::string(name) + ": non-finite entries");
    }
}

std::string at_vertices(const VertexSet& vs, std::size_t a) { return "v=" + vs.label(a); }

std::string at_vertices(const VertexSet& vs, std::size_t a, std::size_t b) {
    return "(" + vs.label(a) + "," + vs.label(b) + ")";
}

} // namespace

Correspondence::Correspondence(VertexSet vertices, std::size_t dim,
                               std::vector<ComplexMatrix> gram,
                               std::vector<ComplexMatrix> right_action,
                               std::vector<ComplexMatrix> left_action,
                               std::vector<std::string> generator_tags)
    : vertices_(std::move(vertices)),
      dim_(dim),
      gram_(std::move(gram)),
      right_(std::move(right_action)),
      left_(std::move(left_action)),
      tags_(std::move(generator_tags)) {
    if (vertices_.size() == 0) throw ShapeError("Correspondence: empty vertex set");
    if (dim_ == 0) throw ShapeError("Correspondence: zero-dimensional presentation excluded");
    check_family(gram_, vertices_.size(), dim_, "gram");
    check_family(right_, vertices_.size(), dim_, "right_action");
    check_family(left_, vertices_.size(), dim_, "left_action");
    if (tags_.empty()) {
        tags_.reserve(dim_);
        for (std::size_t i = 0; i < dim_; ++i) tags_.push_back("g" + std::to_string(i));
    }
    if (tags_.size() != dim_)
        throw ShapeError("Correspondence: expected one generator tag per generator");
    double worst = 0.0;
    for (const auto& g : gram_) worst = std::max(worst, g.max_abs());
    scale_ = std::max(1.0, worst);
}

CorrespondenceMorphism::CorrespondenceMorphism(Correspondence domain, Correspondence codomain,
                                               ComplexMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (domain_.vertices() != codomain_.vertices())
        throw ShapeError("CorrespondenceMorphism: domain and codomain vertex sets differ");
    if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
        throw ShapeError("CorrespondenceMorphism: matrix is " + std::to_string(matrix_.rows()) +
                         "x" + std::to_string(matrix_.cols()) + ", expected " +
                         std::to_string(codomain_.dim()) + "x" + std::to_string(domain_.dim()));
    if (!matrix_.all_finite()) throw ShapeError("CorrespondenceMorphism: non-finite entries");
}

Report validate_correspondence(const Correspondence& x, double tol_val) {
    const std::size_t nv = x.vertices().size();
    const std::size_t n = x.dim();
    const double scale = x.gram_scale();
    const double bound = tol_val * scale;
    const ComplexMatrix id = ComplexMatrix::identity(n);

    Report report;
    report.subject = "correspondence";

    // Clause 1: each G_v Hermitian PSD, sum positive definite.
    {
        Check c;
        c.name = "gram_hermitian_psd";
        ComplexMatrix sum(n, n);
        for (std::size_t v = 0; v < nv; ++v) {
            const ComplexMatrix& g = x.gram(v);
            sum = sum + g;
            const double asym = max_abs_diff(g, g.adjoint());
            if (asym > c.residual) c.residual = asym;
            if (asym > bound && c.ok) {
                c.ok = false;
                c.where = at_vertices(x.vertices(), v) + " not Hermitian";
            }
            const auto eig = hermitian_eigenvalues(g);
            const double hi_mag = std::max(std::abs(eig.front()), std::abs(eig.back()));
            const double psd_scale = hi_mag == 0.0 ? 1.0 : hi_mag;
            const double deficit = std::max(0.0, -eig.front() - tol_val * psd_scale);
            if (deficit > 0.0) {
                c.residual = std::max(c.residual, deficit);
                if (c.ok) {
                    c.ok = false;
                    c.where = at_vertices(x.vertices(), v) + " not PSD";
                }
            }
        }
        const auto eig_sum = hermitian_eigenvalues(sum);
        const double pd_deficit =
            std::max(0.0, tol_val * std::max(1.0, eig_sum.back()) - eig_sum.front());
        if (pd_deficit > 0.0) {
            c.residual = std::max(c.residual, pd_deficit);
            if (c.ok) {
                c.ok = false;
                c.where = "sum of Gram blocks not positive definite";
            }
        }
        report.add(c);
    }

    // Clause 2: right action by orthogonal projections summing to I.
    {
        Check c;
        c.name = "right_projections";
        ComplexMatrix sum(n, n);
        for (std::size_t v = 0; v < nv; ++v) {
            sum = sum + x.right_action(v);
            for (std::size_t w = 0; w < nv; ++w) {
                const ComplexMatrix lhs = x.right_action(v) * x.right_action(w);
                const ComplexMatrix rhs = v == w ? x.right_action(v) : ComplexMatrix(n, n);
                const double r = max_abs_diff(lhs, rhs);
                if (r > c.residual) c.residual = r;
                if (r > bound && c.ok) {
                    c.ok = false;
                    c.where = at_vertices(x.vertices(), v, w);
                }
            }
        }
        const double r = max_abs_diff(sum, id);
        if (r > c.residual) c.residual = r;
        if (r > bound && c.ok) {
            c.ok = false;
            c.where = "sum of right projections is not the identity";
        }
        report.add(c);
    }

    // Clause 3: left action by orthogonal projections summing to I
    // (nondegeneracy).
    {
        Check c;
        c.name = "left_projections";
        ComplexMatrix sum(n, n);
        for (std::size_t u = 0; u < nv; ++u) {
            sum = sum + x.left_action(u);
            for (std::size_t w = 0; w < nv; ++w) {
                const ComplexMatrix lhs = x.left_action(u) * x.left_action(w);
                const ComplexMatrix rhs = u == w ? x.left_action(u) : ComplexMatrix(n, n);
                const double r = max_abs_diff(lhs, rhs);
                if (r > c.residual) c.residual = r;
                if (r > bound && c.ok) {
                    c.ok = false;
                    c.where = at_vertices(x.vertices(), u, w);
                }
            }
        }
        const double r = max_abs_diff(sum, id);
        if (r > c.residual) c.residual = r;
        if (r > bound && c.ok) {
            c.ok = false;
            c.where = "sum of left projections is not the identity (degenerate left action)";
        }
        report.add(c);
    }

    // Clause 4: the two actions commute.
    {
        Check c;
        c.name = "bimodule_commutation";
        for (std::size_t u = 0; u < nv; ++u)
            for (std::size_t v = 0; v < nv; ++v) {
                const double r =
                    max_abs_diff(x.left_action(u) * x.right_action(v),
                                 x.right_action(v) * x.left_action(u));
                if (r > c.residual) c.residual = r;
                if (r > bound && c.ok) {
                    c.ok = false;
                    c.where = at_vertices(x.vertices(), u, v);
                }
            }
        report.add(c);
    }

    // Clause 5: G_w R_v = delta_vw G_w.
    {
        Check c;
        c.name = "gram_right_linear";
        for (std::size_t w = 0; w < nv; ++w)
            for (std::size_t v = 0; v < nv; ++v) {
                const ComplexMatrix lhs = x.gram(w) * x.right_action(v);
                const ComplexMatrix rhs = v == w ? x.gram(w) : ComplexMatrix(n, n);
                const double r = max_abs_diff(lhs, rhs);
                if (r > c.residual) c.residual = r;
                if (r > bound && c.ok) {
                    c.ok = false;
                    c.where = at_vertices(x.vertices(), v, w);
                }
            }
        report.add(c);
    }

    // Clause 6: R_v^H G_w = delta_vw G_w.
    {
        Check c;
        c.name = "right_adjoint_gram";
        for (std::size_t w = 0; w < nv; ++w)
            for (std::size_t v = 0; v < nv; ++v) {
                const ComplexMatrix lhs = x.right_action(v).adjoint() * x.gram(w);
                const ComplexMatrix rhs = v == w ? x.gram(w) : ComplexMatrix(n, n);
                const double r = max_abs_diff(lhs, rhs);
                if (r > c.residual) c.residual = r;
                if (r > bound && c.ok) {
                    c.ok = false;
                    c.where = at_vertices(x.vertices(), v, w);
                }
            }
        report.add(c);
    }

    // Clause 7: the left action is adjointable against the Gram blocks.
    {
        Check c;
        c.name = "left_adjointable";
        for (std::size_t u = 0; u < nv; ++u)
            for (std::size_t w = 0; w < nv; ++w) {
                const double r = max_abs_diff(x.left_action(u).adjoint() * x.gram(w),
                                              x.gram(w) * x.left_action(u));
                if (r > c.residual) c.residual = r;
                if (r > bound && c.ok) {
                    c.ok = false;
                    c.where = at_vertices(x.vertices(), u, w);
                }
            }
        report.add(c);
    }

    return report;
}

Correspondence graph_correspondence(const DirectedGraph& e) {
    const std::size_t n = e.edge_count();
    if (n == 0)
        throw PresentationError(
            "graph_correspondence: edgeless graph has no nonzero presentation");
    const std::size_t nv = e.vertices().size();
    std::vector<ComplexMatrix> gram(nv, ComplexMatrix(n, n));
    std::vector<ComplexMatrix> right(nv, ComplexMatrix(n, n));
    std::vector<ComplexMatrix> left(nv, ComplexMatrix(n, n));
    std::vector<std::string> tags;
    tags.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        gram[e.source_index(i)](i, i) = 1.0;
        right[e.source_index(i)](i, i) = 1.0;
        left[e.range_index(i)](i, i) = 1.0;
        tags.push_back(e.edges()[i].id);
    }
    return Correspondence(e.vertices(), n, std::move(gram), std::move(right), std::move(left),
                          std::move(tags));
}

Correspondence sigma_correspondence(const VertexSet& vertices,
                                    const std::vector<std::size_t>& sigma) {
    const std::size_t n = vertices.size();
    if (sigma.size() != n) throw ShapeError("sigma_correspondence: map not total on vertices");
    std::vector<ComplexMatrix> gram(n, ComplexMatrix(n, n));
    std::vector<ComplexMatrix> right(n, ComplexMatrix(n, n));
    std::vector<ComplexMatrix> left(n, ComplexMatrix(n, n));
    for (std::size_t v = 0; v < n; ++v) {
        if (sigma[v] >= n) throw ShapeError("sigma_correspondence: image index out of range");
        gram[v](v, v) = 1.0;
        right[v](v, v) = 1.0;
        left[sigma[v]](v, v) = 1.0;
    }
    return Correspondence(vertices, n, std::move(gram), std::move(right), std::move(left),
                          vertices.labels());
}

std::vector<Complex> inner_product(const Correspondence& x, const ComplexVector& xi,
                                   const ComplexVector& eta) {
    if (xi.size() != x.dim() || eta.size() != x.dim())
        throw ShapeError("inner_product: vector length mismatch");
    std::vector<Complex> out(x.vertices().size());
    for (std::size_t v = 0; v < out.size(); ++v) {
        const ComplexVector gy = x.gram(v).apply(eta);
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < xi.size(); ++k) acc += std::conj(xi[k]) * gy[k];
        out[v] = acc;
    }
    return out;
}

ComplexVector module_action(const Correspondence& x, const std::vector<Complex>& a,
                            const ComplexVector& xi, const std::vector<Complex>& b) {
    const std::size_t nv = x.vertices().size();
    if (a.size() != nv || b.size() != nv)
        throw ShapeError("module_action: coefficient functions must be defined on every vertex");
    if (xi.size() != x.dim()) throw ShapeError("module_action: vector length mismatch");
    ComplexMatrix left_sum(x.dim(), x.dim());
    ComplexMatrix right_sum(x.dim(), x.dim());
    for (std::size_t v = 0; v < nv; ++v) {
        left_sum = left_sum + a[v] * x.left_action(v);
        right_sum = right_sum + b[v] * x.right_action(v);
    }
    return left_sum.apply(right_sum.apply(xi));
}

Report validate_correspondence_morphism(const CorrespondenceMorphism& psi, double tol_val) {
    const Correspondence& dom = psi.domain();
    const Correspondence& cod = psi.codomain();
    const std::size_t nv = dom.vertices().size();
    const double scale = std::max(dom.gram_scale(), cod.gram_scale());
    const double bound = tol_val * scale;
    const ComplexMatrix& m = psi.matrix();

    Report report;
    report.subject = "correspondence_morphism";

    {
        Check c;
        c.name = "domain_valid";
        const Report r = validate_correspondence(dom, tol_val);
        c.ok = r.accepted;
        c.residual = r.max_residual();
        if (!r.accepted) c.where = "domain fails validation";
        report.add(c);
    }
    {
        Check c;
        c.name = "codomain_valid";
        const Report r = validate_correspondence(cod, tol_val);
        c.ok = r.accepted;
        c.residual = r.max_residual();
        if (!r.accepted) c.where = "codomain fails validation";
        report.add(c);
    }

    {
        Check c;
        c.name = "right_equivariance";
        for (std::size_t v = 0; v < nv; ++v) {
            const double r = max_abs_diff(m * dom.right_action(v), cod.right_action(v) * m);
            if (r > c.residual) c.residual = r;
            if (r > bound && c.ok) {
                c.ok = false;
                c.where = at_vertices(dom.vertices(), v);
            }
        }
        report.add(c);
    }
    {
        Check c;
        c.name = "left_equivariance";
        for (std::size_t u = 0; u < nv; ++u) {
            const double r = max_abs_diff(m * dom.left_action(u), cod.left_action(u) * m);
            if (r > c.residual) c.residual = r;
            if (r > bound && c.ok) {
                c.ok = false;
                c.where = at_vertices(dom.vertices(), u);
            }
        }
        report.add(c);
    }
    {
        Check c;
        c.name = "inner_product_preserved";
        const ComplexMatrix mh = m.adjoint();
        for (std::size_t w = 0; w < nv; ++w) {
            const double r = max_abs_diff(mh * (cod.gram(w) * m), dom.gram(w));
            if (r > c.residual) c.residual = r;
            if (r > bound && c.ok) {
                c.ok = false;
                c.where = at_vertices(dom.vertices(), w);
            }
        }
        report.add(c);
    }

    return report;
}

DimensionMatrix dimension_matrix(const Correspondence& x, double tol_rank) {
    const std::size_t nv = x.vertices().size();
    DimensionMatrix dm(x.vertices());
    for (std::size_t u = 0; u < nv; ++u)
        for (std::size_t v = 0; v < nv; ++v) {
            const ComplexMatrix compression = x.left_action(u) * x.right_action(v);
            const ComplexMatrix compressed_gram =
                compression.adjoint() * (x.gram(v) * compression);
            dm.at(u, v) = hermitian_rank(compressed_gram, tol_rank);
        }
    if (dm.total() != x.dim())
        throw PresentationError("dimension_matrix: block ranks total " +
                                std::to_string(dm.total()) + " but the presentation has dimension " +
                                std::to_string(x.dim()) +
                                " (invalid or numerically marginal presentation)");
    return dm;
}

bool is_full(const Correspondence& x, double tol_val) {
    const double bound = tol_val * x.gram_scale();
    for (std::size_t v = 0; v < x.vertices().size(); ++v)
        if (x.gram(v).max_abs() <= bound) return false;
    return true;
}

bool is_left_faithful(const Correspondence& x, double tol_val) {
    for (std::size_t u = 0; u < x.vertices().size(); ++u)
        if (x.left_action(u).max_abs() <= tol_val) return false;
    return true;
}

Correspondence change_of_generators(const Correspondence& x, const ComplexMatrix& t, double tol) {
    if (t.rows() != x.dim() || t.cols() != x.dim())
        throw ShapeError("change_of_generators: matrix must be dim x dim");
    const ComplexMatrix t_inv = invert(t, tol);
    const ComplexMatrix t_adj = t.adjoint();
    const std::size_t nv = x.vertices().size();
    std::vector<ComplexMatrix> gram, right, left;
    gram.reserve(nv);
    right.reserve(nv);
    left.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        gram.push_back(t_adj * (x.gram(v) * t));
        right.push_back(t_inv * (x.right_action(v) * t));
        left.push_back(t_inv * (x.left_action(v) * t));
    }
    return Correspondence(x.vertices(), x.dim(), std::move(gram), std::move(right),
                          std::move(left), x.generator_tags());
}

CorrespondenceMorphism change_of_generators_witness(const Correspondence& x,
                                                    const ComplexMatrix& t, double tol) {
    return CorrespondenceMorphism(change_of_generators(x, t, tol), x, t);
}

CorrespondenceMorphism identity_morphism(const Correspondence& x) {
    return CorrespondenceMorphism(x, x, ComplexMatrix::identity(x.dim()));
}

CorrespondenceMorphism compose_morphisms(const CorrespondenceMorphism& outer,
                                         const CorrespondenceMorphism& inner, double tol) {
    if (!presentations_equal(inner.codomain(), outer.domain(), tol))
        throw ShapeError("compose_morphisms: inner codomain does not match outer domain");
    return CorrespondenceMorphism(inner.domain(), outer.codomain(),
                                  outer.matrix() * inner.matrix());
}

bool presentations_equal(const Correspondence& x, const Correspondence& y, double tol) {
    if (x.vertices() != y.vertices() || x.dim() != y.dim()) return false;
    if (x.generator_tags() != y.generator_tags()) return false;
    const double bound = tol * std::max(x.gram_scale(), y.gram_scale());
    for (std::size_t v = 0; v < x.vertices().size(); ++v) {
        if (max_abs_diff(x.gram(v), y.gram(v)) > bound) return false;
        if (max_abs_diff(x.right_action(v), y.right_action(v)) > bound) return false;
        if (max_abs_diff(x.left_action(v), y.left_action(v)) > bound) return false;
    }
    return true;
}

} // namespace graphcorr
