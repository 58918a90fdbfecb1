#include "doctest.h"

#include <cmath>

#include "graphcorr/complexla.hpp"
#include "generators.hpp"

using namespace graphcorr;

namespace {

HermitianForm euclid(std::size_t n) { return HermitianForm(ComplexMatrix::identity(n)); }

double gram_deviation(const std::vector<ComplexVector>& basis, const HermitianForm& form) {
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Complex expected = i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            worst = std::max(worst, std::abs(form.inner(basis[i], basis[j]) - expected));
        }
    return worst;
}

// Residual of v against span(basis) in the form's seminorm.
double span_residual(const ComplexVector& v, const std::vector<ComplexVector>& basis,
                     const HermitianForm& form) {
    ComplexVector r = v;
    for (const auto& b : basis) {
        const Complex c = form.inner(b, r);
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c * b[k];
    }
    return std::sqrt(std::max(0.0, form.inner(r, r).real()));
}

ComplexMatrix random_psd(SplitMix64& rng, std::size_t n, std::size_t rank) {
    ComplexMatrix a(rank, n);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = testgen::complex_gaussian(rng);
    return a.adjoint() * a;
}

} // namespace

TEST_SUITE("complexla") {

TEST_CASE("orthonormal input passes through") {
    const std::vector<ComplexVector> vectors{{1.0, 0.0}, {0.0, 1.0}};
    const auto basis = form_orthonormalize(vectors, euclid(2), 1e-9);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == vectors[0]);
    CHECK(basis[1] == vectors[1]);
}

TEST_CASE("duplicate vector collapses to rank one") {
    const std::vector<ComplexVector> vectors{{1.0, 0.0}, {1.0, 0.0}};
    const auto basis = form_orthonormalize(vectors, euclid(2), 1e-9);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == ComplexVector{1.0, 0.0});
}

TEST_CASE("skew pair orthonormalizes against the identity form") {
    const std::vector<ComplexVector> vectors{{2.0, 0.0}, {1.0, 1.0}};
    const auto form = euclid(2);
    const auto basis = form_orthonormalize(vectors, form, 1e-9);
    REQUIRE(basis.size() == 2);
    CHECK(gram_deviation(basis, form) <= 1e-9);
}

TEST_CASE("orthonormalization properties over random PSD forms") {
    const double tol = 1e-8;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SplitMix64 rng(1000 + seed);
        const std::size_t n = 1 + rng.below(8);
        const std::size_t form_rank = 1 + rng.below(n);
        const HermitianForm form(random_psd(rng, n, form_rank), 1e-6);
        const std::size_t m = 1 + rng.below(10);
        std::vector<ComplexVector> vectors(m, ComplexVector(n));
        for (auto& v : vectors)
            for (auto& z : v) z = testgen::complex_gaussian(rng);

        const auto basis = form_orthonormalize(vectors, form, tol);

        ComplexMatrix gram(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) gram(i, j) = form.inner(vectors[i], vectors[j]);
        CHECK(basis.size() == hermitian_rank(gram, tol));
        CHECK(gram_deviation(basis, form) <= 10 * tol);
        for (const auto& v : vectors) {
            const double scale =
                std::max(1.0, std::sqrt(std::max(0.0, form.inner(v, v).real())));
            CHECK(span_residual(v, basis, form) <= 10 * tol * scale);
        }
    }
}

TEST_CASE("extension with empty onset is plain orthonormalization") {
    const auto basis = orthonormal_extension({}, {{1.0, 0.0}}, euclid(2), 1e-9);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == ComplexVector{1.0, 0.0});
}

TEST_CASE("extension completes the standard basis") {
    const auto basis =
        orthonormal_extension({{1.0, 0.0}}, {{1.0, 0.0}, {0.0, 1.0}}, euclid(2), 1e-9);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == ComplexVector{1.0, 0.0});
    CHECK(std::abs(basis[1][1]) == doctest::Approx(1.0));
    CHECK(std::abs(basis[1][0]) <= 1e-12);
}

TEST_CASE("extension of a diagonal unit vector") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::vector<ComplexVector> onset{{inv_sqrt2, inv_sqrt2}};
    const auto form = euclid(2);
    const auto basis = orthonormal_extension(onset, {{1.0, 0.0}, {0.0, 1.0}}, form, 1e-9);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == onset[0]);
    CHECK(gram_deviation(basis, form) <= 1e-9);
}

TEST_CASE("extension keeps the onset as an exact prefix") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(2000 + seed);
        const std::size_t n = 2 + rng.below(6);
        const HermitianForm form = euclid(n);
        std::vector<ComplexVector> raw(1 + rng.below(n - 1), ComplexVector(n));
        for (auto& v : raw)
            for (auto& z : v) z = testgen::complex_gaussian(rng);
        const auto onset = form_orthonormalize(raw, form, 1e-10);
        std::vector<ComplexVector> spanning(n, ComplexVector(n, Complex{0.0, 0.0}));
        for (std::size_t i = 0; i < n; ++i) spanning[i][i] = 1.0;

        const auto basis = orthonormal_extension(onset, spanning, form, 1e-8);
        REQUIRE(basis.size() == n);
        for (std::size_t i = 0; i < onset.size(); ++i) CHECK(basis[i] == onset[i]);
        CHECK(gram_deviation(basis, form) <= 1e-7);
    }
}

TEST_CASE("extension rejects a non-orthonormal onset") {
    CHECK_THROWS_AS(orthonormal_extension({{2.0, 0.0}}, {{0.0, 1.0}}, euclid(2), 1e-9),
                    PresentationError);
}

TEST_CASE("hermitian rank on fixed spectra") {
    CHECK(hermitian_rank(ComplexMatrix(3, 3), 1e-8) == 0);
    CHECK(hermitian_rank(ComplexMatrix::identity(4), 1e-8) == 4);
    ComplexMatrix d(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 1e-14;
    CHECK(hermitian_rank(d, 1e-8) == 1);
}

TEST_CASE("hermitian rank is invariant under unitary conjugation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(3000 + seed);
        const std::size_t n = 1 + rng.below(8);
        ComplexMatrix d(n, n);
        std::size_t expected = 0;
        for (std::size_t i = 0; i < n; ++i) {
            switch (rng.below(3)) {
            case 0: break;
            case 1: d(i, i) = 1e-13; break;
            default:
                d(i, i) = 0.5 + rng.uniform();
                ++expected;
            }
        }
        const ComplexMatrix q = testgen::random_unitary(rng, n);
        CHECK(hermitian_rank(q.adjoint() * (d * q), 1e-8) == expected);
        CHECK(hermitian_rank(d, 1e-8) == expected);
    }
}

TEST_CASE("hermitian form construction enforces its invariants") {
    CHECK_THROWS_AS(HermitianForm(ComplexMatrix::from_rows({{1.0, Complex{0.0, 1.0}},
                                                            {Complex{0.0, 1.0}, 1.0}})),
                    PresentationError); // not Hermitian
    CHECK_THROWS_AS(HermitianForm(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}})),
                    PresentationError); // indefinite
    CHECK_NOTHROW(HermitianForm(ComplexMatrix(3, 3))); // the zero form is a valid form
    CHECK_THROWS_AS(HermitianForm(ComplexMatrix(2, 3)), ShapeError);
}

TEST_CASE("invert on fixed matrices") {
    const ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(max_abs_diff(invert(id, 1e-9), id) == 0.0);

    const ComplexMatrix d = ComplexMatrix::from_rows({{2.0, 0.0}, {0.0, 4.0}});
    const ComplexMatrix dinv = invert(d, 1e-9);
    CHECK(dinv(0, 0) == Complex{0.5, 0.0});
    CHECK(dinv(1, 1) == Complex{0.25, 0.0});
}

TEST_CASE("invert residual stays below the contract bound") {
    SplitMix64 rng(4000);
    ComplexMatrix m(5, 5);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) m(i, j) = testgen::complex_gaussian(rng);
        m(i, i) += 4.0; // diagonally dominant, hence well-conditioned
    }
    const ComplexMatrix inv = invert(m, 1e-9);
    CHECK(max_abs_diff(m * inv, ComplexMatrix::identity(5)) <= 1e-9);
}

TEST_CASE("invert rejects singular and ill-conditioned input") {
    CHECK_THROWS_AS(invert(ComplexMatrix(3, 3), 1e-9), SingularError);
    ComplexMatrix nearly(2, 2);
    nearly(0, 0) = 1.0;
    nearly(1, 1) = 1e-12;
    CHECK_THROWS_AS(invert(nearly, 1e-9), SingularError);
    CHECK(!is_invertible(ComplexMatrix(2, 3), 1e-9));
    CHECK(is_invertible(ComplexMatrix::identity(2), 1e-9));
}

TEST_CASE("dimension and finiteness preconditions") {
    CHECK_THROWS_AS(form_orthonormalize({{1.0, 0.0, 0.0}}, euclid(2), 1e-9), ShapeError);
    const double nan = std::nan("");
    CHECK_THROWS_AS(form_orthonormalize({{Complex{nan, 0.0}, 0.0}}, euclid(2), 1e-9), ShapeError);
    CHECK_THROWS_AS(form_orthonormalize({{1.0, 0.0}}, euclid(2), 0.0), ShapeError);
}

} // TEST_SUITE
