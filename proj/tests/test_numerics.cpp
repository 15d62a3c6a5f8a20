#include "uqd/numerics.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <stdexcept>
#include <vector>

using namespace uqd;
using test_helpers::max_abs_diff;

namespace {

ComplexVector unit(Index dim, Index k) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(k) = 1.0;
    return v;
}

} // namespace

TEST_CASE("span_of basic ranks") {
    const ComplexVector e1 = unit(2, 0);
    const ComplexVector e2 = unit(2, 1);

    SUBCASE("duplicate vector collapses to rank 1") {
        const Subspace s = span_of({e1, e1});
        CHECK(s.rank() == 1);
        CHECK(max_abs_diff(projector(s), e1 * e1.adjoint()) < 1e-12);
    }
    SUBCASE("orthogonal pair spans the plane") {
        CHECK(span_of({e1, e2}).rank() == 2);
    }
    SUBCASE("forced linear dependence") {
        const ComplexVector vi = vectorize(sigma_id());
        const ComplexVector vx = vectorize(sigma_x());
        CHECK(span_of({vi, vx, vi + vx}).rank() == 2);
    }
    SUBCASE("all-zero input has rank 0") {
        const Subspace s = span_of({ComplexVector::Zero(3)});
        CHECK(s.rank() == 0);
        CHECK(s.ambient_dim == 3);
        CHECK(max_abs(projector(s)) == 0.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(span_of({}), std::invalid_argument);
        CHECK_THROWS_AS(span_of({unit(2, 0), unit(3, 0)}), std::invalid_argument);
    }
}

TEST_CASE("containment of operator spans") {
    const ComplexVector vi = vectorize(sigma_id());
    const ComplexVector vx = vectorize(sigma_x());
    const ComplexVector vz = vectorize(sigma_z());

    SUBCASE("span{X,Z} inside span{I,X,Z}") {
        const ContainmentReport r = contains(span_of({vi, vx, vz}), span_of({vx, vz}));
        CHECK(r.contained);
        CHECK(r.max_residual < 1e-12);
        CHECK(r.coefficients.rows() == 3);
        CHECK(r.coefficients.cols() == 2);
    }
    SUBCASE("span{I,X} escapes span{I,Z}") {
        const ContainmentReport r = contains(span_of({vi, vz}), span_of({vi, vx}));
        CHECK_FALSE(r.contained);
        CHECK(r.max_residual > 0.1);
    }
    SUBCASE("reflexivity") {
        const Subspace s = span_of({vi, vx});
        const ContainmentReport r = contains(s, s);
        CHECK(r.contained);
        CHECK(r.max_residual <= 1e-12);
    }
    SUBCASE("contained inner vectors reconstruct through the coefficients") {
        const Subspace outer = span_of({vi, vx, vz});
        const Subspace inner = span_of({vx, vz});
        const ContainmentReport r = contains(outer, inner);
        CHECK(max_abs_diff(outer.basis * r.coefficients, inner.basis) < 1e-12);
    }
    SUBCASE("rank-0 inner is trivially contained") {
        const Subspace zero = span_of({ComplexVector::Zero(4)});
        const ContainmentReport r = contains(span_of({vi}), zero);
        CHECK(r.contained);
        CHECK(r.max_residual == 0.0);
    }
    SUBCASE("ambient dimension mismatch") {
        CHECK_THROWS_AS(contains(span_of({vi}), span_of({unit(2, 0)})), std::invalid_argument);
    }
}

TEST_CASE("sum_subspaces") {
    const ComplexVector vi = vectorize(sigma_id());
    const ComplexVector vx = vectorize(sigma_x());
    const ComplexVector vz = vectorize(sigma_z());

    SUBCASE("span{I,X} + span{I,Z} is three-dimensional") {
        const Subspace sum = sum_subspaces({span_of({vi, vx}), span_of({vi, vz})});
        CHECK(sum.rank() == 3);
        CHECK(contains(sum, span_of({vi})).contained);
        CHECK(contains(sum, span_of({vx})).contained);
        CHECK(contains(sum, span_of({vz})).contained);
    }
    SUBCASE("singleton sum is the subspace itself") {
        const Subspace s = span_of({vi, vx});
        CHECK(max_abs_diff(projector(sum_subspaces({s})), projector(s)) < 1e-12);
    }
    SUBCASE("orthogonal rank-1 parts add up") {
        CHECK(sum_subspaces({span_of({unit(3, 0)}), span_of({unit(3, 2)})}).rank() == 2);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(sum_subspaces({}), std::invalid_argument);
        CHECK_THROWS_AS(sum_subspaces({span_of({unit(2, 0)}), span_of({unit(3, 0)})}),
                        std::invalid_argument);
    }
}

TEST_CASE("projector") {
    SUBCASE("full space gives the identity") {
        const Subspace s = span_of({unit(3, 0), unit(3, 1), unit(3, 2)});
        CHECK(max_abs_diff(projector(s), ComplexMatrix::Identity(3, 3)) < 1e-12);
    }
    SUBCASE("Bell projector has quarter corners") {
        const Subspace s = span_of({test_helpers::bell_phi_plus()});
        const ComplexMatrix p = projector(s);
        CHECK(std::abs(p(0, 0) - Complex(0.5, 0)) < 1e-12);
        CHECK(std::abs(p(0, 3) - Complex(0.5, 0)) < 1e-12);
        CHECK(std::abs(p(3, 0) - Complex(0.5, 0)) < 1e-12);
        CHECK(std::abs(p(3, 3) - Complex(0.5, 0)) < 1e-12);
        CHECK(std::abs(p(1, 1)) < 1e-12);
        CHECK(std::abs(p.trace() - Complex(1, 0)) < 1e-12);
    }
}

TEST_CASE("kron, vectorize, hermitian_eig") {
    SUBCASE("kron of identities") {
        CHECK(max_abs_diff(kron(sigma_id(), sigma_id()), ComplexMatrix::Identity(4, 4)) == 0.0);
    }
    SUBCASE("vectorize stacks rows") {
        const ComplexVector v = vectorize(sigma_x());
        CHECK(v(0) == Complex(0, 0));
        CHECK(v(1) == Complex(1, 0));
        CHECK(v(2) == Complex(1, 0));
        CHECK(v(3) == Complex(0, 0));
    }
    SUBCASE("maximally mixed qubit eigenvalues") {
        const EigenSystem sys = hermitian_eig(0.5 * ComplexMatrix::Identity(2, 2));
        CHECK(sys.values(0) == doctest::Approx(0.5));
        CHECK(sys.values(1) == doctest::Approx(0.5));
    }
    SUBCASE("descending order and reconstruction") {
        CounterRng rng(11, 0);
        const ComplexMatrix g = test_helpers::random_gaussian_matrix(4, 4, rng);
        const ComplexMatrix h = g + g.adjoint();
        const EigenSystem sys = hermitian_eig(h);
        for (Index i = 0; i + 1 < sys.values.size(); ++i) CHECK(sys.values(i) >= sys.values(i + 1));
        const ComplexMatrix rebuilt =
            sys.vectors * sys.values.asDiagonal().toDenseMatrix().cast<Complex>() * sys.vectors.adjoint();
        CHECK(max_abs_diff(rebuilt, h) < 1e-10);
    }
    SUBCASE("non-Hermitian input is rejected") {
        ComplexMatrix m(2, 2);
        m << 0, 1, 0, 0;
        CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
    }
}

TEST_CASE("subspace properties on random inputs") {
    CounterRng rng(2024, 0);

    SUBCASE("span is invariant under invertible recombination") {
        for (int round = 0; round < 20; ++round) {
            const Index dim = 5;
            const Index count = 3;
            std::vector<ComplexVector> vectors;
            for (Index k = 0; k < count; ++k)
                vectors.push_back(test_helpers::random_gaussian_matrix(dim, 1, rng).col(0));

            // well-conditioned recombination: random + 2I
            ComplexMatrix recombo = test_helpers::random_gaussian_matrix(count, count, rng) +
                                    2.0 * ComplexMatrix::Identity(count, count);
            std::vector<ComplexVector> recombined;
            for (Index k = 0; k < count; ++k) {
                ComplexVector v = ComplexVector::Zero(dim);
                for (Index l = 0; l < count; ++l) v += recombo(k, l) * vectors[l];
                recombined.push_back(v);
            }
            const double diff =
                max_abs_diff(projector(span_of(vectors)), projector(span_of(recombined)));
            CHECK(diff < 1e-9);
        }
    }

    SUBCASE("mutual containment forces equal projectors") {
        for (int round = 0; round < 10; ++round) {
            std::vector<ComplexVector> vectors;
            for (int k = 0; k < 2; ++k)
                vectors.push_back(test_helpers::random_gaussian_matrix(4, 1, rng).col(0));
            const Subspace a = span_of(vectors);
            std::swap(vectors[0], vectors[1]);
            vectors.push_back(vectors[0] + vectors[1]);
            const Subspace b = span_of(vectors);
            REQUIRE(contains(a, b).contained);
            REQUIRE(contains(b, a).contained);
            CHECK(max_abs_diff(projector(a), projector(b)) < 1e-9);
        }
    }

    SUBCASE("computed bases are orthonormal, projectors idempotent Hermitian") {
        for (int round = 0; round < 10; ++round) {
            std::vector<ComplexVector> vectors;
            for (int k = 0; k < 4; ++k)
                vectors.push_back(test_helpers::random_gaussian_matrix(6, 1, rng).col(0));
            const Subspace s = span_of(vectors);
            const ComplexMatrix gram = s.basis.adjoint() * s.basis;
            CHECK(max_abs_diff(gram, ComplexMatrix::Identity(s.rank(), s.rank())) < 1e-10);
            const ComplexMatrix p = projector(s);
            CHECK(max_abs_diff(p, p.adjoint()) < 1e-10);
            CHECK(max_abs_diff(p * p, p) < 1e-10);
            CHECK(std::abs(p.trace().real() - static_cast<double>(s.rank())) < 1e-10);
        }
    }

    SUBCASE("rank of a sum is subadditive") {
        for (int round = 0; round < 10; ++round) {
            std::vector<ComplexVector> va, vb;
            for (int k = 0; k < 2; ++k) {
                va.push_back(test_helpers::random_gaussian_matrix(5, 1, rng).col(0));
                vb.push_back(test_helpers::random_gaussian_matrix(5, 1, rng).col(0));
            }
            const Subspace a = span_of(va);
            const Subspace b = span_of(vb);
            CHECK(sum_subspaces({a, b}).rank() <= a.rank() + b.rank());
        }
    }
}
