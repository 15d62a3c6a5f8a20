/**
 * Dense complex linear algebra with tolerance-aware rank decisions.
 *
 * Every subspace question in the library (operator spans, state supports,
 * containment tests) funnels through the few primitives in this header.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace uqd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Rank/containment cutoff policy: a singular value (or eigenvalue) is kept
/// iff it exceeds max(rel * largest, abs). The absolute floor keeps all-zero
/// inputs at rank 0.
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;

    double rank_cutoff(double largest) const {
        return std::max(rel * largest, abs);
    }
    double containment_cutoff() const { return std::max(rel, abs); }
};

/// Orthonormal basis of a linear subspace of C^D. The basis is stored as a
/// D x rank matrix with orthonormal columns; rank 0 is a D x 0 matrix.
struct Subspace {
    Index ambient_dim = 0;
    ComplexMatrix basis;   // ambient_dim x rank, orthonormal columns
    double tol_used = 0.0; // cutoff that decided the rank

    Index rank() const { return basis.cols(); }
};

struct ContainmentReport {
    bool contained = false;
    double max_residual = 0.0; // largest per-vector escape norm
    // Expansion of each inner basis vector in outer's basis,
    // outer.rank x inner.rank (column l corresponds to inner basis vector l).
    ComplexMatrix coefficients;
};

double max_abs(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

/// Orthonormal basis of the numerical span of `vectors`. Throws
/// std::invalid_argument on an empty list or mismatched dimensions.
Subspace span_of(const std::vector<ComplexVector>& vectors,
                 const Tolerance& tol = {});

/// Tests whether `inner` is contained in `outer`: every inner basis vector
/// must have residual norm <= max(tol.rel, tol.abs) after projection onto
/// outer. The residual is checked per vector, not aggregated.
ContainmentReport contains(const Subspace& outer, const Subspace& inner,
                           const Tolerance& tol = {});

/// Span of the union of all basis vectors.
Subspace sum_subspaces(const std::vector<Subspace>& parts,
                       const Tolerance& tol = {});

/// B * B^dagger; Hermitian, idempotent, trace == rank.
ComplexMatrix projector(const Subspace& s);

/// Standard Kronecker product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-major stacking: vec(M)(i * cols + j) = M(i, j). The convention is
/// fixed so coefficient matrices are reproducible across implementations.
ComplexVector vectorize(const ComplexMatrix& m);

struct EigenSystem {
    RealVector values;     // descending
    ComplexMatrix vectors; // column k pairs with values(k); orthonormal
};

/// Complete orthonormal eigensystem of a Hermitian matrix, eigenvalues in
/// descending order. Throws if ||m - m^dagger||_max > 1e-9.
EigenSystem hermitian_eig(const ComplexMatrix& m);

} // namespace uqd
