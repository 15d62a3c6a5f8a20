#include "uqd/numerics.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace uqd {

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

Subspace span_of(const std::vector<ComplexVector>& vectors, const Tolerance& tol) {
    if (vectors.empty())
        throw std::invalid_argument("span_of: empty vector list");
    const Index dim = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != dim)
            throw std::invalid_argument("span_of: vectors have mismatched dimensions");

    ComplexMatrix stacked(dim, static_cast<Index>(vectors.size()));
    for (Index c = 0; c < stacked.cols(); ++c)
        stacked.col(c) = vectors[static_cast<std::size_t>(c)];

    Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    const double largest = sigma.size() > 0 ? sigma(0) : 0.0;
    const double cutoff = tol.rank_cutoff(largest);

    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;

    Subspace s;
    s.ambient_dim = dim;
    s.basis = svd.matrixU().leftCols(rank);
    s.tol_used = cutoff;
    return s;
}

ContainmentReport contains(const Subspace& outer, const Subspace& inner, const Tolerance& tol) {
    if (outer.ambient_dim != inner.ambient_dim)
        throw std::invalid_argument("contains: ambient dimension mismatch");

    ContainmentReport report;
    report.coefficients = outer.basis.adjoint() * inner.basis;
    report.contained = true;

    const double cutoff = tol.containment_cutoff();
    for (Index l = 0; l < inner.rank(); ++l) {
        // residual of inner basis vector l after projection onto outer
        const ComplexVector residual =
            inner.basis.col(l) - outer.basis * report.coefficients.col(l);
        const double norm = residual.norm();
        report.max_residual = std::max(report.max_residual, norm);
        if (norm > cutoff) report.contained = false;
    }
    return report;
}

Subspace sum_subspaces(const std::vector<Subspace>& parts, const Tolerance& tol) {
    if (parts.empty())
        throw std::invalid_argument("sum_subspaces: empty list");
    const Index dim = parts.front().ambient_dim;
    std::vector<ComplexVector> all;
    for (const auto& p : parts) {
        if (p.ambient_dim != dim)
            throw std::invalid_argument("sum_subspaces: ambient dimension mismatch");
        for (Index c = 0; c < p.rank(); ++c) all.push_back(p.basis.col(c));
    }
    if (all.empty()) {
        // sum of rank-0 subspaces
        Subspace s;
        s.ambient_dim = dim;
        s.basis = ComplexMatrix(dim, 0);
        s.tol_used = tol.rank_cutoff(0.0);
        return s;
    }
    return span_of(all, tol);
}

ComplexMatrix projector(const Subspace& s) {
    if (s.rank() == 0) return ComplexMatrix::Zero(s.ambient_dim, s.ambient_dim);
    return s.basis * s.basis.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector vectorize(const ComplexMatrix& m) {
    ComplexVector v(m.rows() * m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            v(i * m.cols() + j) = m(i, j);
    return v;
}

EigenSystem hermitian_eig(const ComplexMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("hermitian_eig: matrix not square");
    if (max_abs(m - m.adjoint()) > 1e-9)
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed");

    // Eigen returns ascending order; flip to descending.
    EigenSystem sys;
    sys.values = solver.eigenvalues().reverse();
    sys.vectors = solver.eigenvectors().rowwise().reverse();
    return sys;
}

} // namespace uqd
