#pragma once

#include "uqd/channels.hpp"
#include "uqd/numerics.hpp"
#include "uqd/rng.hpp"
#include "uqd/states.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace test_helpers {

using uqd::Complex;
using uqd::ComplexMatrix;
using uqd::ComplexVector;
using uqd::Index;

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return uqd::max_abs(a - b);
}

inline ComplexMatrix random_gaussian_matrix(Index rows, Index cols, uqd::CounterRng& rng) {
    ComplexMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const auto [re, im] = rng.gaussian_pair();
            m(i, j) = Complex(re, im);
        }
    return m;
}

inline ComplexVector random_unit_vector(Index dim, uqd::CounterRng& rng) {
    ComplexVector v = random_gaussian_matrix(dim, 1, rng).col(0);
    return v / v.norm();
}

/// Orthonormal-column matrix from the QR of a Gaussian draw.
inline ComplexMatrix random_isometry(Index rows, Index cols, uqd::CounterRng& rng) {
    const ComplexMatrix g = random_gaussian_matrix(rows, cols, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    return qr.householderQ() * ComplexMatrix::Identity(rows, cols);
}

inline ComplexMatrix random_unitary(Index dim, uqd::CounterRng& rng) {
    return random_isometry(dim, dim, rng);
}

/// Random valid channel: Gaussian operators G_k whitened by
/// (sum_k G_k^dag G_k)^(-1/2) so the completeness condition holds.
inline uqd::KrausChannel random_channel(Index dim, std::size_t n_kraus, uqd::CounterRng& rng,
                                        std::string name = "random") {
    std::vector<ComplexMatrix> raw;
    for (std::size_t k = 0; k < n_kraus; ++k) raw.push_back(random_gaussian_matrix(dim, dim, rng));

    ComplexMatrix gram = ComplexMatrix::Zero(dim, dim);
    for (const auto& g : raw) gram += g.adjoint() * g;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
    const ComplexMatrix whitener = solver.operatorInverseSqrt();

    std::vector<ComplexMatrix> kraus;
    for (const auto& g : raw) kraus.push_back(g * whitener);
    return uqd::make_channel(std::move(name), std::move(kraus));
}

/// Discrete Weyl (generalized Pauli) operators on C^d: the shift X and the
/// clock Z. Their d^2 products are pairwise orthogonal in the
/// Hilbert-Schmidt inner product, so a channel built on a subset of them has
/// exactly that subset as its operator support.
inline ComplexMatrix weyl_shift(Index d) {
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    for (Index j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
    return x;
}

inline ComplexMatrix weyl_clock(Index d) {
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (Index j = 0; j < d; ++j) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d);
        z(j, j) = Complex(std::cos(phase), std::sin(phase));
    }
    return z;
}

struct WeylTerm {
    Index a; // shift power
    Index b; // clock power
    double weight;
};

inline uqd::KrausChannel weyl_channel(Index d, const std::vector<WeylTerm>& terms,
                                      std::string name = "weyl") {
    std::vector<ComplexMatrix> kraus;
    const ComplexMatrix x = weyl_shift(d);
    const ComplexMatrix z = weyl_clock(d);
    for (const auto& term : terms) {
        ComplexMatrix op = ComplexMatrix::Identity(d, d);
        for (Index i = 0; i < term.a; ++i) op = x * op;
        for (Index i = 0; i < term.b; ++i) op = z * op;
        kraus.push_back(std::sqrt(term.weight) * op);
    }
    return uqd::make_channel(std::move(name), std::move(kraus));
}

// Bell vectors in C^4, main-major index convention (|ab> at 2a + b).
inline ComplexVector bell_phi_plus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}
inline ComplexVector bell_phi_minus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = 1.0 / std::sqrt(2.0);
    v(3) = -1.0 / std::sqrt(2.0);
    return v;
}
inline ComplexVector bell_psi_plus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = v(2) = 1.0 / std::sqrt(2.0);
    return v;
}
inline ComplexVector bell_psi_minus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return v;
}

/// Independent oracle for plan outcome probabilities: materializes
/// truth^(x copies) and the explicit Kronecker product of each pattern's
/// projectors, never touching the per-copy product formula under test.
inline std::vector<double> oracle_pattern_probabilities(const uqd::MeasurementPlan& plan,
                                                        const uqd::DensityMatrix& truth) {
    ComplexMatrix truth_power = ComplexMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < plan.copies; ++i) truth_power = uqd::kron(truth_power, truth.mat());

    std::vector<double> probs(std::size_t{1} << plan.copies);
    for (std::uint32_t pattern = 0; pattern < probs.size(); ++pattern) {
        ComplexMatrix measurement = ComplexMatrix::Identity(1, 1);
        for (std::size_t i = 0; i < plan.copies; ++i) {
            const bool on_support = (pattern >> i) & 1u;
            measurement = uqd::kron(measurement, on_support ? plan.per_copy[i].support
                                                            : plan.per_copy[i].kernel);
        }
        probs[pattern] = (measurement * truth_power).trace().real();
    }
    return probs;
}

} // namespace test_helpers
