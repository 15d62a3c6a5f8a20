#include "uqd/states.hpp"

#include "uqd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uqd {

namespace {

constexpr double kHermitianTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kEigenvalueFloor = -1e-10;

// Probabilities within this distance of an exact 0 or 1 are snapped, so a
// verdict whose exact probability is zero can never be sampled.
constexpr double kProbabilitySnap = 1e-12;

double snap_probability(double p) {
    if (p < kProbabilitySnap) return 0.0;
    if (p > 1.0 - kProbabilitySnap) return 1.0;
    return p;
}

// Re tr(P * rho), clamped to [0, 1] and snapped at the exact endpoints.
double support_outcome_probability(const ComplexMatrix& support_proj,
                                   const ComplexMatrix& rho) {
    const double raw = (support_proj * rho).trace().real();
    return snap_probability(std::clamp(raw, 0.0, 1.0));
}

} // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
        throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
    if (!all_finite(mat_))
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    if (max_abs(mat_ - mat_.adjoint()) > kHermitianTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(mat_.trace().real() - 1.0) > kTraceTol || std::abs(mat_.trace().imag()) > kTraceTol)
        throw std::invalid_argument("DensityMatrix: trace differs from 1");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < kEigenvalueFloor)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond floor");
}

DensityMatrix DensityMatrix::pure(const ComplexVector& v) {
    const double norm = v.norm();
    if (norm < 1e-12)
        throw std::invalid_argument("DensityMatrix::pure: zero vector");
    const ComplexVector unit = v / norm;
    return DensityMatrix(unit * unit.adjoint());
}

ProbeState make_probe(Index d, const std::vector<double>& coeffs) {
    if (d < 1) throw std::invalid_argument("make_probe: dimension must be >= 1");

    std::vector<double> alpha = coeffs;
    if (alpha.empty()) {
        alpha.assign(static_cast<std::size_t>(d), 1.0 / std::sqrt(static_cast<double>(d)));
    } else if (alpha.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("make_probe: expected " + std::to_string(d) +
                                    " Schmidt coefficients, got " + std::to_string(alpha.size()));
    }

    double sum_sq = 0.0;
    for (double a : alpha) {
        if (!(a > 0.0))
            throw std::invalid_argument("make_probe: Schmidt coefficients must be strictly positive");
        sum_sq += a * a;
    }
    if (std::abs(sum_sq - 1.0) > 1e-6)
        throw std::invalid_argument("make_probe: coefficients not normalized (sum of squares " +
                                    std::to_string(sum_sq) + ")");
    const double scale = 1.0 / std::sqrt(sum_sq);
    for (double& a : alpha) a *= scale;

    ProbeState probe;
    probe.main_dim = d;
    probe.ancilla_dim = d;
    probe.schmidt_coeffs = alpha;
    probe.vector = ComplexVector::Zero(d * d);
    for (Index t = 0; t < d; ++t)
        probe.vector(t * d + t) = alpha[static_cast<std::size_t>(t)];
    return probe;
}

Subspace state_support(const DensityMatrix& rho, const Tolerance& tol) {
    const EigenSystem sys = hermitian_eig(rho.mat());
    const double largest = std::max(sys.values(0), 0.0);
    const double cutoff = tol.rank_cutoff(largest);

    Index rank = 0;
    while (rank < sys.values.size() && sys.values(rank) > cutoff) ++rank;

    Subspace s;
    s.ambient_dim = rho.dim();
    s.basis = sys.vectors.leftCols(rank);
    s.tol_used = cutoff;
    return s;
}

ComplexMatrix kernel_projector(const DensityMatrix& rho, const Tolerance& tol) {
    return ComplexMatrix::Identity(rho.dim(), rho.dim()) - projector(state_support(rho, tol));
}

namespace {

std::vector<Subspace> supports_of(const std::vector<DensityMatrix>& states,
                                  const Tolerance& tol) {
    if (states.size() < 2)
        throw std::invalid_argument("need at least 2 states");
    const Index dim = states.front().dim();
    std::vector<Subspace> supports;
    supports.reserve(states.size());
    for (const auto& rho : states) {
        if (rho.dim() != dim)
            throw std::invalid_argument("states have mismatched dimensions");
        supports.push_back(state_support(rho, tol));
    }
    return supports;
}

} // namespace

std::vector<bool> states_unambiguously_distinguishable(
    const std::vector<DensityMatrix>& states, const Tolerance& tol) {
    const auto supports = supports_of(states, tol);
    std::vector<bool> result(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        std::vector<Subspace> others;
        for (std::size_t j = 0; j < states.size(); ++j)
            if (j != i) others.push_back(supports[j]);
        const Subspace rest = sum_subspaces(others, tol);
        result[i] = !contains(rest, supports[i], tol).contained;
    }
    return result;
}

std::vector<std::vector<bool>> pairwise_support_condition(
    const std::vector<DensityMatrix>& states, const Tolerance& tol) {
    const auto supports = supports_of(states, tol);
    const std::size_t n = states.size();
    std::vector<std::vector<bool>> result(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                result[i][j] = !contains(supports[j], supports[i], tol).contained;
    return result;
}

SupportConditionError::SupportConditionError(std::size_t contained, std::size_t within)
    : std::runtime_error("support of state " + std::to_string(contained + 1) +
                         " is contained in support of state " + std::to_string(within + 1)),
      contained_index(contained),
      within_index(within) {}

void validate_measurement_plan(const MeasurementPlan& plan) {
    if (plan.copies != plan.per_copy.size())
        throw std::invalid_argument("measurement plan: copies field disagrees with projector list");
    if (plan.copies == 0)
        throw std::invalid_argument("measurement plan: no copies");
    if (plan.copies > 20)
        throw std::invalid_argument("measurement plan: more than 20 copies unsupported");

    const Index dim = plan.dim();
    const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
    for (const auto& copy : plan.per_copy) {
        if (copy.support.rows() != dim || copy.support.cols() != dim ||
            copy.kernel.rows() != dim || copy.kernel.cols() != dim)
            throw std::invalid_argument("measurement plan: projector dimension mismatch");
        if (max_abs(copy.support + copy.kernel - identity) > 1e-9)
            throw std::invalid_argument("measurement plan: projectors do not sum to identity");
        for (const ComplexMatrix* p : {&copy.support, &copy.kernel}) {
            if (max_abs(*p - p->adjoint()) > 1e-10)
                throw std::invalid_argument("measurement plan: projector not Hermitian");
            if (max_abs(*p * *p - *p) > 1e-10)
                throw std::invalid_argument("measurement plan: projector not idempotent");
        }
    }
}

MeasurementPlan build_multicopy_measurement(const std::vector<DensityMatrix>& states,
                                            const Tolerance& tol) {
    const auto condition = pairwise_support_condition(states, tol);
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j)
            if (i != j && !condition[i][j])
                throw SupportConditionError(i, j);

    const Index dim = states.front().dim();
    const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);

    MeasurementPlan plan;
    plan.copies = states.size();
    plan.per_copy.reserve(states.size());
    for (const auto& rho : states) {
        MeasurementPlan::CopyMeasurement copy;
        copy.support = projector(state_support(rho, tol));
        copy.kernel = identity - copy.support;
        plan.per_copy.push_back(std::move(copy));
    }
    validate_measurement_plan(plan);
    return plan;
}

OutcomeDistribution plan_outcome_probabilities(const MeasurementPlan& plan,
                                               const DensityMatrix& truth,
                                               std::size_t true_index) {
    if (truth.dim() != plan.dim())
        throw std::invalid_argument("plan_outcome_probabilities: dimension mismatch");
    if (true_index >= plan.copies)
        throw std::invalid_argument("plan_outcome_probabilities: true index out of range");

    std::vector<double> support_prob(plan.copies);
    for (std::size_t i = 0; i < plan.copies; ++i)
        support_prob[i] = support_outcome_probability(plan.per_copy[i].support, truth.mat());

    OutcomeDistribution dist;
    dist.pattern_prob.assign(std::size_t{1} << plan.copies, 0.0);
    for (std::uint32_t pattern = 0; pattern < dist.pattern_prob.size(); ++pattern) {
        double p = 1.0;
        for (std::size_t i = 0; i < plan.copies; ++i) {
            const bool on_support = (pattern >> i) & 1u;
            p *= on_support ? support_prob[i] : 1.0 - support_prob[i];
        }
        dist.pattern_prob[pattern] = p;

        const Verdict verdict = plan.decode(pattern);
        if (!verdict)
            dist.inconclusive += p;
        else if (*verdict == true_index)
            dist.success += p;
        else
            dist.error += p;
    }
    return dist;
}

VerdictCounts sample_outcomes(const MeasurementPlan& plan, const DensityMatrix& truth,
                              std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("sample_outcomes: need at least one trial");
    if (truth.dim() != plan.dim())
        throw std::invalid_argument("sample_outcomes: dimension mismatch");

    std::vector<double> support_prob(plan.copies);
    for (std::size_t i = 0; i < plan.copies; ++i)
        support_prob[i] = support_outcome_probability(plan.per_copy[i].support, truth.mat());

    VerdictCounts counts;
    counts.conclusive.assign(plan.copies, 0);
    counts.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        CounterRng rng(seed, t);
        std::uint32_t pattern = 0;
        for (std::size_t i = 0; i < plan.copies; ++i)
            if (rng.uniform() < support_prob[i]) pattern |= std::uint32_t{1} << i;

        const Verdict verdict = plan.decode(pattern);
        if (verdict)
            ++counts.conclusive[*verdict];
        else
            ++counts.inconclusive;
    }
    return counts;
}

} // namespace uqd
