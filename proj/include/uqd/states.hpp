/**
 * Density matrices, entangled probe states, state supports, and the
 * multi-copy projective measurement plan used for unambiguous
 * discrimination: one {support, kernel} projector pair per copy, with a
 * conclusive verdict only when exactly one copy lands on its support.
 */

#pragma once

#include "uqd/numerics.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace uqd {

class DensityMatrix {
public:
    /// Validates Hermiticity (1e-9), unit trace (1e-9) and positivity
    /// (eigenvalues >= -1e-10). Throws std::invalid_argument otherwise.
    explicit DensityMatrix(ComplexMatrix mat);

    /// |v><v| / <v|v>. Throws on a zero vector.
    static DensityMatrix pure(const ComplexVector& v);

    Index dim() const { return mat_.rows(); }
    const ComplexMatrix& mat() const { return mat_; }

private:
    ComplexMatrix mat_;
};

/// Bipartite pure state sum_t alpha_t |t>|t_a> on main (x) ancilla, with all
/// Schmidt coefficients strictly positive. Index convention: component
/// (t, u) of the composite space sits at t * ancilla_dim + u.
struct ProbeState {
    Index main_dim = 0;
    Index ancilla_dim = 0;
    std::vector<double> schmidt_coeffs;
    ComplexVector vector; // main_dim * ancilla_dim entries, unit norm
};

/// Default coefficients are 1/sqrt(d) (maximally entangled). Supplied
/// coefficients must all be > 0 and normalized within 1e-6; they are
/// renormalized exactly on construction.
ProbeState make_probe(Index d, const std::vector<double>& coeffs = {});

/// Span of eigenvectors with eigenvalue > max(tol.rel * largest, tol.abs).
Subspace state_support(const DensityMatrix& rho, const Tolerance& tol = {});

/// I minus the support projector.
ComplexMatrix kernel_projector(const DensityMatrix& rho, const Tolerance& tol = {});

/// Entry i is true iff supp(rho_i) is not contained in the sum of the other
/// states' supports.
std::vector<bool> states_unambiguously_distinguishable(
    const std::vector<DensityMatrix>& states, const Tolerance& tol = {});

/// Entry (i, j), i != j, is true iff supp(rho_i) is not contained in
/// supp(rho_j). Diagonal entries are false.
std::vector<std::vector<bool>> pairwise_support_condition(
    const std::vector<DensityMatrix>& states, const Tolerance& tol = {});

/// Pairwise support condition failed: supp(state contained_index) lies
/// inside supp(state within_index).
struct SupportConditionError : std::runtime_error {
    SupportConditionError(std::size_t contained, std::size_t within);
    std::size_t contained_index;
    std::size_t within_index;
};

/// Empty means inconclusive; a value is the identified state index.
using Verdict = std::optional<std::size_t>;

/// Per-copy projective measurement {support_i, kernel_i}. Copy outcomes are
/// packed into a bitmask: bit i set means copy i landed on its support
/// projector. Only the n single-bit patterns decode to a conclusive verdict.
struct MeasurementPlan {
    struct CopyMeasurement {
        ComplexMatrix support; // projector onto supp(rho_i)
        ComplexMatrix kernel;  // complement projector
    };

    std::size_t copies = 0;
    std::vector<CopyMeasurement> per_copy;

    Index dim() const { return per_copy.empty() ? 0 : per_copy.front().support.rows(); }

    Verdict decode(std::uint32_t pattern) const {
        for (std::size_t i = 0; i < copies; ++i)
            if (pattern == (std::uint32_t{1} << i)) return i;
        return std::nullopt;
    }
};

/// Checks the plan invariants: support + kernel == I within 1e-9 and both
/// projectors Hermitian idempotent within 1e-10. Throws on violation.
void validate_measurement_plan(const MeasurementPlan& plan);

/// Builds the per-copy plan {P_i = projector(supp(rho_i)), Q_i = I - P_i}.
/// Requires the pairwise support condition; throws SupportConditionError
/// with the witness pair otherwise.
MeasurementPlan build_multicopy_measurement(const std::vector<DensityMatrix>& states,
                                            const Tolerance& tol = {});

struct OutcomeDistribution {
    std::vector<double> pattern_prob; // size 2^copies, indexed by bitmask
    double success = 0.0;      // conclusive on the declared true index
    double error = 0.0;        // conclusive on any other index
    double inconclusive = 0.0; // remainder
};

/// Exact outcome distribution when every copy holds `truth`: the probability
/// of a pattern is the product of per-copy projector traces. The summary
/// classifies patterns against the declared true index.
OutcomeDistribution plan_outcome_probabilities(const MeasurementPlan& plan,
                                               const DensityMatrix& truth,
                                               std::size_t true_index);

struct VerdictCounts {
    std::vector<std::uint64_t> conclusive; // per state index
    std::uint64_t inconclusive = 0;
    std::uint64_t trials = 0;
};

/// Monte Carlo sampling of plan outcomes. Trial t draws its per-copy
/// outcomes from a counter-based stream derived from (seed, t), so the
/// counts are reproducible for a given (seed, trials) regardless of
/// evaluation order.
VerdictCounts sample_outcomes(const MeasurementPlan& plan, const DensityMatrix& truth,
                              std::uint64_t trials, std::uint64_t seed);

} // namespace uqd
