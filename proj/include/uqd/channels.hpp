/**
 * Quantum operations in Kraus form: validation against the completeness
 * condition, operator-span supports, channel action on density matrices,
 * ancilla extension, tensor powers, and builders for common channels.
 */

#pragma once

#include "uqd/numerics.hpp"
#include "uqd/states.hpp"

#include <optional>
#include <string>
#include <vector>

namespace uqd {

/// Named channel acting on a d-dimensional space, given by its Kraus
/// operators. Construct through make_channel (or a builder) to get the
/// invariants checked; `validate` reports without throwing.
struct KrausChannel {
    std::string name;
    Index dim = 0;
    std::vector<ComplexMatrix> kraus;
};

struct ValidationReport {
    bool ok = false;
    double completeness_defect = 0.0; // ||sum E^dag E - I||_max
    std::string detail;               // empty when ok
};

/// Shape checks plus the completeness condition. A numerically zero operator
/// (max-abs below tol.abs) in the list is reported as invalid, since it only
/// inflates support computations with noise.
ValidationReport validate(const KrausChannel& c, const Tolerance& tol = {});

/// Validating constructor; throws std::invalid_argument with the report
/// detail on failure.
KrausChannel make_channel(std::string name, std::vector<ComplexMatrix> kraus,
                          const Tolerance& tol = {});

/// Span of the vectorized Kraus operators, a subspace of C^(d^2).
/// Well-defined: any two Kraus representations of the same map are related
/// by an isometry and span the same operator subspace.
Subspace support(const KrausChannel& c, const Tolerance& tol = {});

/// A set of channels with a shared dimension and tolerance. Discrimination
/// questions need at least two hypotheses.
struct ChannelSet {
    explicit ChannelSet(std::vector<KrausChannel> channels, Tolerance tol = {});

    std::vector<KrausChannel> channels;
    Tolerance tol;

    Index dim() const { return channels.front().dim; }
    std::size_t size() const { return channels.size(); }
};

/// Sum of the supports of the listed channels, optionally excluding one
/// (exclusion realizes the "rest of the set" support of the single-use
/// condition). Throws if the list, or the list after exclusion, is empty.
Subspace set_support(const std::vector<KrausChannel>& channels, const Tolerance& tol = {},
                     std::optional<std::size_t> exclude = std::nullopt);
Subspace set_support(const ChannelSet& set, std::optional<std::size_t> exclude = std::nullopt);

/// sum_k E_k rho E_k^dag. Trace is preserved by the completeness condition.
DensityMatrix apply(const KrausChannel& c, const DensityMatrix& rho);

/// Kraus operators E_k (x) I_ancilla, acting on dim * ancilla_dim.
KrausChannel extend_with_identity(const KrausChannel& c, Index ancilla_dim);

/// N-fold tensor power with all n^N Kronecker-product Kraus operators,
/// enumerated with the first copy as the most significant index. Exists for
/// exactness cross-checks; throws once d^N exceeds `guard`.
KrausChannel tensor_power(const KrausChannel& c, int power, Index guard = 64);

// Qubit operator constants.
const ComplexMatrix& sigma_id();
const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();

/// Kraus operators {sqrt(w) * sigma} for the nonzero weights. Weights must
/// be nonnegative and sum to 1 within 1e-8.
KrausChannel pauli_channel(double weight_id, double weight_x, double weight_y,
                           double weight_z, std::string name = "pauli");

/// Single-Kraus channel {U}; requires U unitary within 1e-9.
KrausChannel unitary_channel(const ComplexMatrix& u, std::string name = "unitary");

/// Re-expresses the channel through an isometry V (V^dag V = I, at least as
/// many rows as the current Kraus count): F_j = sum_k V_jk E_k. The new
/// operator list implements the identical map.
KrausChannel mix_kraus(const KrausChannel& c, const ComplexMatrix& isometry);

} // namespace uqd
