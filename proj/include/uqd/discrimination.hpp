/**
 * Top-level decision procedures for unambiguous discrimination of channel
 * sets, plus the constructive strategy: a full-Schmidt entangled probe per
 * use, one use per hypothesis, and the per-copy projective plan on the
 * outputs. The strategy never returns a wrong conclusive verdict.
 */

#pragma once

#include "uqd/channels.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uqd {

enum class FeasibilityMode { SingleUse, MultiUse };

/// Records that channel `channel`'s support was found inside another
/// support: a specific channel for the multi-use test, or the span of all
/// remaining channels (empty `within`) for the single-use test.
struct ContainmentWitness {
    std::size_t channel = 0;
    std::optional<std::size_t> within;
    double max_residual = 0.0;
};

struct FeasibilityReport {
    FeasibilityMode mode = FeasibilityMode::SingleUse;
    std::vector<bool> per_channel;
    // Smallest escape residual over the containment tests deciding each
    // channel; near-threshold values flag nearly degenerate sets.
    std::vector<double> per_channel_residual;
    bool overall = false;
    std::vector<ContainmentWitness> witnesses;
};

/// Single-use test: channel i is unambiguously identifiable iff its support
/// escapes the summed support of all the others.
FeasibilityReport check_single_use(const ChannelSet& set);

/// Multi-use test: feasible iff no channel's support is contained in another
/// single channel's support. A failure here is final for every number of
/// uses; a success is achieved constructively with n uses.
FeasibilityReport check_multi_use(const ChannelSet& set);

struct InfeasibleSetError : std::runtime_error {
    InfeasibleSetError(std::size_t contained, std::size_t within);
    std::size_t contained_index;
    std::size_t within_index;
};

/// One use per hypothesis: probe each of the n uses with the same entangled
/// state and measure each output copy against its own {support, kernel}
/// pair.
struct Strategy {
    std::size_t uses = 0;
    ProbeState probe;
    std::vector<DensityMatrix> per_use_outputs; // rho_i = (E_i (x) I)(psi)
    MeasurementPlan plan;
    std::vector<std::string> channel_names;
};

/// Builds the n-use strategy for a multi-use-feasible set. Probe defaults to
/// maximally entangled; any full-Schmidt coefficient vector works, only the
/// success probabilities change. Throws InfeasibleSetError with the witness
/// pair otherwise.
Strategy build_strategy(const ChannelSet& set, const std::vector<double>& probe_coeffs = {});

struct ChannelOutcomeProbabilities {
    double success = 0.0;
    double error = 0.0;
    double inconclusive = 0.0;
};

/// Exact per-channel outcome probabilities of the strategy, one entry per
/// possible true channel. Error entries are zero up to arithmetic noise.
std::vector<ChannelOutcomeProbabilities> evaluate_strategy(const Strategy& s);

/// Monte Carlo run of the strategy with the given true channel, under the
/// counter-based seeding contract of sample_outcomes.
VerdictCounts simulate_strategy(const Strategy& s, std::size_t true_index,
                                std::uint64_t trials, std::uint64_t seed);

struct ScanReport {
    bool any_input_found = false;
    std::uint64_t tested = 0;
    std::optional<std::uint64_t> witness_sample; // index of the first hit
    std::optional<ComplexVector> witness_state;
};

/// Heuristic refuter for ancilla-free single-use discrimination: draws pure
/// states uniformly in the main space (normalized complex Gaussians) and
/// tests whether the channel outputs become unambiguously distinguishable.
/// Finding no witness among k samples proves nothing; callers must report it
/// as "no witness found", never as impossibility.
ScanReport no_ancilla_single_use_scan(const ChannelSet& set, std::uint64_t samples,
                                      std::uint64_t seed);

} // namespace uqd
