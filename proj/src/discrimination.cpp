#include "uqd/discrimination.hpp"

#include "uqd/rng.hpp"

#include <algorithm>
#include <limits>

namespace uqd {

FeasibilityReport check_single_use(const ChannelSet& set) {
    FeasibilityReport report;
    report.mode = FeasibilityMode::SingleUse;
    report.overall = true;

    for (std::size_t i = 0; i < set.size(); ++i) {
        const Subspace own = support(set.channels[i], set.tol);
        const Subspace rest = set_support(set, i);
        const ContainmentReport containment = contains(rest, own, set.tol);

        report.per_channel.push_back(!containment.contained);
        report.per_channel_residual.push_back(containment.max_residual);
        if (containment.contained) {
            report.overall = false;
            report.witnesses.push_back({i, std::nullopt, containment.max_residual});
        }
    }
    return report;
}

FeasibilityReport check_multi_use(const ChannelSet& set) {
    std::vector<Subspace> supports;
    supports.reserve(set.size());
    for (const auto& c : set.channels) supports.push_back(support(c, set.tol));

    FeasibilityReport report;
    report.mode = FeasibilityMode::MultiUse;
    report.overall = true;

    for (std::size_t i = 0; i < set.size(); ++i) {
        bool ok = true;
        double min_residual = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (j == i) continue;
            const ContainmentReport containment = contains(supports[j], supports[i], set.tol);
            min_residual = std::min(min_residual, containment.max_residual);
            if (containment.contained) {
                ok = false;
                report.witnesses.push_back({i, j, containment.max_residual});
            }
        }
        report.per_channel.push_back(ok);
        report.per_channel_residual.push_back(min_residual);
        if (!ok) report.overall = false;
    }
    return report;
}

InfeasibleSetError::InfeasibleSetError(std::size_t contained, std::size_t within)
    : std::runtime_error("support of channel " + std::to_string(contained + 1) +
                         " is contained in support of channel " + std::to_string(within + 1) +
                         "; no number of uses can discriminate unambiguously"),
      contained_index(contained),
      within_index(within) {}

Strategy build_strategy(const ChannelSet& set, const std::vector<double>& probe_coeffs) {
    const FeasibilityReport feasibility = check_multi_use(set);
    if (!feasibility.overall) {
        const ContainmentWitness& w = feasibility.witnesses.front();
        throw InfeasibleSetError(w.channel, w.within.value());
    }

    Strategy strategy;
    strategy.uses = set.size();
    strategy.probe = make_probe(set.dim(), probe_coeffs);

    const DensityMatrix probe_state = DensityMatrix::pure(strategy.probe.vector);
    strategy.per_use_outputs.reserve(set.size());
    for (const auto& c : set.channels) {
        const KrausChannel extended = extend_with_identity(c, set.dim());
        strategy.per_use_outputs.push_back(apply(extended, probe_state));
        strategy.channel_names.push_back(c.name);
    }

    strategy.plan = build_multicopy_measurement(strategy.per_use_outputs, set.tol);
    return strategy;
}

std::vector<ChannelOutcomeProbabilities> evaluate_strategy(const Strategy& s) {
    std::vector<ChannelOutcomeProbabilities> result;
    result.reserve(s.per_use_outputs.size());
    for (std::size_t i = 0; i < s.per_use_outputs.size(); ++i) {
        const OutcomeDistribution dist =
            plan_outcome_probabilities(s.plan, s.per_use_outputs[i], i);
        result.push_back({dist.success, dist.error, dist.inconclusive});
    }
    return result;
}

VerdictCounts simulate_strategy(const Strategy& s, std::size_t true_index,
                                std::uint64_t trials, std::uint64_t seed) {
    if (true_index >= s.per_use_outputs.size())
        throw std::invalid_argument("simulate_strategy: true index out of range");
    return sample_outcomes(s.plan, s.per_use_outputs[true_index], trials, seed);
}

namespace {

ComplexVector random_pure_state(Index dim, std::uint64_t seed, std::uint64_t sample) {
    CounterRng rng(seed, sample);
    ComplexVector v(dim);
    do {
        for (Index t = 0; t < dim; ++t) {
            const auto [re, im] = rng.gaussian_pair();
            v(t) = Complex(re, im);
        }
    } while (v.norm() < 1e-6);
    return v / v.norm();
}

} // namespace

ScanReport no_ancilla_single_use_scan(const ChannelSet& set, std::uint64_t samples,
                                      std::uint64_t seed) {
    if (samples < 1)
        throw std::invalid_argument("no_ancilla_single_use_scan: need at least one sample");

    ScanReport report;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const ComplexVector input = random_pure_state(set.dim(), seed, s);
        const DensityMatrix rho = DensityMatrix::pure(input);

        std::vector<DensityMatrix> outputs;
        outputs.reserve(set.size());
        for (const auto& c : set.channels) outputs.push_back(apply(c, rho));

        const std::vector<bool> verdicts = states_unambiguously_distinguishable(outputs, set.tol);
        ++report.tested;
        if (std::all_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; })) {
            report.any_input_found = true;
            report.witness_sample = s;
            report.witness_state = input;
            break;
        }
    }
    return report;
}

} // namespace uqd
