/**
 * JSON ingestion and report serialization.
 *
 * Channel-set file format:
 *   { "dimension": d,
 *     "tolerance": { "rel": r, "abs": a },          // optional
 *     "channels": [ { "name": "...", "kraus": [ M, ... ] }, ... ] }
 * where each matrix M is an array of d rows, each row an array of d entries,
 * each entry a 2-array [re, im] of plain numbers (integer or decimal; no
 * expressions). Channel names must be unique. All indices in emitted
 * documents are 1-based.
 */

#pragma once

#include "uqd/discrimination.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace uqd::io {

/// Malformed input; the message names the offending channel/matrix.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ChannelSet load_channel_set(const std::string& path);
ChannelSet channel_set_from_json(const nlohmann::json& doc);
nlohmann::json channel_set_to_json(const ChannelSet& set);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& context);

nlohmann::json feasibility_to_json(const FeasibilityReport& report,
                                   const std::vector<std::string>& names);

/// Full-precision strategy export; re-ingesting it reproduces evaluation
/// results exactly (doubles are serialized so they round-trip).
nlohmann::json strategy_to_json(const Strategy& s);
Strategy strategy_from_json(const nlohmann::json& doc);
bool is_strategy_document(const nlohmann::json& doc);

nlohmann::json evaluation_to_json(const std::vector<ChannelOutcomeProbabilities>& per_channel,
                                  const std::vector<std::string>& names);

nlohmann::json counts_to_json(const VerdictCounts& counts, std::size_t true_index,
                              const std::vector<std::string>& names, std::uint64_t seed);

nlohmann::json scan_to_json(const ScanReport& report, std::uint64_t samples,
                            std::uint64_t seed);

/// The channel-set documents shipped with the repository under data/.
std::map<std::string, nlohmann::json> bundled_examples();

} // namespace uqd::io
