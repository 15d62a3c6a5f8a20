#include "uqd/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace uqd::io {

using nlohmann::json;

namespace {

double number_from_json(const json& j, const std::string& context) {
    if (!j.is_number())
        throw ParseError(context + ": expected a number, got " + std::string(j.type_name()));
    return j.get<double>();
}

Complex entry_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(context + ": expected a [re, im] pair");
    return {number_from_json(j[0], context + " re"), number_from_json(j[1], context + " im")};
}

json entry_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

std::string ordinal_label(const std::string& prefix, std::size_t index) {
    return prefix + "[" + std::to_string(index) + "]";
}

Tolerance tolerance_from_json(const json& doc) {
    Tolerance tol;
    if (!doc.contains("tolerance")) return tol;
    const json& t = doc.at("tolerance");
    if (!t.is_object()) throw ParseError("tolerance: expected an object");
    if (t.contains("rel")) tol.rel = number_from_json(t.at("rel"), "tolerance.rel");
    if (t.contains("abs")) tol.abs = number_from_json(t.at("abs"), "tolerance.abs");
    if (tol.rel < 0 || tol.abs < 0) throw ParseError("tolerance: values must be nonnegative");
    return tol;
}

} // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty())
        throw ParseError(context + ": expected a non-empty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    ComplexMatrix m;
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        const std::string row_context = context + " row " + std::to_string(r);
        if (!row.is_array() || row.empty())
            throw ParseError(row_context + ": expected a non-empty array of entries");
        if (r == 0) {
            cols = row.size();
            m.resize(static_cast<Index>(rows), static_cast<Index>(cols));
        } else if (row.size() != cols) {
            throw ParseError(row_context + ": expected " + std::to_string(cols) +
                             " entries, got " + std::to_string(row.size()));
        }
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Index>(r), static_cast<Index>(c)) =
                entry_from_json(row[c], row_context + " col " + std::to_string(c));
    }
    return m;
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(entry_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ChannelSet channel_set_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("channel set: expected a JSON object");
    if (!doc.contains("dimension")) throw ParseError("channel set: missing \"dimension\"");
    if (!doc.contains("channels")) throw ParseError("channel set: missing \"channels\"");

    const json& jdim = doc.at("dimension");
    if (!jdim.is_number_integer() || jdim.get<long long>() < 1)
        throw ParseError("dimension: expected a positive integer");
    const Index dim = jdim.get<Index>();

    const Tolerance tol = tolerance_from_json(doc);

    const json& jchannels = doc.at("channels");
    if (!jchannels.is_array() || jchannels.empty())
        throw ParseError("channels: expected a non-empty array");

    std::vector<KrausChannel> channels;
    std::set<std::string> seen_names;
    for (std::size_t i = 0; i < jchannels.size(); ++i) {
        const json& jc = jchannels[i];
        const std::string fallback = ordinal_label("channel", i + 1);
        if (!jc.is_object()) throw ParseError(fallback + ": expected an object");
        if (!jc.contains("name") || !jc.at("name").is_string())
            throw ParseError(fallback + ": missing string \"name\"");
        const std::string name = jc.at("name").get<std::string>();
        if (!seen_names.insert(name).second)
            throw ParseError("channel '" + name + "': duplicate name");

        if (!jc.contains("kraus") || !jc.at("kraus").is_array() || jc.at("kraus").empty())
            throw ParseError("channel '" + name + "': missing non-empty \"kraus\" array");

        std::vector<ComplexMatrix> kraus;
        for (std::size_t k = 0; k < jc.at("kraus").size(); ++k) {
            const std::string context = "channel '" + name + "' " + ordinal_label("kraus", k);
            ComplexMatrix op = matrix_from_json(jc.at("kraus")[k], context);
            if (op.rows() != dim || op.cols() != dim)
                throw ParseError(context + ": expected a " + std::to_string(dim) + "x" +
                                 std::to_string(dim) + " matrix, got " +
                                 std::to_string(op.rows()) + "x" + std::to_string(op.cols()));
            kraus.push_back(std::move(op));
        }

        KrausChannel c;
        c.name = name;
        c.dim = dim;
        c.kraus = std::move(kraus);
        const ValidationReport report = validate(c, tol);
        if (!report.ok) throw ParseError("channel '" + name + "': " + report.detail);
        channels.push_back(std::move(c));
    }

    try {
        return ChannelSet(std::move(channels), tol);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

ChannelSet load_channel_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return channel_set_from_json(doc);
}

json channel_set_to_json(const ChannelSet& set) {
    json jchannels = json::array();
    for (const auto& c : set.channels) {
        json jkraus = json::array();
        for (const auto& op : c.kraus) jkraus.push_back(matrix_to_json(op));
        jchannels.push_back({{"name", c.name}, {"kraus", std::move(jkraus)}});
    }
    return {{"dimension", set.dim()},
            {"tolerance", {{"rel", set.tol.rel}, {"abs", set.tol.abs}}},
            {"channels", std::move(jchannels)}};
}

json feasibility_to_json(const FeasibilityReport& report, const std::vector<std::string>& names) {
    json per_channel = json::array();
    for (std::size_t i = 0; i < report.per_channel.size(); ++i) {
        per_channel.push_back({{"index", i + 1},
                               {"name", names[i]},
                               {"distinguishable", static_cast<bool>(report.per_channel[i])},
                               {"residual", report.per_channel_residual[i]}});
    }
    json witnesses = json::array();
    for (const auto& w : report.witnesses) {
        json jw = {{"channel", w.channel + 1},
                   {"name", names[w.channel]},
                   {"max_residual", w.max_residual}};
        if (w.within)
            jw["within"] = *w.within + 1;
        else
            jw["within"] = "rest";
        witnesses.push_back(std::move(jw));
    }
    return {{"type", "feasibility"},
            {"mode", report.mode == FeasibilityMode::SingleUse ? "single_use" : "multi_use"},
            {"overall", report.overall},
            {"per_channel", std::move(per_channel)},
            {"witnesses", std::move(witnesses)}};
}

namespace {

std::string pattern_string(std::uint32_t pattern, std::size_t copies) {
    std::string s(copies, 'Q');
    for (std::size_t i = 0; i < copies; ++i)
        if ((pattern >> i) & 1u) s[i] = 'P';
    return s;
}

json vector_to_json(const ComplexVector& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(entry_to_json(v(i)));
    return out;
}

ComplexVector vector_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty()) throw ParseError(context + ": expected a non-empty array");
    ComplexVector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Index>(i)) = entry_from_json(j[i], ordinal_label(context, i));
    return v;
}

} // namespace

json strategy_to_json(const Strategy& s) {
    json probe = {{"main_dim", s.probe.main_dim},
                  {"ancilla_dim", s.probe.ancilla_dim},
                  {"schmidt_coeffs", s.probe.schmidt_coeffs},
                  {"vector", vector_to_json(s.probe.vector)}};

    json outputs = json::array();
    for (const auto& rho : s.per_use_outputs) outputs.push_back(matrix_to_json(rho.mat()));

    json per_copy = json::array();
    for (const auto& copy : s.plan.per_copy)
        per_copy.push_back({{"support", matrix_to_json(copy.support)},
                            {"kernel", matrix_to_json(copy.kernel)}});

    json decode = json::array();
    for (std::uint32_t pattern = 0; pattern < (std::uint32_t{1} << s.plan.copies); ++pattern) {
        const Verdict verdict = s.plan.decode(pattern);
        json entry = {{"pattern", pattern_string(pattern, s.plan.copies)}};
        if (verdict) {
            entry["verdict"] = "conclusive";
            entry["channel"] = *verdict + 1;
        } else {
            entry["verdict"] = "inconclusive";
        }
        decode.push_back(std::move(entry));
    }

    return {{"type", "strategy"},
            {"uses", s.uses},
            {"channel_names", s.channel_names},
            {"probe", std::move(probe)},
            {"per_use_outputs", std::move(outputs)},
            {"plan", {{"copies", s.plan.copies}, {"per_copy", std::move(per_copy)},
                      {"decode", std::move(decode)}}}};
}

bool is_strategy_document(const json& doc) {
    return doc.is_object() && doc.contains("type") && doc.at("type") == "strategy";
}

Strategy strategy_from_json(const json& doc) {
    if (!is_strategy_document(doc)) throw ParseError("strategy: missing \"type\": \"strategy\"");
    for (const char* key : {"uses", "channel_names", "probe", "per_use_outputs", "plan"})
        if (!doc.contains(key))
            throw ParseError(std::string("strategy: missing \"") + key + "\"");

    Strategy s;
    s.uses = doc.at("uses").get<std::size_t>();
    s.channel_names = doc.at("channel_names").get<std::vector<std::string>>();

    const json& jprobe = doc.at("probe");
    s.probe.main_dim = jprobe.at("main_dim").get<Index>();
    s.probe.ancilla_dim = jprobe.at("ancilla_dim").get<Index>();
    s.probe.schmidt_coeffs = jprobe.at("schmidt_coeffs").get<std::vector<double>>();
    s.probe.vector = vector_from_json(jprobe.at("vector"), "probe.vector");
    if (std::abs(s.probe.vector.norm() - 1.0) > 1e-9)
        throw ParseError("probe.vector: not normalized");

    for (std::size_t i = 0; i < doc.at("per_use_outputs").size(); ++i) {
        const std::string context = ordinal_label("per_use_outputs", i);
        try {
            s.per_use_outputs.emplace_back(matrix_from_json(doc.at("per_use_outputs")[i], context));
        } catch (const std::invalid_argument& e) {
            throw ParseError(context + ": " + e.what());
        }
    }

    const json& jplan = doc.at("plan");
    s.plan.copies = jplan.at("copies").get<std::size_t>();
    for (std::size_t i = 0; i < jplan.at("per_copy").size(); ++i) {
        const json& jcopy = jplan.at("per_copy")[i];
        MeasurementPlan::CopyMeasurement copy;
        copy.support = matrix_from_json(jcopy.at("support"), ordinal_label("plan.per_copy", i) + ".support");
        copy.kernel = matrix_from_json(jcopy.at("kernel"), ordinal_label("plan.per_copy", i) + ".kernel");
        s.plan.per_copy.push_back(std::move(copy));
    }

    if (s.uses != s.plan.copies || s.uses != s.per_use_outputs.size() ||
        s.uses != s.channel_names.size())
        throw ParseError("strategy: uses, outputs, names and plan copies disagree");
    try {
        validate_measurement_plan(s.plan);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return s;
}

json evaluation_to_json(const std::vector<ChannelOutcomeProbabilities>& per_channel,
                        const std::vector<std::string>& names) {
    json rows = json::array();
    for (std::size_t i = 0; i < per_channel.size(); ++i)
        rows.push_back({{"index", i + 1},
                        {"name", names[i]},
                        {"success", per_channel[i].success},
                        {"error", per_channel[i].error},
                        {"inconclusive", per_channel[i].inconclusive}});
    return {{"type", "evaluation"}, {"per_channel", std::move(rows)}};
}

json counts_to_json(const VerdictCounts& counts, std::size_t true_index,
                    const std::vector<std::string>& names, std::uint64_t seed) {
    std::uint64_t wrong = 0;
    json conclusive = json::array();
    for (std::size_t i = 0; i < counts.conclusive.size(); ++i) {
        conclusive.push_back({{"index", i + 1},
                              {"name", names[i]},
                              {"count", counts.conclusive[i]}});
        if (i != true_index) wrong += counts.conclusive[i];
    }
    return {{"type", "simulation"},
            {"truth", true_index + 1},
            {"truth_name", names[true_index]},
            {"trials", counts.trials},
            {"seed", seed},
            {"counts", {{"conclusive", std::move(conclusive)},
                        {"inconclusive", counts.inconclusive},
                        {"wrong_conclusive", wrong}}}};
}

json scan_to_json(const ScanReport& report, std::uint64_t samples, std::uint64_t seed) {
    json out = {{"type", "scan"},
                {"samples", samples},
                {"tested", report.tested},
                {"seed", seed},
                {"any_input_found", report.any_input_found}};
    if (report.any_input_found) {
        out["witness_sample"] = *report.witness_sample;
        out["witness_state"] = vector_to_json(*report.witness_state);
        out["message"] = "witness input found at sample " + std::to_string(*report.witness_sample);
    } else {
        // sampling cannot prove impossibility, so the message never claims it
        out["message"] = "no witness found among " + std::to_string(report.tested) + " samples";
    }
    return out;
}

std::map<std::string, json> bundled_examples() {
    const auto set_json = [](std::vector<KrausChannel> channels) {
        return channel_set_to_json(ChannelSet(std::move(channels)));
    };

    std::map<std::string, json> out;
    out["bitflip-phaseflip"] = set_json({pauli_channel(0.5, 0.5, 0.0, 0.0, "bit-flip"),
                                         pauli_channel(0.5, 0.0, 0.0, 0.5, "phase-flip")});
    out["three-pauli"] = set_json({pauli_channel(0.5, 0.5, 0.0, 0.0, "bit-flip"),
                                   pauli_channel(0.5, 0.0, 0.0, 0.5, "phase-flip"),
                                   pauli_channel(0.0, 0.5, 0.0, 0.5, "x-z-mix")});
    out["identity-vs-x"] = set_json({unitary_channel(sigma_id(), "identity"),
                                     unitary_channel(sigma_x(), "x")});
    return out;
}

} // namespace uqd::io
