#include "uqd/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace uqd {

namespace {

// Looser than the rank tolerance so hand-entered decimal data passes.
constexpr double kCompletenessTol = 1e-8;
constexpr double kUnitaryTol = 1e-9;

} // namespace

ValidationReport validate(const KrausChannel& c, const Tolerance& tol) {
    ValidationReport report;
    if (c.kraus.empty()) {
        report.detail = "empty Kraus list";
        return report;
    }
    const Index d = c.dim;
    if (d < 1) {
        report.detail = "dimension must be >= 1";
        return report;
    }
    for (std::size_t k = 0; k < c.kraus.size(); ++k) {
        const ComplexMatrix& op = c.kraus[k];
        const std::string label = "kraus[" + std::to_string(k) + "]";
        if (op.rows() != d || op.cols() != d) {
            report.detail = label + " is not " + std::to_string(d) + "x" + std::to_string(d);
            return report;
        }
        if (!all_finite(op)) {
            report.detail = label + " has non-finite entries";
            return report;
        }
        if (max_abs(op) < tol.abs) {
            report.detail = label + " is numerically zero";
            return report;
        }
    }

    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& op : c.kraus) sum += op.adjoint() * op;
    report.completeness_defect = max_abs(sum - ComplexMatrix::Identity(d, d));
    if (report.completeness_defect > kCompletenessTol) {
        report.detail = "completeness defect " + std::to_string(report.completeness_defect);
        return report;
    }
    report.ok = true;
    return report;
}

KrausChannel make_channel(std::string name, std::vector<ComplexMatrix> kraus,
                          const Tolerance& tol) {
    KrausChannel c;
    c.name = std::move(name);
    c.dim = kraus.empty() ? 0 : kraus.front().rows();
    c.kraus = std::move(kraus);
    const ValidationReport report = validate(c, tol);
    if (!report.ok)
        throw std::invalid_argument("channel '" + c.name + "': " + report.detail);
    return c;
}

Subspace support(const KrausChannel& c, const Tolerance& tol) {
    std::vector<ComplexVector> vectors;
    vectors.reserve(c.kraus.size());
    for (const auto& op : c.kraus) vectors.push_back(vectorize(op));
    return span_of(vectors, tol);
}

ChannelSet::ChannelSet(std::vector<KrausChannel> chans, Tolerance tolerance)
    : channels(std::move(chans)), tol(tolerance) {
    if (channels.size() < 2)
        throw std::invalid_argument("channel set needs at least 2 channels");
    const Index d = channels.front().dim;
    for (const auto& c : channels) {
        if (c.dim != d)
            throw std::invalid_argument("channel '" + c.name + "': dimension " +
                                        std::to_string(c.dim) + " differs from set dimension " +
                                        std::to_string(d));
        const ValidationReport report = validate(c, tol);
        if (!report.ok)
            throw std::invalid_argument("channel '" + c.name + "': " + report.detail);
    }
}

Subspace set_support(const std::vector<KrausChannel>& channels, const Tolerance& tol,
                     std::optional<std::size_t> exclude) {
    std::vector<Subspace> parts;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (exclude && *exclude == i) continue;
        parts.push_back(support(channels[i], tol));
    }
    if (parts.empty())
        throw std::invalid_argument("set_support: no channels left after exclusion");
    return sum_subspaces(parts, tol);
}

Subspace set_support(const ChannelSet& set, std::optional<std::size_t> exclude) {
    return set_support(set.channels, set.tol, exclude);
}

DensityMatrix apply(const KrausChannel& c, const DensityMatrix& rho) {
    if (rho.dim() != c.dim)
        throw std::invalid_argument("apply: channel dimension " + std::to_string(c.dim) +
                                    " does not match state dimension " +
                                    std::to_string(rho.dim()));
    ComplexMatrix out = ComplexMatrix::Zero(c.dim, c.dim);
    for (const auto& op : c.kraus) out += op * rho.mat() * op.adjoint();
    return DensityMatrix(std::move(out));
}

KrausChannel extend_with_identity(const KrausChannel& c, Index ancilla_dim) {
    if (ancilla_dim < 1)
        throw std::invalid_argument("extend_with_identity: ancilla dimension must be >= 1");
    if (ancilla_dim == 1) return c;

    const ComplexMatrix identity = ComplexMatrix::Identity(ancilla_dim, ancilla_dim);
    KrausChannel extended;
    extended.name = c.name;
    extended.dim = c.dim * ancilla_dim;
    extended.kraus.reserve(c.kraus.size());
    for (const auto& op : c.kraus) extended.kraus.push_back(kron(op, identity));
    return extended;
}

KrausChannel tensor_power(const KrausChannel& c, int power, Index guard) {
    if (power < 1)
        throw std::invalid_argument("tensor_power: power must be >= 1");

    Index dim = 1;
    for (int n = 0; n < power; ++n) {
        dim *= c.dim;
        if (dim > guard)
            throw std::invalid_argument("tensor_power: dimension " + std::to_string(c.dim) +
                                        "^" + std::to_string(power) + " exceeds guard " +
                                        std::to_string(guard));
    }

    std::vector<ComplexMatrix> ops = {ComplexMatrix::Identity(1, 1)};
    for (int n = 0; n < power; ++n) {
        std::vector<ComplexMatrix> next;
        next.reserve(ops.size() * c.kraus.size());
        for (const auto& left : ops)
            for (const auto& right : c.kraus) next.push_back(kron(left, right));
        ops = std::move(next);
    }

    KrausChannel powered;
    powered.name = c.name;
    powered.dim = dim;
    powered.kraus = std::move(ops);
    return powered;
}

const ComplexMatrix& sigma_id() {
    static const ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    return m;
}

const ComplexMatrix& sigma_x() {
    static const ComplexMatrix m = [] {
        ComplexMatrix x(2, 2);
        x << 0, 1, 1, 0;
        return x;
    }();
    return m;
}

const ComplexMatrix& sigma_y() {
    static const ComplexMatrix m = [] {
        ComplexMatrix y(2, 2);
        y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
        return y;
    }();
    return m;
}

const ComplexMatrix& sigma_z() {
    static const ComplexMatrix m = [] {
        ComplexMatrix z(2, 2);
        z << 1, 0, 0, -1;
        return z;
    }();
    return m;
}

KrausChannel pauli_channel(double weight_id, double weight_x, double weight_y,
                           double weight_z, std::string name) {
    const double weights[] = {weight_id, weight_x, weight_y, weight_z};
    const ComplexMatrix* ops[] = {&sigma_id(), &sigma_x(), &sigma_y(), &sigma_z()};

    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0)
            throw std::invalid_argument("pauli_channel: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kCompletenessTol)
        throw std::invalid_argument("pauli_channel: weights sum to " + std::to_string(sum));

    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < 4; ++k) {
        // zero-weight terms are dropped so they cannot pollute the support
        if (weights[k] <= 0.0) continue;
        kraus.push_back(std::sqrt(weights[k]) * *ops[k]);
    }
    return make_channel(std::move(name), std::move(kraus));
}

KrausChannel unitary_channel(const ComplexMatrix& u, std::string name) {
    if (u.rows() != u.cols() || u.rows() < 1)
        throw std::invalid_argument("unitary_channel: matrix must be square");
    const ComplexMatrix identity = ComplexMatrix::Identity(u.rows(), u.cols());
    if (max_abs(u.adjoint() * u - identity) > kUnitaryTol)
        throw std::invalid_argument("unitary_channel: matrix is not unitary");
    return make_channel(std::move(name), {u});
}

KrausChannel mix_kraus(const KrausChannel& c, const ComplexMatrix& isometry) {
    const Index k = static_cast<Index>(c.kraus.size());
    if (isometry.cols() != k)
        throw std::invalid_argument("mix_kraus: isometry must have one column per Kraus operator");
    if (isometry.rows() < k)
        throw std::invalid_argument("mix_kraus: isometry cannot shorten the Kraus list");
    const ComplexMatrix gram = isometry.adjoint() * isometry;
    if (max_abs(gram - ComplexMatrix::Identity(k, k)) > kUnitaryTol)
        throw std::invalid_argument("mix_kraus: matrix is not an isometry");

    std::vector<ComplexMatrix> mixed;
    mixed.reserve(static_cast<std::size_t>(isometry.rows()));
    for (Index j = 0; j < isometry.rows(); ++j) {
        ComplexMatrix op = ComplexMatrix::Zero(c.dim, c.dim);
        for (Index l = 0; l < k; ++l) op += isometry(j, l) * c.kraus[static_cast<std::size_t>(l)];
        // an isometry with a zero row yields a zero operator; drop it like a
        // zero-weight builder term
        if (max_abs(op) < Tolerance{}.abs) continue;
        mixed.push_back(std::move(op));
    }

    KrausChannel out;
    out.name = c.name;
    out.dim = c.dim;
    out.kraus = std::move(mixed);
    return out;
}

} // namespace uqd
