#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cdd/rng.hpp"
#include "cdd/sigmap.hpp"

namespace cdd {

/// Fading model for the N transmitter-to-node links.
struct ChannelModel {
    enum class Kind { IidRayleigh, FixedGain };

    Kind kind = Kind::IidRayleigh;
    int N = 0;
    std::vector<double> gains; // FixedGain: |h_i| pinned, phase uniform

    static ChannelModel rayleigh(int N) { return ChannelModel{Kind::IidRayleigh, N, {}}; }
    static ChannelModel fixed(std::vector<double> gains)
    {
        return ChannelModel{Kind::FixedGain, static_cast<int>(gains.size()), std::move(gains)};
    }
};

/// Draw one channel realization h_1..h_N.
std::vector<cplx> sample_channel(const ChannelModel& model, Rng& rng);

/// x plus CN(0,1) noise.
cplx add_noise(cplx x, Rng& rng);

/// Row-major probability table.
struct ProbTable {
    int rows = 0;
    int cols = 0;
    std::vector<double> p;

    ProbTable() = default;
    ProbTable(int r, int c) : rows(r), cols(c), p(static_cast<size_t>(r) * c, 0.0) {}
    double& at(int r, int c) { return p[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return p[static_cast<size_t>(r) * cols + c]; }
};

enum class TableMethod { Auto, Analytic, MonteCarlo };

/// Per-node conditional laws of the quantized outputs:
/// node[i].at(m, v) = Pr(u_i = v | s = s_m, h_i).
struct TransitionModel {
    std::vector<ProbTable> node;
    TableMethod method_used = TableMethod::Auto;
    long mc_samples = 0;
};

/// True when the analytic symbol-confusion path covers this signal set
/// (BPSK/QPSK/16QAM per-axis Gaussian forms, 8PSK phase-density quadrature).
bool analytic_supported(const Constellation& c);

/// Exact hard-decision confusion matrix: entry (m, m') is the probability
/// that coherent detection returns s_{m'} when s_m was sent over gain h.
ProbTable symbol_confusion(cplx h, const Constellation& c);

/// Single-node table for a quantizer that maps the hard decision m to the
/// output node_map[m] in [0, Q). Analytic aggregates the confusion matrix;
/// Monte-Carlo simulates mc_samples receptions per symbol (rng required).
ProbTable transition_table(cplx h, const Constellation& c, std::span<const uint8_t> node_map,
                           int Q, TableMethod method, Rng* rng = nullptr, long mc_samples = 100000);

/// Same, for a linear node rule (Q = field order).
ProbTable transition_table(cplx h, const Constellation& c, const NodeRule& rule,
                           TableMethod method, Rng* rng = nullptr, long mc_samples = 100000);

/// Tables for all N nodes of one channel realization.
TransitionModel build_transition_model(std::span<const cplx> h, const Constellation& c,
                                       const std::vector<std::vector<uint8_t>>& node_maps, int Q,
                                       TableMethod method, Rng* rng = nullptr,
                                       long mc_samples = 100000);

/// Gaussian tail probability Q(x).
double q_func(double x);

} // namespace cdd
