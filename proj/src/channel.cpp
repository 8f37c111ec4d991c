#include "cdd/channel.hpp"

#include <array>
#include <cmath>

namespace cdd {

std::vector<cplx> sample_channel(const ChannelModel& model, Rng& rng)
{
    if (model.N < 1) throw ConstructionError("channel model needs N >= 1 links");
    std::vector<cplx> h(model.N);
    switch (model.kind) {
    case ChannelModel::Kind::IidRayleigh:
        for (auto& hi : h) hi = rng.cnormal();
        break;
    case ChannelModel::Kind::FixedGain:
        if (static_cast<int>(model.gains.size()) != model.N)
            throw ConstructionError("fixed-gain channel needs one amplitude per node (" +
                                    std::to_string(model.gains.size()) + " given, N=" +
                                    std::to_string(model.N) + ")");
        for (int i = 0; i < model.N; ++i) {
            if (model.gains[i] < 0.0)
                throw ConstructionError("fixed-gain amplitudes must be nonnegative");
            const double phi = 2.0 * M_PI * rng.uniform();
            h[i] = model.gains[i] * cplx{std::cos(phi), std::sin(phi)};
        }
        break;
    }
    return h;
}

cplx add_noise(cplx x, Rng& rng) { return x + rng.cnormal(); }

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

bool analytic_supported(const Constellation& c)
{
    switch (c.kind) {
    case ConstellationKind::BPSK:
    case ConstellationKind::QPSK:
    case ConstellationKind::PSK8:
    case ConstellationKind::QAM16:
        return true;
    case ConstellationKind::Custom:
        return false;
    }
    return false;
}

namespace {

// After matched filtering, z = |h| s + n with n ~ CN(0,1): real and
// imaginary noise parts are independent N(0, 1/2), so rectangular signal
// sets decompose into per-axis PAM decisions.
constexpr double kAxisSigma = 0.70710678118654752440; // sqrt(1/2)

// Pr(detected level index b | sent level index a) for amplitude-scaled PAM
// with the given levels (ascending) and midpoint thresholds.
void pam_confusion(std::span<const double> levels, double scale, double out[], int n)
{
    for (int a = 0; a < n; ++a) {
        const double mean = scale * levels[a];
        for (int b = 0; b < n; ++b) {
            const double lo = b == 0 ? -HUGE_VAL : scale * 0.5 * (levels[b - 1] + levels[b]);
            const double hi = b == n - 1 ? HUGE_VAL : scale * 0.5 * (levels[b] + levels[b + 1]);
            // P(lo < z < hi) = P(z > lo) - P(z > hi)
            const double tail_lo = b == 0 ? 1.0 : q_func((lo - mean) / kAxisSigma);
            const double tail_hi = b == n - 1 ? 0.0 : q_func((hi - mean) / kAxisSigma);
            out[a * n + b] = tail_lo - tail_hi;
        }
    }
}

ProbTable bpsk_confusion(double amp, double rho)
{
    const double p = q_func(std::sqrt(2.0 * amp * amp * rho));
    ProbTable t(2, 2);
    t.at(0, 0) = 1.0 - p;
    t.at(0, 1) = p;
    t.at(1, 0) = p;
    t.at(1, 1) = 1.0 - p;
    return t;
}

ProbTable qpsk_confusion(double amp, double rho)
{
    const double p = q_func(std::sqrt(amp * amp * rho));
    const double q = 1.0 - p;
    const double by_weight[3] = {q * q, p * q, p * p};
    ProbTable t(4, 4);
    for (int m = 0; m < 4; ++m)
        for (int e = 0; e < 4; ++e) {
            const int w = ((e >> 1) & 1) + (e & 1);
            t.at(m, m ^ e) = by_weight[w];
        }
    return t;
}

ProbTable qam16_confusion(double amp, double rho)
{
    // Gray pair value -> level, then per-axis confusion on sorted levels.
    static constexpr std::array<int, 4> gray_to_sorted = {0, 1, 3, 2}; // 00,01,10,11 -> rank
    static constexpr std::array<double, 4> sorted_levels = {-3.0, -1.0, 1.0, 3.0};
    const double d = std::sqrt(rho / 10.0);
    double axis[16];
    pam_confusion(sorted_levels, amp * d, axis, 4);

    ProbTable t(16, 16);
    for (int m = 0; m < 16; ++m) {
        const int ra = gray_to_sorted[m >> 2], ia = gray_to_sorted[m & 3];
        for (int m2 = 0; m2 < 16; ++m2) {
            const int rb = gray_to_sorted[m2 >> 2], ib = gray_to_sorted[m2 & 3];
            t.at(m, m2) = axis[ra * 4 + rb] * axis[ia * 4 + ib];
        }
    }
    return t;
}

// Density of the received phase offset for a unit-variance complex Gaussian
// around a signal of power gamma:
//   f(t) = e^{-g}/(2 pi) + sqrt(g) cos t / (2 sqrt(pi)) e^{-g sin^2 t} (1 + erf(sqrt(g) cos t))
double phase_density(double theta, double gamma)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double root = std::sqrt(gamma);
    return std::exp(-gamma) / (2.0 * M_PI) +
           root * c / (2.0 * std::sqrt(M_PI)) * std::exp(-gamma * s * s) *
               (1.0 + std::erf(root * c));
}

// 40-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on the Legendre polynomial.
struct GaussLegendre40 {
    std::array<double, 40> x{}, w{};
    GaussLegendre40()
    {
        const int n = 40;
        for (int i = 0; i < n; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
                const double step = p1 / dp;
                xi -= step;
                if (std::abs(step) < 1e-15) break;
            }
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            x[i] = xi;
            w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        }
    }
};

double integrate_phase_density(double lo, double hi, double gamma)
{
    static const GaussLegendre40 gl;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i)
        acc += gl.w[i] * phase_density(mid + half * gl.x[i], gamma);
    return acc * half;
}

// Probability of landing d wedges away from the transmitted point. The own
// wedge (d = 0) is taken as the complement so the sharp density peak never
// has to be resolved by the quadrature.
std::array<double, 8> psk8_wedges_exact(double gamma)
{
    std::array<double, 8> wedge{};
    double others = 0.0;
    for (int d = 1; d < 8; ++d) {
        const double center = 2.0 * M_PI * d / 8.0;
        wedge[d] = integrate_phase_density(center - M_PI / 8.0, center + M_PI / 8.0, gamma);
        others += wedge[d];
    }
    wedge[0] = std::max(0.0, 1.0 - others);
    return wedge;
}

// Quadrature per lookup is too slow for million-trial sweeps, so the wedge
// probabilities are tabulated once on a dense log10(gamma) grid and read
// back with linear interpolation (absolute error below 1e-6). Outside the
// grid the density is flat (tiny gamma) or fully concentrated (huge gamma).
class Psk8WedgeTable {
public:
    static const Psk8WedgeTable& instance()
    {
        static const Psk8WedgeTable table;
        return table;
    }

    std::array<double, 8> at(double gamma) const
    {
        if (gamma <= kGammaLo) return rows_.front();
        if (gamma >= kGammaHi) return rows_.back();
        const double pos = (std::log10(gamma) - kLogLo) * kPerDecade;
        const size_t i = std::min(static_cast<size_t>(pos), rows_.size() - 2);
        const double frac = pos - static_cast<double>(i);
        std::array<double, 8> out{};
        for (int d = 0; d < 8; ++d)
            out[d] = rows_[i][d] * (1.0 - frac) + rows_[i + 1][d] * frac;
        return out;
    }

private:
    static constexpr double kLogLo = -9.0;
    static constexpr double kLogHi = 7.0;
    static constexpr int kPerDecade = 1000;
    static constexpr double kGammaLo = 1e-9;
    static constexpr double kGammaHi = 1e7;

    Psk8WedgeTable()
    {
        const size_t n = static_cast<size_t>((kLogHi - kLogLo) * kPerDecade) + 1;
        rows_.resize(n);
        for (size_t i = 0; i < n; ++i)
            rows_[i] = psk8_wedges_exact(std::pow(10.0, kLogLo + static_cast<double>(i) / kPerDecade));
    }

    std::vector<std::array<double, 8>> rows_;
};

ProbTable psk8_confusion(double amp, double rho)
{
    const double gamma = amp * amp * rho;
    const std::array<double, 8> wedge = Psk8WedgeTable::instance().at(gamma);

    // Points sit at angle index k = inverse_gray(label); recover the index
    // from the point coordinates to stay label-agnostic.
    static const std::array<int, 8> angle_index = [] {
        const Constellation ref = make_constellation("8psk", 8, 1.0);
        std::array<int, 8> idx{};
        for (int m = 0; m < 8; ++m) {
            const double phi = std::atan2(ref.points[m].imag(), ref.points[m].real());
            idx[m] = static_cast<int>(std::llround(phi / (M_PI / 4.0)) + 8) % 8;
        }
        return idx;
    }();
    ProbTable t(8, 8);
    for (int m = 0; m < 8; ++m)
        for (int m2 = 0; m2 < 8; ++m2)
            t.at(m, m2) = wedge[(angle_index[m2] - angle_index[m] + 8) % 8];
    return t;
}

} // namespace

ProbTable symbol_confusion(cplx h, const Constellation& c)
{
    const double amp = std::abs(h);
    switch (c.kind) {
    case ConstellationKind::BPSK:
        return bpsk_confusion(amp, c.energy);
    case ConstellationKind::QPSK:
        return qpsk_confusion(amp, c.energy);
    case ConstellationKind::QAM16:
        return qam16_confusion(amp, c.energy);
    case ConstellationKind::PSK8:
        return psk8_confusion(amp, c.energy);
    case ConstellationKind::Custom:
        break;
    }
    throw ContractError("no analytic confusion matrix for constellation '" + c.name + "'");
}

ProbTable transition_table(cplx h, const Constellation& c, std::span<const uint8_t> node_map,
                           int Q, TableMethod method, Rng* rng, long mc_samples)
{
    const int M = c.M();
    if (static_cast<int>(node_map.size()) != M)
        throw DimensionError("node map covers " + std::to_string(node_map.size()) +
                             " symbols, constellation has M=" + std::to_string(M));
    for (uint8_t v : node_map)
        if (v >= Q) throw DimensionError("node map output outside [0, Q)");

    if (method == TableMethod::Auto)
        method = analytic_supported(c) ? TableMethod::Analytic : TableMethod::MonteCarlo;

    ProbTable t(M, Q);
    if (method == TableMethod::Analytic) {
        const ProbTable conf = symbol_confusion(h, c);
        for (int m = 0; m < M; ++m)
            for (int m2 = 0; m2 < M; ++m2) t.at(m, node_map[m2]) += conf.at(m, m2);
    } else {
        if (!rng) throw ContractError("Monte-Carlo transition tables need a generator");
        if (mc_samples < 1) throw ContractError("Monte-Carlo transition tables need samples >= 1");
        for (int m = 0; m < M; ++m) {
            for (long s = 0; s < mc_samples; ++s) {
                const cplx y = add_noise(h * c.points[m], *rng);
                t.at(m, node_map[hard_detect(y, h, c)]) += 1.0;
            }
            for (int v = 0; v < Q; ++v) t.at(m, v) /= static_cast<double>(mc_samples);
        }
    }
    return t;
}

ProbTable transition_table(cplx h, const Constellation& c, const NodeRule& rule,
                           TableMethod method, Rng* rng, long mc_samples)
{
    const auto map = symbol_output_map(c, rule);
    return transition_table(h, c, map, rule.g.spec()->order(), method, rng, mc_samples);
}

TransitionModel build_transition_model(std::span<const cplx> h, const Constellation& c,
                                       const std::vector<std::vector<uint8_t>>& node_maps, int Q,
                                       TableMethod method, Rng* rng, long mc_samples)
{
    if (h.size() != node_maps.size())
        throw DimensionError("channel has " + std::to_string(h.size()) + " gains, " +
                             std::to_string(node_maps.size()) + " node maps given");
    if (method == TableMethod::Auto)
        method = analytic_supported(c) ? TableMethod::Analytic : TableMethod::MonteCarlo;
    TransitionModel model;
    model.method_used = method;
    model.mc_samples = method == TableMethod::MonteCarlo ? mc_samples : 0;
    model.node.reserve(h.size());
    for (size_t i = 0; i < h.size(); ++i)
        model.node.push_back(transition_table(h[i], c, node_maps[i], Q, method, rng, mc_samples));
    return model;
}

} // namespace cdd
