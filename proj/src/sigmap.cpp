#include "cdd/sigmap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace cdd {

namespace {

std::vector<uint8_t> binary_label(int value, int nbits)
{
    std::vector<uint8_t> bits(nbits);
    for (int i = 0; i < nbits; ++i) bits[i] = (value >> (nbits - 1 - i)) & 1;
    return bits;
}

// Gray pair -> 4-PAM level in {-3,-1,1,3}; the first bit is the sign.
int gray_pam4_level(int g)
{
    static constexpr int lut[4] = {-3, -1, 3, 1}; // index b1b0
    return lut[g & 3];
}

int inverse_gray(int g)
{
    int k = 0;
    while (g) {
        k ^= g;
        g >>= 1;
    }
    return k;
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

} // namespace

Constellation make_constellation(const std::string& name, int M, double rho)
{
    if (rho < 0.0) throw ConstructionError("constellation energy must be nonnegative");
    const std::string id = lower(name);
    Constellation c;
    c.name = id;
    c.energy = rho;

    auto check_M = [&](int expected) {
        if (M != expected)
            throw ConstructionError("constellation '" + id + "' has M=" + std::to_string(expected) +
                                    ", got M=" + std::to_string(M));
    };

    if (id == "bpsk") {
        check_M(2);
        c.kind = ConstellationKind::BPSK;
        const double a = std::sqrt(rho);
        c.points = {{-a, 0.0}, {a, 0.0}};
    } else if (id == "qpsk") {
        check_M(4);
        c.kind = ConstellationKind::QPSK;
        const double a = std::sqrt(rho / 2.0);
        for (int m = 0; m < 4; ++m) {
            const double re = (m & 2) ? a : -a;
            const double im = (m & 1) ? a : -a;
            c.points.emplace_back(re, im);
        }
    } else if (id == "8psk") {
        check_M(8);
        c.kind = ConstellationKind::PSK8;
        const double a = std::sqrt(rho);
        c.points.resize(8);
        for (int m = 0; m < 8; ++m) {
            const double phi = 2.0 * M_PI * inverse_gray(m) / 8.0;
            c.points[m] = {a * std::cos(phi), a * std::sin(phi)};
        }
    } else if (id == "16qam") {
        check_M(16);
        c.kind = ConstellationKind::QAM16;
        const double a = std::sqrt(rho / 10.0);
        for (int m = 0; m < 16; ++m) {
            const double re = a * gray_pam4_level(m >> 2);
            const double im = a * gray_pam4_level(m & 3);
            c.points.emplace_back(re, im);
        }
    } else {
        throw ConstructionError("unsupported constellation '" + name +
                                "' (expected bpsk, qpsk, 8psk or 16qam)");
    }

    const int nbits = static_cast<int>(std::round(std::log2(M)));
    for (int m = 0; m < M; ++m) c.labels.push_back(binary_label(m, nbits));
    return c;
}

Constellation make_custom_constellation(const std::vector<LabeledPoint>& pts, double rho)
{
    const size_t M = pts.size();
    if (M < 2 || (M & (M - 1)) != 0)
        throw ConstructionError("custom constellation needs a power-of-two point count, got " +
                                std::to_string(M));
    if (rho <= 0.0) throw ConstructionError("custom constellation energy must be positive");

    const size_t nbits = pts[0].label.size();
    std::set<std::vector<uint8_t>> seen;
    double mean_energy = 0.0;
    cplx mean{0.0, 0.0};
    for (const auto& p : pts) {
        if (p.label.size() != nbits)
            throw ConstructionError("custom constellation labels must share one length");
        for (uint8_t b : p.label)
            if (b > 1) throw ConstructionError("custom constellation labels must be bits");
        if (!seen.insert(p.label).second)
            throw ConstructionError("custom constellation labels must be distinct");
        mean_energy += (p.re * p.re + p.im * p.im) / static_cast<double>(M);
        mean += cplx(p.re, p.im) / static_cast<double>(M);
    }
    if ((size_t{1} << nbits) != M)
        throw ConstructionError("custom constellation needs log2(M) label bits per point");
    if (mean_energy <= 0.0)
        throw ConstructionError("custom constellation has zero energy");

    const double scale = std::sqrt(rho / mean_energy);
    if (std::abs(mean) * scale > 1e-9 * std::sqrt(rho))
        throw ConstructionError("custom constellation must have zero mean");

    Constellation c;
    c.kind = ConstellationKind::Custom;
    c.name = "custom";
    c.energy = rho;
    for (const auto& p : pts) {
        c.points.emplace_back(p.re * scale, p.im * scale);
        c.labels.push_back(p.label);
    }
    return c;
}

NodeRule rule_for_column(const GeneratorMatrix& G, int column)
{
    if (column < 0 || column >= G.cols())
        throw DimensionError("column " + std::to_string(column) + " outside a " +
                             std::to_string(G.rows()) + "x" + std::to_string(G.cols()) + " matrix");
    return NodeRule{G.column(column)};
}

GFVector bits_to_gfvec(const std::vector<uint8_t>& bits, const FieldPtr& spec)
{
    const int B = spec->bits();
    if (bits.size() % static_cast<size_t>(B) != 0)
        throw DimensionError("bit string of length " + std::to_string(bits.size()) +
                             " is not a multiple of B=" + std::to_string(B));
    std::vector<uint8_t> symbols(bits.size() / B, 0);
    for (size_t k = 0; k < symbols.size(); ++k) {
        uint8_t v = 0;
        for (int j = 0; j < B; ++j) {
            const uint8_t b = bits[k * B + j];
            if (b > 1) throw ConstructionError("bit string contains non-bit value");
            v = static_cast<uint8_t>((v << 1) | b);
        }
        symbols[k] = v;
    }
    return GFVector(std::move(symbols), spec);
}

int hard_detect(cplx y, cplx h, const Constellation& c)
{
    if (h == cplx{0.0, 0.0})
        throw ContractError("hard_detect: zero channel gain makes every symbol equally likely");
    int best = 0;
    double best_metric = std::norm(y - h * c.points[0]);
    for (int m = 1; m < c.M(); ++m) {
        const double metric = std::norm(y - h * c.points[m]);
        if (metric < best_metric) {
            best_metric = metric;
            best = m;
        }
    }
    return best;
}

GFElement quantize(cplx y, cplx h, const Constellation& c, const NodeRule& rule)
{
    const int m = hard_detect(y, h, c);
    const GFVector a = bits_to_gfvec(c.labels[m], rule.g.spec());
    return gf_dot(a, rule.g);
}

std::vector<uint8_t> symbol_output_map(const Constellation& c, const NodeRule& rule)
{
    std::vector<uint8_t> map(c.M());
    for (int m = 0; m < c.M(); ++m) {
        const GFVector a = bits_to_gfvec(c.labels[m], rule.g.spec());
        map[m] = gf_dot(a, rule.g).value();
    }
    return map;
}

std::vector<GFVector> symbol_codewords(const Constellation& c, const GeneratorMatrix& G)
{
    std::vector<GFVector> words;
    words.reserve(c.M());
    for (int m = 0; m < c.M(); ++m)
        words.push_back(G.encode(bits_to_gfvec(c.labels[m], G.spec())));
    return words;
}

} // namespace cdd
