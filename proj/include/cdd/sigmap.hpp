#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cdd/codes.hpp"
#include "cdd/gf.hpp"

namespace cdd {

using cplx = std::complex<double>;

enum class ConstellationKind { BPSK, QPSK, PSK8, QAM16, Custom };

/// M-ary signal set with bit labels and average energy rho.
///
/// Built-in sets are enumerated by label value: point m carries the label
/// whose bits are the binary digits of m (MSB first). Labeling is Gray:
/// QPSK/16QAM use per-axis sign-then-magnitude Gray pairs (first bit of an
/// axis group is 1 iff that axis is nonnegative), 8PSK walks the binary
/// reflected Gray sequence around the circle.
struct Constellation {
    ConstellationKind kind = ConstellationKind::Custom;
    std::string name;
    std::vector<cplx> points;
    std::vector<std::vector<uint8_t>> labels; // log2(M) bits each, MSB first
    double energy = 0.0;                      // rho = E[|s|^2]

    int M() const { return static_cast<int>(points.size()); }
    int bits_per_symbol() const { return static_cast<int>(labels.empty() ? 0 : labels[0].size()); }
};

/// name in {bpsk, qpsk, 8psk, 16qam} (case-insensitive); M must match the
/// name. Unit-average-energy layout scaled to E[|s|^2] = rho.
Constellation make_constellation(const std::string& name, int M, double rho);

/// Custom set from (re, im, label) triples; points are rescaled to average
/// energy rho. Requires a power-of-two count, distinct labels of equal
/// length, and zero mean after scaling.
struct LabeledPoint {
    double re = 0.0;
    double im = 0.0;
    std::vector<uint8_t> label;
};
Constellation make_custom_constellation(const std::vector<LabeledPoint>& pts, double rho);

/// One node's processing rule: a column of the generator matrix.
struct NodeRule {
    GFVector g;
};

NodeRule rule_for_column(const GeneratorMatrix& G, int column);

/// Pack a bit string into field symbols, B bits per symbol, first bit of
/// each group most significant. Length must be divisible by B.
GFVector bits_to_gfvec(const std::vector<uint8_t>& bits, const FieldPtr& spec);

/// Coherent per-node ML hard decision: argmin_m |y - h s_m|^2, ties toward
/// the lowest index. h = 0 is rejected.
int hard_detect(cplx y, cplx h, const Constellation& c);

/// Hard-detect, convert the detected label to field symbols, and apply the
/// node rule.
GFElement quantize(cplx y, cplx h, const Constellation& c, const NodeRule& rule);

/// Quantizer output per detected symbol: map[m] = a(label(m)) . g. All node
/// processing factors through the hard decision, so this table drives both
/// the simulator hot path and transition-probability construction.
std::vector<uint8_t> symbol_output_map(const Constellation& c, const NodeRule& rule);

/// Codeword forwarded for each constellation point: entry i of word m is
/// the noiseless output of node i when s_m is sent.
std::vector<GFVector> symbol_codewords(const Constellation& c, const GeneratorMatrix& G);

} // namespace cdd
