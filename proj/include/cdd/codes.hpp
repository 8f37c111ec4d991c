#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cdd/gf.hpp"

namespace cdd {

/// K x N matrix over GF(2^B); column i is the processing rule of node i.
class GeneratorMatrix {
public:
    GeneratorMatrix(int rows, int cols, std::vector<uint8_t> entries, FieldPtr spec);

    int rows() const { return rows_; } // K
    int cols() const { return cols_; } // N
    const FieldPtr& spec() const { return spec_; }

    uint8_t at(int r, int c) const { return entries_[static_cast<size_t>(r) * cols_ + c]; }
    GFVector column(int c) const;
    GFVector row(int r) const;

    /// Encode a K-entry message: c = a * G.
    GFVector encode(const GFVector& message) const;

    /// An all-zero column means the corresponding node never carries
    /// information; the built-in families cannot produce one, custom
    /// matrices get flagged so callers can warn.
    bool has_zero_column() const;

    bool operator==(const GeneratorMatrix& other) const;

    /// Plain-text form: "K N B poly" on the first line, then K rows of N
    /// integers. Round-trips bit-exactly.
    std::string to_text() const;
    static GeneratorMatrix from_text(std::istream& in);
    static GeneratorMatrix from_text(const std::string& text);

private:
    int rows_, cols_;
    std::vector<uint8_t> entries_; // row-major
    FieldPtr spec_;
};

/// Simplex code generator: columns are all nonzero vectors in GF(q)^K whose
/// first nonzero entry is 1, in lexicographic order (top row most
/// significant). N = (q^K - 1)/(q - 1).
GeneratorMatrix simplex_generator(int K, FieldPtr spec);

/// First-order Reed-Muller generator: top row all ones, remaining K-1 rows
/// enumerate GF(q)^{K-1} in lexicographic order. N = q^{K-1}. Requires K >= 2.
GeneratorMatrix rm1_generator(int K, FieldPtr spec);

/// Shortened concatenation of a repetition inner code with the simplex outer
/// code: tile the simplex generator ceil(N/N_out) times and keep the first N
/// columns. Defined for any N >= K.
GeneratorMatrix scrs_generator(int N, int K, FieldPtr spec);

/// Round-robin single-bit-group rules: column i is the unit vector
/// e_{i mod K}. Reproduces the per-component detection baseline.
GeneratorMatrix naive_generator(int N, int K, FieldPtr spec);

/// Full enumeration of the code generated by G.
struct Code {
    std::vector<GFVector> codewords; // indexed by message integer, base-q digits MSB-first
    int d_min = 0;
    GeneratorMatrix generator;
};

/// Enumerate all q^K messages. Refuses K*B > 24.
Code build_code(const GeneratorMatrix& G);

/// Minimum nonzero-message codeword weight (equals the pairwise minimum for
/// a linear code, including degenerate d_min = 0 when the map is not
/// injective).
int min_distance(const Code& code);

/// Exact pairwise minimum Hamming distance over an arbitrary codeword list;
/// required for non-linear codes such as the codeword-set baseline.
int pairwise_min_distance(const std::vector<GFVector>& words);

/// Exact rational d <= num/den bound (the Griesmer bound with ceilings
/// dropped).
struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct BoundReport {
    int K = 0;
    int B = 0;
    int N = 0;       // length the report was evaluated at
    int d = 0;       // minimum distance the report was evaluated at
    long long griesmer_min_length = 0; // sum of ceil(d / q^i), i < K
    bool griesmer_equality = false;    // griesmer_min_length == N
    int max_dmin_at_length = 0;        // largest d' the bound permits at this N
    bool sphere_packing_ok = false;    // M V(N, floor((d-1)/2)) <= q^N
    bool gilbert_varshamov_exists = false; // M V(N-1, d-2) <= q^N
    Rational dmin_upper_bound;             // N q^{K-1} / (1 + q + ... + q^{K-1}) >= d
    std::vector<std::string> notes;
};

/// Evaluate the Griesmer, sphere-packing and Gilbert-Varshamov statements
/// for a q-ary code with M = q^K codewords, length N, distance d. Metric-ball
/// volumes are compared against q^N; a note records that the binary form
/// 2^N differs whenever B > 1. Supports N <= 64.
BoundReport griesmer_report(int K, const FieldPtr& spec, int d, int N);

/// Minimum length the Griesmer bound allows for (K, q, d).
long long griesmer_min_length(int K, int B, int d);

/// Largest d with griesmer_min_length(K, B, d) <= N.
int griesmer_max_dmin(int K, int B, int N);

/// Closed-form SCRS minimum distance. Exact for K = 2 (alpha*q + r - 1 for
/// r >= 1, alpha*q for r = 0, where N = alpha*(q+1) + r); the floor lower
/// bound alpha*q^{K-1} otherwise.
int scrs_dmin_formula(int N, int K, const FieldPtr& spec);

} // namespace cdd
