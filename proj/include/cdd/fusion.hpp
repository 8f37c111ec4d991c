#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cdd/channel.hpp"

namespace cdd {

/// Everything the fusion center may receive for one channel use.
struct FusionInput {
    GFVector u;                              // forwarded node outputs
    std::vector<cplx> h;                     // empty when no CSI
    const TransitionModel* tables = nullptr; // present iff h is
};

/// Groups of nodes sharing one processing rule; groups partition 0..N-1.
struct SubsetPlan {
    int L = 0;
    std::vector<std::vector<int>> groups;
};

/// Group identical generator columns by first occurrence. Tiled codes yield
/// stride-N_out groups.
SubsetPlan subset_plan_from_generator(const GeneratorMatrix& G);

/// Every group must be nonempty, cover 0..N-1 exactly once, and contain
/// nodes with identical columns.
void validate_plan(const SubsetPlan& plan, const GeneratorMatrix& G);

/// Full-CSI ML: argmax_m sum_i log Pr(u_i | s_m, h_i). Ties toward the
/// lowest index. Probabilities are floored at 1e-300 before the log.
int ml_decode(const GFVector& u, const TransitionModel& tables);
int ml_decode(const FusionInput& input);

/// Keep the strongest node of each rule group, then ML over the survivors.
int subset_ml_decode(const GFVector& u, std::span<const cplx> h, const TransitionModel& tables,
                     const SubsetPlan& plan);
int subset_ml_decode(const FusionInput& input, const SubsetPlan& plan);

/// CSI-free nearest-codeword decoding; codebook is indexed by symbol.
int hamming_decode(const GFVector& u, const std::vector<GFVector>& codebook);

/// Full-observation baseline: maximum ratio combining then nearest-point
/// detection.
int centralized_mrc(std::span<const cplx> y, std::span<const cplx> h, const Constellation& c);

/// Plurality vote over per-node hard decisions; ties toward the lowest
/// symbol index.
int uncoded_majority(const std::vector<int>& votes, int M);

/// Prior-art codeword-set node rule: bit m_hat of the column integer, rows
/// indexed LSB-first by constellation point.
int codeword_set_quantize(int m_hat, uint32_t column, int M);

/// Codeword-set scheme: one column integer per node.
struct CodewordSet {
    int M = 0;
    std::vector<uint32_t> columns;

    int N() const { return static_cast<int>(columns.size()); }
    /// Row per constellation point over GF(2), usable as a Hamming codebook.
    std::vector<GFVector> rows() const;
    /// Hard-decision output maps, one per node.
    std::vector<std::vector<uint8_t>> node_maps() const;
};

} // namespace cdd
