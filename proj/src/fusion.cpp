#include "cdd/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cdd {

namespace {

constexpr double kProbFloor = 1e-300; // keeps log-likelihoods finite

inline double log_prob(const ProbTable& t, int m, int v)
{
    return std::log(std::max(t.at(m, v), kProbFloor));
}

} // namespace

SubsetPlan subset_plan_from_generator(const GeneratorMatrix& G)
{
    SubsetPlan plan;
    std::map<std::vector<uint8_t>, int> group_of;
    for (int c = 0; c < G.cols(); ++c) {
        auto col = G.column(c).values();
        auto [it, inserted] = group_of.emplace(std::move(col), plan.L);
        if (inserted) {
            plan.groups.emplace_back();
            ++plan.L;
        }
        plan.groups[it->second].push_back(c);
    }
    return plan;
}

void validate_plan(const SubsetPlan& plan, const GeneratorMatrix& G)
{
    std::vector<int> seen(G.cols(), 0);
    if (plan.L != static_cast<int>(plan.groups.size()))
        throw ContractError("subset plan: L does not match the group count");
    for (const auto& group : plan.groups) {
        if (group.empty()) throw ContractError("subset plan: empty group");
        const auto ref = G.column(group.front()).values();
        for (int idx : group) {
            if (idx < 0 || idx >= G.cols())
                throw ContractError("subset plan: node index " + std::to_string(idx) +
                                    " outside 0.." + std::to_string(G.cols() - 1));
            if (seen[idx]++)
                throw ContractError("subset plan: node " + std::to_string(idx) +
                                    " assigned to two groups");
            if (G.column(idx).values() != ref)
                throw ContractError("subset plan: group mixes distinct processing rules");
        }
    }
    for (int idx = 0; idx < G.cols(); ++idx)
        if (!seen[idx])
            throw ContractError("subset plan: node " + std::to_string(idx) + " not covered");
}

int ml_decode(const GFVector& u, const TransitionModel& tables)
{
    const size_t N = tables.node.size();
    if (u.size() != N)
        throw DimensionError("ml_decode: " + std::to_string(u.size()) + " outputs, " +
                             std::to_string(N) + " node tables");
    const int M = tables.node.empty() ? 0 : tables.node[0].rows;
    int best = 0;
    double best_ll = -HUGE_VAL;
    for (int m = 0; m < M; ++m) {
        double ll = 0.0;
        for (size_t i = 0; i < N; ++i) ll += log_prob(tables.node[i], m, u[i]);
        if (ll > best_ll) {
            best_ll = ll;
            best = m;
        }
    }
    return best;
}

int ml_decode(const FusionInput& input)
{
    if (!input.tables || input.h.empty())
        throw ContractError("ML decoding needs CSI: channel gains and transition tables");
    return ml_decode(input.u, *input.tables);
}

int subset_ml_decode(const GFVector& u, std::span<const cplx> h, const TransitionModel& tables,
                     const SubsetPlan& plan)
{
    if (u.size() != h.size() || u.size() != tables.node.size())
        throw DimensionError("subset_ml_decode: inconsistent input sizes");
    const int M = tables.node.empty() ? 0 : tables.node[0].rows;

    std::vector<int> selected;
    selected.reserve(plan.groups.size());
    for (const auto& group : plan.groups) {
        if (group.empty()) throw ContractError("subset plan: empty group");
        int pick = group.front();
        double best_gain = std::norm(h[pick]);
        for (size_t j = 1; j < group.size(); ++j) {
            const double gain = std::norm(h[group[j]]);
            if (gain > best_gain) {
                best_gain = gain;
                pick = group[j];
            }
        }
        selected.push_back(pick);
    }

    int best = 0;
    double best_ll = -HUGE_VAL;
    for (int m = 0; m < M; ++m) {
        double ll = 0.0;
        for (int i : selected) ll += log_prob(tables.node[i], m, u[i]);
        if (ll > best_ll) {
            best_ll = ll;
            best = m;
        }
    }
    return best;
}

int subset_ml_decode(const FusionInput& input, const SubsetPlan& plan)
{
    if (!input.tables || input.h.empty())
        throw ContractError("subset ML decoding needs CSI: channel gains and transition tables");
    return subset_ml_decode(input.u, input.h, *input.tables, plan);
}

int hamming_decode(const GFVector& u, const std::vector<GFVector>& codebook)
{
    if (codebook.empty()) throw ContractError("hamming_decode: empty codebook");
    int best = 0;
    int best_d = hamming_distance(u, codebook[0]);
    for (size_t m = 1; m < codebook.size(); ++m) {
        const int d = hamming_distance(u, codebook[m]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(m);
        }
    }
    return best;
}

int centralized_mrc(std::span<const cplx> y, std::span<const cplx> h, const Constellation& c)
{
    if (y.size() != h.size())
        throw DimensionError("centralized_mrc: " + std::to_string(y.size()) + " observations, " +
                             std::to_string(h.size()) + " gains");
    double h_norm2 = 0.0;
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < y.size(); ++i) {
        acc += std::conj(h[i]) * y[i];
        h_norm2 += std::norm(h[i]);
    }
    if (h_norm2 == 0.0) throw ContractError("centralized_mrc: all-zero channel");
    return hard_detect(acc / h_norm2, cplx{1.0, 0.0}, c);
}

int uncoded_majority(const std::vector<int>& votes, int M)
{
    std::vector<int> counts(M, 0);
    for (int v : votes) {
        if (v < 0 || v >= M)
            throw DimensionError("uncoded_majority: vote " + std::to_string(v) +
                                 " outside 0.." + std::to_string(M - 1));
        ++counts[v];
    }
    int best = 0;
    for (int m = 1; m < M; ++m)
        if (counts[m] > counts[best]) best = m;
    return best;
}

int codeword_set_quantize(int m_hat, uint32_t column, int M)
{
    if (M < 1 || M > 31) throw DimensionError("codeword-set column supports 1 <= M <= 31");
    if (m_hat < 0 || m_hat >= M)
        throw DimensionError("codeword_set_quantize: symbol index " + std::to_string(m_hat) +
                             " outside 0.." + std::to_string(M - 1));
    if (column >> M)
        throw DimensionError("codeword-set column 0x" + std::to_string(column) +
                             " has bits beyond M=" + std::to_string(M) + " rows");
    return (column >> m_hat) & 1;
}

std::vector<GFVector> CodewordSet::rows() const
{
    auto gf2 = FieldSpec::make(1);
    std::vector<GFVector> out;
    out.reserve(M);
    for (int m = 0; m < M; ++m) {
        std::vector<uint8_t> row(columns.size());
        for (size_t i = 0; i < columns.size(); ++i)
            row[i] = static_cast<uint8_t>(codeword_set_quantize(m, columns[i], M));
        out.emplace_back(std::move(row), gf2);
    }
    return out;
}

std::vector<std::vector<uint8_t>> CodewordSet::node_maps() const
{
    std::vector<std::vector<uint8_t>> maps(columns.size());
    for (size_t i = 0; i < columns.size(); ++i) {
        maps[i].resize(M);
        for (int m = 0; m < M; ++m)
            maps[i][m] = static_cast<uint8_t>(codeword_set_quantize(m, columns[i], M));
    }
    return maps;
}

} // namespace cdd
