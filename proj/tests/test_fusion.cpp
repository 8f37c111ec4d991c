#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cdd/fusion.hpp"

using namespace cdd;

namespace {

// Hand-built binary symmetric tables: node i flips its codeword bit with
// probability eps[i].
TransitionModel bsc_tables(const std::vector<GFVector>& codebook, const std::vector<double>& eps)
{
    const int M = static_cast<int>(codebook.size());
    const int N = static_cast<int>(eps.size());
    TransitionModel t;
    t.method_used = TableMethod::Analytic;
    for (int i = 0; i < N; ++i) {
        ProbTable tab(M, 2);
        for (int m = 0; m < M; ++m) {
            const int c = codebook[m][i];
            tab.at(m, c) = 1.0 - eps[i];
            tab.at(m, 1 - c) = eps[i];
        }
        t.node.push_back(tab);
    }
    return t;
}

std::vector<GFVector> simplex3_codebook()
{
    auto f1 = FieldSpec::make(1);
    return {GFVector({0, 0, 0}, f1), GFVector({0, 1, 1}, f1), GFVector({1, 0, 1}, f1),
            GFVector({1, 1, 0}, f1)};
}

} // namespace

TEST_CASE("ml decoding: single factor, noiseless tables, and tie direction")
{
    auto f1 = FieldSpec::make(1);

    SUBCASE("N=1 reduces to the per-node MAP symbol")
    {
        TransitionModel t;
        ProbTable tab(4, 2);
        tab.at(0, 0) = 0.9;
        tab.at(0, 1) = 0.1;
        tab.at(1, 0) = 0.2;
        tab.at(1, 1) = 0.8;
        tab.at(2, 0) = 0.4;
        tab.at(2, 1) = 0.6;
        tab.at(3, 0) = 0.7;
        tab.at(3, 1) = 0.3;
        t.node.push_back(tab);
        CHECK(ml_decode(GFVector({0}, f1), t) == 0); // 0.9 largest for u=0
        CHECK(ml_decode(GFVector({1}, f1), t) == 1); // 0.8 largest for u=1
    }

    SUBCASE("0/1 tables decode codewords exactly")
    {
        const auto cb = simplex3_codebook();
        const auto t = bsc_tables(cb, {0.0, 0.0, 0.0});
        for (int m = 0; m < 4; ++m) CHECK(ml_decode(cb[m], t) == m);
    }

    SUBCASE("exact ties go to the lowest index")
    {
        const auto cb = simplex3_codebook();
        const auto t = bsc_tables(cb, {0.5, 0.5, 0.5});
        CHECK(ml_decode(GFVector({1, 1, 1}, f1), t) == 0);
    }

    SUBCASE("missing CSI is a contract error")
    {
        FusionInput in{GFVector({0, 0, 0}, f1), {}, nullptr};
        CHECK_THROWS_AS(ml_decode(in), ContractError);
        SubsetPlan singles{3, {{0}, {1}, {2}}};
        CHECK_THROWS_AS(subset_ml_decode(in, singles), ContractError);
    }

    SUBCASE("the FusionInput form matches the raw form when CSI is present")
    {
        const auto cb = simplex3_codebook();
        const auto t = bsc_tables(cb, {0.1, 0.2, 0.3});
        FusionInput in{GFVector({1, 0, 1}, f1), {{1.0, 0.0}, {0.5, 0.5}, {2.0, 0.0}}, &t};
        CHECK(ml_decode(in) == ml_decode(in.u, t));
        SubsetPlan singles{3, {{0}, {1}, {2}}};
        CHECK(subset_ml_decode(in, singles) == subset_ml_decode(in.u, in.h, t, singles));
    }
}

TEST_CASE("ml decoding corrects the flip at the least reliable node")
{
    // One node's output flipped; ML recovers the symbol exactly when the
    // flipped node has the largest error probability. Verified against the
    // full posterior over all 8 patterns.
    auto f1 = FieldSpec::make(1);
    const auto cb = simplex3_codebook();

    Rng rng(31);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> eps(3);
        for (auto& e : eps) e = 0.01 + 0.48 * rng.uniform();
        const auto t = bsc_tables(cb, eps);

        for (int s = 0; s < 4; ++s) {
            for (int flip = 0; flip < 3; ++flip) {
                GFVector u = cb[s];
                u[flip] ^= 1;
                const int decoded = ml_decode(u, t);

                // posterior check: decoded must maximize the exact likelihood
                double best = -1.0;
                int brute = -1;
                for (int m = 0; m < 4; ++m) {
                    double like = 1.0;
                    for (int i = 0; i < 3; ++i)
                        like *= (u[i] == cb[m][i]) ? 1.0 - eps[i] : eps[i];
                    if (like > best) {
                        best = like;
                        brute = m;
                    }
                }
                CHECK(decoded == brute);

                const bool flipped_least_reliable =
                    eps[flip] > eps[(flip + 1) % 3] && eps[flip] > eps[(flip + 2) % 3];
                if (flipped_least_reliable) CHECK(decoded == s);
            }
        }
    }
}

TEST_CASE("ml decoding is invariant to per-node positive scaling")
{
    auto f1 = FieldSpec::make(1);
    const auto cb = simplex3_codebook();
    Rng rng(47);
    for (int trial = 0; trial < 500; ++trial) {
        TransitionModel t;
        for (int i = 0; i < 3; ++i) {
            ProbTable tab(4, 2);
            for (int m = 0; m < 4; ++m) {
                const double p = rng.uniform();
                tab.at(m, 0) = p;
                tab.at(m, 1) = 1.0 - p;
            }
            t.node.push_back(tab);
        }
        TransitionModel scaled = t;
        const double factor = 0.001 + 10.0 * rng.uniform();
        for (double& p : scaled.node[1].p) p *= factor;

        std::vector<uint8_t> bits(3);
        for (auto& b : bits) b = static_cast<uint8_t>(rng.uniform_int(2));
        const GFVector u(bits, f1);
        CHECK(ml_decode(u, t) == ml_decode(u, scaled));
    }
}

TEST_CASE("subset plans group identical columns")
{
    auto f1 = FieldSpec::make(1);

    const auto scrs = scrs_generator(10, 2, f1);
    const auto plan = subset_plan_from_generator(scrs);
    CHECK(plan.L == 3);
    CHECK(plan.groups[0] == std::vector<int>{0, 3, 6, 9});
    CHECK(plan.groups[1] == std::vector<int>{1, 4, 7});
    CHECK(plan.groups[2] == std::vector<int>{2, 5, 8});
    validate_plan(plan, scrs);

    const GeneratorMatrix naive(2, 3, {1, 0, 1, 0, 1, 0}, f1);
    const auto plan2 = subset_plan_from_generator(naive);
    CHECK(plan2.L == 2);
    CHECK(plan2.groups[0] == std::vector<int>{0, 2});

    SubsetPlan bad = plan;
    bad.groups[0] = {0, 1, 3, 6, 9}; // node 1 has a different rule
    CHECK_THROWS_AS(validate_plan(bad, scrs), ContractError);
    SubsetPlan missing = plan;
    missing.groups[2] = {2, 5}; // node 8 unassigned
    CHECK_THROWS_AS(validate_plan(missing, scrs), ContractError);
}

TEST_CASE("subset ML with singleton groups is exactly ML")
{
    auto f1 = FieldSpec::make(1);
    const auto cb = simplex3_codebook();
    SubsetPlan singles{3, {{0}, {1}, {2}}};

    Rng rng(53);
    for (int trial = 0; trial < 10000; ++trial) {
        TransitionModel t;
        for (int i = 0; i < 3; ++i) {
            ProbTable tab(4, 2);
            for (int m = 0; m < 4; ++m) {
                const double p = rng.uniform();
                tab.at(m, 0) = p;
                tab.at(m, 1) = 1.0 - p;
            }
            t.node.push_back(tab);
        }
        std::vector<cplx> h(3);
        for (auto& hi : h) hi = rng.cnormal();
        std::vector<uint8_t> bits(3);
        for (auto& b : bits) b = static_cast<uint8_t>(rng.uniform_int(2));
        const GFVector u(bits, f1);
        CHECK(subset_ml_decode(u, h, t, singles) == ml_decode(u, t));
    }
}

TEST_CASE("subset ML keeps the strongest node, ties to the lowest index")
{
    auto f1 = FieldSpec::make(1);
    // two nodes share one rule; tables disagree so the selection is visible
    TransitionModel t;
    for (int i = 0; i < 2; ++i) {
        ProbTable tab(2, 2);
        // node 0 says u=0 means symbol 0; node 1 says the opposite
        tab.at(0, 0) = i == 0 ? 0.9 : 0.1;
        tab.at(0, 1) = i == 0 ? 0.1 : 0.9;
        tab.at(1, 0) = i == 0 ? 0.1 : 0.9;
        tab.at(1, 1) = i == 0 ? 0.9 : 0.1;
        t.node.push_back(tab);
    }
    SubsetPlan plan{1, {{0, 1}}};
    const GFVector u({0, 0}, f1);

    std::vector<cplx> h{{1.0, 0.0}, {2.0, 0.0}};
    CHECK(subset_ml_decode(u, h, t, plan) == 1); // node 1 stronger

    h = {{2.0, 0.0}, {1.0, 0.0}};
    CHECK(subset_ml_decode(u, h, t, plan) == 0);

    h = {{1.0, 0.0}, {-1.0, 0.0}}; // equal gains: lowest index wins
    CHECK(subset_ml_decode(u, h, t, plan) == 0);
}

TEST_CASE("hamming decoding: codewords, worked example, ties")
{
    auto f1 = FieldSpec::make(1);
    const auto cb = simplex3_codebook();

    for (int m = 0; m < 4; ++m) CHECK(hamming_decode(cb[m], cb) == m);

    // u = 100: distance 1 to three codewords, lowest index 0 wins
    CHECK(hamming_decode(GFVector({1, 0, 0}, f1), cb) == 0);

    CHECK_THROWS_AS(hamming_decode(GFVector({1, 0}, f1), cb), DimensionError);
}

TEST_CASE("hamming decoding corrects up to floor((d-1)/2) errors exhaustively")
{
    auto f1 = FieldSpec::make(1);
    const auto G = scrs_generator(10, 2, f1);
    const auto c = make_constellation("qpsk", 4, 2.0);
    const auto cb = symbol_codewords(c, G);
    REQUIRE(build_code(G).d_min == 6);

    for (int m = 0; m < 4; ++m) {
        // all single flips
        for (int i = 0; i < 10; ++i) {
            GFVector u = cb[m];
            u[i] ^= 1;
            CHECK(hamming_decode(u, cb) == m);
        }
        // all double flips
        for (int i = 0; i < 10; ++i)
            for (int j = i + 1; j < 10; ++j) {
                GFVector u = cb[m];
                u[i] ^= 1;
                u[j] ^= 1;
                CHECK(hamming_decode(u, cb) == m);
            }
    }
}

TEST_CASE("decoders are equivariant under node permutations")
{
    auto f1 = FieldSpec::make(1);
    const auto G = scrs_generator(6, 2, f1);
    const auto c = make_constellation("qpsk", 4, 2.0);
    const auto cb = symbol_codewords(c, G);

    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> perm{0, 1, 2, 3, 4, 5};
        for (int i = 5; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);

        std::vector<cplx> h(6);
        for (auto& hi : h) hi = rng.cnormal();
        std::vector<uint8_t> bits(6);
        for (auto& b : bits) b = static_cast<uint8_t>(rng.uniform_int(2));

        TransitionModel t;
        for (int i = 0; i < 6; ++i) {
            ProbTable tab(4, 2);
            for (int m = 0; m < 4; ++m) {
                const double p = 0.05 + 0.9 * rng.uniform();
                tab.at(m, cb[m][i]) = 1.0 - p;
                tab.at(m, 1 - cb[m][i]) = p;
            }
            t.node.push_back(tab);
        }

        // permuted copies
        std::vector<cplx> ph(6);
        std::vector<uint8_t> pbits(6);
        TransitionModel pt;
        pt.node.resize(6);
        std::vector<GFVector> pcb(cb.size(), GFVector::zeros(6, f1));
        for (int i = 0; i < 6; ++i) {
            ph[i] = h[perm[i]];
            pbits[i] = bits[perm[i]];
            pt.node[i] = t.node[perm[i]];
        }
        for (size_t m = 0; m < cb.size(); ++m)
            for (int i = 0; i < 6; ++i) pcb[m][i] = cb[m][perm[i]];

        const GFVector u(bits, f1), pu(pbits, f1);
        CHECK(ml_decode(u, t) == ml_decode(pu, pt));
        CHECK(hamming_decode(u, cb) == hamming_decode(pu, pcb));

        // subset ML with the group structure carried through the permutation
        const auto plan = subset_plan_from_generator(G);
        std::vector<int> inv(6);
        for (int i = 0; i < 6; ++i) inv[perm[i]] = i;
        SubsetPlan pplan = plan;
        for (auto& group : pplan.groups)
            for (int& idx : group) idx = inv[idx];
        CHECK(subset_ml_decode(u, h, t, plan) == subset_ml_decode(pu, ph, pt, pplan));

        // centralized combining and majority voting are order-free
        const auto c4 = make_constellation("qpsk", 4, 2.0);
        std::vector<cplx> y(6), py(6);
        std::vector<int> votes(6), pvotes(6);
        for (int i = 0; i < 6; ++i) {
            y[i] = rng.cnormal();
            votes[i] = rng.uniform_int(4);
        }
        for (int i = 0; i < 6; ++i) {
            py[i] = y[perm[i]];
            pvotes[i] = votes[perm[i]];
        }
        CHECK(centralized_mrc(y, h, c4) == centralized_mrc(py, ph, c4));
        CHECK(uncoded_majority(votes, 4) == uncoded_majority(pvotes, 4));
    }
}

TEST_CASE("centralized MRC")
{
    const auto c = make_constellation("qpsk", 4, 2.0);
    Rng rng(71);

    SUBCASE("noiseless reception recovers the symbol")
    {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<cplx> h(4);
            for (auto& hi : h) hi = rng.cnormal();
            const int s = rng.uniform_int(4);
            std::vector<cplx> y(4);
            for (int i = 0; i < 4; ++i) y[i] = h[i] * c.points[s];
            CHECK(centralized_mrc(y, h, c) == s);
        }
    }

    SUBCASE("single node reduces to coherent hard detection")
    {
        for (int trial = 0; trial < 200; ++trial) {
            const cplx h = rng.cnormal();
            if (std::abs(h) < 1e-9) continue;
            const cplx y = h * c.points[rng.uniform_int(4)] + rng.cnormal();
            std::vector<cplx> ys{y}, hs{h};
            CHECK(centralized_mrc(ys, hs, c) == hard_detect(y, h, c));
        }
    }

    SUBCASE("all-zero channel is rejected")
    {
        std::vector<cplx> y{{1.0, 0.0}}, h{{0.0, 0.0}};
        CHECK_THROWS_AS(centralized_mrc(y, h, c), ContractError);
    }
}

TEST_CASE("majority vote")
{
    CHECK(uncoded_majority(std::vector<int>{2, 2, 2}, 4) == 2);
    CHECK(uncoded_majority(std::vector<int>{0, 0, 1}, 4) == 0);
    CHECK(uncoded_majority(std::vector<int>{0, 1, 2}, 4) == 0); // 3-way tie
    CHECK(uncoded_majority(std::vector<int>{3, 1, 1, 3}, 4) == 1);
    CHECK_THROWS_AS(uncoded_majority(std::vector<int>{4}, 4), DimensionError);
}

TEST_CASE("codeword-set columns")
{
    CHECK(codeword_set_quantize(2, 12, 4) == 1); // 12 = [0 0 1 1]
    CHECK(codeword_set_quantize(0, 12, 4) == 0);
    CHECK(codeword_set_quantize(0, 1, 4) == 1); // 1 = [1 0 0 0]
    CHECK_THROWS_AS(codeword_set_quantize(4, 12, 4), DimensionError);
    CHECK_THROWS_AS(codeword_set_quantize(0, 16, 4), DimensionError);

    const CodewordSet cws{4, {6, 12, 4, 9, 12, 9, 12, 6, 1, 3}};
    const auto rows = cws.rows();
    CHECK(rows[0].values() == std::vector<uint8_t>{0, 0, 0, 1, 0, 1, 0, 0, 1, 1});
    CHECK(rows[1].values() == std::vector<uint8_t>{1, 0, 0, 0, 0, 0, 0, 1, 0, 1});
    CHECK(hamming_distance(rows[0], rows[1]) == 5);
    CHECK(pairwise_min_distance(rows) == 5);

    const auto maps = cws.node_maps();
    CHECK(maps.size() == 10);
    CHECK(maps[1] == std::vector<uint8_t>{0, 0, 1, 1});
}
