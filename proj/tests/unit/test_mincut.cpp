#include <maskreg/binary_solver.h>
#include <maskreg/maxflow.h>

#include <gtest/gtest.h>

#include <limits>
#include <random>

namespace maskreg {
namespace {

struct Edge
{
    int p, q;
    double cap, rev;
};

struct Network
{
    std::vector<std::pair<double, double>> terminals;
    std::vector<Edge> edges;

    void fill(FlowGraph& g) const
    {
        g.clear();
        g.add_nodes(int(terminals.size()));
        for (int i = 0; i < int(terminals.size()); ++i) {
            g.add_terminal_weights(i, terminals[std::size_t(i)].first, terminals[std::size_t(i)].second);
        }
        for (const auto& e : edges) {
            g.add_edge(e.p, e.q, e.cap, e.rev);
        }
    }

    /// Capacity of the cut where bit i of `source_set` puts node i on the source side.
    double cut(unsigned source_set) const
    {
        auto src = [&](int i) { return ((source_set >> i) & 1u) != 0; };
        double c = 0.0;
        for (int i = 0; i < int(terminals.size()); ++i) {
            c += src(i) ? terminals[std::size_t(i)].second : terminals[std::size_t(i)].first;
        }
        for (const auto& e : edges) {
            if (src(e.p) && !src(e.q)) {
                c += e.cap;
            }
            if (src(e.q) && !src(e.p)) {
                c += e.rev;
            }
        }
        return c;
    }
};

Network random_network(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> cap(0.0, 10.0);
    std::bernoulli_distribution present(0.5);
    Network net;
    for (int i = 0; i < n; ++i) {
        net.terminals.emplace_back(present(rng) ? cap(rng) : 0.0, present(rng) ? cap(rng) : 0.0);
    }
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            if (present(rng)) {
                net.edges.push_back({p, q, cap(rng), present(rng) ? cap(rng) : 0.0});
            }
        }
    }
    return net;
}

TEST(MaxFlow, TwoNodeChain)
{
    FlowGraph g;
    g.add_nodes(1);
    g.add_terminal_weights(0, 3.0, 2.0);
    EXPECT_DOUBLE_EQ(g.maxflow(), 2.0);
    EXPECT_EQ(g.side(0), FlowGraph::Side::Source);
}

TEST(MaxFlow, NoTerminalCapacity)
{
    FlowGraph g;
    g.add_nodes(4);
    g.add_edge(0, 1, 5.0, 5.0);
    g.add_edge(2, 3, 1.0, 0.0);
    EXPECT_EQ(g.maxflow(), 0.0);
}

TEST(MaxFlow, RejectsBadCapacity)
{
    FlowGraph g;
    g.add_nodes(2);
    EXPECT_THROW(g.add_terminal_weights(0, -1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 1, std::numeric_limits<double>::infinity(), 0.0), std::invalid_argument);
}

TEST(MaxFlow, MatchesCutEnumeration)
{
    std::mt19937_64 rng(17);
    FlowGraph g;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + int(rng() % 10);
        const Network net = random_network(rng, n);
        net.fill(g);
        const MinCut mc = maxflow(g);
        double best = std::numeric_limits<double>::infinity();
        for (unsigned s = 0; s < (1u << n); ++s) {
            best = std::min(best, net.cut(s));
        }
        EXPECT_NEAR(mc.flow, best, 1e-9 * (1.0 + best));
        unsigned realized = 0;
        for (int i = 0; i < n; ++i) {
            if (mc.sides[std::size_t(i)] == FlowGraph::Side::Source) {
                realized |= 1u << i;
            }
        }
        EXPECT_NEAR(net.cut(realized), best, 1e-9 * (1.0 + best));
    }
}

TEST(MaxFlow, ReusableAfterClear)
{
    std::mt19937_64 rng(5);
    const Network a = random_network(rng, 8);
    FlowGraph g;
    a.fill(g);
    const double first = g.maxflow();
    random_network(rng, 6).fill(g);
    g.maxflow();
    a.fill(g);
    EXPECT_EQ(g.maxflow(), first);
}

BinaryProblem random_problem(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> s(0.0, 4.0);
    std::bernoulli_distribution present(0.4);
    BinaryProblem prob;
    for (int i = 0; i < n; ++i) {
        prob.add_node(u(rng), u(rng));
    }
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            if (!present(rng)) {
                continue;
            }
            const double v00 = u(rng), v11 = u(rng), v01 = u(rng);
            const double v10 = v00 + v11 - v01 + s(rng);
            prob.add_edge(p, q, v00, v01, v10, v11);
        }
    }
    return prob;
}

double brute_force_min(const BinaryProblem& prob)
{
    const int n = prob.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
    for (unsigned m = 0; m < (1u << n); ++m) {
        for (int i = 0; i < n; ++i) {
            x[std::size_t(i)] = std::uint8_t((m >> i) & 1u);
        }
        best = std::min(best, prob.energy(x));
    }
    return best;
}

TEST(BinarySolver, AllOnesWhenCheaper)
{
    BinaryProblem prob;
    for (int i = 0; i < 5; ++i) {
        prob.add_node(1.0, 0.0);
    }
    const BinarySolution s = solve_binary(prob);
    EXPECT_EQ(s.labels, std::vector<std::uint8_t>(5, 1));
    EXPECT_EQ(s.energy, 0.0);
}

TEST(BinarySolver, StrongEdgeMakesNodesAgree)
{
    BinaryProblem prob;
    prob.add_node(0.0, 3.0);
    prob.add_node(2.0, 0.0);
    prob.add_edge(0, 1, 0.0, 10.0, 10.0, 0.0);
    // Labelings: 00 -> 2, 11 -> 3, 01 -> 10, 10 -> 25.
    const BinarySolution s = solve_binary(prob);
    EXPECT_EQ(s.labels, (std::vector<std::uint8_t>{0, 0}));
    EXPECT_DOUBLE_EQ(s.energy, 2.0);
}

TEST(BinarySolver, TiesPreferZero)
{
    BinaryProblem prob;
    prob.add_node(1.0, 1.0);
    prob.add_node(0.5, 0.5);
    prob.add_edge(0, 1, 0.0, 0.0, 0.0, 0.0);
    EXPECT_EQ(solve_binary(prob).labels, (std::vector<std::uint8_t>{0, 0}));
}

TEST(BinarySolver, RejectsNonSubmodularEdge)
{
    BinaryProblem prob;
    prob.add_node(0.0, 0.0);
    prob.add_node(0.0, 0.0);
    prob.add_node(0.0, 0.0);
    prob.add_edge(0, 1, 0.0, 1.0, 1.0, 0.0);
    prob.add_edge(1, 2, 1.0, 0.0, 0.0, 1.0);
    try {
        solve_binary(prob);
        FAIL() << "expected NonSubmodularError";
    }
    catch (const NonSubmodularError& e) {
        EXPECT_EQ(e.edge(), 1);
    }
}

TEST(BinarySolver, MatchesExhaustiveEnumeration)
{
    std::mt19937_64 rng(23);
    BinarySolver solver;
    for (int trial = 0; trial < 300; ++trial) {
        const BinaryProblem prob = random_problem(rng, 1 + int(rng() % 12));
        const BinarySolution s = solver.solve(prob);
        const double best = brute_force_min(prob);
        EXPECT_NEAR(s.energy, best, 1e-9 * (1.0 + std::abs(best)));
        EXPECT_NEAR(prob.energy(s.labels), s.energy, 1e-9 * (1.0 + std::abs(s.energy)));
    }
}

} // namespace
} // namespace maskreg
