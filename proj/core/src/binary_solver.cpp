#include "maskreg/binary_solver.h"

#include <algorithm>
#include <cmath>

namespace maskreg {

double BinaryProblem::energy(std::span<const std::uint8_t> labels) const
{
    double e = 0.0;
    for (std::size_t i = 0; i < unary.size(); ++i) {
        e += unary[i][labels[i]];
    }
    for (const auto& edge : edges) {
        const int a = labels[std::size_t(edge.p)];
        const int b = labels[std::size_t(edge.q)];
        e += a == 0 ? (b == 0 ? edge.v00 : edge.v01) : (b == 0 ? edge.v10 : edge.v11);
    }
    return e;
}

void BinarySolver::solve(const BinaryProblem& problem, BinarySolution& out)
{
    const int n = problem.size();

    // Label 0 <-> source side, label 1 <-> sink side. The cost of label 1 sits
    // on source->p (cut when p lands on the sink side) and vice versa.
    _terminal.assign(problem.unary.begin(), problem.unary.end());

    _graph.clear();
    _graph.reserve(n, int(problem.edges.size()));
    _graph.add_nodes(n);

    for (std::size_t k = 0; k < problem.edges.size(); ++k) {
        const auto& e = problem.edges[k];
        double coupling = e.v01 + e.v10 - e.v00 - e.v11;
        const double tol = 1e-12 * (std::abs(e.v00) + std::abs(e.v01) + std::abs(e.v10) + std::abs(e.v11));
        if (!(coupling >= -tol)) {
            throw NonSubmodularError(int(k), "non-submodular edge " + std::to_string(k) + " (" +
                                                 std::to_string(e.p) + "," + std::to_string(e.q) +
                                                 "): V01 + V10 < V00 + V11");
        }
        coupling = std::max(coupling, 0.0);
        // V(a,b) = V00 + (V10 - V00) a + (V11 - V10) b + coupling (1 - a) b
        _terminal[std::size_t(e.p)][1] += e.v10 - e.v00;
        _terminal[std::size_t(e.q)][1] += e.v11 - e.v10;
        if (coupling > 0.0) {
            _graph.add_edge(e.p, e.q, coupling, 0.0);
        }
    }
    for (int i = 0; i < n; ++i) {
        const auto [c0, c1] = _terminal[std::size_t(i)];
        const double m = std::min(c0, c1);
        _graph.add_terminal_weights(i, c1 - m, c0 - m);
    }

    _graph.maxflow();

    out.labels.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        out.labels[std::size_t(i)] = _graph.side(i) == FlowGraph::Side::Sink ? 1 : 0;
    }
    out.energy = problem.energy(out.labels);
}

BinarySolution solve_binary(const BinaryProblem& problem)
{
    BinarySolver solver;
    return solver.solve(problem);
}

} // namespace maskreg
