#pragma once

#include "maskreg/maxflow.h"

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maskreg {

struct BinaryEdge
{
    int p;
    int q;
    double v00;
    double v01;
    double v10;
    double v11;
};

/// E(x) = sum_p unary[p][x_p] + sum_edges V(x_p, x_q) over x in {0,1}^n.
struct BinaryProblem
{
    std::vector<std::array<double, 2>> unary;
    std::vector<BinaryEdge> edges;

    int add_node(double cost0, double cost1)
    {
        unary.push_back({cost0, cost1});
        return int(unary.size()) - 1;
    }
    void add_edge(int p, int q, double v00, double v01, double v10, double v11)
    {
        edges.push_back({p, q, v00, v01, v10, v11});
    }
    void clear()
    {
        unary.clear();
        edges.clear();
    }
    int size() const { return int(unary.size()); }

    double energy(std::span<const std::uint8_t> labels) const;
};

struct BinarySolution
{
    std::vector<std::uint8_t> labels;
    double energy = 0.0;
};

class NonSubmodularError : public std::invalid_argument
{
public:
    NonSubmodularError(int edge, const std::string& what) : std::invalid_argument(what), _edge(edge) {}
    int edge() const { return _edge; }

private:
    int _edge;
};

/// Exact minimizer for submodular binary energies (V01 + V10 >= V00 + V11 on
/// every edge) via a single min-cut. Among equal-energy minimizers it returns
/// the one with the fewest ones. Reusable; keeps its graph storage.
class BinarySolver
{
public:
    void solve(const BinaryProblem& problem, BinarySolution& out);
    BinarySolution solve(const BinaryProblem& problem)
    {
        BinarySolution s;
        solve(problem, s);
        return s;
    }

private:
    FlowGraph _graph;
    std::vector<std::array<double, 2>> _terminal;
};

BinarySolution solve_binary(const BinaryProblem& problem);

} // namespace maskreg
