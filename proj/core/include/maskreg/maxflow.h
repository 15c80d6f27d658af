#pragma once

#include <cstdint>
#include <deque>
#include <vector>

namespace maskreg {

/// s-t flow network with real capacities, solved by augmenting paths with
/// search-tree reuse (Boykov-Kolmogorov). Intended to be cleared and
/// refilled many times; storage is kept between uses.
class FlowGraph
{
public:
    enum class Side : std::uint8_t { Source, Sink };

    FlowGraph() = default;

    void reserve(int nodes, int edges);

    /// Drops all nodes and edges, keeps allocations.
    void clear();

    /// Appends `n` nodes, returns the id of the first one.
    int add_nodes(int n);
    int node_count() const { return int(_nodes.size()); }

    /// Adds capacity on source->node and node->sink. Both must be >= 0 and finite.
    void add_terminal_weights(int node, double source_cap, double sink_cap);

    /// Adds the pair p->q (cap) and q->p (rev_cap). Both must be >= 0 and finite.
    void add_edge(int p, int q, double cap, double rev_cap);

    /// Runs to completion and returns the max-flow value, which equals the
    /// capacity of the minimum cut.
    double maxflow();

    /// Valid after maxflow(). Nodes that can still reach the sink through the
    /// residual network are on the sink side; all others are on the source
    /// side, so among all minimum cuts this one has the smallest sink set.
    Side side(int node) const { return _sink_side[std::size_t(node)] ? Side::Sink : Side::Source; }

private:
    static constexpr int kNone = -1;
    static constexpr int kTerminal = -2;
    static constexpr int kOrphan = -3;

    struct Node
    {
        int first = -1;
        int parent = kNone;
        long ts = 0;
        int dist = 0;
        bool is_sink = false;
        bool active = false;
        double tr_cap = 0.0;
    };

    struct Arc
    {
        int head;
        int next;
        double r_cap;
    };

    void set_active(int i);
    int next_active();
    void augment(int middle);
    void process_source_orphan(int i);
    void process_sink_orphan(int i);
    void mark_sink_side();

    std::vector<Node> _nodes;
    std::vector<Arc> _arcs;
    std::deque<int> _active;
    std::deque<int> _orphans;
    std::vector<std::uint8_t> _sink_side;
    std::vector<int> _stack;
    double _flow = 0.0;
    long _time = 0;
};

struct MinCut
{
    double flow = 0.0;
    std::vector<FlowGraph::Side> sides;
};

/// Solves `graph` in place and collects the side of every node.
MinCut maxflow(FlowGraph& graph);

} // namespace maskreg
