#include "maskreg/maxflow.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace maskreg {

namespace {

constexpr int kInfiniteDist = std::numeric_limits<int>::max();

void check_capacity(double c)
{
    if (!std::isfinite(c) || c < 0.0) {
        throw std::invalid_argument("FlowGraph: capacities must be finite and >= 0");
    }
}

} // namespace

void FlowGraph::reserve(int nodes, int edges)
{
    _nodes.reserve(std::size_t(nodes));
    _arcs.reserve(2 * std::size_t(edges));
}

void FlowGraph::clear()
{
    _nodes.clear();
    _arcs.clear();
    _active.clear();
    _orphans.clear();
    _sink_side.clear();
    _flow = 0.0;
    _time = 0;
}

int FlowGraph::add_nodes(int n)
{
    const int first = int(_nodes.size());
    _nodes.resize(_nodes.size() + std::size_t(n));
    return first;
}

void FlowGraph::add_terminal_weights(int node, double source_cap, double sink_cap)
{
    check_capacity(source_cap);
    check_capacity(sink_cap);
    Node& n = _nodes[std::size_t(node)];
    // tr_cap > 0 is residual source->node, tr_cap < 0 residual node->sink;
    // the common part saturates both terminal arcs immediately.
    if (n.tr_cap > 0.0) {
        source_cap += n.tr_cap;
    }
    else {
        sink_cap -= n.tr_cap;
    }
    _flow += std::min(source_cap, sink_cap);
    n.tr_cap = source_cap - sink_cap;
}

void FlowGraph::add_edge(int p, int q, double cap, double rev_cap)
{
    check_capacity(cap);
    check_capacity(rev_cap);
    const int a = int(_arcs.size());
    _arcs.push_back({q, _nodes[std::size_t(p)].first, cap});
    _arcs.push_back({p, _nodes[std::size_t(q)].first, rev_cap});
    _nodes[std::size_t(p)].first = a;
    _nodes[std::size_t(q)].first = a + 1;
}

void FlowGraph::set_active(int i)
{
    Node& n = _nodes[std::size_t(i)];
    if (!n.active) {
        n.active = true;
        _active.push_back(i);
    }
}

int FlowGraph::next_active()
{
    while (!_active.empty()) {
        const int i = _active.front();
        _active.pop_front();
        _nodes[std::size_t(i)].active = false;
        if (_nodes[std::size_t(i)].parent != kNone) {
            return i;
        }
    }
    return -1;
}

void FlowGraph::augment(int middle)
{
    auto& nodes = _nodes;
    auto& arcs = _arcs;

    double bottleneck = arcs[std::size_t(middle)].r_cap;

    int i = arcs[std::size_t(middle ^ 1)].head;
    for (;;) {
        const int a = nodes[std::size_t(i)].parent;
        if (a == kTerminal) {
            break;
        }
        bottleneck = std::min(bottleneck, arcs[std::size_t(a ^ 1)].r_cap);
        i = arcs[std::size_t(a)].head;
    }
    bottleneck = std::min(bottleneck, nodes[std::size_t(i)].tr_cap);

    i = arcs[std::size_t(middle)].head;
    for (;;) {
        const int a = nodes[std::size_t(i)].parent;
        if (a == kTerminal) {
            break;
        }
        bottleneck = std::min(bottleneck, arcs[std::size_t(a)].r_cap);
        i = arcs[std::size_t(a)].head;
    }
    bottleneck = std::min(bottleneck, -nodes[std::size_t(i)].tr_cap);

    arcs[std::size_t(middle ^ 1)].r_cap += bottleneck;
    arcs[std::size_t(middle)].r_cap -= bottleneck;

    i = arcs[std::size_t(middle ^ 1)].head;
    for (;;) {
        const int a = nodes[std::size_t(i)].parent;
        if (a == kTerminal) {
            break;
        }
        arcs[std::size_t(a)].r_cap += bottleneck;
        arcs[std::size_t(a ^ 1)].r_cap -= bottleneck;
        if (arcs[std::size_t(a ^ 1)].r_cap == 0.0) {
            nodes[std::size_t(i)].parent = kOrphan;
            _orphans.push_front(i);
        }
        i = arcs[std::size_t(a)].head;
    }
    nodes[std::size_t(i)].tr_cap -= bottleneck;
    if (nodes[std::size_t(i)].tr_cap == 0.0) {
        nodes[std::size_t(i)].parent = kOrphan;
        _orphans.push_front(i);
    }

    i = arcs[std::size_t(middle)].head;
    for (;;) {
        const int a = nodes[std::size_t(i)].parent;
        if (a == kTerminal) {
            break;
        }
        arcs[std::size_t(a ^ 1)].r_cap += bottleneck;
        arcs[std::size_t(a)].r_cap -= bottleneck;
        if (arcs[std::size_t(a)].r_cap == 0.0) {
            nodes[std::size_t(i)].parent = kOrphan;
            _orphans.push_front(i);
        }
        i = arcs[std::size_t(a)].head;
    }
    nodes[std::size_t(i)].tr_cap += bottleneck;
    if (nodes[std::size_t(i)].tr_cap == 0.0) {
        nodes[std::size_t(i)].parent = kOrphan;
        _orphans.push_front(i);
    }

    _flow += bottleneck;
}

void FlowGraph::process_source_orphan(int i)
{
    auto& nodes = _nodes;
    auto& arcs = _arcs;

    int best_arc = kNone;
    int best_dist = kInfiniteDist;

    for (int a0 = nodes[std::size_t(i)].first; a0 >= 0; a0 = arcs[std::size_t(a0)].next) {
        if (arcs[std::size_t(a0 ^ 1)].r_cap == 0.0) {
            continue;
        }
        int j = arcs[std::size_t(a0)].head;
        if (nodes[std::size_t(j)].is_sink || nodes[std::size_t(j)].parent == kNone) {
            continue;
        }
        // Walk towards the root to check that j still hangs off the source.
        int d = 0;
        for (;;) {
            Node& nj = nodes[std::size_t(j)];
            if (nj.ts == _time) {
                d += nj.dist;
                break;
            }
            const int a = nj.parent;
            ++d;
            if (a == kTerminal) {
                nj.ts = _time;
                nj.dist = 1;
                break;
            }
            if (a == kOrphan) {
                d = kInfiniteDist;
                break;
            }
            j = arcs[std::size_t(a)].head;
        }
        if (d == kInfiniteDist) {
            continue;
        }
        if (d < best_dist) {
            best_arc = a0;
            best_dist = d;
        }
        for (j = arcs[std::size_t(a0)].head; nodes[std::size_t(j)].ts != _time;
             j = arcs[std::size_t(nodes[std::size_t(j)].parent)].head) {
            nodes[std::size_t(j)].ts = _time;
            nodes[std::size_t(j)].dist = d--;
        }
    }

    Node& ni = nodes[std::size_t(i)];
    if (best_arc != kNone) {
        ni.parent = best_arc;
        ni.ts = _time;
        ni.dist = best_dist + 1;
        return;
    }

    ni.parent = kNone;
    for (int a0 = ni.first; a0 >= 0; a0 = arcs[std::size_t(a0)].next) {
        const int j = arcs[std::size_t(a0)].head;
        Node& nj = nodes[std::size_t(j)];
        if (nj.is_sink || nj.parent == kNone) {
            continue;
        }
        if (arcs[std::size_t(a0 ^ 1)].r_cap > 0.0) {
            set_active(j);
        }
        if (nj.parent != kTerminal && nj.parent != kOrphan && arcs[std::size_t(nj.parent)].head == i) {
            nj.parent = kOrphan;
            _orphans.push_back(j);
        }
    }
}

void FlowGraph::process_sink_orphan(int i)
{
    auto& nodes = _nodes;
    auto& arcs = _arcs;

    int best_arc = kNone;
    int best_dist = kInfiniteDist;

    for (int a0 = nodes[std::size_t(i)].first; a0 >= 0; a0 = arcs[std::size_t(a0)].next) {
        if (arcs[std::size_t(a0)].r_cap == 0.0) {
            continue;
        }
        int j = arcs[std::size_t(a0)].head;
        if (!nodes[std::size_t(j)].is_sink || nodes[std::size_t(j)].parent == kNone) {
            continue;
        }
        int d = 0;
        for (;;) {
            Node& nj = nodes[std::size_t(j)];
            if (nj.ts == _time) {
                d += nj.dist;
                break;
            }
            const int a = nj.parent;
            ++d;
            if (a == kTerminal) {
                nj.ts = _time;
                nj.dist = 1;
                break;
            }
            if (a == kOrphan) {
                d = kInfiniteDist;
                break;
            }
            j = arcs[std::size_t(a)].head;
        }
        if (d == kInfiniteDist) {
            continue;
        }
        if (d < best_dist) {
            best_arc = a0;
            best_dist = d;
        }
        for (j = arcs[std::size_t(a0)].head; nodes[std::size_t(j)].ts != _time;
             j = arcs[std::size_t(nodes[std::size_t(j)].parent)].head) {
            nodes[std::size_t(j)].ts = _time;
            nodes[std::size_t(j)].dist = d--;
        }
    }

    Node& ni = nodes[std::size_t(i)];
    if (best_arc != kNone) {
        ni.parent = best_arc;
        ni.ts = _time;
        ni.dist = best_dist + 1;
        return;
    }

    ni.parent = kNone;
    for (int a0 = ni.first; a0 >= 0; a0 = arcs[std::size_t(a0)].next) {
        const int j = arcs[std::size_t(a0)].head;
        Node& nj = nodes[std::size_t(j)];
        if (!nj.is_sink || nj.parent == kNone) {
            continue;
        }
        if (arcs[std::size_t(a0)].r_cap > 0.0) {
            set_active(j);
        }
        if (nj.parent != kTerminal && nj.parent != kOrphan && arcs[std::size_t(nj.parent)].head == i) {
            nj.parent = kOrphan;
            _orphans.push_back(j);
        }
    }
}

double FlowGraph::maxflow()
{
    auto& nodes = _nodes;
    auto& arcs = _arcs;

    _active.clear();
    _orphans.clear();
    _time = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        Node& n = nodes[k];
        n.active = false;
        n.ts = 0;
        if (n.tr_cap > 0.0) {
            n.is_sink = false;
            n.parent = kTerminal;
            n.dist = 1;
            set_active(int(k));
        }
        else if (n.tr_cap < 0.0) {
            n.is_sink = true;
            n.parent = kTerminal;
            n.dist = 1;
            set_active(int(k));
        }
        else {
            n.parent = kNone;
        }
    }

    int current = -1;
    for (;;) {
        int i = current;
        if (i >= 0) {
            nodes[std::size_t(i)].active = false;
            if (nodes[std::size_t(i)].parent == kNone) {
                i = -1;
            }
        }
        if (i < 0) {
            i = next_active();
            if (i < 0) {
                break;
            }
        }

        int connecting = kNone;
        Node& ni = nodes[std::size_t(i)];
        if (!ni.is_sink) {
            for (int a = ni.first; a >= 0; a = arcs[std::size_t(a)].next) {
                if (arcs[std::size_t(a)].r_cap == 0.0) {
                    continue;
                }
                const int j = arcs[std::size_t(a)].head;
                Node& nj = nodes[std::size_t(j)];
                if (nj.parent == kNone) {
                    nj.is_sink = false;
                    nj.parent = a ^ 1;
                    nj.ts = ni.ts;
                    nj.dist = ni.dist + 1;
                    set_active(j);
                }
                else if (nj.is_sink) {
                    connecting = a;
                    break;
                }
                else if (nj.ts <= ni.ts && nj.dist > ni.dist) {
                    nj.parent = a ^ 1;
                    nj.ts = ni.ts;
                    nj.dist = ni.dist + 1;
                }
            }
        }
        else {
            for (int a = ni.first; a >= 0; a = arcs[std::size_t(a)].next) {
                if (arcs[std::size_t(a ^ 1)].r_cap == 0.0) {
                    continue;
                }
                const int j = arcs[std::size_t(a)].head;
                Node& nj = nodes[std::size_t(j)];
                if (nj.parent == kNone) {
                    nj.is_sink = true;
                    nj.parent = a ^ 1;
                    nj.ts = ni.ts;
                    nj.dist = ni.dist + 1;
                    set_active(j);
                }
                else if (!nj.is_sink) {
                    connecting = a ^ 1;
                    break;
                }
                else if (nj.ts <= ni.ts && nj.dist > ni.dist) {
                    nj.parent = a ^ 1;
                    nj.ts = ni.ts;
                    nj.dist = ni.dist + 1;
                }
            }
        }

        ++_time;

        if (connecting == kNone) {
            current = -1;
            continue;
        }

        // Keep growing from i after the augmentation; flag it so it is not queued twice.
        nodes[std::size_t(i)].active = true;
        current = i;

        augment(connecting);

        while (!_orphans.empty()) {
            const int o = _orphans.front();
            _orphans.pop_front();
            if (nodes[std::size_t(o)].is_sink) {
                process_sink_orphan(o);
            }
            else {
                process_source_orphan(o);
            }
        }
    }

    mark_sink_side();
    return _flow;
}

void FlowGraph::mark_sink_side()
{
    _sink_side.assign(_nodes.size(), 0);
    _stack.clear();
    for (std::size_t k = 0; k < _nodes.size(); ++k) {
        if (_nodes[k].tr_cap < 0.0) {
            _sink_side[k] = 1;
            _stack.push_back(int(k));
        }
    }
    while (!_stack.empty()) {
        const int i = _stack.back();
        _stack.pop_back();
        for (int a = _nodes[std::size_t(i)].first; a >= 0; a = _arcs[std::size_t(a)].next) {
            // a is i->j; its sister j->i is what lets j reach i.
            const int j = _arcs[std::size_t(a)].head;
            if (!_sink_side[std::size_t(j)] && _arcs[std::size_t(a ^ 1)].r_cap > 0.0) {
                _sink_side[std::size_t(j)] = 1;
                _stack.push_back(j);
            }
        }
    }
}

MinCut maxflow(FlowGraph& graph)
{
    MinCut cut;
    cut.flow = graph.maxflow();
    cut.sides.resize(std::size_t(graph.node_count()));
    for (int i = 0; i < graph.node_count(); ++i) {
        cut.sides[std::size_t(i)] = graph.side(i);
    }
    return cut;
}

} // namespace maskreg
