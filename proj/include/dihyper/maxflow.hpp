#pragma once

#include <limits>
#include <vector>

namespace dihyper {

// Max-flow on a directed network with real capacities (Dinic). Capacities may
// be kInfiniteCapacity. After max_flow(), both the minimal and the maximal
// source side of a minimum cut can be extracted.
class FlowNetwork {
  public:
    static constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();

    explicit FlowNetwork(int num_nodes = 0);

    int add_node();
    int num_nodes() const { return static_cast<int>(adj_.size()); }
    // Adds arc from->to with the given capacity (reverse residual capacity 0).
    void add_arc(int from, int to, double capacity);

    double max_flow(int s, int t);

    // Valid after max_flow. maximal=false: vertices reachable from s in the
    // residual graph (unique minimal source side). maximal=true: complement
    // of the vertices that can still reach t (unique maximal source side).
    std::vector<char> min_cut_source_side(bool maximal) const;

    double flow_on(int arc_id) const { return arcs_[2 * arc_id].flow; }

    // Arc ids are assigned sequentially by add_arc.
    int num_arcs() const { return static_cast<int>(arcs_.size() / 2); }

  private:
    struct Arc {
        int to;
        double cap;
        double flow;
    };

    bool bfs(int s, int t);
    double dfs(int u, int t, double limit);
    double residual(const Arc& a) const { return a.cap - a.flow; }

    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_, iter_;
    int last_s_ = -1, last_t_ = -1;
    double eps_ = 1e-12;
};

} // namespace dihyper
