#include "dihyper/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace dihyper {

FlowNetwork::FlowNetwork(int num_nodes) : adj_(num_nodes) {}

int FlowNetwork::add_node() {
    adj_.emplace_back();
    return num_nodes() - 1;
}

void FlowNetwork::add_arc(int from, int to, double capacity) {
    if (from < 0 || from >= num_nodes() || to < 0 || to >= num_nodes())
        throw std::invalid_argument("arc endpoint out of range");
    if (std::isnan(capacity) || capacity < 0)
        throw std::invalid_argument("capacity must be nonnegative");
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, capacity, 0.0});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0.0, 0.0});
}

bool FlowNetwork::bfs(int s, int t) {
    level_.assign(num_nodes(), -1);
    std::deque<int> q{s};
    level_[s] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int id : adj_[u]) {
            const Arc& a = arcs_[id];
            if (residual(a) > eps_ && level_[a.to] < 0) {
                level_[a.to] = level_[u] + 1;
                q.push_back(a.to);
            }
        }
    }
    return level_[t] >= 0;
}

double FlowNetwork::dfs(int u, int t, double limit) {
    if (u == t) return limit;
    for (int& i = iter_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
        int id = adj_[u][i];
        Arc& a = arcs_[id];
        if (residual(a) > eps_ && level_[a.to] == level_[u] + 1) {
            double pushed = dfs(a.to, t, std::min(limit, residual(a)));
            if (pushed > 0) {
                a.flow += pushed;
                arcs_[id ^ 1].flow -= pushed;
                return pushed;
            }
        }
    }
    return 0;
}

double FlowNetwork::max_flow(int s, int t) {
    if (s == t) throw std::invalid_argument("source equals sink");
    last_s_ = s;
    last_t_ = t;
    double cap_scale = 1.0;
    for (const Arc& a : arcs_)
        if (std::isfinite(a.cap)) cap_scale = std::max(cap_scale, a.cap);
    eps_ = 1e-12 * cap_scale;

    double total = 0;
    while (bfs(s, t)) {
        iter_.assign(num_nodes(), 0);
        double pushed;
        while ((pushed = dfs(s, t, kInfiniteCapacity)) > 0) total += pushed;
    }
    return total;
}

std::vector<char> FlowNetwork::min_cut_source_side(bool maximal) const {
    if (last_s_ < 0) throw std::logic_error("min_cut_source_side before max_flow");
    std::vector<char> mark(num_nodes(), 0);
    if (!maximal) {
        // Minimal side: residual reachability from s, available from the
        // final (failed) BFS labeling.
        for (int u = 0; u < num_nodes(); ++u) mark[u] = level_[u] >= 0;
        return mark;
    }
    // Maximal side: complement of the nodes that can still reach t. A node u
    // reaches t iff some residual arc u->v exists with v reaching t, i.e.
    // BFS backwards over residual arcs starting from t.
    std::vector<char> reaches_t(num_nodes(), 0);
    std::deque<int> q{last_t_};
    reaches_t[last_t_] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int id : adj_[v]) {
            // arcs_[id] goes v->u; the paired arc id^1 is u->v, whose
            // residual capacity is what a predecessor u would use.
            int u = arcs_[id].to;
            if (!reaches_t[u] && residual(arcs_[id ^ 1]) > eps_) {
                reaches_t[u] = 1;
                q.push_back(u);
            }
        }
    }
    for (int u = 0; u < num_nodes(); ++u) mark[u] = !reaches_t[u];
    return mark;
}

} // namespace dihyper
