#include "dihyper/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dihyper {

namespace {

// Groups the given vertices by value: sort, then chain gaps <= tau.
std::vector<std::vector<int>> group_by_value(const std::vector<int>& verts,
                                             const std::vector<double>& val, double tau) {
    std::vector<int> order = verts;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return val[a] != val[b] ? val[a] < val[b] : a < b; });
    std::vector<std::vector<int>> groups;
    for (size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || val[order[i]] - val[order[i - 1]] > tau)
            groups.emplace_back();
        groups.back().push_back(order[i]);
    }
    for (auto& g : groups) std::sort(g.begin(), g.end());
    return groups;
}

} // namespace

OrderedPartition induced_partition(const std::vector<double>& f, double tau) {
    OrderedPartition p;
    std::vector<int> all(f.size());
    std::iota(all.begin(), all.end(), 0);
    p.classes = group_by_value(all, f, tau);
    p.class_of.assign(f.size(), 0);
    for (int c = 0; c < p.num_classes(); ++c)
        for (int u : p.classes[c]) p.class_of[u] = c;
    return p;
}

OrderedPartition refine_by(const OrderedPartition& base, const std::vector<double>& g,
                           double tau) {
    OrderedPartition p;
    p.class_of.assign(base.class_of.size(), 0);
    for (const auto& cls : base.classes) {
        auto parts = group_by_value(cls, g, tau);
        for (auto& part : parts) p.classes.push_back(std::move(part));
    }
    for (int c = 0; c < p.num_classes(); ++c)
        for (int u : p.classes[c]) p.class_of[u] = c;
    return p;
}

bool is_refinement(const OrderedPartition& coarse, const OrderedPartition& fine) {
    if (coarse.size() != fine.size()) return false;
    // Containment: all members of a fine class share a coarse class.
    for (const auto& cls : fine.classes) {
        for (int u : cls)
            if (coarse.class_of[u] != coarse.class_of[cls[0]]) return false;
    }
    // Order preservation.
    int prev_coarse = -1;
    for (const auto& cls : fine.classes) {
        int c = coarse.class_of[cls[0]];
        if (c < prev_coarse) return false;
        prev_coarse = c;
    }
    return true;
}

} // namespace dihyper
