#pragma once

#include <vector>

namespace dihyper {

// An equivalence relation on 0..n-1 whose classes carry a strict total
// order. classes[0] is the lowest class.
struct OrderedPartition {
    std::vector<std::vector<int>> classes; // ascending, each sorted
    std::vector<int> class_of;             // size n

    int size() const { return static_cast<int>(class_of.size()); }
    int num_classes() const { return static_cast<int>(classes.size()); }
};

// Least refinement of the trivial relation compatible with f: classes are
// maximal groups of equal values, ascending. Equality uses chained gaps
// <= tau so that grouping is order-independent.
OrderedPartition induced_partition(const std::vector<double>& f, double tau = 1e-9);

// sigma(g): split every class of base by the values of g, keeping the base
// order between classes and ordering the parts by g ascending.
OrderedPartition refine_by(const OrderedPartition& base, const std::vector<double>& g,
                           double tau = 1e-9);

// True when every class of fine is contained in a class of coarse and the
// class orders agree.
bool is_refinement(const OrderedPartition& coarse, const OrderedPartition& fine);

} // namespace dihyper
