#pragma once

#include <sstream>
#include <string>

#include "sigma/lattice.hpp"
#include "sigma/partition.hpp"
#include "sigma/subnormality.hpp"

namespace sigma {

struct DotMarks {
    bool normal = false;
    bool sigma_subnormal = false;
    bool sigma_quasinormal = false;
};

// Hasse diagram of the subgroup lattice. Nodes are labelled
// "order:count-index" (index within the subgroups of equal order); marked
// properties map to fixed style classes:
//   normal            -> peripheries=2
//   sigma-subnormal   -> style=filled fillcolor=lightblue
//   sigma-quasinormal -> color=red
inline std::string export_dot(const Group& g, const Lattice& lat, const SigmaPartition& sig,
                              const DotMarks& marks = {}) {
    SubnormalContext sub(lat, sig);

    std::vector<int> order_count(lat.size()), order_index(lat.size());
    for (int i = 0; i < lat.size(); ++i) {
        int cnt = 0, idx = 0;
        for (int j = 0; j < lat.size(); ++j) {
            if (lat.order(j) != lat.order(i)) continue;
            ++cnt;
            if (j <= i) ++idx;
        }
        order_count[i] = cnt;
        order_index[i] = idx;
    }

    std::ostringstream os;
    os << "digraph \"" << g.name << "\" {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=box];\n";
    for (int i = 0; i < lat.size(); ++i) {
        os << "  n" << i << " [label=\"" << lat.order(i) << ":" << order_count[i] << "-"
           << order_index[i] << "\"";
        if (marks.normal && lat.normal_in_g[i]) os << " peripheries=2";
        if (marks.sigma_subnormal && sub.is_sigma_subnormal(i))
            os << " style=filled fillcolor=lightblue";
        if (marks.sigma_quasinormal && sub.is_sigma_quasinormal(i)) os << " color=red";
        os << "];\n";
    }
    for (int i = 0; i < lat.size(); ++i)
        for (int m : lat.maximal_subs[i]) os << "  n" << m << " -> n" << i << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace sigma
