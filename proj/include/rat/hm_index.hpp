#pragma once

#include "rat/hm_core.hpp"
#include "rat/two_commodity.hpp"

namespace rat {

// auto: the digon / vertex-cover route for 2 commodities, branch and bound otherwise.
inline HmResult hm_index(const ConsumerDataset& ds, HmMethod method, SearchBudget& budget) {
    if (method == HmMethod::auto_) method = ds.commodities == 2 ? HmMethod::digon2d : HmMethod::bb;
    switch (method) {
        case HmMethod::digon2d: {
            if (ds.commodities != 2) throw DimensionError("digon2d needs 2 commodities");
            auto g = build_preference_graph(ds);
            auto vc = min_vertex_cover(build_auxiliary_graph(g), budget);
            return detail::certified(g, vc.cover, HmMethod::digon2d);
        }
        case HmMethod::brute: return hm_index_bruteforce(build_preference_graph(ds));
        default: return hm_index_bb(build_preference_graph(ds), budget);
    }
}

inline HmResult hm_index(const ConsumerDataset& ds, HmMethod method = HmMethod::auto_) {
    SearchBudget b;
    return hm_index(ds, method, b);
}

} // namespace rat
