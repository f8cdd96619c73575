#pragma once

#include "rat/generators.hpp"
#include "rat/hardness/assembly.hpp"
#include "rat/hardness/planarity.hpp"

namespace rat {

struct NonPlanarFormula : std::invalid_argument {
    PlanarityResult result;
    explicit NonPlanarFormula(PlanarityResult r)
        : std::invalid_argument("incidence graph is not planar"), result(std::move(r)) {}
};

struct SatDataset {
    ConsumerDataset dataset;
    long threshold = 0;
    PlanarLayout layout;
    AssembledDrawing assembled;
};

// planar 3-SAT -> gadget graph -> disc drawing -> 3-commodity data.
// Satisfiable iff the Houtman-Maks index of `dataset` is at most `threshold`.
inline SatDataset sat_to_dataset(const SatInstance& f, const AssembleOptions& opt = {},
                                 const PlanarLayout* layout = nullptr) {
    SatDataset out;
    if (layout) {
        out.layout = *layout;
    } else {
        auto pr = check_planar(f);
        if (!pr.planar) throw NonPlanarFormula(std::move(pr));
        out.layout = std::move(pr.layout);
    }
    out.assembled = assemble_drawing(f, out.layout, opt);
    out.threshold = out.assembled.gadget.threshold;
    out.dataset = drawing_to_dataset(out.assembled.drawing);
    return out;
}

} // namespace rat
