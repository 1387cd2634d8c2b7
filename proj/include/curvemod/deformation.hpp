#pragma once

#include "curvemod/engine.hpp"

namespace curvemod {

// Tangent dimension of the global deformation functor of (X, G): the
// coinvariants of the quadratic differentials. Both available routes are
// evaluated -- the explicit layer sum over labels (chi^j.0, (j+1)p^{n-n_I})
// and the coinvariant count of the full m=2 output -- and must agree.
inline Int tangent_dimension(const GroupData& g, const CoverData& cover) {
    EngineResult result = decompose_polydifferential(g, cover, 2);
    const EngineTrace& tr = result.trace;

    Int layer_sum = 0;
    long jn = to_long(tr.p_nI);
    for (long j = 0; j < jn; ++j) {
        IndecomposableLabel label{chi_act(g, Int(j), Int(0)), Int(j + 1) * tr.layer};
        layer_sum += result.decomposition.multiplicity(label);
    }

    Int coinv = coinvariant_dimension(result.decomposition, g);
    if (layer_sum != coinv)
        throw Failure(FailureCode::DimensionMismatch,
                      "tangent routes disagree: " + str(layer_sum) + " vs " + str(coinv));
    return layer_sum;
}

}  // namespace curvemod
