#pragma once

#include <random>
#include <string>

#include "qbs/datum_io.hpp"

namespace qbstest {

inline qbs::Datum loadDatum(const std::string& name) {
    return qbs::datumFromFile(std::string(QBS_DATA_DIR) + "/" + name);
}

inline qbs::Datum sl2() { return loadDatum("d1_sl2.json"); }
inline qbs::Datum osp12() { return loadDatum("d2_osp12.json"); }
inline qbs::Datum a2() { return loadDatum("d3_a2.json"); }
inline qbs::Datum isotropic() { return loadDatum("d4_isotropic.json"); }
inline qbs::Datum borcherds() { return loadDatum("d5_borcherds.json"); }

// Small random Laurent polynomial / rational function generators for
// property tests; deterministic under a caller-supplied engine.
inline qbs::LaurentPoly randomPoly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nTerms(0, 3), expo(-4, 4), numer(-6, 6);
    std::uniform_int_distribution<int> denom(1, 4);
    qbs::LaurentPoly p;
    int n = nTerms(rng);
    for (int t = 0; t < n; ++t)
        p.addTerm(expo(rng), qbs::ratio(numer(rng), denom(rng)));
    return p;
}

inline qbs::Scalar randomScalar(std::mt19937& rng) {
    qbs::LaurentPoly den;
    while (den.isZero()) den = randomPoly(rng);
    return qbs::Scalar(randomPoly(rng), den);
}

}  // namespace qbstest
