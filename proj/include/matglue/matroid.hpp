#pragma once

#include "matglue/set_system.hpp"

namespace matglue {

/// A claimed finite matroid: circuits and cocircuits over one ground set.
struct MatroidCert {
    Ground ground;
    std::set<EdgeSet> circuits;
    std::set<EdgeSet> cocircuits;

    SetSystemPair as_system() const { return SetSystemPair{ground, circuits, cocircuits}; }
};

struct MatroidVerdict {
    bool valid = true;
    std::string failure;  // first failing instance
};

/// Brute-force verifier: circuit axioms (nonempty antichain + elimination),
/// base existence over the independent-set lattice, and cocircuits equal to
/// the dual circuits computed from the bases. Ground size is capped.
MatroidVerdict verify_matroid(const MatroidCert& cert, const Budget& budget = {});

/// All bases (maximal independent sets) of the circuit family.
std::set<EdgeSet> matroid_bases(const Ground& ground, const std::set<EdgeSet>& circuits,
                                const Budget& budget = {});

/// The matroid presented by Pi: circuits are the minimal nonempty supports
/// of vectors, cocircuits of covectors. The result is oracle-verified;
/// failure throws (it would indicate an implementation bug).
MatroidCert presented_matroid(const Presentation& pi, const Budget& budget = {});

}  // namespace matglue
