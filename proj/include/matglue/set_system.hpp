#pragma once

#include <cstdint>

#include "matglue/presentation.hpp"

namespace matglue {

/// A pair of set families over one ground set, thought of as candidate
/// circuits and cocircuits.
struct SetSystemPair {
    Ground ground;
    std::set<EdgeSet> cee;  // the C family
    std::set<EdgeSet> dee;  // the D family

    /// (C, D) restricted to X = (C|_X, D.X).
    SetSystemPair restricted_to(const EdgeSet& x) const;
    /// (C, D).X = (C.X, D|_X).
    SetSystemPair contracted_to(const EdgeSet& x) const;
    SetSystemPair minor(const EdgeSet& contract_p, const EdgeSet& delete_q) const;
};

/// Family restriction: members included in X.
std::set<EdgeSet> family_restrict(const std::set<EdgeSet>& fam, const EdgeSet& x);
/// Family contraction: traces on X.
std::set<EdgeSet> family_contract(const std::set<EdgeSet>& fam, const EdgeSet& x);
/// Inclusion-minimal nonempty members.
std::set<EdgeSet> minimal_nonempty(const std::set<EdgeSet>& fam);

/// The support families (S(V), S(W)) of a presentation, fully enumerated.
/// Finite fields only.
SetSystemPair supports_of(const Presentation& pi, const Budget& budget = {});

enum class Axiom { O1, O2, O3, O3star, Tame, IM };

Axiom axiom_from_name(const std::string& name);
std::string axiom_name(Axiom a);

struct AxiomVerdict {
    bool holds = true;
    std::string witness;  // human-readable failing instance, when !holds
};

/// Checks one orthogonality axiom by exhaustive scan (with caps). The (IM)
/// scan samples (I, X) pairs from `seed` when the ground is too big to
/// exhaust.
AxiomVerdict check_axiom(const SetSystemPair& sys, Axiom which, const Budget& budget = {},
                         std::uint64_t seed = 0);

struct BaseCheck {
    bool is_base = false;
    std::string failure;                        // first uncovered element, when !is_base
    std::map<EdgeId, EdgeSet> circuit_witness;   // x not in B -> o with x in o ⊆ B+x
    std::map<EdgeId, EdgeSet> cocircuit_witness; // x in B -> d with x in d ⊆ (E\B)+x
};

/// Base characterization: every outside element closes a C-member into B,
/// every inside element closes a D-member into the complement.
BaseCheck is_base(const SetSystemPair& sys, const EdgeSet& b);

/// Connected components: classes of the partition generated by "some
/// minimal nonempty C-member contains both". Verifies that the D-family
/// generates the same partition and that each class X satisfies
/// (C,D)|_X = (C,D).X; throws Error when either check fails.
std::vector<EdgeSet> components(const SetSystemPair& sys);

}  // namespace matglue
