#pragma once

#include <cstdint>

namespace matglue {

/// Work caps for the exhaustive procedures. All enumeration-based
/// operations take one of these and raise CapExceeded instead of running
/// away. Defaults are sized for desk-scale instances.
struct Budget {
    /// Max members enumerated from one subspace (|k|^dim for finite fields).
    std::uint64_t max_enumeration = 1u << 20;
    /// Max ground size for the brute-force matroid oracle.
    std::uint64_t oracle_ground_cap = 12;
    /// Max partitions scanned in one (O2) sweep; 3^10 bounds the 3^|E|-ish
    /// work of scanning every (P, Q, e) split.
    std::uint64_t max_o2_partitions = 59049;
    /// Max positions allowed when materializing a game.
    std::uint64_t max_positions = 200000;
    /// Max plays materialized into a strategy tree.
    std::uint64_t max_plays = 500000;
    /// Sample count for the (IM) check on grounds too big to exhaust.
    std::uint64_t im_samples = 200;
};

}  // namespace matglue
