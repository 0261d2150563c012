// Dempster-Shafer machinery over the two-hypothesis frame {Trusted, Untrusted}:
// mass functions, dissimilarity test, evidence-to-mass assignment, pairwise
// combination, belief/plausibility, and the direct-plus-recommendations fusion.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dstrust::dst {

// Subsets of the frame, as a bitmask: bit 0 = Trusted, bit 1 = Untrusted.
enum class FrameSet : unsigned { Empty = 0u, Trusted = 1u, Untrusted = 2u, Either = 3u };

constexpr FrameSet intersect(FrameSet a, FrameSet b) {
    return static_cast<FrameSet>(static_cast<unsigned>(a) & static_cast<unsigned>(b));
}

// Basic probability assignment. Mass on the empty set is identically zero;
// the three stored components sum to one.
struct MassFunction {
    double trusted = 0.0;    // mass on {Trusted}
    double untrusted = 0.0;  // mass on {Untrusted}
    double uncertain = 0.0;  // mass on {Trusted, Untrusted}

    static MassFunction vacuous() { return {0.0, 0.0, 1.0}; }

    double mass(FrameSet s) const;
    bool is_valid(double tol = 1e-9) const;
};

struct TotalConflictError : std::runtime_error {
    TotalConflictError() : std::runtime_error("total conflict: combination undefined") {}
};

// Normalized absolute difference |a-b| / (|a|+|b|); 0 when both are 0
// (two all-zero records agree perfectly).
double dissimilarity(double a, double b);

// Mass from a direct trust value: at or above gamma the trust mass is the
// value itself with the remainder uncertain; below gamma the rule mirrors,
// putting 1-value on Untrusted with the value itself left uncertain.
MassFunction direct_bpa(double direct_trust, double gamma);

// Mass from a recommendation: the dissimilarity against the requester's own
// record becomes the uncertain mass; the remainder supports Trusted when the
// indirect trust reaches gamma, Untrusted otherwise.
MassFunction indirect_bpa(double idt, double dissim, double gamma);

// Dempster's pairwise combination. Throws TotalConflictError when the
// normalizer 1-K falls below 1e-12.
MassFunction combine(const MassFunction& m1, const MassFunction& m2);

// Sum of masses on nonempty subsets of `set` / on subsets intersecting `set`.
double belief(const MassFunction& m, FrameSet set);
double plausibility(const MassFunction& m, FrameSet set);

struct Recommendation {
    std::int32_t recommender = -1;
    double idt = 0.0;  // indirect trust of the target via this recommender
};

struct FusionInput {
    double direct_trust = 0.5;
    std::vector<Recommendation> recommendations;
    double gamma = 0.5;
};

// How the fused mass is collapsed to a single trust scalar.
enum class TrustScalar {
    Belief,     // belief({Trusted}) = m(T)
    Pignistic,  // m(T) + 0.5 * m(T,U)
};

// Full pipeline: direct mass, then one recommendation mass per entry (each
// dissimilarity computed against the direct trust), folded with combine() in
// list order. With no recommendations the result is the direct mass alone.
MassFunction fuse_mass(const FusionInput& in);
double fuse(const FusionInput& in, TrustScalar scalar = TrustScalar::Belief);

// Running count of pairwise combinations performed by this thread; used by
// the complexity scaling checks. Reset, then read after a workload.
std::uint64_t combination_count();
void reset_combination_count();

}  // namespace dstrust::dst
