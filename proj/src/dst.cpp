#include "dstrust/dst.hpp"

#include <cmath>

namespace dstrust::dst {

namespace {

thread_local std::uint64_t g_combinations = 0;

void require_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

}  // namespace

double MassFunction::mass(FrameSet s) const {
    switch (s) {
        case FrameSet::Empty: return 0.0;
        case FrameSet::Trusted: return trusted;
        case FrameSet::Untrusted: return untrusted;
        case FrameSet::Either: return uncertain;
    }
    return 0.0;
}

bool MassFunction::is_valid(double tol) const {
    const bool in_range = trusted >= 0.0 && trusted <= 1.0 && untrusted >= 0.0 &&
                          untrusted <= 1.0 && uncertain >= 0.0 && uncertain <= 1.0;
    return in_range && std::abs(trusted + untrusted + uncertain - 1.0) <= tol;
}

double dissimilarity(double a, double b) {
    require_unit(a, "trust a");
    require_unit(b, "trust b");
    const double denom = std::abs(a) + std::abs(b);
    if (denom == 0.0) return 0.0;
    return std::abs(a - b) / denom;
}

MassFunction direct_bpa(double direct_trust, double gamma) {
    require_unit(direct_trust, "direct trust");
    if (direct_trust >= gamma) return {direct_trust, 0.0, 1.0 - direct_trust};
    return {0.0, 1.0 - direct_trust, direct_trust};
}

MassFunction indirect_bpa(double idt, double dissim, double gamma) {
    require_unit(idt, "indirect trust");
    require_unit(dissim, "dissimilarity");
    if (idt >= gamma) return {1.0 - dissim, 0.0, dissim};
    return {0.0, 1.0 - dissim, dissim};
}

MassFunction combine(const MassFunction& m1, const MassFunction& m2) {
    ++g_combinations;
    const double conflict = m1.trusted * m2.untrusted + m1.untrusted * m2.trusted;
    const double norm = 1.0 - conflict;
    if (norm < 1e-12) throw TotalConflictError{};
    MassFunction out;
    out.trusted = (m1.trusted * m2.trusted + m1.trusted * m2.uncertain +
                   m1.uncertain * m2.trusted) / norm;
    out.untrusted = (m1.untrusted * m2.untrusted + m1.untrusted * m2.uncertain +
                     m1.uncertain * m2.untrusted) / norm;
    out.uncertain = (m1.uncertain * m2.uncertain) / norm;
    return out;
}

double belief(const MassFunction& m, FrameSet set) {
    double sum = 0.0;
    for (unsigned s = 1; s <= 3; ++s) {
        const auto sub = static_cast<FrameSet>(s);
        if (intersect(sub, set) == sub) sum += m.mass(sub);  // sub is a subset of set
    }
    return sum;
}

double plausibility(const MassFunction& m, FrameSet set) {
    double sum = 0.0;
    for (unsigned s = 1; s <= 3; ++s) {
        const auto sub = static_cast<FrameSet>(s);
        if (intersect(sub, set) != FrameSet::Empty) sum += m.mass(sub);
    }
    return sum;
}

MassFunction fuse_mass(const FusionInput& in) {
    MassFunction acc = direct_bpa(in.direct_trust, in.gamma);
    for (const auto& rec : in.recommendations) {
        const double d = dissimilarity(in.direct_trust, rec.idt);
        acc = combine(acc, indirect_bpa(rec.idt, d, in.gamma));
    }
    return acc;
}

double fuse(const FusionInput& in, TrustScalar scalar) {
    const MassFunction m = fuse_mass(in);
    if (scalar == TrustScalar::Pignistic) return m.trusted + 0.5 * m.uncertain;
    return belief(m, FrameSet::Trusted);
}

std::uint64_t combination_count() { return g_combinations; }
void reset_combination_count() { g_combinations = 0; }

}  // namespace dstrust::dst
