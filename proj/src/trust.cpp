#include "dstrust/trust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dstrust::trust {

namespace {

void require_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

}  // namespace

void TrustConfig::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma outside (0,1)");
    if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha outside [0,1]");
}

std::optional<double> forwarding_probability(std::uint64_t sent, std::uint64_t overheard) {
    if (overheard > sent) throw std::invalid_argument("overheard exceeds sent");
    if (sent == 0) return std::nullopt;
    return static_cast<double>(overheard) / static_cast<double>(sent);
}

double binary_entropy(double p) {
    require_unit(p, "probability");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entropy_trust(double p_f) {
    require_unit(p_f, "forwarding probability");
    const double h = binary_entropy(p_f);
    return p_f >= 0.5 ? 1.0 - 0.5 * h : 0.5 * h;
}

double smooth(double raw, double previous, double alpha) {
    require_unit(raw, "raw trust");
    require_unit(previous, "previous trust");
    require_unit(alpha, "alpha");
    return std::clamp(alpha * raw + (1.0 - alpha) * previous, 0.0, 1.0);
}

double indirect_trust(double trust_in_recommender, double recommended_trust) {
    require_unit(trust_in_recommender, "trust in recommender");
    require_unit(recommended_trust, "recommended trust");
    return trust_in_recommender * recommended_trust;
}

std::optional<double> apply_period(TrustRecord& rec, const TrustConfig& cfg, double now) {
    const auto p_f = forwarding_probability(rec.packets_sent, rec.packets_overheard);
    rec.packets_sent = 0;
    rec.packets_overheard = 0;
    rec.last_update = now;
    if (!p_f) return std::nullopt;  // no traffic this period: carry trust forward
    const double raw = entropy_trust(*p_f);
    rec.smoothed_trust = smooth(raw, rec.smoothed_trust, cfg.alpha);
    return raw;
}

}  // namespace dstrust::trust
