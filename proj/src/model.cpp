#include "cntrx/model.hpp"

namespace cntrx {

CntParams validate_params(const CntParams& p) {
    if (!(p.mass > 0.0))
        throw std::invalid_argument("mass must be positive");
    if (!(p.elasticity > 0.0))
        throw std::invalid_argument("elasticity must be positive");
    if (!(p.viscosity >= 0.0))
        throw std::invalid_argument("viscosity must be nonnegative");
    if (!std::isfinite(p.charge) || !std::isfinite(p.current_offset) ||
        !std::isfinite(p.current_gain))
        throw std::invalid_argument("charge and current constants must be finite");
    return p;
}

WaveSpec validate_wave(const WaveSpec& w) {
    if (!(w.angular_frequency > 0.0))
        throw std::invalid_argument("angular_frequency must be positive");
    if (!std::isfinite(w.amplitude) || !std::isfinite(w.phase))
        throw std::invalid_argument("wave amplitude and phase must be finite");
    return w;
}

SymbolDuration symbol_duration(double omega_in, int s) {
    if (!(omega_in > 0.0))
        throw std::invalid_argument("angular frequency must be positive");
    if (s < 1)
        throw std::invalid_argument("period count must be at least 1");
    SymbolDuration d;
    d.period_count = s;
    d.base_frequency = omega_in;
    d.duration = (two_pi / omega_in) * static_cast<double>(s);
    return d;
}

}  // namespace cntrx
