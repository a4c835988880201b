#include "fvlab/signals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace fvlab {

SampledSignal::SampledSignal(double t_begin, double t_step, std::vector<double> values)
    : t0(t_begin), dt(t_step), samples(std::move(values)) {
    if (dt <= 0.0) throw std::invalid_argument("SampledSignal: dt must be positive");
    if (samples.size() < 2) throw std::invalid_argument("SampledSignal: need >= 2 samples");
}

double SampledSignal::operator()(double t) const {
    double s = (t - t0) / dt;
    int n = static_cast<int>(samples.size());
    if (s <= 0.0) return samples.front();
    if (s >= n - 1) return samples.back();
    int i = static_cast<int>(s);
    double w = s - i;
    return (1.0 - w) * samples[i] + w * samples[i + 1];
}

SampledSignal SampledSignal::derivative() const {
    int n = static_cast<int>(samples.size());
    std::vector<double> d(samples.size());
    d[0] = (samples[1] - samples[0]) / dt;
    for (int i = 1; i < n - 1; ++i) d[i] = (samples[i + 1] - samples[i - 1]) / (2.0 * dt);
    d[n - 1] = (samples[n - 1] - samples[n - 2]) / dt;
    return SampledSignal(t0, dt, std::move(d));
}

BoundarySignals BoundarySignals::constants(double c0, double c1) {
    BoundarySignals bc;
    bc.g0 = [c0](double) { return c0; };
    bc.g1 = [c1](double) { return c1; };
    auto zero = [](double) { return 0.0; };
    bc.g0_dot = zero;
    bc.g1_dot = zero;
    bc.h0 = zero;
    bc.h1 = zero;
    return bc;
}

BoundarySignals BoundarySignals::from_functions(std::function<double(double)> g0,
                                                std::function<double(double)> g1,
                                                std::function<double(double)> g0_dot,
                                                std::function<double(double)> g1_dot,
                                                std::function<double(double)> h0,
                                                std::function<double(double)> h1) {
    BoundarySignals bc;
    bc.g0 = std::move(g0);
    bc.g1 = std::move(g1);
    bc.g0_dot = std::move(g0_dot);
    bc.g1_dot = std::move(g1_dot);
    bc.h0 = std::move(h0);
    bc.h1 = std::move(h1);
    return bc;
}

BoundarySignals BoundarySignals::from_samples(double t0, double dt,
                                              std::vector<double> g0_samples,
                                              std::vector<double> g1_samples,
                                              std::vector<double> h0_samples,
                                              std::vector<double> h1_samples) {
    SampledSignal g0(t0, dt, std::move(g0_samples));
    SampledSignal g1(t0, dt, std::move(g1_samples));
    BoundarySignals bc;
    bc.g0_dot = g0.derivative();
    bc.g1_dot = g1.derivative();
    bc.g0 = std::move(g0);
    bc.g1 = std::move(g1);
    auto zero = [](double) { return 0.0; };
    bc.h0 = h0_samples.empty() ? std::function<double(double)>(zero)
                               : SampledSignal(t0, dt, std::move(h0_samples));
    bc.h1 = h1_samples.empty() ? std::function<double(double)>(zero)
                               : SampledSignal(t0, dt, std::move(h1_samples));
    return bc;
}

double BoundarySignals::sup_g(double t_end, int samples) const {
    double m = 0.0;
    for (int i = 0; i <= samples; ++i) {
        double t = t_end * i / samples;
        m = std::max({m, std::fabs(g0(t)), std::fabs(g1(t))});
    }
    return m;
}

std::string SourceSpec::validate(double L, double T, int samples) const {
    if (is_zero()) return "";
    char buf[160];
    for (int it = 0; it <= samples; ++it) {
        double t = T * it / samples;
        for (int ix = 1; ix <= samples; ++ix) {
            double x = static_cast<double>(ix) / (samples + 1);
            for (int iu = 0; iu <= samples; ++iu) {
                double u = -L + 2.0 * L * iu / samples;
                double su = S(t, x, u);
                if (std::fabs(su) > sup_bound + 1e-12 * (1.0 + sup_bound)) {
                    std::snprintf(buf, sizeof(buf),
                                  "|S(%g,%g,%g)| = %g exceeds sup_bound %g", t, x, u,
                                  std::fabs(su), sup_bound);
                    return buf;
                }
                double v = -L + 2.0 * L * ((iu + samples / 2) % (samples + 1)) / samples;
                double dv = std::fabs(su - S(t, x, v));
                if (dv > lipschitz_C * std::fabs(u - v) + 1e-12 * (1.0 + lipschitz_C)) {
                    std::snprintf(buf, sizeof(buf),
                                  "|S(.,.,%g)-S(.,.,%g)| = %g exceeds C|u-v| with C = %g", u,
                                  v, dv, lipschitz_C);
                    return buf;
                }
            }
        }
    }
    return "";
}

SourceSpec SourceSpec::zero() { return SourceSpec{}; }

SourceSpec SourceSpec::constant(double s) {
    SourceSpec src;
    src.S = [s](double, double, double) { return s; };
    src.lipschitz_C = 0.0;
    src.sup_bound = std::fabs(s);
    return src;
}

} // namespace fvlab
