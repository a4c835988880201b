#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fvlab {

/// Piecewise-linear interpolant of uniformly spaced samples on [0, T];
/// derivative() synthesizes centered differences on the sample grid.
struct SampledSignal {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> samples;

    SampledSignal() = default;
    SampledSignal(double t_begin, double t_step, std::vector<double> values);

    double operator()(double t) const;
    SampledSignal derivative() const;
};

/// Dirichlet data g0, g1 at x=0,1, their time derivatives, and the
/// slope data h0, h1.
struct BoundarySignals {
    std::function<double(double)> g0, g1;
    std::function<double(double)> g0_dot, g1_dot;
    std::function<double(double)> h0, h1;

    static BoundarySignals constants(double c0, double c1);
    static BoundarySignals from_functions(std::function<double(double)> g0,
                                          std::function<double(double)> g1,
                                          std::function<double(double)> g0_dot,
                                          std::function<double(double)> g1_dot,
                                          std::function<double(double)> h0,
                                          std::function<double(double)> h1);
    // Derivatives synthesized by centered differences on the sample grid.
    static BoundarySignals from_samples(double t0, double dt,
                                        std::vector<double> g0_samples,
                                        std::vector<double> g1_samples,
                                        std::vector<double> h0_samples = {},
                                        std::vector<double> h1_samples = {});

    double sup_g(double t_end, int samples = 256) const;
};

/// Source term S(t,x,u) with its Lipschitz constant in u and sup bound.
struct SourceSpec {
    std::function<double(double, double, double)> S;
    double lipschitz_C = 0.0;
    double sup_bound = 0.0;

    static SourceSpec zero();
    static SourceSpec constant(double s);

    bool is_zero() const { return !S; }
    double operator()(double t, double x, double u) const { return S ? S(t, x, u) : 0.0; }

    /// Sample (t,x,u,v) triples over [0,T] x (0,1) x [-L,L] and verify the
    /// declared Lipschitz constant and sup bound. Returns the first offending
    /// message, or empty when the declaration holds.
    std::string validate(double L, double T, int samples = 16) const;
};

} // namespace fvlab
