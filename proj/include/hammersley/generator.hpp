#pragma once

#include <functional>
#include <span>

#include "hammersley/engine.hpp"

namespace hammersley {

/// A bounded function of a configuration (sorted positions).
using Functional = std::function<double(std::span<const double>)>;

/// Gf(x) = int_0^T1 f(R_t x) dt + f(L x) / lambda - (1/lambda + T1) f(x),
/// where R_t pulls the nearest particle at or right of t onto t (or appends
/// t) and L deletes the leftmost particle. The integral is split at the
/// particle positions and each piece uses 16-point Gauss-Legendre.
double generator_apply(const Functional& f, const ParticleConfig& c, double lambda, double t1);

/// Adjoint with respect to the Poisson(lambda) measure on [0, T1]:
/// G*g(y) = int_0^T1 g(L_s y) ds + g(R y) / lambda - (1/lambda + T1) g(y),
/// where L_s pushes the nearest particle at or left of s onto s (or
/// prepends s) and R deletes the rightmost particle.
double adjoint_apply(const Functional& g, const ParticleConfig& c, double lambda, double t1);

/// Draw from the Poisson(lambda) configuration measure on [0, t1].
ParticleConfig sample_mu(double lambda, double t1, RandomStream& rng);
ParticleConfig sample_mu(double lambda, double t1, const UnitStream& stream);

/// 16-point Gauss-Legendre rule on [a, b].
double gauss_legendre16(const std::function<double(double)>& h, double a, double b);

}  // namespace hammersley
