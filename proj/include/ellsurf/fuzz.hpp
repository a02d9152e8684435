#pragma once

// Deterministic random triples. Every trial draws from its own generator
// seeded from (seed, trial index), so results do not depend on how trials
// are scheduled. Only raw 64-bit draws are used: the standard distributions
// are implementation-defined and would make output compiler-dependent.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ellsurf/real_topology.hpp"

namespace ellsurf::fuzz {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

/// Uniform integer in [lo, hi].
inline long uniform(Rng& rng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

inline BinForm dense_form(Rng& rng, int degree, long height) {
  std::vector<Rational> c;
  for (int i = 0; i <= degree; ++i) c.emplace_back(uniform(rng, -height, height));
  return BinForm(degree, std::move(c));
}

/// Dense random coefficients in [-height, height], resampled until valid.
inline WeierstrassTriple random_valid(Rng& rng, int k, long height) {
  for (;;) {
    try {
      return validate(k, dense_form(rng, 4 * k, height), dense_form(rng, 6 * k, height));
    } catch (const InvalidTriple&) {
    }
  }
}

/// (-3 g^2, 2 g^3 + eps h), whose discriminant is 27 eps h (eps h + 4 g^3).
/// At roots of h the node is I1- where g > 0; at roots of eps h + 4 g^3 it is
/// I1- where g < 0.
inline WeierstrassTriple nodal_family(int k, const BinForm& g, const BinForm& h, const Rational& eps) {
  return validate(k, Rational(-3) * g.pow(2), Rational(2) * g.pow(3) + eps * h);
}

namespace detail {

/// Product of `real` linear factors with distinct roots drawn from a grid of
/// half-integers in [-grid, grid], times positive definite quadratics up to
/// the requested degree.
inline BinForm grid_form(Rng& rng, int degree, int real, long grid) {
  if (real > 4 * grid + 1) throw std::invalid_argument("grid_form: grid too small for the requested roots");
  std::vector<Rational> roots;
  while (static_cast<int>(roots.size()) < real) {
    Rational r(uniform(rng, -2 * grid, 2 * grid), 2);
    r.canonicalize();
    bool fresh = true;
    for (const auto& x : roots) fresh = fresh && x != r;
    if (fresh) roots.push_back(r);
  }
  BinForm f = BinForm::monomial(0, 0);
  for (const auto& r : roots) f = f * BinForm::linear_root(r);
  for (int d = real; d + 2 <= degree; d += 2) {
    Rational s(uniform(rng, -2 * grid, 2 * grid), 2), t(uniform(rng, 1, 16), 4);
    s.canonicalize();
    t.canonicalize();
    // (u - s v)^2 + t v^2
    f = f * BinForm(2, {s * s + t, -2 * s, Rational(1)});
  }
  if (f.degree() < degree) f = f * BinForm::monomial(0, 1);  // odd leftover: a root at infinity
  return f;
}

}  // namespace detail

/// Random member of the nodal family with many real nodes: g and h split
/// over a grid of half-integers in [-grid, grid], eps = +-2^j. With
/// `split` every root of g and h is real.
inline WeierstrassTriple steered(Rng& rng, int k, long grid, bool split = false) {
  for (;;) {
    int g_real = split ? 2 * k : 2 * static_cast<int>(uniform(rng, 0, k));
    int h_real = split ? 6 * k : static_cast<int>(uniform(rng, 0, 6 * k));
    BinForm g = detail::grid_form(rng, 2 * k, g_real, grid);
    BinForm h = detail::grid_form(rng, 6 * k, h_real, grid);
    long j = uniform(rng, -6, 3);
    Rational eps = j >= 0 ? Rational(1L << j) : Rational(1) / Rational(1L << -j);
    if (uniform(rng, 0, 1)) eps = -eps;
    try {
      return nodal_family(k, g, h, eps);
    } catch (const InvalidTriple&) {
    }
  }
}

/// Real-generic triple by rejection sampling from one of the two generators.
inline WeierstrassTriple random_real_generic(Rng& rng, int k, long height, bool use_steered) {
  for (;;) {
    WeierstrassTriple t = use_steered ? steered(rng, k, 4 * k) : random_valid(rng, k, height);
    if (is_real_generic(t)) return t;
  }
}

/// Trial `index` of a fuzz run: dense on even indices, steered on odd ones.
inline WeierstrassTriple trial_triple(std::uint64_t seed, std::uint64_t index, int k, long height) {
  Rng rng = trial_rng(seed, index);
  return random_real_generic(rng, k, height, index % 2 == 1);
}

}  // namespace ellsurf::fuzz
