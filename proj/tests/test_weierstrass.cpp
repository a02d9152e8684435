#include <gtest/gtest.h>

#include <map>
#include <random>

#include "ellsurf/weierstrass.hpp"
#include "fixtures.hpp"

using namespace ellsurf;
using namespace ellsurf::testing;

namespace {

std::map<std::string, int> type_counts(const FiberClassification& fc) {
  std::map<std::string, int> out;
  for (const auto& f : fc.fibers) out[f.kodaira.name()] += f.multiplicity();
  return out;
}

/// Random valid triple with integer coefficients in [-height, height].
WeierstrassTriple random_triple(std::mt19937_64& rng, int k, long height) {
  for (;;) {
    try {
      return validate(k, random_form(rng, 4 * k, height), random_form(rng, 6 * k, height));
    } catch (const InvalidTriple&) {
    }
  }
}

}  // namespace

TEST(Validate, Examples) {
  // p = u^2 v^2, q = u^3 v^3: Δ = 31 u^6 v^6, min(6, 6) < 12 at 0 and infinity.
  EXPECT_NO_THROW(triple(1, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0}));

  try {
    triple(1, {0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 1});
    FAIL() << "u^4, u^6 must be rejected";
  } catch (const InvalidTriple& e) {
    EXPECT_EQ(e.kind(), InvalidTripleKind::NonMinimal);
    ASSERT_TRUE(e.witness_point().has_value());
    EXPECT_TRUE(e.witness_point()->is_finite());
    EXPECT_EQ(e.witness_point()->value(), 0);
  }

  try {
    triple(1, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0});
    FAIL();
  } catch (const InvalidTriple& e) {
    EXPECT_EQ(e.kind(), InvalidTripleKind::DeltaIdenticallyZero);
  }

  // v^4, v^6 is non-minimal at infinity.
  try {
    triple(1, {1, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0});
    FAIL();
  } catch (const InvalidTriple& e) {
    EXPECT_EQ(e.kind(), InvalidTripleKind::NonMinimal);
    EXPECT_TRUE(e.witness_point()->is_infinity());
  }

  EXPECT_THROW(validate(1, form(3, {1, 0, 0, 1}), form(6, {1, 0, 0, 0, 0, 0, 1})), InvalidTriple);
  EXPECT_THROW(validate(0, BinForm(0), BinForm(0)), InvalidTriple);
}

TEST(Validate, NonRationalWitnessIsAFactor) {
  // p = (u^2 - 2)^4 (k = 2), q = (u^2 - 2)^6 : common factor u^2 - 2 with no rational root.
  BinForm base = form(2, {-2, 0, 1});
  try {
    validate(2, base.pow(4), base.pow(6));
    FAIL();
  } catch (const InvalidTriple& e) {
    EXPECT_EQ(e.kind(), InvalidTripleKind::NonMinimal);
    EXPECT_FALSE(e.witness_point().has_value());
    ASSERT_TRUE(e.witness_factor().has_value());
    EXPECT_EQ(*e.witness_factor(), base);
  }
}

TEST(Validate, MinimalityMatchesHandcraftedFamilies) {
  // (u^a p0, u^b q0) with p0(0), q0(0) != 0 is non-minimal at 0 iff a >= 4 and b >= 6.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    int k = 1 + trial % 2;
    int a = static_cast<int>(rng() % (4 * k + 1)), b = static_cast<int>(rng() % (6 * k + 1));
    BinForm p0 = random_form(rng, 4 * k - a, 4), q0 = random_form(rng, 6 * k - b, 4);
    if (p0.coeff(0) == 0 || q0.coeff(0) == 0) continue;
    BinForm p = mul(BinForm::monomial(a, 0), p0), q = mul(BinForm::monomial(b, 0), q0);
    bool expect_bad_at_zero = a >= 4 && b >= 6;
    try {
      validate(k, p, q);
      EXPECT_FALSE(expect_bad_at_zero);
    } catch (const InvalidTriple& e) {
      if (e.kind() == InvalidTripleKind::NonMinimal && e.witness_point() && e.witness_point()->is_finite() &&
          e.witness_point()->value() == 0) {
        EXPECT_TRUE(expect_bad_at_zero);
      } else {
        EXPECT_FALSE(expect_bad_at_zero) << e.what();
      }
    }
  }
}

TEST(Discriminant, Examples) {
  // (0, v^6) fails minimality at infinity, so only the raw form identity is checked.
  EXPECT_EQ(discriminant(form(4, {0, 0, 0, 0, 0}), form(6, {1, 0, 0, 0, 0, 0, 0})), BinForm::monomial(0, 12, Rational(27)));
  EXPECT_THROW(triple(1, {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0}), InvalidTriple);
  EXPECT_EQ(discriminant(triple(1, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0})), BinForm::monomial(6, 6, Rational(31)));
  BinForm h = w1_h();
  BinForm expected = Rational(27) * mul(h, add(h, BinForm::monomial(0, 6, Rational(4))));
  EXPECT_EQ(discriminant(w1()), expected);
  EXPECT_EQ(discriminant(w1()).degree(), 12);
}

TEST(JInvariant, Examples) {
  auto j0 = j_invariant(triple(1, {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 1}));
  EXPECT_TRUE(j0.pq_ratio.numerator.is_zero());
  EXPECT_FALSE(j0.pq_ratio.denominator.is_zero());

  auto j1728 = j_invariant(triple(1, {1, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0}));
  EXPECT_TRUE(j1728.pq_denominator_zero);
  EXPECT_EQ(j1728.standard.numerator, BinForm::monomial(0, 0, Rational(1728)));
  EXPECT_EQ(j1728.standard.denominator, BinForm::monomial(0, 0, Rational(1)));

  auto jc = j_invariant(triple(1, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0}));
  EXPECT_EQ(jc.pq_ratio.numerator, BinForm::monomial(0, 0, Rational(4)));
  EXPECT_EQ(jc.pq_ratio.denominator, BinForm::monomial(0, 0, Rational(27)));
}

TEST(Rescale, Examples) {
  auto t = w1();
  EXPECT_EQ(rescale(t, Rational(1)), t);
  EXPECT_EQ(rescale(t, Rational(-1)), t);
  auto s = rescale(triple(1, {1, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 1}), Rational(2));
  EXPECT_EQ(s.p(), form(4, {16, 0, 0, 0, 0}));
  EXPECT_EQ(s.q(), form(6, {64, 0, 0, 0, 0, 0, 64}));
  EXPECT_THROW(rescale(t, Rational(0)), std::invalid_argument);
}

TEST(Normalize, Examples) {
  // (16 v^4, 64 v^6 + 64 u^6) -> (v^4, v^6 + u^6): μ = 1/4.
  auto n = normalize(triple(1, {16, 0, 0, 0, 0}, {64, 0, 0, 0, 0, 0, 64}));
  EXPECT_EQ(n.p(), form(4, {1, 0, 0, 0, 0}));
  EXPECT_EQ(n.q(), form(6, {1, 0, 0, 0, 0, 0, 1}));

  // (v^4/2, v^6/2 + u^6/2): smallest μ = 2 gives (2 v^4, 4 v^6 + 4 u^6).
  Rational half(1, 2);
  auto t = validate(1, form(4, {half, 0, 0, 0, 0}), form(6, {half, 0, 0, 0, 0, 0, half}));
  auto m = normalize(t);
  EXPECT_EQ(m.p(), form(4, {2, 0, 0, 0, 0}));
  EXPECT_EQ(m.q(), form(6, {4, 0, 0, 0, 0, 0, 4}));
  EXPECT_EQ(normalize(m), m);

  // The twist sign is never absorbed.
  auto w = w1();
  auto tw = validate(1, w.p(), -w.q());
  EXPECT_NE(normalize(tw), normalize(w));
}

TEST(Normalize, IdempotentAndOrbitCanonical) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    auto t = random_triple(rng, 1 + trial % 2, 6);
    auto n = normalize(t);
    EXPECT_EQ(normalize(n), n);
    Rational lambda(static_cast<long>(rng() % 5) + 1, static_cast<long>(rng() % 4) + 1);
    lambda.canonicalize();
    EXPECT_EQ(normalize(rescale(t, lambda)), n);
    for (const auto& c : n.p().coeffs()) EXPECT_EQ(c.get_den(), 1);
    for (const auto& c : n.q().coeffs()) EXPECT_EQ(c.get_den(), 1);
  }
}

TEST(Kodaira, ValuationTable) {
  EXPECT_EQ(kodaira_from_valuations(0, 0, 1).name(), "I1");
  EXPECT_EQ(kodaira_from_valuations(0, 0, 7).name(), "I7");
  EXPECT_EQ(kodaira_from_valuations(1, 1, 2).name(), "II");
  EXPECT_EQ(kodaira_from_valuations(kInfiniteValuation, 1, 2).name(), "II");
  EXPECT_EQ(kodaira_from_valuations(1, 2, 3).name(), "III");
  EXPECT_EQ(kodaira_from_valuations(1, kInfiniteValuation, 3).name(), "III");
  EXPECT_EQ(kodaira_from_valuations(2, 2, 4).name(), "IV");
  EXPECT_EQ(kodaira_from_valuations(2, 3, 6).name(), "I0*");
  EXPECT_EQ(kodaira_from_valuations(2, 3, 9).name(), "I3*");
  EXPECT_EQ(kodaira_from_valuations(2, 5, 6).name(), "I0*");
  EXPECT_EQ(kodaira_from_valuations(4, 3, 6).name(), "I0*");
  EXPECT_EQ(kodaira_from_valuations(3, 4, 8).name(), "IV*");
  EXPECT_EQ(kodaira_from_valuations(3, 5, 9).name(), "III*");
  EXPECT_EQ(kodaira_from_valuations(4, 5, 10).name(), "II*");
  EXPECT_THROW(kodaira_from_valuations(1, 1, 3), std::logic_error);
  EXPECT_THROW(kodaira_from_valuations(4, 6, 12), std::logic_error);
  for (auto name : {"I1", "I12", "II", "III", "IV", "I0*", "I4*", "IV*", "III*", "II*"})
    EXPECT_EQ(KodairaType::parse(name).name(), name);
  EXPECT_THROW(KodairaType::parse("I0"), std::invalid_argument);
}

TEST(ClassifyFibers, TwoI0StarFibers) {
  auto fc = classify_fibers(triple(1, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0}));
  ASSERT_EQ(fc.fibers.size(), 2u);
  EXPECT_EQ(fc.fibers[0].point().value(), 0);
  EXPECT_TRUE(fc.fibers[1].point().is_infinity());
  for (const auto& f : fc.fibers) {
    EXPECT_EQ(f.v_p, 2);
    EXPECT_EQ(f.v_q, 3);
    EXPECT_EQ(f.v_delta, 6);
    EXPECT_EQ(f.kodaira.name(), "I0*");
  }
  EXPECT_EQ(fc.invariants.euler_sum, 12);
}

TEST(ClassifyFibers, IIStarAtInfinity) {
  // p = -3v^4, q = u v^5: Δ = 27 v^10 (u - 2v)(u + 2v)
  auto fc = classify_fibers(triple(1, {-3, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}));
  ASSERT_EQ(fc.fibers.size(), 3u);
  EXPECT_EQ(fc.fibers[0].point().value(), -2);
  EXPECT_EQ(fc.fibers[0].kodaira.name(), "I1");
  EXPECT_EQ(fc.fibers[1].point().value(), 2);
  EXPECT_TRUE(fc.fibers[2].point().is_infinity());
  EXPECT_EQ(fc.fibers[2].v_p, 4);
  EXPECT_EQ(fc.fibers[2].v_q, 5);
  EXPECT_EQ(fc.fibers[2].v_delta, 10);
  EXPECT_EQ(fc.fibers[2].kodaira.name(), "II*");
  EXPECT_EQ(fc.invariants.euler_sum, 12);
}

TEST(ClassifyFibers, ConjugateCuspidalFibers) {
  // p = 0, q = u^6 + v^6: Δ = 27 (u^6 + v^6)^2, three conjugate pairs of type II.
  auto fc = classify_fibers(triple(1, {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 1}));
  ASSERT_EQ(fc.fibers.size(), 1u);
  const auto& f = fc.fibers[0];
  EXPECT_FALSE(f.is_real);
  EXPECT_EQ(std::get<ConjugatePairs>(f.location).pairs, 3);
  EXPECT_EQ(f.v_p, kInfiniteValuation);
  EXPECT_EQ(f.v_q, 1);
  EXPECT_EQ(f.v_delta, 2);
  EXPECT_EQ(f.kodaira.name(), "II");
  EXPECT_TRUE(fc.real_fibers().empty());
  EXPECT_EQ(fc.invariants.euler_sum, 12);
}

TEST(ClassifyFibers, W1HasTwelveRealNodes) {
  auto fc = classify_fibers(w1());
  ASSERT_EQ(fc.fibers.size(), 12u);
  for (const auto& f : fc.fibers) {
    EXPECT_TRUE(f.is_real);
    EXPECT_EQ(f.kodaira.name(), "I1");
  }
  EXPECT_EQ(fc.invariants.chi_top, 12);
  EXPECT_EQ(fc.invariants.h11, 10);
  EXPECT_EQ(fc.invariants.b2, 10);
  // sorted in circle order
  for (std::size_t i = 0; i + 1 < fc.fibers.size(); ++i)
    EXPECT_EQ(compare(fc.fibers[i].point(), fc.fibers[i + 1].point()), -1);
}

TEST(ClassifyFibers, MixedTypesAndInfinity) {
  // k = 2, built from factors with known valuations at 0, 1 and infinity.
  BinForm u = BinForm::monomial(1, 0), v = BinForm::monomial(0, 1), umv = form(1, {-1, 1});
  BinForm p = mul(mul(u.pow(2), v.pow(3)), mul(umv, form(2, {1, 1, 1})));  // v_0 = 2, v_inf = 3, v_1 = 1
  BinForm q = mul(mul(u.pow(4), v.pow(4)), form(4, {2, 0, 1, 0, 3}));         // v_0 = 4, v_inf = 4
  auto t = validate(2, p, q);
  auto fc = classify_fibers(t);
  EXPECT_EQ(fc.invariants.euler_sum, 24);
  std::map<std::string, std::string> at;
  for (const auto& f : fc.real_fibers())
    if (f.point().is_finite() || f.point().is_infinity()) at[f.point().to_string()] = f.kodaira.name();
  EXPECT_EQ(at["0"], "I0*");   // (2, 4, 6)
  EXPECT_EQ(at["inf"], "IV*");  // (3, 4, 8)
}

// Σe = 12k on random valid triples (dense and sparse coefficients, k = 1..3).
TEST(WeierstrassProperties, NoetherIdentityOnRandomTriples) {
  std::mt19937_64 rng(31337);
  int n = 0;
  for (int trial = 0; trial < 150; ++trial) {
    int k = 1 + trial % 3;
    auto t = random_triple(rng, k, 1 + trial % 5);
    auto fc = classify_fibers(t);
    EXPECT_EQ(fc.invariants.euler_sum, 12 * k);
    int vsum = 0;
    for (const auto& f : fc.fibers) vsum += f.v_delta * f.multiplicity();
    EXPECT_EQ(vsum, 12 * k);
    EXPECT_EQ(discriminant(t).degree(), 12 * k);
    ++n;
  }
  EXPECT_EQ(n, 150);
}

TEST(WeierstrassProperties, FiberDataIsRescaleInvariant) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto t = random_triple(rng, 1 + trial % 2, 3);
    Rational lambda(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
    if (lambda == 0) lambda = 3;
    auto a = classify_fibers(t), b = classify_fibers(rescale(t, lambda));
    ASSERT_EQ(a.fibers.size(), b.fibers.size());
    for (std::size_t i = 0; i < a.fibers.size(); ++i) {
      EXPECT_EQ(a.fibers[i].kodaira, b.fibers[i].kodaira);
      EXPECT_EQ(a.fibers[i].v_delta, b.fibers[i].v_delta);
      EXPECT_EQ(a.fibers[i].multiplicity(), b.fibers[i].multiplicity());
      if (a.fibers[i].is_real) { EXPECT_TRUE(same_point(a.fibers[i].point(), b.fibers[i].point())); }
    }
  }
}

TEST(WeierstrassProperties, DegenerateFamiliesStillSumToTwelveK) {
  // Products of low-degree factors give repeated roots and every Kodaira type.
  std::mt19937_64 rng(404);
  std::map<std::string, int> seen;
  for (int trial = 0; trial < 200; ++trial) {
    int k = 1 + trial % 2;
    auto pick = [&](int deg) {
      BinForm out = BinForm::monomial(0, 0);
      while (out.degree() < deg) {
        int step = std::min<int>(deg - out.degree(), 1 + static_cast<int>(rng() % 2));
        BinForm f = random_form(rng, step, 2);
        if (f.is_zero()) continue;
        int rep = 1 + static_cast<int>(rng() % 3);
        while (out.degree() + rep * step > deg) --rep;
        out = mul(out, f.pow(static_cast<unsigned>(rep)));
      }
      return out;
    };
    BinForm p = (rng() % 5 == 0) ? BinForm(4 * k) : pick(4 * k);
    BinForm q = (rng() % 5 == 0) ? BinForm(6 * k) : pick(6 * k);
    try {
      auto t = validate(k, p, q);
      auto fc = classify_fibers(t);
      EXPECT_EQ(fc.invariants.euler_sum, 12 * k);
      for (const auto& [name, c] : type_counts(fc)) seen[name] += c;
    } catch (const InvalidTriple&) {
    }
  }
  EXPECT_GE(seen.size(), 5u);
}
