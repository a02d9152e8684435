#pragma once

// Theorem checks run by the fuzz harness: Euler numbers summing to 12k, the
// bounds on h0 and h1, duality under the twist, and agreement with the
// cell-complex oracle.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/fuzz.hpp"
#include "ellsurf/oracle.hpp"
#include "ellsurf/parallel.hpp"
#include "ellsurf/transforms.hpp"

namespace ellsurf {

struct DualityCheck {
  std::vector<std::string> failures;
  RealTopologyReport original, twisted;
  bool ok() const { return failures.empty(); }
};

/// For a real-generic t and its twist t': h1' = 2 h0, h0' = h1 / 2,
/// h*' = h*, chi' = -chi, the real types swapped and the non-real fibers
/// unchanged.
inline DualityCheck verify_duality(const WeierstrassTriple& t) {
  DualityCheck out;
  auto fail = [&](const std::string& m) { out.failures.push_back(m); };
  WeierstrassTriple tw = twist(t);
  FiberClassification fx = classify_fibers(t), fy = classify_fibers(tw);
  out.original = betti(t, fx);
  out.twisted = betti(tw, fy);
  const auto &x = out.original, &y = out.twisted;
  if (y.h1 != 2 * x.h0) fail("h1 of the twist is not 2 h0");
  if (2 * y.h0 != x.h1) fail("h0 of the twist is not h1 / 2");
  if (y.h_star() != x.h_star()) fail("total Betti number changed under the twist");
  if (y.chi_top != -x.chi_top) fail("Euler characteristic not negated by the twist");

  if (fx.fibers.size() != fy.fibers.size()) {
    fail("number of fiber reports changed under the twist");
    return out;
  }
  for (std::size_t i = 0; i < fx.fibers.size(); ++i) {
    const auto &a = fx.fibers[i], &b = fy.fibers[i];
    if (a.is_real != b.is_real || !(a.kodaira == b.kodaira) || a.v_p != b.v_p || a.v_q != b.v_q ||
        a.v_delta != b.v_delta) {
      fail("fiber " + std::to_string(i) + " changed under the twist");
      continue;
    }
    if (a.is_real && !(real_type_of_nodal(tw, b.point()) == real_type_of_nodal(t, a.point()).flipped()))
      fail("real type at " + a.point().to_string() + " not swapped by the twist");
  }
  return out;
}

namespace fuzz {

struct TrialOutcome {
  std::uint64_t index = 0;
  std::optional<WeierstrassTriple> triple;
  int h0 = 0, h1 = 0;
  bool oracle_checked = false;
  std::vector<std::string> violations;
};

/// Every check on one triple. The oracle comparison is optional because it
/// dominates the cost.
inline TrialOutcome check_triple(const WeierstrassTriple& t, bool with_oracle) {
  TrialOutcome out;
  out.triple = t;
  auto& v = out.violations;
  try {
    FiberClassification fc = classify_fibers(t);
    if (fc.invariants.euler_sum != 12 * t.k())
      v.push_back("Euler numbers sum to " + std::to_string(fc.invariants.euler_sum) + ", not 12k = " +
                  std::to_string(12 * t.k()));
    RealTopologyReport r = betti(t, fc);
    out.h0 = r.h0;
    out.h1 = r.h1;
    for (const auto& b : r.bounds.violations()) v.push_back("bound violated: " + b);
    for (const auto& f : verify_duality(t).failures) v.push_back("duality: " + f);
    if (with_oracle) {
      out.oracle_checked = true;
      OracleVerdict ov = compare_with_oracle(t);
      if (!ov.agree) v.push_back("oracle disagrees:\n" + ov.report());
    }
  } catch (const std::logic_error& e) {
    // Internal consistency assertions (alternation, Euler characteristic,
    // boundary of a boundary) count as violations too.
    v.push_back(std::string("consistency check failed: ") + e.what());
  }
  return out;
}

struct FuzzOptions {
  int k = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  long height = 4;
  std::uint64_t oracle_every = 10;  // oracle on trials whose index is a multiple of this; 0 disables
};

struct FuzzSummary {
  FuzzOptions options;
  std::vector<TrialOutcome> outcomes;  // by trial index

  std::uint64_t oracle_checks() const {
    std::uint64_t n = 0;
    for (const auto& o : outcomes) n += o.oracle_checked;
    return n;
  }

  const TrialOutcome* first_violation() const {
    for (const auto& o : outcomes)
      if (!o.violations.empty()) return &o;
    return nullptr;
  }

  std::map<std::pair<int, int>, std::uint64_t> histogram() const {
    std::map<std::pair<int, int>, std::uint64_t> h;
    for (const auto& o : outcomes) ++h[{o.h0, o.h1}];
    return h;
  }

  std::string text() const {
    std::ostringstream os;
    const auto& o = options;
    std::uint64_t bad = 0;
    for (const auto& t : outcomes) bad += !t.violations.empty();
    os << "fuzz: k=" << o.k << " trials=" << o.trials << " seed=" << o.seed << " height=" << o.height << "\n";
    os << "checked: " << outcomes.size() << " triples, " << oracle_checks() << " against the oracle\n";
    os << "violations: " << bad << "\n";
    os << "(h0, h1) histogram:\n";
    for (const auto& [key, n] : histogram()) os << "  (" << key.first << ", " << key.second << "): " << n << "\n";
    return os.str();
  }
};

/// Runs trials [0, trials) on `threads` workers. The summary depends only on
/// the options.
inline FuzzSummary run(const FuzzOptions& options, unsigned threads) {
  if (options.k < 1) throw std::invalid_argument("fuzz: k must be positive");
  if (options.height < 1) throw std::invalid_argument("fuzz: height must be positive");
  FuzzSummary s{options, std::vector<TrialOutcome>(options.trials)};
  parallel_for(options.trials, threads, [&](std::size_t i) {
    WeierstrassTriple t = trial_triple(options.seed, i, options.k, options.height);
    bool with_oracle = options.oracle_every != 0 && i % options.oracle_every == 0;
    s.outcomes[i] = check_triple(t, with_oracle);
    s.outcomes[i].index = i;
  });
  return s;
}

}  // namespace fuzz

}  // namespace ellsurf
