// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Thresholds are fixed here; nothing is skipped.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ellsurf/checks.hpp"
#include "ellsurf/io.hpp"

using namespace ellsurf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
  lines.push_back({id, name, pass, detail});
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
}

WeierstrassTriple w1() {
  auto z = [](int n) { return std::vector<Rational>(static_cast<std::size_t>(n)); };
  auto p = z(5), q = z(7);
  p[0] = -3;
  q[0] = -34;
  q[2] = 49;
  q[4] = -14;
  q[6] = 1;
  return validate(1, BinForm(4, p), BinForm(6, q));
}

bool has_prefix(const std::vector<std::string>& vs, const std::string& prefix) {
  for (const auto& v : vs)
    if (v.rfind(prefix, 0) == 0 || v.rfind("consistency", 0) == 0) return true;
  return false;
}

// Counts over a fuzz corpus: triples checked and failures of one kind.
struct Tally {
  std::uint64_t checked = 0, failed = 0;
};

Tally tally(const std::vector<fuzz::FuzzSummary>& runs, const std::string& prefix, bool oracle_only = false) {
  Tally t;
  for (const auto& s : runs)
    for (const auto& o : s.outcomes) {
      if (oracle_only && !o.oracle_checked) continue;
      ++t.checked;
      t.failed += has_prefix(o.violations, prefix);
    }
  return t;
}

std::string first_failure(const std::vector<fuzz::FuzzSummary>& runs, const std::string& prefix) {
  for (const auto& s : runs)
    for (const auto& o : s.outcomes)
      if (has_prefix(o.violations, prefix)) {
        std::ostringstream os;
        os << "\n  k=" << s.options.k << " trial " << o.index << ":";
        for (const auto& v : o.violations) os << " " << v << ";";
        os << "\n" << dump(to_json(*o.triple));
        return os.str();
      }
  return {};
}

}  // namespace

int main() {
  unsigned threads = worker_count();
  auto suite_start = Clock::now();

  // 1. W1 through the whole pipeline and the oracle.
  {
    auto t0 = Clock::now();
    WeierstrassTriple t = w1();
    ReportDocument r = build_report(t);
    OracleVerdict ov = compare_with_oracle(t);
    double secs = seconds_since(t0);
    int nodal = 0, plus = 0, minus = 0;
    for (std::size_t i = 0; i < r.fibers.fibers.size(); ++i) {
      const auto& f = r.fibers.fibers[i];
      if (!f.is_real || f.v_delta != 1) continue;
      ++nodal;
      plus += r.real_types[i]->kind == RealFiberType::Kind::I1Plus;
      minus += r.real_types[i]->kind == RealFiberType::Kind::I1Minus;
    }
    bool topo = r.topology && r.topology->h0 == 1 && r.topology->h1 == 2 && r.topology->chi_top == 0 &&
                r.topology->components.size() == 1 && r.topology->components[0].name() == "V2";
    bool pass = nodal == 12 && plus == 6 && minus == 6 && r.fibers.fibers.size() == 12 && topo && ov.agree && secs < 5;
    std::ostringstream d;
    d << nodal << " real nodal fibers (" << plus << " I1+, " << minus << " I1-), ";
    if (r.topology)
      d << "h0=" << r.topology->h0 << " h1=" << r.topology->h1 << " chi=" << r.topology->chi_top << " type "
        << (r.topology->components.empty() ? "?" : r.topology->components[0].name());
    d << ", oracle " << (ov.agree ? "agrees" : "disagrees") << ", " << secs << " s";
    record(1, "W1 fixture", pass, d.str());
  }

  // Fuzz corpus shared by criteria 2, 3, 4 and 6.
  auto fuzz_start = Clock::now();
  std::vector<fuzz::FuzzSummary> runs;
  runs.push_back(fuzz::run({1, 300, 2024, 4, 5}, threads));
  runs.push_back(fuzz::run({2, 150, 2024, 4, 10}, threads));
  runs.push_back(fuzz::run({3, 50, 2024, 4, 0}, threads));
  double fuzz_secs = seconds_since(fuzz_start);

  // Searches for l = 1..5 at k = 1, shared by criteria 6, 7 and 8.
  auto search_start = Clock::now();
  std::vector<std::optional<SearchResult>> found(6);
  std::string search_errors;
  for (int l = 1; l <= 5; ++l) {
    try {
      found[static_cast<std::size_t>(l)] = search_extremal(1, l, SearchBudget{}, threads);
    } catch (const std::exception& e) {
      search_errors += "\n  l=" + std::to_string(l) + ": " + e.what();
    }
  }
  double search_secs = seconds_since(search_start);

  {
    Tally t = tally(runs, "Euler");
    record(2, "Noether identity", t.checked >= 500 && t.failed == 0,
           std::to_string(t.checked) + " triples over k=1,2,3, " + std::to_string(t.failed) + " failures" +
               first_failure(runs, "Euler"));
  }
  {
    Tally t = tally(runs, "duality");
    record(3, "twist duality", t.checked >= 100 && t.failed == 0,
           std::to_string(t.checked) + " real-generic triples, " + std::to_string(t.failed) + " failures" +
               first_failure(runs, "duality"));
  }

  // 4. Bounds over the full corpus, including search outputs and twists.
  {
    Tally t = tally(runs, "bound");
    std::uint64_t extra = 0, extra_failed = 0;
    for (const auto& f : found)
      if (f) {
        for (const auto& r : {f->topology, betti(twist(f->triple))}) {
          ++extra;
          extra_failed += !r.bounds.ok();
        }
      }
    record(4, "bounds", t.failed == 0 && extra_failed == 0,
           std::to_string(t.checked + extra) + " instances (h0 <= 5k, h1 <= 10k, h1 even, orientable iff k even), " +
               std::to_string(t.failed + extra_failed) + " violations" + first_failure(runs, "bound"));
  }

  // 5. I0* transformation on fuzzed (triple, a, b).
  {
    std::uint64_t checked = 0, failed = 0, flips = 0;
    std::string first;
    for (std::uint64_t i = 0; checked < 30; ++i) {
      int k = 1 + static_cast<int>(i % 2);
      WeierstrassTriple t = fuzz::trial_triple(505, i, k, 5);
      fuzz::Rng rng = fuzz::trial_rng(506, i);
      Rational a(fuzz::uniform(rng, -12, 12), fuzz::uniform(rng, 1, 4));
      Rational b(fuzz::uniform(rng, -12, 12), fuzz::uniform(rng, 1, 4));
      a.canonicalize();
      b.canonicalize();
      try {
        WeierstrassTriple y = i0star_transform(t, {a, b});
        I0StarCheck c = verify_i0star(t, {a, b}, y);
        ++checked;
        flips += static_cast<std::uint64_t>(c.flipped);
        if (!c.ok()) {
          ++failed;
          if (first.empty()) first = "\n  " + c.failures.front() + "\n" + dump(to_json(t));
        }
      } catch (const InvalidI0StarParams&) {
      }
    }
    record(5, "I0* transformation", checked >= 20 && failed == 0,
           std::to_string(checked) + " instances, " + std::to_string(flips) + " type flips inside (a, b), " +
               std::to_string(failed) + " failures" + first);
  }

  // 6. Oracle equivalence: the fuzz subsample plus W1, its twist, every
  // search output and its twist.
  {
    auto t0 = Clock::now();
    std::vector<WeierstrassTriple> extra{w1(), twist(w1())};
    for (const auto& f : found)
      if (f) {
        extra.push_back(f->triple);
        extra.push_back(twist(f->triple));
      }
    std::uint64_t checked = 0, failed = 0;
    std::string first;
    for (const auto& t : extra) {
      OracleVerdict v = compare_with_oracle(t);
      ++checked;
      if (!v.agree) {
        ++failed;
        if (first.empty()) first = "\n" + v.report();
      }
    }
    Tally fz = tally(runs, "oracle", true);
    checked += fz.checked;
    failed += fz.failed;
    if (first.empty()) first = first_failure(runs, "oracle");
    double secs = seconds_since(t0) + fuzz_secs + search_secs;
    record(6, "oracle equivalence", checked >= 50 && failed == 0 && secs < 600 && search_errors.empty(),
           std::to_string(checked) + " instances with k in {1, 2} (W1, its twist, " + std::to_string(fz.checked) +
               " fuzzed, search outputs and twists), " + std::to_string(failed) + " disagreements, " +
               std::to_string(secs) + " s" + first);
  }

  // 7. Sharpness at k = 1.
  {
    const auto& f = found[5];
    bool pass = f && f->topology.h0 == 5 && f->oracle.agree && search_secs < 600;
    std::string d;
    if (f) {
      RealTopologyReport tw = betti(twist(f->triple));
      OracleVerdict tv = compare_with_oracle(twist(f->triple));
      pass = pass && tw.h1 == 10 && tv.agree;
      d = "h0=5 at candidate " + std::to_string(f->candidate) + ", twist h1=" + std::to_string(tw.h1) +
          ", both oracle-verified: " + to_json(f->triple).dump();
    } else {
      d = "no triple found" + search_errors;
    }
    record(7, "sharpness", pass, d);
  }

  // 8. Every l in 1..5 realized at k = 1.
  {
    bool pass = true;
    std::string d;
    for (int l = 1; l <= 5; ++l) {
      const auto& f = found[static_cast<std::size_t>(l)];
      bool ok = f && f->topology.h0 == l && f->oracle.agree;
      pass = pass && ok;
      d += " l=" + std::to_string(l) + (ok ? " (candidate " + std::to_string(f->candidate) + ")" : " missing");
    }
    record(8, "components 1..5 at k=1", pass, d.substr(1) + search_errors);
  }

  // 9. Determinism: reports, fuzz summaries and searches repeated, the
  // repeats on a different worker count.
  {
    std::vector<std::string> diffs;
    auto same = [&](const std::string& what, const std::string& a, const std::string& b) {
      if (a != b) diffs.push_back(what);
    };
    for (const auto& t : {w1(), twist(w1())}) {
      same("json report", dump(to_json(build_report(t))), dump(to_json(build_report(t))));
      same("text report", text_report(build_report(t)), text_report(build_report(t)));
    }
    same("fuzz summary", runs[0].text(), fuzz::run(runs[0].options, threads == 1 ? 3 : 1).text());
    for (int l : {2, 5}) {
      if (!found[static_cast<std::size_t>(l)]) continue;
      SearchResult again = search_extremal(1, l, SearchBudget{}, threads == 1 ? 2 : 1);
      same("search l=" + std::to_string(l), dump(to_json(found[static_cast<std::size_t>(l)]->triple)),
           dump(to_json(again.triple)));
      same("search report l=" + std::to_string(l), dump(to_json(build_report(again.triple))),
           dump(to_json(build_report(found[static_cast<std::size_t>(l)]->triple))));
    }
    std::string d = diffs.empty() ? "reports, fuzz summary and searches byte-identical across runs and worker counts"
                                  : "differences in:";
    for (const auto& x : diffs) d += " " + x;
    record(9, "determinism", diffs.empty(), d);
  }

  bool all = true;
  for (const auto& l : lines) all = all && l.pass;
  std::printf("acceptance: %s (%zu criteria, %.1f s)\n", all ? "PASS" : "FAIL", lines.size(),
              seconds_since(suite_start));
  return all ? 0 : 1;
}
