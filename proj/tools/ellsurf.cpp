// ellsurf: command-line front end.
//
//   ellsurf validate FILE
//   ellsurf report FILE [--json | --text]
//   ellsurf transform FILE (--twist | --i0star A B) [--verify]
//   ellsurf fuzz --k K --trials N --seed S [--height H] [--oracle-every M]
//   ellsurf search --k K --components L [--budget B] [--seed S] [--height H]
//   ellsurf oracle-check FILE [--extra N] [--trace]
//
// FILE may be "-" for standard input. Exit status: 0 success, 1 theorem
// violation, 2 invalid input or parameters, 3 search budget exhausted.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ellsurf/checks.hpp"
#include "ellsurf/io.hpp"

namespace {

using namespace ellsurf;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInvalid = 2;
constexpr int kNotFound = 3;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string witness_text(const InvalidTriple& e) {
  if (const auto& c = e.witness_point()) {
    if (c->is_infinity()) return "v=0";
    if (c->is_finite()) {
      const Rational& x = c->value();
      if (x == 0) return "u=0";
      return "u=" + (x == 1 ? std::string() : x == -1 ? std::string("-") : to_string(x) + "*") + "v";
    }
  }
  if (const auto& f = e.witness_factor()) return "common factor " + io::form_text(*f);
  return {};
}

/// Runs `body`, mapping bad documents and bad parameters to exit status 2.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const InvalidTriple& e) {
    std::cerr << "invalid triple: " << e.what() << "\n";
    if (auto w = witness_text(e); !w.empty()) std::cerr << "witness: " << w << "\n";
    return kInvalid;
  } catch (const DocumentError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidI0StarParams& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvalid;
  } catch (const SearchNotFound& e) {
    std::cerr << e.what() << "\n";
    return kNotFound;
  } catch (const NotRealGeneric& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::logic_error& e) {
    std::cerr << "consistency check failed: " << e.what() << "\n";
    return kViolation;
  }
}

int cmd_validate(const std::string& file) {
  return guarded([&] {
    WeierstrassTriple t = parse_triple(read_input(file));
    std::cout << "valid: k = " << t.k() << "\n";
    return kOk;
  });
}

int cmd_report(const std::string& file, bool json) {
  return guarded([&] {
    ReportDocument r = build_report(parse_triple(read_input(file)));
    std::cout << (json ? dump(to_json(r)) : text_report(r));
    return kOk;
  });
}

int cmd_transform(const std::string& file, bool do_twist, const std::vector<std::string>& i0star, bool verify) {
  return guarded([&] {
    WeierstrassTriple t = parse_triple(read_input(file));
    WeierstrassTriple out = t;
    std::vector<std::string> failures;
    if (do_twist) {
      out = twist(t);
      if (verify) {
        if (!is_real_generic(t)) throw std::invalid_argument("--verify on --twist needs a real-generic triple");
        failures = verify_duality(t).failures;
      }
    } else {
      I0StarParams params;
      try {
        params = {parse_rational(i0star.at(0)), parse_rational(i0star.at(1))};
      } catch (const std::invalid_argument& e) {
        throw InvalidI0StarParams(std::string("i0star: ") + e.what());
      }
      out = i0star_transform(t, params);
      if (verify) {
        I0StarCheck c = verify_i0star(t, params, out);
        failures = c.failures;
        std::cerr << "i0star: " << c.flipped << " real nodal fiber(s) changed type\n";
      }
    }
    if (verify) {
      for (const auto& f : failures) std::cerr << "VIOLATION: " << f << "\n";
      std::cerr << "verify: " << (failures.empty() ? "ok" : "failed") << "\n";
    }
    std::cout << dump(to_json(normalize(out)));
    return failures.empty() ? kOk : kViolation;
  });
}

int cmd_fuzz(const fuzz::FuzzOptions& options) {
  return guarded([&] {
    fuzz::FuzzSummary s = fuzz::run(options, worker_count());
    std::cout << s.text();
    if (const auto* bad = s.first_violation()) {
      std::cout << "\nTHEOREM VIOLATION in trial " << bad->index << ":\n";
      for (const auto& v : bad->violations) std::cout << "  " << v << "\n";
      std::cout << "offending triple:\n" << dump(to_json(*bad->triple));
      return kViolation;
    }
    return kOk;
  });
}

int cmd_search(int k, int components, const SearchBudget& budget) {
  return guarded([&] {
    SearchResult r = search_extremal(k, components, budget, worker_count());
    std::cerr << "search: candidate " << r.candidate << ", h0 = " << r.topology.h0 << ", h1 = " << r.topology.h1
              << ", oracle: " << r.oracle.report() << "\n";
    std::cout << dump(to_json(r.triple));
    return kOk;
  });
}

int cmd_oracle_check(const std::string& file, int extra, bool trace) {
  return guarded([&] {
    WeierstrassTriple t = parse_triple(read_input(file));
    OracleVerdict v = compare_with_oracle(t, extra);
    std::cout << (v.agree ? "agree: " : "DISAGREE: ") << v.report() << "\n";
    if (trace && v.agree) std::cout << v.oracle.trace();
    return v.agree ? kOk : kViolation;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology of real elliptic surfaces from Weierstrass data"};
  app.require_subcommand(1);

  std::string file;
  bool json = false, text = false, do_twist = false, verify = false, trace = false;
  std::vector<std::string> i0star;
  int extra = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check a triple document; exit 2 with a witness if invalid");
  validate_cmd->add_option("file", file, "triple document, or - for stdin")->required();

  auto* report_cmd = app.add_subcommand("report", "fibers, arcs, topology and bound verdicts");
  report_cmd->add_option("file", file, "triple document, or - for stdin")->required();
  auto* json_flag = report_cmd->add_flag("--json", json, "machine-readable output");
  report_cmd->add_flag("--text", text, "human-readable output (default)")->excludes(json_flag);

  auto* transform_cmd = app.add_subcommand("transform", "apply the twist or the I0* transformation");
  transform_cmd->add_option("file", file, "triple document, or - for stdin")->required();
  auto* twist_flag = transform_cmd->add_flag("--twist", do_twist, "(p, q) -> (p, -q)");
  auto* i0star_opt = transform_cmd->add_option("--i0star", i0star, "quadratic twist by (u - a v)(u - b v)")
                         ->expected(2)
                         ->type_name("A B");
  twist_flag->excludes(i0star_opt);
  transform_cmd->add_flag("--verify", verify, "check the fiber-level and duality statements");

  fuzz::FuzzOptions fo;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "random real-generic triples against every theorem check");
  fuzz_cmd->add_option("--k", fo.k, "degree k")->required()->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--trials", fo.trials, "number of trials")->required();
  fuzz_cmd->add_option("--seed", fo.seed, "random seed")->required();
  fuzz_cmd->add_option("--height", fo.height, "coefficient height bound")->capture_default_str()->check(
      CLI::PositiveNumber);
  fuzz_cmd->add_option("--oracle-every", fo.oracle_every, "oracle on every M-th trial, 0 for none")
      ->capture_default_str();

  int k = 1, components = 1;
  SearchBudget budget;
  long height = 0;
  auto* search_cmd = app.add_subcommand("search", "find a triple whose real locus has L components");
  search_cmd->add_option("--k", k, "degree k")->required();
  search_cmd->add_option("--components", components, "number of components L")->required();
  search_cmd->add_option("--budget", budget.max_candidates, "maximum number of candidates")->capture_default_str();
  search_cmd->add_option("--seed", budget.rng_seed, "random seed")->capture_default_str();
  search_cmd->add_option("--height", height, "root grid half-width (default: max(4, 2k))")->check(CLI::PositiveNumber);

  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare with the independent cell-complex computation");
  oracle_cmd->add_option("file", file, "triple document, or - for stdin")->required();
  oracle_cmd->add_option("--extra", extra, "extra sample slices per arc")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  oracle_cmd->add_flag("--trace", trace, "print the slice trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  if (*validate_cmd) return cmd_validate(file);
  if (*report_cmd) return cmd_report(file, json);
  if (*transform_cmd) {
    if (do_twist == !i0star.empty()) {
      std::cerr << "transform: give exactly one of --twist or --i0star A B\n";
      return kInvalid;
    }
    return cmd_transform(file, do_twist, i0star, verify);
  }
  if (*fuzz_cmd) return cmd_fuzz(fo);
  if (*search_cmd) {
    budget.coefficient_height_bound = height > 0 ? height : std::max(4L, 2L * k);
    return cmd_search(k, components, budget);
  }
  if (*oracle_cmd) return cmd_oracle_check(file, extra, trace);
  return kInvalid;
}
