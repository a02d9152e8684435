#pragma once

// JSON documents: the input triple and the machine-readable report. Every
// rational is written as a string "n" or "n/d"; there are no floats.

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsurf/real_topology.hpp"

namespace ellsurf {

using Json = nlohmann::json;

/// Malformed document: bad JSON, missing fields, bad rationals, wrong lengths.
class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace io {

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from(const Json& j, const std::string& where) {
  if (!j.is_string()) throw DocumentError(where + ": expected a rational written as a string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(where + ": " + e.what());
  }
}

inline Json coeffs_json(const std::vector<Rational>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(rational_json(c));
  return a;
}

inline std::vector<Rational> coeffs_from(const Json& j, const std::string& where) {
  if (!j.is_array()) throw DocumentError(where + ": expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw DocumentError(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

inline int int_from(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw DocumentError(where + ": expected an integer");
  return j.get<int>();
}

inline Json valuation_json(int v) { return v == kInfiniteValuation ? Json("inf") : Json(v); }

inline int valuation_from(const Json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInfiniteValuation;
  return int_from(j, where);
}

inline Json point_json(const CirclePoint& c) {
  if (c.is_infinity()) return {{"kind", "infinity"}};
  if (c.is_finite()) return {{"kind", "rational"}, {"value", rational_json(c.value())}};
  const AlgebraicRoot& r = c.root();
  return {{"kind", "algebraic"},
          {"poly", coeffs_json(r.defining->coeffs())},
          {"lo", rational_json(r.lo)},
          {"hi", rational_json(r.hi)}};
}

inline CirclePoint point_from(const Json& j, const std::string& where) {
  std::string kind = field(j, "kind", where).is_string() ? j.at("kind").get<std::string>() : "";
  if (kind == "infinity") return CirclePoint::infinity();
  if (kind == "rational") return CirclePoint::finite(rational_from(field(j, "value", where), where + ".value"));
  if (kind == "algebraic") {
    Poly f(coeffs_from(field(j, "poly", where), where + ".poly"));
    Rational lo = rational_from(field(j, "lo", where), where + ".lo");
    Rational hi = rational_from(field(j, "hi", where), where + ".hi");
    // Stored polynomials are already squarefree and normalized; validate the
    // isolating interval but keep the stored data as written.
    try {
      CirclePoint checked = CirclePoint::algebraic(f, lo, hi);
      if (!checked.is_algebraic()) throw DocumentError(where + ": algebraic point is rational");
    } catch (const DocumentError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw DocumentError(where + ": " + e.what());
    }
    return CirclePoint::isolated(std::make_shared<const Poly>(std::move(f)), lo, hi);
  }
  throw DocumentError(where + ": unknown point kind \"" + kind + "\"");
}

inline KodairaType kodaira_from(const Json& j, const std::string& where) {
  if (!j.is_string()) throw DocumentError(where + ": expected a Kodaira symbol");
  try {
    return KodairaType::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(where + ": " + e.what());
  }
}

inline RealFiberType real_type_from(const Json& j, const std::string& where) {
  if (!j.is_string()) throw DocumentError(where + ": expected a real fiber type");
  std::string s = j.get<std::string>();
  if (s == "I1+") return RealFiberType::plus();
  if (s == "I1-") return RealFiberType::minus();
  return RealFiberType::other(kodaira_from(j, where));
}

inline bool bool_from(const Json& j, const std::string& where) {
  if (!j.is_boolean()) throw DocumentError(where + ": expected a boolean");
  return j.get<bool>();
}

}  // namespace io

// ---------------------------------------------------------------------------
// Triple documents

inline Json to_json(const WeierstrassTriple& t) {
  return {{"k", t.k()}, {"p", io::coeffs_json(t.p().coeffs())}, {"q", io::coeffs_json(t.q().coeffs())}};
}

/// Parses {"k", "p", "q"}. Shape problems raise DocumentError; a well-formed
/// document that fails the validity conditions raises InvalidTriple.
inline WeierstrassTriple triple_from_json(const Json& j) {
  if (!j.is_object()) throw DocumentError("document: expected a JSON object");
  int k = io::int_from(io::field(j, "k", "document"), "k");
  if (k < 1) throw DocumentError("k: must be a positive integer");
  auto p = io::coeffs_from(io::field(j, "p", "document"), "p");
  auto q = io::coeffs_from(io::field(j, "q", "document"), "q");
  if (p.size() != static_cast<std::size_t>(4 * k + 1))
    throw DocumentError("p: expected " + std::to_string(4 * k + 1) + " coefficients, got " + std::to_string(p.size()));
  if (q.size() != static_cast<std::size_t>(6 * k + 1))
    throw DocumentError("q: expected " + std::to_string(6 * k + 1) + " coefficients, got " + std::to_string(q.size()));
  return validate(k, BinForm(4 * k, std::move(p)), BinForm(6 * k, std::move(q)));
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
}

inline WeierstrassTriple parse_triple(const std::string& text) { return triple_from_json(parse_json(text)); }

/// Canonical text: keys sorted, two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Reports

/// Everything `report` prints. Exactly one of `arcs`/`topology` or `refused`
/// is filled for a real-generic or non-real-generic triple; a triple without
/// real singular fibers has topology but no arcs.
struct ReportDocument {
  WeierstrassTriple triple;
  FiberClassification fibers;
  std::vector<std::optional<RealFiberType>> real_types;  // parallel to fibers.fibers; set for real fibers
  std::optional<ArcDecomposition> arcs;
  std::optional<RealTopologyReport> topology;
  std::vector<FiberReport> refused;  // non-nodal real fibers
  std::string caveat;
};

inline ReportDocument build_report(const WeierstrassTriple& t) {
  ReportDocument r{t, classify_fibers(t), {}, std::nullopt, std::nullopt, {}, ""};
  for (const auto& f : r.fibers.fibers) {
    if (!f.is_real) {
      r.real_types.emplace_back();
    } else if (f.v_delta == 1) {
      r.real_types.emplace_back(real_type_of_nodal(t, f.point()));
    } else {
      r.real_types.emplace_back(RealFiberType::other(f.kodaira));
    }
  }
  if (!is_real_generic(r.fibers)) {
    r.refused = detail::non_nodal_real(r.fibers);
    return r;
  }
  if (!r.fibers.real_fibers().empty()) r.arcs = arc_decomposition(t, r.fibers);
  r.topology = betti(t, r.fibers);
  if (r.topology->no_real_singular_fiber)
    r.caveat =
        "no real singular fibers: each oval of the fiber sweeps a torus or Klein bottle, and the number of ovals "
        "(1 if the discriminant is positive on the real line, 2 if negative) gives the component count; the "
        "two-component reading of this case does not cover a positive discriminant";
  return r;
}

namespace io {

inline Json fiber_json(const FiberReport& f, const std::optional<RealFiberType>& type) {
  Json j = {{"kodaira", f.kodaira.name()},
            {"v_p", valuation_json(f.v_p)},
            {"v_q", valuation_json(f.v_q)},
            {"v_delta", valuation_json(f.v_delta)},
            {"real", f.is_real},
            {"factor", f.factor}};
  if (f.is_real) {
    j["location"] = point_json(f.point());
    j["real_type"] = type ? Json(type->name()) : Json(nullptr);
  } else {
    const auto& c = std::get<ConjugatePairs>(f.location);
    j["location"] = {{"kind", "conjugate"}, {"factor", c.factor}, {"pairs", c.pairs}};
    j["real_type"] = nullptr;
  }
  return j;
}

inline FiberReport fiber_from(const Json& j, const std::string& where, std::optional<RealFiberType>& type) {
  FiberReport f{CirclePoint::infinity(), 0, 0, 0, KodairaType{}, true, -1};
  f.kodaira = kodaira_from(field(j, "kodaira", where), where + ".kodaira");
  f.v_p = valuation_from(field(j, "v_p", where), where + ".v_p");
  f.v_q = valuation_from(field(j, "v_q", where), where + ".v_q");
  f.v_delta = valuation_from(field(j, "v_delta", where), where + ".v_delta");
  f.is_real = bool_from(field(j, "real", where), where + ".real");
  f.factor = int_from(field(j, "factor", where), where + ".factor");
  const Json& loc = field(j, "location", where);
  if (f.is_real) {
    f.location = point_from(loc, where + ".location");
  } else {
    f.location = ConjugatePairs{int_from(field(loc, "factor", where + ".location"), where + ".location.factor"),
                                int_from(field(loc, "pairs", where + ".location"), where + ".location.pairs")};
  }
  const Json& rt = field(j, "real_type", where);
  type = rt.is_null() ? std::nullopt : std::optional(real_type_from(rt, where + ".real_type"));
  return f;
}

inline Json arcs_json(const ArcDecomposition& a) {
  Json pts = Json::array(), arcs = Json::array();
  for (const auto& s : a.singular_points) pts.push_back({{"location", point_json(s.point)}, {"type", s.type.name()}});
  for (const auto& arc : a.arcs)
    arcs.push_back({{"from", arc.from},
                    {"to", arc.to},
                    {"sample", point_json(arc.sample)},
                    {"components", arc.component_count}});
  return {{"singular_points", pts}, {"arcs", arcs}, {"arc_plus", a.arc_plus}, {"arc_minus", a.arc_minus}};
}

inline ArcDecomposition arcs_from(const Json& j) {
  ArcDecomposition a;
  const Json& pts = field(j, "singular_points", "arcs");
  const Json& arcs = field(j, "arcs", "arcs");
  if (!pts.is_array() || !arcs.is_array()) throw DocumentError("arcs: expected arrays");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::string w = "arcs.singular_points[" + std::to_string(i) + "]";
    a.singular_points.push_back(
        {point_from(field(pts[i], "location", w), w + ".location"), real_type_from(field(pts[i], "type", w), w + ".type")});
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    std::string w = "arcs.arcs[" + std::to_string(i) + "]";
    Arc arc;
    int from = int_from(field(arcs[i], "from", w), w + ".from"), to = int_from(field(arcs[i], "to", w), w + ".to");
    if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= pts.size() || static_cast<std::size_t>(to) >= pts.size())
      throw DocumentError(w + ": endpoint index out of range");
    arc.from = static_cast<std::size_t>(from);
    arc.to = static_cast<std::size_t>(to);
    arc.sample = point_from(field(arcs[i], "sample", w), w + ".sample");
    arc.component_count = int_from(field(arcs[i], "components", w), w + ".components");
    a.arcs.push_back(arc);
  }
  a.arc_plus = int_from(field(j, "arc_plus", "arcs"), "arcs.arc_plus");
  a.arc_minus = int_from(field(j, "arc_minus", "arcs"), "arcs.arc_minus");
  return a;
}

inline Json topology_json(const RealTopologyReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components) comps.push_back(c.name());
  Json violations = Json::array();
  for (const auto& v : r.bounds.violations()) violations.push_back(v);
  return {{"h0", r.h0},
          {"h1", r.h1},
          {"h2", r.h2},
          {"h_star", r.h_star()},
          {"chi", r.chi_top},
          {"orientable", r.orientable},
          {"components", comps},
          {"no_real_singular_fiber", r.no_real_singular_fiber},
          {"bounds",
           {{"components", r.bounds.components},
            {"ragsdale_viro", r.bounds.ragsdale_viro},
            {"parity", r.bounds.parity},
            {"orientability", r.bounds.orientability},
            {"violations", violations}}}};
}

inline SurfaceComponent component_from(const Json& j, const std::string& where) {
  if (!j.is_string()) throw DocumentError(where + ": expected a surface name");
  std::string s = j.get<std::string>();
  if (s.size() < 2 || (s[0] != 'S' && s[0] != 'V') ||
      !std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw DocumentError(where + ": bad surface name \"" + s + "\"");
  return {s[0] == 'S', std::stoi(s.substr(1))};
}

inline RealTopologyReport topology_from(const Json& j) {
  RealTopologyReport r;
  r.h0 = int_from(field(j, "h0", "topology"), "topology.h0");
  r.h1 = int_from(field(j, "h1", "topology"), "topology.h1");
  r.h2 = int_from(field(j, "h2", "topology"), "topology.h2");
  r.chi_top = int_from(field(j, "chi", "topology"), "topology.chi");
  r.orientable = bool_from(field(j, "orientable", "topology"), "topology.orientable");
  r.no_real_singular_fiber =
      bool_from(field(j, "no_real_singular_fiber", "topology"), "topology.no_real_singular_fiber");
  const Json& comps = field(j, "components", "topology");
  if (!comps.is_array()) throw DocumentError("topology.components: expected an array");
  for (std::size_t i = 0; i < comps.size(); ++i)
    r.components.push_back(component_from(comps[i], "topology.components[" + std::to_string(i) + "]"));
  const Json& b = field(j, "bounds", "topology");
  r.bounds.components = bool_from(field(b, "components", "bounds"), "bounds.components");
  r.bounds.ragsdale_viro = bool_from(field(b, "ragsdale_viro", "bounds"), "bounds.ragsdale_viro");
  r.bounds.parity = bool_from(field(b, "parity", "bounds"), "bounds.parity");
  r.bounds.orientability = bool_from(field(b, "orientability", "bounds"), "bounds.orientability");
  return r;
}

}  // namespace io

inline Json to_json(const ReportDocument& r) {
  Json fibers = Json::array();
  for (std::size_t i = 0; i < r.fibers.fibers.size(); ++i)
    fibers.push_back(io::fiber_json(r.fibers.fibers[i], r.real_types[i]));
  Json factors = Json::array();
  for (const auto& f : r.fibers.factors) factors.push_back(io::coeffs_json(f.coeffs()));
  const auto& inv = r.fibers.invariants;
  Json j = {{"triple", to_json(r.triple)},
            {"invariants",
             {{"k", inv.k}, {"chi_top", inv.chi_top}, {"h11", inv.h11}, {"b2", inv.b2}, {"euler_sum", inv.euler_sum}}},
            {"fibers", fibers},
            {"factors", factors},
            {"real_generic", r.refused.empty()},
            {"arcs", r.arcs ? io::arcs_json(*r.arcs) : Json(nullptr)},
            {"topology", r.topology ? io::topology_json(*r.topology) : Json(nullptr)},
            {"caveat", r.caveat.empty() ? Json(nullptr) : Json(r.caveat)}};
  if (r.refused.empty()) {
    j["refused"] = nullptr;
  } else {
    Json offending = Json::array();
    for (const auto& f : r.refused)
      offending.push_back({{"location", io::point_json(f.point())}, {"kodaira", f.kodaira.name()}});
    j["refused"] = {{"reason", "non-nodal real fibers"}, {"fibers", offending}};
  }
  return j;
}

inline ReportDocument report_from_json(const Json& j) {
  using namespace io;
  ReportDocument r{triple_from_json(field(j, "triple", "report")), {}, {}, std::nullopt, std::nullopt, {}, ""};
  const Json& inv = field(j, "invariants", "report");
  r.fibers.invariants = {int_from(field(inv, "k", "invariants"), "invariants.k"),
                         int_from(field(inv, "chi_top", "invariants"), "invariants.chi_top"),
                         int_from(field(inv, "h11", "invariants"), "invariants.h11"),
                         int_from(field(inv, "b2", "invariants"), "invariants.b2"),
                         int_from(field(inv, "euler_sum", "invariants"), "invariants.euler_sum")};
  const Json& fibers = field(j, "fibers", "report");
  if (!fibers.is_array()) throw DocumentError("fibers: expected an array");
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    std::optional<RealFiberType> type;
    r.fibers.fibers.push_back(fiber_from(fibers[i], "fibers[" + std::to_string(i) + "]", type));
    r.real_types.push_back(type);
  }
  const Json& factors = field(j, "factors", "report");
  if (!factors.is_array()) throw DocumentError("factors: expected an array");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto cs = coeffs_from(factors[i], "factors[" + std::to_string(i) + "]");
    if (cs.empty()) throw DocumentError("factors: empty form");
    int d = static_cast<int>(cs.size()) - 1;
    r.fibers.factors.emplace_back(d, std::move(cs));
  }
  if (const Json& a = field(j, "arcs", "report"); !a.is_null()) r.arcs = arcs_from(a);
  if (const Json& t = field(j, "topology", "report"); !t.is_null()) r.topology = topology_from(t);
  if (const Json& c = field(j, "caveat", "report"); !c.is_null()) {
    if (!c.is_string()) throw DocumentError("caveat: expected a string");
    r.caveat = c.get<std::string>();
  }
  if (const Json& ref = field(j, "refused", "report"); !ref.is_null()) {
    const Json& fs = field(ref, "fibers", "refused");
    if (!fs.is_array()) throw DocumentError("refused.fibers: expected an array");
    // Offending fibers are the non-nodal real ones of the fiber table.
    for (std::size_t i = 0; i < r.fibers.fibers.size(); ++i) {
      const auto& f = r.fibers.fibers[i];
      if (f.is_real && f.v_delta != 1) r.refused.push_back(f);
    }
    if (r.refused.size() != fs.size()) throw DocumentError("refused.fibers: does not match the fiber table");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text report

namespace io {

inline std::string form_text(const BinForm& f) {
  std::string s;
  int d = f.degree();
  for (int i = d; i >= 0; --i) {
    const Rational& c = f.coeff(i);
    if (c == 0) continue;
    Rational a = abs(c);
    s += c < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + ");
    std::string mono;
    if (i > 0) mono += i > 1 ? "u^" + std::to_string(i) : "u";
    if (d - i > 0) mono += d - i > 1 ? "v^" + std::to_string(d - i) : "v";
    if (a != 1 || mono.empty()) s += to_string(a) + (mono.empty() ? "" : " ");
    s += mono;
  }
  return s.empty() ? "0" : s;
}

}  // namespace io

inline std::string text_report(const ReportDocument& r) {
  std::ostringstream os;
  const auto& t = r.triple;
  const auto& inv = r.fibers.invariants;
  os << "k = " << t.k() << "\n";
  os << "p = " << io::form_text(t.p()) << "\n";
  os << "q = " << io::form_text(t.q()) << "\n";
  os << "chi_top = " << inv.chi_top << ", h11 = " << inv.h11 << ", b2 = " << inv.b2
     << ", sum of fiber Euler numbers = " << inv.euler_sum << "\n\n";

  os << "fibers:\n";
  for (std::size_t i = 0; i < r.fibers.fibers.size(); ++i) {
    const auto& f = r.fibers.fibers[i];
    std::string where = f.is_real ? f.point().to_string()
                                  : std::to_string(std::get<ConjugatePairs>(f.location).pairs) +
                                        " conjugate pair(s) of factor " +
                                        std::to_string(std::get<ConjugatePairs>(f.location).factor);
    os << "  " << where << ": " << f.kodaira.name() << " (v_p, v_q, v_delta) = (" << valuation_string(f.v_p) << ", "
       << valuation_string(f.v_q) << ", " << valuation_string(f.v_delta) << ")";
    if (r.real_types[i] && r.real_types[i]->kind != RealFiberType::Kind::Other) os << " " << r.real_types[i]->name();
    os << "\n";
  }
  if (r.fibers.fibers.empty()) os << "  none\n";

  if (!r.refused.empty()) {
    os << "\ntopology: refused: non-nodal real fibers at";
    for (std::size_t i = 0; i < r.refused.size(); ++i)
      os << (i ? ", " : " ") << r.refused[i].point().to_string() << " (" << r.refused[i].kodaira.name() << ")";
    os << "\n";
    return os.str();
  }

  if (r.arcs) {
    os << "\narcs:\n";
    for (const auto& arc : r.arcs->arcs) {
      const auto& a = r.arcs->singular_points[arc.from];
      const auto& b = r.arcs->singular_points[arc.to];
      os << "  " << a.point.to_string() << " (" << a.type.name() << ") -> " << b.point.to_string() << " ("
         << b.type.name() << "): " << arc.component_count << " oval(s), sample " << arc.sample.to_string() << "\n";
    }
    os << "  arc+ = " << r.arcs->arc_plus << ", arc- = " << r.arcs->arc_minus << "\n";
  }

  const auto& top = *r.topology;
  os << "\ntopology:";
  if (top.no_real_singular_fiber) os << " no real singular fibers;";
  os << " h0 = " << top.h0 << ", h1 = " << top.h1 << ", h2 = " << top.h2 << ", chi = " << top.chi_top << ", "
     << (top.orientable ? "orientable" : "non-orientable") << "\n";
  os << "components:";
  for (const auto& c : top.components) {
    os << " " << c.name();
    if (c.orientable && c.genus == 0) os << " (sphere)";
    if (c.orientable && c.genus == 1) os << " (torus)";
    if (!c.orientable && c.genus == 2) os << " (Klein bottle)";
  }
  os << "\n";
  auto violations = top.bounds.violations();
  os << "bounds: " << (violations.empty() ? "ok" : "VIOLATED");
  for (const auto& v : violations) os << " [" << v << "]";
  os << "\n";
  if (!r.caveat.empty()) os << "caveat: " << r.caveat << "\n";
  return os.str();
}

}  // namespace ellsurf
