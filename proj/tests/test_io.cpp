#include <gtest/gtest.h>

#include "ellsurf/fuzz.hpp"
#include "ellsurf/io.hpp"
#include "ellsurf/transforms.hpp"
#include "fixtures.hpp"

using namespace ellsurf;
using namespace ellsurf::testing;

namespace {

const char* kW1 = R"({"k": 1, "p": ["-3", "0", "0", "0", "0"], "q": ["-34", "0", "49", "0", "-14", "0", "1"]})";

std::string roundtrip(const ReportDocument& r) { return dump(to_json(report_from_json(to_json(r)))); }

}  // namespace

TEST(TripleDocument, ParsesW1) {
  EXPECT_EQ(parse_triple(kW1), w1());
}

TEST(TripleDocument, CanonicalDumpIsStable) {
  std::string canon = dump(to_json(w1()));
  EXPECT_EQ(dump(to_json(parse_triple(canon))), canon);
  EXPECT_EQ(canon.find('.'), std::string::npos);
}

TEST(TripleDocument, RationalsRoundTrip) {
  auto t = rescale(w1(), Rational(2, 3));
  EXPECT_EQ(parse_triple(dump(to_json(t))), t);
  EXPECT_NE(dump(to_json(t)).find("/"), std::string::npos);
}

TEST(TripleDocument, Rejections) {
  EXPECT_THROW(parse_triple("{"), DocumentError);
  EXPECT_THROW(parse_triple(R"({"k": 1, "p": ["1/0","0","0","0","0"], "q": ["1","0","0","0","0","0","1"]})"),
               DocumentError);
  EXPECT_THROW(parse_triple(R"({"k": 1, "p": ["1","0"], "q": ["1","0","0","0","0","0","1"]})"), DocumentError);
  EXPECT_THROW(parse_triple(R"({"k": 1, "p": [1,0,0,0,0], "q": ["1","0","0","0","0","0","1"]})"), DocumentError);
  EXPECT_THROW(parse_triple(R"({"p": [], "q": []})"), DocumentError);
  EXPECT_THROW(parse_triple(R"({"k": 0, "p": [], "q": []})"), DocumentError);
}

TEST(TripleDocument, NonMinimalCarriesWitness) {
  try {
    parse_triple(R"({"k": 1, "p": ["0","0","0","0","1"], "q": ["0","0","0","0","0","0","1"]})");
    FAIL() << "expected rejection";
  } catch (const InvalidTriple& e) {
    EXPECT_EQ(e.kind(), InvalidTripleKind::NonMinimal);
    EXPECT_NE(std::string(e.what()).find("u=0"), std::string::npos);
  }
}

TEST(Report, W1) {
  ReportDocument r = build_report(w1());
  ASSERT_TRUE(r.topology);
  EXPECT_EQ(r.topology->h0, 1);
  EXPECT_EQ(r.topology->h1, 2);
  Json j = to_json(r);
  EXPECT_EQ(j["topology"]["components"], Json::array({"V2"}));
  EXPECT_TRUE(j["real_generic"].get<bool>());
  EXPECT_EQ(j["arcs"]["singular_points"].size(), 12u);
  std::string text = text_report(r);
  EXPECT_NE(text.find("h0 = 1, h1 = 2"), std::string::npos);
  EXPECT_NE(text.find("V2"), std::string::npos);
  EXPECT_EQ(dump(j).find('.'), std::string::npos);
}

TEST(Report, NonNodalRealFibersAreRefused) {
  auto t = triple(1, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0});
  ReportDocument r = build_report(t);
  EXPECT_FALSE(r.topology);
  ASSERT_EQ(r.refused.size(), 2u);
  Json j = to_json(r);
  EXPECT_FALSE(j["real_generic"].get<bool>());
  EXPECT_EQ(j["refused"]["fibers"][0]["kodaira"], "I0*");
  EXPECT_EQ(j["refused"]["fibers"][1]["location"]["kind"], "infinity");
  std::string text = text_report(r);
  EXPECT_NE(text.find("refused: non-nodal real fibers at 0 (I0*), inf (I0*)"), std::string::npos) << text;
}

TEST(Report, NoRealSingularFiberHasCaveat) {
  auto t = triple(1, {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 1});
  ReportDocument r = build_report(t);
  ASSERT_TRUE(r.topology);
  EXPECT_FALSE(r.arcs);
  EXPECT_EQ(r.topology->h0, 1);
  EXPECT_FALSE(r.caveat.empty());
  std::string text = text_report(r);
  EXPECT_NE(text.find("no real singular fibers"), std::string::npos);
  EXPECT_NE(text.find("Klein bottle"), std::string::npos);
  EXPECT_NE(text.find("caveat"), std::string::npos);
}

TEST(Report, ValuationInfinitySerializesAsString) {
  auto t = triple(1, {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 1});
  Json j = to_json(build_report(t));
  for (const auto& f : j["fibers"]) EXPECT_EQ(f["v_p"], "inf");
}

TEST(Report, RoundTripsExamples) {
  for (const auto& t : {w1(), twist(w1()), triple(1, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0}),
                        triple(1, {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 1})}) {
    ReportDocument r = build_report(t);
    EXPECT_EQ(roundtrip(r), dump(to_json(r)));
  }
}

TEST(Report, RoundTripsFuzzedTriples) {
  for (std::uint64_t i = 0; i < 30; ++i) {
    WeierstrassTriple t = fuzz::trial_triple(11, i, 1 + static_cast<int>(i % 2), 4);
    ReportDocument r = build_report(t);
    std::string once = dump(to_json(r));
    EXPECT_EQ(roundtrip(r), once) << "trial " << i;
    EXPECT_EQ(once.find('.'), std::string::npos);
  }
}

TEST(Report, RejectsTamperedAlgebraicPoint) {
  Json j = to_json(build_report(w1()));
  Json& pts = j["arcs"]["singular_points"];
  for (auto& s : pts) {
    if (s["location"]["kind"] == "algebraic") {
      s["location"]["lo"] = "-100";
      s["location"]["hi"] = "100";
      break;
    }
  }
  EXPECT_THROW(report_from_json(j), DocumentError);
}

TEST(FormText, Readable) {
  EXPECT_EQ(io::form_text(w1().p()), "-3 v^4");
  EXPECT_EQ(io::form_text(form(2, {0, -1, 1})), "u^2 - uv");
  EXPECT_EQ(io::form_text(form(2, {0, 0, 0})), "0");
}
