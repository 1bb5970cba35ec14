#include <gtest/gtest.h>

#include "procat/io.hpp"
#include "procat/testing/fixtures.hpp"
#include "procat/testing/generators.hpp"

using namespace procat;
using io::json;

namespace {

std::string parse_error_location(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.location();
  }
  return "<no error>";
}

}  // namespace

TEST(RoundTrip, Posets) {
  gen::Rng rng(81);
  for (int i = 0; i < 50; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 0, 6));
    FinPoset Q = io::read_poset(io::write_poset(P), "");
    ASSERT_TRUE(P == Q);
  }
}

TEST(RoundTrip, Categories) {
  for (const auto& [name, c] : fixtures::directed_categories()) {
    FinCategory d = io::read_category(io::write_category(c), "");
    EXPECT_EQ(io::write_category(d).dump(), io::write_category(c).dump()) << name;
  }
}

TEST(RoundTrip, DiagramsAndTransformations) {
  gen::Rng rng(82);
  for (int i = 0; i < 50; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 5));
    auto f = gen::random_trans(rng, P, 3);
    auto g = io::read_trans(io::write_trans(f), "");
    ASSERT_EQ(io::write_trans(g).dump(), io::write_trans(f).dump());
    ASSERT_TRUE(equal(f, g));
  }
}

TEST(RoundTrip, LiftingProblems) {
  gen::Rng rng(83);
  FinPoset T = gen::random_poset(rng, 3);
  auto p = gen::random_lifting_problem(rng, T, 3);
  auto q = io::read_lifting_problem(io::write_lifting_problem(p), "");
  EXPECT_EQ(io::write_lifting_problem(q).dump(), io::write_lifting_problem(p).dump());
}

TEST(RoundTrip, PreMorphisms) {
  gen::Rng rng(84);
  for (int i = 0; i < 30; ++i) {
    FinPoset B = gen::random_poset(rng, 3);
    FinPoset A = gen::random_tower(rng, B.height() + 3, 2);
    auto F = gen::random_diagram(rng, A, 3);
    auto pc = gen::random_pre_morphism(rng, F, B);
    if (!pc) continue;
    auto q = io::read_pre_morphism(io::write_pre_morphism(F, pc->G, pc->p), F, pc->G, "");
    ASSERT_TRUE(pm_equal(q, pc->p));
  }
}

TEST(Morphism, BareTableAndFullForm) {
  FinSet s = FinSet::of({"a", "b"}), t = FinSet::of({"x"});
  FinMap m = io::read_map_between(json{{"a", "x"}, {"b", "x"}}, s, t, "");
  EXPECT_EQ(m.images, (std::vector<std::size_t>{0, 0}));
  FinMap n = io::read_morphism(io::write_morphism(m), "");
  EXPECT_TRUE(FinSets::equal(m, n));
}

TEST(Errors, Locations) {
  EXPECT_EQ(parse_error_location([] { io::parse_text("{\"a\": [1, 2"); }).rfind("byte", 0), 0u);
  EXPECT_EQ(parse_error_location([] { io::read_poset(json::parse(R"({"elements": ["a", "b"], "le": [["a", "z"]]})"), ""); }),
            "/le/0/1");
  EXPECT_EQ(parse_error_location([] { io::read_category(json{{"objects", {"x"}}}, ""); }), "");
  FinSet s = FinSet::of({"a"}), t = FinSet::of({"x"});
  EXPECT_EQ(parse_error_location([&] { io::read_map_between(json{{"a", "y"}}, s, t, "/m"); }), "/m/a");
  EXPECT_EQ(parse_error_location([&] { io::read_map_between(json::object(), s, t, "/m"); }), "/m");
}

TEST(Errors, NonNaturalTransformation) {
  json j = json::parse(R"({
    "source": {"poset": {"elements": ["a", "c"], "le": [["a", "c"]]},
               "objects": {"a": ["0", "1"], "c": ["0", "1"]}, "maps": {"a<=c": {"0": "0", "1": "1"}}},
    "target": {"poset": {"elements": ["a", "c"], "le": [["a", "c"]]},
               "objects": {"a": ["0", "1"], "c": ["0", "1"]}, "maps": {"a<=c": {"0": "0", "1": "1"}}},
    "components": {"a": {"0": "1", "1": "0"}, "c": {"0": "0", "1": "1"}}})");
  try {
    io::read_trans(j, "/t");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "/t");
    EXPECT_NE(e.detail().find("not natural"), std::string::npos);
  }
}

TEST(Envelope, SchemaFields) {
  json e = io::envelope("check", json{{"verdict", "pass"}});
  EXPECT_EQ(e["schema_version"], io::kSchemaVersion);
  EXPECT_EQ(e["command"], "check");
  EXPECT_EQ(e.begin().key(), "schema_version");
}
