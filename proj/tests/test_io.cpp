#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "loglift/builtin.hpp"
#include "loglift/io.hpp"

using namespace loglift;

namespace {

const std::string kData = LOGLIFT_DATA_DIR;

io::json load(const std::string& name) { return io::read_json_file(kData + "/" + name); }

std::string schema_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

struct CapEnv {
  explicit CapEnv(const char* v) { setenv("LOGLIFT_CAP", v, 1); }
  ~CapEnv() { unsetenv("LOGLIFT_CAP"); }
};

}  // namespace

TEST(Io, TrivialModule) {
  FdPModule m = io::parse_module(load("trivial.json"));
  EXPECT_EQ(m.dim(), 1u);
  EXPECT_EQ(m.ctx().n(), 1u);
  EXPECT_EQ(m.field().prime(), 5);
  EXPECT_EQ(m.field().cap(), io::kDefaultCap);
  EXPECT_TRUE(m.image(0, 0).is_zero());
}

TEST(Io, ShippedModulesMatchBuiltins) {
  FdPModule b = io::parse_module(load("breuil.json"));
  FdPModule ref = breuil_module(b.field());
  for (const auto& [r, img] : ref.images()) EXPECT_TRUE(approx_equal(b.image(r), img, 0)) << root_name(r);
  FdPModule s = io::parse_module(load("schraen.json"));
  FdPModule sref = schraen_module(s.field());
  for (const auto& [r, img] : sref.images()) EXPECT_TRUE(approx_equal(s.image(r), img, 0)) << root_name(r);

  TorusLogarithm log = io::parse_log(load("schraen_log.json"), s.field());
  EXPECT_EQ(log.basis(), schraen_basis());
  EXPECT_EQ(log.branches().size(), 3u);
}

TEST(Io, SchemaErrorsNameTheField) {
  EXPECT_NE(schema_message([] { io::parse_module(load("nonprime.json")); }).find("field.p"), std::string::npos);
  EXPECT_NE(schema_message([] { io::parse_module(load("nonprime.json")); }).find("not prime"), std::string::npos);

  io::json base = load("breuil.json");
  auto expect_path = [&](io::json j, const std::string& path) {
    std::string msg = schema_message([&] { io::parse_module(j); });
    EXPECT_NE(msg.find(path), std::string::npos) << "got '" << msg << "' expected " << path;
  };
  io::json j = base;
  j.erase("dim");
  expect_path(j, "dim: missing field");
  j = base;
  j["action"]["e_1_1"][1] = {0};
  expect_path(j, "action.e_1_1[1]");
  j = base;
  j["action"]["e_2_1"] = {{0, 0}, {0, 0}};
  expect_path(j, "action.e_2_1");
  j = base;
  j["action"]["e_1_1"][0][1] = "3 + O(";
  expect_path(j, "action.e_1_1[0][1]");
  j = base;
  j["action"]["x_1_1"] = {{0, 0}, {0, 0}};
  expect_path(j, "action.x_1_1");
  j = base;
  j["action"]["e_3_3"] = {{0, 0}, {0, 0}};
  expect_path(j, "action.e_3_3");
  j = base;
  j["composition"] = {1, 0, 1};
  expect_path(j, "composition[1]");
  j = base;
  j["field"]["extension"] = "cubic";
  expect_path(j, "field.extension");

  io::json log = load("breuil_log.json");
  log["basis"] = {{1, 0}};
  EXPECT_NE(schema_message([&] { io::parse_log(log, Field::get(5, 20)); }).find("basis"), std::string::npos);
  EXPECT_NE(schema_message([&] { io::parse_elements(io::json::object(), Field::get(5, 20), 2); }).find("matrix"),
            std::string::npos);
}

TEST(Io, MalformedJsonReportsLineAndColumn) {
  try {
    io::parse_json_text("{\n  \"p\": 5,\n  oops\n}", "inline");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("inline:3:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::read_json_file(kData + "/does_not_exist.json"), ParseError);
}

TEST(Io, RoundTrip) {
  for (const char* name : {"trivial.json", "breuil.json", "schraen.json", "standard_p21.json", "bad_module.json"}) {
    FdPModule m = io::parse_module(load(name));
    io::json once = io::serialize_module(m);
    FdPModule again = io::parse_module(once);
    EXPECT_EQ(io::serialize_module(again), once) << name;
    for (const auto& [r, img] : m.images()) EXPECT_TRUE(approx_equal(again.image(r), img, 0)) << name;
  }
  const Field& F = Field::get(5, 20);
  for (const char* name : {"breuil_log.json", "schraen_log.json"}) {
    TorusLogarithm log = io::parse_log(load(name), F);
    io::json once = io::serialize_log(log);
    EXPECT_EQ(io::serialize_log(io::parse_log(once, F)), once) << name;
  }
  auto gs = io::parse_elements(load("elements2.json"), F, 2);
  ASSERT_EQ(gs.size(), 3u);
  EXPECT_TRUE(gs[2](0, 0).agrees_with(Element::rational(F, 1, 3), 20));
  EXPECT_TRUE(gs[2](0, 0).is_exact());
  io::json once = io::serialize_elements(gs);
  EXPECT_EQ(io::serialize_elements(io::parse_elements(once, F, 2)), once);
  EXPECT_EQ(once["matrices"][2][0][0], "1/3");
}

TEST(Io, InexactLiteralsKeepTheirPrecision) {
  const Field& F = Field::get(5, 20);
  TorusLogarithm log = io::parse_log(load("breuil_log.json"), F);
  EXPECT_EQ(log.branches()[0].precision(), Rational(10));
  EXPECT_EQ(io::serialize_log(log)["branches"][0], "2 + O(5^10)");
}

TEST(Io, PrecisionCapSources) {
  {
    CapEnv env("31");
    EXPECT_EQ(io::default_cap(), 31);
    EXPECT_EQ(io::parse_module(load("trivial.json")).field().cap(), 31);
    EXPECT_EQ(io::parse_module(load("standard_p21.json")).field().cap(), 16);
    EXPECT_EQ(io::parse_module(load("standard_p21.json"), 12).field().cap(), 12);
  }
  {
    CapEnv env("zero");
    EXPECT_THROW(io::default_cap(), SchemaError);
  }
  EXPECT_EQ(io::default_cap(), io::kDefaultCap);
}

TEST(Io, Extensions) {
  io::json f = {{"p", 5}, {"extension", "sqrt_p"}};
  const Field& E = io::parse_field(f, 20);
  EXPECT_TRUE(E.has_sqrt_p());
  EXPECT_EQ(io::serialize_field(E)["extension"], "sqrt_p");
  io::json u = {{"p", 3}, {"extension", {{"unramified", 2}}}};
  const Field& U = io::parse_field(u, 10);
  EXPECT_EQ(U.degree(), 2);
  EXPECT_EQ(&io::parse_field(io::serialize_field(U)), &U);
}
