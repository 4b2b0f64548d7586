#include <gtest/gtest.h>

#include "support.hpp"
#include "supergeo/dsl/printer.hpp"
#include "supergeo/verification.hpp"

using namespace supergeo;
using testing_support::fn;

namespace {

ParseError parse_error(const std::string& src) {
  try {
    dsl::parse(src);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << src;
  return ParseError("none", 0, 0);
}

const SuperDomain kU = SuperDomain::whole(2, 3, "U");

}  // namespace

TEST(Expression, CanonicalText) {
  EXPECT_EQ(dsl::to_text(fn(kU, "-th1*th2")), "-th1*th2");
  EXPECT_EQ(dsl::to_text(fn(kU, "th2*th1")), "-th1*th2");
  EXPECT_EQ(dsl::to_text(fn(kU, "6/4*u1")), "3/2*u1");
  EXPECT_EQ(dsl::to_text(fn(kU, "(u1 + 1)^2")), "1 + 2*u1 + u1^2");
  EXPECT_EQ(dsl::to_text(fn(kU, "th1*u2*th3 - th3*th1*u2")), "2*u2*th1*th3");
  EXPECT_EQ(dsl::to_text(fn(kU, "0")), "0");
}

TEST(Expression, PrintParseIsIdentity) {
  for (const char* s : {"-(u1 + u2)*th1", "u1 - (u2 - th1)", "(1/2)^3*u1", "-(-u1)^3", "th1*th2*th3"}) {
    const dsl::Expr e = dsl::parse_expression(s);
    EXPECT_EQ(dsl::parse_expression(dsl::print_expr(e)), e) << s;
  }
}

TEST(Expression, OddPowersAreRejected) {
  EXPECT_THROW(fn(kU, "th1^2"), Error);
  EXPECT_THROW(fn(kU, "(u1 + th1)^2"), Error);
}

TEST(Expression, VariablesMustExist) { EXPECT_THROW(fn(kU, "u3"), Error); }

TEST(Parser, ErrorsCarryLineAndColumn) {
  const auto e = parse_error("superdomain R(1|0) U = box (0,1);\nfunction f on U = u1 + ;\n");
  EXPECT_EQ(e.line(), 2U);
  EXPECT_EQ(e.col(), 24U);
  EXPECT_EQ(std::string(e.what()).rfind("2:24:", 0), 0U) << e.what();
}

TEST(Parser, UnknownNamesAreErrors) {
  EXPECT_THROW(dsl::parse("function f on Nowhere = u1;\n"), Error);
  EXPECT_THROW(dsl::parse("superdomain R(1|0) U = box (0,1);\nsuperdomain R(1|0) U = box (0,1);\n"), Error);
}

TEST(Parser, BoxDimensionMustMatch) {
  EXPECT_THROW(dsl::parse("superdomain R(2|0) U = box (0,1);\n"), Error);
}

TEST(Parser, FixtureCorpusRoundTrips) {
  const auto files = verify::fixture_files(SUPERGEO_FIXTURE_DIR);
  ASSERT_GE(files.size(), 20U);
  for (const auto& f : files) {
    const auto first = dsl::parse(verify::read_file(f));
    const std::string text = dsl::print_canonical(first.ast);
    const auto second = dsl::parse(text);
    EXPECT_EQ(second.ast, first.ast) << f;
    EXPECT_EQ(dsl::print_canonical(second.ast), text) << f;
  }
}

TEST(Parser, ElementsAndRunLines) {
  const auto p = dsl::parse("superdomain R(1|1) L = box (-1,1);\n"
                            "element d on L = 2/4*point(-1/2).o1 + point(0);\n"
                            "run pair d d;\n");
  EXPECT_EQ(dsl::to_text(p.symbols.elements.at("d")), "1/2*point(-1/2).o1 + point(0)");
  const auto* run = std::get_if<dsl::CommandDecl>(&p.ast.decls.back());
  ASSERT_NE(run, nullptr);
  EXPECT_EQ(run->words, (std::vector<std::string>{"pair", "d", "d"}));
}

TEST(Parser, AnchorsMustLieInTheBox) {
  EXPECT_THROW(dsl::parse("superdomain R(1|0) L = box (0,1);\nelement d on L = point(2);\n"), Error);
}
