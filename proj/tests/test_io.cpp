#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support/generators.hpp"

using namespace sstkit;
using namespace sstkit::testkit;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(SSTKIT_FIXTURE_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST(SstFile, FixtureParses) {
  Sst T1 = parse_sst(fixture("t1.sst"));
  EXPECT_EQ(T1.state_count(), 2u);
  EXPECT_EQ(T1.variables->size(), 4u);
  EXPECT_EQ(T1.transitions.size(), 2u);
  EXPECT_TRUE(structurally_equal(T1, parse_sst(t1_text())));
  Sst T2 = parse_sst(fixture("t2.sst"));
  EXPECT_TRUE(structurally_equal(T2, parse_sst(t2_text())));
}

TEST(SstFile, MissingAssignmentNamesTheTransition) {
  std::string text = t1_text();
  text.replace(text.find(" ; X_d := ~ }\ntrans: q1"), 11, "");
  auto msg = error_of([&] { parse_sst(text); });
  EXPECT_NE(msg.find("(q0, 0, q1)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("X_d"), std::string::npos) << msg;
}

TEST(SstFile, SyntaxErrorsCarryPositions) {
  try {
    parse_sst("sst\ninput: 0\noutput: e\nstates: q\ninitial: q\nfinal: q\nvars: X\ntrans: q 0 q { X = e }\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 8u);
    EXPECT_EQ(e.column(), 16u);
  }
  EXPECT_THROW(parse_sst("sts\n"), ParseError);
  EXPECT_THROW(parse_sst("sst\ninput: 0\n"), ParseError);
  EXPECT_THROW(parse_sst("sst\ninput: 0\noutput: e\nstates: q\ninitial: q\nfinal: q\nvars: X\nbogus: 1\n"), ParseError);
  // Assigned twice.
  EXPECT_THROW(parse_sst("sst\ninput: 0\noutput: e\nstates: q\ninitial: q\nfinal: q\nvars: X\n"
                         "trans: q 0 q { X := e ; X := e }\n"),
               ParseError);
  // Same token for a variable and an output letter.
  EXPECT_THROW(parse_sst("sst\ninput: 0\noutput: e\nstates: q\ninitial: q\nfinal: q\nvars: e\n"), ValidationError);
}

TEST(SstFile, CommentsAndMultiLineBlocks) {
  Sst T = parse_sst("# leading comment\nsst\ninput: 0\noutput: e\nstates: q\ninitial: q\nfinal: q\nvars: X Y\n"
                    "trans: q 0 q {\n  X := X e ;\n# inside\n  Y := ~\n}\nout: q = X Y\n");
  EXPECT_EQ(T.transitions.size(), 1u);
  EXPECT_EQ(rendered(evaluate(T, std::vector<LetterIndex>{0, 0})), std::set<std::string>{"e e"});
}

TEST(SstFile, PairOutputs) {
  Sst T = parse_sst("sst\ninput: a\noutput: x y\nstates: q\ninitial: q\nfinal: q\nvars: X Y\narity: 2\n"
                    "trans: q a q { X := X x ; Y := y Y }\nout: q = X | ~\n");
  EXPECT_EQ(T.arity, 2);
  EXPECT_EQ(rendered(evaluate(T, std::vector<LetterIndex>{0})), std::set<std::string>{"x | ~"});
  EXPECT_THROW(parse_sst("sst\ninput: a\noutput: x\nstates: q\ninitial: q\nfinal: q\nvars: X\n"
                         "out: q = X | X\n"),
               ParseError);
}

TEST(SstFile, RoundTripOnRandomMachines) {
  Gen g(71);
  for (int i = 0; i < 150; ++i) {
    SstShape shape;
    shape.deterministic = i % 2 == 0;
    shape.arity = i % 3 == 0 ? 2 : 1;
    Sst T = random_sst(g, shape);
    std::string text = print_sst(T);
    Sst U = parse_sst(text);
    EXPECT_TRUE(structurally_equal(T, U));
    EXPECT_EQ(print_sst(U), text);
    for (const auto& w : all_words(2, 3)) EXPECT_EQ(rendered(evaluate(T, w)), rendered(evaluate(U, w)));
  }
}

TEST(SstFile, CanonicalOrdering) {
  Sst T = parse_sst("sst\ninput: 0\noutput: e\nstates: z a\ninitial: z\nfinal: a\nvars: Y X\n"
                    "trans: z 0 a { Y := e ; X := Y }\ntrans: a 0 a { Y := Y ; X := X }\nout: a = X Y\n");
  Sst C = canonicalize(T);
  EXPECT_EQ(C.states->tokens(), (std::vector<std::string>{"a", "z"}));
  EXPECT_EQ(C.variables->tokens(), (std::vector<std::string>{"X", "Y"}));
  EXPECT_EQ(C.states->token(C.initial), "z");
  EXPECT_EQ(C.states->token(C.transitions[0].source), "a");
  for (const auto& w : all_words(1, 4)) EXPECT_EQ(rendered(evaluate(T, w)), rendered(evaluate(C, w)));
  EXPECT_TRUE(structurally_equal(canonicalize(C), C));
}

TEST(Hdt0lFile, FixtureParses) {
  auto I = parse_hdt0l(fixture("example.hdt0l"));
  EXPECT_EQ(I.inner->size(), 4u);
  EXPECT_EQ(I.outer->size(), 2u);
  EXPECT_EQ(I.size(), 1u);
  EXPECT_TRUE(structurally_equal(I, example_instance()));
}

TEST(Hdt0lFile, MissingImageIsReported) {
  std::string text = fixture("example.hdt0l");
  text.replace(text.find(" ; d -> ~ | g: a -> a"), 9, "");
  auto msg = error_of([&] { parse_hdt0l(text); });
  EXPECT_NE(msg.find("'d'"), std::string::npos) << msg;
}

TEST(Hdt0lFile, LabelsWithColonsAndErrors) {
  auto I = parse_hdt0l("hdt0l\nalphabet A: a\nalphabet B: e\nv: a\nw: ~\n"
                       "pair t:q0:a:q1: h: a -> a a | g: a -> ~\npair k : h: a -> a | g: a -> a\n"
                       "final: h: a -> e | g: a -> ~\n");
  EXPECT_EQ(I.pairs[0].label, "t:q0:a:q1");
  EXPECT_EQ(I.pairs[1].label, "k");
  EXPECT_TRUE(I.w.empty());
  EXPECT_THROW(parse_hdt0l("hdt0l\nalphabet A: a\nalphabet B: e\nv: a\nw: a\nfinal: h: a -> z | g: a -> e\n"),
               ParseError);
  EXPECT_THROW(parse_hdt0l("hdt0l\nalphabet A: a\nalphabet B: e\nv: a\nfinal: h: a -> e | g: a -> e\n"),
               ParseError);
}

TEST(Hdt0lFile, RoundTripOnRandomInstances) {
  Gen g(72);
  for (int i = 0; i < 150; ++i) {
    auto I = random_hdt0l(g);
    std::string text = print_hdt0l(I);
    auto J = parse_hdt0l(text);
    EXPECT_TRUE(structurally_equal(I, J));
    for (const auto& s : all_sequences(I.size(), 2)) EXPECT_EQ(derive(I, s), derive(J, s));
  }
}

TEST(Hdt0lFile, ReductionOutputRoundTrips) {
  auto [I, trace] = bisst_to_hdt0l(product(parse_sst(t1_text()), parse_sst(t2_text())));
  auto J = parse_hdt0l(print_hdt0l(I));
  EXPECT_TRUE(structurally_equal(I, J));
}

TEST(Report, HumanAndJsonCarryTheSameFacts) {
  Witness w;
  w.input = {"0", "1"};
  w.outputs = {std::string("e f"), std::nullopt};
  w.detail = "domains differ";
  Report r{"equiv", "bounded", "max-len 4", Verdict::counterexample(w, "domains differ", 2)};
  auto j = to_json(r);
  EXPECT_EQ(j["verdict"], "counterexample");
  EXPECT_EQ(j["witness"]["sequence"], (nlohmann::json{"0", "1"}));
  EXPECT_TRUE(j["witness"]["outputs"][1].is_null());
  std::string text = to_text(r);
  for (const char* fact : {"counterexample", "equiv", "bounded", "max-len 4", "0 1", "e f", "(undefined)",
                           "domains differ", "depth: 2"})
    EXPECT_NE(text.find(fact), std::string::npos) << fact;
  EXPECT_EQ(exit_code(VerdictKind::holds), 0);
  EXPECT_EQ(exit_code(VerdictKind::counterexample), 1);
  EXPECT_EQ(exit_code(VerdictKind::resource_limit), 2);
}
