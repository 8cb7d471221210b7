#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace sstkit;
using namespace sstkit::testkit;

namespace {

std::vector<LetterIndex> word(const Sst& T, const std::string& s) {
  std::vector<LetterIndex> w;
  for (char c : s) w.push_back(T.input->index_of(std::string(1, c)));
  return w;
}

std::set<std::string> eval_str(const Sst& T, const std::string& s) { return rendered(evaluate(T, word(T, s))); }

} // namespace

TEST(SstValidate, ExampleMachineIsValid) {
  Sst T1 = parse_sst(t1_text());
  EXPECT_NO_THROW(validate(T1));
  EXPECT_EQ(T1.state_count(), 2u);
  EXPECT_EQ(T1.variables->size(), 4u);
  EXPECT_EQ(T1.transitions.size(), 2u);
}

TEST(SstValidate, UpdateGapIsRejected) {
  Sst T1 = parse_sst(t1_text());
  T1.transitions[1].update.reset();
  try {
    validate(T1);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("(q1, 1, q1)"), std::string::npos) << e.what();
  }
}

TEST(SstValidate, UnknownOutputVariableIsRejected) {
  Sst T1 = parse_sst(t1_text());
  T1.output_fn[1] = std::vector<VarString>{{7}};
  EXPECT_THROW(validate(T1), ValidationError);
  std::string text = t1_text();
  text.replace(text.find("out: q1 = X_c"), 13, "out: q1 = X_e");
  EXPECT_THROW(parse_sst(text), ParseError);
}

TEST(SstValidate, OtherStructuralErrors) {
  Sst T = parse_sst(t1_text());
  Sst bad = T;
  bad.output_fn[0] = std::vector<VarString>{{0}};
  EXPECT_THROW(validate(bad), ValidationError);  // F on a non-final state
  bad = T;
  bad.transitions.push_back(bad.transitions[0]);
  EXPECT_THROW(validate(bad), ValidationError);  // duplicate transition
  bad = T;
  bad.transitions[0].target = 9;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = T;
  bad.output_fn[1] = std::vector<VarString>{{2}, {3}};
  EXPECT_THROW(validate(bad), ValidationError);  // arity mismatch
}

TEST(SstRun, RunSubstitutionOfExample) {
  Sst T1 = parse_sst(t1_text());
  sstkit::Run r;
  r.states = {0, 1};
  r.input = {0};
  resolve_run(T1, r);
  auto s = run_substitution(T1, r);
  EXPECT_EQ(s.render(s.image(2)), "~");
  EXPECT_EQ(s.render(s.image(0)), "e");

  sstkit::Run r4;
  r4.states = {0, 1, 1, 1, 1};
  r4.input = {0, 1, 1, 1};
  resolve_run(T1, r4);
  auto s4 = run_substitution(T1, r4);
  EXPECT_EQ(s4.render(s4.image(2)), "e e e f f f");
}

TEST(SstRun, SingleTransitionRunIsItsUpdate) {
  Gen g(21);
  for (int i = 0; i < 100; ++i) {
    Sst T = random_sst(g);
    if (T.transitions.empty()) continue;
    const auto& t = T.transitions[g.below(T.transitions.size())];
    sstkit::Run r;
    r.states = {t.source, t.target};
    r.input = {t.input};
    resolve_run(T, r);
    EXPECT_EQ(run_substitution(T, r), *t.update);
  }
}

TEST(SstEvaluate, ExampleOutputs) {
  Sst T1 = parse_sst(t1_text()), T2 = parse_sst(t2_text());
  EXPECT_EQ(eval_str(T1, "0111"), std::set<std::string>{"e e e f f f"});
  EXPECT_EQ(eval_str(T2, "0111"), std::set<std::string>{"e e e f f f"});
  EXPECT_EQ(eval_str(T1, "0"), std::set<std::string>{"~"});
  EXPECT_TRUE(eval_str(T1, "111").empty());
  EXPECT_TRUE(eval_str(T1, "").empty());
}

TEST(SstEvaluate, EmptyWordUsesInitialOutput) {
  Sst T = parse_sst("sst\ninput: a\noutput: x\nstates: q\ninitial: q\nfinal: q\nvars: X\n"
                    "trans: q a q { X := X x }\nout: q = X X\n");
  EXPECT_EQ(eval_str(T, ""), std::set<std::string>{"~"});
  EXPECT_EQ(evaluate(T, word(T, "aa")).begin()->front().str(), "x x x x");
}

TEST(SstEvaluate, FinalStateWithoutOutputRejects) {
  Sst T = parse_sst("sst\ninput: a\noutput: x\nstates: q\ninitial: q\nfinal: q\nvars: X\n"
                    "trans: q a q { X := x }\n");
  EXPECT_TRUE(evaluate(T, word(T, "a")).empty());
  EXPECT_FALSE(domain_automaton(T).accepts(word(T, "a")));
}

TEST(SstEvaluate, AgreesWithRunEnumerationOracle) {
  Gen g(22);
  for (int i = 0; i < 150; ++i) {
    SstShape shape;
    shape.deterministic = i % 2 == 0;
    shape.arity = i % 3 == 0 ? 2 : 1;
    Sst T = random_sst(g, shape);
    validate(T);
    for (const auto& w : all_words(2, 5)) ASSERT_EQ(rendered(evaluate(T, w)), oracle_eval(T, w));
  }
}

TEST(SstEvaluate, AcceptingRunsProduceTheOutputs) {
  Gen g(23);
  for (int i = 0; i < 60; ++i) {
    SstShape shape;
    shape.deterministic = false;
    Sst T = random_sst(g, shape);
    for (const auto& w : all_words(2, 4)) {
      std::set<std::string> via_runs;
      for (const auto& r : accepting_runs(T, w))
        if (auto o = evaluate_run(T, r)) via_runs.insert(render_output(*o));
      EXPECT_EQ(via_runs, rendered(evaluate(T, w)));
    }
  }
}

TEST(SstCopyless, ExampleMachineIsCopyful) {
  Sst T1 = parse_sst(t1_text());
  auto rep = is_copyless(T1);
  ASSERT_FALSE(rep.copyless);
  EXPECT_EQ(describe_transition(T1, T1.transitions[*rep.transition]), "(q1, 1, q1)");
  EXPECT_EQ(T1.variables->token(*rep.variable), "X_a");
}

TEST(SstCopyless, IdentityUpdatesAreCopyless) {
  Sst T = parse_sst("sst\ninput: a\noutput: x\nstates: q\ninitial: q\nfinal: q\nvars: X Y\n"
                    "trans: q a q { X := X ; Y := Y }\nout: q = X Y\n");
  EXPECT_TRUE(is_copyless(T).copyless);
  Sst D = parse_sst("sst\ninput: a\noutput: x\nstates: q\ninitial: q\nfinal: q\nvars: X\n"
                    "trans: q a q { X := X X }\nout: q = X\n");
  EXPECT_FALSE(is_copyless(D).copyless);
}

TEST(SstDeterminism, DetectsBranching) {
  EXPECT_TRUE(is_deterministic(parse_sst(t1_text())));
  Sst N = parse_sst("sst\ninput: a\noutput: x\nstates: q p r\ninitial: q\nfinal: p r\nvars: X\n"
                    "trans: q a p { X := x }\ntrans: q a r { X := x }\nout: p = X\nout: r = X\n");
  EXPECT_FALSE(is_deterministic(N));
}

TEST(Domain, ExampleDomainIsZeroOneStar) {
  Sst T1 = parse_sst(t1_text());
  Nfa D = domain_automaton(T1);
  for (const auto& w : all_words(2, 6)) {
    bool expected = !w.empty() && w[0] == 0 && std::all_of(w.begin() + 1, w.end(), [](auto a) { return a == 1; });
    EXPECT_EQ(D.accepts(w), expected);
  }
}

TEST(Domain, NoFinalStatesMeansEmptyDomain) {
  Sst T = parse_sst("sst\ninput: a\noutput: x\nstates: q\ninitial: q\nfinal:\nvars: X\ntrans: q a q { X := x }\n");
  EXPECT_TRUE(nfa_equivalent(domain_automaton(T), Nfa(T.input, 1)).is_holds());
}

TEST(Domain, MatchesEvaluationOnRandomMachines) {
  Gen g(24);
  for (int i = 0; i < 100; ++i) {
    SstShape shape;
    shape.deterministic = i % 2 == 0;
    Sst T = random_sst(g, shape);
    Nfa D = domain_automaton(T);
    for (const auto& w : all_words(2, 6)) EXPECT_EQ(D.accepts(w), !oracle_eval(T, w).empty());
  }
}

TEST(NfaEquivalence, ReflexiveAndExampleDomains) {
  Sst T1 = parse_sst(t1_text()), T2 = parse_sst(t2_text());
  EXPECT_TRUE(nfa_equivalent(domain_automaton(T1), domain_automaton(T1)).is_holds());
  EXPECT_TRUE(nfa_equivalent(domain_automaton(T1), domain_automaton(T2)).is_holds());
}

TEST(NfaEquivalence, ShortestDifference) {
  // 0 1* versus 0 1 1*
  auto S = make_alphabet("Sigma", {"0", "1"});
  Nfa A(S, 2), B(S, 3);
  A.initial[0] = true;
  A.final[1] = true;
  A.add(0, 0, 1);
  A.add(1, 1, 1);
  B.initial[0] = true;
  B.final[2] = true;
  B.add(0, 0, 1);
  B.add(1, 1, 2);
  B.add(2, 1, 2);
  auto v = nfa_equivalent(A, B);
  ASSERT_TRUE(v.is_counterexample());
  EXPECT_EQ(v.witness->input, std::vector<std::string>{"0"});
}

TEST(NfaEquivalence, AgreesWithEnumeration) {
  Gen g(25);
  for (int i = 0; i < 100; ++i) {
    SstShape shape;
    shape.deterministic = false;
    Sst T = random_sst(g, shape), U = random_sst(g, shape);
    Nfa A = domain_automaton(T), B = domain_automaton(U);
    std::optional<std::size_t> shortest;
    for (const auto& w : all_words(2, 6))
      if (!shortest && A.accepts(w) != B.accepts(w)) shortest = w.size();
    auto v = nfa_equivalent(A, B);
    if (shortest) EXPECT_TRUE(v.is_counterexample());
    if (v.is_counterexample()) {
      if (shortest) EXPECT_EQ(v.witness->input.size(), *shortest);
      std::vector<LetterIndex> w;
      for (const auto& t : v.witness->input) w.push_back(T.input->index_of(t));
      EXPECT_NE(A.accepts(w), B.accepts(w));
    }
  }
}
