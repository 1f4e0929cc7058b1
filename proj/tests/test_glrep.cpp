#include <doctest.h>

#include "glrep.hpp"

using namespace wsck;

TEST_CASE("standard rep validates; mutation fails") {
  for (int n = 1; n <= 3; ++n) {
    GlRep V = build_standard(n);
    CHECK(validate_glrep(V).pass());

    // {E_01, E_10} = E_00 + E_11 on the standard rep
    // (covered by validate, but check the anticommutator entry directly)
    CHECK(V.mat(0, 1)[0][1] == rat(1));
    CHECK(V.mat(1, 0)[1][0] == rat(1));

    GlRep bad = V;
    bad.parity[1] = 0;  // flip the parity of e_1
    CHECK(!validate_glrep(bad).pass());
  }
}

TEST_CASE("constant-coefficient form reps") {
  // dims: number of monomials dt^a dxi^beta with a + |beta| = k
  CHECK(build_forms_const(0, 2).dim == 1);
  CHECK(build_forms_const(1, 2).dim == 3);
  CHECK(build_forms_const(2, 2).dim == 5);
  CHECK(build_forms_const(3, 3).dim == 16);

  for (int n = 2; n <= 3; ++n)
    for (int k = 0; k <= 3; ++k) {
      GlRep V = build_forms_const(k, n);
      INFO("n=", n, " k=", k);
      CHECK(validate_glrep(V).pass());
    }
}

TEST_CASE("dual rep and highest weights of Theta^k") {
  for (int n = 2; n <= 3; ++n)
    for (int k = 0; k <= 3; ++k) {
      GlRep Th = build_dual_rep(build_forms_const(k, n));
      INFO("n=", n, " k=", k);
      CHECK(validate_glrep(Th).pass());
      auto hw = Th.highest_vectors();
      REQUIRE(hw.size() == 1);
      // highest weight (0; 0, ..., 0, -k)
      std::vector<Rational> expect(n + 1, rat(0));
      expect[n] = rat(-k);
      CHECK(Th.weight[hw[0]] == expect);
    }
}

TEST_CASE("bar forms highest weights") {
  for (int n = 2; n <= 3; ++n) {
    for (int k = 1; k <= 3; ++k) {
      GlRep Om = build_bar_forms(k, n);
      INFO("n=", n, " k=", k);
      CHECK(validate_glrep(Om).pass());
      auto hw = Om.highest_vectors();
      REQUIRE(hw.size() == 1);
      std::vector<Rational> expect(n + 1, rat(1));
      expect[0] = rat(0);
      expect[1] = rat(k);
      CHECK(Om.weight[hw[0]] == expect);
    }
    GlRep Om0 = build_bar_forms(0, n);
    CHECK(validate_glrep(Om0).pass());
    std::vector<Rational> expect(n + 1, rat(0));
    expect[0] = rat(-1);
    CHECK(Om0.weight[0] == expect);
  }
}

TEST_CASE("forms_const(0) is the trivial rep") {
  GlRep V = build_forms_const(0, 2);
  CHECK(V.dim == 1);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) CHECK(is_zero(V.mat(i, j)[0][0]));
}

TEST_CASE("sl restriction validates") {
  for (int n = 2; n <= 3; ++n) {
    CHECK(validate_glrep(sl_restrict(build_standard(n))).pass());
    CHECK(validate_glrep(sl_restrict(build_bar_forms(1, n))).pass());
    CHECK(
        validate_glrep(sl_restrict(build_dual_rep(build_forms_const(2, n))))
            .pass());
  }
}

TEST_CASE("character rep") {
  GlRep C = character_rep(2, rat(-1));
  CHECK(validate_glrep(C).pass());
  CHECK(C.mat(0, 0)[0][0] == rat(-1));
  CHECK(C.mat(1, 1)[0][0] == rat(1));
}

TEST_CASE("json round trip") {
  GlRep V = build_dual_rep(build_forms_const(1, 2));
  std::string txt = glrep_to_json(V);
  GlRep W = glrep_from_json(txt);
  CHECK(W.dim == V.dim);
  CHECK(W.parity == V.parity);
  CHECK(W.weight == V.weight);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) CHECK(W.mat(i, j) == V.mat(i, j));
  CHECK(validate_glrep(W).pass());

  CHECK_THROWS(glrep_from_json("{\"n\": 2}"));
  CHECK_THROWS(glrep_from_json("not json"));
}
