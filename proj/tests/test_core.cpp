#include <doctest.h>

#include "grassmann.hpp"
#include "modulevec.hpp"

using namespace wsck;

namespace {

std::vector<XiMask> all_masks(int n) {
  std::vector<XiMask> out;
  for (XiMask I = 0; I < (XiMask(1) << n); ++I) out.push_back(I);
  return out;
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(rat_str(rat(2, 4)) == "1/2");
  CHECK(rat_str(rat(-2, 4)) == "-1/2");
  CHECK(rat_parse("7") == rat(7));
  CHECK(rat_parse("-3/9") == rat(-1, 3));
  CHECK(rat_str(rat_parse("4/2")) == "2");
  CHECK_THROWS(rat_parse("1/0"));
  CHECK(binom(4, 2) == rat(6));
  CHECK(factorial(5) == rat(120));
}

TEST_CASE("grassmann products and signs") {
  int n = 3;
  auto x1 = Grassmann::xi(n, 1), x2 = Grassmann::xi(n, 2);
  CHECK(gmul(x1, x2) == Grassmann::monomial(n, 0b011));
  CHECK(gmul(x2, x1) == Grassmann::monomial(n, 0b011) * rat(-1));
  CHECK(gmul(x1, x1).zero());

  auto x12 = gmul(x1, x2);
  CHECK(gderiv(1, x12) == x2);
  CHECK(gderiv(2, x12) == x1 * rat(-1));
  CHECK(gderiv(1, Grassmann::one(n)).zero());
}

TEST_CASE("grassmann parity") {
  int n = 2;
  CHECK(*Grassmann::monomial(n, 0b11).parity() == 0);
  CHECK(*Grassmann::xi(n, 1).parity() == 1);
  auto mixed = Grassmann::xi(n, 1) + Grassmann::monomial(n, 0b11);
  CHECK(!mixed.parity().has_value());
}

TEST_CASE("gmul associative and super-commutative, n<=4") {
  for (int n = 1; n <= 4; ++n) {
    auto masks = all_masks(n);
    for (XiMask I : masks)
      for (XiMask J : masks) {
        auto a = Grassmann::monomial(n, I);
        auto b = Grassmann::monomial(n, J);
        int s = ((mask_size(I) & mask_size(J)) & 1) ? -1 : 1;
        CHECK(gmul(a, b) == gmul(b, a) * rat(s));
        for (XiMask K : masks) {
          auto c = Grassmann::monomial(n, K);
          CHECK(gmul(gmul(a, b), c) == gmul(a, gmul(b, c)));
        }
      }
  }
}

TEST_CASE("gderiv odd Leibniz rule and anticommutation, n<=3") {
  for (int n = 1; n <= 3; ++n) {
    auto masks = all_masks(n);
    for (int i = 1; i <= n; ++i) {
      for (XiMask I : masks)
        for (XiMask J : masks) {
          auto a = Grassmann::monomial(n, I);
          auto b = Grassmann::monomial(n, J);
          int s = (mask_size(I) & 1) ? -1 : 1;
          CHECK(gderiv(i, gmul(a, b)) ==
                gmul(gderiv(i, a), b) + gmul(a, gderiv(i, b)) * rat(s));
        }
      for (int j = 1; j <= n; ++j)
        for (XiMask I : masks) {
          auto a = Grassmann::monomial(n, I);
          CHECK((gderiv(i, gderiv(j, a)) + gderiv(j, gderiv(i, a))).zero());
        }
    }
  }
}

TEST_CASE("subst_skew expansions") {
  auto basis = std::make_shared<GradedBasis>();
  basis->add("b", 0);

  // p = la * b  ->  -la*b - d*b
  LambdaValued p(basis);
  p.add_term(1, 0, 0, rat(1));
  LambdaValued q = subst_skew(p);
  CHECK(q.lambda_coeff(1) == ModuleVector::unit(basis, 0) * rat(-1));
  CHECK(q.lambda_coeff(0) == ModuleVector::unit(basis, 0, 1) * rat(-1));

  // constants are fixed
  LambdaValued c0(basis);
  c0.add_term(0, 2, 0, rat(5));
  CHECK(subst_skew(c0) == c0);

  // p = -(d + 2 mu) b  ->  (d + 2 la) b
  LambdaValued r(basis);
  r.add_term(0, 1, 0, rat(-1));
  r.add_term(1, 0, 0, rat(-2));
  LambdaValued rr = subst_skew(r);
  LambdaValued expect(basis);
  expect.add_term(0, 1, 0, rat(1));
  expect.add_term(1, 0, 0, rat(2));
  CHECK(rr == expect);
}

TEST_CASE("subst_skew is involutive on samples") {
  auto basis = std::make_shared<GradedBasis>();
  basis->add("b", 0);
  for (int j = 0; j <= 4; ++j) {
    LambdaValued p(basis);
    p.add_term(j, 1, 0, rat(3));
    p.add_term(j / 2, 0, 0, rat(-7, 2));
    CHECK(subst_skew(subst_skew(p)) == p);
  }
}

TEST_CASE("subst_sum binomial expansion") {
  auto basis = std::make_shared<GradedBasis>();
  basis->add("v", 0);

  LambdaValued p(basis);
  p.add_term(2, 0, 0, rat(1));  // nu^2 v
  BiLambdaValued b = subst_sum(p);
  BiLambdaValued expect(basis);
  expect.add_term(2, 0, 0, 0, rat(1));
  expect.add_term(1, 1, 0, 0, rat(2));
  expect.add_term(0, 2, 0, 0, rat(1));
  CHECK(b == expect);

  LambdaValued c(basis);
  c.add_term(0, 0, 0, rat(4));
  CHECK(subst_sum(c).terms().size() == 1);

  LambdaValued q(basis);
  q.add_term(1, 1, 0, rat(1));  // nu * (d v)
  BiLambdaValued bq = subst_sum(q);
  BiLambdaValued eq(basis);
  eq.add_term(1, 0, 1, 0, rat(1));
  eq.add_term(0, 1, 1, 0, rat(1));
  CHECK(bq == eq);
}
