#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "twf/polynomial.hpp"

using twf::Polynomial;

TEST_CASE("evaluation and trimming") {
  Polynomial p{1.0, -2.0, 0.5, 0.0, 0.0};
  CHECK(p.degree() == 2);
  CHECK(p(0.0) == 1.0);
  CHECK(p(2.0) == doctest::Approx(1.0 - 4.0 + 2.0));
  CHECK(Polynomial{}.degree() == -1);
  CHECK(Polynomial{0.0, 0.0}.is_zero());
}

TEST_CASE("derivative and antiderivative invert each other") {
  Polynomial p{3.0, 0.0, -1.5, 1.0};
  CHECK(p.derivative() == Polynomial{0.0, -3.0, 3.0});
  CHECK(p.derivative().antiderivative() == Polynomial{0.0, 0.0, -1.5, 1.0});
}

TEST_CASE("lowest degree and division by x") {
  Polynomial q{0.0, 0.0, 0.0, 1.0, -1.0};
  CHECK(q.lowest_degree() == 3);
  CHECK(q.divided_by_x() == Polynomial{0.0, 0.0, 1.0, -1.0});
  CHECK_THROWS_AS((void)Polynomial({1.0, 1.0}).divided_by_x(), std::invalid_argument);
}

TEST_CASE("reflection p(1 - t)") {
  Polynomial q{0.0, 0.0, 0.0, 1.0, -1.0};  // phi^3 (1 - phi)
  Polynomial r = q.reflected();
  for (double t : {0.0, 0.1, 0.37, 1.0}) CHECK(r(t) == doctest::Approx(q(1.0 - t)).epsilon(1e-14));
  CHECK(r.lowest_degree() == 1);
  CHECK(r.coefficient(1) == doctest::Approx(1.0));
}

TEST_CASE("arithmetic") {
  Polynomial a{0.0, 1.0};
  Polynomial b{1.0, -1.0};
  CHECK(a * b == Polynomial{0.0, 1.0, -1.0});
  CHECK(a + b == Polynomial{1.0});
  CHECK(a - a == Polynomial{});
  CHECK(2.0 * b == Polynomial{2.0, -2.0});
}
