#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polyscar/cf.hpp"

using namespace polyscar;

TEST_CASE("Ratio normalization is idempotent and sign-canonical") {
  Ratio r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  Ratio again(r.num(), r.den());
  CHECK(again == r);
  CHECK(Ratio(0, 7) == Ratio(0));
  CHECK(Ratio(0).den() == 1);
}

TEST_CASE("Ratio parsing") {
  CHECK(Ratio::parse("3/8") == Ratio(3, 8));
  CHECK(Ratio::parse("-12.5") == Ratio(-25, 2));
  CHECK(Ratio::parse(" 1.25 ") == Ratio(5, 4));
  CHECK(Ratio::parse("42") == Ratio(42));
  CHECK_THROWS_AS(Ratio::parse(""), Error);
}

TEST_CASE("continued fraction convergents of sqrt2") {
  auto cf = convergents("sqrt2", 10);
  REQUIRE(cf.convergents.size() == 10);
  CHECK(cf.convergents.front() == Ratio(1, 1));
  CHECK(cf.convergents[1] == Ratio(3, 2));
  CHECK(cf.best() == Ratio(3363, 2378));

  // denominators strictly increase
  for (size_t k = 1; k < cf.convergents.size(); ++k)
    CHECK(cf.convergents[k].den() > cf.convergents[k - 1].den());

  // |sqrt2 - 1| < 1/2 for the first convergent
  CHECK(cf.epsilons.front() < Ratio(1, 2));

  // 1/(3 sqrt2 q^2) < eps < 1/(2 q^2), exact arithmetic
  for (size_t k = 0; k < cf.convergents.size(); ++k) {
    const Ratio& eps = cf.epsilons[k];
    Ratio q2(cf.convergents[k].den() * cf.convergents[k].den());
    CHECK(eps * Ratio(2) * q2 < Ratio(1));
    Ratio t = eps * Ratio(3) * q2;
    CHECK(Ratio(2) * t * t > Ratio(1)); // t * sqrt2 > 1
  }

  // |sqrt2 - 3363/2378| < 1/3363^2
  CHECK(cf.epsilons.back() * Ratio(BigInt(3363) * 3363) < Ratio(1));
}

TEST_CASE("convergents error paths") {
  CHECK_THROWS_AS(convergents("sqrt2", 0), Error);
  CHECK_THROWS_AS(convergents("golden-ratio", 3), Error);
  // a decimal literal is a supported target
  auto cf = convergents("decimal:0.5", 1);
  CHECK(cf.convergents.front() == Ratio(0));
}

TEST_CASE("approximate_angle") {
  CHECK(approximate_angle(Ratio(1, 2), Ratio(1, 1000)) == Ratio(1, 2));
  CHECK(approximate_angle(Ratio(3, 8), Ratio(1, 1000)) == Ratio(3, 8));
  // pi/sqrt2: angle/pi = 1/sqrt2, tolerance 1e-7 -> 2378/3363
  Ratio got = approximate_angle(std::string("1/sqrt2"), Ratio(1, 10000000));
  CHECK(got == Ratio(2378, 3363));
  // the q of the result is minimal: the previous convergent misses 1e-7
  Ratio prev(985, 1393);
  Ratio target = Ratio::parse(constants::INV_SQRT2);
  CHECK((target - prev).abs() > Ratio(1, 10000000));
  // tolerance below the precision floor -> resource error
  CHECK_THROWS_AS(approximate_angle(std::string("1/sqrt2"),
                                    Ratio(BigInt(1), boost::multiprecision::pow(BigInt(10), 48))),
                  Error);
}

TEST_CASE("reduce_period witnesses") {
  auto w = reduce_period(Ratio(7, 5), BigInt(5));
  REQUIRE(w.chain.size() == 2);
  CHECK(w.chain[0] == 2);
  CHECK(w.chain[1] == 1);
  CHECK(w.certified == Ratio(1, 5));

  // divisor 1: empty chain, D1 itself
  CHECK(reduce_period(Ratio(4, 1), BigInt(1)).chain.empty());

  // exact divisibility: single step b1 = 0
  auto w0 = reduce_period(Ratio(10, 1), BigInt(5));
  REQUIRE(w0.chain.size() == 1);
  CHECK(w0.chain[0] == 0);

  CHECK_THROWS_AS(reduce_period(Ratio(7, 5), BigInt(0)), Error);
}

TEST_CASE("reduce_period certificate against brute-force lattice search") {
  // The sublattice {a*(P/Q) + b : a,b integer} equals (1/Q) Z for coprime P,Q;
  // confirm 1/Q is reached by bounded integer combinations.
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    long Q = 2 + long(rng() % 49);
    long P;
    do { P = 1 + long(rng() % 400); } while (std::gcd(P, Q) != 1);
    auto w = reduce_period(Ratio(P, Q), BigInt(Q));
    CHECK((w.chain.empty() || w.chain.back() == 1 || w.chain.back() == 0));
    bool reached = false;
    for (long a = -Q; a <= Q && !reached; ++a) {
      // a*(P/Q) + b = 1/Q  <=>  b = (1 - a P)/Q
      long num = 1 - a * P;
      if (num % Q == 0) reached = true;
    }
    CHECK(reached);
  }
}

TEST_CASE("lcm_list") {
  CHECK(lcm_list({BigInt(8), BigInt(8), BigInt(2)}) == 8);
  CHECK(lcm_list({BigInt(2), BigInt(2), BigInt(2), BigInt(2)}) == 2);
  CHECK(lcm_list({BigInt(1)}) == 1);
  CHECK_THROWS_AS(lcm_list({}), Error);
}
TEST_CASE("convergents of sqrt3") {
  auto cf = convergents("sqrt3", 6);
  CHECK(cf.convergents[0] == Ratio(1));
  CHECK(cf.convergents[1] == Ratio(2));
  CHECK(cf.convergents[2] == Ratio(5, 3));
  CHECK(cf.convergents[5] == Ratio(26, 15));
}
