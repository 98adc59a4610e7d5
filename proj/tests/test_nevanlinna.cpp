#include <gtest/gtest.h>

#include "nrdmft/error.hpp"
#include "nrdmft/nevanlinna.hpp"
#include "support.hpp"

using namespace nrdmft;
using testsupport::uniform;

namespace {

const Complex kI(0.0, 1.0);

// Random rational Pick function p(z) = b + sum w_k / (x_k - z) with K atoms.
PickRepresentation random_pick(std::mt19937_64& rng, int k) {
  return PickRepresentation(0.0, uniform(rng, -1, 1), k == 0 ? DiscreteMeasure() : testsupport::random_measure(rng, k, uniform(rng, 0.5, 2.0), 2.0));
}

InterpolationProblem sample(const PickRepresentation& p, const std::vector<Complex>& nodes) {
  InterpolationProblem q;
  q.nodes = nodes;
  for (Complex z : nodes) q.values.push_back(p(z));
  return q;
}

std::vector<Complex> random_nodes(std::mt19937_64& rng, int n) {
  std::vector<Complex> z;
  for (int i = 0; i < n; ++i) z.emplace_back(uniform(rng, -2, 2), uniform(rng, 0.5, 2.5));
  return z;
}

// Plain double-precision Schur recursion; returns the 1-based index of the
// first pivot outside the closed disc, 0 if none.
int first_pivot_outside(const InterpolationProblem& p) {
  DiscProblem d = to_disc(p);
  int index = 1;
  while (!d.values.empty()) {
    if (std::abs(d.values.front()) > 1.0 + 1e-9) return index;
    if (d.values.size() < 2 || std::abs(d.values.front()) >= 1.0 - 1e-9) return 0;
    d = schur_step(d);
    ++index;
  }
  return 0;
}

}  // namespace

TEST(Cayley, HandValuesAndInverse) {
  EXPECT_NEAR(std::abs(cayley(kI)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(cayley(0.0) - Complex(-1.0)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(cayley_inv(cayley({2, 3})) - Complex(2, 3)), 0.0, 1e-14);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const Complex z = testsupport::random_upper(rng);
    EXPECT_LT(std::abs(cayley(z)), 1.0);
    EXPECT_NEAR(std::abs(cayley_inv(cayley(z)) - z), 0.0, 1e-14 * (1 + std::abs(z)));
    const double x = uniform(rng, -5, 5);
    EXPECT_NEAR(std::abs(cayley(x)), 1.0, 1e-15);
  }
  EXPECT_THROW(cayley(-kI), Error);
  EXPECT_THROW(cayley_inv(1.0), Error);
}

TEST(Blaschke, HandValuesAndInverse) {
  const Complex z(0.3, -0.4);
  EXPECT_EQ(blaschke(0.0, z), z);
  const Complex a(0.2, 0.5);
  EXPECT_NEAR(std::abs(blaschke(a, a)), 0.0, 1e-16);
  for (double theta : {0.0, M_PI / 2, M_PI}) EXPECT_NEAR(std::abs(blaschke(0.5, std::polar(1.0, theta))), 1.0, 1e-15);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Complex c = std::polar(uniform(rng, 0, 0.95), uniform(rng, 0, 2 * M_PI));
    const Complex w = std::polar(uniform(rng, 0, 0.99), uniform(rng, 0, 2 * M_PI));
    EXPECT_LT(std::abs(blaschke(c, w)), 1.0);
    EXPECT_NEAR(std::abs(blaschke_inverse(c, blaschke(c, w)) - w), 0.0, 1e-13);
  }
  try {
    blaschke(1.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.diagnostic(), "nevanlinna_pick.InvalidBlaschkeCenter");
  }
}

TEST(SchurStep, EqualValuesReduceToZero) {
  const DiscProblem d{{0.1, Complex(0.2, 0.3), Complex(-0.4, 0.1)}, {0.5, 0.5, 0.5}};
  const DiscProblem r = schur_step(d);
  ASSERT_EQ(r.values.size(), 2u);
  for (Complex v : r.values) EXPECT_NEAR(std::abs(v), 0.0, 1e-16);
}

TEST(SchurStep, IdentityDataReducesToOne) {
  const std::vector<Complex> z = {0.1, Complex(0.2, 0.3), Complex(-0.4, 0.1), Complex(0.0, -0.6)};
  const DiscProblem r = schur_step({z, z});
  for (Complex v : r.values) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
}

TEST(SchurStep, LiftRecoversTheOriginalValues) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const DiscProblem d = to_disc(sample(random_pick(rng, 3), random_nodes(rng, 5)));
    const DiscProblem r = schur_step(d);
    for (std::size_t k = 1; k < d.values.size(); ++k) {
      const Complex lifted = blaschke_inverse(d.values[0], blaschke(d.nodes[0], d.nodes[k]) * r.values[k - 1]);
      EXPECT_NEAR(std::abs(lifted - d.values[k]), 0.0, 1e-12);
    }
  }
  EXPECT_THROW(schur_step({{0.0, 0.5}, {1.0, 0.2}}), Error);
}

TEST(Classify, ConstantRealDataIsUniqueAtDepthOne) {
  InterpolationProblem p;
  for (int k = 0; k < 5; ++k) {
    p.nodes.emplace_back(0.3 * k - 0.5, 1.0 + 0.2 * k);
    p.values.emplace_back(1.7, 0.0);
  }
  const Classification c = classify(p);
  EXPECT_EQ(c.verdict, Verdict::UniqueSolution);
  EXPECT_EQ(c.depth, 1);
}

TEST(Classify, RationalDataIsUniqueWithinKPlusOneSteps) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = testsupport::uniform_int(rng, 0, 4);
    const PickRepresentation f = random_pick(rng, k);
    const Classification c = classify(sample(f, random_nodes(rng, static_cast<int>(f.measure.size()) + 2)));
    EXPECT_EQ(c.verdict, Verdict::UniqueSolution) << "trial " << trial;
    EXPECT_LE(c.depth, static_cast<int>(f.measure.size()) + 1);
  }
}

TEST(Classify, PerturbedDataIsInfeasibleWithTheRightWitness) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const PickRepresentation f = random_pick(rng, testsupport::uniform_int(rng, 1, 4));
    const int n = static_cast<int>(f.measure.size()) + 2;
    InterpolationProblem p = sample(f, random_nodes(rng, n));
    p.values.back() += Complex(0.0, 2.0 * 50.0);
    const Classification c = classify(p);
    ASSERT_EQ(c.verdict, Verdict::NoSolution) << "trial " << trial;
    EXPECT_EQ(c.witness, n);
  }
}

TEST(Classify, WitnessIsTheFirstPivotOutsideTheDisc) {
  // w_1 = i maps to 0, w_2 far from anything reachable by a self-map of the
  // disc fixing 0 at z_2.
  InterpolationProblem p;
  p.nodes = {kI, Complex(0.0, 2.0), Complex(1.0, 1.0)};
  p.values = {kI, Complex(0.0, 50.0), Complex(0.0, 1.0)};
  const Classification c = classify(p);
  EXPECT_EQ(c.verdict, Verdict::NoSolution);
  EXPECT_EQ(c.witness, first_pivot_outside(p));
  EXPECT_EQ(c.witness, 2);
}

TEST(Classify, AtMostKNodesAreIndeterminate) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const PickRepresentation f = random_pick(rng, 4);
    const int n = testsupport::uniform_int(rng, 1, 4);
    EXPECT_EQ(classify(sample(f, random_nodes(rng, n))).verdict, Verdict::Indeterminate);
  }
}

TEST(Classify, KPlusOneNodesAlreadyDetermineTheFunction) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    const PickRepresentation f = random_pick(rng, 3);
    const Classification c = classify(sample(f, random_nodes(rng, 4)));
    EXPECT_EQ(c.verdict, Verdict::UniqueSolution);
    EXPECT_EQ(c.depth, 4);
  }
}

TEST(Classify, MaxDepthStopsEarly) {
  std::mt19937_64 rng(24);
  const Classification c = classify(sample(random_pick(rng, 4), random_nodes(rng, 6)), 2);
  EXPECT_EQ(c.verdict, Verdict::Indeterminate);
  EXPECT_EQ(c.depth, 2);
}

TEST(Classify, RejectsInvalidProblems) {
  InterpolationProblem dup{{kI, kI}, {kI, kI}};
  try {
    classify(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.diagnostic(), "nevanlinna_pick.DuplicateNode");
  }
  EXPECT_THROW(classify({{Complex(0, -1)}, {kI}}), Error);
  EXPECT_THROW(classify({{kI}, {Complex(0, -1)}}), Error);
}

TEST(MatsubaraUniqueness, ConstantAndRandom) {
  EXPECT_EQ(matsubara_uniqueness_check(PickRepresentation(0.0, 0.4, DiscreteMeasure()), 2.0).verdict,
            Verdict::UniqueSolution);
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const DiscreteMeasure m = testsupport::random_measure(rng, 2);
    EXPECT_EQ(matsubara_uniqueness_check(PickRepresentation(0.0, 0.0, m), 3.0).verdict, Verdict::UniqueSolution);
  }
  const InterpolationProblem q = matsubara_problem(PickRepresentation(0.0, 0.0, testsupport::random_measure(rng, 3)), 3.0);
  EXPECT_EQ(q.nodes.size(), 5u);
  EXPECT_NEAR(q.nodes[1].imag(), 3.0 * M_PI / 3.0, 1e-15);
}

TEST(MatsubaraUniqueness, DuplicatedNodeRejected) {
  std::mt19937_64 rng(26);
  InterpolationProblem q = matsubara_problem(PickRepresentation(0.0, 0.0, testsupport::random_measure(rng, 3)), 3.0);
  q.nodes[2] = q.nodes[1];
  EXPECT_THROW(classify(q), Error);
}
