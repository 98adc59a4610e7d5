#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "nrdmft/error.hpp"
#include "nrdmft/measure.hpp"
#include "nrdmft/measure_io.hpp"
#include "support.hpp"

using namespace nrdmft;
using testsupport::random_measure;
using testsupport::uniform;

namespace {

std::string diagnostic_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.diagnostic();
  }
  return "";
}

}  // namespace

TEST(DiscreteMeasure, SortsMergesAndDropsZeros) {
  const DiscreteMeasure m({{2.0, 0.5}, {-1.0, 0.25}, {0.0, 0.0}, {2.0 + 1e-14, 0.5}});
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].position, -1.0);
  EXPECT_NEAR(m[1].position, 2.0, 1e-13);
  EXPECT_DOUBLE_EQ(m[1].weight, 1.0);
  EXPECT_DOUBLE_EQ(m.mass(), 1.25);
}

TEST(DiscreteMeasure, MergedAtomSitsAtBarycenter) {
  const DiscreteMeasure m({{1.0, 3.0}, {1.0 + 1e-12, 1.0}});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_NEAR(m[0].position, 1.0 + 0.25e-12, 1e-15);
}

TEST(DiscreteMeasure, RejectsNegativeAndNonFinite) {
  EXPECT_EQ(diagnostic_of([] { DiscreteMeasure({{0.0, -1e-3}}); }), "measure_core.NegativeWeight");
  EXPECT_EQ(diagnostic_of([] { DiscreteMeasure({{NAN, 1.0}}); }), "measure_core.NonFiniteAtom");
  EXPECT_EQ(diagnostic_of([] { DiscreteMeasure({{0.0, INFINITY}}); }), "measure_core.NonFiniteAtom");
}

TEST(CauchyTransform, HandValues) {
  EXPECT_NEAR(std::abs(cauchy_transform(DiscreteMeasure::dirac(0.0), {0, 1}) - Complex(0, -1)), 0.0, 1e-15);
  const DiscreteMeasure pair({{-1.0, 0.5}, {1.0, 0.5}});
  EXPECT_NEAR(std::abs(cauchy_transform(pair, {2.0, 1e-300}) - 2.0 / 3.0), 0.0, 1e-15);
  EXPECT_EQ(cauchy_transform(DiscreteMeasure(), {0.3, 0.7}), Complex(0.0));
  EXPECT_EQ(diagnostic_of([&] { cauchy_transform(pair, 1.0); }), "measure_core.RealArgument");
}

TEST(CauchyTransform, PickSignAndReflection) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const DiscreteMeasure m = random_measure(rng, testsupport::uniform_int(rng, 1, 8), uniform(rng, 0.1, 3.0));
    const Complex z = testsupport::random_upper(rng);
    const Complex g = cauchy_transform(m, z);
    EXPECT_LT(g.imag(), 0.0);
    EXPECT_NEAR(std::abs(cauchy_transform(m, std::conj(z)) - std::conj(g)), 0.0, 1e-14);
  }
}

TEST(Moment, HandValues) {
  EXPECT_DOUBLE_EQ(moment(DiscreteMeasure::dirac(1.7), 1), 1.7);
  const DiscreteMeasure pair({{-1.0, 0.5}, {1.0, 0.5}});
  EXPECT_DOUBLE_EQ(moment(pair, 2), 1.0);
  EXPECT_DOUBLE_EQ(moment(pair, 1), 0.0);
  EXPECT_DOUBLE_EQ(moment(pair, 0), pair.mass());
}

TEST(Convolve, MassCommutativityAssociativity) {
  std::mt19937_64 rng(5);
  auto close = [](const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i].position - b[i].position) > 1e-12 || std::abs(a[i].weight - b[i].weight) > 1e-12)
        return false;
    return true;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const DiscreteMeasure a = random_measure(rng, 3, 0.7);
    const DiscreteMeasure b = random_measure(rng, 4, 1.3);
    const DiscreteMeasure c = random_measure(rng, 2, 0.4);
    EXPECT_NEAR(convolve(a, b).mass(), a.mass() * b.mass(), 1e-14);
    EXPECT_TRUE(close(convolve(a, b), convolve(b, a)));
    EXPECT_TRUE(close(convolve(convolve(a, b), c), convolve(a, convolve(b, c))));
  }
  const DiscreteMeasure d = convolve(DiscreteMeasure({{-1, 0.5}, {1, 0.5}}), DiscreteMeasure({{-1, 0.5}, {1, 0.5}}));
  ASSERT_EQ(d.size(), 3u);
  EXPECT_DOUBLE_EQ(d[1].weight, 0.5);
}

TEST(Fermi, NoOverflowAndRoundTrip) {
  EXPECT_DOUBLE_EQ(fermi_factor(1e3, 10.0), 1.0);
  EXPECT_EQ(fermi_factor(1e3, -10.0), std::exp(-1e4) / (1.0 + std::exp(-1e4)));
  EXPECT_DOUBLE_EQ(fermi_factor(2.0, 0.0), 0.5);
  EXPECT_NEAR(fermi_factor(0.7, 1.3) + fermi_factor(0.7, -1.3), 1.0, 1e-15);
  std::mt19937_64 rng(2);
  const DiscreteMeasure m = random_measure(rng, 6);
  const DiscreteMeasure back =
      fermi_reweight(fermi_reweight(m, 3.0, FermiMode::Divide), 3.0, FermiMode::Multiply);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(back[i].weight, m[i].weight, 1e-15);
  EXPECT_EQ(diagnostic_of([&] { fermi_reweight(m, 0.0, FermiMode::Divide); }), "measure_core.NonPositiveBeta");
}

TEST(Wasserstein, HandValues) {
  const DiscreteMeasure two({{0.0, 0.5}, {2.0, 0.5}});
  EXPECT_NEAR(wasserstein2(two, DiscreteMeasure::dirac(1.0)), 1.0, 1e-15);
  EXPECT_EQ(wasserstein2(two, two), 0.0);
  EXPECT_NEAR(wasserstein2(DiscreteMeasure::dirac(-0.3), DiscreteMeasure::dirac(1.2)), 1.5, 1e-15);
  // p delta_a + (1-p) delta_b against delta_c.
  const double p = 0.3, a = -1.0, b = 2.5, c = 0.4;
  EXPECT_NEAR(wasserstein2(DiscreteMeasure({{a, p}, {b, 1 - p}}), DiscreteMeasure::dirac(c)),
              std::sqrt(p * (a - c) * (a - c) + (1 - p) * (b - c) * (b - c)), 1e-15);
  EXPECT_EQ(diagnostic_of([&] { wasserstein2(two.scaled(2.0), two); }), "measure_core.NotProbability");
}

TEST(Wasserstein, AgreesWithQuantileIntegration) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const DiscreteMeasure a = random_measure(rng, testsupport::uniform_int(rng, 1, 12));
    const DiscreteMeasure b = random_measure(rng, testsupport::uniform_int(rng, 1, 12));
    EXPECT_NEAR(wasserstein2(a, b), testsupport::quantile_w2(a, b), 1e-12);
  }
}

TEST(Wasserstein, MetricAxioms) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const DiscreteMeasure a = random_measure(rng, testsupport::uniform_int(rng, 1, 8));
    const DiscreteMeasure b = random_measure(rng, testsupport::uniform_int(rng, 1, 8));
    const DiscreteMeasure c = random_measure(rng, testsupport::uniform_int(rng, 1, 8));
    const double ab = wasserstein2(a, b), bc = wasserstein2(b, c), ac = wasserstein2(a, c);
    EXPECT_EQ(wasserstein2(a, a), 0.0);
    EXPECT_GT(ab, 0.0);
    EXPECT_NEAR(ab, wasserstein2(b, a), 1e-14);
    EXPECT_LE(ac, ab + bc + 1e-14);
  }
}

TEST(Compress, SmallMeasuresUnchanged) {
  std::mt19937_64 rng(1);
  const DiscreteMeasure m = random_measure(rng, 5);
  const Compression c = compress(m, 5);
  EXPECT_EQ(c.measure, m);
  EXPECT_EQ(c.cost, 0.0);
  EXPECT_EQ(c.merges, 0u);
}

TEST(Compress, PairToBarycenter) {
  const Compression c = compress(DiscreteMeasure({{-1.0, 0.5}, {1.0, 0.5}}), 1);
  ASSERT_EQ(c.measure.size(), 1u);
  EXPECT_EQ(c.measure[0].position, 0.0);
  EXPECT_EQ(c.measure[0].weight, 1.0);
  EXPECT_DOUBLE_EQ(c.cost, 1.0);
}

TEST(Compress, PreservesMassAndMeanAndBoundsTransport) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const DiscreteMeasure m = random_measure(rng, 100);
    const Compression c = compress(m, 10);
    EXPECT_EQ(c.measure.size(), 10u);
    EXPECT_EQ(c.merges, 90u);
    EXPECT_NEAR(c.measure.mass(), m.mass(), 1e-15);
    EXPECT_NEAR(moment(c.measure, 1), moment(m, 1), 1e-15);
    EXPECT_NEAR(moment(m, 2) - moment(c.measure, 2), c.cost, 1e-13);
    const double w2 = wasserstein2(m, c.measure);
    EXPECT_LE(w2 * w2, c.cost * (1 + 1e-12) + 1e-15);
    EXPECT_EQ(compress(c.measure, 10).measure, c.measure);
  }
}

TEST(Compress, MatchesQuadraticGreedyReference) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const DiscreteMeasure m = random_measure(rng, 40);
    std::vector<Atom> ref(m.atoms().begin(), m.atoms().end());
    while (ref.size() > 7) {
      std::size_t best = 0;
      double best_cost = INFINITY;
      for (std::size_t i = 0; i + 1 < ref.size(); ++i) {
        const double d = ref[i].position - ref[i + 1].position;
        const double cost = ref[i].weight * ref[i + 1].weight * d * d / (ref[i].weight + ref[i + 1].weight);
        if (cost < best_cost) {
          best_cost = cost;
          best = i;
        }
      }
      const double w = ref[best].weight + ref[best + 1].weight;
      ref[best] = {(ref[best].weight * ref[best].position + ref[best + 1].weight * ref[best + 1].position) / w, w};
      ref.erase(ref.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    }
    const DiscreteMeasure out = compress(m, 7).measure;
    ASSERT_EQ(out.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      EXPECT_NEAR(out[i].position, ref[i].position, 1e-13);
      EXPECT_NEAR(out[i].weight, ref[i].weight, 1e-15);
    }
  }
}

TEST(MeasureFile, RoundTripIsExact) {
  std::mt19937_64 rng(3);
  const DiscreteMeasure m = random_measure(rng, 9, 0.37);
  EXPECT_EQ(parse_measure(format_measure(m)), m);
  const auto path = std::filesystem::temp_directory_path() / "nrdmft_roundtrip.json";
  write_measure_file(path, m);
  EXPECT_EQ(read_measure_file(path), m);
  std::filesystem::remove(path);
}

TEST(MeasureFile, DiagnosticsNameTheLine) {
  try {
    parse_measure("{\n  \"atoms\": [[0, 1],\n  ]\n}", "m.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.diagnostic(), "measure_core.MalformedMeasureFile");
    EXPECT_NE(std::string(e.what()).find("m.json: line 3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(diagnostic_of([] { parse_measure(R"({"atoms": [[0, 0.5]], "mass_check": 1.0})"); }),
            "measure_core.MassCheckFailed");
  EXPECT_EQ(diagnostic_of([] { parse_measure(R"({"atoms": [[0, -0.5]]})"); }), "measure_core.NegativeWeight");
  EXPECT_EQ(diagnostic_of([] { parse_measure(R"({"atoms": [[0]]})"); }), "measure_core.MalformedMeasureFile");
  EXPECT_EQ(diagnostic_of([] { parse_measure(R"({"atom": []})"); }), "measure_core.MalformedMeasureFile");
}

TEST(CompressSymmetric, KeepsReflectionSymmetry) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const DiscreteMeasure half = random_measure(rng, testsupport::uniform_int(rng, 5, 40), 0.4);
    DiscreteMeasure m = half + half.reflected();
    if (trial % 2 == 1) m = m + DiscreteMeasure::dirac(0.0, 0.2);
    const std::size_t n_max = static_cast<std::size_t>(testsupport::uniform_int(rng, 4, 30));
    const Compression c = compress_symmetric(m, n_max);
    const DiscreteMeasure r = c.measure.reflected();
    ASSERT_EQ(r.size(), c.measure.size());
    ASSERT_LE(c.measure.size(), n_max);
    for (std::size_t k = 0; k < r.size(); ++k) {
      EXPECT_EQ(r[k].position, c.measure[k].position);
      EXPECT_EQ(r[k].weight, c.measure[k].weight);
    }
    EXPECT_NEAR(c.measure.mass(), m.mass(), 1e-12);
    EXPECT_NEAR(moment(c.measure, 2), moment(m, 2) - c.cost, 1e-10);
  }
}

TEST(CompressSymmetric, FallsBackOnAsymmetricInput) {
  const DiscreteMeasure m({{-1.0, 0.2}, {0.1, 0.3}, {0.5, 0.1}, {2.0, 0.4}});
  const Compression a = compress_symmetric(m, 2), b = compress(m, 2);
  EXPECT_EQ(a.measure.atoms().size(), b.measure.atoms().size());
  for (std::size_t k = 0; k < a.measure.size(); ++k) EXPECT_EQ(a.measure[k], b.measure[k]);
  EXPECT_EQ(a.cost, b.cost);
}
