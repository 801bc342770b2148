#include <gtest/gtest.h>

#include "normaloid/classes.hpp"
#include "normaloid/errors.hpp"
#include "normaloid/generators.hpp"
#include "normaloid/transforms.hpp"

using namespace normaloid;

namespace {

ClassVerdict defining_predicate(GeneratorClass g, const ComplexMatrix& m) {
  switch (g) {
    case GeneratorClass::random: return is_posinormal(m);  // invertible almost surely
    case GeneratorClass::unitary: return is_unitary(m);
    case GeneratorClass::normal: return is_normal(m);
    case GeneratorClass::psd: return is_positive(m);
    case GeneratorClass::self_adjoint: return is_self_adjoint(m);
    case GeneratorClass::partial_isometry: return is_partial_isometry(m);
    case GeneratorClass::quasinormal_partial_isometry: {
      ClassVerdict v = is_quasinormal(m);
      v.member = v.member && is_partial_isometry(m).member;
      return v;
    }
    case GeneratorClass::binormal: return is_binormal(m);
    case GeneratorClass::normaloid: return is_normaloid(m);
    case GeneratorClass::posinormal: return is_posinormal(m);
  }
  return {};
}

}  // namespace

TEST(Generators, NamesRoundTrip) {
  for (GeneratorClass g : all_generator_classes()) {
    EXPECT_EQ(generator_class_from_string(to_string(g)), g);
  }
  EXPECT_THROW(generator_class_from_string("hyponormal"), InvalidParameter);
}

TEST(Generators, OutputsSatisfyTheirClass) {
  for (GeneratorClass g : all_generator_classes()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      GeneratorSpec spec;
      spec.generator = g;
      spec.dimension = 1 + static_cast<int>(seed % 5);
      spec.seed = seed;
      if (g == GeneratorClass::partial_isometry ||
          g == GeneratorClass::quasinormal_partial_isometry) {
        spec.rank = static_cast<int>(seed % (spec.dimension + 1));
      }
      const ComplexMatrix m = generate(spec);
      ASSERT_EQ(m.rows(), spec.dimension);
      ASSERT_EQ(m.cols(), spec.dimension);
      EXPECT_TRUE(defining_predicate(g, m).member) << to_string(g) << " seed " << seed;
    }
  }
}

TEST(Generators, DeterministicPerSeed) {
  for (GeneratorClass g : all_generator_classes()) {
    GeneratorSpec spec;
    spec.generator = g;
    spec.dimension = 4;
    spec.seed = 77;
    EXPECT_EQ(generate(spec), generate(spec));
    GeneratorSpec other = spec;
    other.seed = 78;
    EXPECT_NE(generate(spec), generate(other)) << to_string(g);
  }
}

TEST(Generators, BinormalMeetsPowerInequalityPremise) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ComplexMatrix t = gen_binormal(4, seed);
    const ClassVerdict pos = is_posinormal(t);
    ASSERT_TRUE(pos.lambda_min.has_value());
    EXPECT_NO_THROW(power_inequality_check(t, *pos.lambda_min, 2));
  }
}

TEST(Generators, RankedBinormalHasRank) {
  const ComplexMatrix t = gen_binormal(5, 3, 2);
  EXPECT_TRUE(is_binormal(t).member);
  EXPECT_EQ(Eigen::JacobiSVD<ComplexMatrix>(t).rank(), 2);
}

TEST(Generators, InvalidSpecs) {
  GeneratorSpec spec;
  spec.dimension = 0;
  EXPECT_THROW(generate(spec), InvalidParameter);
  spec.dimension = 4;
  spec.generator = GeneratorClass::partial_isometry;
  spec.rank = 5;
  EXPECT_THROW(generate(spec), InvalidParameter);
  spec.rank = 2;
  spec.spectrum_scale = -1.0;
  EXPECT_THROW(generate(spec), InvalidParameter);
}
