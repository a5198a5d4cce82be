#include <gtest/gtest.h>

#include <cmath>

#include "droplet/model.hpp"
#include "support.hpp"

namespace droplet {
namespace {

TEST(Phi, ReferenceValues) {
  EXPECT_NEAR(phi(1.0, 1.0), 0.6321205588285576784, 1e-15);
  EXPECT_NEAR(phi(0.2, 1.0), 0.90634623461009070665, 1e-15);
  EXPECT_EQ(phi(0.0, 2.5), 2.5);
  EXPECT_EQ(phi(0.7, 0.0), 0.0);
}

TEST(Phi, SmallMuKeepsRelativeAccuracy) {
  // (1 - e^{-x})/x ~ 1 - x/2 for tiny x
  const double mu = 1e-12;
  EXPECT_NEAR(phi(mu, 1.0), 1.0 - 0.5 * mu, 1e-16);
}

TEST(Phi, BoundedByTAndInverseMu) {
  auto g = testing::rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double mu = testing::uniform(g, 0.0, 10.0);
    const double t = testing::uniform(g, 0.0, 50.0);
    const double v = phi(mu, t);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, t * (1.0 + 1e-15));
    if (mu > 0.0) {
      EXPECT_LE(v, (1.0 / mu) * (1.0 + 1e-15));
    }
  }
}

TEST(Phi, RejectsNegativeArguments) {
  EXPECT_THROW((void)phi(-1.0, 1.0), DomainError);
  EXPECT_THROW((void)phi(1.0, -1.0), DomainError);
  EXPECT_THROW((void)phi_growth(1.0, -1.0), DomainError);
}

TEST(PhiGrowth, EqualsPhiTimesExp) {
  for (double mu : {0.0, 0.2, 1.0, 4.0}) {
    for (double t : {0.0, 0.3, 1.0, 5.0}) {
      EXPECT_NEAR(phi_growth(mu, t), phi(mu, t) * std::exp(mu * t),
                  1e-14 * std::exp(mu * t) * (1.0 + t));
    }
  }
}

TEST(RelaxVelocity, ReferenceValue) {
  EXPECT_NEAR(relax_velocity(1.5, {0.2, 1.0}, 1.0), 1.4093653765389909293, 1e-15);
}

TEST(RelaxVelocity, InitialValueAndLimits) {
  const ModelParams p{1.0, 0.2};
  EXPECT_EQ(relax_velocity(3.0, p, 0.0), 3.0);
  EXPECT_NEAR(relax_velocity(3.0, p, 100.0), 0.2, 1e-12);
  EXPECT_EQ(relax_velocity(3.0, {0.0, 0.2}, 7.0), 3.0);
  EXPECT_EQ(relax_velocity(0.2, p, 7.0), 0.2);
  EXPECT_THROW((void)relax_velocity(1.0, p, -1.0), DomainError);
}

TEST(CharacteristicPosition, ReferenceValue) {
  EXPECT_NEAR(characteristic_position(-1.0, 1.0, {1.0, 0.2}, 1.0), -0.29430355293715385728,
              1e-15);
}

TEST(CharacteristicPosition, MatchesQuadratureOfVelocity) {
  auto g = testing::rng(12);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p{testing::uniform(g, 0.0, 5.0), testing::uniform(g, -2.0, 2.0)};
    const double x0 = testing::uniform(g, -1.0, 1.0);
    const double u0 = testing::uniform(g, -3.0, 3.0);
    const double t = testing::uniform(g, 0.0, 4.0);
    // composite Simpson on the velocity, 2000 intervals
    const int m = 2000;
    const double h = t / m;
    double s = relax_velocity(u0, p, 0.0) + relax_velocity(u0, p, t);
    for (int k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * relax_velocity(u0, p, k * h);
    EXPECT_NEAR(characteristic_position(x0, u0, p, t), x0 + s * h / 3.0, 1e-10);
  }
}

TEST(ModelParams, Validation) {
  EXPECT_NO_THROW((ModelParams{0.0, 1.0}.validate()));
  EXPECT_THROW((void)(ModelParams{-0.1, 1.0}.validate()), DomainError);
  EXPECT_THROW((void)(ModelParams{NAN, 1.0}.validate()), DomainError);
  EXPECT_THROW((void)(ModelParams{1.0, INFINITY}.validate()), DomainError);
}

TEST(RiemannData, Validation) {
  EXPECT_NO_THROW(testing::compressive_data().validate());
  EXPECT_THROW((void)(RiemannData{-1e-3, 1.0, 0.1, 0.0, 0.0}.validate()), DomainError);
  EXPECT_THROW((void)(RiemannData{1e-3, 1.0, 0.1, 0.0, -1.0}.validate()), DomainError);
  EXPECT_THROW((void)(RiemannData{1e-3, NAN, 0.1, 0.0, 0.0}.validate()), DomainError);
}

TEST(SmoothProfile, DetectsInconsistentDerivative) {
  SmoothProfile p;
  p.u0 = [](double x) { return -2.0 * std::tanh(x); };
  p.u0_prime = [](double x) { return -2.0 / (std::cosh(x) * std::cosh(x)); };
  p.alpha0 = [](double) { return 0.01; };
  p.sample_domain = {-3.0, 3.0};
  p.sample_count = 101;
  EXPECT_NO_THROW(p.validate());
  p.u0_prime = [](double x) { return -1.0 / (std::cosh(x) * std::cosh(x)); };
  EXPECT_THROW((void)p.validate(), DomainError);
  p.u0_prime = nullptr;
  EXPECT_THROW((void)p.validate(), DomainError);
}

}  // namespace
}  // namespace droplet
