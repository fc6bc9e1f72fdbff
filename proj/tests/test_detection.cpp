#include <doctest.h>

#include <cmath>

#include "covertgeo/detection.hpp"
#include "covertgeo/errors.hpp"
#include "covertgeo/rng.hpp"

using namespace covertgeo;

TEST_CASE("false alarm probability") {
  DetectorInput inp{0.0, 1.0, 0.5, 0.0};
  CHECK(p_fa(10, inp) == 1.0);  // threshold below any received energy
  inp.gamma = 1.0;
  CHECK(p_fa(1, inp) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  DetectorInput degenerate{1.0, 0.0, 0.5, 0.0};
  CHECK_THROWS_AS(p_fa(4, degenerate), DomainError);
  CHECK_THROWS_AS(p_fa(0, inp), DomainError);
}

TEST_CASE("misdetection probability") {
  DetectorInput inp{0.0, 1.0, 0.5, 0.0};
  CHECK(p_md(10, inp) == 0.0);
  // With no signal, the hypotheses coincide and p_md = 1 - p_fa.
  DetectorInput silent{1.3, 1.0, 0.0, 0.0};
  CHECK(p_md(7, silent) == doctest::Approx(1.0 - p_fa(7, silent)).epsilon(1e-12));
}

TEST_CASE("finite-sample error probabilities match the Gamma-law simulation") {
  // Oracle: the radiometer statistic over n samples is Gamma(n) scaled by
  // power/n under either hypothesis.
  const std::int64_t n = 10000;
  const double sigma2 = 1.0;
  const double p_w = 0.08;
  const double gamma = 1.03 * sigma2;
  const DetectorInput inp{gamma, sigma2, p_w, 0.0};
  const double fa = p_fa(n, inp);
  const double md = p_md(n, inp);

  Rng rng(5);
  const int trials = 1000000;
  int fa_count = 0, md_count = 0;
  const double shape = static_cast<double>(n);
  for (int i = 0; i < trials; ++i) {
    const double t0 = sigma2 / shape * rng.gamma(shape);
    if (t0 > gamma) ++fa_count;
    const double t1 = (p_w + sigma2) / shape * rng.gamma(shape);
    if (t1 <= gamma) ++md_count;
  }
  const double fa_emp = static_cast<double>(fa_count) / trials;
  const double md_emp = static_cast<double>(md_count) / trials;
  const double fa_se = std::sqrt(fa * (1.0 - fa) / trials);
  const double md_se = std::sqrt(md * (1.0 - md) / trials);
  CHECK(std::fabs(fa_emp - fa) < 3.0 * fa_se);
  CHECK(std::fabs(md_emp - md) < 3.0 * md_se);
}

TEST_CASE("xi_finite endpoints and minimized value") {
  DetectorInput inp{0.0, 1.0, 0.4, 0.0};
  CHECK(xi_finite(100, inp) == doctest::Approx(1.0).epsilon(1e-12));  // 1 + 0
  inp.gamma = 1e9;
  CHECK(xi_finite(100, inp) == doctest::Approx(1.0).epsilon(1e-12));  // 0 + 1
  // Grid-minimized detection error lies in [0, 1] and decreases with the
  // signal-to-interference ratio.
  auto min_xi = [](double p_w) {
    const std::int64_t n = 10000;
    double best = 2.0;
    for (double g = 0.9; g <= 1.6; g += 0.002) {
      best = std::min(best, xi_finite(n, DetectorInput{g, 1.0, p_w, 0.0}));
    }
    return best;
  };
  const double weak = min_xi(0.02);
  const double strong = min_xi(0.2);
  CHECK(weak >= 0.0);
  CHECK(weak <= 1.0);
  CHECK(strong >= 0.0);
  CHECK(strong <= 1.0);
  CHECK(strong < weak);
}

TEST_CASE("asymptotic detection indicator") {
  CHECK(xi_asymptotic(DetectorInput{0.5, 1.0, 1.0, 0.0}) == 1.0);  // below the floor
  CHECK(xi_asymptotic(DetectorInput{1.0, 1.0, 1.0, 0.0}) == 0.0);  // boundary, closed
  CHECK(xi_asymptotic(DetectorInput{2.0, 1.0, 1.0, 0.0}) == 0.0);  // upper boundary
  CHECK(xi_asymptotic(DetectorInput{2.1, 1.0, 1.0, 0.0}) == 1.0);
  // Known AWGN shifts both hypothesis powers; shifting the threshold
  // alongside leaves the indicator unchanged.
  for (double g : {0.3, 0.9, 1.4, 2.6}) {
    const double base = xi_asymptotic(DetectorInput{g, 1.0, 0.7, 0.0});
    const double c = 0.42;
    CHECK(xi_asymptotic(DetectorInput{g + c, 1.0, 0.7, c}) == base);
  }
}

TEST_CASE("finite-sample error approaches the asymptotic indicator") {
  // Strictly inside the detection window: xi -> 0 monotonically in n.
  const DetectorInput inside{1.05, 1.0, 0.2, 0.0};
  const double i2 = xi_finite(100, inside);
  const double i4 = xi_finite(10000, inside);
  const double i6 = xi_finite(1000000, inside);
  CHECK(xi_asymptotic(inside) == 0.0);
  CHECK(i4 < i2);
  CHECK(i6 < i4);
  CHECK(i6 < 1e-3);
  // Strictly outside: xi -> 1.
  const DetectorInput outside{1.5, 1.0, 0.2, 0.0};
  CHECK(xi_asymptotic(outside) == 1.0);
  const double o2 = xi_finite(100, outside);
  const double o6 = xi_finite(1000000, outside);
  CHECK(o6 > o2);
  CHECK(o6 > 0.999);
}
