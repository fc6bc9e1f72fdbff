#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "covertgeo/interference.hpp"
#include "covertgeo/numerics.hpp"

using namespace covertgeo;

namespace {

NetworkConfig default_cfg() { return NetworkConfig{}; }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
  return g;
}

}  // namespace

TEST_CASE("fading moment") {
  CHECK(fading_moment(4.0, Fading::NonFading) == 1.0);
  CHECK(fading_moment(4.0, Fading::Rayleigh) ==
        doctest::Approx(0.88622692545275801).epsilon(1e-12));  // Gamma(3/2)
  CHECK(fading_moment(2.0, Fading::Rayleigh) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("levy scale from the network config") {
  NetworkConfig cfg = default_cfg();
  CHECK(levy_scale(cfg) == doctest::Approx(7.7515691700749550e-7).epsilon(1e-14));
  cfg.fading = Fading::Rayleigh;
  CHECK(levy_scale(cfg) == doctest::Approx(6.0880681896251523e-7).epsilon(1e-14));
  // Rayleigh / non-fading scale ratio is pi/4 for any parameters.
  NetworkConfig other = default_cfg();
  other.lambda_i = 3.3e-2;
  other.p_i = 2.5;
  NetworkConfig other_ray = other;
  other_ray.fading = Fading::Rayleigh;
  CHECK(levy_scale(other_ray) / levy_scale(other) ==
        doctest::Approx(0.78539816339744831).epsilon(1e-14));
  NetworkConfig bad = default_cfg();
  bad.alpha = 3.0;
  CHECK_THROWS_AS(levy_scale(bad), UnsupportedRegimeError);
}

TEST_CASE("levy pdf, tail and interval are consistent") {
  const double b = 7.75e-7;
  CHECK(levy_interval(1e-6, 1e-6, b) == 0.0);
  CHECK(levy_tail(1e12 * b, b) < 1e-6);
  CHECK(levy_tail(1e-12 * b, b) == doctest::Approx(1.0).epsilon(1e-12));
  // Interval equals the quadrature of the pdf (oracle).
  struct Case {
    double a, c, b;
  };
  for (const Case& t : {Case{1e-7, 5e-6, 7.75e-7}, Case{3e-6, 4e-5, 2e-6},
                        Case{0.5, 9.0, 1.3}}) {
    const double quad = adaptive_quadrature([&](double x) { return levy_pdf(x, t.b); }, t.a, t.c,
                                            ToleranceSpec{1e-12, 1e-14, 200});
    CHECK(levy_interval(t.a, t.c, t.b) == doctest::Approx(quad).epsilon(1e-9));
  }
  // Tail strictly decreasing in t, strictly increasing in b.
  CHECK(levy_tail(2e-6, b) < levy_tail(1e-6, b));
  CHECK(levy_tail(1e-6, 2.0 * b) > levy_tail(1e-6, b));
  CHECK_THROWS_AS(levy_interval(2.0, 1.0, b), DomainError);
  CHECK_THROWS_AS(levy_pdf(0.0, b), DomainError);
}

TEST_CASE("levy sampler matches the closed-form law") {
  const double b = 7.7515691700749550e-7;
  Rng rng(11);
  const int n = 200000;
  // Median of the law: b / inv_erf(1/2)^2.
  const double median = b * 4.3962186766354648;
  int above_median = 0;
  int above_t = 0;
  const double t = 10.0 * b;
  for (int i = 0; i < n; ++i) {
    const double x = sample_levy(b, rng);
    CHECK(x > 0.0);
    if (x > median) ++above_median;
    if (x > t) ++above_t;
  }
  const double se = 0.5 / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(static_cast<double>(above_median) / n - 0.5) < 3.0 * se);
  const double p_t = levy_tail(t, b);
  const double se_t = std::sqrt(p_t * (1.0 - p_t) / n);
  CHECK(std::fabs(static_cast<double>(above_t) / n - p_t) < 3.0 * se_t);
}

TEST_CASE("levy sampler is deterministic under a fixed seed") {
  Rng a(99), c(99);
  for (int i = 0; i < 32; ++i) CHECK(sample_levy(1.0, a) == sample_levy(1.0, c));
}

TEST_CASE("series pdf agrees with the Levy closed form at alpha 4") {
  for (const Fading fading : {Fading::NonFading, Fading::Rayleigh}) {
    NetworkConfig cfg = default_cfg();
    cfg.fading = fading;
    const double b = levy_scale(cfg);
    const InterferenceLaw law =
        InterferenceLaw::series(4.0, cfg.lambda_i, cfg.p_i, fading_moment(4.0, fading));
    for (const double x : log_grid(0.1 * b, 1e4 * b, 50)) {
      const SeriesValue sv = series_pdf(x, law);
      REQUIRE(sv.converged);
      CHECK(sv.value == doctest::Approx(levy_pdf(x, b)).epsilon(1e-6));
    }
  }
}

TEST_CASE("series tail and interval are internally consistent") {
  // alpha = 3: termwise-integrated series against quadrature of the pdf
  // series (checks the shape shift between the two gamma weights).
  const InterferenceLaw law = InterferenceLaw::series(3.0, 1e-3, 0.1, 1.0);
  const double x_c = law.characteristic_scale();
  const double a = 0.8 * x_c, c = 15.0 * x_c;
  const double quad = adaptive_quadrature(
      [&](double x) {
        const SeriesValue v = series_pdf(x, law);
        REQUIRE(v.converged);
        return v.value;
      },
      a, c, ToleranceSpec{1e-11, 1e-14, 200});
  const SeriesValue iv = series_interval(a, c, law);
  REQUIRE(iv.converged);
  CHECK(iv.value == doctest::Approx(quad).epsilon(1e-8));
  // Interval = tail(a) - tail(c).
  const SeriesValue ta = series_tail(a, law);
  const SeriesValue tc = series_tail(c, law);
  CHECK(iv.value == doctest::Approx(ta.value - tc.value).epsilon(1e-10));
  // Tails are probabilities.
  CHECK(ta.value > 0.0);
  CHECK(ta.value < 1.0);
  CHECK(tc.value < ta.value);
}

TEST_CASE("series decays at large x and flags the small-x regime") {
  NetworkConfig cfg = default_cfg();
  const double b = levy_scale(cfg);
  const InterferenceLaw law = InterferenceLaw::series(4.0, cfg.lambda_i, cfg.p_i, 1.0);
  CHECK(series_pdf(1e6 * b, law).value < series_pdf(10.0 * b, law).value);
  const SeriesValue small = series_pdf(1e-3 * b, law);
  CHECK(!small.converged);
}

TEST_CASE("interference law constructors guard their domains") {
  CHECK_THROWS_AS(InterferenceLaw::series(2.0, 1e-3, 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(InterferenceLaw::levy(0.0), DomainError);
  NetworkConfig cfg = default_cfg();
  CHECK(InterferenceLaw::from_config(cfg).kind == InterferenceLaw::Kind::LevyClosedForm);
  cfg.alpha = 3.5;
  CHECK(InterferenceLaw::from_config(cfg).kind == InterferenceLaw::Kind::SeriesGeneral);
  NetworkConfig bad = default_cfg();
  bad.lambda_i = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
