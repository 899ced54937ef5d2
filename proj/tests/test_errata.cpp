#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "ladder4/errata.hpp"

using namespace ladder4;

TEST_CASE("erratum ledger carries every known discrepancy with a residual") {
  auto entries = compute_errata();
  std::set<std::string> ids;
  for (const auto& e : entries) {
    CHECK(!e.summary.empty());
    CHECK(!e.detail.empty());
    CHECK(std::isfinite(e.residual));
    ids.insert(e.id);
  }
  for (const char* expected :
       {"zeroth-order-line-center", "first-order-rho23",
        "first-order-rho13-sign", "first-order-rho14", "second-order-34-block",
        "second-order-12-block-zeroth", "convergence-slope-printed",
        "resonance-rho44-sign", "weak-probe-limit-width",
        "eit-width-radicand", "eq6-line-center-proportionality",
        "eq7-width-ratio", "first-order-saturation",
        "sign-convention-absorption", "rho44-decay-rate-symbol"})
    CHECK(ids.count(expected) == 1);
}

TEST_CASE("measured residuals sit where the measurements put them") {
  auto entries = compute_errata();
  auto find = [&](const std::string& id) -> const ErratumEntry& {
    for (const auto& e : entries)
      if (e.id == id) return e;
    throw std::runtime_error("missing " + id);
  };
  // A pure sign flip has relative residual 2.
  CHECK(find("first-order-rho13-sign").residual ==
        doctest::Approx(2.0).epsilon(1e-9));
  // The rho44 decay-symbol choice changes nothing at the default decay set.
  CHECK(find("rho44-decay-rate-symbol").residual == 0.0);
  // The quoted width ratio 4 against the formula's 1.169.
  CHECK(find("eq7-width-ratio").residual ==
        doctest::Approx((4.0 - 1.16922) / 4.0).epsilon(1e-3));
  // First-order saturation overshoot at W1=4 (measured ~4.3x).
  CHECK(find("first-order-saturation").residual > 3.0);
  CHECK(find("first-order-saturation").residual < 3.6);
}

TEST_CASE("formatted ledger names every entry") {
  auto entries = compute_errata();
  std::string text = format_errata(entries);
  for (const auto& e : entries) CHECK(text.find(e.id) != std::string::npos);
}
