// Copyright 2026 The polycoord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polycoord/inefficiency.hpp"

#include <stdexcept>

#include "polycoord/errors.hpp"

namespace polycoord {

ExtendedRational ExtendedRational::infinity() {
  ExtendedRational r;
  r.infinite_ = true;
  return r;
}

const Rational& ExtendedRational::value() const {
  if (infinite_) throw std::logic_error("value() of an infinite ExtendedRational");
  return value_;
}

std::string ExtendedRational::str() const { return infinite_ ? "infinity" : value_.str(); }

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::partial_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
  if (a.infinite_) return std::partial_ordering::greater;
  if (b.infinite_) return std::partial_ordering::less;
  return a.value_ <=> b.value_;
}

SocialOptimum social_optimum(const PolymatrixGame& game, std::uint64_t max_profiles) {
  require_valid(game);
  SocialOptimum best;
  bool first = true;
  for_each_profile(game, max_profiles, [&](const JointStrategy& s) {
    Rational sw = social_welfare(game, s);
    if (first || sw > best.welfare) {
      best.profile = s;
      best.welfare = std::move(sw);
      first = false;
    }
    return true;
  });
  return best;
}

std::string PoaResult::str() const {
  return kind == Kind::kNoEquilibrium ? "no-equilibrium" : ratio.str();
}

PoaResult empirical_poa(const PolymatrixGame& game, const Rational& alpha, std::size_t k,
                        const EnumerationOptions& options) {
  PoaResult result;
  const auto equilibria = enumerate_equilibria(game, alpha, k, options);
  result.optimum = social_optimum(game, options.max_profiles);
  result.equilibria = equilibria.size();
  if (equilibria.empty()) {
    result.kind = PoaResult::Kind::kNoEquilibrium;
    return result;
  }
  Rational worst_sw;
  for (const auto& s : equilibria) {  // sorted, so ties keep the first
    Rational sw = social_welfare(game, s);
    if (!result.worst || sw < worst_sw) {
      result.worst = s;
      worst_sw = std::move(sw);
    }
  }
  if (worst_sw.sign() == 0) {
    if (result.optimum.welfare.sign() > 0) {
      result.kind = PoaResult::Kind::kInfinite;
      result.ratio = ExtendedRational::infinity();
    } else {
      result.kind = PoaResult::Kind::kFinite;
      result.ratio = Rational(1);
    }
    return result;
  }
  result.kind = PoaResult::Kind::kFinite;
  result.ratio = result.optimum.welfare / worst_sw;
  return result;
}

namespace {

void check_bound_args(std::size_t n, std::size_t k, const Rational& alpha) {
  if (k < 1 || k > n) throw InputError("k must satisfy 1 <= k <= n");
  if (alpha < Rational(1)) throw InputError("alpha must be at least 1");
}

}  // namespace

ExtendedRational poa_upper_bound(std::size_t n, std::size_t k, const Rational& alpha) {
  check_bound_args(n, k, alpha);
  if (k == 1) return ExtendedRational::infinity();
  return Rational(2) * alpha * Rational(static_cast<long>(n - 1), static_cast<long>(k - 1));
}

ExtendedRational poa_lower_bound_formula(std::size_t n, std::size_t k, const Rational& alpha) {
  check_bound_args(n, k, alpha);
  if (k == 1) return ExtendedRational::infinity();
  return Rational(2) * alpha *
             (Rational(static_cast<long>(n - 1), static_cast<long>(k - 1)) - Rational(1)) +
         Rational(1);
}

}  // namespace polycoord
