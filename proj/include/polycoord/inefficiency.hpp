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

#ifndef POLYCOORD_INEFFICIENCY_HPP
#define POLYCOORD_INEFFICIENCY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "polycoord/game.hpp"
#include "polycoord/rational.hpp"
#include "polycoord/verification.hpp"

namespace polycoord {

/// A non-negative rational or +infinity.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)
  static ExtendedRational infinity();

  bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error when infinite.
  const Rational& value() const;
  /// "infinity" or the canonical rational.
  std::string str() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend std::partial_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  bool infinite_ = false;
  Rational value_;
};

struct SocialOptimum {
  JointStrategy profile;  // lexicographically first maximiser
  Rational welfare;
};

/// Exhaustive maximisation of social welfare.
SocialOptimum social_optimum(const PolymatrixGame& game,
                             std::uint64_t max_profiles = EnumerationOptions{}.max_profiles);

struct PoaResult {
  enum class Kind { kFinite, kInfinite, kNoEquilibrium };
  Kind kind = Kind::kNoEquilibrium;
  ExtendedRational ratio;             // meaningful unless kNoEquilibrium
  SocialOptimum optimum;
  std::optional<JointStrategy> worst;  // lexicographically first worst equilibrium
  std::size_t equilibria = 0;

  /// "infinity", "no-equilibrium" or the ratio.
  std::string str() const;
};

/// SW(optimum) / min SW over all (alpha, k)-equilibria. A worst equilibrium of
/// welfare 0 gives infinity when the optimum is positive and 1 when it is 0.
PoaResult empirical_poa(const PolymatrixGame& game, const Rational& alpha, std::size_t k,
                        const EnumerationOptions& options = {});

/// 2 alpha (n-1)/(k-1); infinity for k = 1.
/// Throws InputError unless 1 <= k <= n and alpha >= 1.
ExtendedRational poa_upper_bound(std::size_t n, std::size_t k, const Rational& alpha);
/// 2 alpha ((n-1)/(k-1) - 1) + 1; infinity for k = 1.
ExtendedRational poa_lower_bound_formula(std::size_t n, std::size_t k, const Rational& alpha);

}  // namespace polycoord

#endif  // POLYCOORD_INEFFICIENCY_HPP
