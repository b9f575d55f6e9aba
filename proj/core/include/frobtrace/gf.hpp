// Copyright 2026 The frobtrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing,
// software distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions
// and limitations under the License.
#pragma once

// Finite fields F_q = F_p[z]/(f) for an odd prime p and 1 <= r <= 4.
//
// Elements are coefficient vectors (c_0, ..., c_{r-1}) with every c_i in
// [0, p). The element with coefficients c_i has *index* sum c_i p^i; index 0
// is zero and index 1 is one, and enumerate() lists elements by index.
//
// The modulus f is the smallest monic irreducible polynomial of degree r when
// the coefficient tuples (c_{r-1}, ..., c_0) are compared lexicographically,
// which is the same as ordering by index.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace frobtrace {

inline constexpr int kMaxExtensionDegree = 4;
/// p^4 must fit comfortably in 64 bits and products of two residues in 64 bits.
inline constexpr std::uint32_t kMaxCharacteristic = 32749;

class FieldCtx;

class FqElement {
 public:
  FqElement() = default;

  std::uint32_t coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  const std::array<std::uint32_t, kMaxExtensionDegree>& coeffs() const { return coeffs_; }

  friend bool operator==(const FqElement&, const FqElement&) = default;
  /// Same order as FieldCtx::index: highest coefficient first.
  friend std::strong_ordering operator<=>(const FqElement& u, const FqElement& v) {
    for (std::size_t i = kMaxExtensionDegree; i-- > 0;)
      if (auto c = u.coeffs_[i] <=> v.coeffs_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  friend class FieldCtx;
  std::array<std::uint32_t, kMaxExtensionDegree> coeffs_{};
};

class FieldCtx {
 public:
  /// Throws ConstructionError if p is not an odd prime or r is outside [1, 4].
  static FieldCtx make(std::int64_t p, std::int64_t r);

  std::uint32_t p() const { return p_; }
  int r() const { return r_; }
  std::uint64_t q() const { return q_; }

  /// Coefficients f_0..f_{r-1} of the monic modulus (leading 1 implicit).
  const std::array<std::uint32_t, kMaxExtensionDegree>& modulus() const { return modulus_; }
  std::string modulus_string() const;

  FqElement zero() const { return FqElement{}; }
  FqElement one() const { return from_int(1); }
  /// Image of an integer in the prime subfield.
  FqElement from_int(std::int64_t v) const;
  /// Element with the given index; throws std::out_of_range if index >= q.
  FqElement element(std::uint64_t index) const;
  std::uint64_t index(const FqElement& u) const;

  FqElement add(const FqElement& u, const FqElement& v) const;
  FqElement sub(const FqElement& u, const FqElement& v) const;
  FqElement neg(const FqElement& u) const;
  FqElement mul(const FqElement& u, const FqElement& v) const;
  /// Throws std::domain_error on zero.
  FqElement inv(const FqElement& u) const;
  FqElement div(const FqElement& u, const FqElement& v) const { return mul(u, inv(v)); }
  FqElement pow(const FqElement& u, std::uint64_t e) const;
  /// Signed exponent; negative powers invert first.
  FqElement pow(const FqElement& u, std::int64_t e) const;

  bool is_zero(const FqElement& u) const { return u == FqElement{}; }
  bool in_prime_field(const FqElement& u) const;

  /// A fixed generator of the cyclic group F_q^x (smallest index of full order).
  const FqElement& generator() const { return generator_; }

  /// N(u) = u^((q-1)/(p-1)), with N(0) = 0. Lands in the prime subfield.
  FqElement norm(const FqElement& u) const;

  /// Number of t in F_q with t^(p-1) = u.
  std::uint64_t count_root_solutions(const FqElement& u) const;

  /// All q elements in index order.
  std::vector<FqElement> enumerate() const;

  /// Index for prime-field elements, polynomial in z otherwise (e.g. "2z+1").
  std::string format(const FqElement& u) const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.r_ == b.r_;
  }

 private:
  FieldCtx() = default;

  std::uint32_t p_ = 0;
  int r_ = 0;
  std::uint64_t q_ = 0;
  std::array<std::uint32_t, kMaxExtensionDegree> modulus_{};
  FqElement generator_{};
};

bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace frobtrace

template <>
struct std::hash<frobtrace::FqElement> {
  std::size_t operator()(const frobtrace::FqElement& u) const noexcept {
    std::size_t h = 0;
    for (auto c : u.coeffs()) h = h * 1000003u + c;
    return h;
  }
};
