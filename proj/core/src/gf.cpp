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
#include "frobtrace/gf.hpp"

#include <sstream>
#include <stdexcept>

#include "frobtrace/error.hpp"

namespace frobtrace {

namespace {

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) result = result * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return result;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - factor * m[i] % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(out), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree r is irreducible iff gcd(f, z^(p^i) - z) = 1 for
// every i <= r/2.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t degree = f.size() - 1;
  if (degree == 1) return true;
  Poly z_power{0, 1};
  for (std::size_t i = 1; i <= degree / 2; ++i) {
    z_power = poly_powmod(z_power, p, f, p);
    Poly diff = z_power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldCtx FieldCtx::make(std::int64_t p, std::int64_t r) {
  if (p == 2) throw ConstructionError("p must be an odd prime (p = 2 is excluded)");
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw ConstructionError("p must be an odd prime, got " + std::to_string(p));
  if (p > static_cast<std::int64_t>(kMaxCharacteristic))
    throw ConstructionError("p must be at most " + std::to_string(kMaxCharacteristic));
  if (r < 1 || r > kMaxExtensionDegree)
    throw ConstructionError("r must satisfy 1 <= r <= " + std::to_string(kMaxExtensionDegree) +
                            ", got " + std::to_string(r));

  FieldCtx ctx;
  ctx.p_ = static_cast<std::uint32_t>(p);
  ctx.r_ = static_cast<int>(r);
  ctx.q_ = 1;
  for (int i = 0; i < ctx.r_; ++i) ctx.q_ *= ctx.p_;

  // Smallest-index monic irreducible of degree r.
  bool found = false;
  for (std::uint64_t k = 0; k < ctx.q_ && !found; ++k) {
    Poly f(static_cast<std::size_t>(ctx.r_) + 1, 0);
    std::uint64_t rest = k;
    for (int i = 0; i < ctx.r_; ++i) {
      f[static_cast<std::size_t>(i)] = rest % ctx.p_;
      rest /= ctx.p_;
    }
    f.back() = 1;
    if (is_irreducible(f, ctx.p_)) {
      for (int i = 0; i < ctx.r_; ++i)
        ctx.modulus_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(f[static_cast<std::size_t>(i)]);
      found = true;
    }
  }
  if (!found) throw InvariantError("no irreducible polynomial found");

  const auto order_factors = prime_factors(ctx.q_ - 1);
  for (std::uint64_t idx = 1; idx < ctx.q_; ++idx) {
    const FqElement g = ctx.element(idx);
    bool full_order = true;
    for (auto l : order_factors) {
      if (ctx.pow(g, (ctx.q_ - 1) / l) == ctx.one()) {
        full_order = false;
        break;
      }
    }
    if (full_order) {
      ctx.generator_ = g;
      return ctx;
    }
  }
  throw InvariantError("multiplicative group has no generator");
}

FqElement FieldCtx::from_int(std::int64_t v) const {
  FqElement out;
  const auto pp = static_cast<std::int64_t>(p_);
  out.coeffs_[0] = static_cast<std::uint32_t>(((v % pp) + pp) % pp);
  return out;
}

FqElement FieldCtx::element(std::uint64_t index) const {
  if (index >= q_) throw std::out_of_range("element index " + std::to_string(index) + " >= q");
  FqElement out;
  for (int i = 0; i < r_; ++i) {
    out.coeffs_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return out;
}

std::uint64_t FieldCtx::index(const FqElement& u) const {
  std::uint64_t idx = 0;
  for (int i = r_ - 1; i >= 0; --i) idx = idx * p_ + u.coeffs_[static_cast<std::size_t>(i)];
  return idx;
}

FqElement FieldCtx::add(const FqElement& u, const FqElement& v) const {
  FqElement out;
  for (int i = 0; i < r_; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.coeffs_[k] = (u.coeffs_[k] + v.coeffs_[k]) % p_;
  }
  return out;
}

FqElement FieldCtx::sub(const FqElement& u, const FqElement& v) const {
  FqElement out;
  for (int i = 0; i < r_; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.coeffs_[k] = (u.coeffs_[k] + p_ - v.coeffs_[k]) % p_;
  }
  return out;
}

FqElement FieldCtx::neg(const FqElement& u) const { return sub(zero(), u); }

FqElement FieldCtx::mul(const FqElement& u, const FqElement& v) const {
  std::array<std::uint64_t, 2 * kMaxExtensionDegree - 1> prod{};
  for (int i = 0; i < r_; ++i) {
    const std::uint64_t ui = u.coeffs_[static_cast<std::size_t>(i)];
    if (ui == 0) continue;
    for (int j = 0; j < r_; ++j)
      prod[static_cast<std::size_t>(i + j)] =
          (prod[static_cast<std::size_t>(i + j)] + ui * v.coeffs_[static_cast<std::size_t>(j)]) % p_;
  }
  // z^r = -(f_0 + f_1 z + ... + f_{r-1} z^{r-1})
  for (int k = 2 * r_ - 2; k >= r_; --k) {
    const std::uint64_t c = prod[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    prod[static_cast<std::size_t>(k)] = 0;
    for (int i = 0; i < r_; ++i) {
      auto& slot = prod[static_cast<std::size_t>(k - r_ + i)];
      slot = (slot + p_ - c * modulus_[static_cast<std::size_t>(i)] % p_) % p_;
    }
  }
  FqElement out;
  for (int i = 0; i < r_; ++i)
    out.coeffs_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(prod[static_cast<std::size_t>(i)]);
  return out;
}

FqElement FieldCtx::pow(const FqElement& u, std::uint64_t e) const {
  FqElement result = one();
  FqElement base = u;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FqElement FieldCtx::pow(const FqElement& u, std::int64_t e) const {
  if (e >= 0) return pow(u, static_cast<std::uint64_t>(e));
  return pow(inv(u), static_cast<std::uint64_t>(-e));
}

FqElement FieldCtx::inv(const FqElement& u) const {
  if (is_zero(u)) throw std::domain_error("inverse of zero in F_" + std::to_string(q_));
  return pow(u, q_ - 2);
}

bool FieldCtx::in_prime_field(const FqElement& u) const {
  for (int i = 1; i < r_; ++i)
    if (u.coeffs_[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

FqElement FieldCtx::norm(const FqElement& u) const {
  if (is_zero(u)) return zero();
  return pow(u, (q_ - 1) / (p_ - 1));
}

std::uint64_t FieldCtx::count_root_solutions(const FqElement& u) const {
  if (is_zero(u)) return 1;
  return norm(u) == one() ? p_ - 1 : 0;
}

std::vector<FqElement> FieldCtx::enumerate() const {
  std::vector<FqElement> out;
  out.reserve(q_);
  for (std::uint64_t i = 0; i < q_; ++i) out.push_back(element(i));
  return out;
}

std::string FieldCtx::format(const FqElement& u) const {
  if (in_prime_field(u)) return std::to_string(u.coeffs_[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = r_ - 1; i >= 0; --i) {
    const auto c = u.coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c;
      os << 'z';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

std::string FieldCtx::modulus_string() const {
  std::ostringstream os;
  os << "z^" << r_;
  for (int i = r_ - 1; i >= 0; --i) {
    const auto c = modulus_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    os << '+';
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c;
      os << 'z';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

}  // namespace frobtrace
