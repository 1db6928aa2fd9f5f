// Copyright 2026 The shorsim Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace shorsim {

/// Largest N accepted anywhere in the library.
inline constexpr std::uint64_t kMaxModulus = 1ULL << 20;

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// base^exp mod modulus by square-and-multiply with 128-bit intermediates.
std::uint64_t mod_pow(std::int64_t base, std::uint64_t exp, std::uint64_t modulus);

/// Modular inverse of m mod n; throws NotInvertibleError when gcd(m, n) != 1.
std::uint64_t mod_inverse(std::uint64_t m, std::uint64_t n);

/// Smallest r >= 1 with x^r = 1 mod n.
std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t n);

struct Convergent {
    std::uint64_t p = 0;
    std::uint64_t q = 1;
    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Continued-fraction convergent of c/q_total with the largest denominator
/// strictly below `bound`.
Convergent convergent_search(std::uint64_t c, std::uint64_t q_total, std::uint64_t bound);

/// True iff x^q = 1 mod n.
bool candidate_order_check(std::uint64_t q, std::uint64_t x, std::uint64_t n);

/// Factor pair (f1 <= f2, f1 * f2 = n) from an even order r, or nothing when
/// r is odd or x^(r/2) = -1 mod n.
std::optional<std::pair<std::uint64_t, std::uint64_t>>
extract_factors(std::uint64_t x, std::uint64_t r, std::uint64_t n);

/// Smallest k with 2^k > n.
int bits_exceeding(std::uint64_t n);

/// Smallest x > 1 coprime to n.
std::uint64_t smallest_coprime_base(std::uint64_t n);

/// A validated factoring problem: N, base x, register sizes and the order r.
///
/// Invariants: gcd(x, N) = 1, 1 < x < N, 2^n_q > N, Q = 2^n_l > N^2 and r is
/// the multiplicative order of x mod N.
class ShorInstance {
  public:
    /// Registers default to n_q = bits_exceeding(N), n_l = 2 n_q. Throws
    /// ValidationError when any invariant fails.
    static ShorInstance make(std::uint64_t n, std::uint64_t x,
                             std::optional<int> control_qubits = std::nullopt,
                             std::optional<int> computational_qubits = std::nullopt);

    std::uint64_t modulus() const noexcept { return n_; }
    std::uint64_t base() const noexcept { return x_; }
    std::uint64_t order() const noexcept { return r_; }
    int control_qubits() const noexcept { return n_l_; }
    int computational_qubits() const noexcept { return n_q_; }
    int total_qubits() const noexcept { return n_l_ + n_q_; }
    std::uint64_t control_dim() const noexcept { return 1ULL << n_l_; }
    std::uint64_t computational_dim() const noexcept { return 1ULL << n_q_; }

    /// m_j = x^(2^j) mod N by repeated squaring, j = 0 .. n_l-1.
    std::uint64_t multiplier(int j) const;

  private:
    ShorInstance(std::uint64_t n, std::uint64_t x, std::uint64_t r, int n_l, int n_q)
        : n_(n), x_(x), r_(r), n_l_(n_l), n_q_(n_q) {}

    std::uint64_t n_;
    std::uint64_t x_;
    std::uint64_t r_;
    int n_l_;
    int n_q_;
};

} // namespace shorsim
