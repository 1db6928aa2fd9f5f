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
#include "shorsim/numtheory.hpp"

#include <string>

#include "shorsim/error.hpp"

namespace shorsim {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    if (a == 0 && b == 0) {
        throw DomainError("gcd(0, 0) is undefined");
    }
    while (b != 0) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t mod_pow(std::int64_t base, std::uint64_t exp, std::uint64_t modulus) {
    if (modulus < 2) {
        throw DomainError("mod_pow: modulus must be >= 2");
    }
    const auto m = static_cast<__int128>(modulus);
    __int128 b = static_cast<__int128>(base) % m;
    if (b < 0) {
        b += m;
    }
    __int128 acc = 1;
    while (exp != 0) {
        if (exp & 1U) {
            acc = (acc * b) % m;
        }
        b = (b * b) % m;
        exp >>= 1U;
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t mod_inverse(std::uint64_t m, std::uint64_t n) {
    // Extended Euclid on signed 128-bit to keep the Bezout coefficients exact.
    __int128 old_r = static_cast<__int128>(m % n);
    __int128 r = static_cast<__int128>(n);
    __int128 old_s = 1;
    __int128 s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        const __int128 tr = old_r - q * r;
        old_r = r;
        r = tr;
        const __int128 ts = old_s - q * s;
        old_s = s;
        s = ts;
    }
    if (old_r != 1) {
        throw NotInvertibleError("multiplier " + std::to_string(m) +
                                 " is not invertible modulo " + std::to_string(n));
    }
    __int128 inv = old_s % static_cast<__int128>(n);
    if (inv < 0) {
        inv += n;
    }
    return static_cast<std::uint64_t>(inv);
}

std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t n) {
    if (n < 2) {
        throw DomainError("multiplicative_order: modulus must be >= 2");
    }
    if (gcd(x, n) != 1) {
        throw NotInvertibleError("multiplicative_order: gcd(" + std::to_string(x) + ", " +
                                 std::to_string(n) + ") != 1");
    }
    const std::uint64_t base = x % n;
    std::uint64_t acc = base;
    std::uint64_t r = 1;
    while (acc != 1) {
        acc = static_cast<std::uint64_t>(static_cast<unsigned __int128>(acc) * base % n);
        ++r;
    }
    return r;
}

Convergent convergent_search(std::uint64_t c, std::uint64_t q_total, std::uint64_t bound) {
    if (q_total == 0 || c >= q_total) {
        throw DomainError("convergent_search: need 0 <= c < Q");
    }
    if (bound < 2) {
        throw DomainError("convergent_search: bound must be >= 2");
    }
    if (c == 0) {
        return {0, 1};
    }
    // h_n / k_n recurrences seeded with h_{-1}=1, h_{-2}=0, k_{-1}=0, k_{-2}=1.
    std::uint64_t h_prev = 1, h_prev2 = 0;
    std::uint64_t k_prev = 0, k_prev2 = 1;
    std::uint64_t num = c;
    std::uint64_t den = q_total;
    Convergent best{0, 1};
    while (den != 0) {
        const std::uint64_t a = num / den;
        const std::uint64_t h = a * h_prev + h_prev2;
        const std::uint64_t k = a * k_prev + k_prev2;
        if (k >= bound) {
            break;
        }
        best = {h, k};
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const std::uint64_t rem = num % den;
        num = den;
        den = rem;
    }
    return best;
}

bool candidate_order_check(std::uint64_t q, std::uint64_t x, std::uint64_t n) {
    if (q == 0) {
        throw DomainError("candidate_order_check: q must be >= 1");
    }
    return mod_pow(static_cast<std::int64_t>(x), q, n) == 1 % n;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
extract_factors(std::uint64_t x, std::uint64_t r, std::uint64_t n) {
    if (r % 2 != 0) {
        return std::nullopt;
    }
    const std::uint64_t y = mod_pow(static_cast<std::int64_t>(x), r / 2, n);
    if (y == n - 1) {
        return std::nullopt;
    }
    // y - 1 first, then y + 1.
    for (const std::uint64_t candidate : {(y + n - 1) % n, (y + 1) % n}) {
        if (candidate == 0) {
            continue;
        }
        const std::uint64_t g = gcd(candidate, n);
        if (g > 1 && g < n) {
            const std::uint64_t other = n / g;
            return std::make_pair(std::min(g, other), std::max(g, other));
        }
    }
    return std::nullopt;
}

int bits_exceeding(std::uint64_t n) {
    int k = 0;
    while (k < 64 && (1ULL << k) <= n) {
        ++k;
    }
    return k;
}

std::uint64_t smallest_coprime_base(std::uint64_t n) {
    for (std::uint64_t x = 2; x < n; ++x) {
        if (gcd(x, n) == 1) {
            return x;
        }
    }
    throw ValidationError("no base 1 < x < N coprime to N=" + std::to_string(n));
}

ShorInstance ShorInstance::make(std::uint64_t n, std::uint64_t x,
                                std::optional<int> control_qubits,
                                std::optional<int> computational_qubits) {
    if (n < 3 || n > kMaxModulus) {
        throw ValidationError("N=" + std::to_string(n) + " outside supported range [3, 2^20]");
    }
    if (x <= 1 || x >= n) {
        throw ValidationError("base x=" + std::to_string(x) + " must satisfy 1 < x < N");
    }
    if (gcd(x, n) != 1) {
        throw ValidationError("base x=" + std::to_string(x) + " is not coprime to N=" +
                              std::to_string(n));
    }
    const int n_q = computational_qubits.value_or(bits_exceeding(n));
    const int n_l = control_qubits.value_or(2 * n_q);
    if (n_q < 1 || n_q > 31 || (1ULL << n_q) <= n) {
        throw ValidationError("computational register needs 2^n_q > N (n_q=" +
                              std::to_string(n_q) + ")");
    }
    if (n_l < 1 || n_l > 62 ||
        static_cast<unsigned __int128>(1ULL << n_l) <=
            static_cast<unsigned __int128>(n) * n) {
        throw ValidationError("control register needs Q = 2^n_l > N^2 (n_l=" +
                              std::to_string(n_l) + ")");
    }
    return ShorInstance(n, x, multiplicative_order(x, n), n_l, n_q);
}

std::uint64_t ShorInstance::multiplier(int j) const {
    std::uint64_t m = x_ % n_;
    for (int i = 0; i < j; ++i) {
        m = static_cast<std::uint64_t>(static_cast<unsigned __int128>(m) * m % n_);
    }
    return m;
}

} // namespace shorsim
