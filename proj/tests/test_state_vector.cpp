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
#include <filesystem>
#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "shorsim/error.hpp"
#include "shorsim/numtheory.hpp"
#include "shorsim/state_vector.hpp"

using namespace shorsim;

namespace {

StateVector random_state(int n_l, int n_q, std::uint64_t seed) {
    StateVector s(n_l, n_q);
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> d;
    double norm = 0.0;
    for (auto& a : s.amplitudes()) {
        a = {d(gen), d(gen)};
        norm += std::norm(a);
    }
    for (auto& a : s.amplitudes()) {
        a /= std::sqrt(norm);
    }
    return s;
}

double max_diff(const StateVector& a, const StateVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    }
    return m;
}

} // namespace

TEST_CASE("init_psi0 layout", "[statevec]") {
    const StateVector s = init_psi0(2, 2);
    CHECK(s.size() == 16);
    CHECK(s.amplitudes()[1] == Complex{1.0, 0.0});
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i != 1) {
            CHECK(s.amplitudes()[i] == Complex{});
        }
    }
    CHECK(init_psi0(8, 4).norm_squared() == 1.0);
    CHECK(init_psi0(1, 1).amplitudes()[1] == Complex{1.0, 0.0});
}

TEST_CASE("capacity and shape errors", "[statevec]") {
    CHECK_THROWS_AS(StateVector(20, 10), CapacityError);
    CHECK_THROWS_AS(StateVector(21, 10, 31), CapacityError);
    CHECK_THROWS_AS(StateVector(0, 3), ValidationError);
    CHECK_THROWS_AS(StateVector(3, 0), ValidationError);
    CHECK_NOTHROW(StateVector(4, 4, 8));
}

TEST_CASE("hadamard_control", "[statevec]") {
    StateVector s = init_psi0(8, 4);
    hadamard_control(s);
    for (std::size_t a = 0; a < 256; ++a) {
        REQUIRE(std::abs(s.at(a, 1) - Complex{1.0 / 16.0, 0.0}) < 1e-15);
        REQUIRE(s.at(a, 0) == Complex{});
    }
    hadamard_control(s);
    CHECK(max_diff(s, init_psi0(8, 4)) < 1e-14);

    StateVector r = random_state(6, 3, 1);
    hadamard_control(r);
    CHECK(std::abs(r.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("controlled_modmul", "[statevec]") {
    SECTION("control set multiplies") {
        StateVector s(1, 4);
        s.at(1, 1) = 1.0;
        controlled_modmul(s, 0, 2, 15);
        CHECK(s.at(1, 2) == Complex{1.0, 0.0});
        CHECK(s.at(1, 1) == Complex{});
    }
    SECTION("control clear is untouched") {
        StateVector s = init_psi0(1, 4);
        controlled_modmul(s, 0, 7, 15);
        CHECK(s == init_psi0(1, 4));
    }
    SECTION("states y >= N are fixed") {
        StateVector s(1, 4);
        s.at(1, 14) = 1.0;
        controlled_modmul(s, 0, 2, 13);
        CHECK(s.at(1, 14) == Complex{1.0, 0.0});
    }
    SECTION("inverse multiplier restores the state exactly") {
        const StateVector s0 = random_state(4, 5, 2);
        StateVector s = s0;
        controlled_modmul(s, 2, 4, 21);
        CHECK_FALSE(s == s0);
        controlled_modmul(s, 2, mod_inverse(4, 21), 21);
        CHECK(s == s0);
    }
    SECTION("errors") {
        StateVector s(2, 4);
        CHECK_THROWS_AS(controlled_modmul(s, 0, 3, 15), NotInvertibleError);
        CHECK_THROWS(controlled_modmul(s, 2, 2, 15));
        CHECK_THROWS(controlled_modmul(s, 0, 2, 17));
    }
    SECTION("permutation table") {
        const auto p = modmul_permutation(4, 21, 32);
        for (std::uint32_t y = 0; y < 32; ++y) {
            REQUIRE(p[y] == (y < 21 ? y * 4 % 21 : y));
        }
    }
}

TEST_CASE("qft_control", "[statevec]") {
    StateVector s = init_psi0(6, 2);
    qft_control(s);
    for (std::size_t c = 0; c < 64; ++c) {
        REQUIRE(std::abs(s.at(c, 1) - Complex{0.125, 0.0}) < 1e-15);
    }
    qft_control(s); // uniform over a -> delta at c = 0 (with y fixed)
    CHECK(std::abs(s.at(0, 1) - Complex{1.0, 0.0}) < 1e-14);

    const StateVector r0 = random_state(7, 3, 3);
    StateVector r = r0;
    qft_control(r);
    CHECK(std::abs(r.norm_squared() - 1.0) < 1e-12);
    qft_control(r, true);
    CHECK(max_diff(r, r0) < 1e-12);
}

TEST_CASE("control_marginal", "[statevec]") {
    const auto p0 = control_marginal(init_psi0(4, 3));
    CHECK(p0.probs[0] == 1.0);
    CHECK(p0.total() == 1.0);
    const auto pr = control_marginal(random_state(5, 4, 4));
    CHECK(std::abs(pr.total() - 1.0) < 1e-12);
}

TEST_CASE("ideal pipeline N=15 has four exact peaks", "[statevec]") {
    StateVector s = init_psi0(8, 4);
    hadamard_control(s);
    for (int j = 0; j < 8; ++j) {
        controlled_modmul(s, j, mod_pow(2, 1ULL << j, 15), 15);
        REQUIRE(std::abs(s.norm_squared() - 1.0) < 1e-10);
    }
    qft_control(s);
    const auto p = control_marginal(s);
    const auto ref = oracle::ideal_distribution(15, 2, 8);
    for (std::size_t c = 0; c < 256; ++c) {
        const double want = c % 64 == 0 ? 0.25 : 0.0;
        REQUIRE(std::abs(p.probs[c] - want) < 1e-12);
        REQUIRE(std::abs(ref[c] - want) < 1e-12);
    }
}

TEST_CASE("state dump round trip", "[statevec]") {
    const StateVector s = random_state(3, 2, 5);
    const auto path = std::filesystem::temp_directory_path() / "shorsim_dump_test.bin";
    write_state_dump(s, path);
    CHECK(std::filesystem::file_size(path) == 16 + 16 * s.size());
    CHECK(read_state_dump(path) == s);
    std::filesystem::remove(path);
}
