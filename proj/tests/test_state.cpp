#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "catsim/metrics.hpp"
#include "catsim/noise.hpp"
#include "catsim/state.hpp"
#include "test_util.hpp"

using namespace catsim;

namespace {

QuantumState basis_state(const RegisterLayout& layout, std::uint64_t index, Backend backend) {
    QuantumState s(layout, backend);
    s.set_amplitude(index, 1.0);
    return s;
}

std::vector<double> sorted_magnitudes(const QuantumState& s) {
    std::vector<double> m;
    s.for_each_nonzero([&](std::uint64_t, Amplitude a) { m.push_back(std::abs(a)); });
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

TEST(RegisterLayout, registers_partition_all_qubits) {
    for (int n_q = 2; n_q <= 8; ++n_q) {
        const RegisterLayout layout(n_q);
        std::set<int> seen;
        for (const auto* reg : {&layout.x_qubits(), &layout.y_qubits(), &layout.work_qubits()}) {
            for (int q : *reg) EXPECT_TRUE(seen.insert(q).second) << "qubit " << q;
        }
        EXPECT_EQ(layout.x_qubits().size(), static_cast<std::size_t>(n_q));
        EXPECT_EQ(layout.work_qubits().size(), static_cast<std::size_t>(n_q - 1));
        EXPECT_EQ(static_cast<int>(seen.size()), 3 * n_q - 1);
        EXPECT_EQ(*seen.begin(), 0);
        EXPECT_EQ(*seen.rbegin(), 3 * n_q - 2);
    }
}

TEST(RegisterLayout, encode_decode_roundtrip) {
    for (int n_q : {2, 3, 4}) {
        const RegisterLayout layout(n_q);
        for (std::uint64_t k = 0; k < layout.dimension(); ++k) {
            EXPECT_EQ(layout.encode(layout.decode(k)), k);
        }
    }
}

TEST(RegisterLayout, most_significant_qubit_first) {
    const RegisterLayout layout(3);
    // i = 0b100 sets only the first x qubit.
    EXPECT_EQ(layout.encode(4, 0, 0), std::uint64_t{1} << layout.x_qubits()[0]);
    EXPECT_EQ(layout.encode(0, 1, 0), std::uint64_t{1} << layout.y_qubits()[2]);
    EXPECT_EQ(layout.encode(0, 0, 1), std::uint64_t{1} << layout.work_qubits()[1]);
}

TEST(RegisterLayout, rejects_too_small) { EXPECT_THROW(RegisterLayout(1), ConfigError); }

TEST(InitState, single_point) {
    const RegisterLayout layout(2);
    const std::vector<LatticePoint> pts{{0, 0}};
    for (auto backend : {Backend::dense, Backend::monomial}) {
        const auto s = init_state(layout, pts, backend);
        EXPECT_EQ(s.amplitude(layout.encode(0, 0, 0)), Amplitude(1.0));
        EXPECT_EQ(s.support_size(), 1u);
    }
}

TEST(InitState, amplitude_is_inverse_sqrt_of_count) {
    const RegisterLayout layout(7);
    std::vector<LatticePoint> pts;
    for (std::uint64_t k = 0; k < 4096; ++k) pts.push_back({k % 128, k / 128});
    const auto s = init_state(layout, pts);
    EXPECT_EQ(s.support_size(), 4096u);
    s.for_each_nonzero([](std::uint64_t, Amplitude a) { EXPECT_DOUBLE_EQ(a.real(), 1.0 / 64.0); });
}

TEST(InitState, full_lattice_is_uniform) {
    const RegisterLayout layout(2);
    std::vector<LatticePoint> pts;
    for (std::uint64_t i = 0; i < 4; ++i) {
        for (std::uint64_t j = 0; j < 4; ++j) pts.push_back({i, j});
    }
    const auto s = init_state(layout, pts, Backend::dense);
    for (std::uint64_t i = 0; i < 4; ++i) {
        for (std::uint64_t j = 0; j < 4; ++j) EXPECT_EQ(s.amplitude(layout.encode(i, j)), Amplitude(0.25));
    }
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(InitState, errors) {
    const RegisterLayout layout(2);
    const std::vector<LatticePoint> none;
    try {
        init_state(layout, none);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_STREQ(e.what(), "empty initial distribution");
    }
    const std::vector<LatticePoint> outside{{1, 1}, {4, 2}};
    try {
        init_state(layout, outside);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("(4, 2)"), std::string::npos) << e.what();
    }
    const std::vector<LatticePoint> dup{{1, 1}, {1, 1}};
    EXPECT_THROW(init_state(layout, dup), ConfigError);
}

TEST(ApplyGate, cnot_truth_table) {
    const RegisterLayout layout(2);  // 5 qubits
    for (auto backend : {Backend::dense, Backend::monomial}) {
        auto s = basis_state(layout, 0b10, backend);
        s.apply(GateInstance::cnot(1, 0));
        EXPECT_EQ(s.amplitude(0b11), Amplitude(1.0));
        EXPECT_EQ(s.amplitude(0b10), Amplitude(0.0));
    }
}

TEST(ApplyGate, toffoli_truth_table) {
    const RegisterLayout layout(2);
    for (auto backend : {Backend::dense, Backend::monomial}) {
        auto s = basis_state(layout, 0b110, backend);
        s.apply(GateInstance::toffoli(2, 1, 0));
        EXPECT_EQ(s.amplitude(0b111), Amplitude(1.0));

        auto u = basis_state(layout, 0b100, backend);
        u.apply(GateInstance::toffoli(2, 1, 0));
        EXPECT_EQ(u.amplitude(0b100), Amplitude(1.0));
        EXPECT_EQ(u.support_size(), 1u);
    }
}

TEST(ApplyGate, phase_noised_cnot_on_superposition) {
    const RegisterLayout layout(2);
    const double th1 = 0.3, th2 = -1.1;
    const auto gate = GateInstance::cnot(1, 0).with_block(phase_noise_block(th1, th2));
    const double r = 1.0 / std::sqrt(2.0);
    for (auto backend : {Backend::dense, Backend::monomial}) {
        QuantumState s(layout, backend);
        s.set_amplitude(0b10, r);
        s.set_amplitude(0b11, r);
        s.apply(gate);
        // (e^{i th1}|11> + e^{i th2}|10>) / sqrt 2
        EXPECT_NEAR(std::abs(s.amplitude(0b11) - r * std::polar(1.0, th1)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(s.amplitude(0b10) - r * std::polar(1.0, th2)), 0.0, 1e-15);
    }
}

TEST(ApplyGate, untouched_when_controls_clear) {
    const RegisterLayout layout(2);
    std::mt19937_64 rng(5);
    auto s = test_support::random_state(layout, rng);
    const auto before = s;
    s.apply(GateInstance::toffoli(4, 3, 0).with_block(test_support::random_unitary_block(rng)));
    for (std::uint64_t k = 0; k < layout.dimension(); ++k) {
        if ((k & 0b11000) != 0b11000) EXPECT_EQ(s.amplitude(k), before.amplitude(k)) << k;
    }
}

TEST(ApplyGate, duplicate_and_invalid_qubits) {
    EXPECT_THROW(GateInstance::cnot(1, 1), ConfigError);
    EXPECT_THROW(GateInstance::toffoli(1, 1, 2), ConfigError);
    EXPECT_THROW(GateInstance::toffoli(1, 2, 2), ConfigError);
    EXPECT_THROW(GateInstance::x(-1), ConfigError);
    const RegisterLayout layout(2);
    auto s = basis_state(layout, 0, Backend::dense);
    EXPECT_THROW(s.apply(GateInstance::cnot(0, 5)), ConfigError);
}

TEST(ApplyGate, monomial_backend_rejects_general_block) {
    const RegisterLayout layout(2);
    auto s = basis_state(layout, 0, Backend::monomial);
    EXPECT_THROW(s.apply(GateInstance::x(0).with_block(amplitude_noise_block(0.1, -0.2))), ConfigError);
}

TEST(GateInstance, monomial_flag) {
    EXPECT_TRUE(GateInstance::cnot(0, 1).is_monomial());
    EXPECT_TRUE(GateInstance::cnot(0, 1).with_block(phase_noise_block(0.4, 2.0)).is_monomial());
    EXPECT_FALSE(GateInstance::cnot(0, 1).with_block(amplitude_noise_block(0.4, 0.1)).is_monomial());
    EXPECT_LE(unitarity_defect(kExchangeBlock), 1e-12);
}

TEST(PerAmplitudePhase, keeps_magnitudes) {
    const RegisterLayout layout(3);
    std::mt19937_64 rng(11);
    auto s = test_support::random_state(layout, rng);
    const auto before = sorted_magnitudes(s);
    Rng noise(42);
    apply_per_amplitude_phase(s, noise);
    const auto after = sorted_magnitudes(s);
    ASSERT_EQ(before.size(), after.size());
    for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(before[k], after[k], 1e-15);
}

TEST(PerAmplitudePhase, single_amplitude_is_global_phase) {
    const RegisterLayout layout(2);
    auto s = basis_state(layout, 9, Backend::monomial);
    Rng noise(1);
    apply_per_amplitude_phase(s, noise);
    EXPECT_NEAR(std::norm(s.amplitude(9)), 1.0, 1e-15);
    EXPECT_EQ(s.support_size(), 1u);
}

TEST(PerAmplitudePhase, faithfulness_to_unscrambled_is_one) {
    const RegisterLayout layout(4);
    std::vector<LatticePoint> pts{{1, 2}, {3, 3}, {7, 0}, {15, 15}, {8, 9}};
    const auto ref = init_state(layout, pts);
    auto s = ref;
    Rng noise(3);
    apply_per_amplitude_phase(s, noise);
    EXPECT_NEAR(faithfulness(s, ref), 1.0, 1e-15);
    EXPECT_LT(fidelity(s, ref), 1.0);
}

// Invariants

TEST(StateProperties, monomial_closure) {
    const RegisterLayout layout(3);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t start = rng() % layout.dimension();
        QuantumState s(layout, Backend::monomial);
        s.set_amplitude(start, 1.0);
        for (int g = 0; g < 200; ++g) {
            s.apply(test_support::random_ideal_gate(layout.total_qubits(), rng).with_block(phase_noise_block(u(rng), u(rng))));
        }
        ASSERT_EQ(s.support_size(), 1u);
        s.for_each_nonzero([](std::uint64_t, Amplitude a) { EXPECT_NEAR(std::abs(a), 1.0, 1e-13); });
    }
}

TEST(StateProperties, monomial_gates_keep_support_and_magnitudes) {
    const RegisterLayout layout(3);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    auto dense = test_support::random_state(layout, rng);
    // Sparsify: keep a third of the amplitudes.
    QuantumState s(layout, Backend::monomial);
    dense.for_each_nonzero([&](std::uint64_t k, Amplitude a) {
        if (k % 3 == 0) s.set_amplitude(k, a);
    });
    const auto before = sorted_magnitudes(s);
    for (int g = 0; g < 500; ++g) {
        s.apply(test_support::random_ideal_gate(layout.total_qubits(), rng).with_block(phase_noise_block(u(rng), u(rng))));
    }
    const auto after = sorted_magnitudes(s);
    ASSERT_EQ(before.size(), after.size());
    for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(before[k], after[k], 1e-13);
    // Distinct indices: support is still a set.
    const auto support = s.sorted_support();
    for (std::size_t k = 1; k < support.size(); ++k) EXPECT_LT(support[k - 1].index, support[k].index);
}

TEST(StateProperties, unitarity_drift) {
    const RegisterLayout layout(2);
    std::mt19937_64 rng(8);
    auto s = test_support::random_state(layout, rng);
    double prev = s.norm_squared();
    for (int g = 0; g < 10000; ++g) {
        const auto gate = test_support::random_ideal_gate(layout.total_qubits(), rng).with_block(test_support::random_unitary_block(rng));
        ASSERT_LE(unitarity_defect(gate.block()), 1e-12);
        s.apply(gate);
        const double now = s.norm_squared();
        ASSERT_LT(std::abs(now - prev), 1e-10) << "gate " << g;
        prev = now;
    }
    EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-7);
}

TEST(StateProperties, backend_equivalence) {
    const RegisterLayout layout(3);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        std::mt19937_64 rng(seed);
        std::vector<LatticePoint> pts;
        for (int k = 0; k < 20; ++k) pts.push_back({rng() % 8, rng() % 8});
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        auto sparse = init_state(layout, pts, Backend::monomial);
        auto dense = init_state(layout, pts, Backend::dense);
        Rng noise_a = make_stream(seed, 0), noise_b = make_stream(seed, 0);
        NoiseConfig cfg;
        cfg.eps_phi = 1.3;
        for (int g = 0; g < 300; ++g) {
            const auto ideal = test_support::random_ideal_gate(layout.total_qubits(), rng);
            sparse.apply(noisy_gate(ideal, cfg, noise_a));
            dense.apply(noisy_gate(ideal, cfg, noise_b));
            if (g % 7 == 0) {
                apply_per_amplitude_phase(sparse, noise_a);
                apply_per_amplitude_phase(dense, noise_b);
            }
        }
        for (std::uint64_t k = 0; k < layout.dimension(); ++k) {
            ASSERT_LE(std::abs(sparse.amplitude(k) - dense.amplitude(k)), 1e-12) << "seed " << seed << " index " << k;
        }
    }
}

TEST(StateProperties, linearity) {
    const RegisterLayout layout(2);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s1 = test_support::random_state(layout, rng);
        const auto s2 = test_support::random_state(layout, rng);
        const Amplitude alpha{0.3, -0.7}, beta{-1.2, 0.4};
        const auto gate = test_support::random_ideal_gate(layout.total_qubits(), rng).with_block(test_support::random_unitary_block(rng));
        QuantumState mix(layout, Backend::dense);
        for (std::uint64_t k = 0; k < layout.dimension(); ++k) {
            mix.set_amplitude(k, alpha * s1.amplitude(k) + beta * s2.amplitude(k));
        }
        auto a = s1, b = s2;
        a.apply(gate);
        b.apply(gate);
        mix.apply(gate);
        for (std::uint64_t k = 0; k < layout.dimension(); ++k) {
            EXPECT_LE(std::abs(mix.amplitude(k) - (alpha * a.amplitude(k) + beta * b.amplitude(k))), 1e-12);
        }
    }
}

TEST(QuantumState, backend_conversion_roundtrip) {
    const RegisterLayout layout(2);
    std::mt19937_64 rng(4);
    const auto d = test_support::random_state(layout, rng);
    const auto back = d.with_backend(Backend::monomial).with_backend(Backend::dense);
    for (std::uint64_t k = 0; k < layout.dimension(); ++k) EXPECT_EQ(d.amplitude(k), back.amplitude(k));
}
