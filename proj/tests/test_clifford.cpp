// Copyright 2026 The BSSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "bssc/clifford.hpp"
#include "oracles.hpp"

using namespace bssc;

namespace {

BitMat random_invertible(std::mt19937& gen, int m) {
    for (;;) {
        BitMat a(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) a.set(i, j, gen() & 1u);
        if (a.inverse()) return a;
    }
}

BitMat random_symmetric(std::mt19937& gen, int m) {
    return symmetric_from_bits(m, gen() & ((std::uint64_t{1} << (m * (m + 1) / 2)) - 1));
}

CliffordOp random_op(std::mt19937& gen, int m, int len) {
    CliffordOp op(m);
    for (int k = 0; k < len; ++k) {
        switch (gen() % 4) {
            case 0: op = op * CliffordOp::g_d(random_invertible(gen, m)); break;
            case 1: op = op * CliffordOp::g_u(random_symmetric(gen, m)); break;
            case 2: op = op * CliffordOp::g_omega(m, static_cast<int>(gen() % (m + 1))); break;
            default: op = op * CliffordOp::z(m, static_cast<int>(gen() % (m + 1))); break;
        }
    }
    return op;
}

/// Symplectic image by brute-force search: row i is the (a,b) with
/// G E(e_i) G^dagger proportional to D(a,b).
BitMat phi_by_search(const CliffordOp& op) {
    const int m = op.m();
    const Eigen::MatrixXcd g = dense(op);
    BitMat f(2 * m, 2 * m);
    for (int i = 0; i < 2 * m; ++i) {
        const std::uint32_t c = 1u << (2 * m - 1 - i);
        const Eigen::MatrixXcd conj = g * oracle::pauli_dense(m, c >> m, c & low_mask(m)) * g.adjoint();
        int found = 0;
        for (std::uint32_t a = 0; a < (1u << m); ++a)
            for (std::uint32_t b = 0; b < (1u << m); ++b) {
                const Eigen::MatrixXcd d = oracle::pauli_dense(m, a, b);
                const cd ratio = (d.adjoint() * conj).trace() / static_cast<double>(1u << m);
                if (std::abs(std::abs(ratio) - 1.0) < 1e-9) {
                    ++found;
                    for (int j = 0; j < m; ++j) {
                        f.set(i, j, (a >> (m - 1 - j)) & 1u);
                        f.set(i, m + j, (b >> (m - 1 - j)) & 1u);
                    }
                }
            }
        EXPECT_EQ(found, 1);
    }
    return f;
}

}  // namespace

TEST(Clifford, ApplyExamples) {
    CVec delta(8);
    delta[0] = 1;
    for (const cd& z : bssc::apply(CliffordOp::g_omega(3, 3), delta)) EXPECT_NEAR(std::abs(z - 1.0 / std::sqrt(8.0)), 0, 1e-15);
    const Eigen::MatrixXcd u = dense(CliffordOp::g_u(BitMat::from_rows({"1"})));
    EXPECT_EQ(u(0, 0), cd(1, 0));
    EXPECT_EQ(u(1, 1), cd(0, 1));
    EXPECT_EQ(u(0, 1), cd(0, 0));
}

// e_v -> e_{P^T v} under the big-endian index: for P = [[1,0],[1,1]],
// 01 -> 11 and 11 -> 01.
TEST(Clifford, PermutationConvention) {
    const BitMat p = BitMat::from_rows({"10", "11"});
    const Eigen::MatrixXcd d = dense(CliffordOp::g_d(p));
    const std::uint32_t image[4] = {0, 3, 2, 1};
    for (std::uint32_t v = 0; v < 4; ++v) {
        EXPECT_EQ(image[v], p.transpose().apply_word(v));
        EXPECT_EQ(d(image[v], v), cd(1, 0));
    }
}

TEST(Clifford, DenseExamples) {
    EXPECT_TRUE(dense(CliffordOp::identity(3)).isIdentity(0));
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    EXPECT_LT((dense(CliffordOp::g_omega(1, 1)) - h).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(dense(CliffordOp::identity(6)), ResourceError);
}

TEST(Clifford, PartialHadamardClosedForm) {
    for (int m = 1; m <= 4; ++m)
        for (int r = 0; r <= m; ++r) {
            const Eigen::MatrixXcd g = dense(CliffordOp::g_omega(m, r) * CliffordOp::z(m, r));
            for (std::uint32_t v = 0; v < (1u << m); ++v)
                for (std::uint32_t w = 0; w < (1u << m); ++w) {
                    const double f = f_eval(BitVec(m, v), BitVec(m, w), r) ? 1.0 : 0.0;
                    const double expect = (std::popcount(v & w) % 2 ? -1.0 : 1.0) * f * std::pow(2.0, -0.5 * r);
                    EXPECT_NEAR(std::abs(g(v, w) - expect), 0.0, 1e-14);
                }
        }
}

TEST(Clifford, FEvalExamples) {
    EXPECT_TRUE(f_eval(BitVec::from_string("01"), BitVec::from_string("10"), 2));
    EXPECT_FALSE(f_eval(BitVec::from_string("00"), BitVec::from_string("01"), 1));
    EXPECT_TRUE(f_eval(BitVec::from_string("10"), BitVec::from_string("00"), 1));
    EXPECT_FALSE(f_eval(BitVec::from_string("011"), BitVec::from_string("001"), 1));
}

TEST(Clifford, UnitaryAndStructuredMatchesDense) {
    std::mt19937 gen(12);
    for (int t = 0; t < 50; ++t) {
        const int m = 1 + t % 4;
        const CliffordOp op = random_op(gen, m, 1 + static_cast<int>(gen() % 5));
        const Eigen::MatrixXcd g = dense(op);
        const auto n = static_cast<Eigen::Index>(1u << m);
        EXPECT_LT((g.adjoint() * g - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((dense(op.dagger()) - g.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        std::normal_distribution<double> nd;
        CVec x(static_cast<std::size_t>(n));
        for (cd& z : x) z = {nd(gen), nd(gen)};
        const Eigen::VectorXcd y = g * oracle::to_eigen(x);
        const CVec got = bssc::apply(op, x);
        for (Eigen::Index i = 0; i < n; ++i) EXPECT_LT(std::abs(got[static_cast<std::size_t>(i)] - y(i)), 1e-12);
    }
}

TEST(Phi, Generators) {
    std::mt19937 gen(14);
    for (int m = 1; m <= 3; ++m)
        for (int t = 0; t < 10; ++t) {
            const BitMat p = random_invertible(gen, m);
            const BitMat s = random_symmetric(gen, m);
            EXPECT_EQ(phi(CliffordOp::g_d(p)), f_d(p));
            EXPECT_EQ(phi(CliffordOp::g_u(s)), f_u(s));
            for (int r = 0; r <= m; ++r) EXPECT_EQ(phi(CliffordOp::g_omega(m, r)), f_omega(m, r));
            EXPECT_EQ(phi(CliffordOp::g_d(p)).matrix(), phi_by_search(CliffordOp::g_d(p)));
            EXPECT_EQ(phi(CliffordOp::g_u(s)).matrix(), phi_by_search(CliffordOp::g_u(s)));
        }
    EXPECT_EQ(phi(CliffordOp::g_omega(3, 3)).matrix(), omega(3));
}

// Conjugation images compose in reverse order under the row convention.
TEST(Phi, ReversesProducts) {
    std::mt19937 gen(16);
    for (int t = 0; t < 60; ++t) {
        const int m = 1 + t % 3;
        const CliffordOp g1 = random_op(gen, m, 3);
        const CliffordOp g2 = random_op(gen, m, 3);
        EXPECT_EQ(phi(g1 * g2), phi(g2) * phi(g1));
        EXPECT_EQ(phi(g1).matrix(), phi_by_search(g1));
    }
}

TEST(Phi, CosetPreimages) {
    for (int m = 1; m <= 3; ++m)
        for (const CosetLabel& l : enumerate_cosets(m)) {
            EXPECT_EQ(phi(coset_preimage(l)), coset_rep(l));
            EXPECT_EQ(phi(bssc_generator(l)),
                      f_omega(m, l.r) * f_u(l.embedded_s()) * f_d(l.sub.completion().transpose()));
        }
}

TEST(Clifford, ValidatesFactors) {
    EXPECT_THROW(CliffordOp::g_d(BitMat::from_rows({"11", "11"})), DomainError);
    EXPECT_THROW(CliffordOp::g_u(BitMat::from_rows({"01", "00"})), DomainError);
    EXPECT_THROW(CliffordOp::g_omega(2, 3), DomainError);
    EXPECT_THROW(CliffordOp::identity(2) * CliffordOp::identity(3), DimensionError);
}
