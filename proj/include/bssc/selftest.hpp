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

#pragma once

// Exhaustive small-m invariant checks grouped for the `selftest` command.

#include <fmt/format.h>

#include <cstdint>
#include <string>
#include <vector>

#include "bssc/clifford.hpp"
#include "bssc/codebook.hpp"
#include "bssc/decoder.hpp"
#include "bssc/pauli.hpp"
#include "bssc/symplectic.hpp"

namespace bssc {

struct SelftestOptions {
    int max_m = 3;
    bool corrupt_phase = false;  // fault injection: perturb one phase per codeword
};

struct GroupResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct SelftestReport {
    std::vector<GroupResult> groups;
    bool passed() const {
        for (const auto& g : groups)
            if (!g.passed) return false;
        return true;
    }
};

namespace detail {

inline CVec selftest_vector(const BsscParams& p, const SelftestOptions& opt) {
    Codeword w = synthesize(p);
    if (opt.corrupt_phase && w.support.size() > 1) w.phase[0] = static_cast<std::uint8_t>((w.phase[0] + 1) & 3);
    return w.to_complex();
}

inline GroupResult check_stabilizer(const SelftestOptions& opt) {
    GroupResult g{"stabilizer", true, {}};
    std::uint64_t checked = 0;
    for (int m = 1; m <= opt.max_m; ++m) {
        for (std::uint64_t c = 0; c < coset_count(m); ++c) {
            const CosetLabel label = coset_at(m, c);
            const StabilizerGroup stab = stabilizer_of_bssc(label);
            const auto gens = stab.generators();
            std::vector<std::uint32_t> patterns;
            for (std::uint32_t b = 0; b < (1u << m); ++b) {
                const CVec w = selftest_vector(BsscParams(label, BitVec(m, b)), opt);
                for (std::uint32_t x = 0; x < (1u << m); ++x) {
                    const CVec ew = bssc::apply(stab.element(x), w);
                    if (ew != w) {
                        CVec neg(w.size());
                        for (std::size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
                        if (ew != neg) {
                            g.passed = false;
                            g.detail = fmt::format("m={} coset {} b={} not an eigenvector", m, c, b);
                            return g;
                        }
                    }
                    ++checked;
                }
                std::uint32_t signs = 0;
                for (std::size_t k = 0; k < gens.size(); ++k)
                    if (bssc::apply(gens[k], w) != w) signs |= 1u << k;
                patterns.push_back(signs);
            }
            std::sort(patterns.begin(), patterns.end());
            if (std::adjacent_find(patterns.begin(), patterns.end()) != patterns.end()) {
                g.passed = false;
                g.detail = fmt::format("m={} coset {}: eigenvalue patterns collide", m, c);
                return g;
            }
        }
    }
    g.detail = fmt::format("{} (codeword, element) pairs", checked);
    return g;
}

inline GroupResult check_phi(const SelftestOptions& opt) {
    GroupResult g{"phi", true, {}};
    std::uint64_t checked = 0;
    for (int m = 1; m <= opt.max_m; ++m)
        for (const CosetLabel& label : enumerate_cosets(m)) {
            const CliffordOp gd = CliffordOp::g_d(label.sub.completion().transpose());
            const CliffordOp gu = CliffordOp::g_u(label.embedded_s());
            const CliffordOp go = CliffordOp::g_omega(m, label.r);
            const bool ok = phi(coset_preimage(label)) == coset_rep(label) &&
                            phi(bssc_generator(label)) == phi(go) * phi(gu) * phi(gd) &&
                            phi(gd * gu) == phi(gu) * phi(gd);
            if (!ok) {
                g.passed = false;
                g.detail = fmt::format("m={} coset {}", m, coset_index(label));
                return g;
            }
            ++checked;
        }
    g.detail = fmt::format("{} coset labels", checked);
    return g;
}

inline GroupResult check_coherence(const SelftestOptions& opt) {
    GroupResult g{"coherence", true, {}};
    for (int m = 2; m <= opt.max_m; ++m) {
        std::vector<Codeword> book;
        for (const BsscParams& p : enumerate_codebook(m)) {
            Codeword w = synthesize(p);
            if (opt.corrupt_phase && w.support.size() > 1) w.phase[0] = static_cast<std::uint8_t>((w.phase[0] + 1) & 3);
            book.push_back(std::move(w));
        }
        DyadicRational worst{0, 0};
        for (std::size_t i = 0; i < book.size(); ++i)
            for (std::size_t j = i + 1; j < book.size(); ++j) worst = std::max(worst, inner(book[i], book[j]).abs2());
        const bool ok = worst == DyadicRational{1, 1};
        g.passed = g.passed && ok;
        g.detail += fmt::format("{}m={} max |ip|^2 = {}", g.detail.empty() ? "" : "; ", m, worst.value());
    }
    return g;
}

inline GroupResult check_roundtrip(const SelftestOptions& opt) {
    GroupResult g{"roundtrip", true, {}};
    std::uint64_t checked = 0;
    for (int m = 1; m <= opt.max_m; ++m)
        for (std::uint64_t id = 0; id < codebook_size(m); ++id) {
            const BsscParams p = params_at(m, id);
            bool ok = false;
            try {
                ok = decode_noiseless(selftest_vector(p, opt)) == p;
            } catch (const DecodeError&) {
            }
            if (!ok) {
                g.passed = false;
                g.detail = fmt::format("m={} id {} not recovered", m, id);
                return g;
            }
            ++checked;
        }
    g.detail = fmt::format("{} codewords", checked);
    return g;
}

}  // namespace detail

inline SelftestReport run_selftest(const SelftestOptions& opt = {}) {
    SelftestReport rep;
    rep.groups.push_back(detail::check_stabilizer(opt));
    rep.groups.push_back(detail::check_phi(opt));
    rep.groups.push_back(detail::check_coherence(opt));
    rep.groups.push_back(detail::check_roundtrip(opt));
    return rep;
}

}  // namespace bssc
