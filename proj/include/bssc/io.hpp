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

// Text formats used by the command-line tool: signal vectors, sweep grid
// specifications, and atomic file output.

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bssc/errors.hpp"
#include "bssc/sim.hpp"
#include "bssc/types.hpp"

namespace bssc {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k)
        if (k == s.size() || s[k] == sep) {
            out.push_back(trim(s.substr(start, k - start)));
            start = k + 1;
        }
    return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace detail

/// One `index,re,im` line per coordinate, all 2^m present; an optional
/// header line is skipped.
inline CVec read_signal_csv(std::istream& in, int m) {
    const std::size_t n = std::size_t{1} << m;
    CVec out(n);
    std::vector<bool> seen(n, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view t = detail::trim(line);
        if (t.empty()) continue;
        const auto f = detail::split(t, ',');
        if (f.size() != 3) throw IoError(fmt::format("line {}: expected index,re,im", lineno));
        const auto idx = detail::parse_number<std::size_t>(f[0]);
        if (!idx) {
            if (lineno == 1) continue;  // header
            throw IoError(fmt::format("line {}: bad index", lineno));
        }
        const auto re = detail::parse_number<double>(f[1]);
        const auto im = detail::parse_number<double>(f[2]);
        if (!re || !im || !std::isfinite(*re) || !std::isfinite(*im))
            throw IoError(fmt::format("line {}: bad complex value", lineno));
        if (*idx >= n) throw IoError(fmt::format("line {}: index {} out of range", lineno, *idx));
        if (seen[*idx]) throw IoError(fmt::format("line {}: duplicate index {}", lineno, *idx));
        seen[*idx] = true;
        out[*idx] = {*re, *im};
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw IoError(fmt::format("signal must list all {} indices", n));
    return out;
}

inline std::string signal_csv(std::span<const cd> x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i)
        out += fmt::format("{},{},{}\n", i, format_number(x[i].real()), format_number(x[i].imag()));
    return out;
}

struct SweepSpec {
    std::vector<TrialConfig> configs;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

/// key = value lines; list values (a, b or [a, b]) span a grid. Keys: m,
/// users, trials, seed, codebook, decoder, noise, out, format. '#' starts a
/// comment.
inline SweepSpec parse_sweep_spec(std::istream& in) {
    std::map<std::string, std::vector<std::string>> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view t = line;
        if (const auto hash = t.find('#'); hash != std::string_view::npos) t = t.substr(0, hash);
        t = detail::trim(t);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ConfigError(fmt::format("sweep spec line {}: expected key = value", lineno));
        const std::string key(detail::trim(t.substr(0, eq)));
        std::string_view val = detail::trim(t.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '[' && val.back() == ']') val = val.substr(1, val.size() - 2);
        std::vector<std::string> items;
        for (std::string_view v : detail::split(val, ',')) {
            if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
            if (v.empty()) throw ConfigError(fmt::format("sweep spec line {}: empty value", lineno));
            items.emplace_back(v);
        }
        static const std::vector<std::string> known{"m", "users", "trials", "seed", "codebook", "decoder", "noise", "out", "format"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(fmt::format("sweep spec line {}: unknown key '{}'", lineno, key));
        if (kv.count(key)) throw ConfigError(fmt::format("sweep spec line {}: duplicate key '{}'", lineno, key));
        kv[key] = std::move(items);
    }

    SweepSpec spec;
    auto single = [&](const std::string& key) -> std::optional<std::string> {
        if (!kv.count(key)) return std::nullopt;
        if (kv[key].size() != 1) throw ConfigError("sweep spec key '" + key + "' takes one value");
        return kv[key].front();
    };
    spec.out = single("out");
    spec.format = single("format");
    auto ints = [&](const std::string& key, std::uint64_t dflt) {
        std::vector<std::uint64_t> out;
        if (!kv.count(key)) return std::vector<std::uint64_t>{dflt};
        for (const auto& v : kv[key]) {
            const auto x = detail::parse_number<std::uint64_t>(v);
            if (!x) throw ConfigError("sweep spec key '" + key + "': bad integer '" + v + "'");
            out.push_back(*x);
        }
        return out;
    };
    if (!kv.count("m")) throw ConfigError("sweep spec needs m");
    if (!kv.count("users")) throw ConfigError("sweep spec needs users");
    const auto ms = ints("m", 0);
    const auto users = ints("users", 1);
    const auto trials = single("trials").has_value() ? ints("trials", 0).front() : std::uint64_t{1000};
    const auto seed = single("seed").has_value() ? ints("seed", 0).front() : std::uint64_t{1};
    std::vector<std::string> books = kv.count("codebook") ? kv["codebook"] : std::vector<std::string>{"bssc"};
    std::vector<std::string> decs = kv.count("decoder") ? kv["decoder"] : std::vector<std::string>{"structured"};
    std::vector<double> noises;
    if (!kv.count("noise")) noises.push_back(0.0);
    else
        for (const auto& v : kv["noise"]) {
            const auto x = detail::parse_number<double>(v);
            if (!x) throw ConfigError("sweep spec key 'noise': bad number '" + v + "'");
            noises.push_back(*x);
        }
    for (const auto& b : books)
        for (const auto& d : decs)
            for (auto m : ms)
                for (auto l : users)
                    for (double nv : noises) {
                        TrialConfig c;
                        c.m = static_cast<int>(std::min<std::uint64_t>(m, 1000));
                        c.users = static_cast<int>(std::min<std::uint64_t>(l, 1u << 30));
                        c.trials = trials;
                        c.seed = seed;
                        c.codebook = parse_codebook_kind(b);
                        c.decoder = parse_decoder_kind(d);
                        c.noise_variance = nv;
                        spec.configs.push_back(c);
                    }
    return spec;
}

/// Writes `content` to a temporary sibling and renames it over `path`, so a
/// failed write never leaves a partial file.
inline void atomic_write(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::random_device rd;
    const fs::path tmp = dir / fmt::format(".{}.tmp{:08x}", path.filename().string(), rd());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot write " + path.string());
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("cannot write " + path.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot write " + path.string());
    }
}

}  // namespace bssc
