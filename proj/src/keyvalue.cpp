// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The isacsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "isac/keyvalue.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace isac
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        bool valid_key(std::string_view k)
        {
            if (k.empty())
                return false;
            return std::all_of(k.begin(), k.end(), [](char c)
                               { return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-'; });
        }

        std::optional<double> to_double(std::string_view s)
        {
            s = trim(s);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
                return std::nullopt;
            return v;
        }
    }

    KeyValueFile KeyValueFile::parse(std::string_view text, std::string source_name)
    {
        KeyValueFile kv;
        kv.source_ = std::move(source_name);
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const std::size_t eol = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, eol - pos);
            pos = eol + 1;
            ++line_no;

            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
            {
                if (eol == text.size())
                    break;
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(kv.source_ + ":" + std::to_string(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (!valid_key(key))
                throw ConfigError(kv.source_ + ":" + std::to_string(line_no) + ": invalid key '" + key + "'");
            if (kv.entries_.count(key))
                throw ConfigError(kv.source_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "' (first on line " +
                                  std::to_string(kv.entries_[key].line) + ")");
            kv.entries_[key] = {value, line_no};
            if (eol == text.size())
                break;
        }
        return kv;
    }

    KeyValueFile KeyValueFile::load(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse(ss.str(), path.string());
    }

    bool KeyValueFile::has(const std::string &key) const { return entries_.count(key) != 0; }

    void KeyValueFile::set(const std::string &key, std::string value) { entries_[key] = {std::move(value), 0}; }

    std::string KeyValueFile::where(const std::string &key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end() || it->second.line == 0)
            return source_ + ": ";
        return source_ + ":" + std::to_string(it->second.line) + ": ";
    }

    const KeyValueFile::Entry &KeyValueFile::require(const std::string &key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(source_ + ": missing required key '" + key + "'");
        used_.insert(key);
        return it->second;
    }

    std::string KeyValueFile::text(const std::string &key) const { return require(key).value; }

    std::string KeyValueFile::text_or(const std::string &key, std::string fallback) const
    {
        return has(key) ? text(key) : std::move(fallback);
    }

    double KeyValueFile::number(const std::string &key) const
    {
        const auto &e = require(key);
        auto v = to_double(e.value);
        if (!v)
            throw ConfigError(where(key) + "key '" + key + "': expected a number, got '" + e.value + "'");
        return *v;
    }

    double KeyValueFile::number_or(const std::string &key, double fallback) const
    {
        return has(key) ? number(key) : fallback;
    }

    long long KeyValueFile::integer(const std::string &key) const
    {
        const auto &e = require(key);
        long long v = 0;
        std::string_view s = trim(e.value);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw ConfigError(where(key) + "key '" + key + "': expected an integer, got '" + e.value + "'");
        return v;
    }

    long long KeyValueFile::integer_or(const std::string &key, long long fallback) const
    {
        return has(key) ? integer(key) : fallback;
    }

    bool KeyValueFile::boolean_or(const std::string &key, bool fallback) const
    {
        if (!has(key))
            return fallback;
        const auto &e = require(key);
        if (e.value == "true" || e.value == "1" || e.value == "yes" || e.value == "on")
            return true;
        if (e.value == "false" || e.value == "0" || e.value == "no" || e.value == "off")
            return false;
        throw ConfigError(where(key) + "key '" + key + "': expected true/false, got '" + e.value + "'");
    }

    std::vector<double> KeyValueFile::numbers(const std::string &key) const
    {
        const auto &e = require(key);
        std::vector<double> out;
        std::string_view s = e.value;
        while (true)
        {
            const auto comma = s.find(',');
            auto v = to_double(s.substr(0, comma));
            if (!v)
                throw ConfigError(where(key) + "key '" + key + "': expected comma-separated numbers, got '" + e.value + "'");
            out.push_back(*v);
            if (comma == std::string_view::npos)
                break;
            s.remove_prefix(comma + 1);
        }
        return out;
    }

    std::vector<std::string> KeyValueFile::keys_with_prefix(std::string_view prefix) const
    {
        std::vector<std::string> out;
        for (auto it = entries_.lower_bound(std::string(prefix)); it != entries_.end(); ++it)
        {
            if (it->first.compare(0, prefix.size(), prefix) != 0)
                break;
            out.push_back(it->first);
        }
        return out;
    }

    std::vector<std::string> KeyValueFile::keys() const
    {
        std::vector<std::string> out;
        for (const auto &[k, _] : entries_)
            out.push_back(k);
        return out;
    }

    void KeyValueFile::reject_unused() const
    {
        std::string bad;
        for (const auto &[k, e] : entries_)
        {
            if (!used_.count(k))
            {
                bad += "\n  " + where(k) + "unknown key '" + k + "'";
            }
        }
        if (!bad.empty())
            throw ConfigError("unrecognized configuration keys:" + bad);
    }
}
