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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace isac
{
    // Flat "dotted.key = value" text format shared by run configs and scenario tables.
    //
    //   # comment (also allowed after a value)
    //   nodes.tx.position = 0, 0, 10
    //   concat_case = Case2RN
    //
    // Keys are unique. Values are trimmed strings; typed accessors parse on demand and
    // report errors with the source name and line. Every accessor marks the key as used so
    // that reject_unused() can flag misspelt keys.
    class KeyValueFile
    {
    public:
        static KeyValueFile parse(std::string_view text, std::string source_name = "<string>");
        static KeyValueFile load(const std::filesystem::path &path);

        bool has(const std::string &key) const;
        void set(const std::string &key, std::string value); // programmatic override, line 0

        std::string text(const std::string &key) const;
        std::string text_or(const std::string &key, std::string fallback) const;
        double number(const std::string &key) const;
        double number_or(const std::string &key, double fallback) const;
        long long integer(const std::string &key) const;
        long long integer_or(const std::string &key, long long fallback) const;
        bool boolean_or(const std::string &key, bool fallback) const;
        std::vector<double> numbers(const std::string &key) const;

        // Keys starting with prefix (prefix included), sorted.
        std::vector<std::string> keys_with_prefix(std::string_view prefix) const;
        std::vector<std::string> keys() const;

        // Throws ConfigError naming every key no accessor has read.
        void reject_unused() const;

        // "source:line: " prefix for diagnostics about key.
        std::string where(const std::string &key) const;

        // Marks a key consumed without reading it.
        void touch(const std::string &key) const { used_.insert(key); }

    private:
        struct Entry
        {
            std::string value;
            int line = 0;
        };
        const Entry &require(const std::string &key) const;

        std::string source_;
        std::map<std::string, Entry> entries_;
        mutable std::set<std::string> used_;
    };
}
