#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace physqa {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Word tokenization shared by the similarity and ROUGE paths: lowercase,
// split on runs of non-alphanumeric characters.
std::vector<std::string> tokenize(std::string_view s);

// Collapses whitespace runs to single spaces (used for containment matching).
std::string normalize_spaces(std::string_view s);

std::vector<std::string> split_lines(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with(std::string_view s, std::string_view prefix);

// Replaces every "{name}" placeholder with its value; unknown placeholders
// are left untouched so callers can detect them.
std::string substitute_placeholders(
    std::string_view tmpl,
    const std::vector<std::pair<std::string, std::string>>& values);

// Compact numeric formatting for generated option texts ("2", "1.41", "0.632").
std::string format_number(double v);

}  // namespace physqa
