#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fusalens::csv {

using Row = std::vector<std::string>;

/// Splits comma-separated text into rows. Double-quoted fields may contain
/// commas, doubled quotes and line breaks. A leading UTF-8 BOM is skipped and
/// blank lines are dropped. Throws ParseError on an unterminated quote.
std::vector<Row> parse(std::string_view content);

/// Quotes the field when it contains a comma, quote, line break or space.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

}  // namespace fusalens::csv
