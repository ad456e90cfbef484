#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "schurkit/lr.hpp"
#include "schurkit/partition.hpp"
#include "schurkit/semigroup.hpp"

namespace schurkit {

// ---------------------------------------------------------------------------
// Partition literals: `p1,p2,...` non-increasing, or `0` for the zero partition.

inline partition parse_partition_arg(std::string_view text) {
  auto fail = [&](std::size_t pos, const std::string& why) -> partition {
    throw error(errc::parse_error, "'" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + why);
  };
  if (text == "0") return partition{};
  if (text.empty()) return fail(0, "empty partition literal");
  std::vector<part_t> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t start = pos;
    part_t value = 0;
    auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range) return fail(start, "part too large");
    if (ec != std::errc{} || text[start] == '-' || text[start] == '+') return fail(start, "expected a digit");
    pos = static_cast<std::size_t>(end - text.data());
    if (parts.empty() && value == 0) return fail(start, "leading part must be positive");
    parts.push_back(value);
    if (pos == text.size()) break;
    if (text[pos] != ',') return fail(pos, "expected ','");
    ++pos;
    if (pos == text.size()) return fail(pos, "trailing ','");
  }
  return make_partition(std::move(parts));
}

/// `[l1,l2,...]` with positive blocks.
inline composition parse_composition_arg(std::string_view text) {
  auto fail = [&](const std::string& why) -> composition {
    throw error(errc::parse_error, "'" + std::string(text) + "': " + why);
  };
  if (text.size() < 3 || text.front() != '[' || text.back() != ']') return fail("expected [l1,l2,...]");
  composition out;
  std::string_view body = text.substr(1, text.size() - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto token = body.substr(0, comma);
    part_t value = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size() || value < 1) return fail("bad block");
    out.blocks.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) return fail("trailing ','");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cache file: one `A|C|B<TAB>value<LF>` record per line, sorted bytewise.

using cache_map = lr_cache::map_type;

inline std::string cache_line(const lr_key& key, const bigint& value) {
  const auto k = key.canonical();
  return to_string(k.inner) + "|" + to_string(k.content) + "|" + to_string(k.outer) + "\t" + value.str() + "\n";
}

inline std::string render_cache(const cache_map& records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& [k, v] : records) lines.push_back(cache_line(k, v));
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const auto& l : lines) out += l;
  return out;
}

/// Parses cache text. With `paranoid`, every value is recomputed and a
/// disagreement is reported as StaleValue.
inline cache_map parse_cache(std::string_view text, bool paranoid = false) {
  cache_map out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos)
      throw error(errc::format_error, "line " + std::to_string(line_no) + ": missing line feed");
    const std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl + 1);
    auto fail = [&](const std::string& why) -> void {
      throw error(errc::format_error, "line " + std::to_string(line_no) + ": " + why);
    };
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) fail("missing tab");
    const auto key_text = line.substr(0, tab);
    const auto value_text = line.substr(tab + 1);
    const auto bar1 = key_text.find('|');
    const auto bar2 = bar1 == std::string_view::npos ? bar1 : key_text.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos || key_text.find('|', bar2 + 1) != std::string_view::npos)
      fail("expected A|C|B");
    if (value_text.empty() || !std::all_of(value_text.begin(), value_text.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      fail("value is not a decimal integer");
    lr_key key;
    try {
      key.inner = parse_partition_arg(key_text.substr(0, bar1));
      key.content = parse_partition_arg(key_text.substr(bar1 + 1, bar2 - bar1 - 1));
      key.outer = parse_partition_arg(key_text.substr(bar2 + 1));
    } catch (const error& e) {
      fail(e.what());
    }
    if (key.outer.weight() != key.inner.weight() + key.content.weight()) fail("weights do not add up");
    const bigint value{std::string(value_text)};
    if (paranoid) {
      const auto fresh = lr_coefficient(key.inner, key.content, key.outer);
      if (fresh != value)
        throw error(errc::stale_value, "line " + std::to_string(line_no) + ": stored " + value.str() +
                                           ", recomputed " + fresh.str());
    }
    out.insert_or_assign(key.canonical(), value);
  }
  return out;
}

/// A missing file is an empty cache.
inline cache_map cache_load(const std::filesystem::path& path, bool paranoid = false) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io_error, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw error(errc::io_error, "cannot read " + path.string());
  return parse_cache(buf.str(), paranoid);
}

/// Writes to a sibling temporary file and renames it over `path`, so
/// concurrent readers see either the old or the new cache.
inline void cache_store(const std::filesystem::path& path, const cache_map& records) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error(errc::io_error, "cannot write " + tmp.string());
    out << render_cache(records);
    out.flush();
    if (!out) throw error(errc::io_error, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw error(errc::io_error, "cannot replace " + path.string());
  }
}

// ---------------------------------------------------------------------------
// JSON

using json = nlohmann::ordered_json;

inline json to_json(const partition& p) { return json(p.parts()); }
inline json to_json(const composition& c) { return json(c.blocks); }

inline json to_json(const decomposition& dec) {
  json terms = json::array();
  for (const auto& [b, m] : dec.terms) terms.push_back(json{{"b", to_json(b)}, {"mult", m.str()}});
  return json{{"rank", dec.rank}, {"terms", std::move(terms)}};
}

inline json to_json(const std::map<composition, part_t>& m) {
  json out = json::array();
  for (const auto& [blocks, k] : m) out.push_back(json{{"L", to_json(blocks)}, {"count", k}});
  return out;
}

inline json to_json(const certificate& cert) {
  return json{{"a", to_json(cert.a)},
              {"n", cert.n},
              {"b", to_json(cert.b)},
              {"l", cert.l},
              {"f", to_json(cert.f)},
              {"m", to_json(cert.witness.m)},
              {"weight_identity", cert.weight_identity},
              {"verified", cert.verified}};
}

// ---------------------------------------------------------------------------
// Text records

inline std::string format_counts(const std::map<composition, part_t>& m) {
  std::string out;
  for (const auto& [blocks, k] : m) {
    if (!out.empty()) out += ';';
    out += to_string(blocks) + ":" + std::to_string(k);
  }
  return out;
}

inline std::string format_record(const certificate& cert) {
  return "a=" + to_string(cert.a) + " n=" + std::to_string(cert.n) + " b=" + to_string(cert.b) +
         " l=" + std::to_string(cert.l) + " f=" + to_string(cert.f) + " m=" + format_counts(cert.witness.m) +
         " weight_identity=" + (cert.weight_identity ? "true" : "false") +
         " verified=" + (cert.verified ? "true" : "false");
}

inline std::string format_decomposition(const decomposition& dec) {
  std::string out;
  for (const auto& [b, m] : dec.terms) out += to_string(b) + "\t" + m.str() + "\n";
  return out;
}

}  // namespace schurkit
