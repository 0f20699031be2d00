#include "hesse/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hesse {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && quoted) {
      ++i;
      continue;
    }
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool quotes_closed(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && quoted) ++i;
    else if (s[i] == '"') quoted = !quoted;
  }
  return !quoted;
}

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

double to_number(std::string_view s, int line) {
  s = trim(s);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ManifestError("expected a number, got '" + std::string(s) + "'", line);
  return v;
}

std::string unquote(std::string_view s, int line) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::string(s);
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\') {
      if (i + 2 >= s.size()) throw ManifestError("dangling escape in string", line);
      out += s[++i];
    } else if (s[i] == '"') {
      throw ManifestError("unescaped quote inside string", line);
    } else {
      out += s[i];
    }
  }
  return out;
}

// Splits on commas outside quotes and brackets.
std::vector<std::string_view> split_items(std::string_view s, int line) {
  std::vector<std::string_view> items;
  int depth = 0;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quoted) {
      if (c == '\\') ++i;
      else if (c == '"') quoted = false;
      continue;
    }
    if (c == '"') quoted = true;
    else if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == ',' && depth == 0) {
      items.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
    if (depth < 0) throw ManifestError("unbalanced brackets", line);
  }
  if (quoted) throw ManifestError("unterminated string", line);
  if (depth != 0) throw ManifestError("unbalanced brackets", line);
  const auto last = trim(s.substr(start));
  if (!last.empty() || !items.empty()) items.push_back(last);
  for (const auto& it : items)
    if (it.empty()) throw ManifestError("empty list item", line);
  return items;
}

std::string_view bracketed(std::string_view s, char open, char close, int line) {
  s = trim(s);
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw ManifestError(std::string("expected a value in ") + open + close, line);
  return s.substr(1, s.size() - 2);
}

}  // namespace

const Manifest::Entry* Manifest::Section::find(std::string_view key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

Manifest Manifest::parse(std::string_view text) {
  Manifest m;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ManifestError("malformed section header", line_no);
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name)) throw ManifestError("invalid section name '" + std::string(name) + "'", line_no);
      if (m.find(name)) throw ManifestError("duplicate section [" + std::string(name) + "]", line_no);
      m.sections_.push_back({std::string(name), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ManifestError("expected 'key = value'", line_no);
    if (m.sections_.empty()) throw ManifestError("entry before any [section]", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!valid_name(key)) throw ManifestError("invalid key '" + std::string(key) + "'", line_no);
    if (value.empty()) throw ManifestError("missing value for '" + std::string(key) + "'", line_no);
    if (!quotes_closed(value)) throw ManifestError("unterminated string", line_no);
    auto& section = m.sections_.back();
    if (section.find(key)) throw ManifestError("duplicate key '" + std::string(key) + "'", line_no);
    section.entries.push_back({std::string(key), std::string(value), line_no});
  }
  return m;
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const Manifest::Section* Manifest::find(std::string_view section) const {
  for (const auto& s : sections_)
    if (s.name == section) return &s;
  return nullptr;
}

bool Manifest::has(std::string_view section, std::string_view key) const {
  const Section* s = find(section);
  return s && s->find(key);
}

const Manifest::Entry& Manifest::entry(std::string_view section, std::string_view key) const {
  const Section* s = find(section);
  if (!s) throw ManifestError("missing section [" + std::string(section) + "]", 0);
  const Entry* e = s->find(key);
  if (!e) throw ManifestError("missing key '" + std::string(key) + "' in [" + std::string(section) + "]", s->line);
  return *e;
}

std::string Manifest::text(std::string_view section, std::string_view key) const {
  const Entry& e = entry(section, key);
  return unquote(e.value, e.line);
}

double Manifest::number(std::string_view section, std::string_view key) const {
  const Entry& e = entry(section, key);
  return to_number(e.value, e.line);
}

long long Manifest::integer(std::string_view section, std::string_view key) const {
  const Entry& e = entry(section, key);
  long long v = 0;
  const auto s = trim(e.value);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ManifestError("expected an integer for '" + e.key + "', got '" + e.value + "'", e.line);
  return v;
}

std::uint64_t Manifest::unsigned_integer(std::string_view section, std::string_view key) const {
  const Entry& e = entry(section, key);
  std::uint64_t v = 0;
  const auto s = trim(e.value);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ManifestError("expected an unsigned integer for '" + e.key + "', got '" + e.value + "'", e.line);
  return v;
}

bool Manifest::boolean(std::string_view section, std::string_view key) const {
  const Entry& e = entry(section, key);
  const auto v = unquote(e.value, e.line);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ManifestError("expected true or false for '" + e.key + "'", e.line);
}

std::vector<std::string> Manifest::texts(std::string_view section, std::string_view key) const {
  const Entry& e = entry(section, key);
  std::vector<std::string> out;
  for (const auto& item : split_items(bracketed(e.value, '[', ']', e.line), e.line)) out.push_back(unquote(item, e.line));
  return out;
}

std::vector<double> Manifest::numbers(std::string_view section, std::string_view key) const {
  const Entry& e = entry(section, key);
  std::vector<double> out;
  for (const auto& item : split_items(bracketed(e.value, '[', ']', e.line), e.line)) out.push_back(to_number(item, e.line));
  return out;
}

std::vector<Eigen::VectorXd> Manifest::points(std::string_view section, std::string_view key) const {
  const Entry& e = entry(section, key);
  std::vector<Eigen::VectorXd> out;
  for (const auto& item : split_items(e.value, e.line)) {
    const auto coords = split_items(bracketed(item, '(', ')', e.line), e.line);
    Eigen::VectorXd p(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) p[static_cast<Eigen::Index>(i)] = to_number(coords[i], e.line);
    if (!out.empty() && out.front().size() != p.size())
      throw ManifestError("points of different dimension in '" + e.key + "'", e.line);
    out.push_back(std::move(p));
  }
  if (out.empty()) throw ManifestError("empty point list", e.line);
  return out;
}

std::string Manifest::text_or(std::string_view section, std::string_view key, std::string fallback) const {
  return has(section, key) ? text(section, key) : fallback;
}

double Manifest::number_or(std::string_view section, std::string_view key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

long long Manifest::integer_or(std::string_view section, std::string_view key, long long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

void Manifest::require_keys(std::string_view section, const std::vector<std::string_view>& allowed) const {
  const Section* s = find(section);
  if (!s) return;
  for (const auto& e : s->entries)
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
      throw ManifestError("unknown key '" + e.key + "' in [" + s->name + "]", e.line);
}

}  // namespace hesse
