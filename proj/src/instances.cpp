#include "fairdiv/instances.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "fairdiv/error.hpp"

namespace fairdiv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

struct Line {
  std::size_t number;
  bool indented;
  std::string_view key;    // text before the first ':'
  std::string_view value;  // trimmed text after it
};

// Splits into non-blank, non-comment lines of the form "key: value".
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const std::size_t nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view body = trim(raw);
    if (body.empty() || body.front() == '#') continue;
    const std::size_t colon = body.find(':');
    if (colon == std::string_view::npos) throw ParseError(number, "", "expected 'key: value'");
    const bool indented = std::isspace(static_cast<unsigned char>(raw.front())) != 0;
    out.push_back({number, indented, trim(body.substr(0, colon)), trim(body.substr(colon + 1))});
  }
  return out;
}

Rational parse_value(const Line& line, std::string_view token, bool allow_above_one = true) {
  Rational r;
  try {
    r = Rational::parse(token);
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string(line.key), "malformed rational '" + std::string(token) + "'");
  }
  if (r.sign() < 0) throw ParseError(line.number, std::string(line.key), "negative value " + r.str());
  if (!allow_above_one && r > Rational(1)) {
    throw ParseError(line.number, std::string(line.key), "fraction " + r.str() + " exceeds 1");
  }
  return r;
}

std::size_t parse_count(const Line& line) {
  const std::string s(line.value);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError(line.number, std::string(line.key), "expected a non-negative integer");
  }
  try {
    return static_cast<std::size_t>(std::stoull(s));
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string(line.key), "integer out of range");
  }
}

bool valid_label(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '-'; });
}

void expect_format(const std::vector<Line>& lines, std::string_view format) {
  if (lines.empty()) throw ParseError(1, "format", "empty document");
  const Line& first = lines.front();
  if (first.indented || first.key != "format") throw ParseError(first.number, "format", "the first entry must be 'format'");
  if (first.value != format) {
    throw ParseError(first.number, "format", "unsupported format '" + std::string(first.value) + "'");
  }
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  expect_format(lines, kInstanceFormat);

  std::optional<std::string> name, source;
  std::optional<std::size_t> agents;
  std::vector<std::vector<Rational>> goods[2];  // per good, one value per agent
  bool seen_block[2] = {false, false};
  int block = -1;
  std::size_t last_line = lines.front().number;

  for (std::size_t t = 1; t < lines.size(); ++t) {
    const Line& line = lines[t];
    last_line = line.number;
    if (line.indented) {
      if (block < 0) throw ParseError(line.number, std::string(line.key), "good entry outside a goods block");
      if (!valid_label(line.key)) throw ParseError(line.number, std::string(line.key), "invalid good label");
      const std::vector<std::string_view> tokens = split_ws(line.value);
      if (tokens.size() != *agents) {
        throw ParseError(line.number, std::string(line.key),
                         "expected " + std::to_string(*agents) + " values, found " + std::to_string(tokens.size()));
      }
      std::vector<Rational> values;
      values.reserve(tokens.size());
      for (std::string_view tok : tokens) values.push_back(parse_value(line, tok));
      goods[block].push_back(std::move(values));
      continue;
    }
    block = -1;
    const std::string key(line.key);
    if (key == "name" || key == "source") {
      if (agents) throw ParseError(line.number, key, "metadata must precede 'agents'");
      auto& slot = key == "name" ? name : source;
      if (slot) throw ParseError(line.number, key, "duplicate key");
      slot = std::string(line.value);
    } else if (key == "agents") {
      if (agents) throw ParseError(line.number, key, "duplicate key");
      agents = parse_count(line);
      if (*agents == 0) throw ParseError(line.number, key, "at least one agent is required");
    } else if (key == "indivisible" || key == "divisible") {
      if (!agents) throw ParseError(line.number, key, "'agents' must come first");
      if (!line.value.empty()) throw ParseError(line.number, key, "goods go on the following indented lines");
      block = key == "indivisible" ? 0 : 1;
      if (seen_block[block]) throw ParseError(line.number, key, "duplicate block");
      if (block == 0 && seen_block[1]) throw ParseError(line.number, key, "'indivisible' must precede 'divisible'");
      seen_block[block] = true;
    } else {
      throw ParseError(line.number, key, "unknown key");
    }
  }
  if (!agents) throw ParseError(last_line, "agents", "missing 'agents'");

  std::vector<std::vector<Rational>> rows[2];
  for (int b = 0; b < 2; ++b) {
    rows[b].assign(*agents, std::vector<Rational>(goods[b].size()));
    for (std::size_t g = 0; g < goods[b].size(); ++g) {
      for (std::size_t i = 0; i < *agents; ++i) rows[b][i][g] = goods[b][g][i];
    }
  }
  return InstanceFile{Instance(rows[0], rows[1]), std::move(name), std::move(source)};
}

std::string serialize_instance(const InstanceFile& file) {
  const Instance& inst = file.instance;
  std::ostringstream out;
  out << "format: " << kInstanceFormat << '\n';
  if (file.name) out << "name: " << *file.name << '\n';
  if (file.source) out << "source: " << *file.source << '\n';
  out << "agents: " << inst.agents() << '\n';
  out << "indivisible:\n";
  for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
    out << "  g" << g + 1 << ':';
    for (AgentId i = 0; i < inst.agents(); ++i) out << ' ' << inst.indiv(i, g).str();
    out << '\n';
  }
  out << "divisible:\n";
  for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
    out << "  d" << k + 1 << ':';
    for (AgentId i = 0; i < inst.agents(); ++i) out << ' ' << inst.div(i, k).str();
    out << '\n';
  }
  return out.str();
}

std::string serialize_instance(const Instance& inst) {
  return serialize_instance(InstanceFile{inst, std::nullopt, std::nullopt});
}

Allocation parse_allocation(std::string_view text, const Instance& inst) {
  const std::vector<Line> lines = tokenize(text);
  expect_format(lines, kAllocationFormat);
  std::optional<std::size_t> counts[3];
  const char* count_keys[3] = {"agents", "indivisible", "divisible"};
  const std::size_t expected[3] = {inst.agents(), inst.indivisible_count(), inst.divisible_count()};
  bool in_bundles = false;
  Allocation a = Allocation::empty(inst);
  std::vector<bool> seen(inst.agents(), false);
  std::size_t last_line = lines.front().number;

  for (std::size_t t = 1; t < lines.size(); ++t) {
    const Line& line = lines[t];
    last_line = line.number;
    const std::string key(line.key);
    if (!line.indented) {
      in_bundles = false;
      if (key == "bundles") {
        for (int c = 0; c < 3; ++c) {
          if (!counts[c]) throw ParseError(line.number, key, std::string("missing '") + count_keys[c] + "'");
        }
        in_bundles = true;
        continue;
      }
      const auto* it = std::find_if(std::begin(count_keys), std::end(count_keys),
                                    [&](const char* k) { return key == k; });
      if (it == std::end(count_keys)) throw ParseError(line.number, key, "unknown key");
      const std::size_t c = static_cast<std::size_t>(it - std::begin(count_keys));
      if (counts[c]) throw ParseError(line.number, key, "duplicate key");
      counts[c] = parse_count(line);
      if (*counts[c] != expected[c]) {
        throw ParseError(line.number, key,
                         "allocation has " + std::to_string(*counts[c]) + " but the instance has " +
                             std::to_string(expected[c]));
      }
      continue;
    }
    if (!in_bundles) throw ParseError(line.number, key, "bundle entry outside 'bundles'");
    if (key.size() < 2 || key[0] != 'a' ||
        !std::all_of(key.begin() + 1, key.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw ParseError(line.number, key, "bundle label must be a1, a2, ...");
    }
    const std::size_t agent = std::stoull(key.substr(1));
    if (agent == 0 || agent > inst.agents()) throw ParseError(line.number, key, "agent out of range");
    if (seen[agent - 1]) throw ParseError(line.number, key, "duplicate bundle");
    seen[agent - 1] = true;

    const std::size_t bar = line.value.find('|');
    if (bar == std::string_view::npos) throw ParseError(line.number, key, "expected 'goods ... | fractions ...'");
    const std::vector<std::string_view> left = split_ws(line.value.substr(0, bar));
    const std::vector<std::string_view> right = split_ws(line.value.substr(bar + 1));
    if (left.empty() || left.front() != "goods") throw ParseError(line.number, key, "expected 'goods'");
    if (right.empty() || right.front() != "fractions") throw ParseError(line.number, key, "expected 'fractions'");

    Bundle& b = a[agent - 1];
    for (std::size_t t2 = 1; t2 < left.size(); ++t2) {
      const std::string tok(left[t2]);
      if (!std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw ParseError(line.number, key, "malformed good index '" + tok + "'");
      }
      const std::size_t g = std::stoull(tok);
      if (g == 0 || g > inst.indivisible_count()) throw ParseError(line.number, key, "good index out of range");
      if (b.contains(g - 1)) throw ParseError(line.number, key, "good listed twice");
      b.add(g - 1);
    }
    if (right.size() - 1 != inst.divisible_count()) {
      throw ParseError(line.number, key,
                       "expected " + std::to_string(inst.divisible_count()) + " fractions, found " +
                           std::to_string(right.size() - 1));
    }
    for (std::size_t k = 0; k < inst.divisible_count(); ++k) b.fractions[k] = parse_value(line, right[k + 1], false);
  }
  for (int c = 0; c < 3; ++c) {
    if (!counts[c]) throw ParseError(last_line, count_keys[c], "missing key");
  }
  return a;
}

std::string serialize_allocation(const Allocation& a, const Instance& inst) {
  validate_shape(inst, a);
  std::ostringstream out;
  const std::size_t m = inst.indivisible_count();
  const std::size_t m_div = inst.divisible_count();
  out << "format: " << kAllocationFormat << '\n';
  out << "agents: " << a.size() << '\n';
  out << "indivisible: " << m << '\n';
  out << "divisible: " << m_div << '\n';
  out << "bundles:\n";
  for (AgentId i = 0; i < a.size(); ++i) {
    out << "  a" << i + 1 << ": goods";
    for (GoodId g : a[i].goods) out << ' ' << g + 1;
    out << " | fractions";
    for (const auto& f : a[i].fractions) out << ' ' << f.str();
    out << '\n';
  }
  return out.str();
}

Instance thm34_lower_bound(const Rational& eps) {
  const Rational half(1, 2);
  if (!(eps.sign() > 0 && eps < half)) throw ArgumentError("eps must lie strictly between 0 and 1/2");
  return Instance({{half}, {half}}, {{half - eps, eps}, {eps, half - eps}});
}

Instance table3_po_example() {
  const Rational half(1, 2);
  return Instance({{Rational(1)}, {Rational(1)}}, {{half, Rational(0)}, {Rational(0), half}});
}

Instance random_instance(std::size_t n, std::size_t m, std::size_t m_div, bool scaled, std::uint64_t seed) {
  if (n == 0) throw DimensionError("an instance needs at least one agent");
  if (scaled && m + m_div == 0) throw ArgumentError("a scaled instance needs at least one good");
  std::mt19937_64 rng(seed);
  auto draw = [&]() {
    const long q = static_cast<long>(rng() % 60) + 1;
    const long p = static_cast<long>(rng() % static_cast<std::uint64_t>(q + 1));
    return Rational(p, q);
  };
  std::vector<std::vector<Rational>> indiv(n), div(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      indiv[i].clear();
      div[i].clear();
      Rational sum;
      for (std::size_t g = 0; g < m; ++g) sum += indiv[i].emplace_back(draw());
      for (std::size_t k = 0; k < m_div; ++k) sum += div[i].emplace_back(draw());
      if (!scaled || sum.sign() > 0) break;
    }
  }
  Instance inst(indiv, div);
  return scaled ? scale(inst) : inst;
}

}  // namespace fairdiv
