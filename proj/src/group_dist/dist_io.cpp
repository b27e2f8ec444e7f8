#include "entadd/dist_io.hpp"

#include "entadd/error.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace entadd {

namespace {

using Tag = GroupValue::Family::Tag;

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ": " + msg);
}

BigInt parse_integer(std::string_view s) {
  std::string t = trim(s);
  std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) throw Error(ErrorKind::ParseError, "expected an integer, got '" + t + "'");
  for (std::size_t k = i; k < t.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(t[k]))) {
      throw Error(ErrorKind::ParseError, "expected an integer, got '" + t + "'");
    }
  }
  if (t[0] == '+') t.erase(0, 1);
  return BigInt(t);
}

std::vector<std::string> split_tuple(std::string_view token) {
  std::string t = trim(token);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
    throw Error(ErrorKind::ParseError, "expected a tuple '(a,b,...)', got '" + t + "'");
  }
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += t[i];
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

Rational parse_mass(std::string_view token) {
  const std::string t = trim(token);
  const auto slash = t.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(t));
  const BigInt den = parse_integer(std::string_view(t).substr(slash + 1));
  if (den <= 0) throw Error(ErrorKind::ParseError, "non-positive denominator in '" + t + "'");
  return Rational(parse_integer(std::string_view(t).substr(0, slash)), den);
}

// Splits "<value> <mass>" where value may be a parenthesised tuple with spaces.
std::pair<std::string, std::string> split_atom(const std::string& line) {
  std::size_t end = 0;
  if (line[0] == '(') {
    end = line.find(')');
    if (end == std::string::npos) throw Error(ErrorKind::ParseError, "unterminated tuple");
    ++end;
  } else {
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
  }
  return {line.substr(0, end), trim(std::string_view(line).substr(end))};
}

GroupValue::Family parse_group_header(const std::string& rest) {
  std::istringstream in(rest);
  std::string kind;
  in >> kind;
  if (kind == "int") return {Tag::Numeric, 0};
  std::int64_t p = 0;
  if (!(in >> p)) throw Error(ErrorKind::ParseError, "@group " + kind + " needs a parameter");
  if (kind == "intvec") {
    if (p < 1) throw Error(ErrorKind::ParseError, "intvec dimension must be >= 1");
    return {Tag::Vector, p};
  }
  if (kind == "zmod") {
    if (p < 2) throw Error(ErrorKind::ParseError, "zmod modulus must be >= 2");
    return {Tag::Modular, p};
  }
  throw Error(ErrorKind::ParseError, "unknown group '" + kind + "'");
}

struct Lines {
  std::vector<std::pair<std::size_t, std::string>> items;  // (line number, content)
};

Lines content_lines(std::string_view text) {
  Lines out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::string_view raw = text.substr(pos, nl - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (!line.empty()) out.items.emplace_back(line_no, std::move(line));
    pos = nl + 1;
  }
  return out;
}

std::string format_mass(const BigInt& w, const BigInt& total) {
  const Rational q(w, total);
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

std::string header_for(const GroupValue::Family& f) {
  switch (f.tag) {
    case Tag::Numeric: return "@group int\n";
    case Tag::Vector: return "@group intvec " + std::to_string(f.parameter) + "\n";
    case Tag::Modular: return "@group zmod " + std::to_string(f.parameter) + "\n";
  }
  return "";
}

}  // namespace

GroupValue parse_value(std::string_view token, const GroupValue::Family& family) {
  switch (family.tag) {
    case Tag::Numeric: return GroupValue::integer(parse_integer(token));
    case Tag::Modular: {
      const BigInt r = parse_integer(token);
      if (r < 0 || r >= family.parameter) {
        throw Error(ErrorKind::ParseError,
                    "residue " + r.str() + " outside [0, " + std::to_string(family.parameter) + ")");
      }
      return GroupValue::residue(static_cast<std::int64_t>(r), family.parameter);
    }
    case Tag::Vector: {
      const auto parts = split_tuple(token);
      if (static_cast<std::int64_t>(parts.size()) != family.parameter) {
        throw Error(ErrorKind::ParseError, "tuple has " + std::to_string(parts.size()) + " components, expected " +
                                               std::to_string(family.parameter));
      }
      std::vector<std::int64_t> c;
      for (const auto& p : parts) {
        const BigInt v = parse_integer(p);
        if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max()) {
          throw Error(ErrorKind::ParseError, "Z^d component out of range");
        }
        c.push_back(static_cast<std::int64_t>(v));
      }
      return GroupValue::vector(std::move(c));
    }
  }
  throw Error(ErrorKind::ParseError, "bad value");
}

FiniteDist parse_distribution(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text);
  std::optional<GroupValue::Family> family;
  std::vector<std::pair<GroupValue, Rational>> atoms;
  for (const auto& [no, line] : lines.items) {
    try {
      if (line[0] == '@') {
        if (line.rfind("@group", 0) != 0) fail(source, no, "unknown directive");
        if (!atoms.empty()) fail(source, no, "@group must precede the atoms");
        family = parse_group_header(line.substr(6));
        continue;
      }
      auto [value, mass] = split_atom(line);
      if (mass.empty()) fail(source, no, "missing probability");
      if (!family) {
        family = value[0] == '(' ? GroupValue::Family{Tag::Vector, static_cast<std::int64_t>(split_tuple(value).size())}
                                 : GroupValue::Family{Tag::Numeric, 0};
      }
      atoms.emplace_back(parse_value(value, *family), parse_mass(mass));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ParseError || std::string(e.what()).find(source + ":") == std::string::npos) {
        fail(source, no, e.what());
      }
      throw;
    }
  }
  if (atoms.empty()) throw Error(ErrorKind::InvalidDistribution, source + ": no atoms");
  try {
    return FiniteDist::from_probabilities(atoms);
  } catch (const Error& e) {
    throw Error(e.kind(), source + ": " + e.what());
  }
}

FiniteDist load_distribution(const std::string& path) { return parse_distribution(read_text_file(path), path); }

std::string format_distribution(const FiniteDist& d) {
  std::string out = header_for(d.family());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out += d.value(i).to_string() + " " + format_mass(d.weight(i), d.total()) + "\n";
  }
  return out;
}

JointDist parse_joint(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text);
  std::vector<std::string> coords;
  GroupValue::Family family{Tag::Numeric, 0};
  std::vector<std::pair<JointDist::Tuple, Rational>> atoms;
  for (const auto& [no, line] : lines.items) {
    try {
      if (line.rfind("@joint", 0) == 0) {
        std::string names = line.substr(6);
        std::string cur;
        for (char c : names + ",") {
          if (c == ',') {
            auto n = trim(cur);
            if (n.empty()) fail(source, no, "empty coordinate name");
            coords.push_back(n);
            cur.clear();
          } else {
            cur += c;
          }
        }
        continue;
      }
      if (line.rfind("@group", 0) == 0) {
        family = parse_group_header(line.substr(6));
        if (family.tag == Tag::Vector) fail(source, no, "joint files support int and zmod coordinates only");
        continue;
      }
      if (coords.empty()) fail(source, no, "missing '@joint' header");
      auto [value, mass] = split_atom(line);
      const auto parts = split_tuple(value);
      if (parts.size() != coords.size()) fail(source, no, "tuple arity does not match the header");
      JointDist::Tuple t;
      for (const auto& p : parts) t.push_back(parse_value(p, family));
      atoms.emplace_back(std::move(t), parse_mass(mass));
    } catch (const Error& e) {
      if (std::string(e.what()).find(source + ":") == std::string::npos) fail(source, no, e.what());
      throw;
    }
  }
  if (atoms.empty()) throw Error(ErrorKind::InvalidDistribution, source + ": no atoms");
  try {
    return JointDist::from_probabilities(coords, atoms);
  } catch (const Error& e) {
    throw Error(e.kind(), source + ": " + e.what());
  }
}

JointDist load_joint(const std::string& path) { return parse_joint(read_text_file(path), path); }

std::string format_joint(const JointDist& j) {
  std::string out = "@joint ";
  for (std::size_t c = 0; c < j.arity(); ++c) out += (c ? "," : "") + j.coords()[c];
  out += "\n";
  if (j.tuple(0)[0].kind() == GroupValue::Kind::IntMod) out += header_for(j.tuple(0)[0].family());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out += "(";
    for (std::size_t c = 0; c < j.arity(); ++c) out += (c ? "," : "") + j.tuple(i)[c].to_string();
    out += ") " + format_mass(j.weight(i), j.total()) + "\n";
  }
  return out;
}

std::vector<GroupValue> parse_set(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text);
  std::optional<GroupValue::Family> family;
  std::vector<GroupValue> out;
  for (const auto& [no, line] : lines.items) {
    try {
      if (line[0] == '@') {
        if (line.rfind("@group", 0) != 0) fail(source, no, "unknown directive");
        family = parse_group_header(line.substr(6));
        continue;
      }
      if (!family) {
        family = line[0] == '(' ? GroupValue::Family{Tag::Vector, static_cast<std::int64_t>(split_tuple(line).size())}
                                : GroupValue::Family{Tag::Numeric, 0};
      }
      out.push_back(parse_value(line, *family));
    } catch (const Error& e) {
      if (std::string(e.what()).find(source + ":") == std::string::npos) fail(source, no, e.what());
      throw;
    }
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, source + ": empty set");
  return out;
}

std::vector<GroupValue> load_set(const std::string& path) { return parse_set(read_text_file(path), path); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace entadd
