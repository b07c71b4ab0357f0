#include "mcrs/parse.hpp"

#include <cctype>
#include <regex>

#include "mcrs/error.hpp"

namespace mcrs {

namespace {

// Collapse whitespace runs to one space, drop spaces next to punctuation, and
// trim; keeps the single mandatory space in "sqrt d" and "q sqrt d".
std::string normalize(const std::string& s) {
  std::string t;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!t.empty() && t.back() != ' ') t += ' ';
    } else {
      if ((ch == '(' || ch == ')' || ch == '/' || ch == '+' || ch == '-' || ch == ',') &&
          !t.empty() && t.back() == ' ')
        t.back() = ch;
      else
        t += ch;
      if (ch == '(' || ch == ')' || ch == '/' || ch == '+' || ch == '-' || ch == ',') continue;
    }
  }
  // A space right after punctuation is also junk.
  std::string u;
  for (char ch : t) {
    if (ch == ' ' && !u.empty() &&
        (u.back() == '(' || u.back() == ')' || u.back() == '/' || u.back() == '+' ||
         u.back() == '-' || u.back() == ','))
      continue;
    u += ch;
  }
  while (!u.empty() && u.back() == ' ') u.pop_back();
  while (!u.empty() && u.front() == ' ') u.erase(u.begin());
  return u;
}

Int to_int(const std::string& digits) { return Int(digits, 10); }

Real surd_value(const Int& p, const Int& q, const Int& d, const Int& r) {
  if (d < 0) fail(errc::parse, "negative radicand");
  if (r == 0) fail(errc::parse, "zero denominator");
  Int s, f;
  squarefree_split(d, s, f);
  if (f == 1) return Real(make_rat(p + q * s, r));  // the root is an integer
  return Real(QuadraticSurd(p, q * s, r, f));
}

}  // namespace

Real parse_real(const std::string& raw) {
  std::string s = normalize(raw);
  static const std::regex re_int(R"(^([+-]?\d+)$)");
  static const std::regex re_rat(R"(^([+-]?\d+)/([+-]?\d+)$)");
  // (p +- [q ]sqrt d)[/r]
  static const std::regex re_paren(R"(^\(([+-]?\d+)([+-])(?:(\d+) )?sqrt (\d+)\)(?:/(\d+))?$)");
  // [-][q ]sqrt d[/r]
  static const std::regex re_bare(R"(^([+-])?(?:(\d+) )?sqrt (\d+)(?:/(\d+))?$)");

  std::smatch m;
  if (std::regex_match(s, m, re_int)) return Real(to_int(m[1].str()));
  if (std::regex_match(s, m, re_rat)) {
    Int den = to_int(m[2].str());
    if (den == 0) fail(errc::parse, "zero denominator in '" + raw + "'");
    return Real(make_rat(to_int(m[1].str()), den));
  }
  if (std::regex_match(s, m, re_paren)) {
    Int p = to_int(m[1].str());
    Int q = m[3].matched ? to_int(m[3].str()) : Int(1);
    if (m[2].str() == "-") q = -q;
    Int d = to_int(m[4].str());
    Int r = m[5].matched ? to_int(m[5].str()) : Int(1);
    return surd_value(p, q, d, r);
  }
  if (std::regex_match(s, m, re_bare)) {
    Int q = m[2].matched ? to_int(m[2].str()) : Int(1);
    if (m[1].matched && m[1].str() == "-") q = -q;
    Int d = to_int(m[3].str());
    Int r = m[4].matched ? to_int(m[4].str()) : Int(1);
    return surd_value(Int(0), q, d, r);
  }
  fail(errc::parse, "parse error: cannot read value '" + raw + "'");
}

std::vector<Real> parse_real_list(const std::string& s) {
  std::vector<Real> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    std::string piece = s.substr(start, comma == std::string::npos ? comma : comma - start);
    out.push_back(parse_real(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

IMat parse_matrix(const std::string& s) {
  static const std::regex re_tok(R"([+-]?\d+)");
  static const std::regex re_ok(R"(^[\s,]*([+-]?\d+[\s,]+)*[+-]?\d+[\s,]*$)");
  if (!std::regex_match(s, re_ok)) fail(errc::parse, "parse error: cannot read matrix '" + s + "'");
  std::vector<Int> entries;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re_tok); it != std::sregex_iterator(); ++it)
    entries.push_back(to_int(it->str()));
  int n;
  if (entries.size() == 4)
    n = 2;
  else if (entries.size() == 9)
    n = 3;
  else
    fail(errc::parse, "parse error: matrix needs 4 or 9 entries, got " +
                          std::to_string(entries.size()));
  IMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = entries[i * n + j];
  return m;
}

IMat named_operator(const std::string& name) {
  if (name == "fibonacci") return IMat{{1, 1}, {1, 0}};
  if (name == "B") return IMat{{0, 1, 1}, {0, 0, 1}, {1, 0, 0}};
  if (name == "E1") return IMat{{1, 1, 1}, {1, 1, 0}, {1, 0, 0}};
  if (name == "E2") return IMat{{0, 1, 0}, {1, -1, 1}, {0, 1, -1}};
  if (name == "golden2d") return IMat{{3, 2, 1}, {2, 2, 1}, {1, 1, 1}};
  fail(errc::parse, "parse error: unknown operator '" + name +
                        "' (known: fibonacci, B, E1, E2, golden2d)");
}

std::vector<std::array<Int, 2>> parse_int_pairs(const std::string& s) {
  static const std::regex re_pair(R"(\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\))");
  static const std::regex re_ok(
      R"(^\s*(\(\s*[+-]?\d+\s*,\s*[+-]?\d+\s*\)[\s,]*)+$)");
  if (!std::regex_match(s, re_ok)) fail(errc::parse, "parse error: cannot read pairs '" + s + "'");
  std::vector<std::array<Int, 2>> out;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re_pair); it != std::sregex_iterator();
       ++it)
    out.push_back({to_int((*it)[1].str()), to_int((*it)[2].str())});
  return out;
}

}  // namespace mcrs
