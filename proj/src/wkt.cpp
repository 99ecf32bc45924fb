#include "opportune/wkt.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace opportune {
namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  int line() const { return line_; }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw WktParseError(line_, std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view keyword() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) throw WktParseError(line_, "expected geometry keyword");
    return text_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || !std::isfinite(value))
      throw WktParseError(line_, "malformed coordinate");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

Polyline parse_point_list(Scanner& sc) {
  Polyline line;
  const int at = sc.line();
  sc.expect('(');
  do {
    const double x = sc.number();
    const double y = sc.number();
    line.points.push_back({x, y});
  } while (sc.accept(','));
  sc.expect(')');
  if (line.points.size() < 2) throw WktParseError(at, "polyline needs at least 2 points");
  return line;
}

}  // namespace

std::vector<Polyline> parse_wkt(std::string_view text) {
  std::vector<Polyline> out;
  Scanner sc(text);
  while (!sc.eof()) {
    const int at = sc.line();
    const std::string_view kw = sc.keyword();
    if (kw == "LINESTRING") {
      out.push_back(parse_point_list(sc));
    } else if (kw == "MULTILINESTRING") {
      sc.expect('(');
      do {
        out.push_back(parse_point_list(sc));
      } while (sc.accept(','));
      sc.expect(')');
    } else {
      throw WktParseError(at, "unsupported geometry '" + std::string(kw) + "'");
    }
  }
  return out;
}

std::vector<Polyline> load_wkt_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_wkt(buf.str());
}

std::string to_wkt(const Polyline& line) {
  const auto append_number = [](std::string& s, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    s.append(buf, ptr);
  };
  std::string out = "LINESTRING (";
  bool first = true;
  for (const Point& p : line.points) {
    if (!first) out += ", ";
    first = false;
    append_number(out, p.x);
    out += ' ';
    append_number(out, p.y);
  }
  out += ')';
  return out;
}

}  // namespace opportune
