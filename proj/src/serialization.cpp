#include "mmlab/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace mmlab {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostringstream& os, const FiniteSpace& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) os << (j ? " " : "") << format_number(s(i, j));
    os << '\n';
  }
}

void write_labels(std::ostringstream& os, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? " " : "") << labels[i];
  os << '\n';
}

/// Whitespace tokenizer that skips '#' comments and remembers line numbers.
class Tokens {
 public:
  explicit Tokens(std::string_view text) {
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c == '\n') {
        ++line;
        ++i;
      } else if (c == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else {
        const std::size_t start = i;
        while (i < text.size() && text[i] != '\n' && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
               text[i] != '#')
          ++i;
        tokens_.emplace_back(std::string(text.substr(start, i - start)), line);
      }
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  std::string next(const char* what) {
    if (done()) fail(std::string("unexpected end of input, expected ") + what);
    return tokens_[pos_++].first;
  }

  void expect(const std::string& keyword) {
    const std::string got = next(keyword.c_str());
    if (got != keyword) fail("expected '" + keyword + "', found '" + got + "'", -1);
  }

  double number(const char* what) {
    const std::string tok = next(what);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("malformed number '" + tok + "'", -1);
    return v;
  }

  std::size_t count(const char* what) {
    const std::string tok = next(what);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("malformed count '" + tok + "'", -1);
    return v;
  }

  [[noreturn]] void fail(const std::string& msg, int back = 0) const {
    std::size_t idx = pos_ + back;
    if (idx >= tokens_.size()) idx = tokens_.empty() ? 0 : tokens_.size() - 1;
    const std::size_t line = tokens_.empty() ? 0 : tokens_[idx].second;
    throw std::invalid_argument("space file line " + std::to_string(line) + ": " + msg);
  }

 private:
  std::vector<std::pair<std::string, std::size_t>> tokens_;
  std::size_t pos_ = 0;
};

std::vector<double> read_matrix(Tokens& in, std::size_t n) {
  std::vector<double> d(n * n);
  for (double& v : d) v = in.number("matrix entry");
  return d;
}

}  // namespace

std::string to_text(const MmmSpace& x) {
  std::ostringstream os;
  os << "mmm-space 1\n";
  if (x.marks().is_finite()) {
    const FiniteSpace& m = x.marks().metric();
    os << "marks finite " << m.size() << '\n';
    write_labels(os, m.labels());
    write_matrix(os, m);
  } else {
    os << "marks interval\n";
  }
  os << "points " << x.space().size() << '\n';
  write_labels(os, x.space().labels());
  os << "dist\n";
  write_matrix(os, x.space());
  os << "atoms " << x.atoms().size() << '\n';
  for (const Atom& a : x.atoms())
    os << a.point << ' ' << x.marks().label(a.mark) << ' ' << format_number(a.mass) << '\n';
  return os.str();
}

MmmSpace from_text(std::string_view text) {
  Tokens in(text);
  in.expect("mmm-space");
  if (in.next("format version") != "1") in.fail("unsupported format version", -1);

  in.expect("marks");
  MarkSpace marks;
  std::unordered_map<std::string, std::size_t> mark_index;
  const std::string kind = in.next("mark space kind");
  if (kind == "finite") {
    const std::size_t k = in.count("mark count");
    if (k == 0) in.fail("finite mark space needs at least one label", -1);
    std::vector<std::string> labels(k);
    for (std::size_t i = 0; i < k; ++i) {
      labels[i] = in.next("mark label");
      if (!mark_index.emplace(labels[i], i).second) in.fail("duplicate mark label '" + labels[i] + "'", -1);
    }
    marks = MarkSpace::finite(FiniteSpace(std::move(labels), read_matrix(in, k)));
  } else if (kind != "interval") {
    in.fail("mark space kind must be 'finite' or 'interval'", -1);
  }

  in.expect("points");
  const std::size_t n = in.count("point count");
  std::vector<std::string> labels(n);
  for (auto& l : labels) l = in.next("point label");
  in.expect("dist");
  auto space = std::make_shared<const FiniteSpace>(std::move(labels), read_matrix(in, n));

  in.expect("atoms");
  const std::size_t count = in.count("atom count");
  std::vector<Atom> atoms(count);
  for (Atom& a : atoms) {
    a.point = in.count("atom point index");
    if (a.point >= n) in.fail("atom point index out of range", -1);
    if (marks.is_finite()) {
      const std::string label = in.next("atom mark");
      const auto it = mark_index.find(label);
      if (it == mark_index.end()) in.fail("unknown mark label '" + label + "'", -1);
      a.mark = static_cast<double>(it->second);
    } else {
      a.mark = in.number("atom mark");
      if (!marks.contains(a.mark)) in.fail("interval mark outside [0,1]", -1);
    }
    a.mass = in.number("atom mass");
  }
  if (!in.done()) in.fail("trailing content after atoms section");
  return MmmSpace(std::move(space), std::move(marks), std::move(atoms));
}

void save_space(const MmmSpace& x, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_text(x);
}

MmmSpace load_space(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

}  // namespace mmlab
