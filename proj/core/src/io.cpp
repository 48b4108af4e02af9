#include "grasscov/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "grasscov/errors.hpp"

namespace grasscov {

namespace {

// Serialization is canonical: words sorted by their RREF basis entries
// (row-major), so equal codes produce byte-identical files no matter how
// they were assembled.
std::vector<std::pair<Subspace, long long>> sorted_words(const GrassCode& c) {
  auto words = c.words();
  std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    const MatrixFq& x = a.first.basis();
    const MatrixFq& y = b.first.basis();
    if (x.rows() != y.rows()) return x.rows() < y.rows();
    for (int r = 0; r < x.rows(); ++r)
      for (int col = 0; col < x.cols(); ++col)
        if (x.at(r, col) != y.at(r, col)) return x.at(r, col) < y.at(r, col);
    return false;
  });
  return words;
}

// Whitespace tokens with '#' comments stripped to end of line.
std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string t;
    while (words >> t) toks.push_back(t);
  }
  return toks;
}

struct TokenStream {
  std::vector<std::string> toks;
  std::size_t at = 0;

  const std::string& next(const char* what) {
    if (at >= toks.size())
      throw InvalidArgs(std::string("unexpected end of input, expected ") + what);
    return toks[at++];
  }
  long long next_int(const char* what) {
    const std::string& t = next(what);
    try {
      std::size_t used = 0;
      long long v = std::stoll(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw InvalidArgs(std::string("expected ") + what + ", got '" + t + "'");
    }
  }
  bool done() const { return at >= toks.size(); }
};

MatrixFq read_rows(TokenStream& ts, const FieldCtx& F, int rows, int cols) {
  std::vector<Fq> entries;
  entries.reserve(static_cast<std::size_t>(rows) * cols);
  for (long long i = 0; i < static_cast<long long>(rows) * cols; ++i) {
    long long v = ts.next_int("a matrix entry");
    if (v < 0 || v >= F.q())
      throw InvalidArgs("entry " + std::to_string(v) + " outside the field of order " +
                        std::to_string(F.q()));
    entries.push_back(static_cast<Fq>(v));
  }
  return MatrixFq(F, rows, cols, std::move(entries));
}

}  // namespace

std::string matrix_to_text(const MatrixFq& m) {
  std::ostringstream out;
  out << m.ctx().q() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out << (c ? " " : "") << int(m.at(r, c));
    out << '\n';
  }
  return out.str();
}

MatrixFq matrix_from_text(const std::string& text) {
  TokenStream ts{tokenize(text)};
  long long q = ts.next_int("the field order q");
  long long rows = ts.next_int("the row count");
  long long cols = ts.next_int("the column count");
  if (rows < 1 || cols < 1 || rows > 4096 || cols > 4096)
    throw InvalidArgs("matrix shape out of range");
  FieldCtx F = make_field(static_cast<int>(q));
  MatrixFq m = read_rows(ts, F, static_cast<int>(rows), static_cast<int>(cols));
  if (!ts.done()) throw InvalidArgs("trailing content after the matrix entries");
  return m;
}

MatrixFq read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgs("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return matrix_from_text(buf.str());
}

void write_matrix_file(const std::string& path, const MatrixFq& m) {
  std::ofstream out(path);
  if (!out) throw InvalidArgs("cannot write " + path);
  out << matrix_to_text(m);
}

std::string grasscode_to_text(const GrassCode& c) {
  std::ostringstream out;
  out << "grasscode " << c.ctx().q() << ' ' << c.n() << ' ' << c.k() << ' '
      << c.distinct_count() << '\n';
  for (const auto& [w, mult] : sorted_words(c)) {
    out << '\n' << "mult=" << mult << '\n';
    const MatrixFq& b = w.basis();
    for (int r = 0; r < b.rows(); ++r) {
      for (int col = 0; col < b.cols(); ++col) out << (col ? " " : "") << int(b.at(r, col));
      out << '\n';
    }
  }
  return out.str();
}

GrassCode grasscode_from_text(const std::string& text) {
  TokenStream ts{tokenize(text)};
  if (ts.next("the 'grasscode' header") != "grasscode")
    throw InvalidArgs("not a grasscode file (missing header)");
  long long q = ts.next_int("the field order q");
  long long n = ts.next_int("the ambient dimension n");
  long long k = ts.next_int("the word dimension k");
  long long count = ts.next_int("the distinct word count");
  if (n < 1 || n > 64 || k < 1 || k > n) throw InvalidArgs("code shape out of range");
  if (count < 0) throw InvalidArgs("negative word count");
  FieldCtx F = make_field(static_cast<int>(q));
  GrassCode code(F, static_cast<int>(n), static_cast<int>(k));
  for (long long w = 0; w < count; ++w) {
    const std::string& marker = ts.next("a 'mult=' marker");
    if (marker.rfind("mult=", 0) != 0)
      throw InvalidArgs("expected 'mult=M' before word " + std::to_string(w) + ", got '" +
                        marker + "'");
    long long mult = 0;
    try {
      std::size_t used = 0;
      mult = std::stoll(marker.substr(5), &used);
      if (used != marker.size() - 5) throw std::invalid_argument(marker);
    } catch (const std::exception&) {
      throw InvalidArgs("bad multiplicity marker '" + marker + "'");
    }
    if (mult < 1) throw InvalidArgs("multiplicity must be >= 1");
    MatrixFq basis = read_rows(ts, F, static_cast<int>(k), static_cast<int>(n));
    code.add(Subspace::from_matrix(basis), mult);
  }
  if (!ts.done()) throw InvalidArgs("trailing content after the last word");
  return code;
}

GrassCode read_grasscode_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgs("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return grasscode_from_text(buf.str());
}

void write_grasscode_file(const std::string& path, const GrassCode& c) {
  std::ofstream out(path);
  if (!out) throw InvalidArgs("cannot write " + path);
  out << grasscode_to_text(c);
}

std::string grasscode_to_json_text(const GrassCode& c) {
  nlohmann::json j;
  j["format"] = "grasscode";
  j["q"] = c.ctx().q();
  j["n"] = c.n();
  j["k"] = c.k();
  j["words"] = nlohmann::json::array();
  for (const auto& [w, mult] : sorted_words(c)) {
    nlohmann::json jw;
    jw["mult"] = mult;
    auto rows = nlohmann::json::array();
    const MatrixFq& b = w.basis();
    for (int r = 0; r < b.rows(); ++r) {
      auto row = nlohmann::json::array();
      for (int col = 0; col < b.cols(); ++col) row.push_back(int(b.at(r, col)));
      rows.push_back(std::move(row));
    }
    jw["rows"] = std::move(rows);
    j["words"].push_back(std::move(jw));
  }
  return j.dump(2);
}

GrassCode grasscode_from_json_text(const std::string& text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "grasscode")
      throw InvalidArgs("not a grasscode document");
    int q = j.at("q").get<int>();
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    if (n < 1 || n > 64 || k < 1 || k > n) throw InvalidArgs("code shape out of range");
    FieldCtx F = make_field(q);
    GrassCode code(F, n, k);
    for (const auto& jw : j.at("words")) {
      long long mult = jw.at("mult").get<long long>();
      if (mult < 1) throw InvalidArgs("multiplicity must be >= 1");
      const auto& rows = jw.at("rows");
      if (static_cast<int>(rows.size()) != k) throw InvalidArgs("word must have k basis rows");
      std::vector<Fq> entries;
      for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw InvalidArgs("basis row must have n entries");
        for (const auto& e : row) {
          int v = e.get<int>();
          if (v < 0 || v >= q) throw InvalidArgs("entry outside the field");
          entries.push_back(static_cast<Fq>(v));
        }
      }
      code.add(Subspace::from_matrix(MatrixFq(F, k, n, std::move(entries))), mult);
    }
    return code;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgs(std::string("bad grasscode JSON: ") + e.what());
  }
}

}  // namespace grasscov
