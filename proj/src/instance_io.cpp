#include "lonqap/instance_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lonqap/error.hpp"

namespace lonqap {

namespace {

struct Token {
  std::string_view text;
  std::size_t offset;
};

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  bool next(Token& tok) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) return false;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok = {text_.substr(start, pos_ - start), start};
    return true;
  }

  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::int64_t to_integer(const Token& tok) {
  std::int64_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError("non-integer token '" + std::string(tok.text) + "'", tok.offset);
  return value;
}

}  // namespace

QapInstance parse_instance(std::string_view text, std::string label, std::vector<std::string>* warnings) {
  Tokenizer tokens(text);
  Token tok;
  if (!tokens.next(tok)) throw ParseError("empty instance: missing size token", 0);
  const std::int64_t n = to_integer(tok);
  if (n < 1) throw ParseError("instance size must be at least 1", tok.offset);
  // 2n^2 tokens must fit; reject absurd sizes before allocating.
  if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) > text.size())
    throw ParseError("too few tokens for instance of size " + std::to_string(n), text.size());

  const auto un = static_cast<std::size_t>(n);
  auto read_matrix = [&](const char* name) {
    std::vector<std::int64_t> values;
    values.reserve(un * un);
    for (std::size_t k = 0; k < un * un; ++k) {
      if (!tokens.next(tok))
        throw ParseError(std::string("matrix ") + name + ": expected " + std::to_string(un * un) +
                             " entries, found " + std::to_string(k),
                         text.size());
      const std::int64_t v = to_integer(tok);
      if (v < 0) throw ParseError(std::string("matrix ") + name + ": negative entry", tok.offset);
      values.push_back(v);
    }
    return SquareMatrix(un, std::move(values));
  };
  SquareMatrix a = read_matrix("A");
  SquareMatrix b = read_matrix("B");
  if (tokens.next(tok)) throw ParseError("unexpected trailing token '" + std::string(tok.text) + "'", tok.offset);

  if (warnings) {
    if (!a.has_zero_diagonal()) warnings->push_back("distance matrix has non-zero diagonal entries");
    if (!b.has_zero_diagonal()) warnings->push_back("flow matrix has non-zero diagonal entries");
  }
  return QapInstance(std::move(a), std::move(b), std::move(label), InstanceClass::external);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

QapInstance load_instance(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  return parse_instance(read_text_file(path), path.stem().string(), warnings);
}

std::string format_instance(const QapInstance& inst) {
  std::ostringstream out;
  const std::size_t n = inst.size();
  out << n << "\n";
  for (const SquareMatrix* m : {&inst.distances(), &inst.flows()}) {
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << (*m)(i, j);
      out << "\n";
    }
  }
  return out.str();
}

void save_instance(const QapInstance& inst, const std::filesystem::path& path) {
  write_text_file(path, format_instance(inst));
}

}  // namespace lonqap
