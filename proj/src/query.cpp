#include "cfsem/query.hpp"

#include "cfsem/error.hpp"

#include <cctype>

namespace cfsem {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Query parse() {
    Query q;
    skip();
    bool wrapped = false;
    if (peek() == 'P') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (peek() == '(') {
        ++pos_;
        wrapped = true;
      } else {
        pos_ = save;
      }
    }
    q.targets.push_back(token("variable"));
    while (accept(',')) q.targets.push_back(token("variable"));
    if (accept('|')) {
      do {
        condition(q);
      } while (accept(','));
    }
    if (wrapped) expect(')');
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return q;
  }

 private:
  void condition(Query& q) {
    std::size_t start = pos_;
    std::string name = token("variable or do(...)");
    skip();
    if (name == "do" && peek() == '(') {
      if (q.has_intervention()) {
        pos_ = start;
        error("only one do-clause is allowed");
      }
      expect('(');
      do {
        q.intervention.settings.push_back(setting());
      } while (accept(','));
      expect(')');
      return;
    }
    expect('=');
    q.evidence.emplace_back(std::move(name), token("value"));
  }

  std::pair<std::string, std::string> setting() {
    std::string name = token("variable");
    expect('=');
    return {std::move(name), token("value")};
  }

  static bool is_token_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != ',' && c != '|' && c != '=' &&
           c != '(' && c != ')';
  }

  std::string token(const char* what) {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_token_char(text_[pos_])) ++pos_;
    if (start == pos_) error(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    throw ParseError("query: " + what, 0, pos_ + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Query parse_query(std::string_view text) { return Parser(text).parse(); }

ProbTable evaluate_query(const SemModel& m, const Query& q, const EnumerationLimits& limits) {
  const SemModel* source = &m;
  SemModel surged;
  if (q.has_intervention()) {
    surged = surgery_new(m, q.intervention);
    source = &surged;
  }
  const ProbTable joint = exact_joint(*source, limits);
  if (q.evidence.empty()) return marginal(joint, q.targets);
  return conditional(joint, q.targets, q.evidence);
}

}  // namespace cfsem
