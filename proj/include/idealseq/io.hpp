#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "idealseq/ideal.hpp"
#include "idealseq/sequence.hpp"

namespace idealseq {

std::string format_double(double v);  // 17 significant digits

// Minimal structured-document node (JSON-compatible output) with insertion
// order preserved and all reals emitted at 17 significant digits.
class SNode {
 public:
  static SNode object() { return SNode(Type::Object); }
  static SNode array() { return SNode(Type::Array); }
  static SNode str(std::string s);
  static SNode real(double v);
  static SNode integer(std::int64_t v);
  static SNode boolean(bool v);

  SNode& set(const std::string& key, SNode v);            // object
  SNode& set(const std::string& key, const std::string& v);
  SNode& set(const std::string& key, const char* v);
  SNode& set(const std::string& key, double v);
  SNode& set(const std::string& key, std::int64_t v);
  SNode& set(const std::string& key, int v);
  SNode& set(const std::string& key, bool v);
  SNode& push(SNode v);                                   // array
  SNode& push(double v);
  SNode& push(const std::string& v);

  std::string dump(int indent = 2) const;

 private:
  enum class Type { Str, Real, Int, Bool, Array, Object };
  explicit SNode(Type t) : type_(t) {}

  void dump_to(std::string& out, int indent, int depth) const;

  Type type_ = Type::Object;
  std::string str_;
  double real_ = 0.0;
  std::int64_t int_ = 0;
  bool bool_ = false;
  std::vector<SNode> items_;
  std::vector<std::pair<std::string, SNode>> members_;
};

// One comma-separated row; doubles already formatted by the caller.
std::string csv_row(const std::vector<std::string>& cells);

void write_text_file(const std::string& path, const std::string& content);

// --- config parsing ----------------------------------------------------------

// Weight catalogue: "constant", "one_over_i", "power:<s>", "file:<path>"
// (one value per line, line k = f(k)).
WeightFn parse_weight(const std::string& spec);

// Ideal shorthand: "fin", "I0"/"I1"/"I2"/"I-1", "density:<alpha>",
// "eu:<weight>", "summable:<weight>", "gdi:natural". Block partitions are
// materialized up to n_limit.
IdealSpec parse_ideal(const std::string& spec, std::int64_t n_limit);

// Sequence shorthand: zoo entry name or "file:<path>" for tabulated input.
SequenceSpec parse_sequence(const std::string& spec);

Point parse_point(const std::string& spec);  // comma-separated coordinates

}  // namespace idealseq
