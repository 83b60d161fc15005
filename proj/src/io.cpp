#include "idealseq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace idealseq {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("format_double: non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SNode SNode::str(std::string s) {
  SNode n(Type::Str);
  n.str_ = std::move(s);
  return n;
}

SNode SNode::real(double v) {
  SNode n(Type::Real);
  n.real_ = v;
  return n;
}

SNode SNode::integer(std::int64_t v) {
  SNode n(Type::Int);
  n.int_ = v;
  return n;
}

SNode SNode::boolean(bool v) {
  SNode n(Type::Bool);
  n.bool_ = v;
  return n;
}

SNode& SNode::set(const std::string& key, SNode v) {
  if (type_ != Type::Object) throw std::logic_error("SNode: set on non-object");
  members_.emplace_back(key, std::move(v));
  return *this;
}

SNode& SNode::set(const std::string& key, const std::string& v) { return set(key, str(v)); }
SNode& SNode::set(const std::string& key, const char* v) { return set(key, str(v)); }
SNode& SNode::set(const std::string& key, double v) { return set(key, real(v)); }
SNode& SNode::set(const std::string& key, std::int64_t v) { return set(key, integer(v)); }
SNode& SNode::set(const std::string& key, int v) { return set(key, integer(v)); }
SNode& SNode::set(const std::string& key, bool v) { return set(key, boolean(v)); }

SNode& SNode::push(SNode v) {
  if (type_ != Type::Array) throw std::logic_error("SNode: push on non-array");
  items_.push_back(std::move(v));
  return *this;
}

SNode& SNode::push(double v) { return push(real(v)); }
SNode& SNode::push(const std::string& v) { return push(str(v)); }

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

}  // namespace

void SNode::dump_to(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string pad_close(static_cast<std::size_t>(indent) * depth, ' ');
  switch (type_) {
    case Type::Str: append_escaped(out, str_); break;
    case Type::Real: out += format_double(real_); break;
    case Type::Int: out += std::to_string(int_); break;
    case Type::Bool: out += bool_ ? "true" : "false"; break;
    case Type::Array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        out += pad;
        items_[i].dump_to(out, indent, depth + 1);
        if (i + 1 < items_.size()) out += ',';
        out += '\n';
      }
      out += pad_close + "]";
      break;
    }
    case Type::Object: {
      if (members_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        out += pad;
        append_escaped(out, members_[i].first);
        out += ": ";
        members_[i].second.dump_to(out, indent, depth + 1);
        if (i + 1 < members_.size()) out += ',';
        out += '\n';
      }
      out += pad_close + "}";
      break;
    }
  }
}

std::string SNode::dump(int indent) const {
  std::string out;
  dump_to(out, indent, 0);
  out += '\n';
  return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

WeightFn parse_weight(const std::string& spec) {
  if (spec == "constant" || spec == "one") return WeightFn::constant();
  if (spec == "one_over_i" || spec == "1/i") return WeightFn::one_over_i();
  if (spec.rfind("power:", 0) == 0) return WeightFn::power(std::stod(spec.substr(6)));
  if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("weight table: cannot open " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      values.push_back(std::stod(line));
    }
    if (values.empty()) throw std::runtime_error("weight table: empty file " + path);
    return WeightFn::tabulated(std::move(values), "file:" + path);
  }
  throw std::invalid_argument("unknown weight '" + spec +
                              "' (use constant, one_over_i, power:<s>, file:<path>)");
}

IdealSpec parse_ideal(const std::string& spec, std::int64_t n_limit) {
  if (spec == "fin") return IdealSpec::fin();
  if (spec.size() >= 2 && spec[0] == 'I') {
    return IdealSpec::density_alpha(std::stod(spec.substr(1)));
  }
  if (spec.rfind("density:", 0) == 0)
    return IdealSpec::density_alpha(std::stod(spec.substr(8)));
  if (spec.rfind("eu:", 0) == 0) return IdealSpec::erdos_ulam(parse_weight(spec.substr(3)));
  if (spec.rfind("summable:", 0) == 0)
    return IdealSpec::summable(parse_weight(spec.substr(9)));
  if (spec == "gdi:natural") return IdealSpec::gdi(GdiSpec::natural_density(n_limit));
  if (spec.rfind("gdi:", 0) == 0) {
    return IdealSpec::gdi(
        GdiSpec::weighted_blocks(parse_weight(spec.substr(4)), n_limit, spec.substr(4)));
  }
  throw std::invalid_argument("unknown ideal '" + spec +
                              "' (use fin, I<alpha>, density:<alpha>, eu:<w>, summable:<w>, "
                              "gdi:natural, gdi:<w>)");
}

SequenceSpec parse_sequence(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    SequenceSpec s;
    s.generator = TabulatedSeq{spec.substr(5)};
    s.space = MetricSpace{};
    s.label = spec;
    return s;
  }
  return zoo(spec).spec;
}

Point parse_point(const std::string& spec) {
  Point p;
  std::stringstream ss(spec);
  std::string cell;
  while (std::getline(ss, cell, ',')) p.coords.push_back(std::stod(cell));
  if (p.coords.empty()) throw std::invalid_argument("empty point spec");
  return p;
}

}  // namespace idealseq
