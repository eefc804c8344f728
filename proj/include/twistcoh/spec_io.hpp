#pragma once

// JSON spec files for algebras, bimodules, homomorphisms, triangular algebras,
// ideals and the standard T-bimodules, plus the inverse emitters.
//
// Every scalar in a parsed file keeps its source position, so errors found
// after syntactic parsing (a bad rational, an index out of range) still point
// at a line and column.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistcoh/algebra.hpp"
#include "twistcoh/amenability.hpp"
#include "twistcoh/bimodule.hpp"
#include "twistcoh/duals.hpp"
#include "twistcoh/errors.hpp"
#include "twistcoh/ideal.hpp"
#include "twistcoh/triangular.hpp"

namespace twistcoh::io {

using Json = nlohmann::ordered_json;

struct SourcePos {
  std::size_t line = 0, column = 0;
};

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 0xf];
  return out;
}

namespace detail {

inline SourcePos position_of(std::string_view text, std::size_t offset) {
  SourcePos p{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

inline std::string pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Forward iterator over the text that publishes how far the lexer has read.
struct TrackingIterator {
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  const char** furthest = nullptr;

  reference operator*() const { return *p; }
  TrackingIterator& operator++() {
    ++p;
    if (*furthest < p) *furthest = p;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  bool operator==(const TrackingIterator& o) const { return p == o.p; }
};

// Records the start offset of every value, keyed by JSON pointer.
class PositionRecorder {
 public:
  using number_integer_t = Json::number_integer_t;
  using number_unsigned_t = Json::number_unsigned_t;
  using number_float_t = Json::number_float_t;
  using string_t = Json::string_t;
  using binary_t = Json::binary_t;

  PositionRecorder(std::string_view text, const char** furthest) : text_(text), furthest_(furthest) {}

  std::map<std::string, std::size_t> take() { return std::move(offsets_); }

  bool null() { return scalar(false); }
  bool boolean(bool) { return scalar(false); }
  bool number_integer(number_integer_t) { return scalar(false); }
  bool number_unsigned(number_unsigned_t) { return scalar(false); }
  bool number_float(number_float_t, const string_t&) { return scalar(false); }
  bool string(string_t&) { return scalar(true); }
  bool binary(binary_t&) { return scalar(false); }
  bool start_object(std::size_t) { return open(false); }
  bool start_array(std::size_t) { return open(true); }
  bool end_object() { return close(); }
  bool end_array() { return close(); }
  bool key(string_t& k) {
    stack_.back().key = k;
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) { return false; }

 private:
  struct Frame {
    std::string path;
    bool array = false;
    std::size_t index = 0;
    std::string key;
  };

  std::size_t consumed() const { return static_cast<std::size_t>(*furthest_ - text_.data()); }

  std::string next_path() {
    if (stack_.empty()) return "";
    Frame& f = stack_.back();
    if (f.array) return f.path + "/" + std::to_string(f.index++);
    return f.path + "/" + pointer_token(f.key);
  }

  bool scalar(bool quoted) {
    std::size_t end = consumed();
    std::size_t start = end;
    if (quoted) {
      // the closing quote was just read; walk back to the unescaped opening quote
      start = end >= 2 ? end - 2 : 0;
      while (start > 0) {
        if (text_[start] == '"') {
          std::size_t slashes = 0;
          while (start > slashes && text_[start - 1 - slashes] == '\\') ++slashes;
          if (slashes % 2 == 0) break;
        }
        --start;
      }
    } else {
      // the lexer may have read one character past a literal
      while (start > 0 && !is_literal_char(text_[start - 1])) --start;
      while (start > 0 && is_literal_char(text_[start - 1])) --start;
    }
    offsets_[next_path()] = start;
    return true;
  }

  static bool is_literal_char(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || c == '-' || c == '+' || c == '.' || c == 'E';
  }

  bool open(bool array) {
    const std::size_t start = consumed() ? consumed() - 1 : 0;
    std::string path = next_path();
    offsets_[path] = start;
    stack_.push_back({std::move(path), array, 0, {}});
    return true;
  }

  bool close() {
    stack_.pop_back();
    return true;
  }

  std::string_view text_;
  const char** furthest_;
  std::vector<Frame> stack_;
  std::map<std::string, std::size_t> offsets_;
};

}  // namespace detail

/// A parsed spec file: the JSON value, its source text and value positions.
class Document {
 public:
  static std::shared_ptr<const Document> parse(std::string text, std::string origin,
                                               std::filesystem::path base_dir = {}) {
    auto doc = std::shared_ptr<Document>(new Document);
    doc->text_ = std::move(text);
    doc->origin_ = std::move(origin);
    doc->base_dir_ = std::move(base_dir);
    try {
      doc->root_ = Json::parse(doc->text_);
    } catch (const Json::parse_error& e) {
      const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
      const SourcePos p = detail::position_of(doc->text_, offset);
      std::string msg = e.what();
      const auto cut = msg.find(": ", msg.find("column"));
      if (cut != std::string::npos) msg = msg.substr(cut + 2);
      throw ParseError(doc->origin_ + ": malformed JSON (" + msg + ")", p.line, p.column);
    }
    const char* furthest = doc->text_.data();
    detail::TrackingIterator first{doc->text_.data(), &furthest};
    detail::TrackingIterator last{doc->text_.data() + doc->text_.size(), &furthest};
    detail::PositionRecorder recorder(doc->text_, &furthest);
    Json::sax_parse(first, last, &recorder);
    doc->offsets_ = recorder.take();
    return doc;
  }

  static std::shared_ptr<const Document> load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read spec file " + path.generic_string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.generic_string(), path.parent_path());
  }

  const Json& root() const { return root_; }
  const std::string& text() const { return text_; }
  const std::string& origin() const { return origin_; }
  const std::filesystem::path& base_dir() const { return base_dir_; }
  std::string digest() const { return fnv1a_hex(text_); }

  /// Position of the value at a JSON pointer, or of its nearest recorded ancestor.
  SourcePos where(std::string pointer) const {
    while (true) {
      auto it = offsets_.find(pointer);
      if (it != offsets_.end()) return detail::position_of(text_, it->second);
      if (pointer.empty()) return {};
      pointer.erase(pointer.rfind('/'));
    }
  }

 private:
  Document() = default;
  std::string text_, origin_;
  std::filesystem::path base_dir_;
  Json root_;
  std::map<std::string, std::size_t> offsets_;
};

using DocRef = std::shared_ptr<const Document>;

/// A value inside a document.
struct Node {
  DocRef doc;
  std::string ptr;

  const Json& value() const { return doc->root().at(Json::json_pointer(ptr)); }
  bool has(const std::string& key) const { return value().is_object() && value().contains(key); }
  Node operator[](const std::string& key) const { return {doc, ptr + "/" + detail::pointer_token(key)}; }
  Node operator[](std::size_t i) const { return {doc, ptr + "/" + std::to_string(i)}; }

  [[noreturn]] void fail(const std::string& msg) const {
    const SourcePos p = doc->where(ptr);
    throw ParseError(doc->origin() + (ptr.empty() ? "" : " " + ptr) + ": " + msg, p.line, p.column);
  }

  Node field(const std::string& key) const {
    if (!value().is_object()) fail("expected an object");
    if (!value().contains(key)) fail("missing field \"" + key + "\"");
    return (*this)[key];
  }

  std::size_t size_of_array() const {
    if (!value().is_array()) fail("expected a list");
    return value().size();
  }

  std::string string() const {
    if (!value().is_string()) fail("expected a string");
    return value().get<std::string>();
  }

  std::size_t index(std::size_t bound) const {
    const Json& v = value();
    if (!v.is_number_integer() || v.get<long long>() < 0) fail("expected a non-negative integer");
    const auto i = v.get<unsigned long long>();
    if (i >= bound) fail("index " + std::to_string(i) + " out of range (bound " + std::to_string(bound) + ")");
    return static_cast<std::size_t>(i);
  }

  std::size_t count() const {
    const Json& v = value();
    if (!v.is_number_integer() || v.get<long long>() < 0) fail("expected a non-negative integer");
    return static_cast<std::size_t>(v.get<unsigned long long>());
  }

  Rat rational() const {
    const Json& v = value();
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (!v.is_string()) fail("expected a rational \"p/q\"");
    try {
      return Rat::parse(v.get<std::string>());
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }
};

struct InputDigest {
  std::string path;
  std::string fnv1a64;
};

/// Loads spec files and the files they reference; remembers every input for report digests.
class Loader {
 public:
  Node open(const std::filesystem::path& path) {
    const std::string key = path.lexically_normal().generic_string();
    auto it = docs_.find(key);
    if (it == docs_.end()) {
      auto doc = Document::load(path.lexically_normal());
      inputs_.push_back({key, doc->digest()});
      it = docs_.emplace(key, std::move(doc)).first;
    }
    return {it->second, ""};
  }

  /// A field holding either an inline object or a path relative to the referring file.
  Node resolve(const Node& ref) {
    const Json& v = ref.value();
    if (v.is_object()) return ref;
    if (!v.is_string()) ref.fail("expected an inline object or a file path");
    try {
      return open(ref.doc->base_dir() / v.get<std::string>());
    } catch (const ParseError& e) {
      if (e.line()) throw;
      ref.fail(e.what());
    }
  }

  const std::vector<InputDigest>& inputs() const { return inputs_; }

 private:
  std::map<std::string, DocRef> docs_;
  std::vector<InputDigest> inputs_;
};

// ---------------------------------------------------------------------------
// Parsing

/// Kind named in the file, or inferred from its fields when absent.
inline std::string kind_of(const Node& n) {
  if (!n.value().is_object()) n.fail("a spec must be a JSON object");
  if (n.has("kind")) {
    const std::string k = n["kind"].string();
    for (const char* known : {"algebra", "bimodule", "hom", "tri", "ideal", "standard-module"})
      if (k == known) return k;
    n["kind"].fail("unknown kind \"" + k + "\"");
  }
  if (n.has("left_action") || n.has("right_action")) return "bimodule";
  if (n.has("structure")) return "algebra";
  if (n.has("matrix")) return "hom";
  if (n.has("m") && n.has("a") && n.has("b")) return "tri";
  if (n.has("basis")) return "ideal";
  n.fail("cannot tell the kind of this spec; add a \"kind\" field");
}

inline void expect_kind(const Node& n, const std::string& kind) {
  const std::string k = kind_of(n);
  if (k != kind) n.fail("expected a " + kind + " spec, found " + k);
}

/// Reads [i, j, k, "p/q"] entries into a dense tensor of shape d0 x d1 x d2.
inline std::vector<Rat> parse_tensor(const Node& list, std::size_t d0, std::size_t d1, std::size_t d2) {
  std::vector<Rat> t(d0 * d1 * d2);
  std::vector<bool> seen(t.size(), false);
  for (std::size_t e = 0; e < list.size_of_array(); ++e) {
    const Node entry = list[e];
    if (entry.size_of_array() != 4) entry.fail("expected [i, j, k, \"p/q\"]");
    const std::size_t i = entry[0].index(d0), j = entry[1].index(d1), k = entry[2].index(d2);
    const std::size_t at = (i * d1 + j) * d2 + k;
    if (seen[at]) entry.fail("duplicate entry for (" + std::to_string(i) + "," + std::to_string(j) + "," +
                             std::to_string(k) + ")");
    seen[at] = true;
    t[at] = entry[3].rational();
  }
  return t;
}

inline Vec parse_vec(const Node& list, std::size_t len) {
  if (list.size_of_array() != len)
    list.fail("expected " + std::to_string(len) + " entries, found " + std::to_string(list.size_of_array()));
  Vec v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = list[i].rational();
  return v;
}

inline FiniteAlgebra parse_algebra(Loader& loader, const Node& spec);
inline TriangularAlgebra parse_tri(Loader& loader, const Node& spec);

/// An algebra spec, or the algebra of a tri spec.
inline FiniteAlgebra parse_algebra_like(Loader& loader, const Node& ref) {
  const Node n = loader.resolve(ref);
  if (kind_of(n) == "tri") return parse_tri(loader, n).algebra();
  return parse_algebra(loader, n);
}

inline FiniteAlgebra parse_algebra(Loader&, const Node& n) {
  expect_kind(n, "algebra");
  const std::size_t dim = n.field("dim").count();
  std::vector<std::string> labels;
  if (n.has("labels")) {
    const Node l = n["labels"];
    if (l.size_of_array() != dim) l.fail("expected " + std::to_string(dim) + " labels");
    for (std::size_t i = 0; i < dim; ++i) labels.push_back(l[i].string());
  } else {
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  }
  std::vector<Rat> c = parse_tensor(n.field("structure"), dim, dim, dim);
  Vec unit = parse_vec(n.field("unit"), dim);
  return FiniteAlgebra(std::move(labels), std::move(c), std::move(unit));
}

/// Bimodule spec; left_algebra/right_algebra may be omitted when defaults are supplied.
inline Bimodule parse_bimodule(Loader& loader, const Node& n, const FiniteAlgebra* left_default = nullptr,
                               const FiniteAlgebra* right_default = nullptr) {
  expect_kind(n, "bimodule");
  auto side = [&](const char* key, const FiniteAlgebra* fallback) {
    if (n.has(key)) return parse_algebra_like(loader, n[key]);
    if (!fallback) n.fail(std::string("missing field \"") + key + "\"");
    return *fallback;
  };
  FiniteAlgebra left = side("left_algebra", left_default);
  FiniteAlgebra right = side("right_algebra", right_default);
  if (left_default && !(left == *left_default)) n["left_algebra"].fail("left algebra does not match the expected one");
  if (right_default && !(right == *right_default))
    n["right_algebra"].fail("right algebra does not match the expected one");
  const std::size_t dim = n.field("dim").count();
  std::vector<Rat> l = n.has("left_action") ? parse_tensor(n["left_action"], left.dim(), dim, dim)
                                            : std::vector<Rat>(left.dim() * dim * dim);
  std::vector<Rat> r = n.has("right_action") ? parse_tensor(n["right_action"], dim, right.dim(), dim)
                                             : std::vector<Rat>(dim * right.dim() * dim);
  return Bimodule(std::move(left), std::move(right), dim, std::move(l), std::move(r));
}

struct HomSpec {
  FiniteAlgebra source, target;
  Mat matrix;
};

/// Hom spec without verification. source/target may be omitted when a default algebra is given.
inline HomSpec parse_hom_spec(Loader& loader, const Node& n, const FiniteAlgebra* algebra_default = nullptr) {
  expect_kind(n, "hom");
  auto side = [&](const char* key) {
    if (n.has(key)) return parse_algebra_like(loader, n[key]);
    if (!algebra_default) n.fail(std::string("missing field \"") + key + "\"");
    return *algebra_default;
  };
  HomSpec h{side("source"), side("target"), Mat()};
  const std::size_t rows = h.target.dim(), cols = h.source.dim();
  const Node m = n.field("matrix");
  if (m.value().is_string()) {
    if (m.string() != "identity") m.fail("matrix must be a list or \"identity\"");
    if (rows != cols) m.fail("identity needs source and target of equal dimension");
    h.matrix = Mat::identity(rows);
    return h;
  }
  const Vec flat = parse_vec(m, rows * cols);
  h.matrix = Mat(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) h.matrix(r, c) = flat[r * cols + c];
  return h;
}

inline AlgebraHom parse_hom(Loader& loader, const Node& n, const FiniteAlgebra* algebra_default = nullptr) {
  HomSpec h = parse_hom_spec(loader, n, algebra_default);
  return AlgebraHom::make(std::move(h.source), std::move(h.target), std::move(h.matrix));
}

/// An endomorphism of `a`: a hom spec file, or the literal "id".
inline AlgebraHom load_endomorphism(Loader& loader, const std::string& arg, const FiniteAlgebra& a) {
  if (arg == "id" || arg == "identity") return AlgebraHom::identity(a);
  const Node n = loader.open(arg);
  AlgebraHom h = parse_hom(loader, n, &a);
  if (!h.is_endomorphism_of(a)) n.fail("homomorphism is not an endomorphism of the algebra");
  return h;
}

inline TriangularAlgebra parse_tri(Loader& loader, const Node& n) {
  expect_kind(n, "tri");
  const FiniteAlgebra a = parse_algebra_like(loader, n.field("a"));
  const FiniteAlgebra b = parse_algebra_like(loader, n.field("b"));
  const Bimodule m = parse_bimodule(loader, loader.resolve(n.field("m")), &a, &b);
  bool allow_zero = false;
  if (n.has("allow_zero_corner")) {
    if (!n["allow_zero_corner"].value().is_boolean()) n["allow_zero_corner"].fail("expected true or false");
    allow_zero = n["allow_zero_corner"].value().get<bool>();
  }
  return build_tri(a, m, b, allow_zero);
}

struct IdealSpec {
  FiniteAlgebra algebra;
  std::vector<Vec> generators;
};

inline IdealSpec parse_ideal_spec(Loader& loader, const Node& n) {
  expect_kind(n, "ideal");
  IdealSpec s{parse_algebra_like(loader, n.field("algebra")), {}};
  const Node basis = n.field("basis");
  for (std::size_t i = 0; i < basis.size_of_array(); ++i) s.generators.push_back(parse_vec(basis[i], s.algebra.dim()));
  return s;
}

/// The standard T-bimodules, by name.
struct StandardModule {
  TriangularAlgebra tri;
  std::string name;
  std::size_t level = 0;
  Bimodule module;
  bool unital = true;
};

inline StandardModule standard_module(const TriangularAlgebra& t, const std::string& name, std::size_t level) {
  Bimodule base;
  bool unital = true;
  if (name == "regular" || name == "dual") base = regular_bimodule(t.algebra());
  else if (name == "a-corner") base = a_module(t);
  else if (name == "b-corner") base = b_module(t);
  else if (name == "m-corner") base = m_module(t);
  else if (name == "obstruction") base = build_obstruction_module(t), unital = false;
  else throw ParseError("unknown standard module \"" + name + "\"");
  return {t, name, level, iterated_dual(base, level).module, unital};
}

inline StandardModule parse_standard_module(Loader& loader, const Node& n) {
  expect_kind(n, "standard-module");
  TriangularAlgebra t = parse_tri(loader, loader.resolve(n.field("tri")));
  const Node name_node = n.field("name");
  const std::string name = name_node.string();
  std::size_t level = name == "dual" ? 1 : 0;
  if (n.has("level")) level = n["level"].count();
  try {
    return standard_module(t, name, level);
  } catch (const ParseError& e) {
    name_node.fail(e.what());
  }
}

/// A bimodule spec or a standard-module spec, as a module over `a` on both sides.
inline Bimodule parse_module_over(Loader& loader, const Node& n, const FiniteAlgebra& a) {
  if (kind_of(n) == "standard-module") {
    Bimodule x = parse_standard_module(loader, n).module;
    if (!(x.left_algebra() == a) || !(x.right_algebra() == a)) n.fail("module is not over the given algebra");
    return x;
  }
  return parse_bimodule(loader, n, &a, &a);
}

// ---------------------------------------------------------------------------
// Emitting

inline Json rat_json(const Rat& r) { return r.str(); }

inline Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

/// Matrix as a list of rows.
inline Json matrix_json(const Mat& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_json(m.row(r)));
  return out;
}

inline Json tensor_json(const std::vector<Rat>& t, std::size_t d1, std::size_t d2) {
  Json out = Json::array();
  for (std::size_t at = 0; at < t.size(); ++at) {
    if (t[at].is_zero()) continue;
    const std::size_t k = at % d2, j = (at / d2) % d1, i = at / (d1 * d2);
    out.push_back(Json::array({i, j, k, rat_json(t[at])}));
  }
  return out;
}

inline Json to_json(const FiniteAlgebra& a) {
  Json j;
  j["kind"] = "algebra";
  j["dim"] = a.dim();
  j["labels"] = a.labels();
  j["structure"] = tensor_json(a.structure(), a.dim(), a.dim());
  j["unit"] = vec_json(a.unit());
  return j;
}

inline Json to_json(const Bimodule& x) {
  Json j;
  j["kind"] = "bimodule";
  j["left_algebra"] = to_json(x.left_algebra());
  j["right_algebra"] = to_json(x.right_algebra());
  j["dim"] = x.dim();
  j["left_action"] = tensor_json(x.left_action(), x.dim(), x.dim());
  j["right_action"] = tensor_json(x.right_action(), x.right_algebra().dim(), x.dim());
  return j;
}

inline Json to_json(const AlgebraHom& h) {
  Json j;
  j["kind"] = "hom";
  j["source"] = to_json(h.source());
  j["target"] = to_json(h.target());
  Json flat = Json::array();
  for (std::size_t r = 0; r < h.matrix().rows(); ++r)
    for (std::size_t c = 0; c < h.matrix().cols(); ++c) flat.push_back(rat_json(h.matrix()(r, c)));
  j["matrix"] = std::move(flat);
  return j;
}

inline Json to_json(const TriangularAlgebra& t) {
  Json j;
  j["kind"] = "tri";
  j["a"] = to_json(t.a());
  j["m"] = to_json(t.m());
  j["b"] = to_json(t.b());
  if (t.m_dim() == 0) j["allow_zero_corner"] = true;
  return j;
}

inline Json to_json(const ValidationReport& r) {
  Json out = Json::array();
  for (const auto& v : r.violations()) {
    Json j;
    j["axiom"] = v.axiom;
    j["indices"] = v.indices;
    if (!v.detail.empty()) j["detail"] = v.detail;
    out.push_back(std::move(j));
  }
  return out;
}

/// Parses text already in memory (used for round trips and tests).
inline Node parse_text(std::string text, std::string origin = "<memory>") {
  return {Document::parse(std::move(text), std::move(origin)), ""};
}

}  // namespace twistcoh::io
