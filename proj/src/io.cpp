#include "minspace/io.hpp"

#include "minspace/error.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

namespace minspace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io-error", "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

struct Statement {
  std::size_t begin = 0; // first non-space character
  std::size_t end = 0;   // one past the last character before ';'
  std::size_t stop = 0;  // position of ';'
  std::string text;
  std::string keyword;
  std::size_t line = 1, column = 1;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void position_of(std::string_view text, std::size_t offset, std::size_t& line, std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

// Comments become spaces so offsets and columns survive.
std::string strip_comments(std::string_view text) {
  std::string out(text);
  bool comment = false;
  for (char& c : out) {
    if (c == '\n') comment = false;
    else if (c == '#') comment = true;
    if (comment) c = ' ';
  }
  return out;
}

std::vector<Statement> split_statements(const std::string& stripped) {
  std::vector<Statement> out;
  std::size_t start = 0;
  while (start < stripped.size()) {
    const std::size_t semi = stripped.find(';', start);
    const std::size_t stop = semi == std::string::npos ? stripped.size() : semi;
    std::size_t b = start;
    while (b < stop && std::isspace(static_cast<unsigned char>(stripped[b]))) ++b;
    if (b < stop) {
      Statement s;
      s.begin = b;
      s.end = stop;
      while (s.end > b && std::isspace(static_cast<unsigned char>(stripped[s.end - 1]))) --s.end;
      s.stop = stop;
      s.text = stripped.substr(b, s.end - b);
      position_of(stripped, b, s.line, s.column);
      if (semi == std::string::npos) {
        std::size_t l = 0, c = 0;
        position_of(stripped, stripped.size(), l, c);
        throw ParseError("expected ';' at end of statement", l, c);
      }
      std::size_t k = 0;
      while (k < s.text.size() && (std::isalnum(static_cast<unsigned char>(s.text[k])) || s.text[k] == '_')) ++k;
      s.keyword = s.text.substr(0, k);
      out.push_back(std::move(s));
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

bool is_signature_keyword(const std::string& k) { return k == "const" || k == "fn" || k == "rel"; }

// Re-raises a parse error from a statement fragment at file coordinates.
template <typename F>
auto at_statement(const Statement& s, std::size_t skip, F&& f) {
  std::size_t line = s.line;
  std::size_t column = s.column + skip;
  try {
    return f();
  } catch (const ParseError& e) {
    std::string msg = e.what();
    if (const auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    if (e.line() == 1) throw ParseError(msg, line, column + e.column() - 1);
    throw ParseError(msg, line + e.line() - 1, e.column());
  }
}

std::string_view after_keyword(const Statement& s, std::size_t& skip) {
  std::string_view rest(s.text);
  rest.remove_prefix(s.keyword.size());
  skip = s.keyword.size();
  while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) {
    rest.remove_prefix(1);
    ++skip;
  }
  return rest;
}

Signature signature_of(const std::string& stripped, const std::vector<Statement>& stmts) {
  std::string blanked = stripped;
  for (const Statement& s : stmts) {
    if (is_signature_keyword(s.keyword)) continue;
    for (std::size_t i = s.begin; i <= s.stop && i < blanked.size(); ++i)
      if (blanked[i] != '\n') blanked[i] = ' ';
  }
  return parse_signature(blanked);
}

std::int64_t parse_int(std::string_view text, const Statement& s) {
  std::int64_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ParseError("expected an integer, found '" + std::string(text) + "'", s.line, s.column);
  return v;
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

SymbolRef resolve_symbol(const Signature& sig, std::string_view name, const Statement& s) {
  static const std::regex pattern(R"(([A-Za-z_][A-Za-z0-9_]*)(\[([0-9]+)\])?)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(name.begin(), name.end(), m, pattern))
    throw ParseError("expected a symbol name, found '" + std::string(name) + "'", s.line, s.column);
  std::optional<std::uint64_t> index;
  if (m[3].matched) index = std::stoull(m[3].str());
  const auto ref = sig.lookup(m[1].str(), index);
  if (!ref) throw Error("unknown-symbol", "unknown symbol '" + std::string(name) + "'");
  return *ref;
}

std::vector<std::string> markers_of(const Statement& s) {
  std::size_t skip = 0;
  auto names = words(after_keyword(s, skip));
  if (names.empty()) throw ParseError("expected marker names", s.line, s.column);
  return names;
}

void fill_table(FiniteTable& t, const Signature& sig, const Statement& s) {
  const auto eq = s.text.find('=');
  if (eq == std::string::npos) throw ParseError("expected '<symbol> = <values>'", s.line, s.column);
  const SymbolRef sym = resolve_symbol(sig, trim(std::string_view(s.text).substr(0, eq)), s);
  const std::string_view rhs = std::string_view(s.text).substr(eq + 1);
  auto element = [&](const std::string& w) {
    const std::int64_t v = parse_int(w, s);
    if (v < 0) throw ParseError("negative element '" + w + "'", s.line, s.column);
    return static_cast<std::size_t>(v);
  };
  switch (sig.kind(sym)) {
    case SymbolKind::Constant: {
      const auto vals = words(rhs);
      if (vals.size() != 1) throw ParseError("constant needs exactly one element", s.line, s.column);
      t.set_constant(sym, element(vals[0]));
      break;
    }
    case SymbolKind::Function: {
      std::vector<std::size_t> vals;
      for (const auto& w : words(rhs)) vals.push_back(element(w));
      t.set_function(sym, std::move(vals));
      break;
    }
    case SymbolKind::Relation: {
      std::vector<std::vector<std::size_t>> tuples;
      std::string_view r = trim(rhs);
      const auto arity = static_cast<std::size_t>(sig.arity(sym));
      while (!r.empty()) {
        std::vector<std::size_t> tuple;
        if (r.front() == '(') {
          const auto close = r.find(')');
          if (close == std::string_view::npos) throw ParseError("unclosed tuple", s.line, s.column);
          for (const auto& w : words(r.substr(1, close - 1))) tuple.push_back(element(w));
          r = trim(r.substr(close + 1));
        } else {
          // Unary relations may list bare elements.
          std::size_t k = 0;
          while (k < r.size() && !std::isspace(static_cast<unsigned char>(r[k])) && r[k] != ',') ++k;
          tuple.push_back(element(std::string(r.substr(0, k))));
          r = trim(r.substr(k));
        }
        if (!r.empty() && r.front() == ',') r = trim(r.substr(1));
        if (tuple.size() != arity)
          throw Error("arity-mismatch", "tuple of size " + std::to_string(tuple.size()) + " for '" +
                                            sig.symbol_name(sym) + "'/" + std::to_string(arity));
        tuples.push_back(std::move(tuple));
      }
      t.set_relation(sym, tuples);
      break;
    }
    case SymbolKind::Variable: break;
  }
}

} // namespace

bool is_signature_text(std::string_view text) {
  const std::string stripped = strip_comments(text);
  const auto stmts = split_statements(stripped);
  if (stmts.empty()) return false;
  for (const auto& s : stmts)
    if (!is_signature_keyword(s.keyword)) return false;
  return true;
}

StructureFile parse_structure(std::string_view text) {
  const std::string stripped = strip_comments(text);
  const auto stmts = split_statements(stripped);
  StructureFile out;
  out.backend = "presented";
  const Statement* backend_stmt = nullptr;
  for (const auto& s : stmts)
    if (s.keyword == "backend") {
      if (backend_stmt) throw ParseError("duplicate backend statement", s.line, s.column);
      backend_stmt = &s;
      std::size_t skip = 0;
      out.backend = std::string(trim(after_keyword(s, skip)));
    }

  auto unexpected = [](const Statement& s) -> void {
    throw ParseError("unexpected statement '" + (s.keyword.empty() ? s.text : s.keyword) + "'", s.line, s.column);
  };

  if (out.backend == "abelian" || out.backend == "free_group") {
    std::optional<std::vector<std::string>> markers;
    std::vector<const Statement*> relator_stmts;
    for (const auto& s : stmts) {
      if (&s == backend_stmt) continue;
      if (s.keyword == "markers") {
        if (markers) throw ParseError("duplicate markers statement", s.line, s.column);
        markers = markers_of(s);
      } else if (s.keyword == "relator" && out.backend == "abelian") {
        relator_stmts.push_back(&s);
      } else {
        unexpected(s);
      }
    }
    if (!markers) throw Error("bad-structure", "group backends need a markers statement");
    if (out.backend == "free_group") {
      auto g = std::make_shared<FreeGroupMarked>(*markers);
      out.signature = g->signature();
      out.structure = g;
      return out;
    }
    std::vector<std::vector<std::int64_t>> relators;
    for (const Statement* s : relator_stmts) {
      std::size_t skip = 0;
      std::vector<std::int64_t> row;
      for (const auto& w : words(after_keyword(*s, skip))) row.push_back(parse_int(w, *s));
      if (row.size() != markers->size())
        throw Error("bad-structure", "relator has " + std::to_string(row.size()) + " entries for " +
                                         std::to_string(markers->size()) + " markers");
      relators.push_back(std::move(row));
    }
    auto g = std::make_shared<AbelianMarked>(*markers, relators);
    out.signature = g->signature();
    out.structure = g;
    return out;
  }

  out.signature = signature_of(stripped, stmts);

  if (out.backend == "table") {
    if (!out.signature.is_locally_finite()) throw Error("locally-infinite", "table backends need a finite signature");
    std::optional<std::size_t> size;
    std::vector<const Statement*> assignments;
    for (const auto& s : stmts) {
      if (&s == backend_stmt || is_signature_keyword(s.keyword)) continue;
      if (s.keyword == "size" && s.text.find('=') == std::string::npos) {
        std::size_t skip = 0;
        const std::int64_t n = parse_int(trim(after_keyword(s, skip)), s);
        if (n <= 0) throw Error("bad-structure", "size must be positive");
        size = static_cast<std::size_t>(n);
      } else if (s.text.find('=') != std::string::npos) {
        assignments.push_back(&s);
      } else {
        unexpected(s);
      }
    }
    if (!size) throw Error("bad-structure", "table backend needs a size statement");
    auto t = std::make_shared<FiniteTable>(out.signature, *size);
    for (const Statement* s : assignments) fill_table(*t, out.signature, *s);
    t->validate();
    out.table = t;
    out.structure = t;
    return out;
  }

  if (out.backend != "presented") {
    if (backend_stmt) throw ParseError("unknown backend '" + out.backend + "'", backend_stmt->line, backend_stmt->column);
  }
  for (const auto& s : stmts) {
    if (&s == backend_stmt || is_signature_keyword(s.keyword)) continue;
    if (s.keyword == "atom" || s.keyword == "not") {
      std::size_t skip = 0;
      const std::string body(after_keyword(s, skip));
      Atom a = at_statement(s, skip, [&] { return parse_atom(body, out.signature); });
      out.literals.push_back(Literal{std::move(a), s.keyword == "atom"});
    } else {
      unexpected(s);
    }
  }
  const Consistency c = consistent(out.signature, out.literals);
  if (c.consistent) out.structure = std::make_shared<FinitelyPresented>(c.witness);
  return out;
}

StructureFile load_structure(const std::filesystem::path& path) { return parse_structure(read_file(path)); }

StructurePtr load_model(const std::filesystem::path& path) {
  StructureFile f = load_structure(path);
  if (!f.structure) {
    const Consistency c = consistent(f.signature, f.literals);
    throw Error("inconsistent", "'" + path.string() + "' is inconsistent: clash on not " +
                                    to_string(f.signature, c.clash->atom));
  }
  return f.structure;
}

// ---------------------------------------------------------------------------
// Metrics

FiniteSemiMetric parse_metric_csv(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.emplace_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    cells.emplace_back(trim(cur));
    rows.emplace_back(line_no, std::move(cells));
  }
  if (rows.empty()) throw ParseError("empty metric file", 1, 1);
  const auto& header = rows.front().second;
  const std::vector<std::string> labels(header.begin() + 1, header.end());
  const std::size_t n = labels.size();
  if (n == 0) throw ParseError("header lists no labels", rows.front().first, 1);
  if (rows.size() != n + 1)
    throw ParseError("expected " + std::to_string(n) + " data rows, found " + std::to_string(rows.size() - 1),
                     rows.back().first, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (labels[i] == labels[j]) throw ParseError("duplicate label '" + labels[i] + "'", rows.front().first, 1);
  std::vector<std::vector<Extended>> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [ln, cells] = rows[i + 1];
    if (cells.size() != n + 1)
      throw ParseError("row has " + std::to_string(cells.size() - 1) + " values, expected " + std::to_string(n), ln, 1);
    if (cells[0] != labels[i])
      throw ParseError("row label '" + cells[0] + "' does not match header label '" + labels[i] + "'", ln, 1);
    for (std::size_t j = 0; j < n; ++j) {
      try {
        d[i].push_back(Extended::parse(cells[j + 1]));
      } catch (const Error& e) {
        throw ParseError(e.what(), ln, 1);
      }
    }
  }
  return FiniteSemiMetric(labels, std::move(d));
}

FiniteSemiMetric load_metric(const std::filesystem::path& path) { return parse_metric_csv(read_file(path)); }

std::string to_csv(const FiniteSemiMetric& x) {
  std::string out;
  for (const auto& l : x.labels()) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += x.labels()[i];
    for (std::size_t j = 0; j < x.size(); ++j) out += "," + x.d(i, j).to_string();
    out += "\n";
  }
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (const auto& w : words(text)) out.push_back(parse_rational(w));
  return out;
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& w : words(text)) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) throw Error("bad-number", "bad count '" + w + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> resolve_labels(const FiniteSemiMetric& x, std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& w : words(text)) {
    const auto it = std::find(x.labels().begin(), x.labels().end(), w);
    if (it == x.labels().end()) throw Error("unknown-label", "no point labeled '" + w + "'");
    out.push_back(static_cast<std::size_t>(it - x.labels().begin()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

Json consistency_json(const Signature& sig, const Consistency& c) {
  Json j;
  j["status"] = c.consistent ? "consistent" : "inconsistent";
  if (c.clash) {
    j["clash"] = {{"index", *c.clash_index}, {"literal", "not " + to_string(sig, c.clash->atom)}};
  }
  Json atoms = Json::array();
  for (const Atom& a : c.witness.atoms) atoms.push_back(to_string(sig, a));
  j["witness_atoms"] = atoms;
  return j;
}

Json distance_json(const Signature& sig, const DistanceResult& r, std::size_t m_cap) {
  Json j;
  j["distance"] = r.distance.to_string();
  j["exact"] = r.distance.exact();
  j["cap"] = m_cap;
  if (r.witness) {
    j["witness_atom"] = to_string(sig, *r.witness);
    j["witness_length"] = length(*r.witness);
  }
  return j;
}

Json cover_json(const CoverCertificate& cert) {
  Json j;
  j["signature"] = cert.signature.to_string();
  j["m"] = cert.level;
  Json atoms = Json::array();
  for (const Atom& a : cert.atoms) atoms.push_back(to_string(cert.signature, a));
  j["atoms"] = atoms;
  Json types = Json::array();
  for (const MType& t : cert.types) {
    Json signs = Json::array();
    for (bool s : t.signs) signs.push_back(s);
    Json witness = Json::array();
    for (const Atom& a : t.witness.atoms) witness.push_back(to_string(cert.signature, a));
    types.push_back({{"signs", signs}, {"witness_atoms", witness}});
  }
  j["count"] = cert.types.size();
  j["types"] = types;
  return j;
}

Json separated_json(const Signature& sig, const SeparatedFamily& fam) {
  Json j;
  j["family"] = fam.family;
  j["atom_length"] = fam.atom_length;
  Json thetas = Json::array();
  for (const Atom& a : fam.thetas) thetas.push_back(to_string(sig, a));
  j["thetas"] = thetas;
  Json structures = Json::array();
  for (const auto& s : fam.structures) {
    Json atoms = Json::array();
    for (const Atom& a : s->presentation().atoms) atoms.push_back(to_string(sig, a));
    structures.push_back({{"witness_atoms", atoms}});
  }
  j["structures"] = structures;
  return j;
}

Json metric_json(const FiniteSemiMetric& x) {
  Json j;
  j["labels"] = x.labels();
  Json rows = Json::array();
  for (const auto& row : x.matrix()) {
    Json r = Json::array();
    for (const Extended& v : row) r.push_back(v.to_string());
    rows.push_back(r);
  }
  j["matrix"] = rows;
  return j;
}

Json gh_json(const FiniteSemiMetric& x, const FiniteSemiMetric& y, const GhResult& r) {
  Json j;
  j["gh"] = to_string(r.distance);
  Json corr = Json::array();
  for (const auto& [a, b] : r.correspondence) corr.push_back(Json::array({x.labels()[a], y.labels()[b]}));
  j["correspondence"] = corr;
  j["distortion"] = to_string(distortion(x, y, r.correspondence));
  j["lower_bound"] = to_string(gh_lower_bound(x, y));
  j["upper_bound"] = to_string(gh_upper_bound(x, y));
  return j;
}

namespace {

Json labels_of(const FiniteSemiMetric& x, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (std::size_t i : idx) out.push_back(x.labels()[i]);
  return out;
}

} // namespace

Json net_json(const FiniteSemiMetric& x, const EpsNet& net) {
  return Json{{"eps", to_string(net.radius)}, {"size", net.centers.size()}, {"centers", labels_of(x, net.centers)}};
}

Json nu_json(const FiniteSemiMetric& x, const NuReport& r) {
  Json j;
  j["bounded"] = r.ok;
  j["diameter"] = r.diameter.to_string();
  j["diameter_ok"] = r.diameter_ok;
  Json entries = Json::array();
  for (const NuEntry& e : r.entries)
    entries.push_back({{"eps", to_string(e.eps)},
                       {"allowed", e.allowed},
                       {"ok", e.ok},
                       {"exact_search", e.exact_search},
                       {"centers", labels_of(x, e.centers)}});
  j["entries"] = entries;
  return j;
}

Json encoding_json(const SemiMetricEncoding& e) {
  Json j;
  j["labels"] = e.labels;
  Json grid = Json::array();
  for (const Rational& g : e.grid) grid.push_back(to_string(g));
  j["grid"] = grid;
  Json rel = Json::array();
  for (std::size_t g = 0; g < e.grid.size(); ++g) {
    Json pairs = Json::array();
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = 0; b < e.size(); ++b)
        if (e.relation[g][a][b]) pairs.push_back(Json::array({e.labels[a], e.labels[b]}));
    rel.push_back({{"eps", to_string(e.grid[g])}, {"pairs", pairs}});
  }
  j["relations"] = rel;
  if (!e.markers.empty()) {
    Json markers = Json::array();
    for (const auto& [eps, pts] : e.markers) {
      Json names = Json::array();
      for (std::size_t p : pts) names.push_back(e.labels[p]);
      markers.push_back({{"eps", to_string(eps)}, {"points", names}});
    }
    j["markers"] = markers;
  }
  return j;
}

Json violations_json(const std::vector<AxiomViolation>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back({{"axiom", x.axiom}, {"detail", x.detail}});
  return out;
}

Json net_verdict_json(const Rational& eps, const NetVerdict& v) {
  Json j;
  j["eps"] = to_string(eps);
  j["agree"] = v.agree;
  j["m"] = v.m;
  j["atoms_checked"] = v.atoms_checked;
  if (v.bound) j["bound"] = to_string(*v.bound);
  if (v.disagreement) {
    const auto& d = *v.disagreement;
    j["disagreement"] = {{"i", d.i},
                         {"threshold", to_string(Rational(eps * d.i))},
                         {"a", d.a},
                         {"b", d.b},
                         {"x_holds", d.x_holds},
                         {"y_holds", d.y_holds}};
  }
  return j;
}

Json cauchy_json(const DistanceTable& table, const CauchyReport& r) {
  Json j;
  Json rows = Json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < table.size(); ++k) row.push_back(table[i][k].distance.to_string());
    rows.push_back(row);
  }
  j["table"] = rows;
  Json cons = Json::array();
  for (const Distance& d : r.consecutive) cons.push_back(d.to_string());
  j["consecutive"] = cons;
  Json stable = Json::array();
  for (std::size_t m = 0; m < r.stable_from.size(); ++m)
    stable.push_back({{"m", m + 1}, {"from", r.stable_from[m] ? Json(*r.stable_from[m]) : Json(nullptr)}});
  j["stable_from"] = stable;
  return j;
}

} // namespace minspace
