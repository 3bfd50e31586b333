#include "twb/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace twb {

using nlohmann::json;

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& need(const json& obj, const std::string& key, const std::string& loc) {
  if (!obj.is_object()) throw ParseError(loc, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(loc, "missing key '" + key + "'");
  return *it;
}

long long need_int(const json& obj, const std::string& key, const std::string& loc, long long lo = 0,
                   long long hi = 64) {
  const json& v = need(obj, key, loc);
  if (!v.is_number_integer()) throw ParseError(at(loc, key), "expected an integer");
  long long x = v.get<long long>();
  if (x < lo || x > hi)
    throw ParseError(at(loc, key), "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]");
  return x;
}

Scalar scalar_of(const json& v, const std::string& loc) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (!v.is_string()) throw ParseError(loc, "rationals must be strings \"p/q\" or integers");
  try {
    return parse_scalar(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(loc, e.what());
  }
}

SparseMatrix matrix_of(const json& v, std::size_t rows, std::size_t cols, const std::string& loc) {
  SparseMatrix m(rows, cols);
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> by_col(cols);
  if (v.is_array()) {  // dense rows
    if (v.size() != rows)
      throw ParseError(loc, "expected " + std::to_string(rows) + " rows, found " + std::to_string(v.size()));
    for (std::size_t i = 0; i < rows; ++i) {
      const json& row = v[i];
      if (!row.is_array() || row.size() != cols)
        throw ParseError(at(loc, i), "expected a row of " + std::to_string(cols) + " entries");
      for (std::size_t j = 0; j < cols; ++j) {
        Scalar x = scalar_of(row[j], at(at(loc, i), j));
        if (x != 0) by_col[j].emplace_back(static_cast<std::uint32_t>(i), x);
      }
    }
  } else if (v.is_object()) {
    long long r = need_int(v, "rows", loc, 0, 1LL << 31), c = need_int(v, "cols", loc, 0, 1LL << 31);
    if (static_cast<std::size_t>(r) != rows || static_cast<std::size_t>(c) != cols)
      throw ParseError(loc, "expected shape " + std::to_string(rows) + "x" + std::to_string(cols) + ", found " +
                                std::to_string(r) + "x" + std::to_string(c));
    const json& es = need(v, "entries", loc);
    if (!es.is_array()) throw ParseError(at(loc, "entries"), "expected an array");
    for (std::size_t k = 0; k < es.size(); ++k) {
      std::string el = at(at(loc, "entries"), k);
      const json& e = es[k];
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ParseError(el, "expected [row, col, \"p/q\"]");
      long long i = e[0].get<long long>(), j = e[1].get<long long>();
      if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= rows || static_cast<std::size_t>(j) >= cols)
        throw ParseError(el, "entry index out of range");
      Scalar x = scalar_of(e[2], at(el, 2));
      for (const auto& [ri, rv] : by_col[j])
        if (ri == i) throw ParseError(el, "duplicate entry");
      if (x != 0) by_col[j].emplace_back(static_cast<std::uint32_t>(i), x);
    }
  } else {
    throw ParseError(loc, "expected a matrix (dense rows or {rows, cols, entries})");
  }
  for (std::size_t j = 0; j < cols; ++j) m.set_col(j, sparse_from_unsorted(std::move(by_col[j])));
  return m;
}

json matrix_json(const SparseMatrix& m) {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::string>> es;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, x] : m.col(j)) es.emplace_back(i, static_cast<std::uint32_t>(j), format_scalar(x));
  std::sort(es.begin(), es.end());
  json e = json::array();
  for (auto& [i, j, x] : es) e.push_back(json::array({i, j, x}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

SymRep rep_of(const json& lv, std::vector<int> young, std::size_t dim, const std::string& loc) {
  int letters = 0;
  for (int c : young) letters += c;
  std::vector<int> boundary(letters > 0 ? letters - 1 : 0, 0);
  for (int acc = 0, b = 0; b + 1 < static_cast<int>(young.size()); ++b) {
    acc += young[b];
    if (acc >= 1 && acc - 1 < static_cast<int>(boundary.size())) boundary[acc - 1] = 1;
  }
  std::vector<SparseMatrix> gens(boundary.size(), SparseMatrix::identity(dim));
  auto it = lv.find("generators");
  if (it == lv.end()) {
    bool needed = false;
    for (int b : boundary) needed |= !b;
    if (needed && dim > 0) throw ParseError(loc, "missing key 'generators'");
  } else {
    std::string gl = at(loc, "generators");
    if (!it->is_array() || it->size() != boundary.size())
      throw ParseError(gl, "expected " + std::to_string(boundary.size()) + " generator matrices");
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const json& g = (*it)[i];
      if (boundary[i]) {
        if (!g.is_null()) throw ParseError(at(gl, i), "the transposition across the wall must be null");
        continue;
      }
      gens[i] = matrix_of(g, dim, dim, at(gl, i));
    }
  }
  try {
    return SymRep(young, dim, gens);
  } catch (const std::exception& e) {
    throw ParseError(at(loc, "generators"), e.what());
  }
}

json rep_json(const SymRep& r) {
  json gens = json::array();
  for (int i = 0; i + 1 < r.letters(); ++i) gens.push_back(r.allowed(i) ? matrix_json(r.generator(i)) : json(nullptr));
  return gens;
}

SparseVec unit_of(const json& v, std::size_t dim, const std::string& loc) {
  if (!v.is_array() || v.size() != dim)
    throw ParseError(loc, "expected a vector of " + std::to_string(dim) + " rationals");
  SparseVec u;
  for (std::size_t i = 0; i < dim; ++i) {
    Scalar x = scalar_of(v[i], at(loc, i));
    if (x != 0) u.emplace_back(static_cast<std::uint32_t>(i), x);
  }
  return u;
}

json unit_json(const SparseVec& u, std::size_t dim) {
  std::vector<std::string> out(dim, "0");
  for (const auto& [i, x] : u) out[i] = format_scalar(x);
  return out;
}

}  // namespace

OperadDocument parse_operad_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("", "the document must be a JSON object");
  const json& kind = need(root, "kind", "");
  if (!kind.is_string() || (kind != "cyclic" && kind != "dioperad"))
    throw ParseError("/kind", "expected \"cyclic\" or \"dioperad\"");
  OperadDocument doc;
  doc.kind = kind == "cyclic" ? OperadKind::cyclic : OperadKind::dioperad;
  int N = static_cast<int>(need_int(root, "truncation", "", 0, 32));
  const json& levels = need(root, "levels", "");
  if (!levels.is_array()) throw ParseError("/levels", "expected an array");
  const bool cyc = doc.kind == OperadKind::cyclic;
  if (cyc)
    doc.cyclic = zero_cyclic(N);
  else
    doc.dioperad = zero_dioperad(N);

  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::string loc = at("/levels", k);
    const json& lv = levels[k];
    std::size_t dim = static_cast<std::size_t>(need_int(lv, "dim", loc, 0, 1LL << 24));
    if (cyc) {
      int n = static_cast<int>(need_int(lv, "size", loc, 0, N));
      if (doc.cyclic.underlying.has_level(n)) throw ParseError(loc, "duplicate level " + std::to_string(n));
      if (dim) doc.cyclic.underlying.set_level(n, rep_of(lv, {n}, dim, loc));
    } else {
      int m = static_cast<int>(need_int(lv, "inputs", loc, 0, N));
      int n = static_cast<int>(need_int(lv, "outputs", loc, 0, N));
      if (m + n > N) throw ParseError(loc, "level beyond the truncation");
      if (doc.dioperad.underlying.has_level(m, n)) throw ParseError(loc, "duplicate level");
      if (dim) doc.dioperad.underlying.set_level(m, n, rep_of(lv, {m, n}, dim, loc));
    }
  }

  if (auto it = root.find("mu"); it != root.end()) {
    if (!it->is_array()) throw ParseError("/mu", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      std::string loc = at("/mu", k);
      const json& e = (*it)[k];
      const json& key = need(e, "key", loc);
      std::size_t want = cyc ? 2 : 4;
      if (!key.is_array() || key.size() != want)
        throw ParseError(at(loc, "key"), "expected " + std::to_string(want) + " integers");
      std::vector<int> kv;
      for (const auto& x : key) {
        if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > N)
          throw ParseError(at(loc, "key"), "key entries must be integers in [0, truncation]");
        kv.push_back(x.get<int>());
      }
      std::size_t rows, cols;
      if (cyc) {
        int p = kv[0], q = kv[1];
        if (p < 1 || q < 1 || p + q - 2 > N) throw ParseError(at(loc, "key"), "component out of range");
        if (doc.cyclic.mu.count({p, q})) throw ParseError(at(loc, "key"), "duplicate component");
        rows = doc.cyclic.dim(p + q - 2);
        cols = doc.cyclic.dim(p) * doc.cyclic.dim(q);
        doc.cyclic.mu[{p, q}] = matrix_of(need(e, "matrix", loc), rows, cols, at(loc, "matrix"));
      } else {
        int m1 = kv[0], n1 = kv[1], m2 = kv[2], n2 = kv[3];
        if (m1 < 1 || n2 < 1 || m1 - 1 + m2 + n1 + n2 - 1 > N)
          throw ParseError(at(loc, "key"), "component out of range");
        std::array<int, 4> a{m1, n1, m2, n2};
        if (doc.dioperad.mu.count(a)) throw ParseError(at(loc, "key"), "duplicate component");
        rows = doc.dioperad.dim(m1 - 1 + m2, n1 + n2 - 1);
        cols = doc.dioperad.dim(m1, n1) * doc.dioperad.dim(m2, n2);
        doc.dioperad.mu[a] = matrix_of(need(e, "matrix", loc), rows, cols, at(loc, "matrix"));
      }
    }
  }

  if (auto it = root.find("unit"); it != root.end() && !it->is_null()) {
    if (cyc)
      doc.cyclic.unit = unit_of(*it, doc.cyclic.dim(2), "/unit");
    else
      doc.dioperad.unit = unit_of(*it, doc.dioperad.dim(1, 1), "/unit");
  }
  return doc;
}

OperadDocument load_operad_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_operad_document(ss.str());
}

std::string serialize_operad_document(const OperadDocument& doc) {
  json root;
  json levels = json::array(), mu = json::array();
  if (doc.kind == OperadKind::cyclic) {
    const auto& c = doc.cyclic;
    root["kind"] = "cyclic";
    root["truncation"] = c.truncation;
    for (const auto& [n, r] : c.underlying.levels())
      if (r.dim()) levels.push_back({{"size", n}, {"dim", r.dim()}, {"generators", rep_json(r)}});
    for (const auto& [k, m] : c.mu)
      if (!m.is_zero()) mu.push_back({{"key", {k.first, k.second}}, {"matrix", matrix_json(m)}});
    root["unit"] = c.unit ? unit_json(*c.unit, c.dim(2)) : json(nullptr);
  } else {
    const auto& d = doc.dioperad;
    root["kind"] = "dioperad";
    root["truncation"] = d.truncation;
    for (const auto& [k, r] : d.underlying.levels())
      if (r.dim())
        levels.push_back({{"inputs", k.first}, {"outputs", k.second}, {"dim", r.dim()}, {"generators", rep_json(r)}});
    for (const auto& [k, m] : d.mu)
      if (!m.is_zero()) mu.push_back({{"key", {k[0], k[1], k[2], k[3]}}, {"matrix", matrix_json(m)}});
    root["unit"] = d.unit ? unit_json(*d.unit, d.dim(1, 1)) : json(nullptr);
  }
  root["levels"] = levels;
  root["mu"] = mu;
  return root.dump(2) + "\n";
}

OperadDocument make_document(const CyclicOperadData& c) {
  OperadDocument d;
  d.kind = OperadKind::cyclic;
  d.cyclic = c;
  return d;
}

OperadDocument make_document(const DioperadData& x) {
  OperadDocument d;
  d.kind = OperadKind::dioperad;
  d.dioperad = x;
  return d;
}

std::string level_label(Level l, bool walled) {
  return walled ? std::to_string(l.first) + ":" + std::to_string(l.second) : std::to_string(l.first);
}

std::string homology_csv(const std::vector<HomologyTable>& tables, bool walled) {
  std::ostringstream os;
  os << "external,internal,dimension,certified\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows)
      os << level_label(r.external, walled) << "," << level_label(r.internal, walled) << "," << r.dim << ","
         << (r.certified ? "true" : "false") << "\n";
  return os.str();
}

std::string homology_json(const std::vector<HomologyTable>& tables, bool walled, const std::string& command) {
  json rows = json::array();
  for (const auto& t : tables)
    for (const auto& r : t.rows)
      rows.push_back({{"external", level_label(r.external, walled)},
                      {"internal", level_label(r.internal, walled)},
                      {"dimension", r.dim},
                      {"chain_dimension", r.chain_dim},
                      {"certified", r.certified}});
  json root{{"command", command}, {"rows", rows}};
  return root.dump(2) + "\n";
}

}  // namespace twb
