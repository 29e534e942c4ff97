#include "latkit/json_io.hpp"

#include "latkit/errors.hpp"

namespace latkit {

namespace {

const Int kSafeMax = Int("9007199254740991");

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string str_field(const Json& j, const char* key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

int small_int(const Json& j, const std::string& path) {
  Int x = int_from_json(j, path);
  if (!x.fits_sint_p()) fail(path, "integer out of range");
  return static_cast<int>(x.get_si());
}

std::vector<std::size_t> index_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of indices");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    int x = small_int(j[k], path + "/" + std::to_string(k));
    if (x < 0) fail(path, "negative index");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

std::vector<IntMatrix> matrix_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of matrices");
  std::vector<IntMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(matrix_from_json(j[k], path + "/" + std::to_string(k)));
  return out;
}

Json matrix_list_json(const std::vector<IntMatrix>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(matrix_to_json(m));
  return a;
}

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

std::vector<int> component_orders(const DynkinType& t) {
  std::vector<int> out;
  for (const auto& c : build_factor(t).components) out.push_back(c.order);
  return out;
}

}  // namespace

Json int_to_json(const Int& x) {
  if (abs(x) <= kSafeMax) return Json(static_cast<long long>(x.get_si()));
  return Json(x.get_str());
}

Int int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(std::to_string(j.get<unsigned long long>()))
                                                           : Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Int x;
    if (s.empty() || x.set_str(s, 10) != 0) fail(path, "not a decimal integer: '" + s + "'");
    return x;
  }
  fail(path, "expected an integer");
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m(r, c)));
    rows.push_back(row);
  }
  if (m.rows() == 0) return Json{{"rows", 0}, {"cols", m.cols()}};
  return rows;
}

IntMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (j.is_object()) {
    // empty matrix with its width
    int r = small_int(field(j, "rows", path), path + "/rows"), c = small_int(field(j, "cols", path), path + "/cols");
    if (r != 0 || c < 0) fail(path, "only empty matrices use the object form");
    return IntMatrix(0, static_cast<std::size_t>(c));
  }
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  IntMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) fail(rp, "rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = int_from_json(j[r][c], rp + "/" + std::to_string(c));
  }
  return m;
}

Json invariants_to_json(const AbelianInvariants& a) {
  Json f = Json::array();
  for (const auto& x : a.factors) f.push_back(int_to_json(x));
  return Json{{"factors", f}, {"free_rank", a.free_rank}};
}

AbelianInvariants invariants_from_json(const Json& j, const std::string& path) {
  AbelianInvariants a;
  const Json& f = field(j, "factors", path);
  if (!f.is_array()) fail(path + "/factors", "expected an array");
  for (std::size_t k = 0; k < f.size(); ++k) a.factors.push_back(int_from_json(f[k], path + "/factors/" + std::to_string(k)));
  int fr = small_int(field(j, "free_rank", path), path + "/free_rank");
  if (fr < 0) fail(path + "/free_rank", "negative");
  a.free_rank = static_cast<std::size_t>(fr);
  return a;
}

LatticeSpec spec_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected an object");
  if (j.contains("group")) {
    const std::string name = str_field(j, "group", "");
    const int param = small_int(field(j, "param", ""), "/param");
    return spec_of(char_lattice(parse_char_group(name), param));
  }
  const Json& fs = field(j, "factors", "");
  if (!fs.is_array() || fs.empty()) fail("/factors", "expected a nonempty array");
  LatticeSpec s;
  std::vector<std::vector<int>> orders;
  std::size_t width = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string p = "/factors/" + std::to_string(i);
    const Family fam = parse_family(str_field(fs[i], "family", p));
    int n = 2;
    if (fs[i].contains("n")) n = small_int(fs[i]["n"], p + "/n");
    else if (fam != Family::G2) fail(p, "missing field 'n'");
    s.factors.push_back(DynkinType::make(fam, n));
    orders.push_back(component_orders(s.factors.back()));
    width += orders.back().size();
  }
  if (!j.contains("subgroup")) return s;
  const Json& sg = j["subgroup"];
  if (!sg.is_array()) fail("/subgroup", "expected an array of residue tuples");
  for (std::size_t k = 0; k < sg.size(); ++k) {
    const std::string p = "/subgroup/" + std::to_string(k);
    const Json& g = sg[k];
    if (!g.is_array()) fail(p, "expected an array");
    auto per_factor = [&]() {
      // one entry per factor: an integer, or an array over the factor's F components
      IntVec flat;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string q = p + "/" + std::to_string(i);
        const auto& ord = orders[i];
        if (g[i].is_array()) {
          if (g[i].size() != ord.size())
            fail(q, s.factors[i].name() + " takes " + std::to_string(ord.size()) + " residues");
          for (std::size_t c = 0; c < ord.size(); ++c) flat.push_back(int_from_json(g[i][c], q + "/" + std::to_string(c)));
        } else if (ord.size() == 1) {
          flat.push_back(int_from_json(g[i], q));
        } else if (ord.empty()) {
          if (int_from_json(g[i], q) != 0) fail(q, s.factors[i].name() + " has trivial fundamental group");
        } else {
          fail(q, s.factors[i].name() + " needs an array of " + std::to_string(ord.size()) + " residues");
        }
      }
      return flat;
    };
    auto flat_tuple = [&]() {
      IntVec flat;
      for (std::size_t c = 0; c < width; ++c) flat.push_back(int_from_json(g[c], p + "/" + std::to_string(c)));
      return flat;
    };
    IntVec flat;
    if (g.size() == s.factors.size() && g.size() == width) {
      // both readings have the right length; the flat one only applies to plain integers
      try {
        flat = per_factor();
      } catch (const Error&) {
        flat = flat_tuple();
      }
    } else if (g.size() == s.factors.size()) {
      flat = per_factor();
    } else if (g.size() == width) {
      flat = flat_tuple();
    } else {
      fail(p, "expected " + std::to_string(s.factors.size()) + " per-factor residues");
    }
    // reduce modulo the component orders
    std::size_t pos = 0;
    for (const auto& ord : orders)
      for (int o : ord) {
        Int r = flat[pos] % o;
        if (r < 0) r += o;
        flat[pos++] = r;
      }
    s.S.push_back(flat);
  }
  return s;
}

Json spec_to_json(const LatticeSpec& s) {
  Json fs = Json::array();
  std::vector<std::vector<int>> orders;
  for (const auto& t : s.factors) {
    fs.push_back(Json{{"family", family_name(t.family)}, {"n", t.n}});
    orders.push_back(component_orders(t));
  }
  Json sg = Json::array();
  for (const auto& r : s.S) {
    Json g = Json::array();
    std::size_t pos = 0;
    for (const auto& ord : orders) {
      if (ord.size() == 1) {
        g.push_back(int_to_json(r[pos]));
      } else {
        Json a = Json::array();
        for (std::size_t c = 0; c < ord.size(); ++c) a.push_back(int_to_json(r[pos + c]));
        g.push_back(a);
      }
      pos += ord.size();
    }
    sg.push_back(g);
  }
  return Json{{"factors", fs}, {"subgroup", sg}};
}

Json resolution_to_json(const PositiveResolution& r) {
  return Json{{"method", r.method},
              {"shape", shape_name(r.shape)},
              {"left", matrix_list_json(r.seq.left.generator_actions())},
              {"mid", matrix_list_json(r.seq.mid.generator_actions())},
              {"right", matrix_list_json(r.seq.right.generator_actions())},
              {"iota", matrix_to_json(r.seq.iota)},
              {"pi", matrix_to_json(r.seq.pi)},
              {"mid_basis", matrix_to_json(r.mid_basis)},
              {"outer_basis", matrix_to_json(r.outer_basis)}};
}

PositiveResolution resolution_from_json(const Json& j, const IntermediateLattice& block, std::size_t cap,
                                        const std::string& path) {
  PositiveResolution r;
  r.method = str_field(j, "method", path);
  const std::string shape = str_field(j, "shape", path);
  if (shape == shape_name(ResolutionShape::Left)) r.shape = ResolutionShape::Left;
  else if (shape == shape_name(ResolutionShape::Right)) r.shape = ResolutionShape::Right;
  else fail(path + "/shape", "unknown shape '" + shape + "'");
  GroupPtr g = block.lattice(cap).group_ptr();
  auto term = [&](const char* key) {
    const std::string p = path + "/" + key;
    auto ms = matrix_list(field(j, key, path), p);
    if (ms.size() != g->generators().size()) fail(p, "one matrix per Weyl generator expected");
    try {
      return GLattice(g, ms);
    } catch (const Error& e) {
      fail(p, e.what());
    }
  };
  r.seq.left = term("left");
  r.seq.mid = term("mid");
  r.seq.right = term("right");
  r.seq.iota = matrix_from_json(field(j, "iota", path), path + "/iota");
  r.seq.pi = matrix_from_json(field(j, "pi", path), path + "/pi");
  r.mid_basis = matrix_from_json(field(j, "mid_basis", path), path + "/mid_basis");
  r.outer_basis = matrix_from_json(field(j, "outer_basis", path), path + "/outer_basis");
  return r;
}

Json certificate_to_json(const Certificate& c) {
  Json j{{"kind", cert_kind_name(c.kind)}, {"machine_verified", c.machine_verified()}, {"lattice", spec_to_json(c.lattice)}};
  switch (c.kind) {
    case CertKind::PositiveDecomposition: {
      Json bs = Json::array();
      for (const auto& b : c.blocks)
        bs.push_back(Json{{"kind", b.kind == BlockKind::So4Pair ? "so4_pair" : "simple"},
                          {"indices", b.indices},
                          {"resolution", resolution_to_json(b.resolution)}});
      j["blocks"] = bs;
      break;
    }
    case CertKind::NegativeSha: {
      j["witness"] = c.witness;
      j["subgroup"] = matrix_list_json(c.subgroup);
      j["words"] = c.words;
      j["sha2"] = invariants_to_json(c.sha2);
      break;
    }
    case CertKind::NegativeByReduction:
      j["step"] = c.step;
      j["subset"] = c.subset;
      j["child"] = c.child ? certificate_to_json(*c.child) : Json();
      break;
    case CertKind::CitedLeaf: j["reason"] = c.reason; break;
  }
  j["notes"] = strings(c.notes);
  return j;
}

Certificate certificate_from_json(const Json& j, const ClassifyOptions& opt, const std::string& path) {
  Certificate c;
  const std::string kind = str_field(j, "kind", path);
  bool known = false;
  for (CertKind k : {CertKind::PositiveDecomposition, CertKind::NegativeSha, CertKind::NegativeByReduction,
                     CertKind::CitedLeaf})
    if (kind == cert_kind_name(k)) {
      c.kind = k;
      known = true;
    }
  if (!known) fail(path + "/kind", "unknown certificate kind '" + kind + "'");
  try {
    c.lattice = spec_from_json(field(j, "lattice", path));
  } catch (const Error& e) {
    fail(path + "/lattice", e.what());
  }
  switch (c.kind) {
    case CertKind::PositiveDecomposition: {
      const Json& bs = field(j, "blocks", path);
      if (!bs.is_array()) fail(path + "/blocks", "expected an array");
      IntermediateLattice l = c.lattice.build();
      for (std::size_t k = 0; k < bs.size(); ++k) {
        const std::string p = path + "/blocks/" + std::to_string(k);
        BlockCert b;
        const std::string bk = str_field(bs[k], "kind", p);
        if (bk == "so4_pair") b.kind = BlockKind::So4Pair;
        else if (bk == "simple") b.kind = BlockKind::Simple;
        else fail(p + "/kind", "unknown block kind '" + bk + "'");
        b.indices = index_list(field(bs[k], "indices", p), p + "/indices");
        for (std::size_t i : b.indices)
          if (i >= l.factors.size()) fail(p + "/indices", "factor index out of range");
        IntermediateLattice sub = sublattice(l, b.indices);
        b.resolution = resolution_from_json(field(bs[k], "resolution", p), sub, opt.max_group_order, p + "/resolution");
        c.blocks.push_back(std::move(b));
      }
      break;
    }
    case CertKind::NegativeSha: {
      c.witness = str_field(j, "witness", path);
      c.subgroup = matrix_list(field(j, "subgroup", path), path + "/subgroup");
      const Json& ws = field(j, "words", path);
      if (!ws.is_array()) fail(path + "/words", "expected an array");
      for (std::size_t k = 0; k < ws.size(); ++k) {
        std::vector<int> w;
        for (std::size_t idx : index_list(ws[k], path + "/words/" + std::to_string(k))) w.push_back(static_cast<int>(idx));
        c.words.push_back(w);
      }
      c.sha2 = invariants_from_json(field(j, "sha2", path), path + "/sha2");
      break;
    }
    case CertKind::NegativeByReduction:
      c.step = str_field(j, "step", path);
      c.subset = index_list(field(j, "subset", path), path + "/subset");
      c.child = std::make_shared<Certificate>(certificate_from_json(field(j, "child", path), opt, path + "/child"));
      break;
    case CertKind::CitedLeaf: c.reason = str_field(j, "reason", path); break;
  }
  if (j.contains("notes")) {
    if (!j["notes"].is_array()) fail(path + "/notes", "expected an array of strings");
    for (const auto& n : j["notes"]) {
      if (!n.is_string()) fail(path + "/notes", "expected an array of strings");
      c.notes.push_back(n.get<std::string>());
    }
  }
  return c;
}

Json verdict_to_json(const Verdict& v) {
  Json blocks = Json::array();
  for (const auto& b : v.certificate.blocks)
    blocks.push_back(Json{{"kind", b.kind == BlockKind::So4Pair ? "so4_pair" : "simple"}, {"indices", b.indices}});
  return Json{{"input", spec_to_json(v.input)},
              {"status", v.quasi_permutation ? "quasi_permutation" : "not_quasi_permutation"},
              {"blocks", blocks},
              {"machine_verified", v.certificate.machine_verified()},
              {"certificate", certificate_to_json(v.certificate)}};
}

Verdict verdict_from_json(const Json& j, const ClassifyOptions& opt) {
  Verdict v;
  v.input = spec_from_json(field(j, "input", ""));
  const std::string status = str_field(j, "status", "");
  if (status == "quasi_permutation") v.quasi_permutation = true;
  else if (status == "not_quasi_permutation") v.quasi_permutation = false;
  else fail("/status", "unknown status '" + status + "'");
  v.certificate = certificate_from_json(field(j, "certificate", ""), opt, "/certificate");
  return v;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // byte offset to line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::InvalidInput,
                "JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

}  // namespace latkit
