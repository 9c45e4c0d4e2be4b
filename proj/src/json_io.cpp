#include "kcomm/json_io.hpp"

#include <set>

namespace kcomm {

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, std::string("malformed JSON: ") + e.what());
  }
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

long integer_field(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) throw Error(Errc::Parse, "'" + key + "' must be an integer");
  return v.get<long>();
}

template <class F>
F scalar_from(const RingCtx<F>& ctx, const Json& v) {
  if (!v.is_string()) throw Error(Errc::Parse, "scalars must be JSON strings");
  return ctx.parse(v.get<std::string>());
}

template <class F>
std::vector<F> scalars_from(const RingCtx<F>& ctx, const Json& v) {
  if (!v.is_array()) throw Error(Errc::Parse, "expected an array of scalars");
  std::vector<F> out;
  for (const auto& x : v) out.push_back(scalar_from(ctx, x));
  return out;
}

template <class F>
Json scalars_to(const RingCtx<F>& ctx, const std::vector<F>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(ctx.format(x));
  return out;
}

template <class F>
Json vec_to(const RingCtx<F>& ctx, const Vec<F>& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(ctx.format(v(i)));
  return out;
}

template <class F>
std::vector<Vec<F>> columns_from(const RingCtx<F>& ctx, const Json& v, Index rows) {
  if (!v.is_array()) throw Error(Errc::Parse, "expected an array of columns");
  std::vector<Vec<F>> out;
  for (const auto& c : v) {
    auto xs = scalars_from(ctx, c);
    if (static_cast<Index>(xs.size()) != rows) throw Error(Errc::Parse, "coupling column height differs from n");
    Vec<F> col(rows);
    for (Index i = 0; i < rows; ++i) col(i) = xs[static_cast<std::size_t>(i)];
    out.push_back(col);
  }
  return out;
}

const std::set<std::string> kChildKeys{"of", "by", "from", "to", "j", "tail", "m3"};
const std::set<std::string> kIntegerKeys{"n", "exp", "offset", "split"};

}  // namespace

template <class F>
Json seq_to_json(const RingCtx<F>& ctx, const PeriodicSeq<F>& s) {
  return Json{{"prefix", scalars_to(ctx, s.prefix)}, {"period", scalars_to(ctx, s.period)}};
}

template <class F>
PeriodicSeq<F> seq_from_json(const RingCtx<F>& ctx, const Json& j) {
  auto pre = j.contains("prefix") ? scalars_from(ctx, j.at("prefix")) : std::vector<F>{};
  auto per = scalars_from(ctx, field(j, "period"));
  if (per.empty()) throw Error(Errc::Parse, "period must be nonempty");
  return PeriodicSeq<F>(std::move(pre), std::move(per));
}

template <class F>
Json rows_to_json(const RingCtx<F>& ctx, const Mat<F>& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(ctx.format(m(i, j)));
    out.push_back(row);
  }
  return out;
}

template <class F>
Mat<F> rows_from_json(const RingCtx<F>& ctx, const Json& j, Index cols) {
  if (!j.is_array()) throw Error(Errc::Parse, "'rows' must be an array");
  const Index n = static_cast<Index>(j.size());
  if (n > 0) cols = static_cast<Index>(j.at(0).is_array() ? j.at(0).size() : 0);
  Mat<F> out = zeros(ctx, n, cols);
  for (Index i = 0; i < n; ++i) {
    auto xs = scalars_from(ctx, j.at(static_cast<std::size_t>(i)));
    if (static_cast<Index>(xs.size()) != cols) throw Error(Errc::Parse, "ragged matrix rows");
    for (Index c = 0; c < cols; ++c) out(i, c) = xs[static_cast<std::size_t>(c)];
  }
  return out;
}

template <class F>
Json dense_to_json(const RingCtx<F>& ctx, const Mat<F>& m) {
  return Json{{"kind", "dense"}, {"n", m.rows()}, {"rows", rows_to_json(ctx, m)}};
}

template <class F>
Mat<F> dense_from_json(const RingCtx<F>& ctx, const Json& j) {
  if (!j.is_object()) throw Error(Errc::Parse, "matrix must be a JSON object");
  if (j.contains("kind") && j.at("kind") != "dense") throw Error(Errc::Parse, "expected a dense matrix");
  Mat<F> m = rows_from_json(ctx, field(j, "rows"));
  if (m.rows() != m.cols()) throw Error(Errc::Parse, "dense matrix must be square");
  if (j.contains("n") && integer_field(j.at("n"), "n") != m.rows()) {
    throw Error(Errc::Parse, "dense matrix row count differs from n");
  }
  return m;
}

template <class F>
Json oracle_to_json(const Oracle<F>& a) {
  const auto& ctx = a->ctx();
  const NodeFields<F> f = a->fields();
  Json j{{"kind", f.kind}};
  for (const auto& [key, child] : f.children) j[key] = oracle_to_json(child);
  if (!f.list.empty()) {
    Json list = Json::array();
    for (const auto& x : f.list) list.push_back(oracle_to_json(x));
    j["of"] = list;
  }
  for (const auto& [key, v] : f.integers) j[key] = v;
  for (const auto& [key, v] : f.scalars) j[key] = ctx.format(v);
  for (const auto& [key, m] : f.matrices) j[key] = key == "rows" ? rows_to_json(ctx, m) : dense_to_json(ctx, m);
  for (const auto& [key, s] : f.seqs) {
    if (key == "diag") {
      j["diag"] = seq_to_json(ctx, s);
    } else if (key == "band:1") {
      j["superdiag"] = seq_to_json(ctx, s);
    } else {
      Json band = seq_to_json(ctx, s);
      band["offset"] = std::stol(key.substr(5));
      if (!j.contains("bands")) j["bands"] = Json::array();
      j["bands"].push_back(band);
    }
  }
  for (const auto& [key, c] : f.columns) {
    Json pre = Json::array(), per = Json::array();
    for (const auto& v : c.prefix_cols) pre.push_back(vec_to(ctx, v));
    for (const auto& v : c.period_cols) per.push_back(vec_to(ctx, v));
    j[key] = Json{{"prefix_cols", pre}, {"period_cols", per}};
  }
  return j;
}

template <class F>
Oracle<F> oracle_from_json(const RingCtx<F>& ctx, const Json& j) {
  if (!j.is_object()) throw Error(Errc::Parse, "matrix must be a JSON object");
  NodeFields<F> f;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw Error(Errc::Parse, "'kind' must be a string");
    f.kind = j.at("kind").get<std::string>();
  } else if (j.contains("m1")) {
    f.kind = "vk";
  } else {
    throw Error(Errc::Parse, "matrix object is missing 'kind'");
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "kind") continue;
    if (key == "of" && v.is_array()) {
      for (const auto& x : v) f.list.push_back(oracle_from_json(ctx, x));
    } else if (kChildKeys.count(key)) {
      f.children.emplace_back(key, oracle_from_json(ctx, v));
    } else if (kIntegerKeys.count(key)) {
      f.integers.emplace_back(key, integer_field(v, key));
    } else if (key == "factor" || key == "root" || key == "scale") {
      f.scalars.emplace_back(key, scalar_from(ctx, v));
    } else if (key == "rows") {
      f.matrices.emplace_back(key, rows_from_json(ctx, v));
    } else if (key == "m1" || key == "block") {
      f.matrices.emplace_back(key, dense_from_json(ctx, v));
    } else if (key == "diag") {
      f.seqs.emplace_back("diag", seq_from_json(ctx, v));
    } else if (key == "superdiag") {
      f.seqs.emplace_back("band:1", seq_from_json(ctx, v));
    } else if (key == "bands") {
      if (!v.is_array()) throw Error(Errc::Parse, "'bands' must be an array");
      for (const auto& b : v) {
        const long d = integer_field(field(b, "offset"), "offset");
        if (d < 1) throw Error(Errc::Parse, "band offsets must be positive");
        f.seqs.emplace_back("band:" + std::to_string(d), seq_from_json(ctx, b));
      }
    } else if (key == "m2") {
      const Index rows = j.contains("n") ? integer_field(j.at("n"), "n") : 0;
      PeriodicColumns<F> c;
      c.rows = rows;
      if (v.contains("prefix_cols")) c.prefix_cols = columns_from(ctx, v.at("prefix_cols"), rows);
      if (v.contains("period_cols")) c.period_cols = columns_from(ctx, v.at("period_cols"), rows);
      f.columns.emplace_back(key, std::move(c));
    } else {
      throw Error(Errc::Parse, "unknown field '" + key + "' in '" + f.kind + "' matrix");
    }
  }
  return make_node(ctx, f);
}

template <class F>
Json diagseq_to_json(const RingCtx<F>& ctx, const DiagSeq<F>& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms) terms.push_back(seq_to_json(ctx, t));
  return Json{{"terms", terms}};
}

template <class F>
DiagSeq<F> diagseq_from_json(const RingCtx<F>& ctx, const Json& j) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw Error(Errc::Parse, "'terms' must be an array");
  DiagSeq<F> out;
  for (const auto& t : terms) out.terms.push_back(seq_from_json(ctx, t));
  return out;
}

template <class F>
Json vk_to_json(const RingCtx<F>& ctx, const VKMat<F>& m) {
  return oracle_to_json(m.oracle(ctx));
}

template <class F>
VKMat<F> vk_from_json(const RingCtx<F>& ctx, const Json& j) {
  if (!j.is_object()) throw Error(Errc::Parse, "VK matrix must be a JSON object");
  if (j.contains("kind") && j.at("kind") != "vk") throw Error(Errc::Parse, "expected a 'vk' matrix");
  VKMat<F> m;
  m.m1 = dense_from_json(ctx, field(j, "m1"));
  const Index n = m.m1.rows();
  if (j.contains("n") && integer_field(j.at("n"), "n") != n) throw Error(Errc::Parse, "vk corner size differs from n");
  const Json& cols = field(j, "m2");
  m.m2.rows = n;
  if (cols.contains("prefix_cols")) m.m2.prefix_cols = columns_from(ctx, cols.at("prefix_cols"), n);
  if (cols.contains("period_cols")) m.m2.period_cols = columns_from(ctx, cols.at("period_cols"), n);
  m.m3 = oracle_from_json(ctx, field(j, "m3"));
  if (m.m3->corner() != 0) throw Error(Errc::Parse, "'m3' must be upper triangular");
  return m;
}

template <class F>
Json certificate_to_json(const Certificate<F>& c) {
  Json gens = Json::object();
  for (std::size_t i = 0; i < c.generators.size(); ++i) gens[c.names[i]] = oracle_to_json(c.generators[i]);
  Json word = Json::array();
  for (const auto& t : c.word) {
    word.push_back(Json{{"x", {{"gen", c.names.at(t.x)}, {"exp", t.xexp}}},
                        {"y", {{"gen", c.names.at(t.y)}, {"exp", t.yexp}}}});
  }
  Json j{{"k", c.k()},
         {"ring", c.ctx.spec().str()},
         {"generators", gens},
         {"word", word},
         {"producer", producer_tag(c.producer)},
         {"claimed_length", c.claimed_length}};
  if (c.size) j["size"] = *c.size;
  if (c.exceeds_bound) j["exceeds_bound"] = true;
  return j;
}

CertificateHeader certificate_header(const Json& j) {
  const Json& ring = field(j, "ring");
  if (!ring.is_string()) throw Error(Errc::Parse, "'ring' must be a string");
  const long k = integer_field(field(j, "k"), "k");
  if (k < 2) throw Error(Errc::Parse, "'k' must be at least 2");
  return {RingSpec::parse(ring.get<std::string>()), static_cast<unsigned>(k)};
}

template <class F>
Certificate<F> certificate_from_json(const RingCtx<F>& ctx, const Json& j) {
  const auto header = certificate_header(j);
  if (!(header.ring == ctx.spec()) || header.k != ctx.k()) throw Error(Errc::Parse, "certificate ring differs from context");
  Certificate<F> c;
  c.ctx = ctx;
  const Json& gens = field(j, "generators");
  if (!gens.is_object()) throw Error(Errc::Parse, "'generators' must be an object");
  std::map<std::string, std::size_t> index;
  for (const auto& [name, g] : gens.items()) {
    index[name] = c.names.size();
    c.names.push_back(name);
    c.generators.push_back(oracle_from_json(ctx, g));
  }
  auto ref = [&](const Json& side) -> std::pair<std::size_t, long> {
    const Json& gen = field(side, "gen");
    if (!gen.is_string() || !index.count(gen.get<std::string>())) {
      throw Error(Errc::Parse, "word references an unknown generator");
    }
    return {index.at(gen.get<std::string>()), integer_field(field(side, "exp"), "exp")};
  };
  const Json& word = field(j, "word");
  if (!word.is_array()) throw Error(Errc::Parse, "'word' must be an array");
  for (const auto& t : word) {
    auto [x, xe] = ref(field(t, "x"));
    auto [y, ye] = ref(field(t, "y"));
    c.word.push_back({x, xe, y, ye});
  }
  const Json& producer = field(j, "producer");
  if (!producer.is_string()) throw Error(Errc::Parse, "'producer' must be a string");
  c.producer = parse_producer(producer.get<std::string>());
  const long claimed = integer_field(field(j, "claimed_length"), "claimed_length");
  if (claimed < 0) throw Error(Errc::Parse, "'claimed_length' must be nonnegative");
  c.claimed_length = static_cast<std::size_t>(claimed);
  if (j.contains("size")) {
    const long s = integer_field(j.at("size"), "size");
    if (s < 0) throw Error(Errc::Parse, "'size' must be nonnegative");
    c.size = static_cast<std::size_t>(s);
  }
  if (j.contains("exceeds_bound")) {
    if (!j.at("exceeds_bound").is_boolean()) throw Error(Errc::Parse, "'exceeds_bound' must be a boolean");
    c.exceeds_bound = j.at("exceeds_bound").get<bool>();
  }
  return c;
}

#define KCOMM_INSTANTIATE_JSON(F)                                                        \
  template Json seq_to_json(const RingCtx<F>&, const PeriodicSeq<F>&);                   \
  template PeriodicSeq<F> seq_from_json(const RingCtx<F>&, const Json&);                 \
  template Json rows_to_json(const RingCtx<F>&, const Mat<F>&);                          \
  template Mat<F> rows_from_json(const RingCtx<F>&, const Json&, Index);                 \
  template Json dense_to_json(const RingCtx<F>&, const Mat<F>&);                         \
  template Mat<F> dense_from_json(const RingCtx<F>&, const Json&);                       \
  template Json oracle_to_json(const Oracle<F>&);                                        \
  template Oracle<F> oracle_from_json(const RingCtx<F>&, const Json&);                   \
  template Json diagseq_to_json(const RingCtx<F>&, const DiagSeq<F>&);                   \
  template DiagSeq<F> diagseq_from_json(const RingCtx<F>&, const Json&);                 \
  template Json vk_to_json(const RingCtx<F>&, const VKMat<F>&);                          \
  template VKMat<F> vk_from_json(const RingCtx<F>&, const Json&);                        \
  template Json certificate_to_json(const Certificate<F>&);                              \
  template Certificate<F> certificate_from_json(const RingCtx<F>&, const Json&);

KCOMM_INSTANTIATE_JSON(Rational)
KCOMM_INSTANTIATE_JSON(PrimeField)
KCOMM_INSTANTIATE_JSON(Cyclotomic)

}  // namespace kcomm
