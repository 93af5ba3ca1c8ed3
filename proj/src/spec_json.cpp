#include "greedylab/spec_json.hpp"

#include <cstdio>

namespace greedylab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ContractError((path.empty() ? "/" : path) + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string str(double v) { return format_real(v); }

Json coeff_to_json(const CoeffRule& c) {
  if (c.kind() == CoeffRule::Kind::kPower) return {{"rule", "power"}, {"exponent", str(c.exponent())}};
  Json vals = Json::array();
  for (double v : c.values()) vals.push_back(str(v));
  return {{"rule", "tabulated"}, {"first", index_to_string(c.first())}, {"values", vals}};
}

CoeffRule coeff_from_json(const Json& j, const std::string& path) {
  const Json& rule = field(j, "rule", path);
  if (rule == "power") return CoeffRule::power(real_from_json(field(j, "exponent", path), path + "/exponent"));
  if (rule == "tabulated") {
    const Json& vals = field(j, "values", path);
    if (!vals.is_array()) fail(path + "/values", "expected an array");
    std::vector<double> v;
    for (std::size_t i = 0; i < vals.size(); ++i)
      v.push_back(real_from_json(vals[i], path + "/values/" + std::to_string(i)));
    Index first = j.contains("first") ? index_from_json(j["first"], path + "/first") : 1;
    return CoeffRule::tabulated(std::move(v), first);
  }
  fail(path + "/rule", "unknown coefficient rule");
}

}  // namespace

double real_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_real(j.get<std::string>());
    if (j.is_number()) return j.get<double>();
  } catch (const ContractError&) {
  }
  fail(path, "expected a decimal string");
}

Index index_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_index(j.get<std::string>());
    if (j.is_number_unsigned()) return static_cast<Index>(j.get<std::uint64_t>());
  } catch (const ContractError&) {
  } catch (const CapacityError&) {
    fail(path, "index exceeds 2^127-1");
  }
  fail(path, "expected an index string");
}

Json weight_to_json(const Weight& w) {
  switch (w.kind()) {
    case Weight::Kind::kConstant: return {{"kind", "constant"}, {"c", str(w.constant_value())}};
    case Weight::Kind::kFormulaW1: return {{"kind", "formula_w1"}};
    case Weight::Kind::kExplicit: {
      Json vals = Json::array();
      for (double v : w.values()) vals.push_back(str(v));
      return {{"kind", "explicit"},
              {"values", vals},
              {"tail", w.tail() == TailRule::kRepeatLast ? "repeat_last" : "inv_sqrt_decay"}};
    }
    case Weight::Kind::kCombined:
      return {{"kind", "combined"}, {"odd", weight_to_json(w.odd())}, {"even", weight_to_json(w.even())}};
  }
  return {};
}

Weight weight_from_json(const Json& j, const std::string& path) {
  const Json& kind = field(j, "kind", path);
  try {
    if (kind == "constant") return Weight::constant(real_from_json(field(j, "c", path), path + "/c"));
    if (kind == "formula_w1") return Weight::formula_w1();
    if (kind == "explicit") {
      const Json& vals = field(j, "values", path);
      if (!vals.is_array()) fail(path + "/values", "expected an array");
      std::vector<double> v;
      for (std::size_t i = 0; i < vals.size(); ++i)
        v.push_back(real_from_json(vals[i], path + "/values/" + std::to_string(i)));
      std::string tail = j.value("tail", "repeat_last");
      if (tail != "repeat_last" && tail != "inv_sqrt_decay") fail(path + "/tail", "unknown tail rule");
      return Weight::explicit_list(std::move(v),
                                   tail == "repeat_last" ? TailRule::kRepeatLast : TailRule::kInvSqrtDecay);
    }
    if (kind == "combined")
      return Weight::combined(weight_from_json(field(j, "odd", path), path + "/odd"),
                              weight_from_json(field(j, "even", path), path + "/even"));
  } catch (const ContractError& e) {
    std::string m = e.what();
    if (!m.empty() && m[0] == '/') throw;
    fail(path, m);
  }
  fail(path + "/kind", "unknown weight kind");
}

Json norm_to_json(const NormSpec& s) {
  const NormNode& n = s.node();
  Json j = {{"node", node_kind_name(n.kind)}};
  switch (n.kind) {
    case NormNode::Kind::kWeightedLp:
      j["p"] = str(n.p);
      j["weight"] = weight_to_json(*n.weight);
      break;
    case NormNode::Kind::kSup:
      break;
    case NormNode::Kind::kPrefix:
      j["coeff"] = coeff_to_json(*n.coeff);
      break;
    case NormNode::Kind::kInterval: {
      Json iv = Json::array();
      for (const auto& a : n.intervals) iv.push_back({index_to_string(a.lo), index_to_string(a.hi)});
      j["intervals"] = iv;
      j["coeff"] = coeff_to_json(*n.coeff);
      break;
    }
    case NormNode::Kind::kMaxOf: {
      Json ch = Json::array();
      for (const auto& c : n.children) ch.push_back(norm_to_json(NormSpec(c)));
      j["children"] = ch;
      break;
    }
    case NormNode::Kind::kDirectSum:
      j["left"] = norm_to_json(NormSpec(n.children[0]));
      j["right"] = norm_to_json(NormSpec(n.children[1]));
      break;
    case NormNode::Kind::kMajorant:
      j["inner"] = norm_to_json(NormSpec(n.children[0]));
      break;
    case NormNode::Kind::kPermuted: {
      Json pairs = Json::array();
      for (const auto& [a, b] : n.perm.pairs) pairs.push_back({index_to_string(a), index_to_string(b)});
      j["pairs"] = pairs;
      j["inner"] = norm_to_json(NormSpec(n.children[0]));
      break;
    }
  }
  return j;
}

NormSpec norm_from_json(const Json& j, const std::string& path) {
  const Json& node = field(j, "node", path);
  if (!node.is_string()) fail(path + "/node", "expected a string");
  const std::string kind = node.get<std::string>();
  try {
    if (kind == "weighted_lp")
      return NormSpec::weighted_lp(real_from_json(field(j, "p", path), path + "/p"),
                                   weight_from_json(field(j, "weight", path), path + "/weight"));
    if (kind == "sup") return NormSpec::sup();
    if (kind == "prefix") return NormSpec::prefix(coeff_from_json(field(j, "coeff", path), path + "/coeff"));
    if (kind == "interval") {
      const Json& iv = field(j, "intervals", path);
      if (!iv.is_array()) fail(path + "/intervals", "expected an array");
      std::vector<Interval> v;
      for (std::size_t i = 0; i < iv.size(); ++i) {
        std::string p = path + "/intervals/" + std::to_string(i);
        if (!iv[i].is_array() || iv[i].size() != 2) fail(p, "expected [lo, hi]");
        v.push_back({index_from_json(iv[i][0], p + "/0"), index_from_json(iv[i][1], p + "/1")});
      }
      return NormSpec::interval(std::move(v), coeff_from_json(field(j, "coeff", path), path + "/coeff"));
    }
    if (kind == "max_of") {
      const Json& ch = field(j, "children", path);
      if (!ch.is_array()) fail(path + "/children", "expected an array");
      std::vector<NormSpec> c;
      for (std::size_t i = 0; i < ch.size(); ++i)
        c.push_back(norm_from_json(ch[i], path + "/children/" + std::to_string(i)));
      return NormSpec::max_of(c);
    }
    if (kind == "direct_sum")
      return NormSpec::direct_sum(norm_from_json(field(j, "left", path), path + "/left"),
                                  norm_from_json(field(j, "right", path), path + "/right"));
    if (kind == "majorant") return NormSpec::majorant(norm_from_json(field(j, "inner", path), path + "/inner"));
    if (kind == "permuted") {
      const Json& pairs = field(j, "pairs", path);
      if (!pairs.is_array()) fail(path + "/pairs", "expected an array");
      std::vector<std::pair<Index, Index>> v;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::string p = path + "/pairs/" + std::to_string(i);
        if (!pairs[i].is_array() || pairs[i].size() != 2) fail(p, "expected [from, to]");
        v.emplace_back(index_from_json(pairs[i][0], p + "/0"), index_from_json(pairs[i][1], p + "/1"));
      }
      return NormSpec::permuted(norm_from_json(field(j, "inner", path), path + "/inner"),
                                Permutation::from_pairs(std::move(v)));
    }
  } catch (const ContractError& e) {
    std::string m = e.what();
    if (!m.empty() && m[0] == '/') throw;
    fail(path, m);
  }
  fail(path + "/node", "unknown node kind '" + kind + "'");
}

Json norm_document(const NormSpec& s) { return {{"spec_version", kSpecVersion}, {"norm", norm_to_json(s)}}; }

NormSpec norm_from_document(const Json& j) {
  const Json& v = field(j, "spec_version", "");
  if (v != kSpecVersion) fail("/spec_version", "unsupported version");
  return norm_from_json(field(j, "norm", ""), "/norm");
}

Json vector_to_json(const SparseVector& x) {
  Json a = Json::array();
  for (const auto& e : x.entries()) a.push_back({index_to_string(e.index), str(e.value)});
  return a;
}

SparseVector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [index, value]");
  std::vector<Entry> e;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected [index, value]");
    e.push_back({index_from_json(j[i][0], p + "/0"), real_from_json(j[i][1], p + "/1")});
  }
  try {
    return SparseVector(std::move(e));
  } catch (const ContractError& ex) {
    fail(path, ex.what());
  }
}

Json index_set_to_json(const IndexSet& a) {
  Json j = Json::array();
  for (Index n : a) j.push_back(index_to_string(n));
  return j;
}

IndexSet index_set_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of indices");
  std::vector<Index> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(index_from_json(j[i], path + "/" + std::to_string(i)));
  return make_index_set(std::move(v));
}

std::string spec_hash(const NormSpec& s) {
  std::string text = norm_to_json(s).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace greedylab
