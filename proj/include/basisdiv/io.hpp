#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "basisdiv/decomposition.hpp"

namespace basisdiv {

using nlohmann::json;

// ---------------------------------------------------------------------------
// algebra file format
//
// UTF-8 JSON, scalars as strings so exactness survives serialization:
//   {"field": {"type":"Q"} | {"type":"Fp","p":5},
//    "dim": 2,
//    "basis": ["b1","b2"],
//    "products": [{"left":"b2","right":"b2","result":{"b1":"1","b2":"1"}}]}
// Products not listed are zero.
// ---------------------------------------------------------------------------

inline FieldDescriptor field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw Error("field: expected an object with a \"type\" string");
  std::string type = j["type"].get<std::string>();
  if (type == "Q") return FieldDescriptor::rationals();
  if (type == "Fp") {
    if (!j.contains("p") || !j["p"].is_number_unsigned())
      throw Error("field: Fp requires a positive integer \"p\"");
    return FieldDescriptor::prime(j["p"].get<std::uint64_t>());
  }
  throw Error("field: unknown type '" + type + "' (expected \"Q\" or \"Fp\")");
}

inline json field_to_json(const FieldDescriptor& f) {
  if (f.is_rationals()) return json{{"type", "Q"}};
  return json{{"type", "Fp"}, {"p", f.modulus()}};
}

inline AlgebraPresentation algebra_from_json(const json& j) {
  if (!j.is_object()) throw Error("algebra file: top level must be an object");
  for (const char* key : {"field", "dim", "basis", "products"})
    if (!j.contains(key)) throw Error(std::string("algebra file: missing \"") + key + "\"");

  FieldDescriptor field = field_from_json(j["field"]);
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::uint64_t>() < 1)
    throw Error("algebra file: \"dim\" must be a positive integer");
  int dim = static_cast<int>(j["dim"].get<std::uint64_t>());

  if (!j["basis"].is_array() || static_cast<int>(j["basis"].size()) != dim)
    throw Error("algebra file: \"basis\" must list exactly dim labels");
  std::vector<std::string> labels;
  for (const json& l : j["basis"]) {
    if (!l.is_string()) throw Error("algebra file: basis labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  auto index_of = [&](const std::string& label, const std::string& where) -> int {
    for (int i = 0; i < dim; ++i)
      if (labels[static_cast<std::size_t>(i)] == label) return i;
    throw Error("algebra file: " + where + ": unknown label '" + label + "'");
  };

  if (!j["products"].is_array())
    throw Error("algebra file: \"products\" must be an array");
  ProductTable table;
  int entry_no = 0;
  for (const json& p : j["products"]) {
    std::string where = "products[" + std::to_string(entry_no++) + "]";
    if (!p.is_object() || !p.contains("left") || !p.contains("right") ||
        !p.contains("result"))
      throw Error("algebra file: " + where + ": expected {left, right, result}");
    int i = index_of(p["left"].get<std::string>(), where + ".left");
    int jdx = index_of(p["right"].get<std::string>(), where + ".right");
    if (table.count({i, jdx}))
      throw Error("algebra file: " + where + ": duplicate product entry");
    if (!p["result"].is_object())
      throw Error("algebra file: " + where + ".result must be an object");
    std::map<int, Scalar> row;
    for (auto it = p["result"].begin(); it != p["result"].end(); ++it) {
      int k = index_of(it.key(), where + ".result");
      if (!it.value().is_string())
        throw Error("algebra file: " + where + ".result." + it.key() +
                    ": scalar must be a string");
      try {
        row.emplace(k, scalar_parse(it.value().get<std::string>(), field));
      } catch (const Error& e) {
        throw Error("algebra file: " + where + ".result." + it.key() + ": " + e.what());
      }
    }
    table.emplace(std::make_pair(i, jdx), std::move(row));
  }
  return AlgebraPresentation::make(field, std::move(labels), table);
}

inline json algebra_to_json(const AlgebraPresentation& A) {
  json products = json::array();
  for (const auto& [ij, row] : A.products()) {
    json result = json::object();
    for (const auto& [k, c] : row) result[A.label(k)] = c.render();
    products.push_back(json{{"left", A.label(ij.first)},
                            {"right", A.label(ij.second)},
                            {"result", result}});
  }
  return json{{"field", field_to_json(A.field())},
              {"dim", A.dim()},
              {"basis", A.labels()},
              {"products", products}};
}

inline AlgebraPresentation parse_algebra_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("algebra file: JSON syntax error: ") + e.what());
  }
  return algebra_from_json(j);
}

inline AlgebraPresentation parse_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_algebra_text(buf.str());
}

inline std::string serialize_algebra(const AlgebraPresentation& A) {
  return algebra_to_json(A).dump(2) + "\n";
}

inline void write_algebra_file(const std::string& path, const AlgebraPresentation& A) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_algebra(A);
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

/// "b1 + 2*b2" style linear combination against the presentation labels.
inline std::string render_element(const std::vector<std::string>& labels,
                                  const Vector& v) {
  std::string out;
  for (int i = 0; i < v.dim(); ++i) {
    if (v[i].is_zero()) continue;
    std::string coeff = v[i].render();
    std::string term;
    if (coeff == "1") term = labels[static_cast<std::size_t>(i)];
    else if (coeff == "-1") term = "-" + labels[static_cast<std::size_t>(i)];
    else term = coeff + "*" + labels[static_cast<std::size_t>(i)];
    if (out.empty()) out = term;
    else if (term.front() == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

inline json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.dim(); ++i) arr.push_back(v[i].render());
  return arr;
}

inline json subspace_to_json(const Subspace& S) {
  json rows = json::array();
  for (const Vector& r : S.rows()) rows.push_back(vector_to_json(r));
  return json{{"rank", S.rank()}, {"rows", rows}, {"pivots", S.pivots()}};
}

inline json witness_to_json(const std::vector<std::string>& labels,
                            const DivisionWitness& w) {
  return json{{"basis_index", w.basis_index + 1},
              {"basis_label", labels[static_cast<std::size_t>(w.basis_index)]},
              {"rule", w.rule},
              {"left", vector_to_json(w.left)},
              {"right", vector_to_json(w.right)},
              {"product", vector_to_json(w.product)},
              {"missing", vector_to_json(w.missing)},
              {"left_rendered", render_element(labels, w.left)},
              {"right_rendered", render_element(labels, w.right)},
              {"product_rendered", render_element(labels, w.product)},
              {"missing_rendered", render_element(labels, w.missing)}};
}

inline std::string render_witness(const std::vector<std::string>& labels,
                                  const DivisionWitness& w) {
  return "witness (" + w.rule + "): (" + render_element(labels, w.left) + ")*(" +
         render_element(labels, w.right) + ") = " +
         render_element(labels, w.product) + ", but " +
         render_element(labels, w.missing) + " is not in the ideal it generates";
}

inline json verdict_to_json(const std::vector<std::string>& labels,
                            const DivisionVerdict& v) {
  json j{{"status", to_string(v.status)},
         {"mode", v.mode.is_exhaustive() ? "exhaustive" : "refute"}};
  if (!v.mode.is_exhaustive()) j["bound"] = v.mode.bound;
  if (v.witness) j["witness"] = witness_to_json(labels, *v.witness);
  return j;
}

inline json levels_to_json(const std::vector<std::string>& labels,
                           const ConnectionLevels& levels) {
  auto classes_to_json = [&](const std::vector<std::vector<int>>& classes) {
    json arr = json::array();
    for (const auto& cls : classes) {
      json one = json::array();
      for (int i : cls) one.push_back(labels[static_cast<std::size_t>(i)]);
      arr.push_back(one);
    }
    return arr;
  };
  return json{{"level1", classes_to_json(levels.level1)},
              {"level2", classes_to_json(levels.level2_index_classes())},
              {"level3", classes_to_json(levels.final_index_classes())}};
}

inline json decomposition_to_json(const std::vector<std::string>& labels,
                                  const DecompositionReport& rep) {
  json blocks = json::array();
  for (std::size_t k = 0; k < rep.blocks.size(); ++k) {
    json b = subspace_to_json(rep.blocks[k]);
    b["is_ideal"] = rep.block_checks[k].ideal;
    b["pairwise_zero"] = rep.block_checks[k].pairwise_zero;
    if (rep.block_checks[k].oracle_simple)
      b["oracle_simple"] = *rep.block_checks[k].oracle_simple;
    blocks.push_back(std::move(b));
  }
  json j{{"verdict", to_string(rep.verdict)},
         {"reason", rep.reason},
         {"levels", levels_to_json(labels, rep.levels)},
         {"blocks", blocks}};
  if (rep.annihilator_rank >= 0) j["annihilator_rank"] = rep.annihilator_rank;
  if (rep.witness) j["witness"] = witness_to_json(labels, *rep.witness);
  if (rep.witness_basis) {
    json wb = json::array();
    for (const Vector& r : *rep.witness_basis) wb.push_back(vector_to_json(r));
    j["witness_basis"] = wb;
  }
  return j;
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

enum class ReportFormat { Text, Json };

/// One CLI invocation's structured output. `result` is the machine payload,
/// `lines` the human rendering; both are deterministic for a fixed input and
/// seed except for elapsed_ms.
struct Report {
  std::string command;
  int schema_version = 1;
  json result = json::object();
  std::vector<std::string> lines;
  int exit_code = 0;
  long long elapsed_ms = 0;
};

inline std::string emit_report(const Report& rep, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json j{{"schema_version", rep.schema_version},
           {"command", rep.command},
           {"exit_code", rep.exit_code},
           {"elapsed_ms", rep.elapsed_ms},
           {"result", rep.result}};
    return j.dump(2) + "\n";
  }
  std::string out;
  for (const std::string& line : rep.lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace basisdiv
