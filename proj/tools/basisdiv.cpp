// basisdiv: exact semisimplicity / simplicity analysis of finite-dimensional
// algebras given by structure-constant files.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "basisdiv/basisdiv.hpp"

using namespace basisdiv;

namespace {

// exit codes: 0 completed, 1 property refuted, 2 inconclusive/unknown,
// 3 usage or input error
constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

struct GlobalOpts {
  std::string format = "text";
  std::uint64_t mod = 0;  // 0 = no reduction
};

AlgebraPresentation load(const std::string& path, const GlobalOpts& g) {
  AlgebraPresentation A = parse_algebra_file(path);
  if (g.mod != 0) return reduce_mod(A, g.mod);
  return A;
}

Vector parse_element(const AlgebraPresentation& A, const std::string& text) {
  if (std::optional<int> idx = A.index_of(text)) return A.basis_vector(*idx);
  std::vector<Scalar> coords;
  std::string part;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      coords.push_back(scalar_parse(part, A.field()));
      part.clear();
    } else {
      part += text[i];
    }
  }
  if (static_cast<int>(coords.size()) != A.dim())
    throw Error("element '" + text + "' must be a basis label or " +
                std::to_string(A.dim()) + " comma-separated scalars");
  return Vector(A.field(), coords);
}

int finish(Report& rep, const GlobalOpts& g,
           std::chrono::steady_clock::time_point start) {
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::cout << emit_report(rep, g.format == "json" ? ReportFormat::Json
                                                   : ReportFormat::Text);
  return rep.exit_code;
}

std::string field_line(const AlgebraPresentation& A) {
  return "field: " + A.field().to_string() + ", dim: " + std::to_string(A.dim());
}

void describe_blocks(Report& rep, const AlgebraPresentation& A,
                     const DecompositionReport& dec) {
  rep.lines.push_back("blocks: " + std::to_string(dec.blocks.size()));
  std::vector<std::vector<int>> finals = dec.levels.final_index_classes();
  for (std::size_t k = 0; k < dec.blocks.size(); ++k) {
    std::string line = "  block " + std::to_string(k) + ": {";
    for (std::size_t t = 0; t < finals[k].size(); ++t) {
      if (t) line += ", ";
      line += A.label(finals[k][t]);
    }
    line += "} rank " + std::to_string(dec.blocks[k].rank());
    if (dec.block_checks[k].oracle_simple)
      line += *dec.block_checks[k].oracle_simple ? " (oracle: simple)"
                                                 : " (oracle: NOT simple)";
    rep.lines.push_back(line);
  }
}

int cmd_info(const std::string& path, const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPresentation A = load(path, g);
  BasisProfile prof = basis_profile(A);
  Report rep;
  rep.command = "info";
  rep.result = algebra_to_json(A);
  rep.result["nonzero_products"] = static_cast<int>(A.products().size());
  rep.lines.push_back(field_line(A));
  std::string labels = "basis:";
  for (const std::string& l : A.labels()) labels += " " + l;
  rep.lines.push_back(labels);
  rep.lines.push_back("nonzero basis products: " +
                      std::to_string(A.products().size()));
  for (const auto& [ij, row] : A.products()) {
    Vector v(A.field(), A.dim());
    for (const auto& [k, c] : row) v[k] = c;
    rep.lines.push_back("  " + A.label(ij.first) + " * " + A.label(ij.second) + " = " +
                        render_element(A.labels(), v));
  }
  json prof_json = json::object();
  for (int i = 0; i < A.dim(); ++i) {
    json sets;
    json partners = json::array(), producers = json::array();
    for (int j : prof.partners[static_cast<std::size_t>(i)]) partners.push_back(A.label(j));
    for (int j : prof.producers[static_cast<std::size_t>(i)]) producers.push_back(A.label(j));
    sets["partners"] = partners;
    sets["producers"] = producers;
    prof_json[A.label(i)] = sets;
  }
  rep.result["profile"] = prof_json;
  rep.exit_code = kOk;
  return finish(rep, g, start);
}

int cmd_ann(const std::string& path, const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPresentation A = load(path, g);
  Subspace ann = annihilator(A);
  Report rep;
  rep.command = "ann";
  rep.result = {{"annihilator", subspace_to_json(ann)}};
  rep.lines.push_back("annihilator rank: " + std::to_string(ann.rank()));
  for (const Vector& r : ann.rows())
    rep.lines.push_back("  " + render_element(A.labels(), r));
  rep.exit_code = kOk;
  return finish(rep, g, start);
}

int cmd_ideal(const std::string& path, const std::string& element, const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPresentation A = load(path, g);
  Vector v = parse_element(A, element);
  Subspace I = ideal_closure(A, {v});
  Report rep;
  rep.command = "ideal";
  rep.result = {{"generator", vector_to_json(v)}, {"ideal", subspace_to_json(I)}};
  rep.lines.push_back("ideal generated by " + render_element(A.labels(), v) + ": rank " +
                      std::to_string(I.rank()) +
                      (I.is_full() ? " (the whole algebra)" : ""));
  for (const Vector& r : I.rows())
    rep.lines.push_back("  " + render_element(A.labels(), r));
  rep.exit_code = kOk;
  return finish(rep, g, start);
}

int cmd_classify(const std::string& path, const std::string& mode_name, int bound,
                 const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPresentation A = load(path, g);
  std::string mode = mode_name;
  if (mode.empty()) mode = A.field().is_prime_field() ? "exhaustive" : "refute";
  CheckMode cm =
      mode == "exhaustive" ? CheckMode::exhaustive() : CheckMode::refute(bound);

  Report rep;
  rep.command = "classify-basis";
  bool any_fails = false, any_unknown = false;
  BasisProfile prof = basis_profile(A);
  for (DivisionKind kind :
       {DivisionKind::Weak, DivisionKind::Semi, DivisionKind::IDivision}) {
    DivisionVerdict v = kind == DivisionKind::Weak
                            ? check_weak_division(A, prof, cm)
                            : kind == DivisionKind::Semi
                                  ? check_semi_division(A, prof, cm)
                                  : check_i_division(A, cm);
    rep.result[to_string(kind)] = verdict_to_json(A.labels(), v);
    std::string line = to_string(kind) + ": " + to_string(v.status);
    rep.lines.push_back(line);
    if (v.witness) rep.lines.push_back("  " + render_witness(A.labels(), *v.witness));
    any_fails = any_fails || v.status == CheckStatus::Fails;
    any_unknown = any_unknown || v.status == CheckStatus::Unknown;
  }
  rep.result["mode"] = mode;
  rep.exit_code = any_fails ? kRefuted : any_unknown ? kInconclusive : kOk;
  return finish(rep, g, start);
}

int cmd_decompose(const std::string& path, const std::string& dot_path,
                  const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPresentation A = load(path, g);
  DecompositionReport dec = decompose(A);
  Report rep;
  rep.command = "decompose";
  rep.result = decomposition_to_json(A.labels(), dec);
  rep.lines.push_back(field_line(A));
  describe_blocks(rep, A, dec);
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) throw Error("cannot write '" + dot_path + "'");
    out << to_dot(dec.levels, A.labels());
    rep.lines.push_back("wrote " + dot_path);
  }
  rep.exit_code = kOk;
  return finish(rep, g, start);
}

int cmd_check_semisimple(const std::string& path, bool all_bases, const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPresentation A = load(path, g);
  OracleLimits lim = OracleLimits::from_env();
  DecompositionReport dec = check_semisimple_via_theorem(
      A, all_bases ? BasisMode::AllBases : BasisMode::GivenBasis, lim);
  Report rep;
  rep.command = "check-semisimple";
  rep.result = decomposition_to_json(A.labels(), dec);
  rep.lines.push_back("verdict: " + to_string(dec.verdict));
  rep.lines.push_back("reason: " + dec.reason);
  if (dec.witness) rep.lines.push_back("  " + render_witness(A.labels(), *dec.witness));
  if (dec.witness_basis) {
    rep.lines.push_back("witness basis:");
    for (const Vector& r : *dec.witness_basis)
      rep.lines.push_back("  " + render_element(A.labels(), r));
  }
  describe_blocks(rep, A, dec);
  rep.exit_code = dec.verdict == SemisimpleVerdict::Semisimple ? kOk
                  : dec.verdict == SemisimpleVerdict::NotSemisimple ? kRefuted
                                                                    : kInconclusive;
  return finish(rep, g, start);
}

int cmd_check_simple(const std::string& path, bool all_bases, const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPresentation A = load(path, g);
  OracleLimits lim = OracleLimits::from_env();
  SimplicityReport sr = check_simple_via_corollary(
      A, all_bases ? BasisMode::AllBases : BasisMode::GivenBasis, lim);
  Report rep;
  rep.command = "check-simple";
  rep.result = {{"verdict", to_string(sr.verdict)},
                {"reason", sr.reason},
                {"annihilator_rank", sr.annihilator_rank}};
  if (sr.witness) rep.result["witness"] = witness_to_json(A.labels(), *sr.witness);
  rep.lines.push_back("verdict: " + to_string(sr.verdict));
  rep.lines.push_back("reason: " + sr.reason);
  if (sr.witness) rep.lines.push_back("  " + render_witness(A.labels(), *sr.witness));
  rep.exit_code = sr.verdict == SimpleVerdict::Simple ? kOk
                  : sr.verdict == SimpleVerdict::NotSimple ? kRefuted
                                                           : kInconclusive;
  return finish(rep, g, start);
}

int cmd_oracle(const std::string& path, bool ideals, bool semisimple, bool simple,
               const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPresentation A = load(path, g);
  OracleLimits lim = OracleLimits::from_env();
  Report rep;
  rep.command = "oracle";
  rep.exit_code = kOk;
  if (ideals) {
    std::vector<Subspace> all = all_ideals(A, lim);
    json arr = json::array();
    rep.lines.push_back("ideals: " + std::to_string(all.size()));
    for (const Subspace& I : all) {
      arr.push_back(subspace_to_json(I));
      std::string line = "  rank " + std::to_string(I.rank());
      for (const Vector& r : I.rows())
        line += "  | " + render_element(A.labels(), r);
      rep.lines.push_back(line);
    }
    rep.result["ideals"] = arr;
  } else if (simple) {
    bool s = oracle_is_simple(A, lim);
    rep.result["simple"] = s;
    rep.lines.push_back(std::string("oracle: ") + (s ? "simple" : "not simple"));
    rep.exit_code = s ? kOk : kRefuted;
  } else {
    std::optional<std::vector<Subspace>> family = oracle_simple_decomposition(A, lim);
    rep.result["semisimple"] = family.has_value();
    if (family) {
      json arr = json::array();
      for (const Subspace& I : *family) arr.push_back(subspace_to_json(I));
      rep.result["simple_ideals"] = arr;
      rep.lines.push_back("oracle: semisimple, " + std::to_string(family->size()) +
                          " simple ideal(s)");
      for (const Subspace& I : *family)
        for (const Vector& r : I.rows())
          rep.lines.push_back("  " + render_element(A.labels(), r));
    } else {
      rep.lines.push_back("oracle: not semisimple");
    }
    rep.exit_code = family ? kOk : kRefuted;
    (void)semisimple;
  }
  return finish(rep, g, start);
}

FieldDescriptor parse_field_name(const std::string& name) {
  if (name == "Q" || name == "q") return FieldDescriptor::rationals();
  if (name.size() >= 2 && (name[0] == 'F' || name[0] == 'f')) {
    char* end = nullptr;
    unsigned long long p = std::strtoull(name.c_str() + 1, &end, 10);
    if (end && *end == '\0') return FieldDescriptor::prime(p);
  }
  throw Error("unknown field '" + name + "' (expected Q or F<p>)");
}

int cmd_fuzz(const std::string& field_name, int dim, std::uint64_t trials,
             std::uint64_t seed, double sparsity, const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  FieldDescriptor field = parse_field_name(field_name);
  if (!field.is_prime_field())
    throw Error("fuzzing needs a prime field (the oracle cannot enumerate over Q)");
  OracleLimits lim = OracleLimits::from_env();
  if (detail::checked_pow(field.modulus(), dim) > lim.subspace_ceiling)
    throw Error("fuzz: q^dim exceeds the enumeration ceiling");
  if (ordered_basis_count(field.modulus(), dim) > lim.basis_ceiling)
    throw Error("fuzz: the ordered-basis count exceeds the enumeration ceiling");

  Report rep;
  rep.command = "fuzz";
  json trials_json = json::array();
  int violations = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    FuzzConfig cfg;
    cfg.field = field;
    cfg.dim = dim;
    cfg.sparsity = sparsity;
    cfg.seed = seed + t;
    AlgebraPresentation A = random_algebra(cfg);
    std::vector<PropertyViolation> found = check_instance_properties(A, lim);
    json tj = {{"seed", cfg.seed}, {"violations", json::array()}};
    for (const PropertyViolation& v : found) {
      ++violations;
      tj["violations"].push_back({{"property", v.property}, {"detail", v.detail}});
      AlgebraPresentation minimized = minimize_counterexample(
          A, [&](const AlgebraPresentation& cand) {
            return violates_property(cand, v.property, lim);
          });
      std::string file = "counterexample-" + v.property + "-seed" +
                         std::to_string(cfg.seed) + ".alg.json";
      write_algebra_file(file, minimized);
      rep.lines.push_back("trial seed " + std::to_string(cfg.seed) + ": VIOLATION of " +
                          v.property + " -> " + file);
      tj["counterexample_file"] = file;
    }
    trials_json.push_back(std::move(tj));
  }
  rep.result = {{"field", field.to_string()},
                {"dim", dim},
                {"trials", trials},
                {"base_seed", seed},
                {"sparsity", sparsity},
                {"violations", violations},
                {"per_trial", trials_json}};
  rep.lines.push_back("fuzz: " + std::to_string(trials) + " trial(s) over " +
                      field.to_string() + " dim " + std::to_string(dim) + ", " +
                      std::to_string(violations) + " violation(s)");
  rep.exit_code = violations == 0 ? kOk : kRefuted;
  return finish(rep, g, start);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact semisimplicity and simplicity analysis of structure-constant algebras"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--mod", g.mod, "reduce a rational presentation mod this prime first");

  std::string path, element, dot_path, mode_name, field_name = "F2";
  int bound = 2, dim = 2;
  std::uint64_t trials = 100, seed = 0;
  double sparsity = 0.3;
  bool all_bases = false, o_ideals = false, o_semisimple = false, o_simple = false;

  CLI::App* info = app.add_subcommand("info", "presentation summary and basis profile");
  info->add_option("file", path)->required();

  CLI::App* ann = app.add_subcommand("ann", "annihilator of the algebra");
  ann->add_option("file", path)->required();

  CLI::App* ideal = app.add_subcommand("ideal", "ideal generated by an element");
  ideal->add_option("file", path)->required();
  ideal->add_option("element", element,
                    "basis label or comma-separated coordinates")->required();

  CLI::App* classify =
      app.add_subcommand("classify-basis", "weak/semi/i-division status of the basis");
  classify->add_option("file", path)->required();
  classify->add_option("--mode", mode_name, "exhaustive or refute")
      ->check(CLI::IsMember({"exhaustive", "refute"}));
  classify->add_option("--bound", bound, "coordinate bound for refute mode");

  CLI::App* dec = app.add_subcommand("decompose", "connection decomposition into ideals");
  dec->add_option("file", path)->required();
  dec->add_option("--dot", dot_path, "write the connection graph in DOT format");

  CLI::App* css = app.add_subcommand("check-semisimple",
                                     "semisimplicity via annihilator + semi-division");
  css->add_option("file", path)->required();
  css->add_flag("--all-bases", all_bases, "exhaust all bases (prime fields)");

  CLI::App* cs =
      app.add_subcommand("check-simple", "simplicity via annihilator + i-division");
  cs->add_option("file", path)->required();
  cs->add_flag("--all-bases", all_bases, "exhaust all bases (prime fields)");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force ground truth");
  oracle->add_option("file", path)->required();
  oracle->add_flag("--ideals", o_ideals, "list every ideal");
  oracle->add_flag("--semisimple", o_semisimple, "decide semisimplicity (default)");
  oracle->add_flag("--simple", o_simple, "decide simplicity");

  CLI::App* fuzz =
      app.add_subcommand("fuzz", "differential testing against the oracle");
  fuzz->add_option("--field", field_name, "Q or F<p>")->capture_default_str();
  fuzz->add_option("--dim", dim, "dimension (1..4)")->capture_default_str();
  fuzz->add_option("--trials", trials, "number of instances")->capture_default_str();
  fuzz->add_option("--seed", seed, "base seed")->capture_default_str();
  fuzz->add_option("--sparsity", sparsity, "entry density in [0,1]")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  try {
    if (info->parsed()) return cmd_info(path, g);
    if (ann->parsed()) return cmd_ann(path, g);
    if (ideal->parsed()) return cmd_ideal(path, element, g);
    if (classify->parsed()) return cmd_classify(path, mode_name, bound, g);
    if (dec->parsed()) return cmd_decompose(path, dot_path, g);
    if (css->parsed()) return cmd_check_semisimple(path, all_bases, g);
    if (cs->parsed()) return cmd_check_simple(path, all_bases, g);
    if (oracle->parsed()) {
      if (static_cast<int>(o_ideals) + static_cast<int>(o_semisimple) +
              static_cast<int>(o_simple) > 1)
        throw Error("--ideals, --semisimple and --simple are mutually exclusive");
      return cmd_oracle(path, o_ideals, o_semisimple, o_simple, g);
    }
    if (fuzz->parsed()) return cmd_fuzz(field_name, dim, trials, seed, sparsity, g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
