#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "liftshadow/classify.hpp"
#include "liftshadow/duality.hpp"
#include "liftshadow/enumerate.hpp"
#include "liftshadow/errors.hpp"
#include "liftshadow/families.hpp"
#include "liftshadow/incidence.hpp"
#include "liftshadow/sparse.hpp"

namespace liftshadow::cli {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::size_t nmax = 4;
  std::string format = "json";
  std::string variant = "standard";
  unsigned jobs = 1;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Structure read_structure(const std::string& path, const Globals& g) {
  return parse_structure(read_file(path), parse_format(g.format));
}

// A JSON array of structures or a single structure.
std::vector<Structure> read_structure_list(const std::string& path) {
  const Json j = parse_json(read_file(path));
  std::vector<Structure> out;
  if (j.is_array()) {
    for (const auto& s : j) out.push_back(structure_from_json(s));
  } else {
    out.push_back(structure_from_json(j));
  }
  return out;
}

ForbFamily read_family(const std::string& path, const Globals& g) {
  return family_from_json(parse_json(read_file(path)), parse_variant(g.variant));
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

void error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

VerifyOptions verify_options(const Globals& g) { return VerifyOptions{g.budget, g.jobs, {}}; }

int report_exit(DualityStatus s) {
  switch (s) {
    case DualityStatus::verified: return affirmative;
    case DualityStatus::counterexample: return negative;
    case DualityStatus::budget_exceeded: return budget;
  }
  return usage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homomorphism dualities, coloured lifts and their shadows"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed (sparsify, refutation)");
  app.add_option("--budget", g.budget, "assignment limit per search");
  app.add_option("--nmax", g.nmax, "exhaustive verification bound");
  app.add_option("--format", g.format, "structure format: json or arclist")->check(CLI::IsMember({"json", "arclist"}));
  app.add_option("--variant", g.variant, "standard, injective or full")
      ->check(CLI::IsMember({"standard", "injective", "full"}));
  app.add_option("--jobs", g.jobs, "worker threads for verification sweeps")->check(CLI::PositiveNumber);

  std::string a_path, b_path;
  auto* hom = app.add_subcommand("hom", "find a homomorphism A -> B");
  hom->add_option("A", a_path)->required();
  hom->add_option("B", b_path)->required();

  auto* core_cmd = app.add_subcommand("core", "core and retraction of A");
  core_cmd->add_option("A", a_path)->required();

  auto* member = app.add_subcommand("member", "colouring of A avoiding the family");
  member->add_option("A", a_path)->required();
  member->add_option("family", b_path)->required();

  auto* classify_cmd = app.add_subcommand("classify", "CSP or not a finite union of CSPs");
  classify_cmd->add_option("family", a_path)->required();

  std::string provenance = "constructed";
  std::size_t search_max = 5;
  auto* dual = app.add_subcommand("dual", "dual of a tree, or dual set of forests");
  dual->add_option("forest", a_path)->required();
  dual->add_option("--provenance", provenance)->check(CLI::IsMember({"constructed", "searched"}));
  dual->add_option("--search-max", search_max, "largest size tried by the searched provenance");

  auto* verify = app.add_subcommand("verify-duality", "check Forb(F) = CSP(D) up to --nmax");
  verify->add_option("F", a_path)->required();
  verify->add_option("D", b_path)->required();

  auto* verify_shadow = app.add_subcommand("verify-shadow-duality", "check shadow Forb(family) = CSP(D)");
  verify_shadow->add_option("family", a_path)->required();
  verify_shadow->add_option("D", b_path)->required();

  std::size_t k = 2, girth = 3, retries = 30;
  std::optional<std::size_t> copies;
  std::optional<double> probability;
  auto* sparse = app.add_subcommand("sparsify", "high-girth B indistinguishable from A by small targets");
  sparse->add_option("A", a_path)->required();
  sparse->add_option("--k", k, "largest target size")->required();
  sparse->add_option("--girth", girth, "girth lower bound")->required();
  sparse->add_option("--copies", copies, "copies per element");
  sparse->add_option("--probability", probability, "block probability");
  sparse->add_option("--retries", retries, "attempts before giving up");

  std::string kind;
  std::size_t gen_k = 3, gen_a = 1, gen_b = 1;
  auto* gen = app.add_subcommand("gen", "generate a forbidden-lift family");
  gen->add_option("kind", kind)->required()->check(CLI::IsMember({"k-coloring", "local-coloring"}));
  gen->add_option("--k", gen_k);
  gen->add_option("--a", gen_a);
  gen->add_option("--b", gen_b);

  std::optional<std::size_t> enum_n;
  bool symmetric = false, labeled = false;
  std::string sig_path;
  auto* enum_cmd = app.add_subcommand("enum", "list structures up to isomorphism, one per line");
  enum_cmd->add_option("--n", enum_n, "largest universe (default --nmax)");
  enum_cmd->add_flag("--symmetric", symmetric, "undirected graphs");
  enum_cmd->add_flag("--labeled", labeled, "every labelling, not one per class");
  enum_cmd->add_option("--signature", sig_path, "JSON signature file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return affirmative;
  } catch (const CLI::ParseError& e) {
    error(err, "usage", e.what());
    return usage;
  }

  try {
    const HomVariant variant = parse_variant(g.variant);
    if (*hom) {
      const Structure a = read_structure(a_path, g);
      const Structure b = read_structure(b_path, g);
      auto h = find_hom(a, b, variant, g.budget);
      if (!h) {
        out << "none\n";
        return negative;
      }
      emit(out, hom_to_json(*h));
      return affirmative;
    }
    if (*core_cmd) {
      emit(out, core_result_to_json(core(read_structure(a_path, g), g.budget)));
      return affirmative;
    }
    if (*member) {
      const Structure a = read_structure(a_path, g);
      const ForbFamily f = read_family(b_path, g);
      auto coloring = shadow_member(a, f, g.budget);
      if (!coloring) {
        out << "none\n";
        return negative;
      }
      emit(out, lift_to_json(Lift::single(a, f.colors, *coloring)));
      return affirmative;
    }
    if (*classify_cmd) {
      auto r = classify(read_family(a_path, g), ClassifyBounds{g.nmax, g.budget, g.jobs});
      emit(out, classification_to_json(r));
      err << to_string(r.outcome) << ", " << r.minimal_family.size() << " minimal members\n";
      return r.outcome == Outcome::csp ? affirmative : r.outcome == Outcome::not_finite_union_csp ? negative : budget;
    }
    if (*dual) {
      DualBounds b;
      b.n_max = g.nmax;
      b.search_max = search_max;
      b.provenance = provenance == "searched" ? DualProvenance::searched : DualProvenance::constructed;
      b.verify = verify_options(g);
      const std::string text = read_file(a_path);
      DualCandidate d;
      if (parse_format(g.format) == Format::json && parse_json(text).is_array()) {
        d = dual_set_of_family(read_structure_list(a_path), b);
      } else {
        const Structure s = parse_structure(text, parse_format(g.format));
        d = incidence_analysis(s).is_tree ? dual_of_tree(s, b) : dual_set_of_family({s}, b);
      }
      emit(out, dual_candidate_to_json(d));
      err << d.duals.size() << " dual(s), verified to " << d.verified_to << "\n";
      return d.verified_to >= static_cast<long>(g.nmax) ? affirmative : budget;
    }
    if (*verify) {
      auto f = read_structure_list(a_path);
      auto d = read_structure_list(b_path);
      auto r = verify_duality(f, d, g.nmax, verify_options(g));
      emit(out, duality_report_to_json(r));
      return report_exit(r.status);
    }
    if (*verify_shadow) {
      const ForbFamily f = read_family(a_path, g);
      auto r = verify_shadow_duality(f, read_structure_list(b_path), g.nmax, verify_options(g));
      emit(out, duality_report_to_json(r));
      return report_exit(r.status);
    }
    if (*sparse) {
      SparseRequest req;
      req.a = read_structure(a_path, g);
      req.k = k;
      req.girth = girth;
      req.copies = copies;
      req.probability = probability;
      req.max_retries = retries;
      req.seed = g.seed;
      req.budget = g.budget;
      req.jobs = g.jobs;
      auto r = sparsify(req);
      emit(out, sparse_result_to_json(r));
      err << r.b.size() << " elements, " << r.b.tuple_count() << " tuples, seed " << r.seed << "\n";
      return affirmative;
    }
    if (*gen) {
      emit(out, family_to_json(kind == "k-coloring" ? k_coloring_family(gen_k) : local_coloring_family(gen_a, gen_b)));
      return affirmative;
    }
    if (*enum_cmd) {
      Signature sig = Signature::digraph(symmetric);
      if (!sig_path.empty()) sig = signature_from_json(parse_json(read_file(sig_path)));
      EnumerationOptions eo;
      eo.up_to_iso = !labeled;
      StructureEnumerator en(sig, eo);
      const Format fmt = parse_format(g.format);
      for (std::size_t n = 0; n <= enum_n.value_or(g.nmax); ++n)
        for (const auto& s : en.next_level()) out << serialize_structure(s, fmt) << '\n';
      return affirmative;
    }
  } catch (const BudgetExceeded& e) {
    error(err, "budget", e.what());
    return budget;
  } catch (const SparseFailure& e) {
    error(err, "retries", e.what());
    return budget;
  } catch (const InputError& e) {
    error(err, "input", e.what());
    return usage;
  } catch (const FormatError& e) {
    error(err, "format", e.what());
    return usage;
  } catch (const SignatureMismatch& e) {
    error(err, "signature", e.what());
    return usage;
  } catch (const std::invalid_argument& e) {
    error(err, "invalid", e.what());
    return usage;
  } catch (const std::exception& e) {
    error(err, "internal", e.what());
    return usage;
  }
  return usage;
}

}  // namespace liftshadow::cli
