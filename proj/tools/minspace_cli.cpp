// minspace: command-line front end. Every report is JSON.
//
// Exit status: 0 success, 1 domain error, 2 usage or syntax error.

#include "minspace/error.hpp"
#include "minspace/generators.hpp"
#include "minspace/io.hpp"
#include "minspace/stone.hpp"
#include "minspace/ultrametric.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace minspace;

namespace {

struct Common {
  bool pretty = false;
  std::string out;
  int jobs = 1;
  std::size_t cap = kDefaultCap;
  std::optional<std::size_t> budget;
  std::string grid;
};

// Usage problems that CLI11 cannot see (missing files, bad flag values).
struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error("usage", msg) {}
};

void emit(const Common& c, const Json& j) {
  const std::string text = j.dump(c.pretty ? 2 : -1) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

int fail(const std::string& code, const std::string& message, int status, Json extra = Json::object()) {
  Json j;
  j["error"] = {{"code", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::cerr << j.dump() << "\n";
  return status;
}

fs::path existing(const std::string& p) {
  if (!fs::exists(p)) throw UsageError("no such file '" + p + "'");
  return p;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError("--" + name + " expects a rational, got '" + text + "'");
  }
}

// ---------------------------------------------------------------------------

int run_check(const Common& c, const std::string& file) {
  const fs::path path = existing(file);
  const std::string text = read_file(path);
  Json j;
  if (ends_with(file, ".csv")) {
    const FiniteSemiMetric x = parse_metric_csv(text);
    const auto problems = x.problems();
    j["kind"] = "metric";
    j["size"] = x.size();
    j["labels"] = x.labels();
    j["valid"] = problems.empty();
    j["problems"] = problems;
    emit(c, j);
    return problems.empty() ? 0 : 1;
  }
  if (is_signature_text(text)) {
    const Signature sig = parse_signature(text);
    j["kind"] = "signature";
    j["signature"] = sig.to_string();
    j["locally_finite"] = sig.is_locally_finite();
    emit(c, j);
    return 0;
  }
  const StructureFile f = parse_structure(text);
  j["kind"] = "structure";
  j["backend"] = f.backend;
  j["signature"] = f.signature.to_string();
  if (f.backend == "presented") j["consistency"] = consistency_json(f.signature, consistent(f.signature, f.literals));
  if (f.table) {
    j["size"] = f.table->size();
    j["minimal"] = is_minimal(*f.table);
  }
  if (f.structure) {
    try {
      j["in_gc"] = in_gc(*f.structure);
    } catch (const Error&) {
      // Not a group signature; membership is undefined.
    }
  }
  emit(c, j);
  return 0;
}

int run_eval(const Common& c, const std::string& file, const std::string& sentence) {
  const StructureFile f = load_structure(existing(file));
  if (!f.structure) throw Error("inconsistent", "the structure file is inconsistent");
  Json j;
  const auto first = sentence.find_first_not_of(" \t");
  const std::string head = sentence.substr(first == std::string::npos ? 0 : first, 6);
  if (head == "forall" || head == "exists") {
    if (!f.table) throw Error("needs-table", "quantified sentences are evaluated on table backends only");
    const QuantifiedSentence q = parse_quantified(sentence, f.signature);
    j["sentence"] = to_string(f.signature, q);
    j["value"] = eval_quantified(*f.table, q, c.jobs);
    if (q.quantifier == QuantifiedSentence::Quantifier::Exists) {
      if (auto w = existential_witness(*f.table, q, c.cap)) {
        Json terms = Json::array();
        for (const Term& t : w->terms) terms.push_back(to_string(f.signature, t));
        j["witness"] = {{"terms", terms}, {"instance", to_string(f.signature, w->instance)}};
      }
    }
  } else {
    const Sentence phi = parse_sentence(sentence, f.signature);
    j["sentence"] = to_string(f.signature, phi);
    j["value"] = evaluate(phi, *f.structure);
  }
  emit(c, j);
  return 0;
}

int run_dist(const Common& c, const std::string& a, const std::string& b) {
  const StructurePtr ma = load_model(existing(a));
  const StructurePtr mb = load_model(existing(b));
  const DistanceResult r = distance(*ma, *mb, c.cap);
  emit(c, distance_json(ma->signature(), r, c.cap));
  return 0;
}

Signature signature_file(const std::string& file) {
  const std::string text = read_file(existing(file));
  if (is_signature_text(text)) return parse_signature(text);
  return parse_structure(text).signature;
}

int run_cover(const Common& c, const std::string& sig_file, std::size_t m, const std::vector<std::string>& locate_files) {
  const Signature sig = signature_file(sig_file);
  const CoverCertificate cert = cover_certificate(sig, m, TypeOptions{c.budget.value_or(kDefaultTypeBudget), c.jobs});
  Json j = cover_json(cert);
  if (!locate_files.empty()) {
    Json loc = Json::array();
    for (const auto& f : locate_files) {
      const StructurePtr s = load_model(existing(f));
      loc.push_back({{"file", f}, {"balls", locate(*s, cert)}});
    }
    j["locate"] = loc;
  }
  emit(c, j);
  return 0;
}

int run_sep(const Common& c, const std::string& sig_file, std::size_t k, const std::optional<std::string>& family,
            std::optional<std::size_t> len) {
  const Signature sig = signature_file(sig_file);
  const SeparatedFamily fam = separated_family(sig, k, family, len);
  Json j = separated_json(sig, fam);
  // Pairwise check with an index cutoff covering the family members used.
  ScanOptions opts;
  opts.enumeration.index_cutoff = k + 1;
  bool separated = true;
  for (std::size_t i = 0; i < k && separated; ++i)
    for (std::size_t l = i + 1; l < k && separated; ++l)
      separated = !m_close(*fam.structures[i], *fam.structures[l], fam.atom_length, opts);
  j["pairwise_non_close"] = separated;
  emit(c, j);
  return 0;
}

int run_gh(const Common& c, const std::string& xf, const std::string& yf) {
  const FiniteSemiMetric x = load_metric(existing(xf));
  const FiniteSemiMetric y = load_metric(existing(yf));
  x.require_valid();
  y.require_valid();
  try {
    emit(c, gh_json(x, y, gh_distance_exact(x, y, c.budget.value_or(kDefaultGhBudget), c.jobs)));
  } catch (const Error& e) {
    if (e.code() != "budget-exceeded") throw;
    return fail(e.code(), e.what(), 1,
                Json{{"lower_bound", to_string(gh_lower_bound(x, y))}, {"upper_bound", to_string(gh_upper_bound(x, y))}});
  }
  return 0;
}

int run_net(const Common& c, const std::string& xf, const std::string& eps) {
  const FiniteSemiMetric x = load_metric(existing(xf));
  x.require_valid();
  emit(c, net_json(x, eps_net(x, rational_flag("eps", eps))));
  return 0;
}

NuBound nu_from_flags(const std::string& n0, const std::string& grid, const std::string& counts) {
  NuBound nu;
  nu.n0 = rational_flag("n0", n0);
  const auto eps = parse_rational_list(grid);
  const auto ns = parse_count_list(counts);
  if (eps.size() != ns.size()) throw UsageError("--grid and --counts must have the same length");
  for (std::size_t i = 0; i < eps.size(); ++i) nu.grid.emplace_back(eps[i], ns[i]);
  return nu;
}

int run_nubound(const Common& c, const std::string& xf, const std::string& n0, const std::string& counts) {
  const FiniteSemiMetric x = load_metric(existing(xf));
  x.require_valid();
  const NuReport r = check_nu_bounded(x, nu_from_flags(n0, c.grid, counts));
  emit(c, nu_json(x, r));
  return 0;
}

int run_encode(const Common& c, const std::string& xf, const std::string& n0, const std::string& counts) {
  const FiniteSemiMetric x = load_metric(existing(xf));
  if (c.grid.empty()) throw UsageError("encode needs --grid");
  std::vector<Rational> grid = parse_rational_list(c.grid);
  std::map<Rational, std::vector<std::size_t>> markers;
  std::optional<NuBound> nu;
  if (!counts.empty()) {
    if (n0.empty()) throw UsageError("--counts needs --n0");
    // nu's grid is the encoding grid minus n0 (when n0 is on it).
    const Rational top = rational_flag("n0", n0);
    std::string eps_list;
    for (const Rational& g : grid)
      if (g != top) eps_list += (eps_list.empty() ? "" : ",") + to_string(g);
    nu = nu_from_flags(n0, eps_list, counts);
    const NuReport r = check_nu_bounded(x, *nu);
    for (const NuEntry& e : r.entries)
      if (e.ok) markers[e.eps] = pad_markers(e.centers, e.allowed);
  }
  const SemiMetricEncoding e = encode(x, grid, markers);
  Json j;
  j["encoding"] = encoding_json(e);
  const auto gamma = check_gamma(e);
  j["gamma"] = {{"ok", gamma.empty()}, {"violations", violations_json(gamma)}};
  if (nu) {
    Json gnu;
    try {
      const auto v = check_gamma_nu(e, *nu);
      gnu = {{"ok", v.empty()}, {"violations", violations_json(v)}};
    } catch (const Error& err) {
      gnu = {{"ok", false}, {"error", {{"code", err.code()}, {"message", err.what()}}}};
    }
    j["gamma_nu"] = gnu;
  }
  const FiniteSemiMetric d = decode(e);
  j["decoded"] = metric_json(d);
  j["decoded_problems"] = d.problems();
  emit(c, j);
  return 0;
}

int run_netcmp(const Common& c, const std::string& xf, const std::string& yf, const std::string& eps_text,
               const std::string& n0_text, const std::string& xm, const std::string& ym) {
  const FiniteSemiMetric x = load_metric(existing(xf));
  const FiniteSemiMetric y = load_metric(existing(yf));
  x.require_valid();
  y.require_valid();
  const Rational eps = rational_flag("eps", eps_text);
  const Rational n0 = rational_flag("n0", n0_text);
  std::vector<std::size_t> xmk;
  std::vector<std::size_t> ymk;
  if (xm.empty() != ym.empty()) throw UsageError("give both --xm and --ym or neither");
  if (!xm.empty()) {
    xmk = resolve_labels(x, xm);
    ymk = resolve_labels(y, ym);
  } else {
    // Greedy nets, padded to a shared index set.
    const auto nx = eps_net(x, eps).centers;
    const auto ny = eps_net(y, eps).centers;
    const std::size_t k = std::max(nx.size(), ny.size());
    xmk = pad_markers(nx, k);
    ymk = pad_markers(ny, k);
  }
  const NetVerdict v = net_compare(x, y, eps, xmk, ymk, n0);
  Json j = net_verdict_json(eps, v);
  Json xl = Json::array();
  Json yl = Json::array();
  for (std::size_t i : xmk) xl.push_back(x.labels()[i]);
  for (std::size_t i : ymk) yl.push_back(y.labels()[i]);
  j["x_markers"] = xl;
  j["y_markers"] = yl;
  try {
    const GhResult g = gh_distance_exact(x, y, c.budget.value_or(kDefaultGhBudget), c.jobs);
    j["gh"] = to_string(g.distance);
    if (v.bound) j["bound_holds"] = g.distance <= *v.bound;
  } catch (const Error& e) {
    if (e.code() != "budget-exceeded") throw;
  }
  emit(c, j);
  return 0;
}

int run_converge(const Common& c, const std::vector<std::string>& files) {
  std::vector<StructurePtr> items;
  for (const auto& f : files) items.push_back(load_model(existing(f)));
  for (const auto& s : items)
    if (!(s->signature() == items.front()->signature()))
      throw Error("signature-mismatch", "all structures must share one signature");
  const DistanceTable t = distance_matrix(items, c.cap, c.jobs);
  Json j = cauchy_json(t, cauchy_report(t, c.cap));
  j["cap"] = c.cap;
  j["files"] = files;
  emit(c, j);
  return 0;
}

// ---------------------------------------------------------------------------

int run_selftest(const Common& c, std::size_t count) {
  std::uint64_t seed = 1;
  if (const char* env = std::getenv("MINSPACE_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("MINSPACE_SEED must be an unsigned integer");
    }
  }
  gen::Rng rng(seed);
  Json checks = Json::object();
  bool ok = true;
  auto record = [&](const std::string& name, std::size_t cases, std::size_t failures) {
    checks[name] = {{"cases", cases}, {"failures", failures}};
    ok = ok && failures == 0;
  };

  {
    std::vector<Triple> triples;
    for (std::size_t i = 0; i < count; ++i) {
      const Signature sig = gen::signature(rng);
      triples.push_back(Triple{std::make_shared<FinitelyPresented>(gen::presentation(rng, sig, 5)),
                               std::make_shared<FinitelyPresented>(gen::presentation(rng, sig, 5)),
                               std::make_shared<FinitelyPresented>(gen::presentation(rng, sig, 5))});
    }
    const auto r = check_semi_ultrametric(triples, c.cap);
    record("ultrametric", r.triples, r.violations + r.symmetry_failures);
  }
  {
    std::size_t failures = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const Signature sig = gen::signature(rng);
      const auto lits = gen::literals(rng, sig, 4);
      const Consistency v = consistent(sig, lits);
      if (!v.consistent) continue;
      const auto model = term_model(sig, lits);
      for (const Literal& l : lits)
        if (model->holds(l.atom) != l.positive) ++failures;
    }
    record("herbrand", count, failures);
  }
  {
    std::size_t failures = 0;
    std::uniform_int_distribution<std::size_t> size(1, 4);
    for (std::size_t i = 0; i < count; ++i) {
      const auto x = gen::metric(rng, size(rng));
      const auto y = gen::metric(rng, size(rng));
      const auto z = gen::metric(rng, size(rng));
      const Rational xy = gh_distance_exact(x, y).distance;
      const Rational yz = gh_distance_exact(y, z).distance;
      const Rational xz = gh_distance_exact(x, z).distance;
      if (xz > xy + yz || gh_lower_bound(x, y) > xy) ++failures;
    }
    record("gh_triangle", count, failures);
  }
  {
    std::size_t failures = 0;
    std::uniform_int_distribution<std::size_t> size(1, 5);
    for (std::size_t i = 0; i < count; ++i) {
      const auto x = gen::grid_metric(rng, size(rng), Rational(1, 2), 6);
      std::vector<Rational> grid;
      for (int k = 0; k <= 12; ++k) grid.emplace_back(k, 2);
      const auto e = encode(x, grid);
      if (!(decode(e) == x) || !check_gamma(e).empty()) ++failures;
    }
    record("encoding", count, failures);
  }
  emit(c, Json{{"seed", seed}, {"ok", ok}, {"checks", checks}});
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations on spaces of minimal structures and finite metric spaces."};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--pretty", common.pretty, "Indent JSON output");
  app.add_option("--out", common.out, "Write the report to a file");
  app.add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cap", common.cap, "Agreement cap m_cap (and witness term length for eval)")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", common.budget, "Atom budget (cover) or point budget (gh, netcmp)")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", common.grid, "Comma-separated rationals");

  std::string file, file2, sentence, eps, n0, counts, xm, ym;
  std::size_t level = 1, k = 1, count = 20;
  std::optional<std::string> family;
  std::optional<std::size_t> sep_length;
  std::vector<std::string> files;

  auto* check = app.add_subcommand("check", "Parse and validate a signature, structure or metric file");
  check->add_option("file", file)->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a sentence on a structure");
  eval->add_option("--structure,structure", file)->required();
  eval->add_option("--sentence,sentence", sentence)->required();

  auto* dist = app.add_subcommand("dist", "Ultrametric distance with a witness atom");
  dist->add_option("--a", file)->required();
  dist->add_option("--b", file2)->required();

  auto* cover = app.add_subcommand("cover", "Cover certificate of m-types");
  cover->add_option("--sig,sig", file)->required();
  cover->add_option("--m", level)->required()->check(CLI::PositiveNumber);
  cover->add_option("--locate", files, "Structure files to place in the cover");

  auto* sep = app.add_subcommand("sep", "Separated family for an omega-indexed family");
  sep->add_option("--sig,sig", file)->required();
  sep->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  sep->add_option("--family", family);
  sep->add_option("--length", sep_length);

  auto* gh = app.add_subcommand("gh", "Exact Gromov-Hausdorff distance");
  gh->add_option("--x", file)->required();
  gh->add_option("--y", file2)->required();

  auto* net = app.add_subcommand("net", "Greedy eps-net");
  net->add_option("--x", file)->required();
  net->add_option("--eps", eps)->required();

  auto* nubound = app.add_subcommand("nubound", "Check nu-boundedness (grid from --grid)");
  nubound->add_option("--x", file)->required();
  nubound->add_option("--n0", n0)->required();
  nubound->add_option("--counts", counts)->required();

  auto* enc = app.add_subcommand("encode", "Threshold-relation encoding with axiom checks");
  enc->add_option("--x", file)->required();
  enc->add_option("--n0", n0);
  enc->add_option("--counts", counts, "n_eps for the grid values other than n0; attaches net markers");

  auto* netcmp = app.add_subcommand("netcmp", "Compare two spaces through marked eps-nets");
  netcmp->add_option("--x", file)->required();
  netcmp->add_option("--y", file2)->required();
  netcmp->add_option("--eps", eps)->required();
  netcmp->add_option("--n0", n0)->required();
  netcmp->add_option("--xm", xm, "Marker labels in X");
  netcmp->add_option("--ym", ym, "Marker labels in Y");

  auto* converge = app.add_subcommand("converge", "Distance table and Cauchy report for a sequence");
  converge->add_option("files", files)->required();

  auto* selftest = app.add_subcommand("selftest", "Randomized property checks seeded by MINSPACE_SEED");
  selftest->add_option("--count", count)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what(), 2);
  }

  try {
    if (*check) return run_check(common, file);
    if (*eval) return run_eval(common, file, sentence);
    if (*dist) return run_dist(common, file, file2);
    if (*cover) return run_cover(common, file, level, files);
    if (*sep) return run_sep(common, file, k, family, sep_length);
    if (*gh) return run_gh(common, file, file2);
    if (*net) return run_net(common, file, eps);
    if (*nubound) return run_nubound(common, file, n0, counts);
    if (*enc) return run_encode(common, file, n0, counts);
    if (*netcmp) return run_netcmp(common, file, file2, eps, n0, xm, ym);
    if (*converge) return run_converge(common, files);
    if (*selftest) return run_selftest(common, count);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), 2);
  } catch (const ParseError& e) {
    Json j;
    j["error"] = {{"code", e.code()}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.code() == "io-error") return fail(e.code(), e.what(), 2);
    return fail(e.code(), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 2;
}
