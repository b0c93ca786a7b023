#include "latdiv/cli.hpp"

#include "latdiv/birkhoff.hpp"
#include "latdiv/constructions.hpp"
#include "latdiv/document.hpp"
#include "latdiv/errors.hpp"
#include "latdiv/render.hpp"
#include "latdiv/tightspan.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace latdiv {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t threads = 1;

  std::string file;
  std::string output;

  // gen
  bool m3 = false;
  bool n5 = false;
  std::size_t powerset = 0;
  std::uint64_t divisors = 0;
  std::string multiset;
  std::string alpha;
  std::string beta;
  std::string diversity;
  std::string metric_file;

  // nway
  std::size_t n = 0;
  bool check = false;

  // tightspan
  bool enumerate = false;
  std::string member;
  std::string minimize_file;
  std::string kappa_element;
  bool counterexamples = false;
  std::size_t max_elements = TightSpanOptions{}.max_enumeration_lattice;
};

Rational usage_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::string names_tuple(const FiniteLattice& L) {
  std::string out = "(";
  for (Element a = 0; a < L.size(); ++a) out += (a ? "," : "") + L.name(a);
  return out + ")";
}

std::string element_list(const FiniteLattice& L, const ElementSet& set) {
  std::vector<std::string> names;
  for (Element a : set) names.push_back(L.name(a));
  return set_name(names);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

LoadedDocument load(const std::string& path) { return load_document(read_file(path)); }

const DiversityFn& require_diversity(const LoadedDocument& loaded) {
  if (!loaded.diversity) throw ValidationError("document has no diversity");
  if (!loaded.diversity->is_valid()) {
    const auto& v = loaded.diversity->report().violations.front();
    throw ValidationError("diversity is invalid: " + v.message);
  }
  return *loaded.diversity;
}

// ---------------------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  const LoadedDocument loaded = load(o.file);
  const FiniteLattice& L = *loaded.lattice;
  out << "lattice: " << (loaded.doc.name.empty() ? "(unnamed)" : loaded.doc.name) << ", " << L.size()
      << " elements, " << L.covers().size() << " covers\n";
  out << "atoms: " << element_list(L, L.atoms()) << "\n";
  auto law = [&](const char* what, const std::optional<TripleWitness>& w) {
    out << what << ": ";
    if (!w) {
      out << "yes\n";
    } else {
      out << "no, witness (" << L.name(w->a) << ", " << L.name(w->b) << ", " << L.name(w->c) << ")\n";
    }
  };
  law("modular", modularity_violation(L));
  law("distributive", distributivity_violation(L));

  const auto scan = [&](std::span<const Rational> values) {
    const CheckResult t = triangle_scan(L, values);
    out << "triangle inequality: " << (t.holds ? "holds" : "fails, " + t.detail) << "\n";
  };
  if (!loaded.diversity) {
    out << "diversity: none\n";
    return 0;
  }
  const DiversityFn& delta = *loaded.diversity;
  out << "diversity: " << to_tuple_string(delta.values()) << "\n";
  if (delta.is_valid()) {
    out << "axioms: valid\n";
    scan(delta.values());
    return 0;
  }
  out << "axioms: invalid\n";
  for (const Violation& v : delta.report().violations) {
    out << "  " << to_string(v.axiom) << ": " << v.message;
    if (v.count > 1) out << " (" << v.count << " violations)";
    out << "\n";
  }
  scan(delta.values());
  return 1;
}

DiversityFn named_diversity(const std::string& kind, const LatticePtr& L, bool divisors) {
  if (kind == "trivial") return trivial_diversity(L);
  if (kind == "height") return height_diversity(L);
  if (kind == "cardinality") return cardinality_diversity(L);
  if (kind == "omega") {
    if (!divisors) throw UsageError("--diversity omega needs --divisors");
    return omega_diversity(L);
  }
  throw UsageError("unknown diversity '" + kind + "'");
}

struct MultisetSpec {
  std::vector<std::string> points;
  std::vector<unsigned> caps;
  ChainTables chains;
};

MultisetSpec parse_multiset_spec(const std::string& spec) {
  MultisetSpec out;
  std::vector<bool> explicit_chain;
  std::stringstream tokens(spec);
  std::string token;
  while (std::getline(tokens, token, ',')) {
    if (token.find(':') == std::string::npos) {
      if (out.points.empty() || !explicit_chain.back()) throw UsageError("--multiset: stray value '" + token + "'");
      out.chains.back().push_back(usage_rational("--multiset", token));
      continue;
    }
    std::vector<std::string> parts;
    std::stringstream fields(token);
    std::string field;
    while (std::getline(fields, field, ':')) parts.push_back(field);
    if (parts.size() < 2 || parts.size() > 3 || parts[0].empty()) {
      throw UsageError("--multiset: expected name:cap[:f0,f1,...], got '" + token + "'");
    }
    unsigned cap = 0;
    try {
      std::size_t used = 0;
      const unsigned long value = std::stoul(parts[1], &used);
      if (used != parts[1].size() || value < 1 || value > 64) throw std::invalid_argument("cap");
      cap = static_cast<unsigned>(value);
    } catch (const std::exception&) {
      throw UsageError("--multiset: cap of '" + parts[0] + "' must be an integer in [1, 64]");
    }
    if (std::find(out.points.begin(), out.points.end(), parts[0]) != out.points.end()) {
      throw UsageError("--multiset: point '" + parts[0] + "' repeated");
    }
    out.points.push_back(parts[0]);
    out.caps.push_back(cap);
    out.chains.emplace_back();
    explicit_chain.push_back(parts.size() == 3);
    if (parts.size() == 3) out.chains.back().push_back(usage_rational("--multiset", parts[2]));
  }
  if (out.points.empty()) throw UsageError("--multiset: empty spec");
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (explicit_chain[i]) continue;
    for (unsigned k = 0; k <= out.caps[i]; ++k) out.chains[i].push_back(k < 2 ? 0 : k - 1);
  }
  return out;
}

int cmd_gen(const Options& o, std::ostream& out) {
  std::string name;
  nlohmann::json meta = nlohmann::json::object();
  LatticePtr L;
  std::optional<DiversityFn> delta;
  bool divisors = false;

  if (!o.m3 && !o.n5 && (!o.alpha.empty() || !o.beta.empty())) {
    throw UsageError("--alpha and --beta apply to --m3 and --n5 only");
  }
  if (o.m3) {
    if (o.alpha.empty()) throw UsageError("--m3 needs --alpha");
    if (!o.beta.empty()) throw UsageError("--m3 takes no --beta");
    const Rational alpha = usage_rational("--alpha", o.alpha);
    name = "m3";
    meta = {{"generator", "m3"}, {"alpha", to_string(alpha)}};
    delta.emplace(m3_diversity(alpha));
    L = delta->lattice_ptr();
  } else if (o.n5) {
    if (o.alpha.empty() || o.beta.empty()) throw UsageError("--n5 needs --alpha and --beta");
    const Rational alpha = usage_rational("--alpha", o.alpha);
    const Rational beta = usage_rational("--beta", o.beta);
    name = "n5";
    meta = {{"generator", "n5"}, {"alpha", to_string(alpha)}, {"beta", to_string(beta)}};
    delta.emplace(n5_diversity(alpha, beta));
    L = delta->lattice_ptr();
  } else if (o.powerset > 0) {
    name = "powerset-" + std::to_string(o.powerset);
    meta = {{"generator", "powerset"}, {"n", o.powerset}};
    L = share(powerset_lattice(o.powerset));
  } else if (o.divisors > 0) {
    name = "divisors-" + std::to_string(o.divisors);
    meta = {{"generator", "divisors"}, {"n", o.divisors}};
    L = share(divisor_lattice(o.divisors));
    divisors = true;
  } else {
    const MultisetSpec spec = parse_multiset_spec(o.multiset);
    name = "multiset";
    meta = {{"generator", "multiset"}, {"spec", o.multiset}};
    L = share(multiset_lattice(spec.points, spec.caps));
    FiniteMetric metric{spec.points, std::vector<Rational>(spec.points.size() * spec.points.size(), 1)};
    for (std::size_t i = 0; i < spec.points.size(); ++i) metric.dist[i * spec.points.size() + i] = 0;
    if (!o.metric_file.empty()) {
      metric = parse_metric_file(read_file(o.metric_file), spec.points);
      meta["metric"] = o.metric_file;
    }
    delta.emplace(multiset_diversity(L, spec.caps, metric, spec.chains));
  }
  if (!o.metric_file.empty() && o.multiset.empty()) throw UsageError("--metric applies to --multiset only");

  if (!o.diversity.empty()) {
    delta.emplace(named_diversity(o.diversity, L, divisors));
    meta["diversity"] = o.diversity;
  }
  const LatDivDocument doc = make_document(name, *L, delta ? &delta->values() : nullptr, meta);
  write_output(o.output, serialize(doc), out);
  return 0;
}

int cmd_metric(const Options& o, std::ostream& out) {
  const LoadedDocument loaded = load(o.file);
  const FiniteMetric metric = induced_metric(require_diversity(loaded));
  const std::size_t n = metric.size();
  std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    cells[0][i + 1] = metric.points[i];
    cells[i + 1][0] = metric.points[i];
    for (std::size_t j = 0; j < n; ++j) cells[i + 1][j + 1] = to_string(metric(i, j));
  }
  std::vector<std::size_t> width(n + 1, 0);
  for (const auto& row : cells) {
    for (std::size_t j = 0; j <= n; ++j) width[j] = std::max(width[j], row[j].size());
  }
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j) line += "  ";
      line += row[j] + std::string(width[j] - row[j].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  return 0;
}

int cmd_nway(const Options& o, std::ostream& out) {
  if (o.n < 1) throw UsageError("--n must be at least 1");
  const LoadedDocument loaded = load(o.file);
  const DiversityFn& delta = require_diversity(loaded);
  const FiniteLattice& L = delta.lattice();
  if (o.check) {
    if (o.n < 2) throw UsageError("--check needs --n >= 2");
    const CheckResult r = check_nway_axioms(delta, o.n);
    out << "n-way axioms (n=" << o.n << "): " << (r.holds ? "hold" : "fail, " + r.detail) << "\n";
    return r.holds ? 0 : 1;
  }
  const ElementSet& atoms = L.atoms();
  if (atoms.empty()) return 0;
  const Limits limits;
  std::vector<std::size_t> pick(o.n, 0);
  std::size_t emitted = 0;
  while (true) {
    if (++emitted > limits.max_tuples) throw SizeLimit("too many atom tuples to list");
    std::vector<Element> tuple;
    std::string label;
    for (std::size_t i = 0; i < o.n; ++i) {
      tuple.push_back(atoms[pick[i]]);
      label += (i ? "," : "") + L.name(atoms[pick[i]]);
    }
    out << "d(" << label << ") = " << to_string(nway_distance(delta, tuple)) << "\n";
    std::size_t i = o.n;
    while (i > 0 && pick[i - 1] == atoms.size() - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < o.n; ++j) pick[j] = pick[i - 1];
  }
  return 0;
}

int cmd_birkhoff(const Options& o, std::ostream& out) {
  const LoadedDocument loaded = load(o.file);
  const BirkhoffRepresentation rep = representation(loaded.lattice);
  const FiniteLattice& L = *loaded.lattice;
  out << "J(L): " << element_list(L, rep.jirr) << " (" << rep.jirr.size() << " elements)\n";
  out << "order on J(L):";
  if (rep.jirr_poset.covers.empty()) out << " antichain";
  for (const auto& [lo, hi] : rep.jirr_poset.covers) out << " " << lo << "<" << hi;
  out << "\n";
  out << "O(J(L)): " << rep.target->size() << " lower sets\n";
  out << "eta:\n";
  for (Element a = 0; a < L.size(); ++a) out << "  " << L.name(a) << " -> " << rep.target->name(rep.eta[a]) << "\n";
  out << "isomorphism laws: verified\n";
  if (!loaded.diversity) return 0;
  const ExtensionReport ext = verify_extension_theorem(require_diversity(loaded));
  out << "extension: " << (ext.ok() ? "ok" : "failed") << " (" << ext.subsets_checked << " subsets"
      << (ext.triangle_checked ? ", triangle checked" : "") << ")\n";
  for (const auto& f : ext.failures) out << "  " << f << "\n";
  return ext.ok() ? 0 : 1;
}

std::string constraint_text(const FiniteLattice& L, const Constraint& c) {
  std::string lhs;
  for (Element b : c.support) lhs += (lhs.empty() ? "" : " + ") + L.name(b);
  return lhs + " >= " + to_string(c.rhs);
}

int cmd_tightspan(const Options& o, std::ostream& out) {
  const LoadedDocument loaded = load(o.file);
  const DiversityFn& delta = require_diversity(loaded);
  const FiniteLattice& L = delta.lattice();
  TightSpanOptions opts;
  opts.threads = o.threads;
  opts.max_enumeration_lattice = o.max_elements;

  if (o.enumerate) {
    const TightSpanComplex complex = enumerate_tight_span(delta, opts);
    out << "elements: " << names_tuple(L) << "\n";
    out << "constraints: " << complex.system.constraints.size() << "\n";
    for (std::size_t i = 0; i < complex.system.constraints.size(); ++i) {
      out << "  c" << i << ": " << constraint_text(L, complex.system.constraints[i]) << "\n";
    }
    out << "vertices: " << complex.vertices.size() << "\n";
    for (std::size_t v = 0; v < complex.vertices.size(); ++v) {
      out << "  v" << v << " = " << to_tuple_string(complex.vertices[v].values()) << "\n";
    }
    out << "faces: " << complex.faces.size() << "\n";
    for (const Face& f : complex.faces) {
      out << "  dim " << f.dimension << ":";
      for (std::size_t v : f.vertices) out << " v" << v;
      out << " | tight";
      for (std::size_t c : f.tight_constraints) out << " " << element_list(L, complex.system.constraints[c].support);
      if (f.maximal) out << " | maximal";
      out << "\n";
    }
    out << "unbounded faces checked: " << complex.unbounded_faces_checked << "\n";
    return 0;
  }

  const ConstraintSystem system = constraint_system(delta, opts);
  auto report_membership = [&](const LatticeFunction& f) {
    const TLMembership tl = in_TL(f, system);
    out << "in P_L: ";
    if (tl.pl.member) {
      out << "yes\n";
    } else {
      out << "no, violates " << constraint_text(L, system.constraints[*tl.pl.violated]) << "\n";
    }
    out << "in T_L: ";
    if (tl.member) {
      out << "yes\n";
    } else if (tl.slack) {
      out << "no, " << L.name(*tl.slack) << " can be lowered\n";
    } else {
      out << "no\n";
    }
  };

  if (!o.member.empty() || !o.minimize_file.empty()) {
    const bool minimizing = o.member.empty();
    const LatticeFunction f(loaded.lattice, parse_point_file(read_file(minimizing ? o.minimize_file : o.member), L));
    out << "elements: " << names_tuple(L) << "\n";
    out << "point: " << to_tuple_string(f.values()) << "\n";
    if (!minimizing) {
      report_membership(f);
      return 0;
    }
    const LatticeFunction g = minimize(f, system);
    out << "minimized: " << to_tuple_string(g.values()) << "\n";
    return 0;
  }

  if (!o.kappa_element.empty()) {
    const Element x = L.index(o.kappa_element);
    const LatticeFunction h = kappa(delta, x);
    out << "elements: " << names_tuple(L) << "\n";
    out << "kappa(" << L.name(x) << ") = " << to_tuple_string(h.values()) << "\n";
    report_membership(h);
    return 0;
  }

  const auto found = kappa_homomorphism_counterexamples(delta);
  out << "kappa join counterexamples: " << found.size() << "\n";
  for (const auto& c : found) {
    out << "  a=" << L.name(c.a) << " b=" << L.name(c.b) << " c=" << L.name(c.c) << ": delta(a v b v c) = "
        << to_string(c.joined) << ", max(delta(a v c), delta(b v c)) = " << to_string(c.larger)
        << ", gap " << to_string(c.gap) << "\n";
  }
  return 0;
}

int cmd_render(const Options& o, std::ostream& out) {
  const LoadedDocument loaded = load(o.file);
  std::vector<std::string> annotations;
  if (loaded.diversity) {
    for (const Rational& q : loaded.diversity->values()) annotations.push_back(to_string(q));
  }
  const std::string name = loaded.doc.name.empty() ? "lattice" : loaded.doc.name;
  write_output(o.output, render_hasse(*loaded.lattice, annotations, name), out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Lattice diversities: validation, constructions, Birkhoff representation and tight spans", "latdiv"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads for vertex enumeration")->check(CLI::Range(1, 256));

  auto* check = app.add_subcommand("check", "Validate a lattice and its diversity");
  check->add_option("FILE", o.file, "Document")->required();

  auto* gen = app.add_subcommand("gen", "Generate a lattice document");
  auto* family = gen->add_option_group("family");
  family->add_flag("--m3", o.m3, "Diamond lattice M3 with its diversity");
  family->add_flag("--n5", o.n5, "Pentagon lattice N5 with its diversity");
  family->add_option("--powerset", o.powerset, "Subsets of {1..N}")->check(CLI::Range(1, 12));
  family->add_option("--divisors", o.divisors, "Divisors of N")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 62));
  family->add_option("--multiset", o.multiset, "Multisets, SPEC = x:cap[:f0,f1,...],y:cap...");
  family->require_option(1);
  gen->add_option("--alpha", o.alpha, "alpha (M3, N5)");
  gen->add_option("--beta", o.beta, "beta (N5)");
  gen->add_option("--diversity", o.diversity, "trivial | height | cardinality | omega");
  gen->add_option("--metric", o.metric_file, "Distance file for --multiset");
  gen->add_option("-o,--output", o.output, "Output file (default: standard output)");

  auto* metric = app.add_subcommand("metric", "Print the induced metric on atoms");
  metric->add_option("FILE", o.file, "Document")->required();

  auto* nway = app.add_subcommand("nway", "List n-way distances or check their axioms");
  nway->add_option("FILE", o.file, "Document")->required();
  nway->add_option("--n", o.n, "Tuple size")->required();
  nway->add_flag("--check", o.check, "Check the n-way distance axioms");

  auto* birkhoff = app.add_subcommand("birkhoff", "Birkhoff representation and extension check");
  birkhoff->add_option("FILE", o.file, "Document")->required();

  auto* tightspan = app.add_subcommand("tightspan", "Tight-span operations");
  tightspan->add_option("FILE", o.file, "Document")->required();
  auto* mode = tightspan->add_option_group("mode");
  mode->add_flag("--enumerate", o.enumerate, "Vertices and bounded faces of the tight span");
  mode->add_option("--member", o.member, "Test membership of a point file");
  mode->add_option("--minimize", o.minimize_file, "Lower a point file onto the tight span");
  mode->add_option("--kappa", o.kappa_element, "The kappa image of an element");
  mode->add_flag("--counterexamples", o.counterexamples, "Triples where kappa fails to preserve joins");
  mode->require_option(1);
  tightspan->add_option("--max-elements", o.max_elements, "Largest lattice --enumerate accepts")
      ->check(CLI::Range(1, 14));

  auto* render = app.add_subcommand("render", "Hasse diagram in DOT format");
  render->add_option("FILE", o.file, "Document")->required();
  render->add_option("-o,--output", o.output, "Output file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (metric->parsed()) return cmd_metric(o, out);
    if (nway->parsed()) return cmd_nway(o, out);
    if (birkhoff->parsed()) return cmd_birkhoff(o, out);
    if (tightspan->parsed()) return cmd_tightspan(o, out);
    if (render->parsed()) return cmd_render(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const ParseError& e) {
    err << o.file << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace latdiv
