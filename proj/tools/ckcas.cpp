#include "ckcas/ckcas.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ckcas;

namespace {

constexpr int kUsageError = 2;
constexpr int kVerificationFailure = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  std::string omega;
  std::string name;
  std::string format = "text";
  std::vector<std::string> set;
  std::uint64_t seed = 1;
  std::string out;
  bool named_omega = false;
  bool expand = false;
  int trials = 20;
  std::string input;
};

struct Target {
  OmegaSpec spec;
  std::vector<GeneratorAlias> aliases;
  Assignment defaults;  // kinematical entries: the point inside the symbolic pattern
  bool kinematical = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

OmegaSpec parse_omega(const std::string& text, int n) {
  if (text == "symbolic") {
    if (n < 1) throw UsageError("--omega symbolic requires --n");
    return OmegaSpec::symbolic(n);
  }
  std::vector<OmegaEntry> entries;
  for (const auto& tok : split(text, ',')) {
    if (tok == "k" || tok == "kappa") entries.push_back(OmegaEntry::symbolic(SymbolKind::kappa));
    else if (tok == "-1/c2") entries.push_back(OmegaEntry::symbolic(SymbolKind::inverse_c_squared));
    else if (tok == "s" || tok == "symbolic") entries.push_back(OmegaEntry::symbolic());
    else entries.push_back(OmegaEntry::fixed(parse_rational(tok)));
  }
  if (entries.empty()) throw UsageError("empty --omega list");
  if (n > 0 && static_cast<int>(entries.size()) != n)
    throw UsageError("--omega has " + std::to_string(entries.size()) + " entries but --n is " + std::to_string(n));
  return OmegaSpec(std::move(entries));
}

bool uses_kinematical_symbols(const OmegaSpec& spec) {
  for (const auto& e : spec.entries())
    if (e.is_symbolic() && e.kind() != SymbolKind::plain) return true;
  return false;
}

Target resolve_target(const Options& o) {
  if (!o.name.empty() && !o.omega.empty()) throw UsageError("give either --name or --omega, not both");
  Target t;
  if (!o.name.empty()) {
    auto entry = resolve(o.name, o.n > 0 ? o.n : 4);
    t.spec = entry.spec;
    t.aliases = entry.aliases;
    if (entry.kinematics) {
      t.kinematical = true;
      t.defaults = entry.kinematics->assignment();
    }
    return t;
  }
  if (o.omega.empty()) throw UsageError("one of --name or --omega is required");
  t.spec = parse_omega(o.omega, o.n);
  if (t.spec.n() == 4 && uses_kinematical_symbols(t.spec)) t.aliases = kinematical_aliases();
  return t;
}

/// --set k=0,c=inf,w3=1/2 as an assignment on 1-based ω indices.
Assignment parse_set(const std::vector<std::string>& items, int n) {
  Assignment a;
  for (const auto& group : items)
    for (const auto& item : split(group, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects VAR=VALUE, got '" + item + "'");
      std::string var = item.substr(0, eq), val = item.substr(eq + 1);
      if (var == "k" || var == "kappa") {
        a[1] = parse_rational(val);
      } else if (var == "c") {
        if (n < 2) throw UsageError("c needs n >= 2");
        if (val == "inf") {
          a[2] = 0;
        } else {
          Rational c = parse_rational(val);
          if (c == 0) throw UsageError("c must be nonzero");
          a[2] = Rational(-1) / (c * c);
        }
      } else if (var.size() > 1 && var[0] == 'w') {
        a[std::stoi(var.substr(1))] = parse_rational(val);
      } else {
        throw UsageError("unknown variable '" + var + "' in --set");
      }
    }
  return a;
}

RenderOptions render_options(const Options& o, const Target& t) {
  RenderOptions r;
  r.format = parse_format(o.format);
  r.named_omega = o.named_omega;
  r.aliases = t.aliases;
  return r;
}

std::string casimir_text(const OmegaSpec& spec, const CasimirSet& set, const WSymbols& table, const RenderOptions& r,
                         bool expand) {
  std::ostringstream out;
  const bool latex = r.format == Format::latex;
  auto label = [&](const std::string& name) {
    if (!latex) return name;
    return name == "C" ? std::string("\\mathcal{C}") : "\\mathcal{C}_{" + name.substr(1) + "}";
  };
  std::vector<WIndexSet> used;
  for (const auto& c : set.even_order) {
    out << label(c.name) << " = " << (expand ? render(spec, c.element, r) : render_squares(spec, c.squares, r)) << "\n";
    for (const auto& t : c.squares)
      if (t.index_set.order() > 1 && std::find(used.begin(), used.end(), t.index_set) == used.end()) used.push_back(t.index_set);
  }
  if (set.extra) out << label("C") << " = " << render(spec, set.extra->element, r) << "\n";
  if (!expand)
    for (const auto& ix : used) out << w_name(ix, r) << " = " << render(spec, table.get(ix), r) << "\n";
  return out.str();
}

int cmd_generate(const Options& o, std::ostream& out) {
  Target t = resolve_target(o);
  Algebra alg(t.spec);
  WSymbols table(alg);
  CasimirSet set = casimir_set(table);
  RenderOptions r = render_options(o, t);
  if (r.format == Format::json) out << casimir_set_to_json(set).dump(2) << "\n";
  else out << casimir_text(t.spec, set, table, r, o.expand);
  return 0;
}

/// Elements from a file written by generate --format json, or a single exported element.
std::pair<OmegaSpec, std::vector<std::pair<std::string, Element>>> read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  ordered_json j = ordered_json::parse(in);
  if (j.contains("casimirs")) return {omega_from_json(j.at("omega")), casimir_elements_from_json(j)};
  auto [spec, u] = element_from_json(j);
  return {spec, {{"input", u}}};
}

int cmd_verify(const Options& o, std::ostream& out) {
  CentralityReport report;
  OmegaSpec spec;
  if (!o.input.empty()) {
    if (!o.name.empty() || !o.omega.empty()) throw UsageError("--input carries its own omega; drop --name and --omega");
    auto [s, elements] = read_input(o.input);
    spec = s;
    Algebra alg(spec);
    for (const auto& [name, u] : elements) {
      auto r = is_central(alg, u);
      report.entries.push_back({name, r.central, r.witness, std::move(r.remainder)});
    }
  } else {
    spec = resolve_target(o).spec;
    report = verify_centrality(Algebra(spec));
  }
  const Format f = parse_format(o.format);
  if (f == Format::json) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) entries.push_back({{"name", e.name}, {"central", e.central}});
    out << ordered_json{{"central", report.passed()}, {"total", report.entries.size()}, {"entries", entries}}.dump(2) << "\n";
  } else {
    for (const auto& e : report.entries)
      out << e.name << ": " << (e.central ? "central" : "not central (witness Ω" + e.witness->label() + ")") << "\n";
    out << report.passed() << "/" << report.entries.size() << " central\n";
  }
  if (!report.all_central()) {
    for (const auto& e : report.entries) {
      if (e.central) continue;
      std::cerr << ordered_json{{"error", "verification"},
                                {"casimir", e.name},
                                {"witness", {e.witness->a(), e.witness->b()}},
                                {"remainder", element_to_json(spec, e.remainder)}}
                       .dump()
                << "\n";
      break;
    }
    return kVerificationFailure;
  }
  return 0;
}

int cmd_contract(const Options& o, std::ostream& out) {
  Target t = resolve_target(o);
  OmegaSpec base = t.spec;
  Assignment a = parse_set(o.set, base.n());
  if (t.kinematical) {
    base = kinematical_pattern();
    for (const auto& [k, v] : t.defaults) a.try_emplace(k, v);
  }
  if (a.empty()) throw UsageError("contract needs --set VAR=VALUE");
  base.validate(a);
  RenderOptions r = render_options(o, t);
  if (t.kinematical && r.format != Format::json) {
    KinematicalFamily fam;
    out << kinematical_block(fam, a, r);
    return 0;
  }
  Algebra alg(base);
  WSymbols table(alg);
  CasimirSet set = casimir_set(table);
  const OmegaSpec contracted = base.substituted(a);
  CasimirSet result{contracted, {}, std::nullopt};
  for (const auto* c : set.all()) {
    CasimirInvariant k = *c;
    k.squares = substitute_squares(c->squares, a);
    k.element = substitute(alg, c->element, a);
    if (c->linear) result.extra = std::move(k);
    else result.even_order.push_back(std::move(k));
  }
  if (r.format == Format::json) {
    out << casimir_set_to_json(result).dump(2) << "\n";
    return 0;
  }
  Algebra calg(contracted);
  WSymbols ctable(calg);
  out << casimir_text(contracted, result, ctable, r, o.expand);
  return 0;
}

int cmd_rank(const Options& o, std::ostream& out) {
  Target t = resolve_target(o);
  Algebra alg(t.spec);
  auto r = mg_rank(alg, o.seed);
  const std::size_t count = static_cast<std::size_t>((alg.n() + 1) / 2);
  if (parse_format(o.format) == Format::json) {
    out << ordered_json{{"dimension", r.dimension}, {"rank", r.rank}, {"trial_ranks", r.trial_ranks},
                        {"tau", r.tau()}, {"casimirs", count}}
               .dump(2)
        << "\n";
  } else {
    out << "dimension " << r.dimension << "\nrank " << r.rank << "\ntau " << r.tau() << "\ncasimirs " << count << "\n";
  }
  return 0;
}

int cmd_gelfand_check(const Options& o, std::ostream& out) {
  Target t = resolve_target(o);
  std::mt19937_64 rng(o.seed);
  OmegaSpec spec = t.spec;
  for (const auto& e : spec.entries())
    if (e.is_fixed() && e.value() == 0) throw UsageError("gelfand-check needs every omega nonzero");
  bool ok = true;
  std::size_t w_sets = 0, w_ok = 0, odd_ok = 0, odd_total = 0;
  const int n = spec.n();
  for (int trial = 0; trial < o.trials; ++trial) {
    Algebra alg(spec.all_fixed() ? spec : OmegaSpec::fixed(sample_omega(spec, rng, 5)));
    WSymbols table(alg);
    auto alpha = AlphaAssignment::random(n, rng);
    for (std::size_t s = 1; 2 * s <= static_cast<std::size_t>(n + 1); ++s)
      for (const auto& ix : index_sets(n, s)) {
        ++w_sets;
        w_ok += w_squared_identity_check(table, alpha, ix).holds() ? 1 : 0;
      }
    for (int size = 1; size <= n + 1; size += 2) {
      std::vector<int> subset;
      for (int i = 0; i <= n && static_cast<int>(subset.size()) < size; ++i) subset.push_back(i);
      std::shuffle(subset.begin(), subset.end(), rng);
      std::sort(subset.begin(), subset.end());
      ++odd_total;
      odd_ok += determinant(t_matrix(alg, alpha, subset)) == 0 ? 1 : 0;
    }
  }
  ok = ok && w_ok == w_sets && odd_ok == odd_total;

  Algebra alg(spec.all_fixed() ? spec : OmegaSpec::fixed(sample_omega(spec, rng, 5)));
  WSymbols table(alg);
  auto classical = gelfand_classical_casimirs(alg);
  std::size_t central = 0;
  for (const auto& c : classical) central += is_central(alg, c).central ? 1 : 0;
  ok = ok && central == classical.size();
  std::optional<Rational> scale1, scale_extra;
  if (n >= 2) scale1 = proportionality(classical.front(), casimir_s(table, 1));
  if (n % 2 == 1) scale_extra = proportionality(classical.back(), casimir_extra(table));

  if (parse_format(o.format) == Format::json) {
    ordered_json j{{"w_squared", {{"passed", w_ok}, {"total", w_sets}}},
                   {"odd_minors", {{"passed", odd_ok}, {"total", odd_total}}},
                   {"classical_central", {{"passed", central}, {"total", classical.size()}}}};
    if (scale1) j["scale_C1"] = to_string(*scale1);
    if (scale_extra) j["scale_C"] = to_string(*scale_extra);
    out << j.dump(2) << "\n";
  } else {
    out << "w-squared identity: " << w_ok << "/" << w_sets << "\n";
    out << "odd minors zero: " << odd_ok << "/" << odd_total << "\n";
    out << "classical invariants central: " << central << "/" << classical.size() << "\n";
    if (scale1) out << "trace form / C1 = " << to_string(*scale1) << "\n";
    if (scale_extra) out << "epsilon form / C = " << to_string(*scale_extra) << "\n";
  }
  if (!ok) {
    std::cerr << ordered_json{{"error", "verification"}, {"check", "gelfand"}}.dump() << "\n";
    return kVerificationFailure;
  }
  return 0;
}

int cmd_table1(const Options& o, std::ostream& out) {
  RenderOptions r;
  r.format = parse_format(o.format);
  if (r.format == Format::json) throw UsageError("table1 supports text and latex");
  KinematicalFamily fam;
  out << table1_text(fam, r);
  return 0;
}

std::string omega_label(const OmegaSpec& spec) {
  std::string s = "(";
  for (int a = 1; a <= spec.n(); ++a) {
    if (a > 1) s += ",";
    s += to_string(spec.entry(a).value());
  }
  return s + ")";
}

int cmd_catalog(const Options& o, std::ostream& out) {
  const int n = o.n > 0 ? o.n : 4;
  std::vector<AlgebraEntry> entries;
  for (const auto& name : catalog_names()) {
    if (name == "so(p,q)") {
      for (int p = n + 1; p >= 1; --p) entries.push_back(resolve("so(" + std::to_string(p) + "," + std::to_string(n + 1 - p) + ")", n));
      continue;
    }
    if (name == "iso(p,q)") {
      for (int p = n; p >= 1; --p) entries.push_back(resolve("iso(" + std::to_string(p) + "," + std::to_string(n - p) + ")", n));
      continue;
    }
    try {
      entries.push_back(resolve(name, n));
    } catch (const std::out_of_range&) {
    }
  }
  if (parse_format(o.format) == Format::json) {
    ordered_json list = ordered_json::array();
    for (const auto& e : entries) {
      ordered_json alts = ordered_json::array();
      for (const auto& a : e.alternates) alts.push_back(omega_to_json(a));
      ordered_json j{{"name", e.name}, {"structure", e.structure}, {"n", e.n}, {"omega", omega_to_json(e.spec)}};
      if (!alts.empty()) j["alternates"] = alts;
      if (!e.aliases.empty()) {
        ordered_json al = ordered_json::object();
        for (const auto& a : e.aliases) al[a.name] = (a.sign < 0 ? "-O" : "O") + a.gen.label();
        j["aliases"] = al;
      }
      list.push_back(j);
    }
    out << list.dump(2) << "\n";
    return 0;
  }
  for (const auto& e : entries) {
    out << e.name << " " << e.structure << " " << omega_label(e.spec);
    for (const auto& a : e.alternates) out << " " << omega_label(a);
    out << "\n";
  }
  return 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "N of so(N+1)")->check(CLI::Range(1, 64));
  sub->add_option("--omega", o.omega, "comma list of rationals, k, -1/c2, s; or 'symbolic'");
  sub->add_option("--name", o.name, "named algebra from the catalog");
  sub->add_option("--format", o.format, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));
  sub->add_option("--set", o.set, "VAR=VALUE,... with VAR in k, c, w1..wN")->delimiter(',');
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--out", o.out, "write output to a file");
  sub->add_flag("--named-omega", o.named_omega, "print omega products as omega_ab");
  sub->add_flag("--expand", o.expand, "print the PBW expansion of every Casimir");
  sub->add_option("--input", o.input, "verify: JSON written by generate --format json");
  sub->add_option("--trials", o.trials, "random draws for gelfand-check")->check(CLI::Range(1, 100000));
}

void usage_error(const std::string& message) {
  std::cerr << ordered_json{{"error", "usage"}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir invariants of Cayley-Klein algebras so_w(N+1)"};
  app.require_subcommand(1);
  Options o;
  using Handler = int (*)(const Options&, std::ostream&);
  struct Command {
    const char* name;
    const char* help;
    Handler handler;
  };
  const std::vector<Command> commands{
      {"generate", "print the Casimir invariants", cmd_generate},
      {"verify", "check that every invariant is central", cmd_verify},
      {"contract", "substitute values into the symbolic invariants", cmd_contract},
      {"rank", "rank of the commutator matrix and the bound on independent invariants", cmd_rank},
      {"gelfand-check", "compare with the matrix construction", cmd_gelfand_check},
      {"table1", "invariants of the six kinematical algebras", cmd_table1},
      {"catalog", "list the named algebras", cmd_catalog},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& [name, help, h] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    subs.emplace_back(sub, h);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    usage_error(e.what());
    return kUsageError;
  }

  try {
    for (const auto& [sub, handler] : subs) {
      if (!sub->parsed()) continue;
      std::ostringstream buffer;
      int code = handler(o, buffer);
      if (o.out.empty()) {
        std::cout << buffer.str();
      } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw UsageError("cannot open " + o.out);
        f << buffer.str();
      }
      return code;
    }
  } catch (const UsageError& e) {
    usage_error(e.what());
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    usage_error(e.what());
    return kUsageError;
  } catch (const std::out_of_range& e) {
    usage_error(e.what());
    return kUsageError;
  } catch (const std::domain_error& e) {
    usage_error(e.what());
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    usage_error(e.what());
    return kUsageError;
  }
  return kUsageError;
}
