#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sporgen/bundle.hpp"
#include "sporgen/census.hpp"
#include "sporgen/character_table.hpp"
#include "sporgen/error.hpp"
#include "sporgen/genprob.hpp"
#include "sporgen/maxbound.hpp"
#include "sporgen/perm_io.hpp"
#include "sporgen/report.hpp"
#include "sporgen/wordprog.hpp"

namespace sporgen {

namespace {

constexpr std::uint64_t kTablePrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::uint64_t limit = 100'000'000;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out;
  std::string format = "csv";
  std::string checkpoint;
  bool naive = false;
};

class Emitter {
 public:
  Emitter(const GlobalOptions& g, std::ostream& out) : g_(g), out_(out) {}

  void table(const TextTable& t) {
    const auto format = g_.format == "json" ? ReportFormat::Json : ReportFormat::Csv;
    if (g_.out.empty()) {
      write_table(out_, t, format);
      return;
    }
    std::ofstream file(g_.out);
    if (!file) throw Error("cannot write " + g_.out);
    write_table(file, t, format);
  }

 private:
  const GlobalOptions& g_;
  std::ostream& out_;
};

CharacterTable read_table_unchecked(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return table_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": JSON parse error at byte " + std::to_string(e.byte));
  }
}

GenProbOptions genprob_options(const GlobalOptions& g) {
  GenProbOptions o;
  o.threads = g.threads;
  o.seed = g.seed;
  o.limit = g.limit;
  if (!g.checkpoint.empty()) o.checkpoint = g.checkpoint;
  return o;
}

GenerationResult run_genprob(const GroupBundle& bundle, const StabilizerChain& chain, std::uint64_t r,
                             std::uint64_t s, const GlobalOptions& g) {
  const auto options = genprob_options(g);
  if (g.naive) {
    const auto census = order_census(chain, g.limit, g.threads);
    const BigInt total = pair_count(census, r, census, s);
    if (total == 0) throw Error(bundle.name + ": no elements of the given orders");
    const auto count = generating_pair_count_naive(chain, r, s, options);
    GenerationResult res;
    res.r = r;
    res.s = s;
    res.generating_pairs = count.generating_pairs;
    res.total_pairs = total;
    res.probability = Rational(count.generating_pairs, total);
    res.probability.canonicalize();
    res.decimal5 = format_decimal(res.probability, 5);
    return res;
  }
  const auto classes = conjugacy_classes(chain, g.limit);
  return gen_probability(chain, classes, r, s, options);
}

OrderCensus bundle_census(const GroupBundle& bundle, const StabilizerChain* chain, const GlobalOptions& g,
                          bool from_classes) {
  if (!from_classes && chain && chain->order() <= from_u64(g.limit)) {
    return order_census(*chain, g.limit, g.threads);
  }
  if (bundle.class_data) {
    if (!bundle.class_data->complete) throw Error(bundle.name + ": class data is incomplete");
    return census_from_table(*bundle.class_data);
  }
  if (from_classes) throw Error(bundle.name + ": bundle has no class data");
  throw LimitExceeded(bundle.name + ": group order exceeds --limit and no class data is available");
}

BoundResult run_bound(const GroupBundle& bundle, const StabilizerChain& chain, std::uint64_t p,
                      const GlobalOptions& g) {
  if (bundle.maximals.empty()) throw Error(bundle.name + ": bundle lists no maximal subgroups");
  const auto census = bundle_census(bundle, &chain, g, false);
  const auto censuses = subgroup_censuses(bundle.maximals, chain, g.limit, g.threads);
  return lower_bound(census, bundle.maximals, censuses, p);
}

// Class data given directly (a file with "classes", or a name under
// <data>/classdata) for groups shipped without generators.
std::optional<ConjugacyClassData> standalone_class_data(const std::string& ref) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(ref)) {
    const auto doc = nlohmann::json::parse(read_text_file(ref), nullptr, false);
    if (!doc.is_discarded() && doc.contains("classes")) return load_class_data(ref);
    return std::nullopt;
  }
  if (fs::is_directory(ref)) return std::nullopt;
  try {
    resolve_bundle(ref);
    return std::nullopt;
  } catch (const Error&) {
  }
  std::string name = ref;
  for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const fs::path path = data_directory() / "classdata" / (name + ".json");
  if (fs::is_regular_file(path)) return load_class_data(path);
  return std::nullopt;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact (2,p)-generation statistics for finite permutation groups", "sporgen"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for randomized chain construction");
  app.add_option("--limit", g.limit, "Largest group order to enumerate");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--checkpoint", g.checkpoint, "genprob checkpoint file");
  app.add_flag("--naive", g.naive, "genprob: test every pair instead of class representatives");

  std::string bundle_ref, table_path, program_path, maxes_path, i_ref, j_ref, k_ref, witness_ref;
  std::vector<std::string> bundle_refs, involution_refs;
  std::uint64_t r = 2, s = 0, p = 0;
  std::string phi_p, phi_q;
  std::uint32_t phi_n = 0;
  bool from_classes = false, contributions = false, lenient = false;

  auto* census_cmd = app.add_subcommand("census", "Element-order census of a group");
  census_cmd->add_option("bundle", bundle_ref, "Group bundle (name, directory or bundle.json)")->required();
  census_cmd->add_flag("--classes", from_classes, "Use the bundle's class data instead of enumerating");

  auto* genprob_cmd = app.add_subcommand("genprob", "Exact proportion of (r,s) pairs generating the group");
  genprob_cmd->add_option("bundle", bundle_ref)->required();
  genprob_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  genprob_cmd->add_option("--s", s)->required()->check(CLI::PositiveNumber);

  auto* bound_cmd = app.add_subcommand("bound", "Maximal-subgroup lower bound on the (2,p) proportion");
  bound_cmd->add_option("bundle", bundle_ref)->required();
  bound_cmd->add_option("--p", p)->required()->check(CLI::PositiveNumber);
  bound_cmd->add_flag("--contributions", contributions, "List the term of every maximal class");

  auto* cmc_cmd = app.add_subcommand("cmc", "Class multiplication coefficient");
  cmc_cmd->add_option("table", table_path)->required();
  cmc_cmd->add_option("-i", i_ref, "Class index (1-based) or name")->required();
  cmc_cmd->add_option("-j", j_ref)->required();
  cmc_cmd->add_option("-k", k_ref)->required();

  auto* scan_cmd = app.add_subcommand("cmc-scan", "Class multiplication coefficients (i, j, k) for every j");
  scan_cmd->add_option("table", table_path)->required();
  scan_cmd->add_option("-i", i_ref)->required();
  scan_cmd->add_option("-k", k_ref)->required();

  auto* ortho_cmd = app.add_subcommand("orthocheck", "Validate a character table");
  ortho_cmd->add_option("table", table_path)->required();

  auto* slp_cmd = app.add_subcommand("slp", "Word programs");
  slp_cmd->require_subcommand(1);
  auto* slp_run = slp_cmd->add_subcommand("run", "Evaluate a program on a bundle's first two generators");
  slp_run->add_option("program", program_path)->required();
  slp_run->add_option("bundle", bundle_ref)->required();
  slp_run->add_flag("--lenient", lenient, "Skip unsupported statements instead of failing");

  auto* phi_cmd = app.add_subcommand("phi-filter", "n <= N with p dividing Phi_n(q)");
  phi_cmd->add_option("-p", phi_p)->required();
  phi_cmd->add_option("-q", phi_q)->required();
  phi_cmd->add_option("-N", phi_n)->required();

  auto* report_cmd = app.add_subcommand("report", "Results tables over several groups");
  report_cmd->require_subcommand(1);
  auto* table1_cmd = report_cmd->add_subcommand("table1", "Exact (2,p) proportions");
  table1_cmd->add_option("bundles", bundle_refs)->required();
  auto* table2_cmd = report_cmd->add_subcommand("table2", "Maximal-subgroup lower bounds");
  table2_cmd->add_option("bundles", bundle_refs)->required();

  auto* cert_cmd = app.add_subcommand("certificate", "Character-table generation argument");
  cert_cmd->add_option("table", table_path)->required();
  cert_cmd->add_option("--witness", witness_ref, "Class whose order only few maximals divide")->required();
  cert_cmd->add_option("--involutions", involution_refs, "Involution classes to scan")->required();
  cert_cmd->add_option("--maxes", maxes_path, "Maximal subgroup orders (JSON)")->required();
  cert_cmd->add_option("--p", p, "Element order of the second generator")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Emitter emit(g, out);
  try {
    if (census_cmd->parsed()) {
      if (const auto data = standalone_class_data(bundle_ref)) {
        const auto census = census_from_table(*data);
        check_census(census);
        TextTable t{{"order", "count"}, {}};
        for (const auto& [order, count] : census.counts) t.rows.push_back({std::to_string(order), to_string(count)});
        emit.table(t);
        return 0;
      }
      const auto bundle = load_bundle(bundle_ref);
      std::optional<StabilizerChain> chain;
      if (!from_classes) chain = bundle_chain(bundle, g.seed);
      const auto census = bundle_census(bundle, chain ? &*chain : nullptr, g, from_classes);
      check_census(census);
      TextTable t{{"order", "count"}, {}};
      for (const auto& [order, count] : census.counts) t.rows.push_back({std::to_string(order), to_string(count)});
      emit.table(t);
    } else if (genprob_cmd->parsed()) {
      const auto bundle = load_bundle(bundle_ref);
      const auto chain = bundle_chain(bundle, g.seed);
      const auto res = run_genprob(bundle, chain, r, s, g);
      emit.table({{"group", "r", "s", "generating_pairs", "total_pairs", "value", "decimal5"},
                  {{bundle.name, std::to_string(res.r), std::to_string(res.s), to_string(res.generating_pairs),
                    to_string(res.total_pairs), to_string(res.probability), res.decimal5}}});
    } else if (bound_cmd->parsed()) {
      const auto bundle = load_bundle(bundle_ref);
      const auto chain = bundle_chain(bundle, g.seed);
      const auto res = run_bound(bundle, chain, p, g);
      if (contributions) {
        TextTable t{{"subgroup", "index", "pairs", "term"}, {}};
        for (const auto& c : res.contributions) {
          t.rows.push_back({c.name, to_string(c.index), to_string(c.pairs), to_string(c.term)});
        }
        emit.table(t);
      } else {
        emit.table(report_table({{bundle.name, p, ReportRow::Kind::Bound, res.bound}}));
      }
    } else if (cmc_cmd->parsed()) {
      const auto table = load_character_table(table_path);
      const auto i = table.class_index(i_ref), j = table.class_index(j_ref), k = table.class_index(k_ref);
      emit.table({{"i", "j", "k", "value"},
                  {{table.classes[i - 1].name, table.classes[j - 1].name, table.classes[k - 1].name,
                    to_string(cmc(table, i, j, k))}}});
    } else if (scan_cmd->parsed()) {
      const auto table = load_character_table(table_path);
      const auto i = table.class_index(i_ref), k = table.class_index(k_ref);
      const auto scan = cmc_scan(table, i, k, g.threads);
      TextTable t{{"j", "class", "value", "nonzero"}, {}};
      for (const auto& e : scan.entries) {
        t.rows.push_back({std::to_string(e.j), table.classes[e.j - 1].name, to_string(e.value),
                          e.nonzero ? "true" : "false"});
      }
      emit.table(t);
    } else if (ortho_cmd->parsed()) {
      const auto table = read_table_unchecked(table_path);
      const auto report = validate(table);
      if (!report.ok()) {
        for (const auto& f : report.failures) err << f << "\n";
        err << table_path << ": invalid character table\n";
        return 1;
      }
      out << table.name << ": " << table.class_count() << " classes, orthogonality holds\n";
    } else if (slp_run->parsed()) {
      const auto program = load_program(program_path, lenient);
      for (const auto& skipped : program.skipped) {
        err << "skipped line " << skipped.line << ": " << skipped.text << "\n";
      }
      const auto bundle = load_bundle(bundle_ref);
      if (bundle.generators.size() < 2) throw Error(bundle.name + ": word programs need two generators");
      const auto chain = bundle_chain(bundle, g.seed);
      const auto emitted = evaluate(program, bundle.generators[0], bundle.generators[1]);
      TextTable t{{"emission", "order_a", "order_b", "subgroup_order"}, {}};
      for (std::size_t n = 0; n < emitted.size(); ++n) {
        const auto& [a, b] = emitted[n];
        ChainOptions options;
        options.seed = g.seed;
        options.base_prefix = chain.base();
        const std::vector<Permutation> pair{a, b};
        const auto sub = StabilizerChain::build(pair, options);
        t.rows.push_back({std::to_string(n + 1), std::to_string(element_order(a)), std::to_string(element_order(b)),
                          to_string(sub.order())});
      }
      emit.table(t);
    } else if (phi_cmd->parsed()) {
      const auto hits = phi_divisibility(parse_bigint(phi_p), parse_bigint(phi_q), phi_n);
      TextTable t{{"n"}, {}};
      for (auto n : hits) t.rows.push_back({std::to_string(n)});
      emit.table(t);
    } else if (table1_cmd->parsed() || table2_cmd->parsed()) {
      const bool exact = table1_cmd->parsed();
      std::vector<ReportRow> rows;
      for (const auto& ref : bundle_refs) {
        const auto bundle = load_bundle(ref);
        const auto chain = bundle_chain(bundle, g.seed);
        const auto census = bundle_census(bundle, &chain, g, false);
        for (auto q : kTablePrimes) {
          ReportRow row{bundle.name, q, ReportRow::Kind::NotApplicable, std::nullopt};
          if (census.count(q) != 0) {
            if (exact) {
              row.kind = ReportRow::Kind::Exact;
              row.value = run_genprob(bundle, chain, 2, q, g).probability;
            } else {
              row.kind = ReportRow::Kind::Bound;
              row.value = run_bound(bundle, chain, q, g).bound;
            }
          }
          rows.push_back(std::move(row));
        }
      }
      emit.table(report_table(rows));
    } else if (cert_cmd->parsed()) {
      const auto table = load_character_table(table_path);
      std::vector<std::size_t> involutions;
      for (const auto& ref : involution_refs) involutions.push_back(table.class_index(ref));
      const auto cert = generation_certificate(table, involutions, table.class_index(witness_ref),
                                               load_subgroup_orders(maxes_path), p, g.threads);
      TextTable t{{"class", "element_order"}, {}};
      for (const auto& scan : cert.scans) t.columns.push_back(table.classes[scan.i - 1].name);
      for (std::size_t j = 1; j <= table.class_count(); ++j) {
        if (table.classes[j - 1].element_order != p) continue;
        std::vector<std::string> row{table.classes[j - 1].name, std::to_string(p)};
        for (const auto& scan : cert.scans) row.push_back(to_string(scan.entries[j - 1].value));
        t.rows.push_back(std::move(row));
      }
      emit.table(t);
      err << cert.explanation << "\n";
      if (cert.surviving_subgroups.size() != 1) {
        err << "no single surviving maximal class; no certificate\n";
      } else {
        err << cert.good_classes.size() << " class(es) of order " << p << " pass\n";
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace sporgen
