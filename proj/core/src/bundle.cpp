#include "sporgen/bundle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <memory>

#include <nlohmann/json.hpp>

#include "sporgen/error.hpp"
#include "sporgen/perm_io.hpp"
#include "sporgen/wordprog.hpp"

#ifndef SPORGEN_DATA_DIR
#define SPORGEN_DATA_DIR "data"
#endif

namespace sporgen {

namespace fs = std::filesystem;

namespace {

nlohmann::json load_json(const fs::path& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": JSON parse error at byte " + std::to_string(e.byte));
  }
}

BigInt json_integer(const nlohmann::json& v) {
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  if (v.is_number_integer()) return BigInt(v.dump());
  throw ParseError("expected an integer or a decimal string");
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

fs::path data_directory() {
  if (const char* env = std::getenv("SPORGEN_DATA"); env && *env) return env;
  return SPORGEN_DATA_DIR;
}

fs::path resolve_bundle(std::string_view ref) {
  const fs::path path(ref);
  if (fs::is_regular_file(path)) return path;
  if (fs::is_directory(path)) return path / "bundle.json";
  const fs::path named = data_directory() / "groups" / lower(ref) / "bundle.json";
  if (fs::is_regular_file(named)) return named;
  // Names such as "L2(11)" map to directory psl2_11 only through the file.
  const fs::path groups = data_directory() / "groups";
  if (fs::is_directory(groups)) {
    for (const auto& entry : fs::directory_iterator(groups)) {
      const fs::path candidate = entry.path() / "bundle.json";
      if (!fs::is_regular_file(candidate)) continue;
      try {
        if (lower(load_json(candidate).value("name", "")) == lower(ref)) return candidate;
      } catch (const Error&) {
      }
    }
  }
  throw Error("no group bundle '" + std::string(ref) + "' (searched " + groups.string() + ")");
}

GroupBundle load_bundle(std::string_view ref) {
  const fs::path file = resolve_bundle(ref);
  const auto doc = load_json(file);
  GroupBundle bundle;
  bundle.directory = file.parent_path();
  try {
    bundle.name = doc.at("name").get<std::string>();
    bundle.generators = load_perm_file(bundle.directory / doc.at("generators").get<std::string>());
    if (doc.contains("order")) bundle.declared_order = json_integer(doc["order"]);
    if (doc.contains("class_data")) {
      bundle.class_data = load_class_data(bundle.directory / doc["class_data"].get<std::string>());
    }
    if (doc.contains("maximals")) {
      bundle.maximals = load_maximal_records(bundle.directory / doc["maximals"].get<std::string>());
    }
    if (doc.contains("character_table")) {
      bundle.character_table = bundle.directory / doc["character_table"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  if (bundle.generators.empty()) throw Error(file.string() + ": no generators");
  for (const auto& g : bundle.generators) {
    if (g.degree() != bundle.generators[0].degree()) throw Error(file.string() + ": generator degrees differ");
  }
  return bundle;
}

StabilizerChain bundle_chain(const GroupBundle& bundle, std::uint64_t seed) {
  auto chain = build_chain(bundle.generators, seed);
  if (bundle.declared_order && *bundle.declared_order != chain.order()) {
    throw IntegrityError(bundle.name + ": generators give order " + to_string(chain.order()) + ", declared " +
                         to_string(*bundle.declared_order));
  }
  return chain;
}

std::vector<MaximalSubgroupRecord> load_maximal_records(const fs::path& path) {
  const auto doc = load_json(path);
  const fs::path dir = path.parent_path();
  std::vector<MaximalSubgroupRecord> records;
  std::shared_ptr<const WordProgram> program;
  try {
    if (doc.contains("program")) {
      program = std::make_shared<const WordProgram>(load_program(dir / doc["program"].get<std::string>()));
    }
    for (const auto& entry : doc.at("records")) {
      MaximalSubgroupRecord r;
      r.name = entry.at("name").get<std::string>();
      r.order = json_integer(entry.at("order"));
      if (entry.contains("emission")) {
        if (!program) throw ParseError(path.string() + ": record '" + r.name + "' needs a program");
        r.program = program;
        r.emission = entry["emission"].get<std::size_t>();
      } else if (entry.contains("generators")) {
        r.generators = load_perm_file(dir / entry["generators"].get<std::string>());
      } else if (entry.contains("census")) {
        OrderCensus census;
        census.group_order = r.order;
        for (const auto& [key, value] : entry["census"].items()) {
          census.counts[std::stoull(key)] = json_integer(value);
        }
        r.census = std::move(census);
      } else {
        throw ParseError(path.string() + ": record '" + r.name + "' has no emission, generators or census");
      }
      records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError(path.string() + ": census keys must be element orders");
  }
  return records;
}

}  // namespace sporgen
