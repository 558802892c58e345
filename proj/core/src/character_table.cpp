#include "sporgen/character_table.hpp"

#include <algorithm>
#include <cctype>
#include <thread>

#include <nlohmann/json.hpp>

#include "sporgen/error.hpp"
#include "sporgen/perm_io.hpp"

namespace sporgen {

namespace {

constexpr std::size_t kMaxReportedFailures = 100;

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void check_index(const CharacterTable& table, std::size_t index, const char* what) {
  if (index < 1 || index > table.class_count()) {
    throw Error(std::string(what) + " class index " + std::to_string(index) + " outside 1.." +
                std::to_string(table.class_count()));
  }
}

}  // namespace

BigInt CharacterTable::class_size(std::size_t index) const {
  return group_order / classes.at(index - 1).centralizer_order;
}

std::size_t CharacterTable::class_index(std::string_view ref) const {
  if (!ref.empty() && std::all_of(ref.begin(), ref.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const std::size_t index = std::stoul(std::string(ref));
    check_index(*this, index, "requested");
    return index;
  }
  const std::string want = lower(ref);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (lower(classes[k].name) == want) return k + 1;
  }
  throw Error("no class named '" + std::string(ref) + "'");
}

ValidationReport validate(const CharacterTable& table) {
  ValidationReport report;
  std::size_t suppressed = 0;
  auto fail = [&](std::string message) {
    if (report.failures.size() < kMaxReportedFailures) {
      report.failures.push_back(std::move(message));
    } else {
      ++suppressed;
    }
  };
  const std::size_t h = table.class_count();
  if (h == 0) {
    fail("table has no classes");
    return report;
  }
  if (table.characters.size() != h) {
    fail("expected " + std::to_string(h) + " characters, found " + std::to_string(table.characters.size()));
    return report;
  }
  for (std::size_t x = 0; x < h; ++x) {
    if (table.characters[x].size() != h) {
      fail("character " + std::to_string(x + 1) + " has " + std::to_string(table.characters[x].size()) +
           " values, expected " + std::to_string(h));
      return report;
    }
  }
  if (table.group_order <= 0) {
    fail("group order must be positive");
    return report;
  }

  // Class data.
  if (table.classes[0].element_order != 1 || table.classes[0].centralizer_order != table.group_order) {
    fail("class 1 is not the identity class");
  }
  BigInt total = 0;
  bool sizes_ok = true;
  for (std::size_t k = 0; k < h; ++k) {
    const auto& c = table.classes[k];
    if (c.centralizer_order <= 0 || table.group_order % c.centralizer_order != 0) {
      fail("centralizer order of class " + std::to_string(k + 1) + " does not divide the group order");
      sizes_ok = false;
      continue;
    }
    total += table.group_order / c.centralizer_order;
  }
  if (sizes_ok && total != table.group_order) {
    fail("class sizes sum to " + to_string(total) + ", expected " + to_string(table.group_order));
  }

  // Degrees.
  BigInt degree_squares = 0;
  bool degrees_ok = true;
  for (std::size_t x = 0; x < h; ++x) {
    const auto d = table.characters[x][0].to_rational();
    if (!d || d->get_den() != 1 || *d <= 0) {
      fail("degree of character " + std::to_string(x + 1) + " is not a positive integer");
      degrees_ok = false;
      continue;
    }
    degree_squares += d->get_num() * d->get_num();
  }
  if (degrees_ok && degree_squares != table.group_order) {
    fail("squared degrees sum to " + to_string(degree_squares) + ", expected " + to_string(table.group_order));
  }

  // Inverse map.
  const auto& inv = table.inverse_map;
  bool inverse_ok = inv.size() == h;
  if (!inverse_ok) {
    fail("inverse map has " + std::to_string(inv.size()) + " entries, expected " + std::to_string(h));
  } else {
    for (std::size_t k = 0; k < h && inverse_ok; ++k) {
      if (inv[k] >= h) {
        fail("inverse map entry " + std::to_string(k + 1) + " out of range");
        inverse_ok = false;
      }
    }
  }
  if (inverse_ok) {
    if (inv[0] != 0) fail("inverse map does not fix class 1");
    for (std::size_t k = 0; k < h; ++k) {
      if (inv[inv[k]] != k) fail("inverse map is not an involution at class " + std::to_string(k + 1));
      if (table.classes[inv[k]].element_order != table.classes[k].element_order ||
          table.classes[inv[k]].centralizer_order != table.classes[k].centralizer_order) {
        fail("class " + std::to_string(k + 1) + " and its inverse class " + std::to_string(inv[k] + 1) +
             " have different orders");
      }
    }
    for (std::size_t x = 0; x < h; ++x) {
      for (std::size_t k = 0; k < h; ++k) {
        if (table.characters[x][inv[k]] != conjugate(table.characters[x][k])) {
          fail("character " + std::to_string(x + 1) + " at inverse class of " + std::to_string(k + 1) +
               " is not the complex conjugate");
        }
      }
    }
  }

  // Column orthogonality: sum_chi chi(k) conj(chi(l)) = delta_kl |C_G(g_k)|.
  for (std::size_t k = 0; k < h; ++k) {
    for (std::size_t l = k; l < h; ++l) {
      CyclotomicTotal sum;
      for (std::size_t x = 0; x < h; ++x) {
        sum.add_product(1, {{&table.characters[x][k], false}, {&table.characters[x][l], true}});
      }
      const auto value = sum.rational_value();
      const Rational expected = k == l ? Rational(table.classes[k].centralizer_order) : Rational(0);
      if (!value || *value != expected) {
        fail("column orthogonality fails for classes " + std::to_string(k + 1) + " and " + std::to_string(l + 1));
      }
    }
  }

  // Row orthogonality: sum_k |C_k| chi_i(k) conj(chi_j(k)) = delta_ij |G|.
  if (sizes_ok) {
    std::vector<Rational> sizes(h);
    for (std::size_t k = 0; k < h; ++k) sizes[k] = table.group_order / table.classes[k].centralizer_order;
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = i; j < h; ++j) {
        CyclotomicTotal sum;
        for (std::size_t k = 0; k < h; ++k) {
          sum.add_product(sizes[k], {{&table.characters[i][k], false}, {&table.characters[j][k], true}});
        }
        const auto value = sum.rational_value();
        const Rational expected = i == j ? Rational(table.group_order) : Rational(0);
        if (!value || *value != expected) {
          fail("row orthogonality fails for characters " + std::to_string(i + 1) + " and " + std::to_string(j + 1));
        }
      }
    }
  }
  if (suppressed) report.failures.push_back("... and " + std::to_string(suppressed) + " more failures");
  return report;
}

CharacterTable table_from_json(const nlohmann::json& doc) {
  CharacterTable table;
  const ConjugacyClassData data = class_data_from_json(doc);
  table.name = data.name;
  table.group_order = data.group_order;
  table.classes = data.classes;
  const std::size_t h = table.classes.size();
  try {
    for (const auto& row : doc.at("characters")) {
      std::vector<Cyclotomic> values;
      values.reserve(row.size());
      for (const auto& v : row) {
        if (v.is_string()) {
          values.push_back(Cyclotomic::parse(v.get<std::string>()));
        } else if (v.is_number_integer()) {
          values.emplace_back(Rational(BigInt(v.dump())));
        } else {
          throw ParseError("character values must be strings or integers");
        }
      }
      table.characters.push_back(std::move(values));
    }
    if (doc.contains("inverse_map")) {
      for (const auto& v : doc.at("inverse_map")) {
        const auto index = v.get<std::int64_t>();
        if (index < 1 || static_cast<std::size_t>(index) > h) throw ParseError("inverse_map entry out of range");
        table.inverse_map.push_back(static_cast<std::size_t>(index - 1));
      }
      return table;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("character table: ") + e.what());
  }

  // Derive the inverse map: g^-1 has the conjugate column.
  for (const auto& row : table.characters) {
    if (row.size() != h) throw ParseError("character rows must have one value per class");
  }
  table.inverse_map.assign(h, 0);
  for (std::size_t k = 0; k < h; ++k) {
    std::vector<Cyclotomic> conj_column;
    for (const auto& row : table.characters) conj_column.push_back(conjugate(row[k]));
    std::size_t matches = 0;
    for (std::size_t l = 0; l < h; ++l) {
      bool same = true;
      for (std::size_t x = 0; x < table.characters.size() && same; ++x) {
        same = table.characters[x][l] == conj_column[x];
      }
      if (same) {
        table.inverse_map[k] = l;
        ++matches;
      }
    }
    if (matches != 1) {
      throw IntegrityError("cannot derive the inverse class of class " + std::to_string(k + 1) +
                           "; supply inverse_map explicitly");
    }
  }
  return table;
}

nlohmann::json table_to_json(const CharacterTable& table) {
  nlohmann::json doc;
  doc["name"] = table.name;
  doc["group_order"] = to_string(table.group_order);
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : table.classes) {
    classes.push_back({{"name", c.name},
                       {"element_order", c.element_order},
                       {"centralizer_order", to_string(c.centralizer_order)}});
  }
  doc["classes"] = classes;
  nlohmann::json inv = nlohmann::json::array();
  for (auto k : table.inverse_map) inv.push_back(k + 1);
  doc["inverse_map"] = inv;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.characters) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : row) values.push_back(v.to_string());
    rows.push_back(values);
  }
  doc["characters"] = rows;
  return doc;
}

CharacterTable load_character_table(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": JSON parse error at byte " + std::to_string(e.byte));
  }
  CharacterTable table = table_from_json(doc);
  const ValidationReport report = validate(table);
  if (!report.ok()) {
    std::string message = path.string() + ": invalid character table";
    for (const auto& f : report.failures) message += "\n  " + f;
    throw IntegrityError(message);
  }
  return table;
}

BigInt cmc(const CharacterTable& table, std::size_t i, std::size_t j, std::size_t k) {
  check_index(table, i, "first");
  check_index(table, j, "second");
  check_index(table, k, "target");
  CyclotomicTotal sum;
  for (const auto& row : table.characters) {
    const auto degree = row[0].to_rational();
    if (!degree || *degree == 0) throw IntegrityError("character degree is not a nonzero rational");
    sum.add_product(Rational(1) / *degree, {{&row[i - 1], false}, {&row[j - 1], false}, {&row[k - 1], true}});
  }
  const auto s = sum.rational_value();
  if (!s) {
    throw IntegrityError("structure constant (" + std::to_string(i) + "," + std::to_string(j) + "," +
                         std::to_string(k) + ") is irrational");
  }
  Rational value(table.class_size(i) * table.class_size(j), table.group_order);
  value.canonicalize();
  value *= *s;
  if (value.get_den() != 1 || value < 0) {
    throw IntegrityError("structure constant (" + std::to_string(i) + "," + std::to_string(j) + "," +
                         std::to_string(k) + ") = " + to_string(value) + " is not a non-negative integer");
  }
  return value.get_num();
}

CmcScanReport cmc_scan(const CharacterTable& table, std::size_t i, std::size_t k, unsigned threads) {
  check_index(table, i, "first");
  check_index(table, k, "target");
  CmcScanReport report;
  report.i = i;
  report.k = k;
  const std::size_t h = table.class_count();
  report.entries.resize(h);
  auto work = [&](std::size_t first, std::size_t last) {
    for (std::size_t j = first; j < last; ++j) {
      auto& e = report.entries[j];
      e.j = j + 1;
      e.value = cmc(table, i, j + 1, k);
      e.nonzero = e.value != 0;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(h)));
  if (threads == 1) {
    work(0, h);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          work(h * t / threads, h * (t + 1) / threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return report;
}

std::vector<std::string> lagrange_filter(const std::vector<std::pair<std::string, BigInt>>& subgroup_orders,
                                         const std::vector<BigInt>& required) {
  std::vector<std::string> out;
  for (const auto& [name, order] : subgroup_orders) {
    bool ok = true;
    for (const auto& r : required) {
      if (r == 0 || order % r != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(name);
  }
  return out;
}

std::vector<std::uint32_t> phi_divisibility(const BigInt& p, const BigInt& q, std::uint32_t limit) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw Error(to_string(p) + " is not prime");
  if (q < 2) throw Error("q must be at least 2");
  if (limit > 10'000) throw Error("N must not exceed 10000");
  std::vector<std::uint32_t> out;
  for (std::uint32_t n = 1; n <= limit; ++n) {
    if (cyclotomic_value(n, q) % p == 0) out.push_back(n);
  }
  return out;
}

GenerationCertificate generation_certificate(const CharacterTable& table,
                                             const std::vector<std::size_t>& involution_classes,
                                             std::size_t witness_class,
                                             const std::vector<std::pair<std::string, BigInt>>& subgroup_orders,
                                             std::uint64_t p, unsigned threads) {
  check_index(table, witness_class, "witness");
  GenerationCertificate cert;
  cert.witness_class = witness_class;
  cert.witness_order = table.classes[witness_class - 1].element_order;
  cert.p = p;
  cert.surviving_subgroups = lagrange_filter(subgroup_orders, {from_u64(cert.witness_order)});
  for (std::size_t i : involution_classes) cert.scans.push_back(cmc_scan(table, i, witness_class, threads));
  for (std::size_t j = 1; j <= table.class_count(); ++j) {
    if (table.classes[j - 1].element_order != p) continue;
    const bool all = std::all_of(cert.scans.begin(), cert.scans.end(),
                                 [&](const CmcScanReport& s) { return s.entries[j - 1].nonzero; });
    if (all && !cert.scans.empty()) cert.good_classes.push_back(j);
  }

  const std::string witness = table.classes[witness_class - 1].name;
  std::string text = "Subgroups of order divisible by " + std::to_string(cert.witness_order) + ": ";
  if (cert.surviving_subgroups.empty()) {
    text += "none";
  } else {
    for (std::size_t n = 0; n < cert.surviving_subgroups.size(); ++n) {
      if (n) text += ", ";
      text += cert.surviving_subgroups[n];
    }
  }
  text += ". A nonzero coefficient for (t, y) means t*y can be taken to be a fixed element of " + witness +
          ", so <t, y> contains it and lies in no maximal subgroup outside this list.";
  cert.explanation = text;
  return cert;
}

std::vector<std::pair<std::string, BigInt>> load_subgroup_orders(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::vector<std::pair<std::string, BigInt>> out;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& entry : doc) {
      const auto& order = entry.at("order");
      out.emplace_back(entry.at("name").get<std::string>(),
                       order.is_string() ? parse_bigint(order.get<std::string>()) : BigInt(order.dump()));
    }
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": JSON parse error at byte " + std::to_string(e.byte));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace sporgen
