#pragma once

// Persistent store of best known values for the five code quantities:
//
//   A  largest multiple code (simple),    keyed (q, n, k, t, lambda)
//   A~ largest multiple code, repeats allowed
//   B  largest covering code (simple),    keyed (q, n, k, delta, alpha)
//   B~ largest covering code, repeats allowed
//   C  smallest multiple covering,        keyed (q, n, k, t, lambda)
//
// Entries keep a lower and an upper bound. Updates are monotone: lower
// bounds only grow, upper bounds only shrink; a crossing pair is rejected
// (StoreConflict). Literature values participate in bound recursions but are
// never treated as optimality certificates.

#include <map>
#include <optional>
#include <string>

#include "grasscov/grassmann.hpp"

namespace grasscov {

enum class Quantity { A, Arep, B, Brep, C };

std::string quantity_name(Quantity q);                       // "A", "A~", ...
std::optional<Quantity> quantity_from_name(const std::string& s);

struct StoreKey {
  Quantity quantity{};
  int q = 0, n = 0, k = 0;
  int t_or_delta = 0;
  long long lambda_or_alpha = 0;

  auto operator<=>(const StoreKey&) const = default;
};

struct StoreEntry {
  std::optional<BigInt> lower, upper;
  bool optimal = false;  // set only by certificate-grade writers
  std::string provenance;  // "search-certificate" | "literature" | "formula"
  std::string citation;
};

class ResultsStore {
 public:
  // Monotone merge; StoreConflict when the result would have lower > upper
  // or when an optimal entry would change value.
  void update(const StoreKey& key, const StoreEntry& incoming);

  std::optional<StoreEntry> get(const StoreKey& key) const;

  // lower == upper, any provenance (usable inside bound recursions).
  std::optional<BigInt> exact(const StoreKey& key) const;
  // lower == upper and provenance is certificate grade (not literature).
  std::optional<BigInt> certified_exact(const StoreKey& key) const;

  const std::map<StoreKey, StoreEntry>& entries() const { return entries_; }

  void merge_from(const ResultsStore& other);

  // JSON (de)serialization of the whole store.
  std::string to_json() const;
  static ResultsStore from_json(const std::string& text);

  // File IO with an exclusive advisory lock around the access.
  static ResultsStore load(const std::string& path);  // empty store if absent
  void save(const std::string& path) const;
  // Locked read-merge-write so concurrent writers do not lose updates.
  static ResultsStore merge_into_file(const std::string& path, const ResultsStore& delta);

  // Values quoted from the published record for the small binary and ternary
  // parameter sets this toolkit reproduces.
  static ResultsStore with_literature();

 private:
  std::map<StoreKey, StoreEntry> entries_;
};

}  // namespace grasscov
