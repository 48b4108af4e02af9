#include "grasscov/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <nlohmann/json.hpp>

namespace grasscov {

using nlohmann::json;

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::A: return "A";
    case Quantity::Arep: return "A~";
    case Quantity::B: return "B";
    case Quantity::Brep: return "B~";
    case Quantity::C: return "C";
  }
  return "?";
}

std::optional<Quantity> quantity_from_name(const std::string& s) {
  if (s == "A") return Quantity::A;
  if (s == "A~" || s == "At" || s == "Arep") return Quantity::Arep;
  if (s == "B") return Quantity::B;
  if (s == "B~" || s == "Bt" || s == "Brep") return Quantity::Brep;
  if (s == "C") return Quantity::C;
  return std::nullopt;
}

static bool covering_side(Quantity q) { return q == Quantity::B || q == Quantity::Brep; }

void ResultsStore::update(const StoreKey& key, const StoreEntry& incoming) {
  if (incoming.optimal &&
      (!incoming.lower || !incoming.upper || *incoming.lower != *incoming.upper))
    throw StoreConflict("optimal entry must carry matching lower and upper values");
  if (incoming.optimal && incoming.provenance == "literature")
    throw StoreConflict("literature values are not optimality certificates");

  StoreEntry& e = entries_[key];
  bool improved = false;
  if (incoming.lower) {
    if (e.upper && *incoming.lower > *e.upper)
      throw StoreConflict("lower bound " + incoming.lower->str() + " crosses upper bound " +
                          e.upper->str() + " for " + quantity_name(key.quantity));
    if (!e.lower || *incoming.lower > *e.lower) {
      e.lower = incoming.lower;
      improved = true;
    }
  }
  if (incoming.upper) {
    if (e.lower && *incoming.upper < *e.lower)
      throw StoreConflict("upper bound " + incoming.upper->str() + " crosses lower bound " +
                          e.lower->str() + " for " + quantity_name(key.quantity));
    if (!e.upper || *incoming.upper < *e.upper) {
      e.upper = incoming.upper;
      improved = true;
    }
  }
  if (improved) {
    e.provenance = incoming.provenance;
    e.citation = incoming.citation;
  }
  if (incoming.optimal) e.optimal = true;
}

std::optional<StoreEntry> ResultsStore::get(const StoreKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<BigInt> ResultsStore::exact(const StoreKey& key) const {
  auto e = get(key);
  if (e && e->lower && e->upper && *e->lower == *e->upper) return *e->lower;
  return std::nullopt;
}

std::optional<BigInt> ResultsStore::certified_exact(const StoreKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  const StoreEntry& e = it->second;
  if (e.lower && e.upper && *e.lower == *e.upper && e.provenance != "literature")
    return *e.lower;
  return std::nullopt;
}

void ResultsStore::merge_from(const ResultsStore& other) {
  for (const auto& [k, v] : other.entries_) update(k, v);
}

std::string ResultsStore::to_json() const {
  json doc;
  doc["version"] = 1;
  doc["entries"] = json::array();
  for (const auto& [k, v] : entries_) {
    json e;
    e["quantity"] = quantity_name(k.quantity);
    e["q"] = k.q;
    e["n"] = k.n;
    e["k"] = k.k;
    if (covering_side(k.quantity)) {
      e["delta"] = k.t_or_delta;
      e["alpha"] = k.lambda_or_alpha;
    } else {
      e["t"] = k.t_or_delta;
      e["lambda"] = k.lambda_or_alpha;
    }
    if (v.lower) e["lower"] = v.lower->str();
    if (v.upper) e["upper"] = v.upper->str();
    e["optimal"] = v.optimal;
    e["provenance"] = v.provenance;
    if (!v.citation.empty()) e["citation"] = v.citation;
    doc["entries"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

ResultsStore ResultsStore::from_json(const std::string& text) {
  ResultsStore s;
  if (text.empty()) return s;
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw InvalidArgs("store file is not valid JSON");
  for (const auto& e : doc.at("entries")) {
    auto qty = quantity_from_name(e.at("quantity").get<std::string>());
    if (!qty) throw Error("unknown quantity in store: " + e.at("quantity").dump());
    StoreKey key;
    key.quantity = *qty;
    key.q = e.at("q").get<int>();
    key.n = e.at("n").get<int>();
    key.k = e.at("k").get<int>();
    if (covering_side(*qty)) {
      key.t_or_delta = e.at("delta").get<int>();
      key.lambda_or_alpha = e.at("alpha").get<long long>();
    } else {
      key.t_or_delta = e.at("t").get<int>();
      key.lambda_or_alpha = e.at("lambda").get<long long>();
    }
    StoreEntry entry;
    if (e.contains("lower")) entry.lower = BigInt(e.at("lower").get<std::string>());
    if (e.contains("upper")) entry.upper = BigInt(e.at("upper").get<std::string>());
    entry.optimal = e.value("optimal", false);
    entry.provenance = e.value("provenance", std::string{});
    entry.citation = e.value("citation", std::string{});
    s.entries_[key] = std::move(entry);
  }
  return s;
}

namespace {

struct LockedFile {
  int fd = -1;
  explicit LockedFile(const std::string& path, int flags) {
    fd = ::open(path.c_str(), flags, 0644);
    if (fd >= 0 && ::flock(fd, LOCK_EX) != 0) {
      ::close(fd);
      fd = -1;
      throw Error("could not lock results store: " + path);
    }
  }
  ~LockedFile() {
    if (fd >= 0) {
      ::flock(fd, LOCK_UN);
      ::close(fd);
    }
  }
  std::string read_all() const {
    std::string out;
    char buf[1 << 14];
    ::lseek(fd, 0, SEEK_SET);
    for (;;) {
      ssize_t got = ::read(fd, buf, sizeof buf);
      if (got < 0) throw Error("store read failed");
      if (got == 0) break;
      out.append(buf, static_cast<size_t>(got));
    }
    return out;
  }
  void replace_with(const std::string& text) const {
    if (::ftruncate(fd, 0) != 0) throw Error("store truncate failed");
    ::lseek(fd, 0, SEEK_SET);
    size_t off = 0;
    while (off < text.size()) {
      ssize_t put = ::write(fd, text.data() + off, text.size() - off);
      if (put <= 0) throw Error("store write failed");
      off += static_cast<size_t>(put);
    }
  }
};

}  // namespace

ResultsStore ResultsStore::load(const std::string& path) {
  int probe = ::open(path.c_str(), O_RDONLY);
  if (probe < 0) {
    if (errno == ENOENT) return ResultsStore{};
    throw Error("cannot open results store: " + path);
  }
  ::close(probe);
  LockedFile f(path, O_RDONLY);
  return from_json(f.read_all());
}

void ResultsStore::save(const std::string& path) const {
  LockedFile f(path, O_RDWR | O_CREAT);
  f.replace_with(to_json());
}

ResultsStore ResultsStore::merge_into_file(const std::string& path, const ResultsStore& delta) {
  LockedFile f(path, O_RDWR | O_CREAT);
  ResultsStore current = from_json(f.read_all());
  current.merge_from(delta);
  f.replace_with(current.to_json());
  return current;
}

ResultsStore ResultsStore::with_literature() {
  ResultsStore s;
  auto lit = [&s](Quantity qty, int q, int n, int k, int td, long long la,
                  const char* lower, const char* upper, const char* cite) {
    StoreKey key{qty, q, n, k, td, la};
    StoreEntry e;
    if (lower) e.lower = BigInt(lower);
    if (upper) e.upper = BigInt(upper);
    e.provenance = "literature";
    e.citation = cite;
    s.update(key, e);
  };
  // Binary Grassmannian packing records used by the bound reproductions.
  lit(Quantity::A, 2, 6, 4, 3, 1, "21", "21", "published subspace-packing tables");
  lit(Quantity::A, 2, 5, 3, 2, 2, "32", "32", "exhaustive classification of binary 2-fold packings");
  lit(Quantity::A, 2, 6, 4, 3, 2, "121", "126", "linear-programming bound with symmetry reduction");
  lit(Quantity::A, 2, 7, 3, 2, 1, "333", "381", "best known binary triple packing");
  lit(Quantity::C, 2, 7, 3, 2, 1, nullptr, "396", "best known binary triple covering");
  lit(Quantity::B, 2, 6, 2, 2, 3, "51", nullptr, "published covering-code construction");
  return s;
}

}  // namespace grasscov
