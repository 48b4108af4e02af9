#include "cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "grasscov/bounds.hpp"
#include "grasscov/codes.hpp"
#include "grasscov/errors.hpp"
#include "grasscov/gfq.hpp"
#include "grasscov/grassmann.hpp"
#include "grasscov/hamming.hpp"
#include "grasscov/io.hpp"
#include "grasscov/netsim.hpp"
#include "grasscov/search.hpp"
#include "grasscov/store.hpp"

namespace grasscov::cli {

namespace {

using nlohmann::json;

struct GlobalOpts {
  bool json_out = false;
  std::string out_path;
  long long budget_nodes = 100'000'000;
  bool budget_nodes_set = false;
  double budget_seconds = 600.0;
  std::uint64_t seed = 1;
  std::string store_path;  // --store flag or GRASSCOV_STORE
};

void deliver(const GlobalOpts& g, const json& report, const std::string& text) {
  if (g.json_out)
    std::cout << report.dump(2) << '\n';
  else
    std::cout << text;
  if (!g.out_path.empty()) {
    std::ofstream f(g.out_path);
    if (!f) throw InvalidArgs("cannot write " + g.out_path);
    f << report.dump(2) << '\n';
  }
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const BudgetExceeded*>(&e)) return "BudgetExceeded";
  if (dynamic_cast<const CodeInvalid*>(&e)) return "CodeInvalid";
  if (dynamic_cast<const IndependenceViolated*>(&e)) return "IndependenceViolated";
  if (dynamic_cast<const NotAPrimePower*>(&e)) return "NotAPrimePower";
  if (dynamic_cast<const Unsupported*>(&e)) return "Unsupported";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const TooFewCodewords*>(&e)) return "TooFewCodewords";
  if (dynamic_cast<const NotSimple*>(&e)) return "NotSimple";
  if (dynamic_cast<const NotDivisible*>(&e)) return "NotDivisible";
  if (dynamic_cast<const CodeTooSmall*>(&e)) return "CodeTooSmall";
  if (dynamic_cast<const SingularSystem*>(&e)) return "SingularSystem";
  if (dynamic_cast<const WrongCount*>(&e)) return "WrongCount";
  if (dynamic_cast<const WrongLength*>(&e)) return "WrongLength";
  if (dynamic_cast<const ZeroColumn*>(&e)) return "ZeroColumn";
  if (dynamic_cast<const RankDeficient*>(&e)) return "RankDeficient";
  if (dynamic_cast<const MissingExactValue*>(&e)) return "MissingExactValue";
  if (dynamic_cast<const StoreConflict*>(&e)) return "StoreConflict";
  if (dynamic_cast<const InvalidArgs*>(&e)) return "InvalidArgs";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

int emit_error(const GlobalOpts& g, const std::exception& e) {
  json err;
  err["error"]["type"] = error_kind(e);
  err["error"]["message"] = e.what();
  if (auto* b = dynamic_cast<const BudgetExceeded*>(&e)) err["error"]["refused"] = b->refused;
  if (auto* c = dynamic_cast<const CodeInvalid*>(&e)) {
    err["error"]["receiver"] = c->receiver;
    err["error"]["span_dim"] = c->span_dim;
  }
  if (auto* iv = dynamic_cast<const IndependenceViolated*>(&e))
    err["error"]["columns"] = iv->columns;
  std::cout << err.dump(2) << '\n';
  std::cerr << "error: " << e.what() << '\n';
  if (!g.out_path.empty()) {
    std::ofstream f(g.out_path);
    if (f) f << err.dump(2) << '\n';
  }
  return dynamic_cast<const BudgetExceeded*>(&e) ? 2 : 1;
}

ResultsStore engine_store(const GlobalOpts& g) {
  ResultsStore s = ResultsStore::with_literature();
  if (!g.store_path.empty()) s.merge_from(ResultsStore::load(g.store_path));
  return s;
}

json code_json(const GrassCode& c) { return json::parse(grasscode_to_json_text(c)); }

json entry_json(const BoundEntry& e, bool trace) {
  json j;
  j["rule"] = e.rule;
  j["value"] = e.value.str();
  if (trace) j["trace"] = e.trace;
  return j;
}

// ---------------------------------------------------------------- bounds --

struct BoundsArgs {
  std::string side = "multiple";
  int q = 2, n = 0, k = 0, t = 0, delta = 0;
  long long lambda = 1, lambda_hi = 0, alpha = 2, alpha_hi = 0;
  bool repeats = false, trace = false, identities = false;
};

int run_bounds(const GlobalOpts& g, const BoundsArgs& a) {
  ResultsStore store = engine_store(g);
  BoundEngine eng(a.q, &store);
  json rep;
  rep["command"] = "bounds";
  rep["side"] = a.side;
  rep["q"] = a.q;
  rep["n"] = a.n;
  rep["k"] = a.k;
  rep["repeats"] = a.repeats;
  std::ostringstream text;

  if (a.side == "multiple") {
    long long hi = a.lambda_hi > 0 ? a.lambda_hi : a.lambda;
    rep["t"] = a.t;
    BoundTable table = eng.bound_table(a.n, a.k, a.t, a.lambda, hi, a.repeats);
    std::string qty = a.repeats ? "A~" : "A";
    text << qty << "_" << a.q << "(" << a.n << "," << a.k << "," << a.t << "; lambda)\n";
    rep["rows"] = json::array();
    for (const BoundRow& row : table.rows) {
      json jr;
      jr["lambda"] = row.lambda;
      jr["best_upper"] = row.best_upper.str();
      if (row.best_lower) jr["best_lower"] = row.best_lower->str();
      jr["uppers"] = json::array();
      for (const BoundEntry& e : row.uppers) jr["uppers"].push_back(entry_json(e, a.trace));
      jr["lowers"] = json::array();
      for (const BoundEntry& e : row.lowers) jr["lowers"].push_back(entry_json(e, a.trace));
      rep["rows"].push_back(jr);

      text << "  lambda=" << row.lambda;
      if (row.best_lower) text << "  lower=" << row.best_lower->str();
      text << "  upper=" << row.best_upper.str() << "  [";
      for (std::size_t i = 0; i < row.uppers.size(); ++i)
        text << (i ? " " : "") << row.uppers[i].rule << "=" << row.uppers[i].value.str();
      text << "]\n";
      if (a.trace)
        for (const BoundEntry& e : row.uppers)
          for (const std::string& line : e.trace) text << "    " << line << "\n";
    }
    if (a.identities) {
      rep["identities"] = json::array();
      for (long long l = a.lambda; l <= hi; ++l) {
        json ji;
        ji["lambda"] = l;
        try {
          IdentityReport ir = identity_checks(a.q, a.n, a.k, a.t, l, store);
          ji["design_detected"] = ir.design_detected;
          ji["outcomes"] = json::array();
          for (const IdentityOutcome& oc : ir.outcomes) {
            ji["outcomes"].push_back({{"name", oc.name}, {"status", oc.status},
                                      {"detail", oc.detail}});
            text << "  identity " << oc.name << " at lambda=" << l << ": " << oc.status
                 << " (" << oc.detail << ")\n";
          }
        } catch (const MissingExactValue& e) {
          ji["status"] = "unavailable";
          ji["detail"] = e.what();
          text << "  identities at lambda=" << l << ": unavailable (" << e.what() << ")\n";
        }
        rep["identities"].push_back(ji);
      }
    }
  } else if (a.side == "covering") {
    long long hi = a.alpha_hi > 0 ? a.alpha_hi : a.alpha;
    rep["delta"] = a.delta;
    std::string qty = a.repeats ? "B~" : "B";
    text << qty << "_" << a.q << "(" << a.n << "," << a.k << "," << a.delta << "; alpha)\n";
    rep["rows"] = json::array();
    for (long long al = a.alpha; al <= hi; ++al) {
      BoundEntry e = eng.upper_covering(a.n, a.k, a.delta, al, a.repeats);
      json jr;
      jr["alpha"] = al;
      jr["best_upper"] = e.value.str();
      jr["uppers"] = json::array({entry_json(e, a.trace)});
      rep["rows"].push_back(jr);
      text << "  alpha=" << al << "  upper=" << e.value.str() << "  [" << e.rule << "]\n";
      if (a.trace)
        for (const std::string& line : e.trace) text << "    " << line << "\n";
    }
  } else {
    throw InvalidArgs("--side must be multiple or covering");
  }
  deliver(g, rep, text.str());
  return 0;
}

// ---------------------------------------------------------------- search --

struct SearchArgs {
  std::string side = "multiple";
  std::string mode = "exact";  // greedy | exact | exact-repeats | cover
  int q = 2, n = 0, k = 0, t = 0, delta = 0;
  long long lambda = 1, alpha = 2;
  std::string emit_path, json_path;
};

int run_search(const GlobalOpts& g, const SearchArgs& a) {
  SearchConfig cfg;
  cfg.node_budget = g.budget_nodes;
  cfg.time_budget_s = g.budget_seconds;
  cfg.seed = g.seed;

  SearchResult res;
  Quantity qty{};
  int t_or_delta = 0;
  long long lambda_or_alpha = 0;
  if (a.side == "multiple") {
    t_or_delta = a.t;
    lambda_or_alpha = a.lambda;
    if (a.mode == "greedy") {
      res = greedy_max_multiple(a.q, a.n, a.k, a.t, a.lambda, cfg);
      qty = Quantity::A;
    } else if (a.mode == "exact") {
      res = exact_max_multiple(a.q, a.n, a.k, a.t, a.lambda, cfg);
      qty = Quantity::A;
    } else if (a.mode == "exact-repeats") {
      res = exact_max_multiple_repeats(a.q, a.n, a.k, a.t, a.lambda, cfg);
      qty = Quantity::Arep;
    } else if (a.mode == "cover") {
      res = exact_min_cover(a.q, a.n, a.k, a.t, a.lambda, cfg);
      qty = Quantity::C;
    } else {
      throw InvalidArgs("--mode must be greedy, exact, exact-repeats or cover");
    }
  } else if (a.side == "covering") {
    t_or_delta = a.delta;
    lambda_or_alpha = a.alpha;
    if (a.mode == "greedy") {
      res = greedy_max_covering(a.q, a.n, a.k, a.delta, a.alpha, cfg);
      qty = Quantity::B;
    } else if (a.mode == "exact") {
      res = exact_max_covering(a.q, a.n, a.k, a.delta, a.alpha, cfg);
      qty = Quantity::B;
    } else if (a.mode == "exact-repeats") {
      res = exact_max_covering_repeats(a.q, a.n, a.k, a.delta, a.alpha, cfg);
      qty = Quantity::Brep;
    } else {
      throw InvalidArgs("covering --mode must be greedy, exact or exact-repeats");
    }
  } else {
    throw InvalidArgs("--side must be multiple or covering");
  }

  json rep;
  rep["command"] = "search";
  rep["side"] = a.side;
  rep["mode"] = a.mode;
  rep["q"] = a.q;
  rep["n"] = a.n;
  rep["k"] = a.k;
  if (a.side == "multiple")
    rep["t"] = a.t;
  else
    rep["delta"] = a.delta;
  if (a.side == "multiple")
    rep["lambda"] = a.lambda;
  else
    rep["alpha"] = a.alpha;
  rep["seed"] = g.seed;
  rep["size"] = res.size;
  rep["optimal"] = res.optimal;
  rep["explored"] = res.explored;
  rep["budget_hit"] = res.budget_hit;
  rep["trace"] = res.trace;

  if (!a.emit_path.empty()) {
    write_grasscode_file(a.emit_path, res.code);
    rep["emitted"] = a.emit_path;
  } else {
    rep["code"] = code_json(res.code);
  }

  if (!g.store_path.empty()) {
    StoreEntry e;
    e.provenance = "search-certificate";
    if (qty == Quantity::C) {
      e.upper = BigInt(res.size);
      if (res.optimal) {
        e.lower = BigInt(res.size);
        e.optimal = true;
      }
    } else {
      e.lower = BigInt(res.size);
      if (res.optimal) {
        e.upper = BigInt(res.size);
        e.optimal = true;
      }
    }
    ResultsStore delta;
    delta.update(StoreKey{qty, a.q, a.n, a.k, t_or_delta, lambda_or_alpha}, e);
    ResultsStore::merge_into_file(g.store_path, delta);
    rep["store_updated"] = g.store_path;
  }

  std::ostringstream text;
  text << quantity_name(qty) << "_" << a.q << "(" << a.n << "," << a.k << ","
       << t_or_delta << ";" << lambda_or_alpha << ")  size=" << res.size
       << (res.optimal ? "  optimal" : "  incumbent") << "  explored=" << res.explored
       << (res.budget_hit ? "  budget-hit" : "") << "\n";
  for (const std::string& line : res.trace) text << "  " << line << "\n";
  if (!a.emit_path.empty()) text << "  code written to " << a.emit_path << "\n";

  if (!a.json_path.empty()) {
    std::ofstream f(a.json_path);
    if (!f) throw InvalidArgs("cannot write " + a.json_path);
    f << rep.dump(2) << '\n';
  }
  deliver(g, rep, text.str());
  return 0;
}

// ----------------------------------------------------------------- check --

struct CheckArgs {
  std::string code_path;
  int t = -1, delta = -1;
  long long lambda = -1, alpha = -1;
};

int run_check(const GlobalOpts& g, const CheckArgs& a) {
  GrassCode code = read_grasscode_file(a.code_path);
  bool multiple = a.t >= 0 || a.lambda >= 0;
  bool covering = a.delta >= 0 || a.alpha >= 0;
  if (multiple == covering)
    throw InvalidArgs("give either --t with --lambda or --delta with --alpha");

  json rep;
  rep["command"] = "check";
  rep["q"] = code.ctx().q();
  rep["n"] = code.n();
  rep["k"] = code.k();
  rep["size"] = code.size();
  rep["distinct"] = code.distinct_count();
  std::ostringstream text;

  if (multiple) {
    if (a.t < 0 || a.lambda < 0) throw InvalidArgs("multiple check needs --t and --lambda");
    rep["kind"] = "multiple";
    rep["t"] = a.t;
    rep["lambda"] = a.lambda;
    ValidityReport r = check_multiple(code, a.t, a.lambda, g.budget_nodes);
    rep["valid"] = r.valid;
    text << "multiple check t=" << a.t << " lambda=" << a.lambda << ": "
         << (r.valid ? "valid" : "invalid") << "\n";
    if (!r.valid && r.multiple_witness) {
      const MultipleWitness& w = *r.multiple_witness;
      json jw;
      jw["load"] = w.load;
      jw["word_indices"] = w.word_indices;
      jw["t_subspace"] = json::parse(grasscode_to_json_text([&] {
        GrassCode one(code.ctx(), code.n(), a.t);
        one.add(w.t_subspace);
        return one;
      }()))["words"][0]["rows"];
      rep["witness"] = jw;
      text << "  witness t-subspace held by " << w.load << " codewords (indices";
      for (int i : w.word_indices) text << " " << i;
      text << ")\n";
    }
  } else {
    if (a.delta < 0 || a.alpha < 0) throw InvalidArgs("covering check needs --delta and --alpha");
    rep["kind"] = "covering";
    rep["delta"] = a.delta;
    rep["alpha"] = a.alpha;
    ValidityReport r = check_covering(code, a.alpha, a.delta);
    rep["valid"] = r.valid;
    rep["vacuous"] = r.vacuous;
    rep["degenerate_alpha"] = r.degenerate_alpha;
    text << "covering check alpha=" << a.alpha << " delta=" << a.delta << ": "
         << (r.valid ? "valid" : "invalid") << (r.vacuous ? " (vacuous)" : "") << "\n";
    if (!r.valid && r.covering_witness) {
      rep["witness"] = {{"slots", r.covering_witness->slots},
                        {"span_dim", r.covering_witness->span_dim}};
      text << "  witness slots span only dimension " << r.covering_witness->span_dim << "\n";
    }
  }
  deliver(g, rep, text.str());
  return 0;
}

// --------------------------------------------------------------- dualize --

int run_dualize(const GlobalOpts& g, const std::string& code_path, const std::string& emit) {
  GrassCode code = read_grasscode_file(code_path);
  GrassCode dual = dualize(code);
  json rep;
  rep["command"] = "dualize";
  rep["q"] = code.ctx().q();
  rep["n"] = code.n();
  rep["k_in"] = code.k();
  rep["k_out"] = dual.k();
  rep["size"] = dual.size();
  std::ostringstream text;
  if (!emit.empty()) {
    write_grasscode_file(emit, dual);
    rep["emitted"] = emit;
    text << "dual code in G_" << code.ctx().q() << "(" << code.n() << "," << dual.k()
         << ") written to " << emit << "\n";
  } else {
    rep["code"] = code_json(dual);
    text << grasscode_to_text(dual);
  }
  deliver(g, rep, text.str());
  return 0;
}

// ---------------------------------------------------------------- netsim --

struct NetsimArgs {
  int h = 0, k = 1, eps = 0, alpha = 0, q = 2, ell = 1;
  long long r = 0;
  std::string code_path;
  bool exhaustive = false;
  long long samples = 0;
};

int run_netsim(const GlobalOpts& g, const NetsimArgs& a) {
  NetworkParams p;
  p.q = a.q;
  p.h = a.h;
  p.r = a.r;
  p.alpha = a.alpha;
  p.k = a.k;
  p.eps = a.eps;

  NetworkClass cls = classify(p);
  json rep;
  rep["command"] = "netsim";
  rep["classification"] = cls.status;
  rep["delta"] = cls.delta;
  rep["reason"] = cls.reason;
  rep["assigned"] = false;
  rep["simulated"] = false;
  rep["receivers_checked"] = 0;
  rep["failures"] = json::array();
  rep["seed"] = g.seed;

  std::ostringstream text;
  text << "network (" << a.eps << "," << a.k << ")-N_{" << a.h << "," << a.r << ","
       << (static_cast<long long>(a.alpha) * a.k + a.eps) << "}: " << cls.status
       << " (delta=" << cls.delta << ")\n";

  NetworkParams sim_params = p;
  if (a.ell > 1) {
    VectorParams vp = vector_params(a.h, a.k, a.eps, a.ell);
    rep["vector_params"] = {{"n", vp.n}, {"k", vp.k}, {"delta", vp.delta}};
    sim_params = expand_network(p, a.ell);
    text << "  vector solution at ell=" << a.ell << ": code parameters (" << vp.n << ","
         << vp.k << ") with delta=" << vp.delta << "\n";
  }

  if (cls.status == "nontrivial") {
    CodeRequirement need = required_code(p);
    rep["required_code"] = {{"q", need.q},         {"n", need.n},
                            {"k", need.k},         {"delta", need.delta},
                            {"alpha", need.alpha}, {"min_words", need.min_words}};
  }

  if (a.code_path.empty()) {
    text << "  no code given, classification only\n";
    deliver(g, rep, text.str());
    return 0;
  }

  GrassCode code = read_grasscode_file(a.code_path);
  CodingAssignment asg;
  try {
    asg = assign_scalar(sim_params, code);
  } catch (const CodeInvalid& e) {
    rep["failures"].push_back({{"status", "not-covering"},
                               {"nodes", e.receiver},
                               {"span_dim", e.span_dim},
                               {"message", e.what()}});
    text << "  assignment rejected: " << e.what() << "\n";
    deliver(g, rep, text.str());
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  rep["assigned"] = true;

  long long cap = 4096;
  if (a.exhaustive)
    cap = std::numeric_limits<long long>::max() / 2;
  else if (a.samples > 0)
    cap = a.samples;
  SimulationReport sim = simulate_all(asg, g.seed, cap);
  rep["simulated"] = true;
  rep["exhaustive_messages"] = sim.exhaustive_messages;
  rep["receivers_checked"] = sim.receivers;
  rep["ok"] = sim.ok;
  rep["mismatch"] = sim.mismatch;
  rep["singular"] = sim.singular;
  for (const ReceiverOutcome& oc : sim.failures)
    rep["failures"].push_back({{"status", oc.status}, {"nodes", oc.nodes}});

  text << "  assigned " << sim_params.r << " middle nodes, simulated " << sim.receivers
       << " receivers (" << (sim.exhaustive_messages ? "exhaustive" : "sampled")
       << " messages): ok=" << sim.ok << " mismatch=" << sim.mismatch
       << " singular=" << sim.singular << "\n";
  deliver(g, rep, text.str());
  return 0;
}

// --------------------------------------------------------------- hamming --

BigInt set_binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  BigInt v = 1;
  for (long long i = 0; i < k; ++i) {
    v *= (n - i);
    v /= (i + 1);
  }
  return v;
}

struct HammingArgs {
  std::string sub;  // weights | bridge | turan | packing
  std::string gen_path, parity_path, emit_path;
  int alpha = 0, d = 0, alpha_max = 0;
  long long n = 0;
  int pk = 0, pt = 0;
  long long plambda = 1;
  bool exact = false, verify = false;
};

int run_hamming(const GlobalOpts& g, const HammingArgs& a) {
  json rep;
  rep["command"] = "hamming";
  rep["sub"] = a.sub;
  std::ostringstream text;

  if (a.sub == "weights") {
    LinearCode c(read_matrix_file(a.gen_path));
    rep["q"] = c.ctx().q();
    rep["length"] = c.length();
    rep["dimension"] = c.dimension();
    int d = min_hamming_distance(c);
    rep["min_distance"] = d;
    std::vector<int> w = generalized_weights(c);
    rep["weights"] = w;
    text << "[" << c.length() << "," << c.dimension() << "] code over F_" << c.ctx().q()
         << ", minimum distance " << d << "\nweight hierarchy:";
    for (int v : w) text << " " << v;
    text << "\n";
    if (a.alpha_max > 0) {
      std::vector<int> ch = covering_hierarchy(c, a.alpha_max);
      rep["c_hierarchy"] = ch;
      text << "union-support hierarchy:";
      for (int v : ch) text << " " << v;
      text << "\n";
    }
  } else if (a.sub == "bridge") {
    if (!a.gen_path.empty() == !a.parity_path.empty())
      throw InvalidArgs("give exactly one of --gen or --parity");
    if (!a.gen_path.empty()) {
      if (a.alpha < 1) throw InvalidArgs("--gen needs --alpha");
      MatrixFq G = read_matrix_file(a.gen_path);
      LinearCode c(G);
      GrassCode code = generator_to_grasscode(G);
      int d = min_hamming_distance(c);
      int threshold = c.length() - a.alpha + 1;
      ValidityReport r = check_covering(code, a.alpha, c.dimension() - 1);
      rep["source"] = "generator";
      rep["q"] = c.ctx().q();
      rep["length"] = c.length();
      rep["dimension"] = c.dimension();
      rep["alpha"] = a.alpha;
      rep["min_distance"] = d;
      rep["distance_threshold"] = threshold;
      rep["covering_valid"] = r.valid;
      rep["agrees"] = (d >= threshold) == r.valid;
      text << "columns of the [" << c.length() << "," << c.dimension() << "] generator as a "
           << a.alpha << "-(" << c.dimension() << ",1," << c.dimension() - 1
           << ") covering code: " << (r.valid ? "valid" : "invalid") << "\n"
           << "minimum distance " << d << (d >= threshold ? " >= " : " < ") << threshold
           << " agrees: " << ((d >= threshold) == r.valid ? "yes" : "NO") << "\n";
      if (!a.emit_path.empty()) {
        write_grasscode_file(a.emit_path, code);
        rep["emitted"] = a.emit_path;
      }
    } else {
      if (a.d < 2) throw InvalidArgs("--parity needs --d >= 2");
      MatrixFq H = read_matrix_file(a.parity_path);
      GrassCode code = parity_to_covering(H, a.d);
      rep["source"] = "parity";
      rep["q"] = H.ctx().q();
      rep["rows"] = H.rows();
      rep["length"] = H.cols();
      rep["d"] = a.d;
      rep["alpha"] = a.d - 1;
      rep["delta"] = a.d - 2;
      bool checked = a.d >= 3;
      bool valid = true;
      if (checked) valid = check_covering(code, a.d - 1, a.d - 2).valid;
      rep["covering_checked"] = checked;
      rep["covering_valid"] = valid;
      text << "columns of the parity matrix as a " << (a.d - 1) << "-(" << H.rows() << ",1,"
           << (a.d - 2) << ") covering code: " << (valid ? "valid" : "invalid")
           << (checked ? "" : " (delta=0, nothing to check)") << "\n";
      if (!a.emit_path.empty()) {
        write_grasscode_file(a.emit_path, code);
        rep["emitted"] = a.emit_path;
      }
    }
  } else if (a.sub == "turan") {
    auto v = turan_values(a.n);
    rep["n"] = a.n;
    rep["values"] = {v[0], v[1], v[2]};
    text << "maximum (" << (a.n - 2) << ")-subset packings of {1.." << a.n
         << "} with every (" << (a.n - 3) << ")-subset in at most lambda blocks:\n"
         << "  lambda=1: " << v[0] << "  lambda=2: " << v[1] << "  lambda=3: " << v[2] << "\n";
    if (a.verify) {
      if (a.n > 8) throw BudgetExceeded("exhaustive verification capped at n <= 8",
                                        std::to_string(a.n));
      bool all_match = true;
      for (int l = 1; l <= 3; ++l) {
        auto res = max_set_packing(static_cast<int>(a.n), static_cast<int>(a.n) - 2,
                                   static_cast<int>(a.n) - 3, l);
        bool match = res.optimal &&
                     static_cast<long long>(res.packing.blocks.size()) == v[l - 1];
        all_match = all_match && match;
        text << "  exhaustive lambda=" << l << ": " << res.packing.blocks.size()
             << (match ? " (matches)" : " (MISMATCH)") << "\n";
      }
      rep["verified"] = all_match;
    }
  } else if (a.sub == "packing") {
    rep["n"] = a.n;
    rep["k"] = a.pk;
    rep["t"] = a.pt;
    rep["lambda"] = a.plambda;
    BigInt upper = (BigInt(a.plambda) * set_binomial(a.n, a.pt)) / set_binomial(a.pk, a.pt);
    rep["counting_upper"] = upper.str();
    text << "set packing (" << a.n << "," << a.pk << "," << a.pt << "; lambda=" << a.plambda
         << "): counting upper bound " << upper.str() << "\n";
    if (a.exact) {
      SearchBudget budget;
      budget.node_budget = g.budget_nodes;
      budget.time_budget_s = g.budget_seconds;
      auto res = max_set_packing(static_cast<int>(a.n), a.pk, a.pt, a.plambda, budget);
      rep["exact"] = {{"size", res.packing.blocks.size()},
                      {"optimal", res.optimal},
                      {"explored", res.explored},
                      {"budget_hit", res.budget_hit},
                      {"blocks", res.packing.blocks}};
      text << "  exhaustive: " << res.packing.blocks.size()
           << (res.optimal ? " (optimal)" : " (incumbent)") << "\n";
    }
  } else {
    throw InvalidArgs("hamming subcommand must be weights, bridge, turan or packing");
  }
  deliver(g, rep, text.str());
  return 0;
}

// ------------------------------------------------------------- enumerate --

int run_enumerate(const GlobalOpts& g, int q, int n, int k, const std::string& emit) {
  FieldCtx F = make_field(q);
  long long budget = g.budget_nodes_set ? g.budget_nodes : kDefaultEnumBudget;
  auto subs = enumerate_grassmannian(F, n, k, budget);
  json rep;
  rep["command"] = "enumerate";
  rep["q"] = q;
  rep["n"] = n;
  rep["k"] = k;
  rep["count"] = gaussian_binomial(n, k, q).str();
  std::ostringstream text;
  text << "G_" << q << "(" << n << "," << k << ") has " << subs.size() << " subspaces\n";
  if (!emit.empty()) {
    GrassCode all(F, n, k);
    for (const Subspace& s : subs) all.add(s);
    write_grasscode_file(emit, all);
    rep["emitted"] = emit;
    text << "written to " << emit << "\n";
  }
  deliver(g, rep, text.str());
  return 0;
}

// ----------------------------------------------------------------- store --

struct StoreArgs {
  std::string path;
  bool list = false, do_get = false, do_set = false, init_literature = false;
  std::string quantity = "A";
  int q = 0, n = 0, k = 0, t = 0;
  long long lambda = 0;
  std::string lower, upper;  // decimal strings, empty = unset
  bool optimal = false;
  std::string provenance = "search-certificate", citation;
};

json store_entry_json(const StoreKey& k, const StoreEntry& e) {
  json j;
  j["quantity"] = quantity_name(k.quantity);
  j["q"] = k.q;
  j["n"] = k.n;
  j["k"] = k.k;
  j["t_or_delta"] = k.t_or_delta;
  j["lambda_or_alpha"] = k.lambda_or_alpha;
  if (e.lower) j["lower"] = e.lower->str();
  if (e.upper) j["upper"] = e.upper->str();
  j["optimal"] = e.optimal;
  j["provenance"] = e.provenance;
  if (!e.citation.empty()) j["citation"] = e.citation;
  return j;
}

int run_store(const GlobalOpts& g, const StoreArgs& a) {
  std::string path = !a.path.empty() ? a.path : g.store_path;
  if (path.empty()) throw InvalidArgs("no store path (use --path, --store or GRASSCOV_STORE)");

  json rep;
  rep["command"] = "store";
  rep["path"] = path;
  std::ostringstream text;

  if (a.init_literature) {
    ResultsStore merged = ResultsStore::merge_into_file(path, ResultsStore::with_literature());
    rep["entries_total"] = merged.entries().size();
    text << "literature values merged, store now holds " << merged.entries().size()
         << " entries\n";
  } else if (a.do_set) {
    auto qty = quantity_from_name(a.quantity);
    if (!qty) throw InvalidArgs("unknown quantity " + a.quantity);
    StoreEntry e;
    if (!a.lower.empty()) e.lower = BigInt(a.lower);
    if (!a.upper.empty()) e.upper = BigInt(a.upper);
    e.optimal = a.optimal;
    e.provenance = a.provenance;
    e.citation = a.citation;
    ResultsStore delta;
    StoreKey key{*qty, a.q, a.n, a.k, a.t, a.lambda};
    delta.update(key, e);
    ResultsStore merged = ResultsStore::merge_into_file(path, delta);
    rep["entry"] = store_entry_json(key, *merged.get(key));
    text << "stored " << a.quantity << "_" << a.q << "(" << a.n << "," << a.k << "," << a.t
         << ";" << a.lambda << ")\n";
  } else if (a.do_get) {
    auto qty = quantity_from_name(a.quantity);
    if (!qty) throw InvalidArgs("unknown quantity " + a.quantity);
    ResultsStore s = ResultsStore::load(path);
    StoreKey key{*qty, a.q, a.n, a.k, a.t, a.lambda};
    auto e = s.get(key);
    rep["found"] = bool(e);
    if (e) {
      rep["entry"] = store_entry_json(key, *e);
      text << store_entry_json(key, *e).dump() << "\n";
    } else {
      text << "no entry\n";
    }
  } else {
    ResultsStore s = ResultsStore::load(path);
    rep["entries"] = json::array();
    for (const auto& [key, e] : s.entries()) {
      rep["entries"].push_back(store_entry_json(key, e));
      text << store_entry_json(key, e).dump() << "\n";
    }
  }
  deliver(g, rep, text.str());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  GlobalOpts g;
  if (const char* env = std::getenv("GRASSCOV_STORE")) g.store_path = env;

  CLI::App app{"covering and multiple Grassmannian code toolkit", "grasscov"};
  app.require_subcommand(1);
  app.add_flag("--json", g.json_out, "emit the JSON report on stdout");
  app.add_option("--out", g.out_path, "also write the JSON report to this file");
  auto* bn = app.add_option("--budget-nodes", g.budget_nodes, "search/enumeration node budget");
  app.add_option("--budget-seconds", g.budget_seconds, "search time budget");
  app.add_option("--seed", g.seed, "seed for randomized passes (echoed in reports)");
  app.add_option("--store", g.store_path, "results store path (or GRASSCOV_STORE)");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "upper/lower bound tables");
  bounds->add_option("--side", ba.side, "multiple or covering")->default_str("multiple");
  bounds->add_option("--q", ba.q)->required();
  bounds->add_option("--n", ba.n)->required();
  bounds->add_option("--k", ba.k)->required();
  bounds->add_option("--t", ba.t);
  bounds->add_option("--delta", ba.delta);
  bounds->add_option("--lambda", ba.lambda);
  bounds->add_option("--lambda-hi", ba.lambda_hi);
  bounds->add_option("--alpha", ba.alpha);
  bounds->add_option("--alpha-hi", ba.alpha_hi);
  bounds->add_flag("--repeats", ba.repeats, "multiset quantities");
  bounds->add_flag("--trace", ba.trace, "include derivation chains");
  bounds->add_flag("--identities", ba.identities, "cross-check store identities");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "greedy and exact extremal-code search");
  search->add_option("--side", sa.side, "multiple or covering")->required();
  search->add_option("--mode", sa.mode, "greedy, exact, exact-repeats or cover");
  search->add_option("--q", sa.q)->required();
  search->add_option("--n", sa.n)->required();
  search->add_option("--k", sa.k)->required();
  search->add_option("--t", sa.t);
  search->add_option("--delta", sa.delta);
  search->add_option("--lambda", sa.lambda);
  search->add_option("--alpha", sa.alpha);
  search->add_option("--emit", sa.emit_path, "write the certificate code here");
  search->add_option("--json-file", sa.json_path, "also write the JSON report here");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "validate a code file");
  check->add_option("--code", ca.code_path)->required();
  check->add_option("--t", ca.t);
  check->add_option("--lambda", ca.lambda);
  check->add_option("--delta", ca.delta);
  check->add_option("--alpha", ca.alpha);

  std::string dz_code, dz_emit;
  auto* dual = app.add_subcommand("dualize", "orthogonal-complement code");
  dual->add_option("--code", dz_code)->required();
  dual->add_option("--emit", dz_emit);

  NetsimArgs na;
  auto* netsim = app.add_subcommand("netsim", "generalized combination network simulator");
  netsim->set_help_flag("--help", "print help");  // frees -h for the source-message dimension
  netsim->add_option("--h", na.h)->required();
  netsim->add_option("--r", na.r)->required();
  netsim->add_option("--k", na.k, "links per middle node");
  netsim->add_option("--eps", na.eps);
  netsim->add_option("--alpha", na.alpha)->required();
  netsim->add_option("--q", na.q);
  netsim->add_option("--code", na.code_path, "grasscode file to assign");
  netsim->add_option("--ell", na.ell, "vector-solution dimension");
  netsim->add_flag("--exhaustive", na.exhaustive, "sweep every message tuple");
  netsim->add_option("--samples", na.samples, "sampled messages per receiver");

  HammingArgs ha;
  auto* hamming = app.add_subcommand("hamming", "linear-code and set-packing bridges");
  hamming->require_subcommand(1);
  auto* weights = hamming->add_subcommand("weights", "generalized weight hierarchy");
  weights->add_option("--gen", ha.gen_path)->required();
  weights->add_option("--alpha-max", ha.alpha_max, "also compute c_1..c_alpha_max");
  auto* bridge = hamming->add_subcommand("bridge", "matrix columns as a covering code");
  bridge->add_option("--gen", ha.gen_path);
  bridge->add_option("--parity", ha.parity_path);
  bridge->add_option("--alpha", ha.alpha);
  bridge->add_option("--d", ha.d);
  bridge->add_option("--emit", ha.emit_path);
  auto* turan = hamming->add_subcommand("turan", "closed-form packing numbers");
  turan->add_option("--n", ha.n)->required();
  turan->add_flag("--verify", ha.verify, "cross-check by exhaustive search");
  auto* packing = hamming->add_subcommand("packing", "maximum set packing");
  packing->add_option("--n", ha.n)->required();
  packing->add_option("--k", ha.pk)->required();
  packing->add_option("--t", ha.pt)->required();
  packing->add_option("--lambda", ha.plambda)->required();
  packing->add_flag("--exact", ha.exact, "run the exhaustive search");

  int en_q = 2, en_n = 0, en_k = 0;
  std::string en_emit;
  auto* enumerate = app.add_subcommand("enumerate", "list a Grassmannian");
  enumerate->add_option("--q", en_q)->required();
  enumerate->add_option("--n", en_n)->required();
  enumerate->add_option("--k", en_k)->required();
  enumerate->add_option("--emit", en_emit);

  StoreArgs sta;
  auto* store = app.add_subcommand("store", "inspect or update the results store");
  store->add_option("--path", sta.path);
  store->add_flag("--list", sta.list);
  store->add_flag("--get", sta.do_get);
  store->add_flag("--set", sta.do_set);
  store->add_flag("--init-literature", sta.init_literature);
  store->add_option("--quantity", sta.quantity, "A, A~, B, B~ or C");
  store->add_option("--q", sta.q);
  store->add_option("--n", sta.n);
  store->add_option("--k", sta.k);
  store->add_option("--t", sta.t, "t or delta");
  store->add_option("--lambda", sta.lambda, "lambda or alpha");
  store->add_option("--lower", sta.lower);
  store->add_option("--upper", sta.upper);
  store->add_flag("--optimal", sta.optimal);
  store->add_option("--provenance", sta.provenance);
  store->add_option("--citation", sta.citation);

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    json err;
    err["error"]["type"] = "usage";
    err["error"]["message"] = e.what();
    std::cout << err.dump(2) << '\n';
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  }
  g.budget_nodes_set = bn->count() > 0;

  try {
    if (bounds->parsed()) return run_bounds(g, ba);
    if (search->parsed()) return run_search(g, sa);
    if (check->parsed()) return run_check(g, ca);
    if (dual->parsed()) return run_dualize(g, dz_code, dz_emit);
    if (netsim->parsed()) return run_netsim(g, na);
    if (hamming->parsed()) {
      if (weights->parsed()) ha.sub = "weights";
      if (bridge->parsed()) ha.sub = "bridge";
      if (turan->parsed()) ha.sub = "turan";
      if (packing->parsed()) ha.sub = "packing";
      return run_hamming(g, ha);
    }
    if (enumerate->parsed()) return run_enumerate(g, en_q, en_n, en_k, en_emit);
    if (store->parsed()) return run_store(g, sta);
    throw InvalidArgs("no subcommand given");
  } catch (const std::exception& e) {
    return emit_error(g, e);
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace grasscov::cli
