#pragma once

// Simulator for the generalized combination network. A source holds h
// message symbols over F_q. Each of r middle nodes receives k linear
// combinations of the messages (a basis of a k-subspace assigned from a
// code) and relays them verbatim on k parallel links. A receiver is any
// alpha-subset of middle nodes plus eps direct links from the source, and
// must reconstruct all h messages.
//
// A scalar linear assignment works exactly when every alpha assigned
// subspaces together span dimension at least h - eps, which is the
// covering-code condition with delta = h - k - eps. The simulator settles
// the direct links by scanning the standard basis, inverts each receiver's
// system once, and replays messages end to end. Nonlinear solutions are
// arbitrary codebooks: one length-rk string per message, node i owning
// coordinates [ik, ik+k); a receiver can decode iff no pattern on its alpha*k
// coordinates is shared by more than q^eps messages, the direct links then
// carrying the index inside the collision class.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grasscov/codes.hpp"

namespace grasscov {

struct NetworkParams {
  int q = 2;
  int h = 0;        // message symbols at the source
  long long r = 0;  // middle nodes
  int alpha = 0;    // middle nodes feeding one receiver
  int k = 1;        // parallel links out of a middle node
  int eps = 0;      // direct source links into a receiver
};

struct NetworkClass {
  std::string status;  // "trivial" | "unsolvable" | "nontrivial"
  int delta = 0;       // h - k - eps
  std::string reason;
};

// trivial when k + eps >= h (routing suffices), unsolvable when
// alpha*k + eps < h, nontrivial otherwise.
NetworkClass classify(const NetworkParams& p);

// Covering-code parameters a scalar linear solution needs (InvalidArgs
// unless the network classifies as "nontrivial").
struct CodeRequirement {
  int q = 0, n = 0, k = 0, delta = 0;
  long long alpha = 0;
  long long min_words = 0;  // the network's r
};
CodeRequirement required_code(const NetworkParams& p);

// Parameters of the covering code a vector solution of dimension ell needs:
// (h*ell, k*ell, (h-k-eps)*ell).
struct VectorParams {
  int n = 0, k = 0, delta = 0;
};
VectorParams vector_params(int h, int k, int eps, int ell);

// The network a dimension-ell vector solution lives on: h, k, eps scaled by
// ell, everything else unchanged. Simulation of vector solutions reuses the
// scalar machinery at the expanded dimensions.
NetworkParams expand_network(const NetworkParams& p, int ell);

struct CodingAssignment {
  NetworkParams params;
  FieldCtx ctx;
  std::vector<MatrixFq> node_rows;  // r matrices, k x h each
};

// Assign the first r slots of the code (multiplicities expanded, canonical
// order) to the middle nodes and prove the covering property for this
// network (skipped when delta <= 0, where any assignment works).
// CodeTooSmall when the code has fewer than r slots; CodeInvalid carries the
// offending receiver's middle nodes and their span dimension.
CodingAssignment assign_scalar(const NetworkParams& p, const GrassCode& code);

// The full system matrix one receiver sees: alpha * k node rows followed by
// exactly eps direct rows (standard basis vectors completing the span, zero
// padded).
MatrixFq receiver_matrix(const CodingAssignment& a, const std::vector<int>& nodes);

struct ReceiverOutcome {
  std::vector<int> nodes;
  std::string status = "ok";  // "ok" | "mismatch" | "singular"
  long long messages_tested = 0;
};

// Replays messages through one receiver: pick h independent received rows,
// invert once, decode every message and compare. A receiver that cannot
// decode is reported as "singular", never thrown. Messages are exhaustive
// when q^h <= message_cap, otherwise message_cap seeded samples.
ReceiverOutcome simulate_receiver(const CodingAssignment& a, const std::vector<int>& nodes,
                                  std::uint64_t seed = 1, long long message_cap = 4096);

struct SimulationReport {
  long long receivers = 0;
  bool exhaustive_messages = true;
  long long ok = 0, mismatch = 0, singular = 0;
  std::vector<ReceiverOutcome> failures;  // first few non-ok receivers
};

// Every receiver, messages swept as in simulate_receiver.
SimulationReport simulate_all(const CodingAssignment& a, std::uint64_t seed = 1,
                              long long message_cap = 4096,
                              long long receiver_budget = 1'000'000);

// One message through every receiver, reporting each failure with the
// receiver as witness.
struct DecodeOutcome {
  std::vector<int> nodes;
  std::string status = "ok";  // "ok" | "mismatch" | "singular"
  std::vector<Fq> decoded;    // empty when singular
};
struct SingleMessageReport {
  long long receivers = 0;
  long long ok = 0;
  bool all_ok = true;
  std::vector<DecodeOutcome> failures;  // first few, lexicographic receiver order
};
SingleMessageReport simulate(const CodingAssignment& a, const std::vector<Fq>& message,
                             long long receiver_budget = 1'000'000);

// Nonlinear solution: one length-rk string per message, message-index order.
struct NonlinearCode {
  NetworkParams params;
  std::vector<std::vector<Fq>> strings;  // q^h strings of length r*k
};

// Validates the shape: exactly q^h strings (WrongCount), each of length r*k
// (WrongLength), symbols below q.
NonlinearCode nonlinear_from_strings(const NetworkParams& p,
                                     std::vector<std::vector<Fq>> strings);

// The codebook of a linear assignment (message -> concatenated node
// symbols), for comparing the two checkers on equal footing.
NonlinearCode nonlinear_from_linear(const CodingAssignment& a);

struct NonlinearReport {
  bool solvable = true;
  long long receivers_checked = 0;
  std::vector<int> witness_receiver;  // first receiver over the class limit
  long long worst_class = 0;          // largest collision class seen
};

// Collision-class criterion over every receiver: every pattern on a
// receiver's alpha*k coordinates occurs at most q^eps times.
NonlinearReport nonlinear_check(const NonlinearCode& c, long long receiver_budget = 1'000'000);

// Full round trip: encode every message, decode through the collision-class
// index carried on the direct links, compare.
NonlinearReport nonlinear_simulate(const NonlinearCode& c,
                                   long long receiver_budget = 1'000'000);

// Message index <-> coordinate vector, little endian base q.
std::vector<Fq> message_from_index(int q, int h, long long idx);
long long message_to_index(int q, const std::vector<Fq>& x);

}  // namespace grasscov
