#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "duet/bits.hpp"

namespace duet::machine {

enum class PartyId : uint8_t { A = 0, B = 1 };
inline PartyId other(PartyId p) { return p == PartyId::A ? PartyId::B : PartyId::A; }
inline const char* party_name(PartyId p) { return p == PartyId::A ? "A" : "B"; }

using SlotId = std::string;

struct Delivery {
  enum class Source : uint8_t { kPeer, kSlot } source = Source::kPeer;
  SlotId slot;
  Bytes payload;
};

struct Outbound {
  enum class Dest : uint8_t { kPeer, kSlot } dest = Dest::kPeer;
  SlotId slot;
  Bytes payload;
};

struct PartyOutput {
  bool bottom = false;  // ⊥ is a first-class output value
  Bytes value;
};
inline PartyOutput bottom_output() { return PartyOutput{true, {}}; }

struct Reaction {
  std::vector<Outbound> messages;
  std::optional<PartyOutput> output;
};

// A round-based interactive machine. Deterministic given its input, the
// delivered messages and the explicit randomness tape.
class PartyMachine {
 public:
  virtual ~PartyMachine() = default;
  virtual Reaction on_start(Rng&) { return {}; }
  virtual Reaction on_message(const Delivery& d, Rng& rng) = 0;
  virtual Bytes view_state() const { return {}; }
};

// Trusted-party instance bound to a slot. Inputs arrive as scheduled
// deliveries; emitted messages are again adversary-schedulable.
class FunctionalitySession {
 public:
  virtual ~FunctionalitySession() = default;
  struct Emit {
    PartyId to;
    Bytes payload;
  };
  struct Result {
    std::vector<Emit> emits;
    std::string note;      // logged to the transcript when nonempty
    bool error = false;
  };
  virtual Result on_input(PartyId from, const Bytes& payload) = 0;
  virtual bool finished() const = 0;
};

using SessionFactory = std::function<std::unique_ptr<FunctionalitySession>(Rng& rng)>;

struct SlotSpec {
  PartyId alice = PartyId::A;  // who plays the functionality's Alice role
  SessionFactory factory;
};

using MachineFactory =
    std::function<std::unique_ptr<PartyMachine>(PartyId party, const Bytes& input)>;

struct Protocol {
  std::string name;
  std::map<SlotId, SlotSpec> slots;
  MachineFactory make;
  // Set for ideal protocols: composing one into a slot rebinds the slot's
  // session factory instead of wrapping machines.
  std::shared_ptr<SlotSpec> ideal_slot;
};

struct TranscriptEvent {
  enum class Type : uint8_t {
    kMessage,      // peer-to-peer delivery
    kFuncInput,    // party -> functionality
    kFuncOutput,   // functionality -> party
    kCorruption,
    kAbort,
    kOutput,
    kFault,
  };
  Type type;
  int seq = 0;
  int round = 0;  // sender activation index
  PartyId from = PartyId::A;
  PartyId to = PartyId::A;
  SlotId slot;
  Bytes payload;
  std::string note;
};

struct Transcript {
  std::vector<TranscriptEvent> events;
  Bytes canonical() const;  // deterministic byte encoding of the event list
};

struct PendingMessage {
  int id = 0;
  bool from_slot = false;  // functionality -> party
  bool to_slot = false;    // party -> functionality
  PartyId from = PartyId::A;
  PartyId to = PartyId::A;
  SlotId slot;
  Bytes payload;
  int round = 0;
};

enum class CorruptionStyle : uint8_t { kNone, kSemiHonest, kMalicious };

// Scheduling and corruption hooks. The default delivers FIFO and performs no
// substitution (a semi-honest or scripted-honest adversary).
class Adversary {
 public:
  virtual ~Adversary() = default;
  // Return the id of the pending message to deliver next, or -1 to stop
  // scheduling (starves the execution; remaining parties output ⊥).
  virtual int schedule(const std::vector<PendingMessage>& pending) {
    return pending.empty() ? -1 : pending.front().id;
  }
  // Malicious corruption: substitute the corrupted party's machine.
  virtual std::unique_ptr<PartyMachine> substitute(PartyId, const Bytes& input) {
    (void)input;
    return nullptr;
  }
};

struct ExecutionConfig {
  Protocol protocol;
  Bytes input_a, input_b;
  uint64_t seed_a = 1;
  uint64_t seed_b = 2;
  uint64_t seed_slots = 3;
  CorruptionStyle style = CorruptionStyle::kNone;
  std::optional<PartyId> corrupted;
  std::shared_ptr<Adversary> adversary;  // nullptr = default scheduler
  size_t max_steps = 1u << 20;
};

struct ExecutionResult {
  PartyOutput output_a, output_b;
  bool completed_a = false, completed_b = false;
  bool aborted = false;
  Transcript transcript;
  Bytes view_a, view_b;  // end-of-run state + received messages
};

ExecutionResult run_execution(const ExecutionConfig& config);

// Post-execution adversary access to a corrupted party's view. Querying an
// honest party throws ConfigError.
Bytes corrupt_view(const ExecutionConfig& config, const ExecutionResult& result, PartyId party);

// Replaces each invocation of the named slot by an invocation of `inner`,
// which must follow the call/reply shape of the slot (the slot's Alice sends
// one input; the inner protocol's B-side output is delivered back as the
// reply). Sequential discipline: a second call while one is in progress is a
// CompositionError at run time; composing into an undeclared slot throws
// immediately.
Protocol compose(const Protocol& outer, const SlotId& slot, const Protocol& inner);

// The ideal protocol for a functionality slot: composing it into a matching
// slot is the identity on behavior.
Protocol ideal_protocol(const std::string& name, const SlotSpec& spec);

// Payload helpers shared by functionality replies and composed inner runs.
Bytes accept_reply(const Bytes& body);
Bytes reject_reply();
bool is_reject(const Bytes& payload);
std::optional<Bytes> reply_body(const Bytes& payload);

}  // namespace duet::machine
