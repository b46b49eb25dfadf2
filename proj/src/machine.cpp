#include "duet/machine.hpp"

#include <algorithm>
#include <deque>

namespace duet::machine {

Bytes accept_reply(const Bytes& body) {
  Bytes out{1};
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Bytes reject_reply() { return Bytes{0}; }

bool is_reject(const Bytes& payload) { return payload.empty() || payload[0] == 0; }

std::optional<Bytes> reply_body(const Bytes& payload) {
  if (is_reject(payload)) return std::nullopt;
  return Bytes(payload.begin() + 1, payload.end());
}

Bytes Transcript::canonical() const {
  Bytes out;
  for (const auto& e : events) {
    out.push_back(static_cast<uint8_t>(e.type));
    put_u32(out, static_cast<uint32_t>(e.round));
    out.push_back(static_cast<uint8_t>(e.from));
    out.push_back(static_cast<uint8_t>(e.to));
    put_blob(out, Bytes(e.slot.begin(), e.slot.end()));
    put_blob(out, e.payload);
    put_blob(out, Bytes(e.note.begin(), e.note.end()));
  }
  return out;
}

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Driver {
  const ExecutionConfig& cfg;
  ExecutionResult res;
  std::vector<PendingMessage> pending;
  int next_id = 0;
  int seq = 0;
  std::unique_ptr<PartyMachine> mach[2];
  Rng rng_a, rng_b;
  int rounds[2] = {0, 0};
  Bytes received[2];
  struct SlotState {
    std::unique_ptr<FunctionalitySession> session;
    int invocation = 0;
  };
  std::map<SlotId, SlotState> slot_state;
  Adversary default_adv;

  explicit Driver(const ExecutionConfig& c) : cfg(c), rng_a(c.seed_a), rng_b(c.seed_b) {}

  Rng& rng_of(PartyId p) { return p == PartyId::A ? rng_a : rng_b; }
  Bytes& input_of(PartyId p) {
    return const_cast<Bytes&>(p == PartyId::A ? cfg.input_a : cfg.input_b);
  }

  void event(TranscriptEvent e) {
    e.seq = seq++;
    res.transcript.events.push_back(std::move(e));
  }

  void record_output(PartyId p, const PartyOutput& out) {
    TranscriptEvent e;
    e.type = TranscriptEvent::Type::kOutput;
    e.from = e.to = p;
    e.round = rounds[static_cast<int>(p)];
    e.payload = out.value;
    if (out.bottom) e.note = "bottom";
    event(std::move(e));
    if (p == PartyId::A) {
      res.output_a = out;
      res.completed_a = true;
    } else {
      res.output_b = out;
      res.completed_b = true;
    }
  }

  void abort_party(PartyId p, const std::string& why) {
    TranscriptEvent e;
    e.type = TranscriptEvent::Type::kAbort;
    e.from = e.to = p;
    e.round = rounds[static_cast<int>(p)];
    e.note = why;
    event(std::move(e));
    res.aborted = true;
    bool done = p == PartyId::A ? res.completed_a : res.completed_b;
    if (!done) record_output(p, bottom_output());
  }

  void enqueue(PartyId from, const Outbound& ob) {
    PendingMessage m;
    m.id = next_id++;
    m.from = from;
    m.round = rounds[static_cast<int>(from)];
    m.payload = ob.payload;
    if (ob.dest == Outbound::Dest::kPeer) {
      m.to = other(from);
    } else {
      m.to_slot = true;
      m.slot = ob.slot;
    }
    pending.push_back(std::move(m));
  }

  void process_reaction(PartyId p, Reaction&& r) {
    for (auto& ob : r.messages) enqueue(p, ob);
    if (r.output) record_output(p, *r.output);
  }

  void activate(PartyId p, const Delivery& d) {
    int pi = static_cast<int>(p);
    bool done = p == PartyId::A ? res.completed_a : res.completed_b;
    if (done) return;  // terminated parties ignore late deliveries
    ++rounds[pi];
    put_blob(received[pi], d.payload);
    try {
      process_reaction(p, mach[pi]->on_message(d, rng_of(p)));
    } catch (const std::exception& ex) {
      abort_party(p, ex.what());
    }
  }

  void deliver(const PendingMessage& m) {
    if (m.to_slot) {
      TranscriptEvent e;
      e.type = TranscriptEvent::Type::kFuncInput;
      e.from = m.from;
      e.to = m.from;
      e.round = m.round;
      e.slot = m.slot;
      e.payload = m.payload;
      auto& st = slot_state[m.slot];
      auto it = cfg.protocol.slots.find(m.slot);
      if (it == cfg.protocol.slots.end()) {
        e.note = "undeclared slot";
        e.type = TranscriptEvent::Type::kFault;
        event(std::move(e));
        return;
      }
      if (!st.session || st.session->finished()) {
        Rng srng(cfg.seed_slots ^ fnv1a(m.slot) ^
                 (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(st.invocation + 1)));
        st.session = it->second.factory(srng);
        ++st.invocation;
      }
      auto out = st.session->on_input(m.from, m.payload);
      if (!out.note.empty()) e.note = out.note;
      if (out.error) e.type = TranscriptEvent::Type::kFault;
      event(std::move(e));
      for (auto& emit : out.emits) {
        PendingMessage pm;
        pm.id = next_id++;
        pm.from_slot = true;
        pm.slot = m.slot;
        pm.to = emit.to;
        pm.payload = emit.payload;
        pm.round = m.round;
        pending.push_back(std::move(pm));
      }
      return;
    }
    TranscriptEvent e;
    e.type = m.from_slot ? TranscriptEvent::Type::kFuncOutput : TranscriptEvent::Type::kMessage;
    e.from = m.from;
    e.to = m.to;
    e.round = m.round;
    e.slot = m.slot;
    e.payload = m.payload;
    event(std::move(e));
    Delivery d;
    d.source = m.from_slot ? Delivery::Source::kSlot : Delivery::Source::kPeer;
    d.slot = m.slot;
    d.payload = m.payload;
    activate(m.to, d);
  }

  ExecutionResult run() {
    Adversary* adv = cfg.adversary ? cfg.adversary.get() : &default_adv;
    if (cfg.corrupted) {
      TranscriptEvent e;
      e.type = TranscriptEvent::Type::kCorruption;
      e.from = e.to = *cfg.corrupted;
      e.note = cfg.style == CorruptionStyle::kMalicious ? "malicious" : "semi-honest";
      event(std::move(e));
    }
    for (PartyId p : {PartyId::A, PartyId::B}) {
      std::unique_ptr<PartyMachine> sub;
      if (cfg.corrupted && *cfg.corrupted == p && cfg.style == CorruptionStyle::kMalicious)
        sub = adv->substitute(p, input_of(p));
      mach[static_cast<int>(p)] = sub ? std::move(sub) : cfg.protocol.make(p, input_of(p));
    }
    for (PartyId p : {PartyId::A, PartyId::B}) {
      int pi = static_cast<int>(p);
      ++rounds[pi];
      try {
        process_reaction(p, mach[pi]->on_start(rng_of(p)));
      } catch (const std::exception& ex) {
        abort_party(p, ex.what());
      }
    }
    size_t steps = 0;
    while (!(res.completed_a && res.completed_b)) {
      if (++steps > cfg.max_steps) {
        TranscriptEvent e;
        e.type = TranscriptEvent::Type::kFault;
        e.note = "step limit";
        event(std::move(e));
        break;
      }
      if (pending.empty()) {
        if (!res.completed_a) abort_party(PartyId::A, "starved");
        if (!res.completed_b) abort_party(PartyId::B, "starved");
        break;
      }
      int id = adv->schedule(pending);
      if (id < 0) {
        if (!res.completed_a) abort_party(PartyId::A, "scheduler stopped");
        if (!res.completed_b) abort_party(PartyId::B, "scheduler stopped");
        break;
      }
      auto it = std::find_if(pending.begin(), pending.end(),
                             [id](const PendingMessage& m) { return m.id == id; });
      if (it == pending.end()) {
        TranscriptEvent e;
        e.type = TranscriptEvent::Type::kFault;
        e.note = "delivery to nonexistent register";
        event(std::move(e));
        break;
      }
      PendingMessage m = std::move(*it);
      pending.erase(it);
      deliver(m);
    }
    if (!res.completed_a) record_output(PartyId::A, bottom_output());
    if (!res.completed_b) record_output(PartyId::B, bottom_output());
    res.view_a = mach[0]->view_state();
    put_blob(res.view_a, received[0]);
    res.view_b = mach[1]->view_state();
    put_blob(res.view_b, received[1]);
    return std::move(res);
  }
};

}  // namespace

ExecutionResult run_execution(const ExecutionConfig& config) {
  Driver d(config);
  return d.run();
}

Bytes corrupt_view(const ExecutionConfig& config, const ExecutionResult& result, PartyId party) {
  if (!config.corrupted || *config.corrupted != party)
    throw ConfigError("corrupt_view: party is honest");
  return party == PartyId::A ? result.view_a : result.view_b;
}

// ---- composition -----------------------------------------------------------

namespace {

constexpr uint8_t kOuterTag = 0x00;
constexpr uint8_t kInnerTag = 0x01;

class CompositeMachine : public PartyMachine {
 public:
  CompositeMachine(PartyId party, SlotId slot, std::unique_ptr<PartyMachine> outer,
                   MachineFactory inner_factory, PartyId slot_alice)
      : party_(party),
        slot_(std::move(slot)),
        outer_(std::move(outer)),
        inner_factory_(std::move(inner_factory)),
        slot_alice_(slot_alice) {}

  Reaction on_start(Rng& rng) override {
    Reaction out;
    absorb_outer(outer_->on_start(rng), out, rng);
    return out;
  }

  Reaction on_message(const Delivery& d, Rng& rng) override {
    Reaction out;
    if (d.source == Delivery::Source::kSlot && d.slot.rfind(slot_ + "/", 0) == 0) {
      if (!inner_) throw CompositionError("inner slot delivery with no inner run");
      Delivery inner_d;
      inner_d.source = Delivery::Source::kSlot;
      inner_d.slot = d.slot.substr(slot_.size() + 1);
      inner_d.payload = d.payload;
      absorb_inner(inner_->on_message(inner_d, rng), out, rng);
      return out;
    }
    if (d.source == Delivery::Source::kSlot) {
      absorb_outer(outer_->on_message(d, rng), out, rng);
      return out;
    }
    if (d.payload.empty()) throw CompositionError("unframed peer message");
    uint8_t tag = d.payload[0];
    if (tag == kOuterTag) {
      Delivery outer_d = d;
      outer_d.payload.erase(outer_d.payload.begin());
      if (inner_) {
        outer_queue_.push_back(std::move(outer_d));
        return out;
      }
      absorb_outer(outer_->on_message(outer_d, rng), out, rng);
      return out;
    }
    if (tag != kInnerTag || d.payload.size() < 3)
      throw CompositionError("malformed composed frame");
    uint16_t inv = static_cast<uint16_t>(d.payload[1] | (d.payload[2] << 8));
    Delivery inner_d;
    inner_d.payload = Bytes(d.payload.begin() + 3, d.payload.end());
    if (!inner_) {
      if (inv != invocations_) return out;  // stale or premature frame: ignore
      inner_ = inner_factory_(party_, Bytes{});
      absorb_inner(inner_->on_start(rng), out, rng);
      if (!inner_) return out;  // inner finished during start
    }
    absorb_inner(inner_->on_message(inner_d, rng), out, rng);
    return out;
  }

  Bytes view_state() const override {
    Bytes v = outer_->view_state();
    if (inner_) {
      Bytes iv = inner_->view_state();
      put_blob(v, iv);
    }
    return v;
  }

 private:
  void absorb_outer(Reaction&& r, Reaction& out, Rng& rng) {
    if (r.output) out.output = r.output;
    for (auto& ob : r.messages) {
      if (ob.dest == Outbound::Dest::kPeer) {
        Bytes framed{kOuterTag};
        framed.insert(framed.end(), ob.payload.begin(), ob.payload.end());
        out.messages.push_back({Outbound::Dest::kPeer, "", std::move(framed)});
      } else if (ob.slot == slot_) {
        if (inner_) throw CompositionError("nested concurrent subroutine calls");
        inner_ = inner_factory_(party_, ob.payload);
        absorb_inner(inner_->on_start(rng), out, rng);
      } else {
        out.messages.push_back(std::move(ob));
      }
    }
  }

  void absorb_inner(Reaction&& r, Reaction& out, Rng& rng) {
    for (auto& ob : r.messages) {
      if (ob.dest == Outbound::Dest::kPeer) {
        Bytes framed{kInnerTag, static_cast<uint8_t>(invocations_ & 0xff),
                     static_cast<uint8_t>(invocations_ >> 8)};
        framed.insert(framed.end(), ob.payload.begin(), ob.payload.end());
        out.messages.push_back({Outbound::Dest::kPeer, "", std::move(framed)});
      } else {
        out.messages.push_back({Outbound::Dest::kSlot, slot_ + "/" + ob.slot, std::move(ob.payload)});
      }
    }
    if (!r.output) return;
    // Inner run finished: the slot's Alice gets no reply (matching the ideal
    // interface); the other side is resumed with the inner output as if the
    // functionality had answered.
    PartyOutput result = *r.output;
    inner_.reset();
    ++invocations_;
    if (party_ != slot_alice_) {
      Delivery reply;
      reply.source = Delivery::Source::kSlot;
      reply.slot = slot_;
      reply.payload = result.bottom ? reject_reply() : result.value;
      absorb_outer(outer_->on_message(reply, rng), out, rng);
    }
    flush_queue(out, rng);
  }

  void flush_queue(Reaction& out, Rng& rng) {
    while (!inner_ && !outer_queue_.empty()) {
      Delivery d = std::move(outer_queue_.front());
      outer_queue_.erase(outer_queue_.begin());
      absorb_outer(outer_->on_message(d, rng), out, rng);
    }
  }

  PartyId party_;
  SlotId slot_;
  std::unique_ptr<PartyMachine> outer_;
  MachineFactory inner_factory_;
  PartyId slot_alice_;
  std::unique_ptr<PartyMachine> inner_;
  uint16_t invocations_ = 0;
  std::vector<Delivery> outer_queue_;
};

}  // namespace

Protocol ideal_protocol(const std::string& name, const SlotSpec& spec) {
  Protocol p;
  p.name = name;
  p.ideal_slot = std::make_shared<SlotSpec>(spec);
  p.make = [](PartyId, const Bytes&) -> std::unique_ptr<PartyMachine> {
    throw CompositionError("ideal protocol machines are not directly executable");
  };
  return p;
}

Protocol compose(const Protocol& outer, const SlotId& slot, const Protocol& inner) {
  auto it = outer.slots.find(slot);
  if (it == outer.slots.end()) throw CompositionError("compose: undeclared slot " + slot);
  if (inner.ideal_slot) {
    Protocol p = outer;
    p.slots[slot].factory = inner.ideal_slot->factory;
    p.name = outer.name + "[" + slot + ":=" + inner.name + "]";
    return p;
  }
  Protocol p;
  p.name = outer.name + "[" + slot + ":=" + inner.name + "]";
  for (const auto& [id, spec] : outer.slots)
    if (id != slot) p.slots.emplace(id, spec);
  for (const auto& [id, spec] : inner.slots) p.slots.emplace(slot + "/" + id, spec);
  PartyId alice = it->second.alice;
  MachineFactory outer_make = outer.make;
  MachineFactory inner_make = inner.make;
  p.make = [outer_make, inner_make, slot, alice](PartyId party,
                                                 const Bytes& input) -> std::unique_ptr<PartyMachine> {
    return std::make_unique<CompositeMachine>(party, slot, outer_make(party, input), inner_make,
                                              alice);
  };
  return p;
}

}  // namespace duet::machine
