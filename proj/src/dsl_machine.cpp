#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "intransit/classify.hpp"
#include "intransit/dsl.hpp"

namespace intransit {

namespace {

using dsl::Node;
using dsl::Op;
using dsl::Program;
using dsl::SrcKind;

// Result of a sub-evaluation as seen by the program: a number, or the marker
// for a simulation that ran out of its explicit budget.
struct Value {
  bool exhausted = false;
  std::int64_t v = 0;
  bool operator==(const Value&) const = default;
};

enum class KontKind : std::uint8_t { kBestResp, kMatch, kPopEnv, kIfLeft, kIfRight };

struct Kont {
  KontKind kind;
  int node = -1;
  std::int64_t saved = 0;  // kIfRight: left operand
};

enum class Ctl : std::uint8_t { kEval, kReturn, kGrow, kWaiting };

struct Frame {
  std::shared_ptr<const Program> program;
  int program_id = 0;
  int self_id = 0;
  int opp_id = 0;
  Side side = Side::kRow;
  // Granted an explicit budget in full: its exhaustion is visible to the
  // parent, and its remaining fuel is part of the machine state.
  bool anchored = false;
  std::int64_t stop = 0;

  Ctl ctl = Ctl::kEval;
  int node = -1;
  Value ret;
  std::int64_t counter = 0;  // kGrow
  std::vector<Kont> kont;
  std::vector<std::int64_t> env;
};

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void put_signed(std::string& out, std::int64_t v) {
  put_varint(out, (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
}

// Serialization of one frame, excluding its fuel: frames are only recorded
// when none is anchored, and then every stop line is a function of depth.
void serialize_frame(const Frame& f, std::string& out) {
  out.clear();
  put_varint(out, static_cast<std::uint64_t>(f.program_id));
  put_varint(out, static_cast<std::uint64_t>(f.self_id));
  put_varint(out, static_cast<std::uint64_t>(f.opp_id));
  out.push_back(f.side == Side::kRow ? 'r' : 'c');
  out.push_back(static_cast<char>(f.ctl));
  switch (f.ctl) {
    case Ctl::kEval:
    case Ctl::kWaiting: put_varint(out, static_cast<std::uint64_t>(f.node)); break;
    case Ctl::kReturn:
      out.push_back(f.ret.exhausted ? 'x' : 'v');
      put_signed(out, f.ret.v);
      break;
    case Ctl::kGrow: put_varint(out, static_cast<std::uint64_t>(f.counter)); break;
  }
  put_varint(out, f.kont.size());
  for (const Kont& k : f.kont) {
    out.push_back(static_cast<char>(k.kind));
    put_varint(out, static_cast<std::uint64_t>(k.node + 1));
    if (k.kind == KontKind::kIfRight) put_signed(out, k.saved);
  }
  put_varint(out, f.env.size());
  for (auto v : f.env) put_signed(out, v);
}

std::uint64_t hash_bytes(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
  return a;
}

// Frozen serialization of a suspended frame, linked to the frames below it.
struct ChainNode {
  std::string bytes;
  std::uint64_t hash = 0;
  std::size_t depth = 0;
  std::shared_ptr<const ChainNode> below;
};

bool same_chain(const ChainNode* a, const ChainNode* b) {
  while (a != b) {
    if (!a || !b || a->depth != b->depth || a->hash != b->hash || a->bytes != b->bytes) {
      return false;
    }
    a = a->below.get();
    b = b->below.get();
  }
  return true;
}

struct StoredState {
  std::int64_t step;
  std::shared_ptr<const ChainNode> chain;
  std::string top;
};

class Machine {
 public:
  Machine(const StrategyProgram& program, const EvalEnv& env) : env_(env) {
    Frame root;
    root.program = program.ast_ptr();
    root.program_id = intern(program.canonical());
    root.self_id = intern(env.self_source);
    root.opp_id = intern(env.opponent_source);
    parsed_.resize(texts_.size());
    root.side = env.side;
    root.stop = env.fuel;
    root.node = root.program->root;
    frames_.push_back(std::move(root));
  }

  EvalResult run() {
    if (env_.game == nullptr) return fault("evaluation environment has no game");
    record();
    if (done_) return result_;
    while (true) {
      if (!check_fuel()) return result_;
      ++consumed_;
      step();
      if (done_) return result_;
      record();
      if (done_) return result_;
    }
  }

 private:
  int intern(const std::string& text) {
    auto [it, inserted] = ids_.emplace(text, static_cast<int>(texts_.size()));
    if (inserted) texts_.push_back(text);
    return it->second;
  }

  EvalResult fault(std::string msg) {
    result_ = {};
    result_.tag = EvalTag::kRuntimeFault;
    result_.fault = std::move(msg);
    result_.fuel_used = consumed_;
    done_ = true;
    return result_;
  }

  // Resolves exhaustion of the top frame. Returns false when the whole
  // evaluation is exhausted.
  bool check_fuel() {
    if (consumed_ < frames_.back().stop) return true;
    while (true) {
      const bool anchored = frames_.back().anchored;
      pop_frame();
      if (frames_.empty()) {
        result_ = {};
        result_.tag = EvalTag::kFuelExhausted;
        result_.fuel_used = consumed_;
        done_ = true;
        return false;
      }
      if (anchored) {
        Frame& parent = frames_.back();
        parent.ctl = Ctl::kReturn;
        parent.ret = Value{true, 0};
        break;
      }
      // A child that got all usable fuel ran dry: so did its parent.
    }
    return true;
  }

  void pop_frame() {
    if (frames_.back().anchored) --anchored_count_;
    frames_.pop_back();
    if (!chain_.empty()) chain_.pop_back();
  }

  void push_frame(Frame child) {
    Frame& parent = frames_.back();
    auto node = std::make_shared<ChainNode>();
    serialize_frame(parent, node->bytes);
    node->below = chain_.empty() ? nullptr : chain_.back();
    node->depth = chain_.size() + 1;
    node->hash = hash_bytes(node->bytes, node->below ? node->below->hash : 0);
    chain_.push_back(std::move(node));
    if (child.anchored) ++anchored_count_;
    frames_.push_back(std::move(child));
  }

  std::shared_ptr<const Program> program_for(int id) {
    if (static_cast<std::size_t>(id) >= parsed_.size()) parsed_.resize(texts_.size());
    if (!parsed_[id]) {
      if (texts_[id] == kOracleSource) return nullptr;
      try {
        parsed_[id] = parse_program(texts_[id]).ast_ptr();
      } catch (const ParseError&) {
        return nullptr;
      }
    }
    return parsed_[id];
  }

  void step() {
    Frame& f = frames_.back();
    switch (f.ctl) {
      case Ctl::kEval: eval(f); break;
      case Ctl::kReturn: ret(f); break;
      case Ctl::kGrow: ++f.counter; break;
      case Ctl::kWaiting: fault("internal: stepped a suspended frame"); break;
    }
    // Returning from the outermost expression of a frame is part of the step
    // that produced the value.
    while (!done_ && frames_.back().ctl == Ctl::kReturn && frames_.back().kont.empty()) {
      finish_frame(frames_.back().ret);
    }
  }

  void eval(Frame& f) {
    const Node& n = f.program->nodes[f.node];
    switch (n.op) {
      case Op::kConst:
        f.ctl = Ctl::kReturn;
        f.ret = Value{false, n.value};
        return;
      case Op::kBestResp:
        f.kont.push_back({KontKind::kBestResp, f.node});
        f.node = n.a;
        return;
      case Op::kMatch:
        f.kont.push_back({KontKind::kMatch, f.node});
        f.node = n.a;
        return;
      case Op::kIf:
        f.kont.push_back({KontKind::kIfLeft, f.node});
        f.node = n.a;
        return;
      case Op::kVar:
        f.ctl = Ctl::kReturn;
        f.ret = Value{false, f.env[f.env.size() - 1 - static_cast<std::size_t>(n.value)]};
        return;
      case Op::kLoop: return;
      case Op::kGrow:
        f.ctl = Ctl::kGrow;
        f.counter = 0;
        return;
      case Op::kSim: start_sim(f, n); return;
    }
  }

  void start_sim(Frame& f, const Node& n) {
    auto resolve = [&](const dsl::Src& s, int& id) -> std::shared_ptr<const Program> {
      switch (s.kind) {
        case SrcKind::kOpp: id = f.opp_id; break;
        case SrcKind::kSelf: id = f.self_id; break;
        case SrcKind::kQuoted: id = intern(s.quoted->canonical); return s.quoted;
      }
      return program_for(id);
    };
    int prog_text = 0;
    int against_text = 0;
    auto prog = resolve(n.prog, prog_text);
    resolve(n.against, against_text);
    if (!prog) {
      fault("cannot simulate source that is not a strategy program: '" + texts_[prog_text] + "'");
      return;
    }

    Frame child;
    child.program = prog;
    child.program_id = intern(prog->canonical);
    child.self_id = prog_text;
    child.opp_id = against_text;
    child.side = opposite(f.side);
    child.node = prog->root;

    const std::int64_t usable = f.stop - consumed_ - kSimReserve;
    if (!n.rest && n.value <= usable) {
      child.anchored = true;
      child.stop = consumed_ + n.value;
    } else {
      child.stop = consumed_ + std::max<std::int64_t>(usable, 0);
    }
    f.ctl = Ctl::kWaiting;
    push_frame(std::move(child));
  }

  void ret(Frame& f) {
    const Value v = f.ret;
    if (f.kont.empty()) {
      finish_frame(v);
      return;
    }
    const Kont k = f.kont.back();
    f.kont.pop_back();
    const Node& n = f.program->nodes[k.node];
    switch (k.kind) {
      case KontKind::kBestResp: {
        if (v.exhausted) {
          fault("bestresp applied to an exhausted simulation");
          return;
        }
        const Side other = opposite(f.side);
        if (v.v < 1 || v.v > env_.game->count(other)) {
          fault("bestresp: opponent strategy " + std::to_string(v.v) + " out of range");
          return;
        }
        f.ret = Value{false, best_response(*env_.game, f.side, static_cast<int>(v.v))};
        return;
      }
      case KontKind::kMatch:
        f.ctl = Ctl::kEval;
        if (v.exhausted) {
          f.node = n.c;
        } else {
          f.env.push_back(v.v);
          f.kont.push_back({KontKind::kPopEnv, k.node});
          f.node = n.b;
        }
        return;
      case KontKind::kPopEnv: f.env.pop_back(); return;
      case KontKind::kIfLeft:
        if (v.exhausted) {
          fault("comparison on an exhausted simulation");
          return;
        }
        f.kont.push_back({KontKind::kIfRight, k.node, v.v});
        f.ctl = Ctl::kEval;
        f.node = n.b;
        return;
      case KontKind::kIfRight: {
        if (v.exhausted) {
          fault("comparison on an exhausted simulation");
          return;
        }
        const std::int64_t l = k.saved;
        const bool holds = n.cmp == dsl::Cmp::kEq ? l == v.v : n.cmp == dsl::Cmp::kLt ? l < v.v
                                                                                        : l > v.v;
        f.ctl = Ctl::kEval;
        f.node = holds ? n.c : n.d;
        return;
      }
    }
  }

  void finish_frame(Value v) {
    if (frames_.size() == 1) {
      if (v.exhausted) {
        fault("program produced no strategy");
        return;
      }
      result_ = {};
      result_.tag = EvalTag::kHalted;
      result_.value = v.v;
      result_.fuel_used = consumed_;
      done_ = true;
      return;
    }
    pop_frame();
    Frame& parent = frames_.back();
    parent.ctl = Ctl::kReturn;
    parent.ret = v;
  }

  void record() {
    if (anchored_count_ > 0) return;
    serialize_frame(frames_.back(), scratch_);
    const ChainNode* below = chain_.empty() ? nullptr : chain_.back().get();
    const std::uint64_t h = mix(below ? below->hash : 0, hash_bytes(scratch_, 0x51ed));
    auto it = seen_.find(h);
    if (it != seen_.end()) {
      for (const StoredState& s : it->second) {
        if (s.top == scratch_ && same_chain(s.chain.get(), below)) {
          std::size_t bytes = scratch_.size();
          for (const ChainNode* c = below; c; c = c->below.get()) bytes += c->bytes.size();
          result_ = {};
          result_.tag = EvalTag::kProvenNonHalting;
          result_.witness = NonHaltWitness{s.step, consumed_, h, bytes};
          result_.fuel_used = consumed_;
          done_ = true;
          return;
        }
      }
    }
    const std::int64_t cost = static_cast<std::int64_t>(scratch_.size()) + 32;
    if (stored_bytes_ + cost > env_.memory_cap) return;
    stored_bytes_ += cost;
    if (below && charged_.insert(below).second) {
      // Charge each frozen chain node once.
      for (const ChainNode* c = below; c; c = c->below.get()) {
        if (c != below && !charged_.insert(c).second) break;
        stored_bytes_ += static_cast<std::int64_t>(c->bytes.size()) + 32;
      }
    }
    seen_[h].push_back(StoredState{consumed_, chain_.empty() ? nullptr : chain_.back(), scratch_});
  }

  const EvalEnv& env_;
  std::vector<Frame> frames_;
  std::vector<std::shared_ptr<const ChainNode>> chain_;
  int anchored_count_ = 0;
  std::int64_t consumed_ = 0;

  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> texts_;
  std::vector<std::shared_ptr<const Program>> parsed_;

  std::unordered_map<std::uint64_t, std::vector<StoredState>> seen_;
  std::unordered_set<const ChainNode*> charged_;
  std::int64_t stored_bytes_ = 0;
  std::string scratch_;

  bool done_ = false;
  EvalResult result_;
};

}  // namespace

const char* eval_tag_name(EvalTag tag) {
  switch (tag) {
    case EvalTag::kHalted: return "Halted";
    case EvalTag::kFuelExhausted: return "FuelExhausted";
    case EvalTag::kProvenNonHalting: return "ProvenNonHalting";
    case EvalTag::kRuntimeFault: return "RuntimeFault";
  }
  return "?";
}

EvalResult evaluate(const StrategyProgram& program, const EvalEnv& env) {
  Machine m(program, env);
  return m.run();
}

std::optional<NonHaltWitness> prove_nonhalt(const StrategyProgram& program, const EvalEnv& env) {
  auto r = evaluate(program, env);
  if (r.tag == EvalTag::kProvenNonHalting) return r.witness;
  return std::nullopt;
}

}  // namespace intransit
