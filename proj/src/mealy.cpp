#include "sushchansky/mealy.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace sushchansky {

namespace {

size_t fnv1a(const int32_t* data, size_t n) {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](unsigned char b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    for (size_t i = 0; i < n; ++i) {
        uint32_t v = static_cast<uint32_t>(data[i]);
        mix(v & 0xff);
        mix((v >> 8) & 0xff);
        mix((v >> 16) & 0xff);
        mix((v >> 24) & 0xff);
    }
    return h;
}

}  // namespace

int MealyMachine::add_state(Perm out, std::vector<int> next) {
    if (static_cast<int>(next.size()) != p || out.degree() != p)
        throw std::invalid_argument("state arity does not match the alphabet");
    states.push_back(State{std::move(out), std::move(next)});
    return static_cast<int>(states.size()) - 1;
}

int MealyMachine::identity_state() const {
    for (size_t i = 0; i < states.size(); ++i) {
        if (!states[i].out.is_identity()) continue;
        bool self = true;
        for (int t : states[i].next)
            if (t != static_cast<int>(i)) self = false;
        if (self) return static_cast<int>(i);
    }
    return -1;
}

// ---------------------------------------------------------------------------
// minimization (Moore partition refinement)

namespace {

std::vector<int> bisimulation_blocks(const MealyMachine& m) {
    size_t n = m.states.size();
    std::vector<int> block(n, 0);
    {
        std::map<std::vector<Letter>, int> by_out;
        for (size_t i = 0; i < n; ++i) {
            auto [it, inserted] = by_out.try_emplace(m.states[i].out.images(),
                                                     static_cast<int>(by_out.size()));
            block[i] = it->second;
        }
    }
    size_t nblocks = 0;
    for (int b : block) nblocks = std::max(nblocks, static_cast<size_t>(b) + 1);
    while (true) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> next_block(n);
        for (size_t i = 0; i < n; ++i) {
            std::vector<int> sig;
            sig.reserve(static_cast<size_t>(m.p) + 1);
            sig.push_back(block[i]);
            for (int t : m.states[i].next) sig.push_back(block[static_cast<size_t>(t)]);
            auto [it, inserted] = sig_ids.try_emplace(std::move(sig),
                                                      static_cast<int>(sig_ids.size()));
            next_block[i] = it->second;
        }
        if (sig_ids.size() == nblocks) break;
        nblocks = sig_ids.size();
        block = std::move(next_block);
    }
    return block;
}

}  // namespace

MealyMachine minimize(const MealyMachine& m) {
    std::vector<int> block = bisimulation_blocks(m);
    size_t n = m.states.size();
    // order quotient states by smallest member index
    int nblocks = 0;
    for (int b : block) nblocks = std::max(nblocks, b + 1);
    std::vector<int> rep(static_cast<size_t>(nblocks), -1);
    std::vector<int> order;
    for (size_t i = 0; i < n; ++i)
        if (rep[static_cast<size_t>(block[i])] < 0) {
            rep[static_cast<size_t>(block[i])] = static_cast<int>(i);
            order.push_back(block[i]);
        }
    std::vector<int> newid(static_cast<size_t>(nblocks));
    for (size_t k = 0; k < order.size(); ++k) newid[static_cast<size_t>(order[k])] = static_cast<int>(k);

    MealyMachine q;
    q.p = m.p;
    for (int b : order) {
        const auto& st = m.states[static_cast<size_t>(rep[static_cast<size_t>(b)])];
        std::vector<int> next(st.next.size());
        for (size_t x = 0; x < st.next.size(); ++x)
            next[x] = newid[static_cast<size_t>(block[static_cast<size_t>(st.next[x])])];
        q.states.push_back(MealyMachine::State{st.out, std::move(next)});
    }
    return q;
}

// ---------------------------------------------------------------------------
// canonical forms

namespace {

CanonicalForm compute_canonical(const MealyMachine& m, int initial) {
    // reachable part, in BFS discovery order
    std::vector<int> order;
    std::unordered_map<int, int> newid;
    order.push_back(initial);
    newid[initial] = 0;
    for (size_t k = 0; k < order.size(); ++k)
        for (int t : m.states[static_cast<size_t>(order[k])].next)
            if (newid.try_emplace(t, static_cast<int>(order.size())).second) order.push_back(t);

    MealyMachine sub;
    sub.p = m.p;
    for (int s : order) {
        const auto& st = m.states[static_cast<size_t>(s)];
        std::vector<int> next(st.next.size());
        for (size_t x = 0; x < st.next.size(); ++x) next[x] = newid[st.next[x]];
        sub.states.push_back(MealyMachine::State{st.out, std::move(next)});
    }

    std::vector<int> block = bisimulation_blocks(sub);
    int nblocks = 0;
    for (int b : block) nblocks = std::max(nblocks, b + 1);
    std::vector<int> rep(static_cast<size_t>(nblocks), -1);
    for (size_t i = 0; i < sub.states.size(); ++i)
        if (rep[static_cast<size_t>(block[i])] < 0) rep[static_cast<size_t>(block[i])] = static_cast<int>(i);

    // BFS over the quotient from the block of the initial state
    std::vector<int> canon_of_block(static_cast<size_t>(nblocks), -1);
    std::vector<int> bfs;
    bfs.push_back(block[0]);
    canon_of_block[static_cast<size_t>(block[0])] = 0;
    for (size_t k = 0; k < bfs.size(); ++k) {
        const auto& st = sub.states[static_cast<size_t>(rep[static_cast<size_t>(bfs[k])])];
        for (int t : st.next) {
            int tb = block[static_cast<size_t>(t)];
            if (canon_of_block[static_cast<size_t>(tb)] < 0) {
                canon_of_block[static_cast<size_t>(tb)] = static_cast<int>(bfs.size());
                bfs.push_back(tb);
            }
        }
    }

    CanonicalForm cf;
    cf.p = m.p;
    cf.states.reserve(bfs.size());
    for (int b : bfs) {
        const auto& st = sub.states[static_cast<size_t>(rep[static_cast<size_t>(b)])];
        std::vector<int> next(st.next.size());
        for (size_t x = 0; x < st.next.size(); ++x)
            next[x] = canon_of_block[static_cast<size_t>(block[static_cast<size_t>(st.next[x])])];
        cf.states.push_back(MealyMachine::State{st.out, std::move(next)});
    }
    cf.encoding.push_back(cf.p);
    cf.encoding.push_back(static_cast<int32_t>(cf.states.size()));
    for (const auto& st : cf.states) {
        for (Letter y : st.out.images()) cf.encoding.push_back(y);
        for (int t : st.next) cf.encoding.push_back(t);
    }
    cf.hash = fnv1a(cf.encoding.data(), cf.encoding.size());
    return cf;
}

}  // namespace

struct Element::CanonSlot {
    std::once_flag flag;
    CanonicalForm form;
    std::shared_ptr<const MealyMachine> compact_machine;
};

Element::Element(std::shared_ptr<const MealyMachine> machine, int initial)
    : machine_(std::move(machine)), initial_(initial), slot_(std::make_shared<CanonSlot>()) {
    if (!machine_ || initial_ < 0 || static_cast<size_t>(initial_) >= machine_->states.size())
        throw std::invalid_argument("element initial state out of range");
}

Element Element::identity(int p) {
    auto m = std::make_shared<MealyMachine>();
    m->p = p;
    m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    return Element(std::move(m), 0);
}

Element Element::rooted(const Perm& perm) {
    int p = perm.degree();
    auto m = std::make_shared<MealyMachine>();
    m->p = p;
    m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    if (perm.is_identity()) return Element(std::move(m), 0);
    m->add_state(perm, std::vector<int>(static_cast<size_t>(p), 0));
    return Element(std::move(m), 1);
}

const CanonicalForm& Element::canonical() const {
    std::call_once(slot_->flag, [this] {
        slot_->form = compute_canonical(*machine_, initial_);
        auto cm = std::make_shared<MealyMachine>();
        cm->p = slot_->form.p;
        cm->states = slot_->form.states;
        slot_->compact_machine = std::move(cm);
    });
    return slot_->form;
}

Element Element::section(Letter x) const {
    if (x < 0 || x >= p()) throw std::invalid_argument("letter out of range");
    Element s(machine_, machine_->states[static_cast<size_t>(initial_)].next[static_cast<size_t>(x)]);
    return s;
}

Word Element::apply(const Word& w) const {
    Word out;
    out.reserve(w.size());
    int s = initial_;
    for (Letter x : w) {
        const auto& st = machine_->states[static_cast<size_t>(s)];
        out.push_back(st.out(x));
        s = st.next[static_cast<size_t>(x)];
    }
    return out;
}

Element Element::inverse() const {
    auto inv = std::make_shared<MealyMachine>();
    inv->p = machine_->p;
    inv->states.reserve(machine_->states.size());
    for (const auto& st : machine_->states) {
        Perm q = st.out.inverse();
        std::vector<int> next(st.next.size());
        for (int y = 0; y < machine_->p; ++y)
            next[static_cast<size_t>(y)] = st.next[static_cast<size_t>(q(y))];
        inv->states.push_back(MealyMachine::State{std::move(q), std::move(next)});
    }
    return Element(std::move(inv), initial_);
}

Element operator*(const Element& g, const Element& h) {
    if (g.p() != h.p()) throw std::invalid_argument("elements live over different alphabets");
    const MealyMachine& a = *g.machine_;
    const MealyMachine& b = *h.machine_;
    auto prod = std::make_shared<MealyMachine>();
    prod->p = a.p;
    std::unordered_map<long long, int> ids;
    std::vector<std::pair<int, int>> pairs;
    auto key = [&b](int s, int t) {
        return static_cast<long long>(s) * static_cast<long long>(b.states.size()) + t;
    };
    pairs.emplace_back(g.initial_, h.initial_);
    ids[key(g.initial_, h.initial_)] = 0;
    for (size_t k = 0; k < pairs.size(); ++k) {
        auto [s, t] = pairs[k];
        const auto& sa = a.states[static_cast<size_t>(s)];
        const auto& sb = b.states[static_cast<size_t>(t)];
        std::vector<int> next(static_cast<size_t>(a.p));
        for (int x = 0; x < a.p; ++x) {
            int ns = sa.next[static_cast<size_t>(x)];
            int nt = sb.next[static_cast<size_t>(sa.out(x))];
            auto [it, inserted] = ids.try_emplace(key(ns, nt), static_cast<int>(pairs.size()));
            if (inserted) pairs.emplace_back(ns, nt);
            next[static_cast<size_t>(x)] = it->second;
        }
        prod->states.push_back(MealyMachine::State{perm_compose(sa.out, sb.out), std::move(next)});
    }
    return Element(std::move(prod), 0);
}

Element Element::pow(long long k) const {
    if (k < 0) return inverse().pow(-k);
    Element acc = Element::identity(p());
    Element base = *this;
    while (k > 0) {
        if (k & 1) acc = (acc * base).compacted();
        base = (base * base).compacted();
        k >>= 1;
    }
    return acc;
}

Element Element::compacted() const {
    canonical();
    if (machine_ == slot_->compact_machine) return *this;
    Element e;
    e.machine_ = slot_->compact_machine;
    e.initial_ = 0;
    e.slot_ = slot_;
    return e;
}

bool Element::operator==(const Element& other) const {
    if (machine_ == other.machine_ && initial_ == other.initial_) return true;
    const CanonicalForm& a = canonical();
    const CanonicalForm& b = other.canonical();
    return a.hash == b.hash && a.encoding == b.encoding;
}

bool Element::operator<(const Element& other) const {
    return canonical().encoding < other.canonical().encoding;
}

WreathDecomposition decompose(const Element& g) {
    WreathDecomposition d;
    d.root_perm = g.root();
    d.sections.reserve(static_cast<size_t>(g.p()));
    for (int x = 0; x < g.p(); ++x) d.sections.push_back(g.section(x));
    return d;
}

Element recompose(const Perm& root, const std::vector<Element>& sections) {
    if (sections.empty()) throw std::invalid_argument("recompose needs p sections");
    int p = sections[0].p();
    if (static_cast<int>(sections.size()) != p || root.degree() != p)
        throw std::invalid_argument("recompose needs p sections and a root of matching degree");
    auto m = std::make_shared<MealyMachine>();
    m->p = p;
    std::vector<int> top_next(static_cast<size_t>(p));
    m->add_state(root, std::vector<int>(static_cast<size_t>(p), 0));  // placeholder next
    for (int x = 0; x < p; ++x) {
        const auto& cf = sections[static_cast<size_t>(x)].canonical();
        int offset = static_cast<int>(m->states.size());
        for (const auto& st : cf.states) {
            std::vector<int> next(st.next.size());
            for (size_t i = 0; i < st.next.size(); ++i) next[i] = st.next[i] + offset;
            m->states.push_back(MealyMachine::State{st.out, std::move(next)});
        }
        top_next[static_cast<size_t>(x)] = offset;
    }
    m->states[0].next = std::move(top_next);
    return Element(std::move(m), 0);
}

bool equal(const Element& g, const Element& h) { return g == h; }

Element commutator(const Element& a, const Element& b) {
    return (a.inverse() * b.inverse() * a * b).compacted();
}

Element conjugate(const Element& a, const Element& b) {
    return (b.inverse() * a * b).compacted();
}

// ---------------------------------------------------------------------------
// order

namespace {

constexpr int kOrderMaxDepth = 512;

struct OrderFrameResult {
    OrderResult res;
    int lowlink;  // smallest stack index reached by a back edge, INT_MAX if none
};

struct OrderCtx {
    long long cap = 0;
    std::unordered_map<Element, OrderResult, ElementHash> memo;
    std::unordered_map<Element, int, ElementHash> stack_pos;
    std::vector<int> weight_at;  // per stack frame: count of >1 multipliers on the path
};

OrderFrameResult order_rec(const Element& raw, int depth, int weight, OrderCtx& ctx) {
    constexpr int kNoLink = std::numeric_limits<int>::max();
    Element g = raw.compacted();
    if (g.is_trivial()) return {OrderResult{OrderResult::Kind::Finite, 1}, kNoLink};
    if (auto it = ctx.memo.find(g); it != ctx.memo.end()) return {it->second, kNoLink};
    if (auto it = ctx.stack_pos.find(g); it != ctx.stack_pos.end()) {
        if (weight > ctx.weight_at[static_cast<size_t>(it->second)])
            return {OrderResult{OrderResult::Kind::Infinite, 0}, it->second};
        return {OrderResult{OrderResult::Kind::Finite, 1}, it->second};  // coinductive cycle
    }
    if (depth >= kOrderMaxDepth) return {OrderResult{OrderResult::Kind::ExceedsCap, 0}, kNoLink};

    int my_pos = static_cast<int>(ctx.weight_at.size());
    ctx.stack_pos.emplace(g, my_pos);
    ctx.weight_at.push_back(weight);

    OrderResult result{OrderResult::Kind::Finite, 1};
    int low = kNoLink;
    Perm pi = g.root();
    std::vector<bool> seen(static_cast<size_t>(g.p()), false);
    for (int x = 0; x < g.p() && result.kind == OrderResult::Kind::Finite; ++x) {
        if (seen[static_cast<size_t>(x)]) continue;
        // cycle of the root permutation through x; product of sections along it
        int len = 0;
        Element h = g.section(x);
        int y = pi(x);
        seen[static_cast<size_t>(x)] = true;
        ++len;
        while (y != x) {
            seen[static_cast<size_t>(y)] = true;
            h = h * g.section(y);
            y = pi(y);
            ++len;
        }
        h = h.compacted();
        long long sub = 1;
        if (!h.is_trivial()) {
            auto fr = order_rec(h, depth + 1, weight + (len > 1 ? 1 : 0), ctx);
            low = std::min(low, fr.lowlink);
            if (fr.res.kind != OrderResult::Kind::Finite) {
                result = fr.res;
                break;
            }
            sub = fr.res.value;
        }
        long long term = static_cast<long long>(len) * sub;
        result.value = std::lcm(result.value, term);
        if (result.value > ctx.cap) {
            result = OrderResult{OrderResult::Kind::ExceedsCap, 0};
            break;
        }
    }

    ctx.stack_pos.erase(g);
    ctx.weight_at.pop_back();

    bool in_open_cycle = low < my_pos;
    if (result.kind == OrderResult::Kind::Infinite ||
        (!in_open_cycle && result.kind == OrderResult::Kind::Finite))
        ctx.memo.emplace(g, result);
    return {result, low};
}

}  // namespace

OrderResult order_of(const Element& g, long long cap) {
    if (cap < 1) throw std::invalid_argument("order cap must be >= 1");
    OrderCtx ctx;
    ctx.cap = std::min<long long>(cap, 100'000'000);
    return order_rec(g, 0, 0, ctx).res;
}

std::optional<long long> order_brute_force(const Element& g, long long cap) {
    Element acc = g.compacted();
    for (long long k = 1; k <= cap; ++k) {
        if (acc.is_trivial()) return k;
        acc = (acc * g).compacted();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// nucleus closure

std::optional<std::vector<Element>> nucleus_closure(const std::vector<Element>& generators,
                                                    size_t budget) {
    if (generators.empty()) throw std::invalid_argument("nucleus needs at least one generator");
    int p = generators[0].p();

    std::unordered_map<Element, int, ElementHash> ids;  // member -> dense id
    std::vector<Element> members;
    std::deque<int> pending;
    auto insert = [&](const Element& raw) {
        Element e = raw.compacted();
        auto [it, inserted] = ids.try_emplace(e, static_cast<int>(members.size()));
        if (inserted) {
            members.push_back(e);
            pending.push_back(it->second);
        }
        return it->second;
    };

    insert(Element::identity(p));
    for (const auto& g : generators) {
        if (g.p() != p) throw std::invalid_argument("generators live over different alphabets");
        insert(g);
        insert(g.inverse());
    }

    // For members g,h the closure must contain g|_x * h|_{g(x)} for all x.
    // Pools keyed by the aligned letter: left entries (a = g|_x, y = g(x)),
    // right entries (y, b = h|_y). Products are deduplicated pairwise.
    std::vector<std::vector<int>> left_by_letter(static_cast<size_t>(p));   // ids of a
    std::vector<std::vector<int>> right_by_letter(static_cast<size_t>(p));  // ids of b
    std::unordered_set<long long> product_done;
    std::deque<std::pair<int, int>> product_queue;

    auto schedule = [&](int a_id, int b_id) {
        long long k = static_cast<long long>(a_id) << 32 | static_cast<unsigned>(b_id);
        if (product_done.insert(k).second) product_queue.emplace_back(a_id, b_id);
    };

    std::vector<std::unordered_set<int>> left_seen(static_cast<size_t>(p)),
        right_seen(static_cast<size_t>(p));

    while (!pending.empty() || !product_queue.empty()) {
        if (members.size() > budget) return std::nullopt;
        if (!pending.empty()) {
            int id = pending.front();
            pending.pop_front();
            Element g = members[static_cast<size_t>(id)];
            Perm root = g.root();
            for (int x = 0; x < p; ++x) {
                int sec = insert(g.section(x));
                int y = root(x);
                if (left_seen[static_cast<size_t>(y)].insert(sec).second) {
                    left_by_letter[static_cast<size_t>(y)].push_back(sec);
                    for (int b : right_by_letter[static_cast<size_t>(y)]) schedule(sec, b);
                }
                if (right_seen[static_cast<size_t>(x)].insert(sec).second) {
                    right_by_letter[static_cast<size_t>(x)].push_back(sec);
                    for (int a : left_by_letter[static_cast<size_t>(x)]) schedule(a, sec);
                }
            }
            continue;
        }
        auto [a_id, b_id] = product_queue.front();
        product_queue.pop_front();
        insert(members[static_cast<size_t>(a_id)] * members[static_cast<size_t>(b_id)]);
    }

    std::sort(members.begin(), members.end());
    return members;
}

// ---------------------------------------------------------------------------
// boundedness

bool is_bounded(const MealyMachine& m) {
    MealyMachine q = minimize(m);
    size_t n = q.states.size();
    int trivial = q.identity_state();
    auto alive = [&](int s) { return s != trivial; };

    // Tarjan SCC over non-trivial states
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stk;
    int counter = 0, ncomp = 0;

    struct DfsFrame {
        int v;
        size_t edge;
    };
    for (size_t root = 0; root < n; ++root) {
        if (!alive(static_cast<int>(root)) || index[root] >= 0) continue;
        std::vector<DfsFrame> dfs{{static_cast<int>(root), 0}};
        index[root] = low[root] = counter++;
        stk.push_back(static_cast<int>(root));
        on_stack[root] = true;
        while (!dfs.empty()) {
            auto& fr = dfs.back();
            size_t vi = static_cast<size_t>(fr.v);
            if (fr.edge < q.states[vi].next.size()) {
                int w = q.states[vi].next[fr.edge++];
                if (!alive(w)) continue;
                size_t wi = static_cast<size_t>(w);
                if (index[wi] < 0) {
                    index[wi] = low[wi] = counter++;
                    stk.push_back(w);
                    on_stack[wi] = true;
                    dfs.push_back({w, 0});
                } else if (on_stack[wi]) {
                    low[vi] = std::min(low[vi], index[wi]);
                }
            } else {
                if (low[vi] == index[vi]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[static_cast<size_t>(w)] = false;
                        comp[static_cast<size_t>(w)] = ncomp;
                        if (w == fr.v) break;
                    }
                    ++ncomp;
                }
                dfs.pop_back();
                if (!dfs.empty()) {
                    size_t ui = static_cast<size_t>(dfs.back().v);
                    low[ui] = std::min(low[ui], low[vi]);
                }
            }
        }
    }

    // classify each SCC: cyclic iff it has an internal edge; simple iff every
    // member has exactly one internal edge (multiplicity counted)
    std::vector<int> internal_out(n, 0);
    std::vector<bool> cyclic(static_cast<size_t>(ncomp), false), simple(static_cast<size_t>(ncomp), true);
    for (size_t v = 0; v < n; ++v) {
        if (!alive(static_cast<int>(v))) continue;
        for (int w : q.states[v].next)
            if (alive(w) && comp[static_cast<size_t>(w)] == comp[v]) {
                ++internal_out[v];
                cyclic[static_cast<size_t>(comp[v])] = true;
            }
    }
    for (size_t v = 0; v < n; ++v) {
        if (!alive(static_cast<int>(v))) continue;
        // a cyclic SCC is one simple cycle iff every member has exactly one
        // internal successor, multiplicities included
        if (cyclic[static_cast<size_t>(comp[v])] && internal_out[v] != 1)
            simple[static_cast<size_t>(comp[v])] = false;
    }
    for (int c = 0; c < ncomp; ++c)
        if (cyclic[static_cast<size_t>(c)] && !simple[static_cast<size_t>(c)]) return false;

    // condensation reachability: no path between two distinct cyclic SCCs
    std::vector<std::unordered_set<int>> succ(static_cast<size_t>(ncomp));
    for (size_t v = 0; v < n; ++v) {
        if (!alive(static_cast<int>(v))) continue;
        for (int w : q.states[v].next)
            if (alive(w) && comp[static_cast<size_t>(w)] != comp[v])
                succ[static_cast<size_t>(comp[v])].insert(comp[static_cast<size_t>(w)]);
    }
    // comp ids from Tarjan are in reverse topological order: successors have smaller ids
    std::vector<bool> reaches_cycle(static_cast<size_t>(ncomp), false);
    for (int c = 0; c < ncomp; ++c) {
        bool r = false;
        for (int d : succ[static_cast<size_t>(c)])
            r = r || reaches_cycle[static_cast<size_t>(d)] || cyclic[static_cast<size_t>(d)];
        if (r && cyclic[static_cast<size_t>(c)]) return false;
        reaches_cycle[static_cast<size_t>(c)] = r;
    }
    return true;
}

// ---------------------------------------------------------------------------
// serialization

std::string machine_to_json(const MealyMachine& m, int initial,
                            const std::vector<std::pair<std::string, int>>& named) {
    nlohmann::ordered_json j;
    j["p"] = m.p;
    j["states"] = nlohmann::ordered_json::array();
    for (const auto& st : m.states) {
        nlohmann::ordered_json s;
        s["out"] = st.out.images();
        s["next"] = st.next;
        j["states"].push_back(std::move(s));
    }
    if (initial >= 0) j["initial"] = initial;
    if (!named.empty()) {
        nlohmann::ordered_json names;
        for (const auto& [name, idx] : named) names[name] = idx;
        j["named_states"] = std::move(names);
    }
    return j.dump(2) + "\n";
}

MealyMachine machine_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    MealyMachine m;
    m.p = j.at("p").get<int>();
    for (const auto& s : j.at("states")) {
        auto out = s.at("out").get<std::vector<Letter>>();
        auto next = s.at("next").get<std::vector<int>>();
        if (static_cast<int>(out.size()) != m.p || static_cast<int>(next.size()) != m.p)
            throw std::invalid_argument("state arity does not match p");
        m.add_state(Perm(std::move(out)), std::move(next));
    }
    for (const auto& st : m.states)
        for (int t : st.next)
            if (t < 0 || static_cast<size_t>(t) >= m.states.size())
                throw std::invalid_argument("transition target out of range");
    return m;
}

std::string export_dot(const MealyMachine& m, const std::vector<std::string>& state_names) {
    auto name = [&](size_t i) {
        if (i < state_names.size() && !state_names[i].empty()) return state_names[i];
        return "s" + std::to_string(i);
    };
    std::ostringstream os;
    os << "digraph mealy {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (size_t i = 0; i < m.states.size(); ++i)
        os << "  n" << i << " [label=\"" << name(i) << " / " << m.states[i].out.str() << "\"];\n";
    for (size_t i = 0; i < m.states.size(); ++i) {
        // merge parallel edges into one label per target
        std::map<int, std::string> labels;
        for (int x = 0; x < m.p; ++x) {
            int t = m.states[i].next[static_cast<size_t>(x)];
            std::string piece = std::to_string(x) + "|" + std::to_string(m.states[i].out(x));
            auto& lab = labels[t];
            lab += (lab.empty() ? "" : ", ") + piece;
        }
        for (const auto& [t, lab] : labels)
            os << "  n" << i << " -> n" << t << " [label=\"" << lab << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace sushchansky
