#include "limlearn/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "limlearn/errors.hpp"
#include "limlearn/learner.hpp"
#include "limlearn/registry.hpp"
#include "limlearn/subset_scan.hpp"

namespace lim {

namespace {

constexpr Nat kMemoLimit = 256;
constexpr Nat kExtBound = 127;

std::string list_body(const NatSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(s[i]);
    }
    return out;
}

bool needs_memo(TermKind k) {
    return k == TermKind::FamIdx || k == TermKind::WbForward || k == TermKind::CautBc ||
           k == TermKind::Poison;
}

} // namespace

// Lazily filled evaluation state. Values below kMemoLimit are cached; the
// recursive kinds are filled in increasing x.
struct TermNode::Memo {
    std::mutex mu;
    std::vector<std::int8_t> values;  // -1 unknown

    // WbForward
    NatSet pool;
    std::optional<Nat> unstable_from;
    Nat scanned = 0;

    // CautBc: extensions of h(D'') on [0, kExtBound]
    std::map<NatSet, Extension> ext_cache;

    // Poison
    std::map<Seq, Term, SeqLess> ext_terms;
    std::optional<Nat> first_q;  // min { y | Q(sigma, y) = 1 }
    Nat q_scanned = 0;
};

namespace {

std::mutex& intern_mu() {
    static std::mutex mu;
    return mu;
}

std::unordered_map<std::string, std::shared_ptr<const TermNode>>& intern_table() {
    static std::unordered_map<std::string, std::shared_ptr<const TermNode>> table;
    return table;
}

} // namespace

Term intern(std::shared_ptr<TermNode> n) {
    if (needs_memo(n->kind)) {
        std::lock_guard lock(intern_mu());
        auto& table = intern_table();
        auto it = table.find(n->canonical);
        if (it != table.end()) return Term(it->second);
        n->memo = std::make_shared<TermNode::Memo>();
        std::shared_ptr<const TermNode> c = n;
        table.emplace(n->canonical, c);
        return Term(c);
    }
    return Term(std::shared_ptr<const TermNode>(std::move(n)));
}

Term Term::quest() {
    static const Term q = [] {
        auto n = std::make_shared<TermNode>();
        n->kind = TermKind::Quest;
        n->canonical = "?";
        return intern(n);
    }();
    return q;
}

Term Term::fam_idx(FamilyPtr family, Nat index) {
    if (!family) throw ConfigError("famidx without a family");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::FamIdx;
    n->canonical = "famidx(" + family->name + "," + std::to_string(index) + ")";
    n->family = std::move(family);
    n->index = index;
    return intern(n);
}

Term Term::fin_set(NatSet d) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::FinSet;
    n->set = make_set(std::move(d));
    n->canonical = "finset(" + list_body(n->set) + ")";
    return intern(n);
}

Term Term::co_finite(NatSet excluded) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::CoFinite;
    n->set = make_set(std::move(excluded));
    n->canonical = "cofinite(" + list_body(n->set) + ")";
    return intern(n);
}

Term Term::patch_union(Term inner, NatSet d) {
    if (inner.is_quest()) throw ContractViolation("patch of '?'");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::PatchUnion;
    n->set = make_set(std::move(d));
    n->canonical = "patch(" + inner.canonical() + "," + set_to_string(n->set) + ")";
    n->inner = inner.node_;
    return intern(n);
}

Term Term::reset_set(NatSet d) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::ResetSet;
    n->set = make_set(std::move(d));
    n->canonical = "reset(" + set_to_string(n->set) + ")";
    return intern(n);
}

Term Term::wb_forward(LearnerPtr sd_learner, NatSet d) {
    if (!sd_learner || sd_learner->kind != Kind::Sd)
        throw ContractViolation("wbfwd needs a set-driven learner");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::WbForward;
    n->set = make_set(std::move(d));
    n->canonical = "wbfwd(" + sd_learner->id + "," + set_to_string(n->set) + ")";
    n->learner = std::move(sd_learner);
    return intern(n);
}

Term Term::caut_bc(LearnerPtr sd_learner, NatSet d) {
    if (!sd_learner || sd_learner->kind != Kind::Sd)
        throw ContractViolation("cautbc needs a set-driven learner");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::CautBc;
    n->set = make_set(std::move(d));
    n->canonical = "cautbc(" + sd_learner->id + "," + set_to_string(n->set) + ")";
    n->learner = std::move(sd_learner);
    return intern(n);
}

Term Term::poison(LearnerPtr g_learner, FamilyPtr family, std::size_t depth, Seq sigma) {
    if (!g_learner) throw ContractViolation("poison without a learner");
    if (!family) throw ConfigError("poison without a family");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Poison;
    n->canonical = "poison(" + g_learner->id + "," + family->name + "," + std::to_string(depth) +
                   "," + seq_to_string(sigma) + ")";
    n->learner = std::move(g_learner);
    n->family = std::move(family);
    n->depth = depth;
    n->sigma = std::move(sigma);
    return intern(n);
}

Term Term::pad(Term inner, Seq sigma) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Pad;
    n->canonical = "pad(" + inner.canonical() + "," + seq_to_string(sigma) + ")";
    n->inner = inner.node_;
    n->sigma = std::move(sigma);
    return intern(n);
}

TermKind Term::kind() const { return node_->kind; }

bool Term::is_quest() const {
    const TermNode* n = node_.get();
    while (n->kind == TermKind::Pad) n = n->inner.get();
    return n->kind == TermKind::Quest;
}

const std::string& Term::canonical() const { return node_->canonical; }

namespace {

bool eval_node(const TermNode& n, Nat x);

// --- forward-enumerating witness-based hypothesis ---------------------------
//
// x in D -> 1; h(D)(x) = 0 -> 0; otherwise 1 iff h(D') = h(D) for every D'
// between D and D ∪ {x' <= x | h(D)(x') = 1}. Once some D' disagrees the
// condition fails for all larger x, so only the first failure is tracked.
bool eval_wb_forward(const TermNode& n, TermNode::Memo& m, Nat x) {
    if (contains(n.set, x)) return true;
    const Term base = n.learner->sd(n.set);
    if (!base.eval(x)) return false;
    while (m.scanned <= x && !m.unstable_from) {
        const Nat y = m.scanned;
        if (!contains(n.set, y) && base.eval(y)) {
            const bool stable = for_each_between_with(
                n.set, m.pool, y, [&](const NatSet& d) { return n.learner->sd(d) == base; });
            if (!stable)
                m.unstable_from = y;
            else
                m.pool = with(m.pool, y);
        }
        ++m.scanned;
    }
    return !m.unstable_from || x < *m.unstable_from;
}

// --- forward-search target-cautious hypothesis ------------------------------
//
// x in D -> 1; h(D)(x) = 0 -> 0; otherwise, with
// E = D ∪ {x} ∪ {x' < x | value(x') = 1}, 1 iff E ⊆ C_{h(D'')} for every D''
// between D and E.
bool eval_caut_bc(const TermNode& n, TermNode::Memo& m, Nat x,
                  const std::function<bool(Nat)>& earlier) {
    if (contains(n.set, x)) return true;
    const Term base = n.learner->sd(n.set);
    if (!base.eval(x)) return false;
    NatSet e = n.set;
    for (Nat y = 0; y < x; ++y)
        if (!contains(n.set, y) && earlier(y)) e.push_back(y);
    e.push_back(x);
    e = make_set(std::move(e));
    const NatSet pool = set_difference(e, n.set);
    auto covers = [&](const NatSet& d) {
        auto it = m.ext_cache.find(d);
        if (it == m.ext_cache.end())
            it = m.ext_cache.emplace(d, Extension(n.learner->sd(d), kExtBound)).first;
        const Extension& ext = it->second;
        for (Nat v : e) {
            if (v <= kExtBound) {
                if (!ext.test(v)) return false;
            } else if (!n.learner->sd(d).eval(v)) {
                return false;
            }
        }
        return true;
    };
    return for_each_between(n.set, pool, covers);
}

// --- poisoned hypothesis -----------------------------------------------------
//
// Q(sigma, x) = 1 iff some extension sigma⌢tau, tau over {x' <= x | h(sigma)(x') = 1}
// plus pauses with |tau| <= min(x, depth), disagrees with h(sigma) at some y <= x.
// Q is monotone in x; first_q is the least x with Q = 1.
void scan_poison(const TermNode& n, TermNode::Memo& m, Nat upto) {
    const Term base = n.learner->star(n.sigma);
    while (!m.first_q && m.q_scanned <= upto) {
        const Nat x = m.q_scanned;
        NatSet cx;
        for (Nat y = 0; y <= x; ++y)
            if (base.eval(y)) cx.push_back(y);
        const std::size_t len = static_cast<std::size_t>(std::min<Nat>(x, n.depth));
        bool hit = false;
        for (const Seq& tau : all_sequences(pause_alphabet(cx), len)) {
            if (tau.empty()) continue;
            auto it = m.ext_terms.find(tau);
            const bool fresh = it == m.ext_terms.end();
            if (fresh) it = m.ext_terms.emplace(tau, n.learner->star(concat(n.sigma, tau))).first;
            const Term& other = it->second;
            for (Nat y = fresh ? 0 : x; y <= x; ++y) {
                if (other.eval(y) != base.eval(y)) {
                    hit = true;
                    break;
                }
            }
            if (hit) break;
        }
        if (hit) m.first_q = x;
        ++m.q_scanned;
    }
}

bool eval_poison(const TermNode& n, TermNode::Memo& m, Nat x) {
    scan_poison(n, m, x);
    if (!m.first_q || x < *m.first_q) return n.learner->star(n.sigma).eval(x);
    return !n.family->decide(x - *m.first_q, x);
}

bool eval_memo_kind(const TermNode& n, TermNode::Memo& m, Nat x) {
    switch (n.kind) {
        case TermKind::FamIdx:
            return n.family->decide(n.index, x);
        case TermKind::WbForward:
            return eval_wb_forward(n, m, x);
        case TermKind::CautBc: {
            std::function<bool(Nat)> earlier = [&](Nat y) {
                if (y < kMemoLimit && m.values[y] >= 0) return m.values[y] == 1;
                const bool v = eval_caut_bc(n, m, y, earlier);
                if (y < kMemoLimit) m.values[y] = v ? 1 : 0;
                return v;
            };
            return eval_caut_bc(n, m, x, earlier);
        }
        case TermKind::Poison:
            return eval_poison(n, m, x);
        default:
            throw std::logic_error("not a memoized kind");
    }
}

bool eval_node(const TermNode& n, Nat x) {
    switch (n.kind) {
        case TermKind::Quest:
            throw ContractViolation("'?' has no semantics");
        case TermKind::FinSet:
        case TermKind::ResetSet:
            return contains(n.set, x);
        case TermKind::CoFinite:
            return !contains(n.set, x);
        case TermKind::PatchUnion:
            return contains(n.set, x) || eval_node(*n.inner, x);
        case TermKind::Pad:
            return eval_node(*n.inner, x);
        case TermKind::FamIdx:
        case TermKind::WbForward:
        case TermKind::CautBc:
        case TermKind::Poison:
            break;
    }
    if (n.learner == nullptr && n.kind != TermKind::FamIdx)
        throw ConfigError("unresolved learner reference in " + n.canonical);
    auto& m = *n.memo;
    std::lock_guard lock(m.mu);
    if (m.values.empty()) m.values.assign(kMemoLimit, -1);
    if (x < kMemoLimit && m.values[x] >= 0) return m.values[x] == 1;
    const bool v = eval_memo_kind(n, m, x);
    if (x < kMemoLimit) m.values[x] = v ? 1 : 0;
    return v;
}

} // namespace

bool Term::eval(Nat x) const { return eval_node(*node_, x); }

bool eval_term(const Term& t, Nat x) { return t.eval(x); }

bool semantic_eq(const Term& a, const Term& b, Nat bound) {
    for (Nat x = 0; x <= bound; ++x)
        if (a.eval(x) != b.eval(x)) return false;
    return true;
}

// --- Extension --------------------------------------------------------------

Extension::Extension(const Term& t, Nat bound) : bound_(bound), words_(bound / 64 + 1, 0) {
    for (Nat x = 0; x <= bound; ++x)
        if (t.eval(x)) set(x);
}

Extension Extension::of_set(const NatSet& s, Nat bound) {
    Extension e;
    e.bound_ = bound;
    e.words_.assign(bound / 64 + 1, 0);
    for (Nat x : s)
        if (x <= bound) e.set(x);
    return e;
}

bool Extension::subset_of(const Extension& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

std::optional<Nat> Extension::first_outside(const Extension& other) const {
    for (Nat x = 0; x <= bound_; ++x)
        if (test(x) && !other.test(x)) return x;
    return std::nullopt;
}

std::optional<Nat> Extension::first_difference(const Extension& other) const {
    for (Nat x = 0; x <= bound_; ++x)
        if (test(x) != other.test(x)) return x;
    return std::nullopt;
}

Extension Extension::intersect(const Extension& other) const {
    Extension out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
    return out;
}

// --- parsing ----------------------------------------------------------------

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view s) : s_(s) {}

    Term parse_all() {
        Term t = term();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("term parse error at " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' ||
               c == '-';
    }

    // Identifier characters plus balanced [...] groups (transform learner ids).
    std::string name() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size()) {
            if (name_char(s_[pos_])) {
                ++pos_;
            } else if (s_[pos_] == '[') {
                int depth = 0;
                do {
                    if (s_[pos_] == '[') ++depth;
                    if (s_[pos_] == ']') --depth;
                    ++pos_;
                } while (pos_ < s_.size() && depth > 0);
                if (depth != 0) fail("unbalanced '['");
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    Nat number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        if (pos_ - start > 19) fail("number too large");
        return std::stoull(std::string(s_.substr(start, pos_ - start)));
    }

    // Comma-separated numbers up to (not including) `close`.
    NatSet numbers(char close) {
        NatSet out;
        if (peek(close)) return out;
        out.push_back(number());
        while (peek(',')) {
            ++pos_;
            out.push_back(number());
        }
        return out;
    }

    NatSet braced_set() {
        expect('{');
        NatSet out = numbers('}');
        expect('}');
        return out;
    }

    Seq seq() {
        expect('<');
        Seq out;
        auto item = [&] {
            if (peek('#')) {
                ++pos_;
                out.push_back(Datum::pause());
            } else {
                out.push_back(Datum::num(number()));
            }
        };
        if (!peek('>')) {
            item();
            while (peek(',')) {
                ++pos_;
                item();
            }
        }
        expect('>');
        return out;
    }

    Term term() {
        if (peek('?')) {
            ++pos_;
            return Term::quest();
        }
        const std::string head = name();
        expect('(');
        Term out = Term::quest();
        if (head == "famidx") {
            auto fam = Registry::global().family(name());
            expect(',');
            out = Term::fam_idx(fam, number());
        } else if (head == "finset") {
            out = Term::fin_set(numbers(')'));
        } else if (head == "cofinite") {
            out = Term::co_finite(numbers(')'));
        } else if (head == "patch") {
            Term inner = term();
            expect(',');
            out = Term::patch_union(inner, braced_set());
        } else if (head == "reset") {
            out = Term::reset_set(braced_set());
        } else if (head == "wbfwd" || head == "cautbc") {
            auto h = Registry::global().learner(name());
            expect(',');
            NatSet d = braced_set();
            out = head == "wbfwd" ? Term::wb_forward(h, d) : Term::caut_bc(h, d);
        } else if (head == "poison") {
            auto h = Registry::global().learner(name());
            expect(',');
            auto fam = Registry::global().family(name());
            expect(',');
            const Nat depth = number();
            expect(',');
            out = Term::poison(h, fam, depth, seq());
        } else if (head == "pad") {
            Term inner = term();
            expect(',');
            out = Term::pad(inner, seq());
        } else {
            fail("unknown constructor '" + head + "'");
        }
        expect(')');
        return out;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse_all(); }

} // namespace lim
