#include "limlearn/dsl.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "limlearn/errors.hpp"
#include "limlearn/families.hpp"
#include "limlearn/registry.hpp"
#include "limlearn/transforms.hpp"

namespace lim {

std::string_view diag_code_name(DiagCode c) {
    switch (c) {
        case DiagCode::Syntax: return "E001";
        case DiagCode::UnknownName: return "E002";
        case DiagCode::KindMismatch: return "E003";
        case DiagCode::DuplicateBinding: return "E004";
        case DiagCode::UnknownTag: return "E005";
        case DiagCode::BadValue: return "E006";
    }
    return "E000";
}

std::string Diagnostic::render() const {
    std::string out = "spec:" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                      std::string(diag_code_name(code)) + " " + message;
    if (!expected.empty()) {
        out += " (expected: ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) out += ", ";
            out += expected[i];
        }
        out += ")";
    }
    return out;
}

namespace {

constexpr std::size_t kMaxNesting = 64;

enum class TokKind { Name, Int, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    std::uint64_t number = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

struct Failure {
    Diagnostic diag;
};

[[noreturn]] void fail(DiagCode code, const Token& at, std::string message,
                       std::vector<std::string> expected = {}) {
    throw Failure{Diagnostic{code, at.line, at.column, std::move(message), std::move(expected)}};
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    auto advance = [&] {
        if (s[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (true) {
        while (i < s.size()) {
            const unsigned char c = static_cast<unsigned char>(s[i]);
            if (std::isspace(c)) {
                advance();
            } else if (c == '#') {
                while (i < s.size() && s[i] != '\n') advance();
            } else {
                break;
            }
        }
        Token t;
        t.line = line;
        t.column = col;
        if (i >= s.size()) {
            t.kind = TokKind::End;
            t.text = "end of input";
            out.push_back(t);
            return out;
        }
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isalpha(c) || c == '_') {
            t.kind = TokKind::Name;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
                t.text += s[i];
                advance();
            }
        } else if (std::isdigit(c)) {
            t.kind = TokKind::Int;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                t.text += s[i];
                advance();
            }
            if (t.text.size() > 18) fail(DiagCode::BadValue, t, "integer too large");
            t.number = std::stoull(t.text);
        } else if (std::string_view("(){}[],=").find(static_cast<char>(c)) !=
                   std::string_view::npos) {
            t.kind = TokKind::Punct;
            t.text = std::string(1, static_cast<char>(c));
            advance();
        } else {
            fail(DiagCode::Syntax, t, "unexpected character",
                 {"name", "integer", "punctuation"});
        }
        out.push_back(t);
    }
}

struct FamilyEntry {
    FamilyPtr family;
    std::vector<Nat> members;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExperimentSpec parse() {
        register_catalog();
        while (peek().kind != TokKind::End) {
            const Token& t = peek();
            if (is_name("family")) {
                family_stmt();
            } else if (is_name("learner")) {
                learner_stmt();
            } else if (is_name("run")) {
                run_stmt();
            } else {
                fail(DiagCode::Syntax, t, "unexpected '" + t.text + "'",
                     {"family", "learner", "run"});
            }
        }
        return std::move(spec_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool is_name(std::string_view s) const {
        return peek().kind == TokKind::Name && peek().text == s;
    }
    bool is_punct(char c, std::size_t ahead = 0) const {
        return peek(ahead).kind == TokKind::Punct && peek(ahead).text[0] == c;
    }
    void expect_punct(char c) {
        if (!is_punct(c))
            fail(DiagCode::Syntax, peek(), "unexpected '" + peek().text + "'",
                 {std::string("'") + c + "'"});
        next();
    }
    Token expect_name() {
        if (peek().kind != TokKind::Name)
            fail(DiagCode::Syntax, peek(), "unexpected '" + peek().text + "'", {"name"});
        return next();
    }

    Value value(std::size_t depth) {
        if (depth > kMaxNesting) fail(DiagCode::Syntax, peek(), "nesting too deep");
        const Token& t = peek();
        if (t.kind == TokKind::Name) return Value{next().text};
        if (t.kind == TokKind::Int) return Value{next().number};
        if (is_punct('[')) {
            next();
            ValueList items;
            while (!is_punct(']')) {
                if (peek().kind == TokKind::End)
                    fail(DiagCode::Syntax, peek(), "unterminated list", {"']'"});
                items.push_back(value(depth + 1));
                if (is_punct(',')) next();
            }
            next();
            return Value{std::move(items)};
        }
        fail(DiagCode::Syntax, t, "unexpected '" + t.text + "'", {"name", "integer", "'['"});
    }

    KeyValue kv() {
        KeyValue out;
        out.key = expect_name().text;
        expect_punct('=');
        out.value = value(0);
        return out;
    }

    // ctor arguments after '(' when the next tokens are NAME '='.
    std::vector<KeyValue> ctor_args() {
        std::vector<KeyValue> out;
        out.push_back(kv());
        while (is_punct(',')) {
            next();
            out.push_back(kv());
        }
        expect_punct(')');
        return out;
    }

    void bind_name(const Token& name) {
        if (!bound_.insert(name.text).second)
            fail(DiagCode::DuplicateBinding, name, "duplicate binding '" + name.text + "'");
    }

    void family_stmt() {
        next();
        const Token name = expect_name();
        expect_punct('=');
        const Token head = expect_name();
        FamilyBinding b;
        b.name = name.text;
        b.ctor.name = head.text;
        if (is_punct('(')) {
            next();
            b.ctor.args = ctor_args();
        }
        FamilyEntry e;
        if (auto it = families_.find(head.text); it != families_.end()) {
            e = it->second;
        } else if (Registry::global().has_family(head.text)) {
            e.family = Registry::global().family(head.text);
            e.members = e.family->index_hint;
        } else {
            fail(DiagCode::UnknownName, head, "unknown family '" + head.text + "'");
        }
        for (const auto& a : b.ctor.args) {
            if (a.key != "members")
                fail(DiagCode::BadValue, head, "unknown family parameter '" + a.key + "'",
                     {"members"});
            e.members = ints(a.value, head);
        }
        bind_name(name);
        families_[name.text] = e;
        spec_.families.push_back(std::move(b));
    }

    std::vector<Nat> ints(const Value& v, const Token& at) {
        std::vector<Nat> out;
        if (const auto* n = std::get_if<std::uint64_t>(&v.v)) return {*n};
        const auto* list = std::get_if<ValueList>(&v.v);
        if (!list) fail(DiagCode::BadValue, at, "expected a list of integers");
        for (const Value& item : *list) {
            const auto* n = std::get_if<std::uint64_t>(&item.v);
            if (!n) fail(DiagCode::BadValue, at, "expected a list of integers");
            out.push_back(*n);
        }
        return out;
    }

    std::pair<ChainNode, Learner> chain(std::size_t depth) {
        if (depth > kMaxNesting) fail(DiagCode::Syntax, peek(), "nesting too deep");
        const Token head = expect_name();
        ChainNode node;
        node.name = head.text;
        if (is_punct('(') && peek(1).kind == TokKind::Name && is_punct('=', 2)) {
            next();
            node.args = ctor_args();
            fail(DiagCode::BadValue, head, "learner '" + head.text + "' takes no parameters");
        }
        if (is_punct('(')) {
            next();
            const TransformSpec* t = find_transform(head.text);
            if (!t) fail(DiagCode::UnknownName, head, "unknown transform '" + head.text + "'");
            auto [inner_node, inner] = chain(depth + 1);
            expect_punct(')');
            node.inner.push_back(std::move(inner_node));
            if (std::find(t->input_kinds.begin(), t->input_kinds.end(), inner->kind) ==
                t->input_kinds.end())
                fail(DiagCode::KindMismatch, head,
                     "transform '" + t->name + "' does not accept a " +
                         std::string(kind_name(inner->kind)) + " learner");
            for (const auto& p : t->required)
                if (!satisfies(inner, p))
                    fail(DiagCode::KindMismatch, head,
                         "transform '" + t->name + "' requires property '" + p + "' of '" +
                             inner->id + "'");
            try {
                return {std::move(node), t->apply(inner)};
            } catch (const std::exception& e) {
                fail(DiagCode::KindMismatch, head, e.what());
            }
        }
        if (auto it = learners_.find(head.text); it != learners_.end())
            return {std::move(node), it->second};
        if (Registry::global().has_learner(head.text))
            return {std::move(node), Registry::global().learner(head.text)};
        if (find_transform(head.text))
            fail(DiagCode::Syntax, peek(), "transform '" + head.text + "' needs an argument",
                 {"'('"});
        fail(DiagCode::UnknownName, head, "unknown learner '" + head.text + "'");
    }

    void learner_stmt() {
        next();
        const Token name = expect_name();
        expect_punct('=');
        auto [node, h] = chain(0);
        bind_name(name);
        learners_[name.text] = h;
        spec_.learners.push_back(LearnerBinding{name.text, std::move(node)});
    }

    void run_stmt() {
        const Token start = next();
        expect_punct('{');
        RunBlock block;
        std::map<std::string, Token> where;
        while (!is_punct('}')) {
            if (peek().kind == TokKind::End)
                fail(DiagCode::Syntax, peek(), "unterminated run block", {"'}'"});
            const Token at = peek();
            KeyValue item = kv();
            if (where.count(item.key))
                fail(DiagCode::DuplicateBinding, at, "duplicate setting '" + item.key + "'");
            where[item.key] = at;
            block.settings.push_back(std::move(item));
            if (is_punct(',')) next();
        }
        next();
        spec_.jobs.push_back(resolve_run(block, start, where));
        spec_.runs.push_back(std::move(block));
    }

    std::string name_value(const KeyValue& item, const Token& at) {
        const auto* s = std::get_if<std::string>(&item.value.v);
        if (!s) fail(DiagCode::BadValue, at, "'" + item.key + "' expects a name");
        return *s;
    }

    std::vector<std::string> names(const KeyValue& item, const Token& at) {
        std::vector<std::string> out;
        if (const auto* s = std::get_if<std::string>(&item.value.v)) return {*s};
        const auto* list = std::get_if<ValueList>(&item.value.v);
        if (!list) fail(DiagCode::BadValue, at, "'" + item.key + "' expects a list of names");
        for (const Value& v : *list) {
            const auto* s = std::get_if<std::string>(&v.v);
            if (!s) fail(DiagCode::BadValue, at, "'" + item.key + "' expects a list of names");
            out.push_back(*s);
        }
        return out;
    }

    Job resolve_run(const RunBlock& block, const Token& start,
                    const std::map<std::string, Token>& where) {
        Job job;
        bool has_family = false;
        bool has_learner = false;
        std::optional<std::vector<Nat>> members;
        for (const auto& item : block.settings) {
            const Token& at = where.at(item.key);
            if (item.key == "family") {
                const std::string n = name_value(item, at);
                auto it = families_.find(n);
                if (it == families_.end()) fail(DiagCode::UnknownName, at, "unknown family '" + n + "'");
                job.family = it->second.family;
                if (!members) job.members = it->second.members;
                has_family = true;
            } else if (item.key == "learner") {
                const std::string n = name_value(item, at);
                auto it = learners_.find(n);
                if (it == learners_.end())
                    fail(DiagCode::UnknownName, at, "unknown learner '" + n + "'");
                job.learner = it->second;
                job.learner_name = n;
                has_learner = true;
            } else if (item.key == "texts") {
                job.texts = names(item, at);
                for (const auto& t : job.texts)
                    if (t != "canonical" && t != "seeded" && t != "pauses")
                        fail(DiagCode::BadValue, at, "unknown text ensemble '" + t + "'",
                             {"canonical", "seeded", "pauses"});
            } else if (item.key == "check") {
                for (const auto& c : names(item, at)) {
                    if (c == "Ex") {
                        job.modes.push_back(Mode::Ex);
                    } else if (c == "Bc") {
                        job.modes.push_back(Mode::Bc);
                    } else if (auto tag = tag_from_name(c)) {
                        job.tags.push_back(*tag);
                    } else {
                        fail(DiagCode::UnknownTag, at, "unknown restriction tag '" + c + "'");
                    }
                }
            } else if (item.key == "members") {
                members = ints(item.value, at);
                job.members = *members;
            } else if (item.key == "B" || item.key == "H" || item.key == "seeds" ||
                       item.key == "seed") {
                const auto* n = std::get_if<std::uint64_t>(&item.value.v);
                if (!n) fail(DiagCode::BadValue, at, "'" + item.key + "' expects an integer");
                if (item.key == "B") {
                    if (*n > 4096) fail(DiagCode::BadValue, at, "B too large");
                    job.B = *n;
                } else if (item.key == "H") {
                    if (*n > 100000) fail(DiagCode::BadValue, at, "H too large");
                    job.H = *n;
                } else if (item.key == "seeds") {
                    if (*n > 1000) fail(DiagCode::BadValue, at, "too many seeds");
                    job.seeds = *n;
                } else {
                    job.seed = *n;
                }
            } else {
                fail(DiagCode::BadValue, at, "unknown setting '" + item.key + "'",
                     {"family", "learner", "texts", "check", "members", "B", "H", "seeds",
                      "seed"});
            }
        }
        if (!has_family) fail(DiagCode::BadValue, start, "run block without 'family'");
        if (!has_learner) fail(DiagCode::BadValue, start, "run block without 'learner'");
        return job;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ExperimentSpec spec_;
    std::set<std::string> bound_;
    std::map<std::string, FamilyEntry> families_;
    std::map<std::string, Learner> learners_;
};

void print_value(std::ostream& os, const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v.v)) {
        os << *s;
    } else if (const auto* n = std::get_if<std::uint64_t>(&v.v)) {
        os << *n;
    } else {
        const auto& list = std::get<ValueList>(v.v);
        os << '[';
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i > 0) os << ',';
            print_value(os, list[i]);
        }
        os << ']';
    }
}

void print_args(std::ostream& os, const std::vector<KeyValue>& args) {
    if (args.empty()) return;
    os << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) os << ", ";
        os << args[i].key << '=';
        print_value(os, args[i].value);
    }
    os << ')';
}

void print_chain(std::ostream& os, const ChainNode& n) {
    os << n.name;
    if (!n.inner.empty()) {
        os << '(';
        print_chain(os, n.inner.front());
        os << ')';
    }
    print_args(os, n.args);
}

} // namespace

ParseResult parse_spec(std::string_view text) {
    ParseResult out;
    try {
        Parser p(lex(text));
        out.spec = p.parse();
    } catch (const Failure& f) {
        out.error = f.diag;
    } catch (const std::exception& e) {
        out.error = Diagnostic{DiagCode::BadValue, 1, 1, e.what(), {}};
    }
    return out;
}

std::string pretty_print(const ExperimentSpec& spec) {
    std::ostringstream os;
    for (const auto& f : spec.families) {
        os << "family " << f.name << " = " << f.ctor.name;
        print_args(os, f.ctor.args);
        os << '\n';
    }
    for (const auto& l : spec.learners) {
        os << "learner " << l.name << " = ";
        print_chain(os, l.chain);
        os << '\n';
    }
    for (const auto& r : spec.runs) {
        os << "run {";
        for (const auto& kv : r.settings) {
            os << ' ' << kv.key << '=';
            print_value(os, kv.value);
        }
        os << " }\n";
    }
    return os.str();
}

} // namespace lim
