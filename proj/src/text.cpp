#include "limlearn/text.hpp"

#include <algorithm>
#include <variant>

#include "limlearn/errors.hpp"

namespace lim {

NatSet Language::elements_upto(Nat bound) const {
    NatSet out;
    for (Nat x = 0; x <= bound; ++x)
        if (member(x)) out.push_back(x);
    return out;
}

std::uint64_t Lcg::next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
}

double Lcg::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Lcg::below(std::uint64_t n) {
    return n == 0 ? 0 : static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
}

namespace {

struct Canonical {
    Language lang;
};
struct FiniteThenPauses {
    Seq s;
};
struct Seeded {
    Language lang;
    std::uint64_t seed;
    double pause_rate;
    double dup_rate;
};
struct Delayed {
    std::shared_ptr<const Text::Impl> inner;
    std::vector<std::size_t> pauses;
};
struct PrefixThenConstant {
    Seq s;
    Datum d;
};

// Ascending enumeration of a language below kScanLimit.
class Enumerator {
public:
    explicit Enumerator(const Language& lang) : lang_(lang) {}
    std::optional<Nat> next() {
        while (cursor_ < kScanLimit) {
            const Nat x = cursor_++;
            if (lang_.member(x)) return x;
        }
        return std::nullopt;
    }

private:
    const Language& lang_;
    Nat cursor_ = 0;
};

} // namespace

struct Text::Impl {
    std::variant<Canonical, FiniteThenPauses, Seeded, Delayed, PrefixThenConstant> gen;
    std::string id;

    Seq prefix(std::size_t n) const {
        Seq out;
        out.reserve(n);
        std::visit([&](const auto& g) { fill(g, n, out); }, gen);
        return out;
    }

    static void fill(const Canonical& g, std::size_t n, Seq& out) {
        Enumerator e(g.lang);
        while (out.size() < n) {
            auto x = e.next();
            if (!x) break;
            out.push_back(Datum::num(*x));
        }
        out.resize(n, Datum::pause());
    }

    static void fill(const FiniteThenPauses& g, std::size_t n, Seq& out) {
        out = take(g.s, n);
        out.resize(n, Datum::pause());
    }

    static void fill(const PrefixThenConstant& g, std::size_t n, Seq& out) {
        out = take(g.s, n);
        out.resize(n, g.d);
    }

    static void fill(const Seeded& g, std::size_t n, Seq& out) {
        Lcg rng(g.seed);
        Enumerator e(g.lang);
        std::vector<Nat> window;  // next unshown elements, ascending
        std::vector<std::size_t> age;  // fresh picks survived while in the window
        std::vector<Nat> shown;
        bool exhausted = false;
        std::size_t since_fresh = 0;
        auto refill = [&] {
            while (!exhausted && window.size() < 3) {
                auto x = e.next();
                if (x) {
                    window.push_back(*x);
                    age.push_back(0);
                } else
                    exhausted = true;
            }
        };
        while (out.size() < n) {
            refill();
            const bool force = since_fresh >= 3 && !window.empty();
            const double u = rng.uniform();
            if (!force && u < g.pause_rate) {
                out.push_back(Datum::pause());
                ++since_fresh;
                continue;
            }
            const double v = rng.uniform();
            if (!force && !shown.empty() && (v < g.dup_rate || window.empty())) {
                out.push_back(Datum::num(shown[rng.below(shown.size())]));
                ++since_fresh;
                continue;
            }
            if (window.empty()) {
                out.push_back(Datum::pause());
                continue;
            }
            // The front has waited two picks already: take it, so no element starves.
            const std::size_t pick = age.front() >= 2 ? 0 : rng.below(window.size());
            const Nat x = window[pick];
            window.erase(window.begin() + static_cast<std::ptrdiff_t>(pick));
            age.erase(age.begin() + static_cast<std::ptrdiff_t>(pick));
            for (auto& a : age) ++a;
            shown.push_back(x);
            out.push_back(Datum::num(x));
            since_fresh = 0;
        }
    }

    static void fill(const Delayed& g, std::size_t n, Seq& out) {
        const Seq inner = g.inner->prefix(n);
        std::size_t i = 0;
        while (out.size() < n) {
            const std::size_t wait = g.pauses.empty() ? 0 : g.pauses[i % g.pauses.size()];
            for (std::size_t k = 0; k < wait && out.size() < n; ++k) out.push_back(Datum::pause());
            if (out.size() < n) out.push_back(inner[i]);
            ++i;
        }
    }
};

Text Text::canonical(Language lang) {
    auto impl = std::make_shared<Impl>();
    impl->id = "canonical(" + lang.name + ")";
    impl->gen = Canonical{std::move(lang)};
    return Text(std::move(impl));
}

Text Text::finite_then_pauses(Seq s) {
    auto impl = std::make_shared<Impl>();
    impl->id = "finite" + seq_to_string(s);
    impl->gen = FiniteThenPauses{std::move(s)};
    return Text(std::move(impl));
}

Text Text::seeded(Language lang, std::uint64_t seed, double pause_rate, double dup_rate) {
    if (!(pause_rate >= 0.0 && pause_rate < 1.0) || !(dup_rate >= 0.0 && dup_rate < 1.0))
        throw ContractViolation("seeded text rates must lie in [0,1)");
    auto impl = std::make_shared<Impl>();
    impl->id = "seeded(" + lang.name + "," + std::to_string(seed) + ")";
    impl->gen = Seeded{std::move(lang), seed, pause_rate, dup_rate};
    return Text(std::move(impl));
}

Text Text::delayed(Text inner, std::vector<std::size_t> pauses) {
    auto impl = std::make_shared<Impl>();
    impl->id = "delayed(" + inner.id() + ")";
    impl->gen = Delayed{inner.impl_, std::move(pauses)};
    return Text(std::move(impl));
}

Text Text::prefix_then_constant(Seq s, Datum d) {
    auto impl = std::make_shared<Impl>();
    impl->id = "then" + seq_to_string(s) + d.to_string() + "^inf";
    impl->gen = PrefixThenConstant{std::move(s), d};
    return Text(std::move(impl));
}

Seq Text::prefix(std::size_t n) const { return impl_->prefix(n); }

Datum Text::at(std::size_t n) const { return impl_->prefix(n + 1).back(); }

const std::string& Text::id() const { return impl_->id; }

std::size_t Text::coverage_horizon(Nat bound) const {
    const Language* lang = nullptr;
    bool seeded = false;
    if (auto* c = std::get_if<Canonical>(&impl_->gen)) lang = &c->lang;
    if (auto* s = std::get_if<Seeded>(&impl_->gen)) {
        lang = &s->lang;
        seeded = true;
    }
    if (lang == nullptr) throw ContractViolation("text generator has no coverage guarantee");
    const std::size_t m = lang->elements_upto(bound).size();
    return seeded ? 4 * (m + 3) : m;
}

} // namespace lim
