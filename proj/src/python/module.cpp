#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "limlearn/cli.hpp"
#include "limlearn/errors.hpp"
#include "limlearn/families.hpp"
#include "limlearn/harness.hpp"
#include "limlearn/registry.hpp"
#include "limlearn/restrictions.hpp"
#include "limlearn/transforms.hpp"

namespace py = pybind11;
using namespace lim;

namespace {

// Python side: a sequence is a list of ints with None for a pause.
Seq to_seq(const std::vector<std::optional<Nat>>& items) {
    Seq s;
    for (const auto& x : items) s.push_back(x ? Datum::num(*x) : Datum::pause());
    return s;
}

std::vector<std::optional<Nat>> from_seq(const Seq& s) {
    std::vector<std::optional<Nat>> out;
    for (Datum d : s) out.push_back(d.is_pause() ? std::nullopt : std::optional<Nat>(d.value()));
    return out;
}

std::string outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Clean: return "CLEAN";
    case Outcome::Violation: return "VIOLATION";
    case Outcome::Converged: return "CONVERGED";
    case Outcome::NotConverged: return "NOT_CONVERGED";
    case Outcome::Diverged: return "DIVERGED";
    }
    return "?";
}

std::string status_name(RunStatus s) {
    switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Diverged: return "diverged";
    case RunStatus::CapExceeded: return "cap_exceeded";
    }
    return "?";
}

HypSequence hyps_of(const std::vector<Term>& terms, const std::vector<std::optional<Nat>>& prefix) {
    HypSequence p;
    p.terms = terms;
    p.prefix = to_seq(prefix);
    return p;
}

Tag tag_of(const std::string& name) {
    const auto t = tag_from_name(name);
    if (!t) throw ConfigError("unknown restriction tag '" + name + "'");
    return *t;
}

Mode mode_of(const std::string& name) {
    if (name == "Ex") return Mode::Ex;
    if (name == "Bc") return Mode::Bc;
    throw ConfigError("unknown convergence mode '" + name + "'");
}

struct Handle {
    Learner h;
};

} // namespace

PYBIND11_MODULE(limlearn_py, m) {
    m.doc() = "Learning-in-the-limit simulator: learners, texts, restriction verifiers.";
    register_catalog();

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

    py::class_<Term>(m, "Term")
        .def_property_readonly("canonical", &Term::canonical)
        .def("eval", &Term::eval, py::arg("x"))
        .def("is_quest", &Term::is_quest)
        .def("__eq__", [](const Term& a, const Term& b) { return a == b; })
        .def("__hash__", [](const Term& t) { return py::hash(py::str(t.canonical())); })
        .def("__str__", &Term::canonical)
        .def("__repr__", [](const Term& t) { return "Term('" + t.canonical() + "')"; });

    m.def("parse_term", [](const std::string& s) { return parse_term(s); }, py::arg("text"));
    m.def("semantic_eq", &semantic_eq, py::arg("a"), py::arg("b"), py::arg("bound") = kDefaultBound);

    py::class_<Handle>(m, "Learner")
        .def_property_readonly("id", [](const Handle& l) { return l.h->id; })
        .def_property_readonly("kind", [](const Handle& l) { return std::string(kind_name(l.h->kind)); })
        .def_property_readonly("properties", [](const Handle& l) { return l.h->properties; })
        .def("star", [](const Handle& l, const std::vector<std::optional<Nat>>& s) {
            return l.h->star(to_seq(s));
        }, py::arg("sequence"))
        .def("__repr__", [](const Handle& l) { return "Learner('" + l.h->id + "')"; });

    py::class_<Language>(m, "Language")
        .def_readonly("name", &Language::name)
        .def_readonly("term", &Language::term)
        .def_readonly("infinite", &Language::infinite)
        .def("member", &Language::member, py::arg("x"))
        .def("elements_upto", &Language::elements_upto, py::arg("bound"));

    m.def("learner", [](const std::string& id) { return Handle{Registry::global().learner(id)}; }, py::arg("id"));
    m.def("learner_ids", [] { return Registry::global().learner_ids(); });
    m.def("family_names", [] { return Registry::global().family_names(); });
    m.def("member_language", [](const std::string& family, Nat i) {
        return member_language(Registry::global().family(family), i);
    }, py::arg("family"), py::arg("index"));
    m.def("finite_language", [](const NatSet& d) {
        return Language{set_to_string(d), Term::fin_set(d), false};
    }, py::arg("elements"));

    m.def("transform_names", [] {
        std::vector<std::string> out;
        for (const auto& s : transform_specs()) out.push_back(s.name);
        return out;
    });
    m.def("apply_transform", [](const std::string& name, const Handle& l) {
        const TransformSpec* spec = find_transform(name);
        if (!spec) throw ConfigError("unknown transform '" + name + "'");
        return Handle{Registry::global().add(spec->apply(l.h))};
    }, py::arg("name"), py::arg("learner"));

    py::class_<Text>(m, "Text")
        .def_static("canonical", &Text::canonical, py::arg("language"))
        .def_static("seeded", [](const Language& l, std::uint64_t seed) {
            return Text::seeded(l, seed, kSeededPauseRate, kSeededDupRate);
        }, py::arg("language"), py::arg("seed"))
        .def_static("finite_then_pauses", [](const std::vector<std::optional<Nat>>& s) {
            return Text::finite_then_pauses(to_seq(s));
        }, py::arg("sequence"))
        .def_property_readonly("id", &Text::id)
        .def("prefix", [](const Text& t, std::size_t n) { return from_seq(t.prefix(n)); }, py::arg("n"));

    m.def("run", [](const Handle& l, const Text& text, std::size_t n) {
        const RunResult r = run(l.h, text, n);
        py::dict out;
        out["terms"] = r.hyps.terms;
        out["prefix"] = from_seq(r.hyps.prefix);
        out["status"] = status_name(r.status);
        out["detail"] = r.detail;
        out["digest"] = digest(r.hyps);
        return out;
    }, py::arg("learner"), py::arg("text"), py::arg("n") = kDefaultHorizon);

    py::class_<Verdict>(m, "Verdict")
        .def_property_readonly("outcome", [](const Verdict& v) { return outcome_name(v.outcome); })
        .def_readonly("check", &Verdict::check)
        .def_readonly("indices", &Verdict::indices)
        .def_readonly("witness", &Verdict::witness)
        .def_readonly("n0", &Verdict::n0)
        .def_readonly("final_term", &Verdict::final_term)
        .def("render", [](const Verdict& v, const std::string& text_id) { return render(v, text_id); },
             py::arg("text_id") = "t0");

    m.def("check_restriction", [](const std::string& tag, const std::vector<Term>& terms,
                                  const std::vector<std::optional<Nat>>& prefix,
                                  const Language& target, Nat B) {
        return check_restriction(tag_of(tag), hyps_of(terms, prefix), target, B);
    }, py::arg("tag"), py::arg("terms"), py::arg("prefix"), py::arg("target"),
          py::arg("bound") = kDefaultBound);
    m.def("check_convergence", [](const std::string& mode, const std::vector<Term>& terms,
                                  const std::vector<std::optional<Nat>>& prefix,
                                  const Language& target, Nat B) {
        return check_convergence(mode_of(mode), hyps_of(terms, prefix), target, B, prefix.size());
    }, py::arg("mode"), py::arg("terms"), py::arg("prefix"), py::arg("target"),
          py::arg("bound") = kDefaultBound);

    m.def("find_locking", [](const Handle& l, const Language& target, std::size_t bound, bool bc) {
        LockingQuery q;
        q.bound = bound;
        q.bc = bc;
        const auto s = find_locking(l.h, target, q);
        return s ? std::optional(from_seq(*s)) : std::nullopt;
    }, py::arg("learner"), py::arg("target"), py::arg("bound") = 3, py::arg("bc") = false);

    m.def("falsify_it", [](const Handle& l, std::size_t H) -> py::object {
        const auto cert = falsify_it(l.h, H);
        if (!cert) return py::none();
        py::dict out;
        out["n0"] = cert->n0;
        out["prefix"] = from_seq(cert->prefix);
        out["x"] = cert->x;
        out["target1"] = cert->target1;
        out["target2"] = cert->target2;
        out["digest1"] = cert->digest1;
        out["digest2"] = cert->digest2;
        out["verified"] = cert->verified;
        return out;
    }, py::arg("learner"), py::arg("horizon") = kDefaultHorizon);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));
}
