#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gcmeta/grounder.hpp"
#include "gcmeta/integrate.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/textio.hpp"
#include "gcmeta/transform.hpp"

namespace py = pybind11;
using namespace gcmeta;

namespace {

using Sets = std::vector<std::vector<std::string>>;

std::vector<std::string> strings(const LiteralSet& s) {
    std::vector<std::string> out;
    for (const auto& l : s) out.push_back(l.str());
    return out;
}

Sets strings(const std::vector<AnswerSet>& sets) {
    Sets out;
    for (const auto& s : sets) out.push_back(strings(s.literals));
    return out;
}

GroundMode mode_of(const std::string& m) {
    if (m == "herbrand") return GroundMode::Herbrand;
    if (m == "relevant") return GroundMode::Relevant;
    throw PreconditionError("unknown grounding mode '" + m + "'");
}

Program grounded(const std::string& text, const std::string& mode) {
    GroundOptions o;
    o.mode = mode_of(mode);
    return ground(parse(text), o).program;
}

Sets solve_text(const std::string& text, std::optional<std::size_t> limit,
                const std::string& mode, std::int64_t budget_ms) {
    SolveOptions o = default_solve_options();
    o.limit = limit;
    o.budget_ms = budget_ms;
    const SolveResult r = solve(grounded(text, mode), o);
    if (r.exhausted()) throw Error("solver budget exhausted");
    return strings(r.answer_sets);
}

std::string transform_text(const std::string& text, const std::string& opts) {
    Program p = parse(text);
    if (!p.flags().ground) p = ground(p).program;
    return print(tr(p, TransformOptions::parse(opts)));
}

std::string integrate_text(const std::string& guess, const std::string& check,
                           const std::string& opts, bool np) {
    const GuessCheckPair pair = prepare_pair(parse(guess), parse(check));
    return print(np ? integrate_np(pair) : integrate(pair, TransformOptions::parse(opts)));
}

std::vector<std::string> project_strings(const std::vector<std::string>& answer_set) {
    LiteralSet s;
    for (const auto& l : answer_set) s.insert(Literal::from_string(l));
    return strings(project(s));
}

}  // namespace

PYBIND11_MODULE(gcmeta, m) {
    m.doc() = "Meta-interpretation of head-cycle-free check programs";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<GroundError>(m, "GroundError", base.ptr());
    py::register_exception<VocabularyError>(m, "VocabularyError", base.ptr());

    m.def("normalize", [](const std::string& text) { return print(parse(text)); },
          "Parse a program and print it back in canonical form.", py::arg("text"));
    m.def("ground",
          [](const std::string& text, const std::string& mode) { return print(grounded(text, mode)); },
          "Ground a program; mode is 'herbrand' or 'relevant'.", py::arg("text"),
          py::arg("mode") = "herbrand");
    m.def("solve", &solve_text,
          "Answer sets as sorted lists of literal strings. Raises Error when the budget runs out.",
          py::arg("text"), py::arg("limit") = py::none(), py::arg("mode") = "relevant",
          py::arg("budget_ms") = 10000);
    m.def("brute_force",
          [](const std::string& text) { return strings(brute_force(grounded(text, "relevant"))); },
          "Answer sets by exhaustive enumeration, for small programs.", py::arg("text"));
    m.def("is_hcf", [](const std::string& text) { return grounded(text, "herbrand").flags().hcf; },
          "Whether the ground program is head-cycle-free.", py::arg("text"));
    m.def("transform", &transform_text, "The meta-interpreter program tr(P) as text.",
          py::arg("text"), py::arg("opts") = "none");
    m.def("integrate", &integrate_text,
          "A guess and a check program integrated into one program, as text.", py::arg("guess"),
          py::arg("check"), py::arg("opts") = "none", py::arg("np") = false);
    m.def("omega",
          [](const std::string& text, const std::string& opts) {
              return strings(omega(parse(text), TransformOptions::parse(opts)).literals);
          },
          "The saturated answer set of tr(P).", py::arg("text"), py::arg("opts") = "none");
    m.def("project", &project_strings, "The literals l with inS(\"l\") in an answer set of tr(P).",
          py::arg("answer_set"));
}
