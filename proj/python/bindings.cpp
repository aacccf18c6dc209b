#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fusionforge/catalog.hpp"
#include "fusionforge/core.hpp"
#include "fusionforge/enumerate.hpp"
#include "fusionforge/grouptheory.hpp"
#include "fusionforge/induction.hpp"
#include "fusionforge/io.hpp"
#include "fusionforge/spectra.hpp"

namespace py = pybind11;
using namespace fusionforge;

namespace {

py::object rationalOrFloat(const CodegreeBlock& b) {
  if (!b.rational) return py::float_(static_cast<double>(b.approx));
  auto fractions = py::module_::import("fractions");
  return fractions.attr("Fraction")(py::int_(py::str(boost::multiprecision::numerator(b.exact).str())),
                                    py::int_(py::str(boost::multiprecision::denominator(b.exact).str())));
}

py::dict summaryDict(const RingSummary& s) {
  py::dict d;
  d["integral"] = s.integral;
  d["type"] = s.type.dims;
  d["duality"] = s.duality;
  d["commutative"] = s.commutative;
  d["pointed"] = s.pointed;
  d["perfect"] = s.perfect;
  d["simple"] = s.simple;
  d["one_frobenius"] = s.oneFrobenius;
  d["mnsd"] = s.mnsd;
  d["multiplicity"] = s.multiplicity;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fusionforge, m) {
  m.doc() = "Exact enumeration and analysis of integral fusion rings";

  py::register_exception<FusionError>(m, "FusionError");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<CapExceeded>(m, "CapExceeded");

  py::class_<FusionData>(m, "FusionData")
      .def(py::init([](const std::vector<std::vector<std::vector<int>>>& n, std::vector<int> dual) {
             return FusionData::fromNested(n, std::move(dual));
           }),
           py::arg("tensor"), py::arg("duality"))
      .def_readonly("rank", &FusionData::rank)
      .def_readonly("duality", &FusionData::duality)
      .def("nested", &FusionData::nested)
      .def("__call__", [](const FusionData& f, int i, int j, int k) { return f(i, j, k); })
      .def("__eq__", [](const FusionData& a, const FusionData& b) { return a == b; })
      .def("__repr__", [](const FusionData& f) { return renderText(f); });

  m.def("trivial_ring", &trivialRing);
  m.def("extend_ring", &extendRing);
  m.def("rn_family", &makeRnFamily, py::arg("n"));
  m.def("validate", [](const FusionData& f) -> py::object {
    auto v = validate(f);
    if (!v) return py::none();
    return py::str(v->describe());
  });
  m.def("fpdims", [](const FusionData& f) {
    auto d = fpdims(f);
    std::vector<double> vals(d.values.begin(), d.values.end());
    return vals;
  });
  m.def("summarize", [](const FusionData& f) { return summaryDict(summarize(f)); });
  m.def("canonical_form", &canonicalForm);
  m.def("isomorphic", &isomorphic);
  m.def("fusion_subrings", &fusionSubrings);

  m.def("codegrees", [](const FusionData& f) {
    auto p = codegreeProfile(f);
    py::list out;
    for (const auto& b : p.blocks) out.append(py::make_tuple(rationalOrFloat(b), b.n));
    return out;
  });
  m.def("codegree_string", [](const FusionData& f) { return codegreeProfile(f).render(); });
  m.def("is_drinfeld", [](const FusionData& f) { return isDrinfeld(codegreeProfile(f)).drinfeld; });
  m.def("isaacs_witness", [](const FusionData& f) -> py::object {
    auto v = isIsaacs(f);
    if (v.isaacs) return py::none();
    if (!v.witnessRational) return py::float_(v.witnessApprox);
    auto fractions = py::module_::import("fractions");
    return fractions.attr("Fraction")(py::str(v.witness.str()));
  });

  m.def(
      "egyptian_fractions",
      [](int length, bool divisibility, bool mnsd, std::vector<int> nc) {
        EgyptianOptions o;
        o.divisibility = divisibility;
        o.mnsd = mnsd;
        o.ncPattern = std::move(nc);
        std::vector<std::vector<long long>> out;
        for (const auto& s : egyptianFractions(length, o)) out.push_back(s.denominators);
        return out;
      },
      py::arg("length"), py::arg("divisibility") = false, py::arg("mnsd") = false,
      py::arg("nc_pattern") = std::vector<int>{});
  m.def(
      "types_for_fpdim",
      [](long long fpdim, int rank, bool oneFrobenius, bool mnsd) {
        std::vector<std::vector<long long>> out;
        for (const auto& t : typesForFPdim(fpdim, rank, TypeOptions{oneFrobenius, mnsd}))
          out.push_back(t.dims);
        return out;
      },
      py::arg("fpdim"), py::arg("rank"), py::arg("one_frobenius") = false, py::arg("mnsd") = false);
  m.def(
      "search",
      [](const std::vector<long long>& type, const std::vector<int>& duality, long long budget) {
        auto r = fusionDataSearch(TypeVector{type}, duality, SearchOptions{budget});
        if (!r.complete) throw CapExceeded("search budget exhausted");
        return r.rings;
      },
      py::arg("type"), py::arg("duality"), py::arg("budget") = kDefaultNodeBudget);
  m.def(
      "classify",
      [](int rank, bool noncommutative, bool mnsd, bool oneFrobenius, int jobs) {
        ClassifyOptions o;
        o.rank = rank;
        o.noncommutativeOnly = noncommutative;
        o.mnsd = mnsd;
        o.oneFrobenius = oneFrobenius;
        o.drinfeldOnly = true;
        o.jobs = jobs;
        auto rep = classifyPipeline(o);
        py::dict d;
        d["types"] = rep.typeCount;
        d["admitting_types"] = rep.admittingTypes;
        d["rings"] = rep.ringCount;
        d["drinfeld"] = rep.drinfeldCount;
        d["complete"] = rep.complete;
        d["drinfeld_rings"] = rep.rings;
        return d;
      },
      py::arg("rank"), py::arg("noncommutative") = false, py::arg("mnsd") = false,
      py::arg("one_frobenius") = false, py::arg("jobs") = 1);

  m.def(
      "induction_solutions",
      [](const FusionData& f, long long limit) {
        InductionOptions o;
        o.limit = limit;
        py::list out;
        for (const auto& s : fullSolutions(makeInductionProblem(f), o).solutions)
          out.append(py::make_tuple(s.F, s.centerType));
        return out;
      },
      py::arg("ring"), py::arg("limit") = 0);
  m.def("lower_square_count", [](const FusionData& f) {
    return lowerSquareSolutions(makeInductionProblem(f), false).count;
  });

  m.def(
      "group_theoretical",
      [](const std::string& group, const std::string& subgroup) {
        auto g = enumerateGroup(group);
        auto d = groupTheoretical(g, subgroupFromSpec(g, subgroup));
        return py::make_tuple(d.type, d.duality);
      },
      py::arg("group"), py::arg("subgroup"));
  m.def(
      "find_group_subgroup",
      [](const std::vector<long long>& type, const std::string& catalogText) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& mt : findGroupSubgroup(type, parseCatalog(catalogText)).matches)
          out.emplace_back(mt.group, mt.subgroup);
        return out;
      },
      py::arg("type"), py::arg("catalog"));

  m.def("parse_records", [](const std::string& text) {
    std::vector<FusionData> out;
    for (const auto& r : parseRecordsFromString(text)) out.push_back(r.ring);
    return out;
  });
  m.def("render_text", &renderText);
  m.def("render_json", &renderJson);
}
