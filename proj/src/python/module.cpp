#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "udom/domination.hpp"
#include "udom/genfunc.hpp"
#include "udom/geometry.hpp"
#include "udom/idca.hpp"
#include "udom/model.hpp"
#include "udom/oracle.hpp"
#include "udom/queries.hpp"

namespace py = pybind11;
using namespace udom;

namespace {

Rect rect_from(const std::vector<std::pair<double, double>>& sides)
{
    std::vector<Interval> iv;
    for (auto [lo, hi] : sides) iv.push_back({lo, hi});
    return Rect(std::move(iv));
}

IdcaConfig make_config(double p, const std::string& criterion, int max_depth,
                       std::optional<double> epsilon, std::size_t pair_budget,
                       bool record_history)
{
    IdcaConfig cfg;
    cfg.norm = NormOrder(p);
    cfg.criterion = parse_criterion(criterion);
    cfg.max_depth = max_depth;
    cfg.pair_budget = pair_budget;
    cfg.stop = StopCriterion::max_depth(max_depth);
    if (epsilon) cfg.stop = cfg.stop || StopCriterion::uncertainty_below(*epsilon);
    cfg.record_history = record_history;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Domination count bounds for uncertain objects";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<UncertainObject>(m, "UncertainObject")
        .def(py::init([](std::string id, const std::vector<std::vector<double>>& points,
                         std::optional<std::vector<double>> weights) {
                 if (points.empty()) throw Error("object needs at least one sample");
                 std::size_t dims = points.front().size();
                 std::vector<double> coords;
                 for (const auto& p : points) {
                     if (p.size() != dims) throw Error("samples differ in dimensionality");
                     coords.insert(coords.end(), p.begin(), p.end());
                 }
                 std::vector<double> w = weights ? *weights
                                                 : std::vector<double>(points.size(), 1.0);
                 return UncertainObject(std::move(id), dims, std::move(coords), std::move(w));
             }),
             py::arg("id"), py::arg("samples"), py::arg("weights") = py::none())
        .def_property_readonly("id", &UncertainObject::id)
        .def_property_readonly("dims", &UncertainObject::dims)
        .def_property_readonly("sample_count", &UncertainObject::sample_count)
        .def_property_readonly("samples",
                               [](const UncertainObject& o) {
                                   std::vector<std::vector<double>> out;
                                   for (std::size_t i = 0; i < o.sample_count(); ++i) {
                                       auto s = o.sample(i);
                                       out.emplace_back(s.begin(), s.end());
                                   }
                                   return out;
                               })
        .def_property_readonly("weights",
                               [](const UncertainObject& o) {
                                   return std::vector<double>(o.weights().begin(),
                                                              o.weights().end());
                               })
        .def_property_readonly("mbr",
                               [](const UncertainObject& o) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& s : o.mbr().intervals()) out.emplace_back(s.lo, s.hi);
                                   return out;
                               })
        .def("__repr__", [](const UncertainObject& o) {
            return "<UncertainObject id='" + o.id() + "' samples=" +
                   std::to_string(o.sample_count()) + ">";
        });

    m.def("certain_object", &certain_object, py::arg("id"), py::arg("point"));

    m.def("dominates",
          [](const std::vector<std::pair<double, double>>& a,
             const std::vector<std::pair<double, double>>& b,
             const std::vector<std::pair<double, double>>& r, double p,
             const std::string& criterion) {
              return dominates(parse_criterion(criterion), rect_from(a), rect_from(b),
                               rect_from(r), NormOrder(p));
          },
          py::arg("a"), py::arg("b"), py::arg("r"), py::arg("p") = 2.0,
          py::arg("criterion") = "optimal",
          "Whether rectangle a completely dominates b w.r.t. r. Rectangles are "
          "lists of (lo, hi) per dimension.");

    m.def("generate_synthetic",
          [](std::size_t n, std::size_t dims, double max_extent, std::size_t samples,
             std::uint64_t seed) {
              return generate_synthetic({n, dims, max_extent, samples, seed});
          },
          py::arg("n") = 10000, py::arg("dims") = 2, py::arg("max_extent") = 0.004,
          py::arg("samples") = 100, py::arg("seed") = 1);

    m.def("load_dataset",
          py::overload_cast<const std::string&, std::uint64_t>(&load_dataset),
          py::arg("path"), py::arg("seed") = 1);
    m.def("save_jsonl", &save_jsonl, py::arg("objects"), py::arg("path"));

    m.def("gf_exact", [](const std::vector<double>& p) { return gf_exact(p); },
          py::arg("probabilities"));

    m.def("ugf_bounds",
          [](const std::vector<std::pair<double, double>>& bounds, std::optional<int> truncate_at) {
              std::vector<BernoulliBounds> bb;
              for (auto [lb, ub] : bounds) bb.push_back({lb, ub});
              UGFPoly poly = ugf_expand(bb, truncate_at);
              auto d = extract_bounds(poly, bb.size());
              return std::make_pair(d.lb, d.ub);
          },
          py::arg("bounds"), py::arg("truncate_at") = py::none(),
          "Per-count (lb, ub) lists from per-object (lb, ub) probabilities.");

    py::class_<IdcaResult>(m, "IdcaResult")
        .def_property_readonly("lb", [](const IdcaResult& r) { return r.distribution.lb; })
        .def_property_readonly("ub", [](const IdcaResult& r) { return r.distribution.ub; })
        .def_readonly("iterations", &IdcaResult::iterations_run)
        .def_readonly("depth", &IdcaResult::depth)
        .def_property_readonly("stop_reason",
                               [](const IdcaResult& r) { return to_string(r.stop_reason); })
        .def_readonly("uncertainty_trace", &IdcaResult::uncertainty_trace)
        .def_property_readonly(
            "complete_dominators",
            [](const IdcaResult& r) { return r.classification.complete_domination_count; })
        .def_property_readonly(
            "influence_objects",
            [](const IdcaResult& r) { return r.classification.influence_objects; })
        .def_property_readonly("history", [](const IdcaResult& r) {
            std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
            for (const auto& d : r.history) out.emplace_back(d.lb, d.ub);
            return out;
        });

    m.def("idca",
          [](const std::vector<UncertainObject>& db, const UncertainObject& b,
             const UncertainObject& r, double p, const std::string& criterion, int max_depth,
             std::optional<double> epsilon, std::size_t pair_budget, bool record_history) {
              return idca(db, b, r,
                          make_config(p, criterion, max_depth, epsilon, pair_budget,
                                      record_history));
          },
          py::arg("db"), py::arg("b"), py::arg("r"), py::arg("p") = 2.0,
          py::arg("criterion") = "optimal", py::arg("max_depth") = 10,
          py::arg("epsilon") = py::none(), py::arg("pair_budget") = std::size_t{1} << 16,
          py::arg("record_history") = false);

    auto answer = [](const QueryAnswer& ans) {
        py::list out;
        for (const auto& o : ans.objects) {
            py::dict d;
            d["id"] = o.id;
            d["decision"] = to_string(o.decision);
            d["lb"] = o.probability.lb;
            d["ub"] = o.probability.ub;
            d["iterations"] = o.iterations;
            d["stop_reason"] = to_string(o.stop_reason);
            out.append(d);
        }
        return out;
    };

    m.def("knn",
          [answer](const std::vector<UncertainObject>& db, const UncertainObject& q, int k,
                   double tau, double p, const std::string& criterion, int max_depth) {
              return answer(pknn_query(db, q, k, tau,
                                       make_config(p, criterion, max_depth, {}, 1 << 16, false)));
          },
          py::arg("db"), py::arg("q"), py::arg("k"), py::arg("tau"), py::arg("p") = 2.0,
          py::arg("criterion") = "optimal", py::arg("max_depth") = 10);

    m.def("rknn",
          [answer](const std::vector<UncertainObject>& db, const UncertainObject& q, int k,
                   double tau, double p, const std::string& criterion, int max_depth) {
              return answer(prknn_query(db, q, k, tau,
                                        make_config(p, criterion, max_depth, {}, 1 << 16, false)));
          },
          py::arg("db"), py::arg("q"), py::arg("k"), py::arg("tau"), py::arg("p") = 2.0,
          py::arg("criterion") = "optimal", py::arg("max_depth") = 10);

    m.def("expected_rank",
          [](const std::vector<UncertainObject>& db, const UncertainObject& q, double p,
             int max_depth) {
              std::vector<std::tuple<std::string, double, double>> out;
              for (const auto& e :
                   expected_rank(db, q, make_config(p, "optimal", max_depth, {}, 1 << 16, false))) {
                  out.emplace_back(e.id, e.lb, e.ub);
              }
              return out;
          },
          py::arg("db"), py::arg("q"), py::arg("p") = 2.0, py::arg("max_depth") = 10);

    m.def("exact_pdf",
          [](const std::vector<UncertainObject>& db, const UncertainObject& b,
             const UncertainObject& r, double p, std::uint64_t world_budget) {
              EnumerateOptions eo;
              eo.norm = NormOrder(p);
              eo.world_budget = world_budget;
              return enumerate_exact(db, b, r, eo).pdf;
          },
          py::arg("db"), py::arg("b"), py::arg("r"), py::arg("p") = 2.0,
          py::arg("world_budget") = 10'000'000);

    m.def("mc_pdf",
          [](const std::vector<UncertainObject>& db, const UncertainObject& b,
             const UncertainObject& r, double p, std::uint64_t samples, std::uint64_t seed) {
              McOptions mo;
              mo.norm = NormOrder(p);
              mo.samples = samples;
              mo.seed = seed;
              return mc_baseline(db, b, r, mo).estimate.pdf;
          },
          py::arg("db"), py::arg("b"), py::arg("r"), py::arg("p") = 2.0,
          py::arg("samples") = 0, py::arg("seed") = 1);
}
