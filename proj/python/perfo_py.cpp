#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "perfo/optimize.hpp"

namespace py = pybind11;
using namespace perfo;

namespace {

PerforatedDomain domain_arg(const std::string& s) { return domain_from_json(Json::parse(s)); }

MeshOptions mesh_opts(double h) {
    MeshOptions o;
    o.h = h;
    return o;
}

BoundaryConditions bc_from(const std::string& s) {
    if (s == "dirichlet") return BoundaryConditions::dirichlet();
    if (s == "neumann") return BoundaryConditions::neumann();
    throw std::invalid_argument("bc must be 'dirichlet' or 'neumann', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_perfo, m) {
    m.doc() = "perforated-domain spectral toolkit (native core)";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<MeshError>(m, "MeshError", PyExc_RuntimeError);
    py::register_exception<SpectralError>(m, "SpectralError", PyExc_RuntimeError);

    m.def("family_names", &family_names);
    m.def("construct", [](const std::string& family, const std::string& params) {
        return to_json(make_family(family, Json::parse(params))).dump();
    });
    m.def("blueprint_hash", [](const std::string& d) { return blueprint_hash(domain_arg(d)); });
    m.def("measures", [](const std::string& d) {
        Measures ms = exact_measures(domain_arg(d));
        return Json{{"area", ms.area}, {"holeArea", ms.holeArea}, {"boundaryLength", ms.boundaryLength},
                    {"gamma1Length", ms.gamma1Length}, {"holeCircleArc", ms.holeCircleArc}}
            .dump();
    });
    m.def("mesh_summary", [](const std::string& d, double h) {
        py::gil_scoped_release nogil;
        return mesh_summary(mesh_domain(domain_arg(d), mesh_opts(h))).dump();
    });
    m.def(
        "solve",
        [](const std::string& d, double h, const std::string& bc, int count, bool steklov) {
            py::gil_scoped_release nogil;
            Mesh mesh = mesh_domain(domain_arg(d), mesh_opts(h));
            auto b = bc_from(bc);
            return (steklov ? solve_steklov(mesh, b, count) : solve_laplace(mesh, b, count)).eigenvalues;
        },
        py::arg("domain"), py::arg("h"), py::arg("bc"), py::arg("count"), py::arg("steklov") = false);
    m.def("evaluate", [](const std::string& d, double h, bool certify) {
        py::gil_scoped_release nogil;
        EvalSettings es;
        es.mesh.h = h;
        es.certify = certify;
        return to_json(evaluate(domain_arg(d), es)).dump();
    });
    m.def(
        "fit_decay",
        [](const std::vector<double>& x, const std::vector<double>& gaps, const std::string& model,
           size_t minSamples) {
            if (x.size() != gaps.size()) throw std::invalid_argument("x and gaps differ in length");
            std::vector<GapSample> s;
            for (size_t i = 0; i < x.size(); ++i) s.push_back({x[i], gaps[i], 0.0, ""});
            DecayFit f = fit_decay(s, decay_model_from_string(model), minSamples);
            return py::dict(py::arg("rate") = f.rate, py::arg("intercept") = f.intercept, py::arg("r2") = f.r2);
        },
        py::arg("x"), py::arg("gaps"), py::arg("model"), py::arg("min_samples") = 4);
    m.def("lawson_area", &lawson_area);
    m.def("leqpol", [](double R, double r) {
        Leqpol L = leqpol_oracle(R, r);
        return py::dict(py::arg("a") = L.a, py::arg("b") = L.b, py::arg("Q") = L.Q, py::arg("T") = L.T);
    });
}
