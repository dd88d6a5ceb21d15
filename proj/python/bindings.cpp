#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eulerian/cfrac.hpp"
#include "eulerian/families.hpp"
#include "eulerian/permstats.hpp"
#include "eulerian/polycore.hpp"
#include "eulerian/verify.hpp"

namespace py = pybind11;
using namespace eulerian;

namespace {

py::object parse_json(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

py::int_ to_py(const Coeff& c) {
  return py::int_(py::reinterpret_steal<py::object>(
      PyLong_FromString(c.get_str().c_str(), nullptr, 10)));
}

Coeff from_py(const py::int_& value) { return Coeff(py::str(value).cast<std::string>()); }

std::optional<fam::Route> route_arg(const std::optional<std::string>& route) {
  if (!route) return std::nullopt;
  return fam::parse_route(*route);
}

py::dict terms_dict(const MultiPoly& p) {
  py::dict out;
  for (const auto& [m, c] : p.terms()) {
    py::tuple key(kNumVars);
    for (std::size_t i = 0; i < kNumVars; ++i) key[i] = py::int_(m.exponents()[i]);
    out[key] = to_py(c);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(pyeulerian, m) {
  m.doc() = "Exact q-binomial-Eulerian polynomials, permutation statistics and identity checks";

  py::register_exception<std::out_of_range>(m, "CapExceeded", PyExc_ValueError);

  py::class_<MultiPoly>(m, "Poly")
      .def(py::init([](const py::int_& c) { return MultiPoly(from_py(c)); }), py::arg("constant") = 0)
      .def_static("var", [](const std::string& name, unsigned e) {
        return MultiPoly::var(parse_var(name), e);
      }, py::arg("name"), py::arg("exponent") = 1)
      .def_static("from_json", [](const std::string& s) { return from_json(s); })
      .def("json", [](const MultiPoly& p) { return to_json(p); })
      .def("latex", [](const MultiPoly& p) { return to_text(p, TextStyle::Latex); })
      .def("__str__", [](const MultiPoly& p) { return to_text(p); })
      .def("__repr__", [](const MultiPoly& p) { return "Poly(" + to_text(p, TextStyle::Plain) + ")"; })
      .def("terms", &terms_dict, "{exponent tuple over t,q,p,y,u,v,w,a,b,c,d,e: coefficient}")
      .def("variables", [](const MultiPoly& p) {
        std::vector<std::string> out;
        for (Var v : p.variables()) out.emplace_back(var_name(v));
        return out;
      })
      .def("degree", [](const MultiPoly& p, const std::string& v) { return p.degree(parse_var(v)); },
           py::arg("var") = "t")
      .def("coefficients", [](const MultiPoly& p) {
        py::list out;
        for (const auto& c : integer_coefficients(p)) out.append(to_py(c));
        return out;
      })
      .def("eval", [](const MultiPoly& p, const std::string& v, const py::int_& value) {
        return eval_at(p, parse_var(v), from_py(value));
      })
      .def("is_palindromic", [](const MultiPoly& p, unsigned center) {
        return is_palindromic(p, Var::t, center);
      })
      .def("is_unimodal", [](const MultiPoly& p) { return is_unimodal(p); })
      .def("is_log_concave", [](const MultiPoly& p) { return is_log_concave(p); })
      .def("gamma", [](const MultiPoly& p, unsigned center) { return gamma_expand(p, center); })
      .def("__eq__", [](const MultiPoly& a, const MultiPoly& b) { return a == b; })
      .def("__add__", [](const MultiPoly& a, const MultiPoly& b) { return a + b; })
      .def("__sub__", [](const MultiPoly& a, const MultiPoly& b) { return a - b; })
      .def("__mul__", [](const MultiPoly& a, const MultiPoly& b) { return a * b; })
      .def("__radd__", [](const MultiPoly& a, const py::int_& b) { return MultiPoly(from_py(b)) + a; })
      .def("__rsub__", [](const MultiPoly& a, const py::int_& b) { return MultiPoly(from_py(b)) - a; })
      .def("__rmul__", [](const MultiPoly& a, const py::int_& b) { return MultiPoly(from_py(b)) * a; })
      .def("__pow__", [](const MultiPoly& a, unsigned e) { return a.pow(e); })
      .def("__neg__", [](const MultiPoly& a) { return -a; });
  py::implicitly_convertible<py::int_, MultiPoly>();

  m.def("compute", [](const std::string& family, unsigned n, std::optional<std::string> route) {
    return fam::compute(fam::parse_family(family), n, route_arg(route));
  }, py::arg("family"), py::arg("n"), py::arg("route") = py::none());

  m.def("families", [] {
    std::vector<std::string> out;
    for (auto f : fam::all_families()) out.emplace_back(fam::family_name(f));
    return out;
  });
  m.def("registry", [] { return parse_json(fam::registry_json()); });

  m.def("gamma", [](const std::string& family, unsigned n) {
    const auto f = fam::parse_family(family);
    return gamma_expand(fam::compute(f, n), fam::gamma_center(f, n));
  }, py::arg("family"), py::arg("n"));

  m.def("stats", [](const std::string& perm) {
    py::dict out;
    for (const auto& [name, value] : perm::named_fields(perm::stats(perm::Permutation::parse(perm))))
      out[py::str(name)] = value;
    return out;
  }, py::arg("perm"));
  m.def("is_prw", [](const std::string& s) { return perm::is_prw(perm::Permutation::parse(s)); });
  m.def("hop", [](const std::string& s, int x, bool raw) {
    const auto sigma = perm::Permutation::parse(s);
    return (raw ? perm::mfs_hop(sigma, x) : perm::mfs_hop_prime(sigma, x)).to_string();
  }, py::arg("perm"), py::arg("x"), py::arg("raw") = false);
  m.def("orbit", [](const std::string& s) {
    const auto o = perm::mfs_orbit(perm::Permutation::parse(s));
    std::vector<std::string> members;
    for (const auto& p : o.members) members.push_back(p.to_string());
    py::dict out;
    out["representative"] = o.representative.to_string();
    out["members"] = members;
    out["movable_letters"] = o.movable_letters;
    return out;
  }, py::arg("perm"));
  m.def("foata_first", [](const std::string& s) {
    return perm::foata_first(perm::Permutation::parse(s)).to_string();
  });

  m.def("presets", [] { return cfrac::preset_names(); });
  m.def("moments", [](const std::string& preset, unsigned N) {
    return cfrac::moments(cfrac::preset(preset), N);
  }, py::arg("preset"), py::arg("N"));
  m.def("jacobi_rogers", [](const std::string& preset, unsigned n) {
    return cfrac::jacobi_rogers(cfrac::preset(preset), n);
  }, py::arg("preset"), py::arg("n"));

  m.def("identities", [] {
    py::list out;
    for (const auto& info : verify::identities()) {
      py::dict row;
      row["id"] = info.id;
      row["kind"] = std::string(verify::kind_name(info.kind));
      row["min_n"] = info.min_n;
      row["default_n"] = info.default_n;
      row["max_n"] = info.max_n;
      row["description"] = info.description;
      out.append(row);
    }
    return out;
  });
  m.def("verify", [](const std::string& id, std::optional<unsigned> max_n) {
    verify::Report r;
    {
      py::gil_scoped_release release;
      r = verify::run(id, max_n);
    }
    return parse_json(verify::report_json(r));
  }, py::arg("id"), py::arg("max_n") = py::none());
  m.def("verify_all", [](bool strict) {
    std::vector<verify::Report> reports;
    {
      py::gil_scoped_release release;
      reports = verify::run_all();
    }
    return parse_json(verify::reports_json(reports, strict));
  }, py::arg("strict_conjectures") = false);
}
